#include "quadrapt/rational.hpp"

#include "quadrapt/error.hpp"

namespace quadrapt {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(Errc::invalid_parameter, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num_ = g ? n / g : 0;
  den_ = g ? d / g : 1;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) { return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
Rational operator*(const Rational& a, const Rational& b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }

Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw Error(Errc::invalid_parameter, "not a rational: " + s);
  }
}

}  // namespace quadrapt
