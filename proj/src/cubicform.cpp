#include "quadrapt/cubicform.hpp"

#include <algorithm>
#include <cmath>

namespace quadrapt {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cubic_value(const std::array<double, 4>& g, double m) { return ((g[3] * m + g[2]) * m + g[1]) * m + g[0]; }
double cubic_slope(const std::array<double, 4>& g, double m) { return (3 * g[3] * m + 2 * g[2]) * m + g[1]; }

// Real roots of g0 + g1 m + g2 m^2 + g3 m^3 with g3 != 0.
std::vector<double> real_cubic_roots(const std::array<double, 4>& g) {
  const double a = g[2] / g[3], b = g[1] / g[3], c = g[0] / g[3];
  const double p = b - a * a / 3, q = 2 * a * a * a / 27 - a * b / 3 + c;
  const double disc = -(4 * p * p * p + 27 * q * q);
  std::vector<double> roots;
  if (disc > 0 && p < 0) {
    const double r = 2 * std::sqrt(-p / 3);
    const double arg = std::clamp(3 * q / (2 * p) * std::sqrt(-3 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3;
    for (int k = 0; k < 3; ++k) roots.push_back(r * std::cos(phi - 2 * kPi * k / 3) - a / 3);
  } else {
    const double s = std::sqrt(std::max(0.0, q * q / 4 + p * p * p / 27));
    roots.push_back(std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s) - a / 3);
  }
  for (double& m : roots)
    for (int it = 0; it < 3; ++it) {
      const double d = cubic_slope(g, m);
      if (d == 0) break;
      const double next = m - cubic_value(g, m) / d;
      if (std::abs(cubic_value(g, next)) >= std::abs(cubic_value(g, m))) break;
      m = next;
    }
  return roots;
}

// Coefficients (of X^3, X^2 Y, X Y^2, Y^3) of the form after dx = cX - sY, dy = sX + cY.
std::array<double, 4> rotate_cubic(const BinaryCubic& f, double c, double s) {
  // each term dx^p dy^q expands as a product of linear forms
  auto mul = [](const std::vector<double>& u, double a0, double a1) {
    std::vector<double> r(u.size() + 1, 0.0);
    for (size_t k = 0; k < u.size(); ++k) {
      r[k] += u[k] * a0;
      r[k + 1] += u[k] * a1;
    }
    return r;
  };
  const double coeff[4] = {f.k30, f.k21, f.k12, f.k03};
  std::array<double, 4> out{0, 0, 0, 0};
  for (int q = 0; q <= 3; ++q) {
    std::vector<double> poly{1.0};
    for (int k = 0; k < 3 - q; ++k) poly = mul(poly, c, -s);
    for (int k = 0; k < q; ++k) poly = mul(poly, s, c);
    for (int k = 0; k < 4; ++k) out[k] += coeff[q] * poly[k];
  }
  return out;
}

}  // namespace

double mod_pi(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0) r += kPi;
  if (r >= kPi) r -= kPi;
  return r;
}

const char* direction_kind_name(DirectionKind k) {
  switch (k) {
    case DirectionKind::elliptic3: return "elliptic3";
    case DirectionKind::hyperbolic1: return "hyperbolic1";
    case DirectionKind::degenerate: return "degenerate";
  }
  return "?";
}

double CubicFormValue::max_abs() const {
  return std::max({std::abs(n111), std::abs(n112), std::abs(n122), std::abs(n222)});
}

CubicFormValue cubic_components(const Jet2d& j) {
  if (j.order() < 3) throw Error(Errc::invalid_parameter, "cubic form needs a 3-jet");
  const double fxx = j.partial(2, 0), fxy = j.partial(1, 1), fyy = j.partial(0, 2);
  const double fxxx = j.partial(3, 0), fxxy = j.partial(2, 1), fxyy = j.partial(1, 2), fyyy = j.partial(0, 3);
  const auto n = cubic_numerators(fxx, fxy, fyy, fxxx, fxxy, fxyy, fyyy);
  CubicFormValue c;
  c.n111 = n.n111;
  c.n112 = n.n112;
  c.n122 = n.n122;
  c.n222 = n.n222;
  c.hess = n.hess;
  c.gxx = fxx;
  c.gxy = fxy;
  c.gyy = fyy;
  const double m = std::max({std::abs(fxx), std::abs(fxy), std::abs(fyy), std::abs(fxxx), std::abs(fxxy),
                             std::abs(fxyy), std::abs(fyyy)});
  c.magnitude = m * m * m;
  return c;
}

CubicNumerators<Jet2d> cubic_component_jets(const Jet2d& j) {
  if (j.order() < 3) throw Error(Errc::invalid_parameter, "cubic form needs a 3-jet");
  const Jet2d fx = j.derivative(0), fy = j.derivative(1);
  const Jet2d fxx = fx.derivative(0), fxy = fx.derivative(1), fyy = fy.derivative(1);
  return cubic_numerators(fxx, fxy, fyy, fxx.derivative(0), fxx.derivative(1), fxy.derivative(1), fyy.derivative(1));
}

double BinaryCubic::operator()(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  return k30 * c * c * c + k21 * c * c * s + k12 * c * s * s + k03 * s * s * s;
}

DirectionSet binary_cubic_roots(const BinaryCubic& form, double merge_angle) {
  const double scale = std::max({std::abs(form.k30), std::abs(form.k21), std::abs(form.k12), std::abs(form.k03)});
  if (scale == 0) throw Error(Errc::singular_point, "binary cubic vanishes identically");

  // rotate so that the Y^3 coefficient is as large as possible; then no root sits near infinity
  double gamma = 0, best = -1;
  for (int m = 0; m < 12; ++m) {
    const double g = m * kPi / 12;
    const double v = std::abs(form(g + kPi / 2));
    if (v > best) {
      best = v;
      gamma = g;
    }
  }
  const auto rc = rotate_cubic(form, std::cos(gamma), std::sin(gamma));
  // G(X, Y) = X^3 g(m) with m = Y / X
  const std::array<double, 4> g{rc[0], rc[1], rc[2], rc[3]};
  std::vector<double> angles;
  for (double m : real_cubic_roots(g)) angles.push_back(mod_pi(std::atan(m) + gamma));
  std::sort(angles.begin(), angles.end());

  DirectionSet out;
  bool merged = false;
  for (double a : angles) {
    if (!out.angles.empty() && a - out.angles.back() < merge_angle) {
      merged = true;
      continue;
    }
    out.angles.push_back(a);
  }
  if (out.angles.size() > 1 && out.angles.front() + kPi - out.angles.back() < merge_angle) {
    out.angles.pop_back();
    merged = true;
  }
  if (merged)
    out.kind = DirectionKind::degenerate;
  else
    out.kind = out.angles.size() == 3 ? DirectionKind::elliptic3 : DirectionKind::hyperbolic1;
  return out;
}

bool is_singular(const CubicFormValue& c, const Tolerances& tol) {
  return c.max_abs() < tol.singular * (1 + c.magnitude);
}

DirectionSet bcde_directions(const CubicFormValue& c, const Tolerances& tol) {
  if (is_singular(c, tol)) throw Error(Errc::singular_point, "cubic form vanishes: quadratic point");
  return binary_cubic_roots({c.n111, 3 * c.n112, 3 * c.n122, c.n222}, tol.merge_angle);
}

DirectionSet darboux_directions(const Jet2d& j, const Tolerances& tol) {
  if (j.order() < 3) throw Error(Errc::invalid_parameter, "Darboux directions need a 3-jet");
  const double c20 = j.coeff(2, 0), c11 = j.coeff(1, 1), c02 = j.coeff(0, 2);
  const double e = tol.normal_form;
  const bool elliptic = std::abs(c20 - 0.5) < e && std::abs(c02 - 0.5) < e && std::abs(c11) < e;
  const bool hyperbolic = std::abs(c20) < e && std::abs(c02) < e && std::abs(c11 - 1) < e;
  if (!elliptic && !hyperbolic)
    throw Error(Errc::normalization_required, "2-jet is neither (x^2+y^2)/2 nor xy");
  const double k30 = j.coeff(3, 0), k21 = j.coeff(2, 1), k12 = j.coeff(1, 2), k03 = j.coeff(0, 3);
  const double scale = 1 + std::max({std::abs(k30), std::abs(k21), std::abs(k12), std::abs(k03)});

  DirectionSet out;
  if (elliptic) {
    // harmonic part p Re(z^3) + q Im(z^3); the rest is (linear)(x^2+y^2), absorbed by the osculating quadrics
    const double p = (k30 - k12) / 4, q = (k21 - k03) / 4;
    if (std::hypot(p, q) < tol.singular * scale) throw Error(Errc::singular_point, "quadratic point");
    const double phi0 = std::atan2(q, p);
    for (int k = 0; k < 3; ++k) out.angles.push_back(mod_pi((phi0 + kPi / 2 + k * kPi) / 3));
    std::sort(out.angles.begin(), out.angles.end());
    out.kind = DirectionKind::elliptic3;
  } else {
    // x^2 y and x y^2 are absorbed by the quadrics xy (1 + linear); the perfect cubes remain
    const double u = std::cbrt(k30), v = std::cbrt(k03);
    if (std::hypot(k30, k03) < tol.singular * scale) throw Error(Errc::singular_point, "quadratic point");
    out.angles.push_back(mod_pi(std::atan2(u, -v)));
    out.kind = DirectionKind::hyperbolic1;
  }
  return out;
}

}  // namespace quadrapt
