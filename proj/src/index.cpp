#include "quadrapt/index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace quadrapt {

namespace {

constexpr double kPi = 3.14159265358979323846;

double step_angle(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
  return std::atan2(u.x() * v.y() - u.y() * v.x(), u.dot(v));
}

}  // namespace

WindingResult winding(const LoopMap& m) {
  WindingResult res;
  res.min_norm = std::numeric_limits<double>::infinity();
  auto sample = [&](double t) {
    const Eigen::Vector2d v = m.sampler(t);
    ++res.evaluations;
    const double n = v.norm();
    res.min_norm = std::min(res.min_norm, n);
    if (!(n > m.zero_tolerance))
      throw Error(Errc::near_singular, "loop passes within tolerance of a zero at t = " + std::to_string(t));
    return v;
  };

  struct Segment {
    double t0, t1;
    Eigen::Vector2d v0, v1;
    int depth;
  };
  const int N = std::max(m.initial_samples, 4);
  std::vector<Eigen::Vector2d> vs(N + 1);
  for (int k = 0; k < N; ++k) vs[k] = sample(2 * kPi * k / N);
  vs[N] = vs[0];

  double total = 0;
  std::vector<Segment> stack;
  for (int k = N - 1; k >= 0; --k) stack.push_back({2 * kPi * k / N, 2 * kPi * (k + 1) / N, vs[k], vs[k + 1], 0});
  while (!stack.empty()) {
    Segment s = stack.back();
    stack.pop_back();
    const double a = step_angle(s.v0, s.v1);
    if (std::abs(a) < kPi / 2) {
      total += a;
      continue;
    }
    if (s.depth >= m.max_depth) throw Error(Errc::near_singular, "winding refinement exceeded the depth limit");
    const double tm = 0.5 * (s.t0 + s.t1);
    const Eigen::Vector2d vm = sample(tm);
    stack.push_back({tm, s.t1, vm, s.v1, s.depth + 1});
    stack.push_back({s.t0, tm, s.v0, vm, s.depth + 1});
  }
  res.degree = int(std::lround(total / (2 * kPi)));
  return res;
}

int winding_degree(const LoopMap& m) { return winding(m).degree; }

EllipticIndex elliptic_index_detail(const EllipticModel& m) {
  if (!m.simple) throw Error(Errc::non_simple, "delta = 0: singularity is not simple");
  const double scale = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  LoopMap ab;
  ab.sampler = [&m](double t) {
    const double x = std::cos(t), y = std::sin(t);
    return Eigen::Vector2d(m.a * x + m.b * y, m.c * x + m.d * y);
  };
  ab.zero_tolerance = 1e-12 * scale;
  const CharPoly cp = char_polys(m);
  LoopMap pq;
  pq.sampler = [&cp](double t) { return Eigen::Vector2d(cp.P.at(t), cp.Q.at(t)); };
  pq.zero_tolerance = 1e-12 * scale;

  EllipticIndex out;
  out.degAB = winding_degree(ab);
  out.degPQ = winding_degree(pq);
  out.index = Rational(-out.degAB, 3);
  if (Rational(3 - out.degPQ, 3) != out.index)
    throw Error(Errc::near_singular, "deg(A1+iB1) and deg(P+iQ) are inconsistent");
  return out;
}

Rational elliptic_index(const EllipticModel& m) { return elliptic_index_detail(m).index; }

int line_field_index(double a, double b, double c, double d) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  LoopMap lm;
  lm.sampler = [=](double t) {
    const double x = std::cos(t), y = std::sin(t);
    return Eigen::Vector2d(std::cbrt(c * x + d * y), -std::cbrt(a * x + b * y));
  };
  lm.zero_tolerance = 1e-6 * std::cbrt(scale);
  return winding_degree(lm);
}

int hyperbolic_index(const HyperbolicModel& m) {
  if (!m.simple) throw Error(Errc::non_simple, "delta = 0: singularity is not simple");
  const double scale = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  if (std::abs(m.a * m.d) <= 1e-9 * scale * scale) return line_field_index(m.a, m.b, m.c, m.d);
  const CharPoly cp = char_polys(m);
  LoopMap lm;
  lm.sampler = [&cp](double t) { return Eigen::Vector2d(cp.Q.at(t), cp.P.at(t)); };
  lm.zero_tolerance = 1e-12 * scale;
  return winding_degree(lm) + 1;
}

double HomogeneousPoly::operator()(double x, double y) const {
  const int n = degree();
  double r = 0;
  for (int k = 0; k <= n; ++k) r += c[k] * std::pow(x, n - k) * std::pow(y, k);
  return r;
}

HomogeneousPoly HomogeneousPoly::dx() const {
  const int n = degree();
  if (n <= 0) return {{0.0}};
  HomogeneousPoly r{std::vector<double>(n, 0.0)};
  for (int k = 0; k < n; ++k) r.c[k] = (n - k) * c[k];
  return r;
}

HomogeneousPoly HomogeneousPoly::dy() const {
  const int n = degree();
  if (n <= 0) return {{0.0}};
  HomogeneousPoly r{std::vector<double>(n, 0.0)};
  for (int k = 1; k <= n; ++k) r.c[k - 1] = k * c[k];
  return r;
}

HomogeneousPoly HomogeneousPoly::operator-(const HomogeneousPoly& o) const {
  HomogeneousPoly r = *this;
  for (size_t k = 0; k < r.c.size() && k < o.c.size(); ++k) r.c[k] -= o.c[k];
  return r;
}

HomogeneousPoly HomogeneousPoly::operator*(double s) const {
  HomogeneousPoly r = *this;
  for (double& v : r.c) v *= s;
  return r;
}

double HomogeneousPoly::max_abs() const {
  double m = 0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

SemiHomogeneousForm SemiHomogeneousForm::from_h(const HomogeneousPoly& h) {
  if (h.degree() < 3) throw Error(Errc::invalid_parameter, "h must have degree at least 3");
  SemiHomogeneousForm s;
  s.n = h.degree() - 3;
  s.h = h;
  s.An = h.dx().dx().dx() - h.dx().dy().dy() * 3;
  s.Bn = h.dy().dy().dy() - h.dx().dx().dy() * 3;
  return s;
}

SemiHomogeneousForm SemiHomogeneousForm::from_components(const HomogeneousPoly& An, const HomogeneousPoly& Bn) {
  if (An.degree() != Bn.degree()) throw Error(Errc::invalid_parameter, "An and Bn must have equal degree");
  SemiHomogeneousForm s;
  s.n = An.degree();
  s.An = An;
  s.Bn = Bn;
  return s;
}

void check_semi_homogeneous(const SemiHomogeneousForm& s, double tol) {
  const double ma = s.An.max_abs(), mb = s.Bn.max_abs();
  const double scale = std::max(ma, mb);
  if (scale == 0) throw Error(Errc::not_semi_homogeneous, "An and Bn vanish identically");
  if (s.n == 0) return;
  auto shared = [&](const HomogeneousPoly& p, const HomogeneousPoly& q, double mp) {
    if (mp <= 1e-14 * scale) {
      // p vanishes identically: q must have no real root
      return !homogeneous_real_roots(q.c).empty();
    }
    for (double t : homogeneous_real_roots(p.c))
      if (std::abs(q(std::cos(t), std::sin(t))) < tol * scale) return true;
    return false;
  };
  if (shared(s.An, s.Bn, ma) || shared(s.Bn, s.An, mb))
    throw Error(Errc::not_semi_homogeneous, "An and Bn share a real projective root");
}

Rational semihomogeneous_index(const SemiHomogeneousForm& s) {
  check_semi_homogeneous(s);
  const double scale = std::max(s.An.max_abs(), s.Bn.max_abs());
  LoopMap lm;
  lm.sampler = [&s](double t) {
    const double x = std::cos(t), y = std::sin(t);
    return Eigen::Vector2d(s.An(x, y), s.Bn(x, y));
  };
  lm.zero_tolerance = 1e-12 * scale;
  return Rational(-winding_degree(lm), 3);
}

LoewnerReport loewner_check(int trials, int maxDegree, std::uint64_t seed) {
  if (trials < 0) throw Error(Errc::invalid_parameter, "trials must be non-negative");
  if (maxDegree < 4) throw Error(Errc::invalid_parameter, "maxDegree must be at least 4");
  LoewnerReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.maxDegree = maxDegree;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(4, maxDegree);
  const int cap = 20 * trials + 100;
  for (int attempt = 0; rep.accepted < trials && attempt < cap; ++attempt) {
    HomogeneousPoly h;
    h.c.resize(deg(rng) + 1);
    for (double& v : h.c) v = coef(rng);
    try {
      const Rational I = semihomogeneous_index(SemiHomogeneousForm::from_h(h));
      ++rep.accepted;
      ++rep.histogram[I];
      if (I > Rational(1)) ++rep.violations;
    } catch (const Error& e) {
      if (e.code() != Errc::not_semi_homogeneous && e.code() != Errc::near_singular) throw;
      ++rep.rejected;
    }
  }
  return rep;
}

}  // namespace quadrapt
