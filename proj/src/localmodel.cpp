#include "quadrapt/localmodel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace quadrapt {

namespace {

constexpr double kPi = 3.14159265358979323846;

int sign(double v) { return (v > 0) - (v < 0); }

double homogeneous_value(const std::vector<double>& c, double t) {
  const int n = int(c.size()) - 1;
  const double x = std::cos(t), y = std::sin(t);
  double r = 0;
  for (int k = 0; k <= n; ++k) r += c[k] * std::pow(x, n - k) * std::pow(y, k);
  return r;
}

// coefficients after x = cX - sY, y = sX + cY
std::vector<double> rotate_form(const std::vector<double>& c, double cs, double sn) {
  const int n = int(c.size()) - 1;
  std::vector<double> out(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    std::vector<double> poly{1.0};
    auto mul = [&poly](double a0, double a1) {
      std::vector<double> r(poly.size() + 1, 0.0);
      for (size_t i = 0; i < poly.size(); ++i) {
        r[i] += poly[i] * a0;
        r[i + 1] += poly[i] * a1;
      }
      poly = r;
    };
    for (int i = 0; i < n - k; ++i) mul(cs, -sn);
    for (int i = 0; i < k; ++i) mul(sn, cs);
    for (int i = 0; i <= n; ++i) out[i] += c[k] * poly[i];
  }
  return out;
}

struct RootCluster {
  double angle;
  int multiplicity;
  bool suspicious;
};

struct RotatedForm {
  double gamma;
  std::vector<double> g;  // g[k] multiplies m^k, m = tan(angle - gamma)
};

RotatedForm rotate_for_roots(const std::vector<double>& c) {
  const int n = int(c.size()) - 1;
  double gamma = 0, best = -1;
  const int candidates = 4 * n + 4;
  for (int m = 0; m < candidates; ++m) {
    const double g = m * kPi / candidates;
    const double v = std::abs(homogeneous_value(c, g + kPi / 2));
    if (v > best) {
      best = v;
      gamma = g;
    }
  }
  return {gamma, rotate_form(c, std::cos(gamma), std::sin(gamma))};
}

std::vector<RootCluster> root_clusters(const std::vector<double>& c, double tol) {
  const int n = int(c.size()) - 1;
  double scale = 0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0) throw Error(Errc::invalid_parameter, "form vanishes identically");
  if (n == 0) return {};
  const RotatedForm rf = rotate_for_roots(c);
  const auto& g = rf.g;

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -g[i] / g[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);

  auto gval = [&g](double m) {
    double r = 0;
    for (int k = int(g.size()) - 1; k >= 0; --k) r = r * m + g[k];
    return r;
  };
  auto gder = [&g](double m) {
    double r = 0;
    for (int k = int(g.size()) - 1; k >= 1; --k) r = r * m + k * g[k];
    return r;
  };

  struct Cand {
    double m;
    bool weak;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> z = es.eigenvalues()[i];
    const double mag = 1 + std::abs(z);
    if (std::abs(z.imag()) > 1e-6 * mag) continue;
    double m = z.real();
    for (int it = 0; it < 4; ++it) {
      const double d = gder(m);
      if (d == 0) break;
      const double next = m - gval(m) / d;
      if (std::abs(gval(next)) >= std::abs(gval(m))) break;
      m = next;
    }
    cands.push_back({m, std::abs(z.imag()) > tol * mag});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.m < b.m; });

  std::vector<RootCluster> out;
  for (size_t i = 0; i < cands.size();) {
    size_t j = i + 1;
    bool weak = cands[i].weak;
    while (j < cands.size() && std::abs(cands[j].m - cands[i].m) < 1e-6 * (1 + std::abs(cands[i].m))) {
      weak = weak || cands[j].weak;
      ++j;
    }
    double mean = 0;
    for (size_t k = i; k < j; ++k) mean += cands[k].m;
    mean /= double(j - i);
    const int mult = int(j - i);
    out.push_back({std::fmod(std::fmod(std::atan(mean) + rf.gamma, kPi) + kPi, kPi), mult, weak || mult > 1});
    i = j;
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) { return a.angle < b.angle; });
  return out;
}

// Model coefficients in sign-classified form: 2 for delta boundary, 6 for Delta
double rel_tol(double tol, double M, int power) { return tol * std::pow(std::max(M, 1e-300), power); }

}  // namespace

const char* region_name(Region r) { return r == Region::elliptic ? "elliptic" : "hyperbolic"; }

const char* portrait_name(Portrait p) {
  switch (p) {
    case Portrait::D1: return "D1";
    case Portrait::D2: return "D2";
    case Portrait::D3: return "D3";
    case Portrait::non_simple: return "NonSimple";
    case Portrait::boundary: return "Boundary";
  }
  return "?";
}

const char* case_name(HyperbolicCase c) {
  switch (c) {
    case HyperbolicCase::BC16: return "BC16";
    case HyperbolicCase::BCm16: return "BCm16";
    case HyperbolicCase::BC0: return "BC0";
    case HyperbolicCase::other: return "Other";
  }
  return "?";
}

Region parse_region(const std::string& s) {
  if (s == "elliptic") return Region::elliptic;
  if (s == "hyperbolic") return Region::hyperbolic;
  throw Error(Errc::usage, "region must be elliptic or hyperbolic, got " + s);
}

double Quartic::operator()(double x, double y) const {
  return (((p[0] * x + p[1] * y) * x + p[2] * y * y) * x + p[3] * y * y * y) * x + p[4] * y * y * y * y;
}

double Quartic::at(double t) const { return (*this)(std::cos(t), std::sin(t)); }

double Quartic::slope(double t) const {
  const double x = std::cos(t), y = std::sin(t);
  const double px = 4 * p[0] * x * x * x + 3 * p[1] * x * x * y + 2 * p[2] * x * y * y + p[3] * y * y * y;
  const double py = p[1] * x * x * x + 2 * p[2] * x * x * y + 3 * p[3] * x * y * y + 4 * p[4] * y * y * y;
  return -y * px + x * py;
}

double Quartic::max_abs() const {
  double m = 0;
  for (double v : p) m = std::max(m, std::abs(v));
  return m;
}

double Quartic::S() const {
  const double A = p[0], B = p[1] / 4, C = p[2] / 6, D = p[3] / 4, E = p[4];
  return A * E - 4 * B * D + 3 * C * C;
}

double Quartic::T() const {
  const double A = p[0], B = p[1] / 4, C = p[2] / 6, D = p[3] / 4, E = p[4];
  return A * C * E + 2 * B * C * D - A * D * D - B * B * E - C * C * C;
}

std::vector<double> homogeneous_real_roots(const std::vector<double>& c, double tol) {
  std::vector<double> out;
  for (const auto& r : root_clusters(c, tol)) out.push_back(r.angle);
  return out;
}

QuarticRoots quartic_real_roots(const Quartic& P, double tol) {
  const double M = P.max_abs();
  if (M == 0) throw Error(Errc::invalid_parameter, "quartic vanishes identically");
  QuarticRoots out;
  const std::vector<double> c(P.p.begin(), P.p.end());
  bool suspicious = false;
  for (const auto& r : root_clusters(c, tol)) {
    out.angles.push_back(r.angle);
    out.multiplicity.push_back(r.multiplicity);
    suspicious = suspicious || r.suspicious;
  }
  out.count = int(out.angles.size());
  const double S = P.S(), T = P.T();
  out.discriminant = S * S * S - 27 * T * T;

  if (std::abs(out.discriminant) <= rel_tol(tol, M, 6)) {
    out.near_boundary = true;
    out.predicted_count = -1;
    return out;
  }
  if (out.discriminant < 0) {
    out.predicted_count = 2;
  } else {
    // Rees conditions on the dehomogenized quartic; no root at infinity after rotation
    const auto rf = rotate_for_roots(c);
    const double a = rf.g[4], b = rf.g[3], cc = rf.g[2], d = rf.g[1], e = rf.g[0];
    const double p8 = 8 * a * cc - 3 * b * b;
    const double D = 64 * a * a * a * e - 16 * a * a * cc * cc + 16 * a * b * b * cc - 16 * a * a * b * d -
                     3 * b * b * b * b;
    out.predicted_count = (p8 < 0 && D < 0) ? 4 : 0;
  }
  out.near_boundary = suspicious;
  if (out.predicted_count != out.count && !suspicious)
    throw Error(Errc::boundary, "root count " + std::to_string(out.count) + " disagrees with discriminant count " +
                                    std::to_string(out.predicted_count));
  return out;
}

std::optional<std::pair<double, double>> normalize_elliptic(double a, double b, double c, double d) {
  const std::complex<double> alpha((a + d) / 2, (c - b) / 2), beta((a - d) / 2, (b + c) / 2);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (std::abs(alpha) <= 1e-12 * scale || scale == 0) return std::nullopt;
  const double psi = (-kPi / 2 - std::arg(alpha)) / 4;
  const std::complex<double> bn = beta * std::polar(1.0, 2 * psi) / (2 * std::abs(alpha));
  return std::make_pair(bn.real(), bn.imag());
}

Portrait elliptic_portrait_of(double aN, double hN) {
  const double astro = std::cbrt(aN * aN) + std::cbrt(hN * hN);
  if (astro > 1) return Portrait::D1;
  if (aN * aN + hN * hN > 0.25) return Portrait::D2;
  return Portrait::D3;
}

EllipticModel make_elliptic(double a, double b, double c, double d, const ModelTolerances& tol) {
  EllipticModel m;
  m.a = a;
  m.b = b;
  m.c = c;
  m.d = d;
  const CharPoly cp = char_polys(m);
  m.S = cp.P.S();
  m.T = cp.P.T();
  m.Delta = m.S * m.S * m.S - 27 * m.T * m.T;
  m.delta = a * d - b * c;
  if (auto n = normalize_elliptic(a, b, c, d)) {
    m.normalizable = true;
    m.aNorm = n->first;
    m.hNorm = n->second;
    const double r2 = m.aNorm * m.aNorm + m.hNorm * m.hNorm;
    m.astroid = 27 * m.aNorm * m.aNorm * m.hNorm * m.hNorm - std::pow(1 - r2, 3);
  }
  const double M = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  m.simple = M > 0 && std::abs(m.delta) > rel_tol(tol.boundary, M, 2);
  if (M > 0) {
    try {
      m.rootCountP = quartic_real_roots(cp.P, tol.boundary).count;
    } catch (const Error&) {
      m.rootCountP = -1;
    }
  }
  if (!m.simple) {
    m.portrait = Portrait::non_simple;
    return m;
  }
  try {
    const EllipticClass cl = classify(m, tol);
    m.portrait = cl.portrait;
    m.index = cl.index;
  } catch (const Error& e) {
    if (e.code() != Errc::boundary) throw;
    m.portrait = Portrait::boundary;
    m.index = Rational(-sign(m.delta), 3);
  }
  return m;
}

EllipticClass classify(const EllipticModel& m, const ModelTolerances& tol) {
  const double M = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  if (M == 0 || std::abs(m.delta) <= rel_tol(tol.boundary, M, 2))
    throw Error(Errc::boundary, "delta = 0: non-simple");
  if (std::abs(m.Delta) <= rel_tol(tol.boundary, M, 6)) throw Error(Errc::boundary, "Delta = 0: double root of P");
  EllipticClass out;
  if (m.normalizable) {
    out.portrait = elliptic_portrait_of(m.aNorm, m.hNorm);
  } else {
    // only the signs of the projective invariants are available
    out.portrait = m.Delta < 0 ? Portrait::D1 : (m.delta > 0 ? Portrait::D3 : Portrait::D2);
  }
  out.roots = out.portrait == Portrait::D1 ? 2 : 4;
  out.index = out.portrait == Portrait::D3 ? Rational(-1, 3) : Rational(1, 3);
  return out;
}

namespace {

struct HypNormal {
  HyperbolicCase label;
  double a, b, c, d;
};

HypNormal hyperbolic_normal(double a, double b, double c, double d, double tol) {
  const double M = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  HypNormal n;
  if (std::abs(b * c) > rel_tol(tol, M, 2)) {
    const double mu = std::sqrt(4 / std::abs(b)), nu = std::sqrt(4 / std::abs(c));
    n = {b * c > 0 ? HyperbolicCase::BC16 : HyperbolicCase::BCm16, a * mu * mu * mu / nu, b * mu * mu, c * nu * nu,
         d * nu * nu * nu / mu};
    return n;
  }
  n = {HyperbolicCase::BC0, a, b, c, d};
  if (std::abs(n.b) > std::abs(n.c)) {
    // swap x and y
    std::swap(n.a, n.d);
    std::swap(n.b, n.c);
  }
  n.b = 0;
  if (std::abs(n.c) > rel_tol(tol, M, 1)) {
    if (n.c < 0) {
      n.a = -n.a;
      n.c = -n.c;
      n.d = -n.d;
    }
    const double nu = std::sqrt(4 / n.c);
    n.a = n.a / nu;
    n.c = 4;
    n.d = n.d * nu * nu * nu;
  } else {
    n.c = 0;
  }
  return n;
}

}  // namespace

HyperbolicModel make_hyperbolic(double a, double b, double c, double d, double e, const ModelTolerances& tol) {
  HyperbolicModel m;
  m.a = a;
  m.b = b;
  m.c = c;
  m.d = d;
  m.e = e;
  m.S = a * d - b * c / 4;
  m.T = -(a * c * c + d * b * b) / 16;
  m.Delta = m.S * m.S * m.S - 27 * m.T * m.T;
  m.delta = a * d - b * c;
  const double M = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  m.simple = M > 0 && std::abs(m.delta) > rel_tol(tol.boundary, M, 2);
  if (M > 0) {
    const HypNormal n = hyperbolic_normal(a, b, c, d, tol.boundary);
    m.caseLabel = n.label;
    m.an = n.a;
    m.bn = n.b;
    m.cn = n.c;
    m.dn = n.d;
    try {
      m.rootCountP = quartic_real_roots(char_polys(m).P, tol.boundary).count;
    } catch (const Error&) {
      m.rootCountP = -1;
    }
  }
  if (!m.simple) {
    m.region = "NonSimple";
    return m;
  }
  try {
    const HyperbolicClass cl = classify(m, tol);
    m.region = cl.region;
    m.index = cl.index;
  } catch (const Error& err) {
    if (err.code() != Errc::boundary) throw;
    m.region = "Boundary";
    m.index = sign(m.delta);
  }
  return m;
}

HyperbolicClass classify(const HyperbolicModel& m, const ModelTolerances& tol) {
  const double M = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  if (M == 0 || std::abs(m.delta) <= rel_tol(tol.boundary, M, 2))
    throw Error(Errc::boundary, "delta = 0: non-simple");
  const HypNormal n = hyperbolic_normal(m.a, m.b, m.c, m.d, tol.boundary);
  const double ad = n.a * n.d;
  const double Mn = std::max({std::abs(n.a), std::abs(n.b), std::abs(n.c), std::abs(n.d)});
  HyperbolicClass out;
  out.caseLabel = n.label;
  switch (n.label) {
    case HyperbolicCase::BC16: {
      const double D = std::pow(ad - 4, 3) - 27 * (n.a + n.d) * (n.a + n.d);
      if (std::abs(D) <= rel_tol(tol.boundary, Mn, 6)) throw Error(Errc::boundary, "Delta = 0");
      if (D > 0) {
        out.region = "Delta>0";
        out.roots = 0;
        out.index = 1;
      } else {
        out.region = ad - 16 > 0 ? "Delta<0,delta>0" : "Delta<0,delta<0";
        out.roots = 2;
        out.index = ad - 16 > 0 ? 1 : -1;
      }
      break;
    }
    case HyperbolicCase::BCm16: {
      const double D = std::pow(ad + 4, 3) - 27 * (n.a + n.d) * (n.a + n.d);
      if (std::abs(D) <= rel_tol(tol.boundary, Mn, 6)) throw Error(Errc::boundary, "Delta = 0");
      if (D > 0 && ad < 2) {
        out.region = "I";
        out.roots = 4;
        out.index = 1;
      } else if (D > 0) {
        out.region = "II";
        out.roots = 0;
        out.index = 1;
      } else {
        out.region = ad + 16 > 0 ? "III,delta>0" : "III,delta<0";
        out.roots = 2;
        out.index = ad + 16 > 0 ? 1 : -1;
      }
      break;
    }
    default: {
      if (std::abs(n.c) == 0) {
        // P = a x^4 + d y^4
        out.region = ad > 0 ? "b=c=0,ad>0" : "b=c=0,ad<0";
        out.roots = ad > 0 ? 0 : 2;
        out.index = ad > 0 ? 1 : -1;
        break;
      }
      const double D = n.a * n.a * (n.a * n.d * n.d * n.d - 27);
      if (std::abs(D) <= rel_tol(tol.boundary, Mn, 6)) throw Error(Errc::boundary, "Delta = 0");
      if (ad < 0) {
        out.region = "ad<0";
        out.roots = 2;
        out.index = -1;
      } else {
        out.region = D > 0 ? "ad>0,outside" : "ad>0,inside";
        out.roots = D > 0 ? 0 : 2;
        out.index = 1;
      }
    }
  }
  return out;
}

CharPoly char_polys(const EllipticModel& m) {
  CharPoly cp{Region::elliptic, m.a, m.b, m.c, m.d, {}, {}};
  cp.P.p = {m.a, m.b - 3 * m.c, -3 * (m.a + m.d), m.c - 3 * m.b, m.d};
  cp.Q.p = {m.c, 3 * m.a + m.d, 3 * (m.b - m.c), -m.a - 3 * m.d, -m.b};
  return cp;
}

CharPoly char_polys(const HyperbolicModel& m) {
  CharPoly cp{Region::hyperbolic, m.a, m.b, m.c, m.d, {}, {}};
  cp.P.p = {m.a, m.b, 0, m.c, m.d};
  cp.Q.p = {0, m.a, m.b - m.c, -m.d, 0};
  return cp;
}

NormalizedJet normalize_jet(const Jet2d& j) {
  if (j.order() < 2) throw Error(Errc::invalid_parameter, "normalization needs a 2-jet");
  Jet2d f = j;
  f.coeff(0, 0) = 0;
  if (f.order() >= 1) {
    f.coeff(1, 0) = 0;
    f.coeff(0, 1) = 0;
  }
  Eigen::Matrix2d H;
  H << 2 * f.coeff(2, 0), f.coeff(1, 1), f.coeff(1, 1), 2 * f.coeff(0, 2);
  const double det = H.determinant();
  const double scale = H.norm();
  if (scale == 0 || std::abs(det) < 1e-12 * scale * scale)
    throw Error(Errc::degenerate_chart, "parabolic point: Hessian is singular");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
  const Eigen::Vector2d ev = es.eigenvalues();
  const Eigen::Matrix2d V = es.eigenvectors();
  NormalizedJet out;
  if (det > 0) {
    out.region = Region::elliptic;
    if (ev[0] < 0) {
      f = -f;
      H = -H;
    }
    const Eigen::Vector2d lam = ev.cwiseAbs();
    out.L = V * lam.cwiseSqrt().cwiseInverse().asDiagonal() * V.transpose();
  } else {
    out.region = Region::hyperbolic;
    // ev[0] < 0 < ev[1]
    Eigen::Matrix2d L1;
    L1.col(0) = V.col(1) / std::sqrt(ev[1]);
    L1.col(1) = V.col(0) / std::sqrt(-ev[0]);
    Eigen::Matrix2d R;
    R << 1, 1, 1, -1;
    out.L = L1 * R / std::sqrt(2.0);
  }
  Jet2d g = linear_substitute(f, out.L);
  out.jet = Jet2d(g.order(), Jet2d::Point::Zero());
  out.jet.coefficients() = g.coefficients();
  return out;
}

namespace {

void require_quadratic(const Jet2d& j, bool elliptic, const ModelTolerances& tol) {
  if (j.order() < 4) throw Error(Errc::invalid_parameter, "local model needs a 4-jet");
  const double e = tol.jet;
  bool ok = std::abs(j.coeff(1, 0)) < e && std::abs(j.coeff(0, 1)) < e;
  if (elliptic)
    ok = ok && std::abs(j.coeff(2, 0) - 0.5) < e && std::abs(j.coeff(0, 2) - 0.5) < e && std::abs(j.coeff(1, 1)) < e;
  else
    ok = ok && std::abs(j.coeff(2, 0)) < e && std::abs(j.coeff(0, 2)) < e && std::abs(j.coeff(1, 1) - 1) < e;
  if (!ok) throw Error(Errc::normalization_required, elliptic ? "2-jet is not (x^2+y^2)/2" : "2-jet is not xy");
  const CubicFormValue cf = cubic_components(j);
  if (cf.max_abs() > e * (1 + cf.magnitude)) throw Error(Errc::not_quadratic_point, "cubic form does not vanish");
}

}  // namespace

EllipticModel extract_elliptic(const Jet2d& j, const ModelTolerances& tol) {
  require_quadratic(j, true, tol);
  const auto n = cubic_component_jets(j);
  return make_elliptic(4 * n.n111.coeff(1, 0), 4 * n.n111.coeff(0, 1), 4 * n.n222.coeff(1, 0),
                       4 * n.n222.coeff(0, 1), tol);
}

HyperbolicModel extract_hyperbolic(const Jet2d& j, const ModelTolerances& tol) {
  require_quadratic(j, false, tol);
  const auto n = cubic_component_jets(j);
  return make_hyperbolic(-n.n111.coeff(1, 0), -n.n111.coeff(0, 1), -n.n222.coeff(1, 0), -n.n222.coeff(0, 1),
                         4 * j.coeff(2, 2), tol);
}

}  // namespace quadrapt
