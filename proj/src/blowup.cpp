#include "quadrapt/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "quadrapt/cubicform.hpp"
#include "quadrapt/parallel.hpp"

namespace quadrapt {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_2pi(double a) { return std::remainder(a, 2 * kPi); }
double wrap_pi(double a) { return std::remainder(a, kPi); }

double arg_ab(const CharPoly& cp, double t) {
  const double x = std::cos(t), y = std::sin(t);
  return std::atan2(cp.c * x + cp.d * y, cp.a * x + cp.b * y);
}

// arg(A1 + i B1) / 3 followed continuously from t = 0
double continuous_theta(const CharPoly& cp, double t) {
  double prev = arg_ab(cp, 0), acc = prev;
  const int n = std::max(1, int(std::ceil(std::abs(t) / 0.005)));
  for (int k = 1; k <= n; ++k) {
    const double cur = arg_ab(cp, t * k / n);
    acc += wrap_2pi(cur - prev);
    prev = cur;
  }
  return acc / 3;
}

double line_angle(const CharPoly& cp, double t) {
  const double x = std::cos(t), y = std::sin(t);
  return std::atan2(-std::cbrt(cp.a * x + cp.b * y), std::cbrt(cp.c * x + cp.d * y));
}

// phi'(t0), phi = pi/2 - (null direction), by central differences
double phi_prime(const CharPoly& cp, double t0) {
  const double h = 1e-5;
  if (cp.kind == Region::elliptic) return wrap_2pi(arg_ab(cp, t0 + h) - arg_ab(cp, t0 - h)) / (2 * h) / 3;
  return -wrap_pi(line_angle(cp, t0 + h) - line_angle(cp, t0 - h)) / (2 * h);
}

double distance_to_integer(double v) { return std::abs(v - std::round(v)); }

Eigen::Vector2d unit(double a) { return {std::cos(a), std::sin(a)}; }

Eigen::Vector2d pick(Region region, const CharPoly& cp, const Eigen::Vector2d& p, const Eigen::Vector2d& heading) {
  Eigen::Vector2d best = heading;
  double bestDot = -1;
  for (double psi : model_directions(region, cp.a, cp.b, cp.c, cp.d, p)) {
    Eigen::Vector2d u = unit(psi);
    const double dt = u.dot(heading);
    if (std::abs(dt) > bestDot) {
      bestDot = std::abs(dt);
      best = dt < 0 ? Eigen::Vector2d(-u) : u;
    }
  }
  return best;
}

double angle_between(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
  return std::abs(std::atan2(u.x() * v.y() - u.y() * v.x(), u.dot(v)));
}

std::vector<Eigen::Vector2d> trace_one_way(Region region, const CharPoly& cp, const Eigen::Vector2d& seed,
                                           const Eigen::Vector2d& dir, const Bbox& box, const LeafOptions& opt,
                                           std::string* diagnostic) {
  const double h0 = opt.step > 0 ? opt.step : box.diagonal() / 2000;
  std::vector<Eigen::Vector2d> pts{seed};
  Eigen::Vector2d p = seed;
  Eigen::Vector2d heading = pick(region, cp, p, dir);
  for (int steps = 0; steps < opt.budget; ++steps) {
    const double r = p.norm();
    if (r < opt.min_radius) break;
    double s = std::min(h0, 0.25 * r);
    bool accepted = false;
    Eigen::Vector2d pn, hn;
    while (!accepted) {
      const Eigen::Vector2d k1 = pick(region, cp, p, heading);
      const Eigen::Vector2d k2 = pick(region, cp, p + 0.5 * s * k1, k1);
      const Eigen::Vector2d k3 = pick(region, cp, p + 0.5 * s * k2, k2);
      const Eigen::Vector2d k4 = pick(region, cp, p + s * k3, k3);
      pn = p + s * (k1 + 2 * k2 + 2 * k3 + k4) / 6;
      hn = pick(region, cp, pn, k1);
      if (angle_between(hn, heading) <= kPi / 4) {
        accepted = true;
      } else {
        s *= 0.5;
        if (s < 1e-12 * h0) break;
      }
    }
    if (!accepted) {
      if (diagnostic) *diagnostic = "direction field degenerate along leaf; truncated";
      break;
    }
    pts.push_back(pn);
    p = pn;
    heading = hn;
    if (!box.contains(p)) break;
  }
  return pts;
}

// Separatrix leaving the blow-up singularity (0, t0) on the side sign(r0), integrated in the (r, t) strip
// until |r| reaches r_switch and then continued in the plane.
std::vector<Eigen::Vector2d> separatrix(Region region, const CharPoly& cp, double t0, double r0, const Bbox& box) {
  const double r_switch = 0.02 * box.diagonal();
  auto lift = [&](double t, double psi_prev) {
    double best = psi_prev, bestd = 1e300;
    for (double psi : model_directions(region, cp.a, cp.b, cp.c, cp.d, unit(t))) {
      const double cand = psi + kPi * std::round((psi_prev - psi) / kPi);
      if (std::abs(cand - psi_prev) < bestd) {
        bestd = std::abs(cand - psi_prev);
        best = cand;
      }
    }
    return best;
  };
  struct State {
    double r, t, psi;
  };
  auto field = [&](const State& s, Eigen::Vector2d& out) {
    const double psi = lift(s.t, s.psi);
    out = {s.r * std::cos(psi - s.t), std::sin(psi - s.t)};
    return psi;
  };
  std::vector<Eigen::Vector2d> pts;
  State s{r0, t0, t0};
  const double dt = 0.01;
  Eigen::Vector2d v;
  for (int step = 0; step < 20000 && std::abs(s.r) < r_switch; ++step) {
    pts.push_back(s.r * unit(s.t));
    Eigen::Vector2d k1, k2, k3, k4;
    const double p1 = field(s, k1);
    const double p2 = field({s.r + 0.5 * dt * k1.x(), s.t + 0.5 * dt * k1.y(), p1}, k2);
    const double p3 = field({s.r + 0.5 * dt * k2.x(), s.t + 0.5 * dt * k2.y(), p2}, k3);
    field({s.r + dt * k3.x(), s.t + dt * k3.y(), p3}, k4);
    const Eigen::Vector2d inc = dt * (k1 + 2 * k2 + 2 * k3 + k4) / 6;
    s.r += inc.x();
    s.t += inc.y();
    s.psi = p1;
  }
  s.psi = field(s, v);
  const Eigen::Vector2d p = s.r * unit(s.t);
  const Eigen::Vector2d planar(v.x() * std::cos(s.t) - s.r * std::sin(s.t) * v.y(),
                               v.x() * std::sin(s.t) + s.r * std::cos(s.t) * v.y());
  auto rest = trace_one_way(region, cp, p, planar.normalized(), box, {}, nullptr);
  pts.insert(pts.end(), rest.begin(), rest.end());
  return pts;
}

template <typename Model>
PhasePortrait portrait_impl(Region region, const Model& m, const CharPoly& cp, const Bbox& box, int density) {
  if (!m.simple) throw Error(Errc::non_simple, "portrait requires a simple singularity");
  if (density < 1) throw Error(Errc::usage, "density must be positive");
  if (!(box.xmax > box.xmin && box.ymax > box.ymin)) throw Error(Errc::usage, "bounding box has zero area");
  PhasePortrait out;
  out.region = region;
  out.a = m.a;
  out.b = m.b;
  out.c = m.c;
  out.d = m.d;
  out.bbox = box;
  out.density = density;
  out.singularities = blowup_singularities(cp);

  struct Seed {
    Eigen::Vector2d p;
    Eigen::Vector2d dir;
    int branch;
  };
  std::vector<Seed> seeds;
  for (int i = 0; i < density; ++i)
    for (int j = 0; j < density; ++j) {
      const Eigen::Vector2d p(box.xmin + (i + 0.5) * (box.xmax - box.xmin) / density,
                              box.ymin + (j + 0.5) * (box.ymax - box.ymin) / density);
      if (p.norm() < 1e-3 * box.diagonal()) continue;
      const auto dirs = model_directions(region, m.a, m.b, m.c, m.d, p);
      for (size_t k = 0; k < dirs.size(); ++k) seeds.push_back({p, unit(dirs[k]), int(k) + 1});
    }

  std::vector<Polyline> leaves(seeds.size());
  std::vector<std::string> diags(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    leaves[i].branch = seeds[i].branch;
    leaves[i].points = trace_leaf(region, m.a, m.b, m.c, m.d, seeds[i].p, seeds[i].dir, box, {}, &diags[i]);
  });

  std::vector<Polyline> seps;
  for (const auto& s : out.singularities) {
    if (s.kind != SingularityKind::saddle) continue;
    for (double r0 : {1e-4, -1e-4}) {
      Polyline pl;
      pl.branch = s.branch;
      pl.separatrix = true;
      pl.points = separatrix(region, cp, s.t0, r0, box);
      seps.push_back(std::move(pl));
    }
  }
  for (auto& l : leaves) out.leaves.push_back(std::move(l));
  for (auto& s : seps) {
    out.separatrices.push_back(int(out.leaves.size()));
    out.leaves.push_back(std::move(s));
  }
  for (size_t i = 0; i < out.leaves.size(); ++i) out.leaves[i].id = int(i);
  for (size_t i = 0; i < diags.size(); ++i)
    if (!diags[i].empty()) out.diagnostics.push_back("leaf " + std::to_string(i) + ": " + diags[i]);
  return out;
}

}  // namespace

const char* kind_name(SingularityKind k) {
  switch (k) {
    case SingularityKind::saddle: return "saddle";
    case SingularityKind::node: return "node";
    case SingularityKind::non_hyperbolic: return "nonhyperbolic";
  }
  return "?";
}

std::vector<BlowupSingularity> blowup_singularities(const CharPoly& cp) {
  const double scale = std::max({std::abs(cp.a), std::abs(cp.b), std::abs(cp.c), std::abs(cp.d)});
  const double delta = cp.a * cp.d - cp.b * cp.c;
  if (scale == 0 || std::abs(delta) <= 1e-9 * scale * scale)
    throw Error(Errc::non_simple, "blow-up requires a simple singularity");
  if (cp.kind == Region::hyperbolic && std::abs(cp.a * cp.d) <= 1e-9 * scale * scale)
    throw Error(Errc::invalid_parameter, "blow-up of the line field requires ad != 0");

  const QuarticRoots roots = quartic_real_roots(cp.P);
  const int deg = delta > 0 ? 1 : -1;
  std::vector<BlowupSingularity> out;
  for (size_t i = 0; i < roots.angles.size(); ++i)
    for (int half = 0; half < 2; ++half) {
      BlowupSingularity s;
      s.t0 = roots.angles[i] + half * kPi;
      s.dP = cp.P.slope(s.t0);
      s.q = cp.Q.at(s.t0);
      s.phi_prime = phi_prime(cp, s.t0);
      const bool simple_root = roots.multiplicity[i] == 1 && std::abs(s.dP) > 1e-9 * cp.P.max_abs();
      s.kind = !simple_root ? SingularityKind::non_hyperbolic
                            : (s.dP * s.q < 0 ? SingularityKind::saddle : SingularityKind::node);
      if (cp.kind == Region::elliptic) {
        const double theta = continuous_theta(cp, s.t0);
        double best = 1e300;
        for (int j = 1; j <= 3; ++j) {
          const double dj = distance_to_integer((theta + (j - 2) * kPi / 3 + s.t0 - kPi / 2) / kPi);
          if (dj < best) {
            best = dj;
            s.branch = j;
          }
        }
        best = 1e300;
        for (int m = 0; m < 3; ++m) {
          const double phi = theta + 2 * kPi * m * deg / 3 - kPi / 3;
          const double dm = distance_to_integer((phi + s.t0 - kPi / 2) / kPi);
          if (dm < best) {
            best = dm;
            s.cover = s.t0 + 2 * kPi * m;
          }
        }
      } else {
        s.branch = 1;
        s.cover = s.t0;
      }
      out.push_back(s);
    }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.t0 < y.t0; });
  return out;
}

double blowup_identity_residual(const BlowupSingularity& s) {
  const double rhs = -3 * s.q * (1 + s.phi_prime);
  const double denom = std::abs(s.dP) + std::abs(rhs);
  return denom == 0 ? 0 : std::abs(s.dP - rhs) / denom;
}

int sign_of_Q_at_root(const HyperbolicModel& m, double t0) {
  const CharPoly cp = char_polys(m);
  const double direct = cp.Q.at(t0);
  const double sn = std::sin(t0), cs = std::cos(t0);
  auto sgn = [](double v) { return (v > 0) - (v < 0); };
  if (std::abs(sn) < 1e-12 || std::abs(cs) < 1e-12) return sgn(direct);
  const double closed = -sn * sn * (m.c + m.d * sn / cs);
  const double scale = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  if (sgn(closed) != sgn(direct) && std::abs(closed - direct) > 1e-8 * scale)
    throw Error(Errc::near_singular, "closed-form and direct Q disagree at the root");
  return sgn(closed);
}

double Bbox::diagonal() const { return std::hypot(xmax - xmin, ymax - ymin); }

bool Bbox::contains(const Eigen::Vector2d& p) const {
  return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax;
}

std::vector<double> model_directions(Region region, double a, double b, double c, double d,
                                     const Eigen::Vector2d& p) {
  const double A = a * p.x() + b * p.y(), B = c * p.x() + d * p.y();
  std::vector<double> out;
  if (region == Region::elliptic) {
    const double base = (kPi / 2 - std::atan2(B, A)) / 3;
    for (int k = 0; k < 3; ++k) out.push_back(mod_pi(base + k * kPi / 3));
    std::sort(out.begin(), out.end());
  } else {
    out.push_back(mod_pi(std::atan2(-std::cbrt(A), std::cbrt(B))));
  }
  return out;
}

std::vector<Eigen::Vector2d> trace_leaf(Region region, double a, double b, double c, double d,
                                        const Eigen::Vector2d& seed, const Eigen::Vector2d& dir, const Bbox& box,
                                        const LeafOptions& opt, std::string* diagnostic) {
  const CharPoly cp{region, a, b, c, d, {}, {}};
  auto fwd = trace_one_way(region, cp, seed, dir, box, opt, diagnostic);
  auto bwd = trace_one_way(region, cp, seed, -dir, box, opt, diagnostic);
  std::reverse(bwd.begin(), bwd.end());
  bwd.insert(bwd.end(), fwd.begin() + 1, fwd.end());
  return bwd;
}

PhasePortrait integrate_portrait(const EllipticModel& m, const Bbox& box, int density) {
  return portrait_impl(Region::elliptic, m, char_polys(m), box, density);
}

PhasePortrait integrate_portrait(const HyperbolicModel& m, const Bbox& box, int density) {
  return portrait_impl(Region::hyperbolic, m, char_polys(m), box, density);
}

Rational portrait_index(const PhasePortrait& p) {
  std::vector<BlowupSingularity> s = p.singularities;
  for (const auto& x : s)
    if (x.kind == SingularityKind::non_hyperbolic)
      throw Error(Errc::unsupported, "non-hyperbolic blow-up singularity");
  const int k = p.region == Region::elliptic ? 3 : 1;
  std::sort(s.begin(), s.end(), [](const auto& x, const auto& y) { return x.cover < y.cover; });
  int e = 0, h = 0;
  for (size_t i = 0; i < s.size() && s.size() > 1; ++i) {
    const auto& u = s[i];
    const auto& v = s[(i + 1) % s.size()];
    if (u.kind == SingularityKind::saddle && v.kind == SingularityKind::saddle) ++h;
    if (u.kind == SingularityKind::node && v.kind == SingularityKind::node) ++e;
  }
  if (s.size() == 1) h = s[0].kind == SingularityKind::saddle ? 1 : 0;
  return Rational(1) + Rational(e - h, 2 * k);
}

std::string portrait_csv(const PhasePortrait& p) {
  std::ostringstream os;
  os << "leafId,branch,x,y\n";
  char buf[96];
  for (const auto& l : p.leaves)
    for (const auto& q : l.points) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.9g,%.9g\n", l.id, l.branch, q.x(), q.y());
      os << buf;
    }
  return os.str();
}

std::string portrait_svg(const PhasePortrait& p) {
  const double W = 600, H = W * (p.bbox.ymax - p.bbox.ymin) / (p.bbox.xmax - p.bbox.xmin);
  auto X = [&](double x) { return (x - p.bbox.xmin) / (p.bbox.xmax - p.bbox.xmin) * W; };
  auto Y = [&](double y) { return (p.bbox.ymax - y) / (p.bbox.ymax - p.bbox.ymin) * H; };
  const char* colors[] = {"#1f5fa8", "#2a8a3e", "#b8860b"};
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                W, H, W, H);
  os << buf;
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& l : p.leaves) {
    if (l.points.size() < 2) continue;
    const char* stroke = l.separatrix ? "#c0392b" : colors[(l.branch - 1) % 3];
    std::snprintf(buf, sizeof buf, "<polyline class=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"%s\" points=\"",
                  l.separatrix ? "separatrix" : "leaf", stroke, l.separatrix ? "1.6" : "0.7");
    os << buf;
    for (const auto& q : l.points) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", X(q.x()), Y(q.y()));
      os << buf;
    }
    os << "\"/>\n";
  }
  const double rho = 0.04 * p.bbox.diagonal();
  const double rpx = rho / (p.bbox.xmax - p.bbox.xmin) * W;
  std::snprintf(buf, sizeof buf,
                "<circle class=\"exceptional\" cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"none\" stroke=\"black\"/>\n",
                X(0), Y(0), rpx);
  os << buf;
  for (const auto& s : p.singularities) {
    const double cx = X(rho * std::cos(s.t0)), cy = Y(rho * std::sin(s.t0));
    if (s.kind == SingularityKind::saddle)
      std::snprintf(buf, sizeof buf,
                    "<rect class=\"saddle\" x=\"%.2f\" y=\"%.2f\" width=\"6\" height=\"6\" fill=\"#c0392b\"/>\n",
                    cx - 3, cy - 3);
    else
      std::snprintf(buf, sizeof buf, "<circle class=\"%s\" cx=\"%.2f\" cy=\"%.2f\" r=\"3.5\" fill=\"#222\"/>\n",
                    s.kind == SingularityKind::node ? "node" : "nonhyperbolic", cx, cy);
    os << buf;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace quadrapt
