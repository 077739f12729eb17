#include "quadrapt/global.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "quadrapt/index.hpp"
#include "quadrapt/parallel.hpp"

namespace quadrapt {

namespace {

constexpr int kOrder = 4;
constexpr double kInf = std::numeric_limits<double>::infinity();
// first-order model coefficients of a normalized jet below this are noise
constexpr double kFlatJet = 1e-6;

struct Eval {
  Eigen::Vector2d xy;
  double z = 0;
  Eigen::Vector3d point;
  Jet2d jet;
};

// One chart of the atlas: a grid in parameter space, and graph jets over a fixed plane.
struct Sheet {
  std::string name;
  std::function<std::optional<Eval>(double u, double v)> sample;
  std::function<std::optional<Eval>(const Eigen::Vector2d& xy, double z_guess)> at;
  std::function<bool(const Eval&)> valid;
  Eigen::Vector2d lo, hi;
  double scale = 1;
};

double normalized_norm(const CubicFormValue& c) {
  const double h = std::sqrt(c.gxx * c.gxx + 2 * c.gxy * c.gxy + c.gyy * c.gyy);
  if (!(h > 0)) return kInf;
  return c.max_abs() / (h * h * h);
}

double parabolic_ratio(const CubicFormValue& c) {
  const double h2 = c.gxx * c.gxx + 2 * c.gxy * c.gxy + c.gyy * c.gyy;
  return h2 > 0 ? std::abs(c.hess) / h2 : 0;
}

double binary_value(const CubicFormValue& c, const Eigen::Vector2d& v) {
  const double x = v.x(), y = v.y();
  return c.n111 * x * x * x + 3 * c.n112 * x * x * y + 3 * c.n122 * x * y * y + c.n222 * y * y * y;
}

Sheet graph_sheet(const CatalogEntry& e) {
  const SurfaceChart chart = *e.chart;
  Sheet s;
  s.name = "graph";
  const auto [lo, hi] = chart.domain().bounds();
  s.lo = lo;
  s.hi = hi;
  s.scale = (hi - lo).norm();
  auto eval = [chart](const Eigen::Vector2d& xy) -> std::optional<Eval> {
    if (!chart.domain().contains(xy)) return std::nullopt;
    Eval r;
    r.xy = xy;
    r.jet = chart.raw_jet(xy, kOrder);
    r.z = r.jet.value();
    r.point = Eigen::Vector3d(xy.x(), xy.y(), r.z);
    return r;
  };
  s.sample = [eval](double u, double v) { return eval({u, v}); };
  s.at = [eval](const Eigen::Vector2d& xy, double) { return eval(xy); };
  s.valid = [chart](const Eval& r) { return chart.domain().contains(r.xy); };
  return s;
}

double ray_radius(const ImplicitSurface& surf, const Eigen::Vector3d& dir) {
  const Eigen::Vector3d c = surf.center;
  const double f0 = surf.F(c);
  if (f0 == 0) throw Error(Errc::degenerate_chart, "atlas center lies on the surface");
  double r0 = 0, r1 = 1e-3;
  int k = 0;
  while ((surf.F(c + r1 * dir) > 0) == (f0 > 0)) {
    r0 = r1;
    r1 *= 2;
    if (++k > 40) throw Error(Errc::degenerate_chart, "ray from the atlas center misses the surface");
  }
  for (int it = 0; it < 80 && r1 - r0 > 1e-15 * r1; ++it) {
    const double m = 0.5 * (r0 + r1);
    if ((surf.F(c + m * dir) > 0) == (f0 > 0))
      r0 = m;
    else
      r1 = m;
  }
  return 0.5 * (r0 + r1);
}

Sheet face_sheet(const ImplicitSurface& surf, int face) {
  const int axis = face / 2;
  const double sign = face % 2 == 0 ? 1.0 : -1.0;
  Frame3 frame;
  frame.origin = surf.center;
  frame.normal = sign * Eigen::Vector3d::Unit(axis);
  frame.e1 = Eigen::Vector3d::Unit(sign > 0 ? (axis + 1) % 3 : (axis + 2) % 3);
  frame.e2 = frame.normal.cross(frame.e1);

  Sheet s;
  s.name = std::string("face") + (sign > 0 ? "+" : "-") + "xyz"[axis];
  s.lo = {-1, -1};
  s.hi = {1, 1};
  auto jet_at = [surf, frame](const Eigen::Vector2d& xy, double z) -> std::optional<Eval> {
    try {
      Eval r;
      r.xy = xy;
      r.z = z;
      r.point = frame.point(xy.x(), xy.y(), z);
      r.jet = implicit_graph_jet(surf, frame, xy, z, kOrder);
      return r;
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  s.sample = [surf, frame, jet_at](double u, double v) -> std::optional<Eval> {
    const Eigen::Vector3d dir = (frame.normal + u * frame.e1 + v * frame.e2).normalized();
    const double r = ray_radius(surf, dir);
    const Eigen::Vector3d d = r * dir;
    return jet_at({d.dot(frame.e1), d.dot(frame.e2)}, d.dot(frame.normal));
  };
  s.at = [surf, frame, jet_at](const Eigen::Vector2d& xy, double z_guess) -> std::optional<Eval> {
    try {
      return jet_at(xy, solve_height(surf, frame, xy, z_guess));
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  s.valid = [](const Eval& r) {
    return r.z > 0 && std::abs(r.xy.x()) <= 1.5 * r.z && std::abs(r.xy.y()) <= 1.5 * r.z;
  };
  const Eigen::Vector3d top = ray_radius(surf, frame.normal) * frame.normal;
  s.scale = top.norm();
  return s;
}

std::vector<Sheet> atlas(const CatalogEntry& e) {
  if (e.chart) return {graph_sheet(e)};
  if (e.implicit) {
    std::vector<Sheet> out;
    for (int f = 0; f < 6; ++f) out.push_back(face_sheet(*e.implicit, f));
    return out;
  }
  throw Error(Errc::invalid_parameter, "surface has neither a chart nor an implicit equation");
}

struct Refined {
  bool converged = false;
  Eval at;
  double residual = kInf;
  int iterations = 0;
};

Refined refine(const Sheet& s, const Eval& seed, const SearchOptions& opt) {
  Refined r;
  r.at = seed;
  r.residual = normalized_norm(cubic_components(seed.jet));
  const double max_step = 0.1 * s.scale;
  for (int it = 0; it < opt.maxIterations; ++it) {
    r.iterations = it;
    if (r.residual < 1e-3 * opt.acceptResidual) break;
    const auto n = cubic_component_jets(r.at.jet);
    const std::array<const Jet2d*, 4> comp{&n.n111, &n.n112, &n.n122, &n.n222};
    int bi = -1, bj = -1;
    double best = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const Eigen::Vector2d gi(comp[i]->coeff(1, 0), comp[i]->coeff(0, 1));
        const Eigen::Vector2d gj(comp[j]->coeff(1, 0), comp[j]->coeff(0, 1));
        const double den = gi.norm() * gj.norm();
        if (!(den > 0)) continue;
        const double cond = std::abs(gi.x() * gj.y() - gi.y() * gj.x()) / den;
        if (cond > best) {
          best = cond;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0 || best < 1e-12) break;
    Eigen::Matrix2d M;
    M << comp[bi]->coeff(1, 0), comp[bi]->coeff(0, 1), comp[bj]->coeff(1, 0), comp[bj]->coeff(0, 1);
    Eigen::Vector2d step = -M.inverse() * Eigen::Vector2d(comp[bi]->value(), comp[bj]->value());
    if (step.norm() > max_step) step *= max_step / step.norm();

    bool moved = false;
    for (double damp = 1; damp > 1e-4; damp *= 0.5) {
      const auto next = s.at(r.at.xy + damp * step, r.at.z);
      if (!next) continue;
      const double res = normalized_norm(cubic_components(next->jet));
      if (res < r.residual) {
        r.at = *next;
        r.residual = res;
        moved = true;
        break;
      }
    }
    if (!moved || step.norm() < 1e-12 * s.scale) break;
  }
  r.converged = r.residual < opt.acceptResidual;
  return r;
}

Rational loop_index(const Sheet& s, const Eval& center, Region region, double rho) {
  LoopMap lm;
  if (region == Region::elliptic) {
    lm.sampler = [&](double t) {
      const auto e = s.at(center.xy + rho * Eigen::Vector2d(std::cos(t), std::sin(t)), center.z);
      if (!e) throw Error(Errc::near_singular, "loop leaves the chart");
      const CubicFormValue c = cubic_components(e->jet);
      Eigen::Matrix2d H;
      H << c.gxx, c.gxy, c.gxy, c.gyy;
      if (H.determinant() <= 0) throw Error(Errc::near_singular, "loop crosses the parabolic curve");
      if (H.trace() < 0) H = -H;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
      const Eigen::Matrix2d L = es.operatorInverseSqrt();
      return Eigen::Vector2d(binary_value(c, L.col(0)), binary_value(c, L.col(1)));
    };
  } else {
    lm.sampler = [&](double t) {
      const auto e = s.at(center.xy + rho * Eigen::Vector2d(std::cos(t), std::sin(t)), center.z);
      if (!e) throw Error(Errc::near_singular, "loop leaves the chart");
      const CubicFormValue c = cubic_components(e->jet);
      if (c.hess >= 0) throw Error(Errc::near_singular, "loop crosses the parabolic curve");
      const DirectionSet d = binary_cubic_roots({c.n111, 3 * c.n112, 3 * c.n122, c.n222});
      if (d.kind != DirectionKind::hyperbolic1) throw Error(Errc::near_singular, "line field is not single-valued");
      const double psi = d.angles.front();
      return Eigen::Vector2d(std::cos(2 * psi), std::sin(2 * psi));
    };
  }
  const double v0 = lm.sampler(0).norm();
  lm.zero_tolerance = 1e-9 * v0;
  const int w = winding_degree(lm);
  return region == Region::elliptic ? Rational(-w, 3) : Rational(w, 2);
}

void classify_point(const Eval& e, QuadraticPointReport& p) {
  const NormalizedJet nj = normalize_jet(e.jet);
  p.region = nj.region;
  ModelTolerances tol;
  tol.jet = 1e-7;
  try {
    if (nj.region == Region::elliptic) {
      p.elliptic = extract_elliptic(nj.jet, tol);
      const auto& m = *p.elliptic;
      p.simple = m.simple && std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)}) > kFlatJet;
      if (p.simple) {
        const EllipticClass k = classify(*p.elliptic);
        p.modelIndex = k.index;
        p.label = portrait_name(k.portrait);
      }
    } else {
      p.hyperbolic = extract_hyperbolic(nj.jet, tol);
      const auto& m = *p.hyperbolic;
      p.simple = m.simple && std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)}) > kFlatJet;
      if (p.simple) {
        const HyperbolicClass k = classify(*p.hyperbolic);
        p.modelIndex = Rational(k.index);
        p.label = std::string(case_name(k.caseLabel)) + (k.region.empty() ? "" : " " + k.region);
      }
    }
  } catch (const Error& err) {
    if (err.code() != Errc::boundary) throw;
    p.label = "boundary";
  }
  if (!p.simple) {
    p.label = "non-simple";
    p.elliptic.reset();
    p.hyperbolic.reset();
  }
}

auto location_key(const Eigen::Vector3d& q) {
  auto r = [](double v) { return std::llround(v * 1e7); };
  return std::make_tuple(r(q.x()), r(q.y()), r(q.z()));
}

}  // namespace

SearchResult find_quadratic_points(const CatalogEntry& entry, const SearchOptions& opt) {
  if (opt.gridDensity < 8) throw Error(Errc::invalid_parameter, "grid density must be at least 8");
  const std::vector<Sheet> sheets = atlas(entry);
  const int n = opt.gridDensity;
  const int side = n + 1;

  SearchResult out;
  struct Seed {
    int sheet;
    Eval at;
  };
  std::vector<Seed> seeds;
  bool all_small = true;
  int finite = 0;

  for (int si = 0; si < int(sheets.size()); ++si) {
    const Sheet& s = sheets[si];
    std::vector<std::optional<Eval>> evals(side * side);
    std::vector<double> N(side * side, kInf);
    parallel_for(side, [&](std::size_t i) {
      const double u = s.lo.x() + (s.hi.x() - s.lo.x()) * double(i) / n;
      for (int j = 0; j < side; ++j) {
        const double v = s.lo.y() + (s.hi.y() - s.lo.y()) * double(j) / n;
        auto e = s.sample(u, v);
        if (!e) continue;
        N[i * side + j] = normalized_norm(cubic_components(e->jet));
        evals[i * side + j] = std::move(e);
      }
    });
    std::vector<double> vals;
    for (double v : N)
      if (std::isfinite(v)) vals.push_back(v);
    finite += int(vals.size());
    if (vals.empty()) continue;
    for (double v : vals) all_small = all_small && v < opt.totallyQuadratic;
    std::nth_element(vals.begin(), vals.begin() + vals.size() / 2, vals.end());
    const double threshold = opt.seedRatio * vals[vals.size() / 2];
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) {
        const double v = N[i * side + j];
        if (!std::isfinite(v) || v >= threshold) continue;
        bool is_min = true;
        for (int di = -1; di <= 1 && is_min; ++di)
          for (int dj = -1; dj <= 1; ++dj) {
            const int a = i + di, b = j + dj;
            if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= side || b >= side) continue;
            if (N[a * side + b] < v) {
              is_min = false;
              break;
            }
          }
        if (is_min) seeds.push_back({si, *evals[i * side + j]});
      }
  }
  out.samples = finite;
  if (finite > 0 && all_small) {
    out.totallyQuadratic = true;
    out.warnings.push_back("cubic form vanishes at every sample: totally quadratic surface");
    return out;
  }
  out.seeds = int(seeds.size());

  std::vector<Refined> refined(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t k) { refined[k] = refine(sheets[seeds[k].sheet], seeds[k].at, opt); });

  struct Found {
    int sheet;
    Refined r;
  };
  std::vector<Found> found;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const Refined& r = refined[k];
    const Sheet& s = sheets[seeds[k].sheet];
    if (!s.valid(r.at)) continue;
    if (!r.converged) {
      if (r.residual < opt.stallResidual) {
        bool dup = false;
        for (const auto& u : out.unconverged) dup = dup || (u.location - r.at.point).norm() < 1e-4 * s.scale;
        if (!dup) out.unconverged.push_back({s.name, r.at.point, r.residual});
      }
      continue;
    }
    bool dup = false;
    for (auto& f : found)
      if ((f.r.at.point - r.at.point).norm() < opt.mergeRadius * std::max(1.0, s.scale)) {
        dup = true;
        if (r.residual < f.r.residual) f = {seeds[k].sheet, r};
        break;
      }
    if (!dup) found.push_back({seeds[k].sheet, r});
  }
  // a stalled candidate next to a converged point is the same point
  std::erase_if(out.unconverged, [&](const UnconvergedCandidate& u) {
    for (const auto& f : found)
      if ((f.r.at.point - u.location).norm() < 1e-3 * sheets[f.sheet].scale) return true;
    return false;
  });

  std::vector<QuadraticPointReport> reports(found.size());
  std::vector<std::string> notes(found.size());
  parallel_for(found.size(), [&](std::size_t k) {
    const Sheet& s = sheets[found[k].sheet];
    const Eval& e = found[k].r.at;
    QuadraticPointReport& p = reports[k];
    p.chart = s.name;
    p.planar = e.xy;
    p.location = e.point;
    p.residual = found[k].r.residual;
    p.iterations = found[k].r.iterations;
    const CubicFormValue c = cubic_components(e.jet);
    if (parabolic_ratio(c) < opt.parabolic) {
      p.label = "parabolic";
      return;
    }
    classify_point(e, p);
    double dmin = kInf;
    for (std::size_t m = 0; m < found.size(); ++m)
      if (m != k) dmin = std::min(dmin, (found[m].r.at.point - e.point).norm());
    double rho = std::min(0.005 * s.scale, 0.2 * dmin);
    try {
      p.index = loop_index(s, e, p.region, rho);
      const Rational half = loop_index(s, e, p.region, 0.5 * rho);
      if (half != p.index) notes[k] = "loop index depends on the loop radius at " + s.name;
    } catch (const Error& err) {
      notes[k] = std::string("loop index failed: ") + err.what();
    }
    p.loopRadius = rho;
    if (notes[k].empty() && p.modelIndex && *p.modelIndex != p.index)
      notes[k] = "local model index " + p.modelIndex->str() + " differs from loop index " + p.index.str();
  });

  for (std::size_t k = 0; k < reports.size(); ++k) {
    auto& p = reports[k];
    if (p.label == "parabolic") {
      out.nearParabolic.push_back(p);
      continue;
    }
    if (!notes[k].empty()) {
      out.warnings.push_back(notes[k]);
      out.unconverged.push_back({p.chart, p.location, p.residual});
      continue;
    }
    if (!entry.region.empty() && entry.region != region_name(p.region)) {
      out.outsideRegion.push_back(p);
      continue;
    }
    out.points.push_back(p);
  }
  auto by_location = [](const QuadraticPointReport& a, const QuadraticPointReport& b) {
    return location_key(a.location) < location_key(b.location);
  };
  std::sort(out.points.begin(), out.points.end(), by_location);
  std::sort(out.nearParabolic.begin(), out.nearParabolic.end(), by_location);
  std::sort(out.outsideRegion.begin(), out.outsideRegion.end(), by_location);
  std::sort(out.unconverged.begin(), out.unconverged.end(),
            [](const auto& a, const auto& b) { return location_key(a.location) < location_key(b.location); });
  if (!out.unconverged.empty())
    out.warnings.push_back(std::to_string(out.unconverged.size()) + " candidate(s) did not converge");
  return out;
}

GlobalReport poincare_hopf_check(const CatalogEntry& entry, const SearchOptions& opt) {
  GlobalReport g;
  g.surface = entry.name;
  g.gridDensity = opt.gridDensity;
  g.search = find_quadratic_points(entry, opt);
  g.chiE = entry.chiE;
  g.chiH = entry.chiH;
  g.chiM = entry.chiM;
  bool allThirds = true, allUnitH = true;
  for (const auto& p : g.search.points) {
    if (p.region == Region::elliptic) {
      g.sumE += p.index;
      ++g.countE;
      allThirds = allThirds && (p.index == Rational(1, 3) || p.index == Rational(-1, 3));
    } else {
      g.sumH += p.index;
      ++g.countH;
      allUnitH = allUnitH && (p.index == Rational(1) || p.index == Rational(-1));
    }
  }
  if (g.search.totallyQuadratic) {
    g.inconclusive = true;
    return g;
  }
  if (g.chiE) g.residualE = g.sumE - Rational(*g.chiE);
  if (g.chiH) g.residualH = g.sumH - Rational(*g.chiH);
  if (g.chiM) g.residualM = g.sumE + g.sumH - Rational(*g.chiM);
  if (g.chiH && std::abs(*g.chiH) % 2 == 1 && allUnitH) g.parityOk = g.countH % 2 == 1;
  if (g.countE > 0 && allThirds && g.sumE == Rational(2)) g.countBoundOk = g.countE >= 6;
  g.inconclusive = !g.search.unconverged.empty() || g.search.totallyQuadratic;
  const bool anyChi = g.residualE || g.residualH || g.residualM;
  auto zero = [](const std::optional<Rational>& r) { return !r || *r == Rational(0); };
  g.pass = !g.inconclusive && anyChi && zero(g.residualE) && zero(g.residualH) && zero(g.residualM) && g.parityOk &&
           g.countBoundOk;
  return g;
}

bool same_point_set(const SearchResult& a, const SearchResult& b, double tol) {
  if (a.points.size() != b.points.size()) return false;
  for (const auto& p : a.points) {
    bool hit = false;
    for (const auto& q : b.points) hit = hit || ((p.location - q.location).norm() < tol && p.index == q.index);
    if (!hit) return false;
  }
  return true;
}

}  // namespace quadrapt
