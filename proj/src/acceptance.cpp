#include "quadrapt/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "quadrapt/blowup.hpp"
#include "quadrapt/global.hpp"
#include "quadrapt/index.hpp"
#include "quadrapt/localmodel.hpp"
#include "quadrapt/surfaces.hpp"

namespace quadrapt {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int count_kind(const std::vector<BlowupSingularity>& s, SingularityKind k) {
  return int(std::count_if(s.begin(), s.end(), [k](const auto& x) { return x.kind == k; }));
}

std::vector<double> root_tangents(const HyperbolicModel& m) {
  const QuarticRoots r = quartic_real_roots(char_polys(m).P);
  std::vector<double> t;
  for (double a : r.angles) t.push_back(std::tan(a));
  std::sort(t.begin(), t.end());
  return t;
}

bool close_set(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (size_t k = 0; k < got.size(); ++k)
    if (std::abs(got[k] - want[k]) > tol) return false;
  return true;
}

std::string list(const std::vector<double>& v) {
  std::ostringstream os;
  os << "{";
  for (size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << "}";
  return os.str();
}

Outcome hyp_example(double a, double b, double c, double d, int roots, int saddles, int nodes, int index,
                    const std::vector<double>& tangents, bool check_portrait) {
  const HyperbolicModel m = make_hyperbolic(a, b, c, d);
  const auto sing = blowup_singularities(char_polys(m));
  const int S = count_kind(sing, SingularityKind::saddle), N = count_kind(sing, SingularityKind::node);
  const int idx = hyperbolic_index(m);
  const HyperbolicClass cl = classify(m);
  const auto tan = root_tangents(m);
  std::ostringstream os;
  os << "roots " << tan.size() << " " << list(tan) << ", singularities " << sing.size() << " (" << S << "S+" << N
     << "N), index " << idx;
  bool ok = int(tan.size()) == roots && S == saddles && N == nodes && idx == index && cl.index == index &&
            cl.roots == roots;
  if (!tangents.empty()) ok = ok && close_set(tan, tangents, 1e-9);
  if (check_portrait) {
    const Rational pi = portrait_index(integrate_portrait(m, Bbox{}, 4));
    os << ", portrait index " << pi;
    ok = ok && pi == Rational(index);
  }
  return {ok, os.str()};
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = hyp_example(1, 2, -4, 12, 0, 0, 0, 1, {}, false);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = o.pass && s < 1;
  return o;
}

Outcome criterion5(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  int n = 0, bad = 0, winding_bad = 0;
  std::string first;
  while (n < 1000) {
    const double a = U(rng), h = U(rng);
    const double Delta = 27 * a * a * h * h - std::pow(1 - a * a - h * h, 3);
    const double delta = 0.25 - a * a - h * h;
    if (std::abs(Delta) < 0.02 || std::abs(delta) < 0.02) continue;
    ++n;
    const int roots = Delta > 0 ? 2 : 4;
    const Rational index = Delta > 0 || delta < 0 ? Rational(1, 3) : Rational(-1, 3);
    const Portrait por = Delta > 0 ? Portrait::D1 : delta < 0 ? Portrait::D2 : Portrait::D3;
    try {
      const EllipticModel m = make_elliptic(a, h + 0.5, h - 0.5, -a);
      const EllipticClass cl = classify(m);
      const int got_roots = quartic_real_roots(char_polys(m).P).count;
      const Rational w = elliptic_index(m);
      const bool ok = got_roots == roots && cl.roots == roots && cl.portrait == por && cl.index == index && w == index;
      if (w != Rational(m.delta > 0 ? -1 : 1, 3)) ++winding_bad;
      if (!ok) {
        ++bad;
        if (first.empty()) {
          std::ostringstream os;
          os << " first at (a,h)=(" << a << "," << h << "): roots " << got_roots << ", " << portrait_name(cl.portrait)
             << ", index " << w;
          first = os.str();
        }
      }
    } catch (const Error& e) {
      ++bad;
      if (first.empty()) first = std::string(" error: ") + e.what();
    }
  }
  std::ostringstream os;
  os << n << " models, " << bad << " table mismatches, " << winding_bad << " winding != -sign(delta)/3" << first;
  return {bad == 0 && winding_bad == 0, os.str()};
}

// Inside the bounded component of Delta > 0 for bc = -16: reachable from the origin along a segment.
bool region_one(double a, double d) {
  for (int k = 0; k <= 400; ++k) {
    const double s = k / 400.0, x = s * a, y = s * d;
    if (std::pow(x * y + 4, 3) - 27 * (x + y) * (x + y) <= 0) return false;
  }
  return true;
}

Outcome criterion6(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 6);
  std::uniform_real_distribution<double> U(-8, 8);
  std::bernoulli_distribution flip(0.5);
  int bad = 0, total = 0;
  std::ostringstream first;
  const char* names[3] = {"bc=16", "bc=-16", "bc=0"};
  for (int which = 0; which < 3; ++which) {
    int n = 0;
    while (n < 300) {
      const double a = U(rng), d = U(rng);
      double b = 0, c = 4, Delta = 0, delta = 0;
      if (which == 0) {
        b = c = flip(rng) ? 4 : -4;
        Delta = std::pow(a * d - 4, 3) - 27 * (a + d) * (a + d);
        delta = a * d - 16;
      } else if (which == 1) {
        b = flip(rng) ? 4 : -4;
        c = -b;
        Delta = std::pow(a * d + 4, 3) - 27 * (a + d) * (a + d);
        delta = a * d + 16;
      } else {
        Delta = a * a * (a * d * d * d - 27);
        delta = a * d;
      }
      const double S = a * d - b * c / 4, T = -(a * c * c + d * b * b) / 16;
      const double scale = std::max({1.0, std::abs(S * S * S), 27 * T * T});
      if (std::abs(Delta) < 0.01 * scale || std::abs(delta) < 0.5 || std::abs(a * d) < 0.05) continue;
      ++n;
      ++total;
      int roots = 0, index = 1;
      std::string region;
      if (which == 0) {
        roots = Delta > 0 ? 0 : 2;
        index = Delta > 0 || delta > 0 ? 1 : -1;
      } else if (which == 1) {
        if (Delta > 0) {
          const bool one = region_one(a, d);
          region = one ? "I" : "II";
          roots = one ? 4 : 0;
        } else {
          region = "III";
          roots = 2;
          index = delta > 0 ? 1 : -1;
        }
      } else {
        index = a * d > 0 ? 1 : -1;
        roots = a * d < 0 || Delta < 0 ? 2 : 0;
      }
      try {
        const HyperbolicModel m = make_hyperbolic(a, b, c, d);
        const HyperbolicClass cl = classify(m);
        const int got_roots = quartic_real_roots(char_polys(m).P).count;
        const int w = hyperbolic_index(m);
        bool ok = got_roots == roots && cl.roots == roots && w == index && cl.index == index;
        if (!region.empty()) ok = ok && cl.region.rfind(region, 0) == 0 && (region != "I" || cl.region == "I");
        if (!ok) {
          ++bad;
          if (first.str().empty())
            first << " first " << names[which] << " (a,d)=(" << a << "," << d << "): roots " << got_roots
                  << ", index " << w << ", region " << cl.region;
        }
      } catch (const Error& e) {
        ++bad;
        if (first.str().empty()) first << " error: " << e.what();
      }
    }
  }
  std::ostringstream os;
  os << total << " models over 3 cases, " << bad << " mismatches" << first.str();
  return {bad == 0, os.str()};
}

// Fit want = k got with k > 0; returns the relative error or infinity for k <= 0.
double proportional_error(const std::array<double, 4>& got, const std::array<double, 4>& want) {
  double gw = 0, ww = 0, gg = 0;
  for (int k = 0; k < 4; ++k) {
    gw += got[k] * want[k];
    ww += want[k] * want[k];
    gg += got[k] * got[k];
  }
  if (!(gw > 0)) return INFINITY;
  const double k = gw / ww;
  double err = 0;
  for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(got[i] - k * want[i]));
  return err / std::sqrt(gg);
}

Outcome criterion7() {
  const CatalogEntry e = catalog("fold");
  double worst = 0;
  int above = 0, below = 0;
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      const Eigen::Vector2d p(-1 + 2 * (i + 0.5) / 50, -1 + 2 * (j + 0.5) / 50);
      const CubicFormValue c = cubic_components(jet_eval(*e.chart, p, 4));
      // -3 dx^2 dy + y dy^3 as n111, 3 n112, 3 n122, n222
      const std::array<double, 4> want{0, -1, 0, p.y()};
      worst = std::max(worst, proportional_error(c.components(), want));
      (p.y() > 0 ? above : below)++;
    }
  char buf[120];
  std::snprintf(buf, sizeof buf, "2500 points (%d with y>0, %d with y<0), max relative error %.2e", above, below,
                worst);
  return {worst < 1e-10 && above > 0 && below > 0, buf};
}

Outcome criterion8() {
  double worst = 0;
  int used = 0;
  for (double lambda : {1.0, 2.0, 4.0}) {
    const CatalogEntry e = catalog("gauss_cusp", {{"lambda_cusp", lambda}});
    for (int i = 0; i < 50; ++i)
      for (int j = 0; j < 50; ++j) {
        const Eigen::Vector2d p(-1 + 2 * (i + 0.5) / 50, -1 + 2 * (j + 0.5) / 50);
        const CubicFormValue c = cubic_components(jet_eval(*e.chart, p, 4));
        if (std::abs(c.hess) < 1e-3) continue;
        ++used;
        worst = std::max(worst, proportional_error(c.components(), cusp_cubic_oracle(p, lambda).components()));
      }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "lambda in {1,2,4}, %d points off the parabolic curve, max relative error %.2e", used,
                worst);
  return {worst < 1e-9, buf};
}

Outcome criterion9() {
  const auto t0 = std::chrono::steady_clock::now();
  const CatalogEntry e = catalog("rotation", {{"lambda_rot", 0.2}});
  SearchOptions opt;
  opt.gridDensity = 32;
  const GlobalReport g = poincare_hopf_check(e, opt);
  bool poles = g.search.points.size() == 2;
  for (const auto& p : g.search.points) {
    const bool at_pole = (p.location - Eigen::Vector3d(0, 0, 1)).norm() < 1e-8 ||
                         (p.location - Eigen::Vector3d(0, 0, -1)).norm() < 1e-8;
    poles = poles && at_pole && p.index == Rational(1);
  }
  double worst = 0;
  for (int k = 0; k < 10000; ++k) {
    const double t = -kPi / 2 + kPi * k / 9999.0;
    worst = std::max(worst, std::abs(rotation_identity_residual(0.2, t)));
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream os;
  os << g.search.points.size() << " points, sum " << g.sumE + g.sumH << ", chi " << (g.chiM ? *g.chiM : -99)
     << ", identity max residual " << worst;
  return {poles && g.pass && g.sumE + g.sumH == Rational(2) && worst < 1e-12 && s < 10, os.str()};
}

Outcome criterion10(std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoewnerReport r = loewner_check(500, 8, seed);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Rational top(-100);
  for (const auto& [k, v] : r.histogram) top = std::max(top, k);
  std::ostringstream os;
  os << r.accepted << " forms, " << r.rejected << " rejected draws, max index " << top << ", violations "
     << r.violations;
  return {r.accepted == 500 && r.violations == 0 && s < 60, os.str()};
}

Outcome criterion11(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 11);
  std::uniform_real_distribution<double> U(-1, 1);
  int ell = 0, ell_bad = 0;
  while (ell < 1000) {
    const double a = U(rng), b = U(rng), c = U(rng), d = U(rng);
    if (std::abs(a * d - b * c) < 0.02) continue;
    ++ell;
    try {
      const EllipticIndex w = elliptic_index_detail(make_elliptic(a, b, c, d));
      if (Rational(-w.degAB, 3) != Rational(1) - Rational(w.degPQ, 3)) ++ell_bad;
    } catch (const Error&) {
      ++ell_bad;
    }
  }
  int hyp = 0, hyp_bad = 0, portraits = 0, portrait_bad = 0;
  while (hyp < 1000) {
    const double a = U(rng), b = U(rng), c = U(rng), d = U(rng);
    if (std::abs(a * d) <= 0.01 || std::abs(a * d - b * c) < 0.02) continue;
    const HyperbolicModel m = make_hyperbolic(a, b, c, d);
    HyperbolicClass cl;
    try {
      cl = classify(m);
    } catch (const Error&) {
      continue;
    }
    ++hyp;
    try {
      if (hyperbolic_index(m) != cl.index) ++hyp_bad;
      if (hyp % 20 == 0) {
        ++portraits;
        if (portrait_index(integrate_portrait(m, Bbox{}, 2)) != Rational(cl.index)) ++portrait_bad;
      }
    } catch (const Error&) {
      ++hyp_bad;
    }
  }
  std::ostringstream os;
  os << "elliptic " << ell << " models, " << ell_bad << " mismatches; hyperbolic " << hyp << " models, " << hyp_bad
     << " mismatches; portraits " << portraits << ", " << portrait_bad << " mismatches";
  return {ell_bad == 0 && hyp_bad == 0 && portrait_bad == 0 && portraits == 50, os.str()};
}

Outcome criterion12() {
  const double models[3][4] = {{-8.0 / 3, 10.0 / 3, -5.0 / 3, 1}, {-1, -0.5, 0.5, 1}, {-1, -2.5, 2.5, 1}};
  double worst = 0;
  int n = 0;
  for (const auto& c : models) {
    for (const auto& s : blowup_singularities(char_polys(make_hyperbolic(c[0], c[1], c[2], c[3])))) {
      worst = std::max(worst, blowup_identity_residual(s));
      ++n;
    }
  }
  char buf[100];
  std::snprintf(buf, sizeof buf, "%d roots, max relative residual %.2e", n, worst);
  return {n == 16 && worst < 1e-6, buf};
}

Outcome criterion13() {
  const auto t0 = std::chrono::steady_clock::now();
  const CatalogEntry e = catalog("perturbed_sphere", {{"epsilon", 0.05}});
  SearchOptions lo, hi;
  lo.gridDensity = 64;
  hi.gridDensity = 128;
  const GlobalReport a = poincare_hopf_check(e, lo);
  const GlobalReport b = poincare_hopf_check(e, hi);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool stable = same_point_set(a.search, b.search);
  std::ostringstream os;
  os << a.search.points.size() << " points, sum " << a.sumE + a.sumH << " at grid 64; " << b.search.points.size()
     << " points, sum " << b.sumE + b.sumH << " at grid 128; " << (stable ? "stable" : "unstable");
  return {a.pass && b.pass && stable && !a.search.points.empty() && a.sumE + a.sumH == Rational(2) && s < 60,
          os.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  const std::uint64_t seed = opt.seed;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
      {"Hyp1 (1,2,-4,12): no roots, index 1, < 1 s", criterion1},
      {"Hyp2 (-8/3,10/3,-5/3,1): 2 saddles + 2 nodes, index 1",
       [] { return hyp_example(-8.0 / 3, 10.0 / 3, -5.0 / 3, 1, 2, 2, 2, 1, {}, false); }},
      {"Hyp3 (-1,-1/2,1/2,1): tan t = +-1, 4 saddles, index -1",
       [] { return hyp_example(-1, -0.5, 0.5, 1, 2, 4, 0, -1, {-1, 1}, true); }},
      {"Hyp4 (-1,-5/2,5/2,1): tan t in {-2,-1,-1/2,1}, 4 saddles + 4 nodes, index 1",
       [] { return hyp_example(-1, -2.5, 2.5, 1, 4, 4, 4, 1, {-2, -1, -0.5, 1}, false); }},
      {"elliptic sweep: 1000 normalized (a,h)", [seed] { return criterion5(seed); }},
      {"hyperbolic sweep: bc = 16, -16, 0", [seed] { return criterion6(seed); }},
      {"fold oracle on a 50x50 grid", criterion7},
      {"Gauss cusp oracle, lambda in {1,2,4}", criterion8},
      {"rotation surface lambda = 0.2: two poles of index 1", criterion9},
      {"Loewner bound: 500 semi-homogeneous forms", [seed] { return criterion10(seed); }},
      {"cross-formula index consistency", [seed] { return criterion11(seed); }},
      {"blow-up identity at every root of Hyp2-Hyp4", criterion12},
      {"perturbed sphere eps = 0.05: index sum 2, grid-stable", criterion13},
  };
  std::vector<CriterionResult> out;
  for (size_t k = 0; k < all.size(); ++k) {
    const int id = int(k) + 1;
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    CriterionResult r;
    r.id = id;
    r.name = all[k].first;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = all[k].second();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(r);
  }
  return out;
}

std::string acceptance_table(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  char buf[64];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%s  #%-2d ", r.pass ? "PASS" : "FAIL", r.id);
    os << buf << r.name;
    std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
    os << buf << ": " << r.detail << "\n";
  }
  return os.str();
}

}  // namespace quadrapt
