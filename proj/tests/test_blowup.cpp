#include <doctest.h>

#include <cmath>
#include <numbers>

#include "quadrapt/blowup.hpp"
#include "quadrapt/index.hpp"

using namespace quadrapt;
using std::numbers::pi;

namespace {

const HyperbolicModel hyp1 = make_hyperbolic(1, 2, -4, 12);
const HyperbolicModel hyp2 = make_hyperbolic(-8.0 / 3, 10.0 / 3, -5.0 / 3, 1);
const HyperbolicModel hyp3 = make_hyperbolic(-1, -0.5, 0.5, 1);
const HyperbolicModel hyp4 = make_hyperbolic(-1, -2.5, 2.5, 1);

std::pair<int, int> saddles_nodes(const std::vector<BlowupSingularity>& s) {
  int a = 0, n = 0;
  for (const auto& x : s) {
    a += x.kind == SingularityKind::saddle;
    n += x.kind == SingularityKind::node;
  }
  return {a, n};
}

const Bbox box{-1, -1, 1, 1};

}  // namespace

TEST_CASE("blow-up singularity counts of the hyperbolic examples") {
  CHECK(blowup_singularities(char_polys(hyp1)).empty());
  CHECK(saddles_nodes(blowup_singularities(char_polys(hyp2))) == std::pair{2, 2});
  CHECK(saddles_nodes(blowup_singularities(char_polys(hyp3))) == std::pair{4, 0});
  CHECK(saddles_nodes(blowup_singularities(char_polys(hyp4))) == std::pair{4, 4});
}

TEST_CASE("saddle iff P' and Q have opposite signs") {
  for (const auto* m : {&hyp2, &hyp3, &hyp4})
    for (const auto& s : blowup_singularities(char_polys(*m))) {
      CHECK(std::abs(char_polys(*m).P.at(s.t0)) < 1e-9);
      CHECK((s.kind == SingularityKind::saddle) == (s.dP * s.q < 0));
    }
}

TEST_CASE("blow-up singularities come in antipodal pairs") {
  for (const auto* m : {&hyp2, &hyp3, &hyp4}) {
    const auto s = blowup_singularities(char_polys(*m));
    const auto r = quartic_real_roots(char_polys(*m).P);
    CHECK(s.size() == 2 * r.angles.size());
    for (const auto& x : s) {
      bool paired = false;
      for (const auto& y : s) paired = paired || std::abs(std::remainder(y.t0 - x.t0 - pi, 2 * pi)) < 1e-9;
      CHECK(paired);
    }
  }
}

TEST_CASE("sign of Q at the roots of the third example") {
  const CharPoly cp = char_polys(hyp3);
  for (double t0 : {pi / 4, 5 * pi / 4}) {
    CHECK(sign_of_Q_at_root(hyp3, t0) == -1);
    CHECK(cp.Q.at(t0) < 0);
  }
  for (double t0 : {3 * pi / 4, 7 * pi / 4}) {
    CHECK(sign_of_Q_at_root(hyp3, t0) == 1);
    CHECK(cp.Q.at(t0) > 0);
  }
}

TEST_CASE("sign of Q with d = 0 is the sign of -c") {
  // a + b + c = 0 puts a root of P at tan t = 1
  const HyperbolicModel m = make_hyperbolic(1, 1, -2, 0);
  CHECK(sign_of_Q_at_root(m, pi / 4) == 1);
  const HyperbolicModel n = make_hyperbolic(-1, -1, 2, 0);
  CHECK(sign_of_Q_at_root(n, pi / 4) == -1);
}

TEST_CASE("blow-up identity at the simple roots") {
  for (const auto* m : {&hyp2, &hyp3, &hyp4})
    for (const auto& s : blowup_singularities(char_polys(*m))) CHECK(blowup_identity_residual(s) < 1e-6);
  for (const auto& s : blowup_singularities(char_polys(make_elliptic(0, 0.5, -0.5, 0))))
    CHECK(blowup_identity_residual(s) < 1e-6);
}

TEST_CASE("elliptic D3 model has eight blow-up points on the web") {
  const auto s = blowup_singularities(char_polys(make_elliptic(0, 0.5, -0.5, 0)));
  CHECK(s.size() == 8);
  for (const auto& x : s) CHECK((x.branch >= 1 && x.branch <= 3));
}

TEST_CASE("portrait of the first example") {
  const PhasePortrait p = integrate_portrait(hyp1, box, 6);
  CHECK(p.singularities.empty());
  CHECK(p.separatrices.empty());
  CHECK(portrait_index(p) == Rational(1));
  for (const auto& l : p.leaves)
    for (const auto& q : l.points) CHECK(q.norm() > 1e-7);
}

TEST_CASE("portrait of the third example has eight separatrices") {
  const PhasePortrait p = integrate_portrait(hyp3, box, 6);
  CHECK(p.separatrices.size() == 8);
  CHECK(portrait_index(p) == Rational(-1));
}

TEST_CASE("portrait index of the fourth example") {
  CHECK(portrait_index(integrate_portrait(hyp4, box, 4)) == Rational(1));
  CHECK(portrait_index(integrate_portrait(hyp2, box, 4)) == Rational(1));
}

TEST_CASE("elliptic portraits recover the analytic index") {
  for (auto abcd : {std::array<double, 4>{0, 0.5, -0.5, 0}, {1, 1.5, 0.5, -1}, {0.2, 0.9, -0.3, 0.4}}) {
    const EllipticModel m = make_elliptic(abcd[0], abcd[1], abcd[2], abcd[3]);
    CHECK(portrait_index(integrate_portrait(m, box, 3)) == elliptic_index(m));
  }
}

TEST_CASE("leaves follow the line field") {
  const PhasePortrait p = integrate_portrait(hyp3, box, 4);
  int checked = 0;
  for (const auto& l : p.leaves) {
    if (l.separatrix) continue;
    for (size_t i = 1; i + 1 < l.points.size(); i += 25) {
      const Eigen::Vector2d tan = l.points[i + 1] - l.points[i - 1];
      if (tan.norm() == 0) continue;
      const double ang = std::atan2(tan.y(), tan.x());
      const double psi = model_directions(Region::hyperbolic, hyp3.a, hyp3.b, hyp3.c, hyp3.d, l.points[i])[0];
      const double dev = std::abs(std::remainder(ang - psi, pi));
      CHECK(dev < 0.05);
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("reversing the seed direction reverses the leaf") {
  const Eigen::Vector2d seed(0.3, 0.45);
  const double psi = model_directions(Region::hyperbolic, hyp4.a, hyp4.b, hyp4.c, hyp4.d, seed)[0];
  const Eigen::Vector2d dir(std::cos(psi), std::sin(psi));
  auto f = trace_leaf(Region::hyperbolic, hyp4.a, hyp4.b, hyp4.c, hyp4.d, seed, dir, box);
  auto g = trace_leaf(Region::hyperbolic, hyp4.a, hyp4.b, hyp4.c, hyp4.d, seed, -dir, box);
  std::reverse(g.begin(), g.end());
  REQUIRE(f.size() == g.size());
  for (size_t i = 0; i < f.size(); ++i) CHECK((f[i] - g[i]).norm() < 1e-12);
}

TEST_CASE("portrait preconditions") {
  CHECK_THROWS_AS(integrate_portrait(hyp1, Bbox{0, 0, 0, 1}, 4), Error);
  CHECK_THROWS_AS(integrate_portrait(make_hyperbolic(0, 0, 0, 0), box, 4), Error);
}

TEST_CASE("csv and svg emission") {
  const PhasePortrait p = integrate_portrait(hyp4, box, 3);
  const std::string csv = portrait_csv(p);
  CHECK(csv.rfind("leafId,branch,x,y\n", 0) == 0);
  const std::string svg = portrait_svg(p);
  auto count = [&](const std::string& needle) {
    int n = 0;
    for (size_t at = svg.find(needle); at != std::string::npos; at = svg.find(needle, at + 1)) ++n;
    return n;
  };
  CHECK(count("class=\"saddle\"") == 4);
  CHECK(count("class=\"node\"") == 4);
}
