#include <doctest.h>

#include <cmath>
#include <random>

#include "quadrapt/index.hpp"
#include "quadrapt/localmodel.hpp"
#include "quadrapt/surfaces.hpp"

using namespace quadrapt;

namespace {

// Table oracle for the normalized elliptic plane (a, h).
Portrait elliptic_table(double a, double h) {
  const double astroid = 27 * a * a * h * h - std::pow(1 - a * a - h * h, 3);
  if (astroid > 0) return Portrait::D1;
  return a * a + h * h < 0.25 ? Portrait::D3 : Portrait::D2;
}

std::vector<double> tangents(const QuarticRoots& r) {
  std::vector<double> t;
  for (double a : r.angles) t.push_back(std::tan(a));
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

TEST_CASE("elliptic model of the quartic normal form x^4 + y^4") {
  const CatalogEntry e = catalog("elliptic_normal", {{"a40", 1}, {"a31", 0}, {"a22", 0}, {"a13", 0}, {"a04", 1}});
  const EllipticModel m = extract_elliptic(jet_eval(*e.chart, {0, 0}, 4));
  CHECK(m.a == doctest::Approx(1));
  CHECK(std::abs(m.b) < 1e-12);
  CHECK(std::abs(m.c) < 1e-12);
  CHECK(m.d == doctest::Approx(1));
  CHECK(m.delta == doctest::Approx(1));
  REQUIRE(m.index);
  CHECK(*m.index == Rational(-1, 3));
}

TEST_CASE("center of the astroid plane") {
  const EllipticModel m = make_elliptic(0, 0.5, -0.5, 0);
  CHECK(m.normalizable);
  CHECK(m.astroid == doctest::Approx(-1));
  CHECK(m.delta == doctest::Approx(0.25));
  CHECK(m.portrait == Portrait::D3);
  CHECK(*m.index == Rational(-1, 3));
  CHECK(classify(m).portrait == Portrait::D3);
}

TEST_CASE("zero model is not simple") {
  const EllipticModel m = make_elliptic(0, 0, 0, 0);
  CHECK_FALSE(m.simple);
  CHECK(m.portrait == Portrait::non_simple);
  CHECK_THROWS_AS(classify(m), Error);
  const HyperbolicModel h = make_hyperbolic(0, 0, 0, 0);
  CHECK_FALSE(h.simple);
  CHECK_FALSE(h.index.has_value());
}

TEST_CASE("model on the astroid is flagged as boundary") {
  // normalized (a, h) = (1, 0): astroid value 27*0 - 0 = 0
  const EllipticModel m = make_elliptic(1, 0.5, -0.5, -1);
  CHECK(m.normalizable);
  CHECK(std::abs(m.astroid) < 1e-12);
  CHECK(m.portrait == Portrait::boundary);
  CHECK_THROWS_AS(classify(m), Error);
}

TEST_CASE("hyperbolic examples") {
  const HyperbolicModel h1 = make_hyperbolic(1, 2, -4, 12);
  CHECK(h1.rootCountP == 0);
  CHECK(h1.index == 1);
  const HyperbolicModel h3 = make_hyperbolic(-1, -0.5, 0.5, 1);
  CHECK(h3.rootCountP == 2);
  CHECK(h3.index == -1);
  const HyperbolicModel h4 = make_hyperbolic(-1, -2.5, 2.5, 1);
  CHECK(h4.rootCountP == 4);
  CHECK(h4.index == 1);
}

TEST_CASE("hyperbolic model read off a normal-form jet") {
  const CatalogEntry e = catalog("hyperbolic_normal", {{"a", -1}, {"b", -0.5}, {"c", 0.5}, {"d", 1}, {"e", 0}});
  const HyperbolicModel m = extract_hyperbolic(jet_eval(*e.chart, {0, 0}, 4));
  CHECK(m.a == doctest::Approx(-1));
  CHECK(m.b == doctest::Approx(-0.5));
  CHECK(m.c == doctest::Approx(0.5));
  CHECK(m.d == doctest::Approx(1));
  CHECK(m.index == -1);
}

TEST_CASE("characteristic polynomial of the first hyperbolic example factors") {
  const CharPoly cp = char_polys(make_hyperbolic(1, 2, -4, 12));
  // (x^2 - 2xy + 2y^2)(x^2 + 4xy + 6y^2)
  const std::array<double, 3> f{1, -2, 2}, g{1, 4, 6};
  std::array<double, 5> prod{0, 0, 0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) prod[i + k] += f[i] * g[k];
  for (int i = 0; i < 5; ++i) CHECK(cp.P.p[i] == doctest::Approx(prod[i]));
}

TEST_CASE("elliptic characteristic polynomial at the center") {
  const CharPoly cp = char_polys(make_elliptic(0, 0.5, -0.5, 0));
  const std::array<double, 5> want{0, 2, 0, -2, 0};
  for (int i = 0; i < 5; ++i) CHECK(cp.P.p[i] == doctest::Approx(want[i]));
  CHECK(quartic_real_roots(cp.P).count == 4);
}

TEST_CASE("quartic roots") {
  CHECK(quartic_real_roots(Quartic{{1, 0, 2, 0, 1}}).count == 0);

  const auto t4 = tangents(quartic_real_roots(char_polys(make_hyperbolic(-1, -2.5, 2.5, 1)).P));
  REQUIRE(t4.size() == 4);
  const std::array<double, 4> w4{-2, -1, -0.5, 1};
  for (int i = 0; i < 4; ++i) CHECK(t4[i] == doctest::Approx(w4[i]).epsilon(1e-9));

  const auto t3 = tangents(quartic_real_roots(char_polys(make_hyperbolic(-1, -0.5, 0.5, 1)).P));
  REQUIRE(t3.size() == 2);
  CHECK(t3[0] == doctest::Approx(-1));
  CHECK(t3[1] == doctest::Approx(1));

  CHECK_THROWS_AS(quartic_real_roots(Quartic{}), Error);
}

TEST_CASE("double root is reported with multiplicity") {
  // (x - y)^2 (x^2 + y^2) = x^4 - 2x^3y + 2x^2y^2 - 2xy^3 + y^4
  const QuarticRoots r = quartic_real_roots(Quartic{{1, -2, 2, -2, 1}});
  CHECK(r.near_boundary);
}

TEST_CASE("classification examples") {
  CHECK(elliptic_portrait_of(0, 0) == Portrait::D3);
  // bc = 16, ad < 16, Delta < 0: saddle
  const HyperbolicClass s = classify(make_hyperbolic(1, 4, 4, 1));
  CHECK(s.caseLabel == HyperbolicCase::BC16);
  CHECK(s.index == -1);
  CHECK(s.roots == 2);
  // bc = 0 with (a, d) in the first quadrant
  const HyperbolicClass z = classify(make_hyperbolic(1, 0, 4, 1));
  CHECK(z.caseLabel == HyperbolicCase::BC0);
  CHECK(z.index == 1);
}

TEST_CASE("elliptic table and winding agree on random models") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> U(-1, 1);
  int tested = 0;
  while (tested < 300) {
    const double a = U(rng), b = U(rng), c = U(rng), d = U(rng);
    const EllipticModel m = make_elliptic(a, b, c, d);
    if (std::abs(m.delta) < 0.01 || std::abs(m.astroid) < 1e-6 || !m.normalizable) continue;
    ++tested;
    CHECK(m.portrait == elliptic_table(m.aNorm, m.hNorm));
    CHECK(*m.index == Rational(m.delta > 0 ? -1 : 1, 3));
    CHECK(elliptic_index(m) == *m.index);
    CHECK(m.rootCountP == (m.portrait == Portrait::D1 ? 2 : 4));
  }
}

TEST_CASE("root count parity follows the discriminant sign") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 500; ++k) {
    Quartic q{{U(rng), U(rng), U(rng), U(rng), U(rng)}};
    const QuarticRoots r = quartic_real_roots(q);
    if (r.near_boundary) continue;
    if (r.discriminant > 0)
      CHECK((r.count == 0 || r.count == 4));
    else
      CHECK(r.count == 2);
  }
}

TEST_CASE("P and Q share no root on simple models") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 200; ++k) {
    const double a = U(rng), b = U(rng), c = U(rng), d = U(rng);
    if (std::abs(a * d - b * c) < 0.01) continue;
    for (const CharPoly& cp : {char_polys(make_elliptic(a, b, c, d)), char_polys(make_hyperbolic(a, b, c, d))}) {
      const QuarticRoots r = quartic_real_roots(cp.P);
      for (double t : r.angles) CHECK(std::abs(cp.Q.at(t)) > 1e-9);
    }
  }
}

TEST_CASE("normalizing an elliptic jet gives (x^2 + y^2)/2") {
  const BivariatePolynomial f({{2, 0, 1.3}, {1, 1, 0.4}, {0, 2, 0.7}, {3, 0, 0.2}, {0, 4, -0.3}});
  const NormalizedJet n = normalize_jet(f.jet({0, 0}, 4));
  CHECK(n.region == Region::elliptic);
  CHECK(n.jet.coeff(2, 0) == doctest::Approx(0.5));
  CHECK(n.jet.coeff(0, 2) == doctest::Approx(0.5));
  CHECK(std::abs(n.jet.coeff(1, 1)) < 1e-12);
}

TEST_CASE("normalizing a hyperbolic jet gives xy") {
  const BivariatePolynomial f({{2, 0, 0.5}, {1, 1, 0.4}, {0, 2, -0.7}});
  const NormalizedJet n = normalize_jet(f.jet({0, 0}, 4));
  CHECK(n.region == Region::hyperbolic);
  CHECK(std::abs(n.jet.coeff(2, 0)) < 1e-12);
  CHECK(std::abs(n.jet.coeff(0, 2)) < 1e-12);
  CHECK(n.jet.coeff(1, 1) == doctest::Approx(1));
}

TEST_CASE("extraction preconditions") {
  const CatalogEntry fold = catalog("fold");
  CHECK_THROWS_AS(normalize_jet(jet_eval(*fold.chart, {0, 0}, 4)), Error);
  const CatalogEntry pick = catalog("pick_def", {{"c", 1}});
  try {
    extract_elliptic(jet_eval(*pick.chart, {0, 0}, 4));
    FAIL("expected not_quadratic_point");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_quadratic_point);
  }
  const BivariatePolynomial g({{2, 0, 1.0}, {0, 2, 1.0}});
  try {
    extract_elliptic(g.jet({0, 0}, 4));
    FAIL("expected normalization_required");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::normalization_required);
  }
}

TEST_CASE("hyperbolic model with ad = 0 still gets an index") {
  const HyperbolicModel m = make_hyperbolic(0, 2, -4, 12);
  REQUIRE(m.simple);
  REQUIRE(m.index);
  CHECK(*m.index == hyperbolic_index(m));
  CHECK(std::abs(*m.index) == 1);
}

TEST_CASE("(1,0,0,-1) cannot be normalized and sits off the astroid") {
  const EllipticModel m = make_elliptic(1, 0, 0, -1);
  CHECK_FALSE(m.normalizable);
  CHECK(m.Delta == doctest::Approx(-1));
  CHECK(m.portrait == Portrait::D1);
  CHECK(m.rootCountP == 2);
}
