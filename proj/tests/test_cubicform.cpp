#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "quadrapt/blowup.hpp"
#include "quadrapt/cubicform.hpp"
#include "quadrapt/surfaces.hpp"

using namespace quadrapt;
using std::numbers::pi;

namespace {

Jet2d graph_jet(const std::string& name, const std::map<std::string, double>& p, Eigen::Vector2d at) {
  return jet_eval(*catalog(name, p).chart, at, 4);
}

double angle_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), pi);
  return std::min(d, pi - d);
}

void check_angles(const std::vector<double>& got, std::vector<double> want, double tol = 1e-9) {
  REQUIRE(got.size() == want.size());
  for (double w : want) {
    bool found = false;
    for (double g : got) found = found || angle_distance(g, w) < tol;
    CHECK_MESSAGE(found, "missing angle " << w);
  }
}

}  // namespace

TEST_CASE("fold numerators at (1,1)") {
  const CubicFormValue c = cubic_components(graph_jet("fold", {}, {1, 1}));
  CHECK(c.n111 == doctest::Approx(0).epsilon(1e-14));
  CHECK(c.n112 == doctest::Approx(-0.25));
  CHECK(std::abs(c.n122) < 1e-14);
  CHECK(c.n222 == doctest::Approx(0.25));
  CHECK(c.hess == doctest::Approx(1));
}

TEST_CASE("quadric jets have a vanishing cubic form") {
  const BivariatePolynomial q({{2, 0, 0.3}, {1, 1, -1.1}, {0, 2, 2.0}, {1, 0, 0.4}});
  const CubicFormValue c = cubic_components(q.jet({0.5, -0.2}, 4));
  CHECK(c.max_abs() == 0.0);
  CHECK(is_singular(c));
}

TEST_CASE("gauss cusp numerators at (1,1), lambda 1") {
  const CubicFormValue c = cubic_components(graph_jet("gauss_cusp", {{"lambda_cusp", 1}}, {1, 1}));
  const std::array<double, 4> want{-3, -1, 2.5, 6.5};
  const auto got = c.components();
  const double k = got[0] / want[0];
  CHECK(k > 0);
  for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(k * want[i]).epsilon(1e-12));
  // with the 1/4 normalization the factor is exactly 1/4
  CHECK(k == doctest::Approx(0.25));
}

TEST_CASE("fold directions have slopes 0 and +-sqrt 3") {
  const DirectionSet d = bcde_directions(cubic_components(graph_jet("fold", {}, {1, 1})));
  CHECK(d.kind == DirectionKind::elliptic3);
  check_angles(d.angles, {0, pi / 3, 2 * pi / 3});
}

TEST_CASE("degenerate cubic dy^3 has the single root dy = 0") {
  const DirectionSet d = binary_cubic_roots({0, 0, 0, 1});
  REQUIRE(!d.angles.empty());
  for (double a : d.angles) CHECK(angle_distance(a, 0) < 1e-9);
}

TEST_CASE("hyperbolic model at a point with ax + by = 0 has the root dy = 0") {
  // (ax+by) dx^3 + (cx+dy) dy^3 with a=1, b=2 at (2,-1): first factor vanishes
  const auto dirs = model_directions(Region::hyperbolic, 1, 2, -4, 12, {2, -1});
  REQUIRE(dirs.size() == 1);
  CHECK(angle_distance(dirs[0], 0) < 1e-9);
}

TEST_CASE("elliptic web directions are pi/3 apart") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 50; ++k) {
    const auto dirs = model_directions(Region::elliptic, U(rng), U(rng), U(rng), U(rng), {U(rng), U(rng)});
    REQUIRE(dirs.size() == 3);
    CHECK(angle_distance(dirs[1], dirs[0]) == doctest::Approx(pi / 3));
    CHECK(angle_distance(dirs[2], dirs[1]) == doctest::Approx(pi / 3));
  }
}

TEST_CASE("darboux directions of the definite Pick surface") {
  const DirectionSet d = darboux_directions(graph_jet("pick_def", {{"c", 1}}, {0, 0}));
  check_angles(d.angles, {pi / 2, std::atan2(std::sqrt(3.0), 3), std::atan2(-std::sqrt(3.0), 3) + pi});
}

TEST_CASE("darboux direction of the indefinite Pick surface") {
  const DirectionSet d = darboux_directions(graph_jet("pick_indef", {{"a", 1}, {"b", 1}}, {0, 0}));
  check_angles(d.angles, {std::atan2(1.0, -1.0)});
}

TEST_CASE("definite Pick surface with c = 0 is quadratic") {
  const Jet2d j = graph_jet("pick_def", {{"c", 0}}, {0, 0});
  CHECK(is_singular(cubic_components(j)));
  CHECK_THROWS_AS(darboux_directions(j), Error);
}

TEST_CASE("apolarity in an orthonormal frame") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 20; ++k) {
    const BivariatePolynomial f({{2, 0, 0.5},
                                 {0, 2, 0.5},
                                 {3, 0, U(rng)},
                                 {2, 1, U(rng)},
                                 {1, 2, U(rng)},
                                 {0, 3, U(rng)}});
    const CubicFormValue c = cubic_components(f.jet({0, 0}, 4));
    CHECK(c.n122 == doctest::Approx(-c.n111));
    CHECK(c.n112 == doctest::Approx(-c.n222));
  }
}

TEST_CASE("directions rotate with the chart") {
  const Jet2d j = graph_jet("pick_def", {{"c", 1}}, {0, 0});
  const double th = 0.41;
  Eigen::Matrix2d R;
  R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  const DirectionSet a = bcde_directions(cubic_components(j));
  const DirectionSet b = bcde_directions(cubic_components(linear_substitute(j, R)));
  std::vector<double> shifted;
  for (double t : a.angles) shifted.push_back(mod_pi(t - th));
  check_angles(b.angles, shifted);
}

TEST_CASE("cubic form scales covariantly under z -> k z") {
  const Jet2d j = graph_jet("gauss_cusp", {{"lambda_cusp", 2}}, {0.7, 0.4});
  const CubicFormValue a = cubic_components(j), b = cubic_components(j * 3.0);
  // numerators are cubic in f, hess quadratic
  CHECK(b.n111 == doctest::Approx(27 * a.n111));
  CHECK(b.n222 == doctest::Approx(27 * a.n222));
  CHECK(b.hess == doctest::Approx(9 * a.hess));
}
