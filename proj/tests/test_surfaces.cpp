#include <doctest.h>

#include <cmath>
#include <numbers>

#include "quadrapt/cubicform.hpp"
#include "quadrapt/surfaces.hpp"

using namespace quadrapt;
using std::numbers::pi;

namespace {

double value_at(const CatalogEntry& e, double x, double y) { return jet_eval(*e.chart, {x, y}, 4).value(); }

// Positive proportionality error between two component vectors.
double proportional_error(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  double ab = 0, bb = 0, scale = 0;
  for (int i = 0; i < 4; ++i) {
    ab += a[i] * b[i];
    bb += b[i] * b[i];
    scale = std::max(scale, std::abs(a[i]));
  }
  const double k = ab / bb;
  if (k <= 0) return 1e300;
  double err = 0;
  for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(a[i] - k * b[i]));
  return err / scale;
}

}  // namespace

TEST_CASE("catalog charts") {
  const CatalogEntry fold = catalog("fold");
  CHECK(value_at(fold, 0.4, -0.6) == doctest::Approx(0.08 - 0.036));
  const CatalogEntry cusp = catalog("gauss_cusp", {{"lambda_cusp", 2}});
  CHECK(value_at(cusp, 0.5, 0.5) == doctest::Approx(0.125 + 0.0625 + 2 * 0.0625 / 24));
  CHECK(catalog("gauss_cusp", {{"lambda", 2}}).params.at("lambda_cusp") == 2);
}

TEST_CASE("catalog rejects bad input") {
  CHECK_THROWS_AS(catalog("gauss_cusp", {{"lambda_cusp", 0}}), Error);
  CHECK_THROWS_AS(catalog("gauss_cusp", {{"lambda_cusp", 3}}), Error);
  CHECK_THROWS_AS(catalog("rotation", {{"lambda_rot", 0.7}}), Error);
  CHECK_THROWS_AS(catalog("fold", {{"bogus", 1}}), Error);
  try {
    catalog("torus");
    FAIL("expected unknown_name");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_name);
  }
  for (const auto& n : catalog_names()) CHECK_NOTHROW(catalog(n));
}

TEST_CASE("rotation surface entry") {
  const CatalogEntry e = catalog("rotation", {{"lambda_rot", 0.2}});
  REQUIRE(e.profile);
  const auto X = e.profile->x(0.3), Y = e.profile->y(0.3);
  CHECK(X[0] == doctest::Approx(std::cos(0.3) * (1 + 0.2 * std::sin(0.3))));
  CHECK(Y[0] == doctest::Approx(std::sin(0.3)));
  CHECK(e.chiM == 2);
  // the profile revolved about the y axis lies on the implicit surface
  for (double t : {-1.2, -0.4, 0.1, 0.9}) {
    const auto x = e.profile->x(t), y = e.profile->y(t);
    for (double th : {0.0, 1.0, 2.5})
      CHECK(std::abs(e.implicit->F({x[0] * std::cos(th), x[0] * std::sin(th), y[0]})) < 1e-12);
  }
}

TEST_CASE("profile derivatives agree with finite differences") {
  const ProfileCurve c = rotation_profile(0.2);
  const double t = 0.37, h = 1e-5;
  for (int k = 0; k < 3; ++k) {
    const double dx = (c.x(t + h)[k] - c.x(t - h)[k]) / (2 * h);
    const double dy = (c.y(t + h)[k] - c.y(t - h)[k]) / (2 * h);
    CHECK(dx == doctest::Approx(c.x(t)[k + 1]).epsilon(1e-7));
    CHECK(dy == doctest::Approx(c.y(t)[k + 1]).epsilon(1e-7));
  }
}

TEST_CASE("no interior quadratic parallels for lambda 0.2") {
  const ProfileCurve c = rotation_profile(0.2);
  int pos = 0, neg = 0;
  for (int k = 1; k < 2000; ++k) {
    const double t = -pi / 2 + pi * k / 2000;
    const double r = affine_reparam_condition(c, t);
    pos += r > 0;
    neg += r < 0;
  }
  CHECK((pos == 0 || neg == 0));
  CHECK(pos + neg == 1999);
}

TEST_CASE("circle profile has vanishing residual") {
  const ProfileCurve c = rotation_profile(0);
  for (int k = 1; k < 100; ++k) CHECK(std::abs(affine_reparam_condition(c, -pi / 2 + pi * k / 100)) < 1e-12);
  CHECK_THROWS_AS(affine_reparam_condition(c, pi / 2), Error);
}

TEST_CASE("rotation identity on a fine grid") {
  double worst = 0;
  for (int k = 0; k < 10000; ++k) worst = std::max(worst, std::abs(rotation_identity_residual(0.2, -pi / 2 + pi * k / 9999)));
  CHECK(worst < 1e-12);
}

TEST_CASE("fold and cusp oracles") {
  const CatalogEntry fold = catalog("fold");
  const CubicFormValue f = cubic_components(jet_eval(*fold.chart, {1, 1}, 4));
  CHECK(proportional_error(f.components(), fold_cubic_oracle({1, 1}).components()) < 1e-12);
  for (double lambda : {1.0, 2.0, 4.0}) {
    const CatalogEntry cusp = catalog("gauss_cusp", {{"lambda_cusp", lambda}});
    for (Eigen::Vector2d p : {Eigen::Vector2d(1, 1), Eigen::Vector2d(-0.5, 0.3), Eigen::Vector2d(0.2, -0.8)}) {
      const CubicFormValue c = cubic_components(jet_eval(*cusp.chart, p, 4));
      const CubicFormValue o = cusp_cubic_oracle(p, lambda);
      CHECK(proportional_error(c.components(), o.components()) < 1e-12);
      CHECK(c.hess == doctest::Approx(o.hess));
    }
  }
}

TEST_CASE("cusp components vanish on y = 0") {
  for (double lambda : {1.0, 2.0, 5.0})
    for (double x : {0.1, 0.5, 0.9}) {
      const CubicFormValue o = cusp_cubic_oracle({x, 0}, lambda);
      CHECK(o.n112 == 0);
      CHECK(o.n222 == 0);
      const CubicFormValue c = cubic_components(jet_eval(*catalog("gauss_cusp", {{"lambda_cusp", lambda}}).chart, {x, 0}, 4));
      CHECK(std::abs(c.n112) < 1e-14);
      CHECK(std::abs(c.n222) < 1e-14);
    }
}

TEST_CASE("fold line field is tangent to the parabolic curve") {
  const CatalogEntry fold = catalog("fold");
  for (double y : {1e-2, 1e-4, -1e-4, -1e-2}) {
    const DirectionSet d = bcde_directions(cubic_components(jet_eval(*fold.chart, {0.3, y}, 4)));
    double best = pi;
    for (double a : d.angles) best = std::min({best, a, pi - a});
    CHECK(best < 1e-9);
  }
}

TEST_CASE("cusp direction extends continuously across the parabolic curve") {
  const double lambda = 2;
  const CatalogEntry cusp = catalog("gauss_cusp", {{"lambda_cusp", lambda}});
  // transversal x = -lambda/2 y^2 + y^2 + s along y = 0.4; hess = s
  const double y = 0.4, x0 = y * y - lambda * y * y / 2;
  double prev = -1;
  int switched = 0;
  for (int k = -500; k <= 500; ++k) {
    const double s = 1e-4 * k;
    const CubicFormValue c = cubic_components(jet_eval(*cusp.chart, {x0 + s, y}, 4));
    CHECK(std::abs(c.hess - s) < 1e-12);
    const DirectionSet d = bcde_directions(c);
    if (s != 0) CHECK(int(d.angles.size()) == (s > 0 ? 3 : 1));
    if (d.angles.empty()) continue;
    if (prev < 0) {
      prev = d.angles[0];
      continue;
    }
    double best = d.angles[0], gap = pi;
    for (double a : d.angles) {
      const double g = std::abs(std::remainder(a - prev, pi));
      if (g < gap) {
        gap = g;
        best = a;
      }
    }
    switched += gap > 0.05;
    prev = best;
  }
  CHECK(switched == 0);
}
