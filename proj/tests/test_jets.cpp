#include <doctest.h>

#include <cmath>
#include <random>

#include "quadrapt/jets.hpp"
#include "quadrapt/surfaces.hpp"

using namespace quadrapt;

namespace {

Jet2d graph_jet(const std::string& name, const std::map<std::string, double>& p, Eigen::Vector2d at, int order) {
  return jet_eval(*catalog(name, p).chart, at, order);
}

}  // namespace

TEST_CASE("fold jet at the origin") {
  const Jet2d j = graph_jet("fold", {}, {0, 0}, 4);
  for (int d = 0; d <= 4; ++d)
    for (int k = 0; k <= d; ++k) {
      const double want = (d - k == 2 && k == 0) ? 0.5 : (d == 3 && k == 3) ? 1.0 / 6 : 0.0;
      CHECK(j.coeff(d - k, k) == doctest::Approx(want));
    }
}

TEST_CASE("gauss cusp jet at the origin, lambda 1") {
  const Jet2d j = graph_jet("gauss_cusp", {{"lambda_cusp", 1}}, {0, 0}, 4);
  for (int d = 0; d <= 4; ++d)
    for (int k = 0; k <= d; ++k) {
      double want = 0;
      if (d - k == 2 && k == 0) want = 0.5;
      if (d - k == 1 && k == 2) want = 0.5;
      if (d - k == 0 && k == 4) want = 1.0 / 24;
      CHECK(j.coeff(d - k, k) == doctest::Approx(want));
    }
}

TEST_CASE("truncation keeps the low-order coefficients") {
  const Jet2d j = graph_jet("gauss_cusp", {{"lambda_cusp", 2}}, {0.3, -0.7}, 4);
  const Jet2d t = j.truncated(2);
  CHECK(t.order() == 2);
  for (int d = 0; d <= 2; ++d)
    for (int k = 0; k <= d; ++k) CHECK(t.coeff(d - k, k) == j.coeff(d - k, k));
}

TEST_CASE("jet product matches the product of the polynomials") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1, 1);
  Jet2d a(4), b(4);
  for (int k = 0; k < triangular_size(4); ++k) {
    a.coefficients()[k] = U(rng);
    b.coefficients()[k] = U(rng);
  }
  const Jet2d p = a * b;
  // The truncated product agrees with the full product up to O(|h|^5).
  for (double h : {1e-2, 5e-3}) {
    const double u = 0.6 * h, v = -0.8 * h;
    CHECK(std::abs(p.evaluate(u, v) - a.evaluate(u, v) * b.evaluate(u, v)) < 50 * std::pow(h, 5));
  }
}

TEST_CASE("jet partials agree with finite differences") {
  const BivariatePolynomial f({{3, 1, 0.7}, {0, 4, -1.3}, {2, 0, 0.5}, {1, 2, 2.0}});
  const Eigen::Vector2d p(0.4, -0.3);
  const Jet2d j = f.jet(p, 4);
  const double h = 1e-4;
  auto F = [&](double x, double y) { return f.evaluate(x, y); };
  const double fx = (F(p.x() + h, p.y()) - F(p.x() - h, p.y())) / (2 * h);
  const double fxy = (F(p.x() + h, p.y() + h) - F(p.x() + h, p.y() - h) - F(p.x() - h, p.y() + h) +
                      F(p.x() - h, p.y() - h)) /
                     (4 * h * h);
  CHECK(j.partial(1, 0) == doctest::Approx(fx).epsilon(1e-6));
  CHECK(j.partial(1, 1) == doctest::Approx(fxy).epsilon(1e-5));
  CHECK(j.derivative(0).derivative(1).value() == doctest::Approx(j.partial(1, 1)));
}

TEST_CASE("linear substitution by a rotation preserves values") {
  const BivariatePolynomial f({{3, 0, 1.0}, {1, 2, -3.0}, {0, 4, 0.25}});
  const Jet2d j = f.jet({0, 0}, 4);
  const double th = 0.37;
  Eigen::Matrix2d R;
  R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  const Jet2d g = linear_substitute(j, R);
  const Eigen::Vector2d uv(0.2, -0.1);
  const Eigen::Vector2d xy = R * uv;
  CHECK(g.evaluate(uv.x(), uv.y()) == doctest::Approx(j.evaluate(xy.x(), xy.y())));
}

TEST_CASE("negative order is rejected") { CHECK_THROWS_AS(Jet2d(-1), Error); }

TEST_CASE("monge chart of the unit sphere") {
  ImplicitSurface s;
  s.F = TrivariatePolynomial({{2, 0, 0, 1}, {0, 2, 0, 1}, {0, 0, 2, 1}, {0, 0, 0, -1}});
  const MongeChart m = monge_chart(s, {0, 0, 1}, 4);
  CHECK(std::abs(m.jet.coeff(2, 0)) == doctest::Approx(0.5));
  CHECK(m.jet.coeff(0, 2) == doctest::Approx(m.jet.coeff(2, 0)));
  CHECK(std::abs(m.jet.coeff(1, 1)) < 1e-12);
  CHECK(std::abs(m.jet.coeff(1, 0)) < 1e-12);
}

TEST_CASE("reconstructed graph satisfies the implicit equation to high order") {
  const CatalogEntry e = catalog("perturbed_sphere", {{"epsilon", 0.05}});
  const Eigen::Vector3d dir = Eigen::Vector3d(0.3, 0.4, 0.8).normalized();
  double r = 1;
  for (int k = 0; k < 50; ++k) r -= e.implicit->F(r * dir) / e.implicit->F.gradient(r * dir).dot(dir);
  const int order = 4;
  const MongeChart m = monge_chart(*e.implicit, r * dir, order);
  for (double h : {2e-2, 1e-2}) {
    const double x = 0.6 * h, y = 0.8 * h;
    const double res = e.implicit->F(m.frame.point(x, y, m.jet.evaluate(x, y)));
    CHECK(std::abs(res) < 20 * std::pow(h, order + 1));
  }
}

TEST_CASE("perturbed sphere pole jet against series inversion") {
  // On the pole z = sqrt-branch of z^2 + eps z^4 = s with s = 1 + 0.6 eps - x^2 - eps x^4 - y^2 - eps y^4.
  const double eps = 0.05;
  const CatalogEntry e = catalog("perturbed_sphere", {{"epsilon", eps}});
  double z = 1;
  for (int k = 0; k < 60; ++k) z -= (z * z + eps * z * z * z * z - 1 - 0.6 * eps) / (2 * z + 4 * eps * z * z * z);
  const MongeChart m = monge_chart(*e.implicit, {0, 0, z}, 4, Eigen::Vector3d::UnitX());
  // Independent expansion: z(x, 0) = phi(s(x)), s = s0 - x^2 - eps x^4, phi = inverse of H(z) = z^2 + eps z^4.
  const double H1 = 2 * z + 4 * eps * z * z * z, H2 = 2 + 12 * eps * z * z;
  const double p1 = 1 / H1, p2 = -H2 / (H1 * H1 * H1);
  // d2z/dx2 = p1 * (-2); d4z/dx4 = p1 * (-24 eps) + 3 p2 * 4 (from (s'')^2 terms)
  const double zxx = -2 * p1;
  const double zxxxx = -24 * eps * p1 + 3 * p2 * 4;
  const double sign = m.jet.coeff(2, 0) < 0 ? 1 : -1;  // normal may point either way
  CHECK(sign * m.jet.coeff(2, 0) == doctest::Approx(zxx / 2).epsilon(1e-10));
  CHECK(sign * m.jet.coeff(4, 0) == doctest::Approx(zxxxx / 24).epsilon(1e-9));
  CHECK(m.jet.coeff(0, 4) == doctest::Approx(m.jet.coeff(4, 0)).epsilon(1e-9));
  CHECK(std::abs(m.jet.coeff(3, 0)) < 1e-12);
}
