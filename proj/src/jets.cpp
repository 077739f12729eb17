#include "quadrapt/jets.hpp"

#include <cmath>

namespace quadrapt {

int BivariatePolynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.i + t.j);
  return d;
}

Jet2d BivariatePolynomial::jet(const Eigen::Vector2d& p, int order) const {
  return evaluate(Jet2d::coordinate(order, 0, p), Jet2d::coordinate(order, 1, p));
}

int TrivariatePolynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.i + t.j + t.k);
  return d;
}

TrivariatePolynomial TrivariatePolynomial::derivative(int axis) const {
  std::vector<Term3> out;
  for (auto t : terms_) {
    int* e = axis == 0 ? &t.i : axis == 1 ? &t.j : &t.k;
    if (*e == 0) continue;
    t.c *= *e;
    --*e;
    out.push_back(t);
  }
  return TrivariatePolynomial(std::move(out));
}

Eigen::Vector3d TrivariatePolynomial::gradient(const Eigen::Vector3d& q) const {
  return {derivative(0)(q), derivative(1)(q), derivative(2)(q)};
}

ChartDomain ChartDomain::rectangle(Eigen::Vector2d lo, Eigen::Vector2d hi) {
  ChartDomain d;
  d.kind = Kind::rectangle;
  d.lo = lo;
  d.hi = hi;
  return d;
}

ChartDomain ChartDomain::disc(Eigen::Vector2d center, double radius) {
  ChartDomain d;
  d.kind = Kind::disc;
  d.center = center;
  d.radius = radius;
  return d;
}

bool ChartDomain::contains(const Eigen::Vector2d& p) const {
  if (kind == Kind::disc) return (p - center).norm() <= radius * (1 + 1e-12);
  return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y();
}

std::pair<Eigen::Vector2d, Eigen::Vector2d> ChartDomain::bounds() const {
  if (kind == Kind::disc) return {center.array() - radius, center.array() + radius};
  return {lo, hi};
}

SurfaceChart graph_chart(std::string name, BivariatePolynomial f, ChartDomain domain) {
  return SurfaceChart(std::move(name), domain,
                      [f = std::move(f)](const Eigen::Vector2d& p, int order) { return f.jet(p, order); });
}

Jet2d jet_eval(const SurfaceChart& chart, const Eigen::Vector2d& p, int order) {
  if (order < 4) throw Error(Errc::invalid_parameter, "jet order must be at least 4");
  if (!chart.domain().contains(p))
    throw Error(Errc::domain, "point (" + std::to_string(p.x()) + ", " + std::to_string(p.y()) +
                                  ") outside the domain of chart " + chart.name());
  return chart.raw_jet(p, order);
}

double solve_height(const ImplicitSurface& surf, const Frame3& frame, const Eigen::Vector2d& xy, double z_guess) {
  const TrivariatePolynomial Fx = surf.F.derivative(0), Fy = surf.F.derivative(1), Fz = surf.F.derivative(2);
  double z = z_guess;
  for (int it = 0; it < 60; ++it) {
    const Eigen::Vector3d q = frame.point(xy.x(), xy.y(), z);
    const double v = surf.F(q);
    const Eigen::Vector3d g(Fx(q), Fy(q), Fz(q));
    const double dz = g.dot(frame.normal);
    if (std::abs(dz) < surf.gradient_threshold)
      throw Error(Errc::degenerate_chart, "surface tangent to the chart direction");
    double step = -v / dz;
    step = std::clamp(step, -0.25, 0.25);
    z += step;
    if (std::abs(step) < 1e-15 * (1 + std::abs(z))) return z;
  }
  const double v = surf.F(frame.point(xy.x(), xy.y(), z));
  if (std::abs(v) > 1e-12 * (1 + frame.point(xy.x(), xy.y(), z).squaredNorm()))
    throw Error(Errc::off_surface, "height solve did not converge");
  return z;
}

Jet2d implicit_graph_jet(const ImplicitSurface& surf, const Frame3& frame, const Eigen::Vector2d& xy, double z,
                         int order) {
  const Eigen::Vector3d p = frame.point(xy.x(), xy.y(), z);
  const double Gz = surf.F.gradient(p).dot(frame.normal);
  if (std::abs(Gz) < surf.gradient_threshold)
    throw Error(Errc::degenerate_chart, "surface tangent to the chart direction");

  Jet2d g(order, xy);  // height increment, no constant term
  for (int k = 1; k <= order; ++k) {
    const Jet2d U = Jet2d::displacement(k, 0, xy), V = Jet2d::displacement(k, 1, xy);
    const Jet2d gk = g.truncated(k);
    Jet2d X[3];
    for (int m = 0; m < 3; ++m)
      X[m] = Jet2d::constant(k, p[m], xy) + U * frame.e1[m] + V * frame.e2[m] + gk * frame.normal[m];
    const Jet2d G = surf.F.evaluate(X[0], X[1], X[2]);
    for (int j = 0; j <= k; ++j) g.coeff(k - j, j) = -G.coeff(k - j, j) / Gz;
  }
  g.coeff(0, 0) = z;
  return g;
}

MongeChart monge_chart(const ImplicitSurface& surf, const Eigen::Vector3d& q, int order,
                       const std::optional<Eigen::Vector3d>& e1_hint) {
  const double tol = 1e-10 * (1 + q.squaredNorm());
  if (std::abs(surf.F(q)) > tol) throw Error(Errc::off_surface, "point is not on the surface");
  Eigen::Vector3d grad = surf.F.gradient(q);
  if (grad.norm() < surf.gradient_threshold) throw Error(Errc::degenerate_chart, "gradient below threshold");

  Frame3 frame;
  frame.origin = q;
  frame.normal = grad.normalized();
  // pull the residual out along the normal so that f(0,0) = 0 exactly
  const double z0 = solve_height(surf, frame, Eigen::Vector2d::Zero(), 0.0);
  frame.origin = frame.point(0, 0, z0);
  grad = surf.F.gradient(frame.origin);
  frame.normal = grad.normalized();

  Eigen::Vector3d e1;
  if (e1_hint && (*e1_hint - e1_hint->dot(frame.normal) * frame.normal).norm() > 1e-8) {
    e1 = *e1_hint;
  } else {
    int axis = 0;
    frame.normal.cwiseAbs().minCoeff(&axis);
    e1 = Eigen::Vector3d::Unit(axis);
  }
  frame.e1 = (e1 - e1.dot(frame.normal) * frame.normal).normalized();
  frame.e2 = frame.normal.cross(frame.e1);

  Jet2d jet = implicit_graph_jet(surf, frame, Eigen::Vector2d::Zero(), 0.0, order);
  return {jet, frame};
}

SurfaceChart monge_surface_chart(const ImplicitSurface& surf, const Frame3& frame, double radius) {
  return SurfaceChart("monge", ChartDomain::disc(Eigen::Vector2d::Zero(), radius),
                      [surf, frame](const Eigen::Vector2d& p, int order) {
                        const double z = solve_height(surf, frame, p, 0.0);
                        return implicit_graph_jet(surf, frame, p, z, order);
                      });
}

}  // namespace quadrapt
