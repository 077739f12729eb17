#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadrapt/cubicform.hpp"
#include "quadrapt/jets.hpp"
#include "quadrapt/rational.hpp"

namespace quadrapt {

/// Plane curve (x(t), y(t)) with derivatives up to order 3.
struct ProfileCurve {
  /// returns {x, x_t, x_tt, x_ttt}
  std::function<std::array<double, 4>(double)> x;
  std::function<std::array<double, 4>(double)> y;
  double t0 = 0, t1 = 0;

  /// x_t y_tt - x_tt y_t
  double regularity(double t) const;
};

/// (cos t (1 + lambda sin t), sin t) on [-pi/2, pi/2].
ProfileCurve rotation_profile(double lambda);

/// x y'' - x' y' in affine arclength, evaluated through the chain rule in t.
double affine_reparam_condition(const ProfileCurve& c, double t);

/// Delta_t (1 + lambda sin t) + 3 lambda cos t Delta - 6 lambda cos^3 t (1 + 2 lambda sin t).
double rotation_identity_residual(double lambda, double t);

/// Polynomial x1^2 + x2^2 + y^2 (1 + lambda y)^2 - (1 + lambda y)^2.
TrivariatePolynomial rotation_surface_polynomial(double lambda);

struct KnownPoint {
  Eigen::Vector3d location;
  Rational index;
};

struct CatalogEntry {
  std::string name;
  std::map<std::string, double> params;
  std::optional<SurfaceChart> chart;
  std::optional<ImplicitSurface> implicit;
  std::optional<ProfileCurve> profile;
  /// polynomial of the graph chart, when there is one
  std::optional<BivariatePolynomial> graph;
  std::optional<int> chiE, chiH, chiM;
  /// restrict the global search to one region ("elliptic" or "hyperbolic"), empty for both
  std::string region;
  /// every point has vanishing cubic form
  bool quadric = false;
  std::vector<KnownPoint> known;
};

CatalogEntry catalog(const std::string& name, const std::map<std::string, double>& params = {});
std::vector<std::string> catalog_names();

/// Surface from an implicit polynomial or a graph polynomial given by term lists.
CatalogEntry implicit_entry(TrivariatePolynomial F, std::optional<int> chiM = std::nullopt);
CatalogEntry graph_entry(BivariatePolynomial f, ChartDomain domain);

/// Fold z = x^2/2 + y^3/6: closed-form components (0, -1, 0, y) times 1/4.
CubicFormValue fold_cubic_oracle(const Eigen::Vector2d& p);

/// Gauss cusp z = x^2/2 + x y^2/2 + lambda y^4/24: the closed form
/// (-3, -lambda y, 3x - lambda y^2/2, y (x (6 + lambda) + lambda (lambda - 2) y^2 / 2)) times 1/4.
CubicFormValue cusp_cubic_oracle(const Eigen::Vector2d& p, double lambda);

}  // namespace quadrapt
