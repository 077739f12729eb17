#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quadrapt/cubicform.hpp"
#include "quadrapt/rational.hpp"

namespace quadrapt {

enum class Region { elliptic, hyperbolic };
enum class Portrait { D1, D2, D3, non_simple, boundary };
enum class HyperbolicCase { BC16, BCm16, BC0, other };

const char* region_name(Region r);
const char* portrait_name(Portrait p);
const char* case_name(HyperbolicCase c);
Region parse_region(const std::string& s);

struct ModelTolerances {
  /// relative tolerance on delta (scaled by coeff^2) and Delta (scaled by coeff^6)
  double boundary = 1e-9;
  double jet = 1e-9;
};

/// Homogeneous quartic p[0] x^4 + p[1] x^3 y + ... + p[4] y^4.
struct Quartic {
  std::array<double, 5> p{0, 0, 0, 0, 0};

  double operator()(double x, double y) const;
  double at(double t) const;
  /// d/dt of at(t)
  double slope(double t) const;
  double max_abs() const;
  /// Projective invariants for the binomial normalization p = (A, 4B, 6C, 4D, E).
  double S() const;
  double T() const;
};

struct QuarticRoots {
  /// projective roots in [0, pi), increasing
  std::vector<double> angles;
  std::vector<int> multiplicity;
  /// number of distinct real projective roots
  int count = 0;
  /// S^3 - 27 T^2 of the form
  double discriminant = 0;
  /// discriminant (or the root separation) within tolerance of zero
  bool near_boundary = false;
  /// count predicted from the discriminant sign and the Rees conditions; -1 on the boundary
  int predicted_count = -1;
};

QuarticRoots quartic_real_roots(const Quartic& P, double tol = 1e-9);

/// Real projective roots of a nonzero homogeneous polynomial sum c[k] x^{n-k} y^k.
std::vector<double> homogeneous_real_roots(const std::vector<double>& c, double tol = 1e-9);

struct EllipticModel {
  double a = 0, b = 0, c = 0, d = 0;
  bool normalizable = false;
  double aNorm = 0, hNorm = 0;
  double S = 0, T = 0, Delta = 0, delta = 0;
  /// 27 a^2 h^2 - (1 - a^2 - h^2)^3 on the normalized plane (= -Delta after normalization)
  double astroid = 0;
  int rootCountP = 0;
  Portrait portrait = Portrait::non_simple;
  std::optional<Rational> index;
  bool simple = false;
};

struct HyperbolicModel {
  double a = 0, b = 0, c = 0, d = 0;
  double e = 0;
  HyperbolicCase caseLabel = HyperbolicCase::other;
  std::string region;
  double S = 0, T = 0, Delta = 0, delta = 0;
  /// coefficients after the case normalization (bc = +-16, or b = 0 and c = 4)
  double an = 0, bn = 0, cn = 0, dn = 0;
  int rootCountP = 0;
  std::optional<int> index;
  bool simple = false;
};

EllipticModel make_elliptic(double a, double b, double c, double d, const ModelTolerances& tol = {});
HyperbolicModel make_hyperbolic(double a, double b, double c, double d, double e = 0,
                                const ModelTolerances& tol = {});

/// Rescale omega_1 to a + d = 0, b - c = 1 (when possible). Returns (a, h).
std::optional<std::pair<double, double>> normalize_elliptic(double a, double b, double c, double d);

struct NormalizedJet {
  Region region;
  Jet2d jet;
  /// original displacement = L * new displacement
  Eigen::Matrix2d L;
};

/// Affine change bringing the jet at its base to z = (x^2+y^2)/2 + ... or z = xy + ...
/// (constant and linear parts removed, z rescaled).
NormalizedJet normalize_jet(const Jet2d& j);

EllipticModel extract_elliptic(const Jet2d& j, const ModelTolerances& tol = {});
HyperbolicModel extract_hyperbolic(const Jet2d& j, const ModelTolerances& tol = {});

struct CharPoly {
  Region kind;
  double a, b, c, d;
  Quartic P, Q;
};

CharPoly char_polys(const EllipticModel& m);
CharPoly char_polys(const HyperbolicModel& m);

struct EllipticClass {
  Portrait portrait;
  int roots;
  Rational index;
};

struct HyperbolicClass {
  HyperbolicCase caseLabel;
  std::string region;
  int roots;
  int index;
};

EllipticClass classify(const EllipticModel& m, const ModelTolerances& tol = {});
HyperbolicClass classify(const HyperbolicModel& m, const ModelTolerances& tol = {});

/// Region of the normalized elliptic parameter (a, h): outside astroid, between, inside circle.
Portrait elliptic_portrait_of(double aN, double hN);

}  // namespace quadrapt
