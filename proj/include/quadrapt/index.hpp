#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "quadrapt/localmodel.hpp"
#include "quadrapt/rational.hpp"

namespace quadrapt {

struct LoopMap {
  std::function<Eigen::Vector2d(double)> sampler;
  /// samples with norm below this are treated as zeros
  double zero_tolerance = 1e-12;
  int initial_samples = 64;
  int max_depth = 40;
};

struct WindingResult {
  int degree = 0;
  double min_norm = 0;
  int evaluations = 0;
};

WindingResult winding(const LoopMap& m);
int winding_degree(const LoopMap& m);

struct EllipticIndex {
  Rational index;
  int degAB = 0;
  int degPQ = 0;
};

/// -deg(A1 + i B1) / 3, cross-checked against 1 - deg(P + iQ) / 3.
EllipticIndex elliptic_index_detail(const EllipticModel& m);
Rational elliptic_index(const EllipticModel& m);

/// deg((Q, P)) + 1 when ad != 0, otherwise the winding of the null line field itself.
int hyperbolic_index(const HyperbolicModel& m);

/// Index of the line field of (ax+by) dx^3 + (cx+dy) dy^3, from the winding of its null direction.
int line_field_index(double a, double b, double c, double d);

/// Homogeneous polynomial sum c[k] x^{deg-k} y^k.
struct HomogeneousPoly {
  std::vector<double> c;

  int degree() const { return int(c.size()) - 1; }
  double operator()(double x, double y) const;
  HomogeneousPoly dx() const;
  HomogeneousPoly dy() const;
  HomogeneousPoly operator-(const HomogeneousPoly& o) const;
  HomogeneousPoly operator*(double s) const;
  double max_abs() const;
};

struct SemiHomogeneousForm {
  int n = 0;
  HomogeneousPoly h;
  HomogeneousPoly An, Bn;

  /// An = h_xxx - 3 h_xyy, Bn = h_yyy - 3 h_xxy.
  static SemiHomogeneousForm from_h(const HomogeneousPoly& h);
  static SemiHomogeneousForm from_components(const HomogeneousPoly& An, const HomogeneousPoly& Bn);
};

/// Throws not_semi_homogeneous when An and Bn share a real projective root.
void check_semi_homogeneous(const SemiHomogeneousForm& s, double tol = 1e-7);
Rational semihomogeneous_index(const SemiHomogeneousForm& s);

struct LoewnerReport {
  int trials = 0;
  int accepted = 0;
  int rejected = 0;
  int violations = 0;
  std::uint64_t seed = 0;
  int maxDegree = 0;
  std::map<Rational, int> histogram;
};

LoewnerReport loewner_check(int trials, int maxDegree, std::uint64_t seed = 20240611);

}  // namespace quadrapt
