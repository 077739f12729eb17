#pragma once

#include <array>
#include <vector>

#include "quadrapt/jets.hpp"

namespace quadrapt {

/// phi^5 C_ijk numerators of the affine cubic form of z = f(x, y), and phi^4 = f_xx f_yy - f_xy^2,
/// from the raw second and third partials. Works for T = double and T = Jet2.
template <typename T>
struct CubicNumerators {
  T n111, n112, n122, n222, hess;
};

template <typename T>
CubicNumerators<T> cubic_numerators(const T& fxx, const T& fxy, const T& fyy, const T& fxxx, const T& fxxy,
                                    const T& fxyy, const T& fyyy) {
  CubicNumerators<T> r;
  r.n111 = fxxx * fxx * fyy * 0.25 - fxyy * fxx * fxx * 0.75 + fxxy * fxx * fxy * 1.5 - fxxx * fxy * fxy;
  r.n112 = fxx * fxx * fyyy * -0.25 + fxx * fyy * fxxy * 0.75 - fxy * fyy * fxxx * 0.5;
  r.n122 = fyy * fyy * fxxx * -0.25 + fxx * fyy * fxyy * 0.75 - fxy * fxx * fyyy * 0.5;
  r.n222 = fyyy * fxx * fyy * 0.25 - fxxy * fyy * fyy * 0.75 + fxyy * fyy * fxy * 1.5 - fyyy * fxy * fxy;
  r.hess = fxx * fyy - fxy * fxy;
  return r;
}

struct CubicFormValue {
  double n111 = 0, n112 = 0, n122 = 0, n222 = 0;
  double hess = 0;
  /// metric numerators f_xx, f_xy, f_yy
  double gxx = 0, gxy = 0, gyy = 0;
  /// scale of the 3-jet used by the zero test
  double magnitude = 0;

  std::array<double, 4> components() const { return {n111, n112, n122, n222}; }
  double max_abs() const;
};

CubicFormValue cubic_components(const Jet2d& j);

/// Numerator components as jets about the base of j (order j.order() - 3).
CubicNumerators<Jet2d> cubic_component_jets(const Jet2d& j);

struct Tolerances {
  double singular = 1e-9;
  double merge_angle = 1e-8;
  double normal_form = 1e-9;
};

enum class DirectionKind { elliptic3, hyperbolic1, degenerate };

const char* direction_kind_name(DirectionKind k);

struct DirectionSet {
  DirectionKind kind = DirectionKind::degenerate;
  /// undirected angles in [0, pi), increasing
  std::vector<double> angles;
};

/// k30 dx^3 + k21 dx^2 dy + k12 dx dy^2 + k03 dy^3.
struct BinaryCubic {
  double k30 = 0, k21 = 0, k12 = 0, k03 = 0;
  double operator()(double t) const;
};

/// Real root directions of a nonzero binary cubic.
DirectionSet binary_cubic_roots(const BinaryCubic& form, double merge_angle = 1e-8);

bool is_singular(const CubicFormValue& c, const Tolerances& tol = {});

/// Roots of n111 dx^3 + 3 n112 dx^2 dy + 3 n122 dx dy^2 + n222 dy^3.
DirectionSet bcde_directions(const CubicFormValue& c, const Tolerances& tol = {});

/// Null directions of the cubic contact term of a jet whose 2-jet is (x^2+y^2)/2 or xy.
DirectionSet darboux_directions(const Jet2d& j, const Tolerances& tol = {});

/// Reduce an angle modulo pi into [0, pi).
double mod_pi(double a);

}  // namespace quadrapt
