#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quadrapt/error.hpp"

namespace quadrapt {

constexpr int triangular_size(int order) { return (order + 1) * (order + 2) / 2; }

/// Slot of x^i y^j: graded by degree, then by the power of y.
constexpr int triangular_index(int i, int j) {
  const int d = i + j;
  return d * (d + 1) / 2 + j;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

/// Truncated Taylor expansion about `base`:
///   f(base + (u, v)) = sum_{i+j <= order} c_ij u^i v^j.
/// Coefficients are scaled, c_ij = d^{i+j}f / dx^i dy^j / (i! j!).
template <typename Scalar>
class Jet2 {
 public:
  using Point = Eigen::Matrix<Scalar, 2, 1>;
  using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Jet2() : Jet2(0) {}
  explicit Jet2(int order, const Point& base = Point::Zero())
      : order_(order), base_(base), c_(Coefficients::Zero(triangular_size(std::max(order, 0)))) {
    if (order < 0) throw Error(Errc::invalid_parameter, "jet order must be non-negative");
  }

  static Jet2 constant(int order, Scalar value, const Point& base = Point::Zero()) {
    Jet2 j(order, base);
    j.c_[0] = value;
    return j;
  }

  /// The coordinate function x (axis 0) or y (axis 1).
  static Jet2 coordinate(int order, int axis, const Point& base = Point::Zero()) {
    Jet2 j(order, base);
    j.c_[0] = base[axis];
    if (order >= 1) j.c_[axis == 0 ? 1 : 2] = Scalar(1);
    return j;
  }

  /// The displacement u = x - base.x (axis 0) or v = y - base.y (axis 1).
  static Jet2 displacement(int order, int axis, const Point& base = Point::Zero()) {
    Jet2 j(order, base);
    if (order >= 1) j.c_[axis == 0 ? 1 : 2] = Scalar(1);
    return j;
  }

  int order() const { return order_; }
  const Point& base() const { return base_; }
  const Coefficients& coefficients() const { return c_; }
  Coefficients& coefficients() { return c_; }

  Scalar coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > order_) return Scalar(0);
    return c_[triangular_index(i, j)];
  }
  Scalar& coeff(int i, int j) { return c_[triangular_index(i, j)]; }

  /// Raw partial derivative d^{i+j}f / dx^i dy^j at the base point.
  Scalar partial(int i, int j) const { return coeff(i, j) * Scalar(factorial(i) * factorial(j)); }
  Scalar value() const { return c_[0]; }

  Jet2 truncated(int order) const {
    const int n = std::min(order, order_);
    Jet2 r(n, base_);
    r.c_ = c_.head(triangular_size(n));
    return r;
  }

  /// Same order, keeps only the terms of total degree `degree`.
  Jet2 homogeneous_part(int degree) const {
    Jet2 r(order_, base_);
    if (degree < 0 || degree > order_) return r;
    const int s = triangular_index(degree, 0);
    r.c_.segment(s, degree + 1) = c_.segment(s, degree + 1);
    return r;
  }

  /// Largest coefficient magnitude among terms of total degree `degree`.
  Scalar degree_norm(int degree) const {
    using std::abs;
    Scalar m(0);
    if (degree < 0 || degree > order_) return m;
    for (int j = 0; j <= degree; ++j) m = std::max(m, Scalar(abs(coeff(degree - j, j))));
    return m;
  }

  /// Derivative along x (axis 0) or y (axis 1); the order drops by one.
  Jet2 derivative(int axis) const {
    if (order_ == 0) return Jet2(0, base_);
    Jet2 r(order_ - 1, base_);
    for (int d = 0; d < order_; ++d)
      for (int j = 0; j <= d; ++j) {
        const int i = d - j;
        if (axis == 0)
          r.c_[triangular_index(i, j)] = Scalar(i + 1) * coeff(i + 1, j);
        else
          r.c_[triangular_index(i, j)] = Scalar(j + 1) * coeff(i, j + 1);
      }
    return r;
  }

  /// Value of the truncated polynomial at displacement (u, v).
  Scalar evaluate(Scalar u, Scalar v) const {
    std::vector<Scalar> up(order_ + 1, Scalar(1)), vp(order_ + 1, Scalar(1));
    for (int k = 1; k <= order_; ++k) {
      up[k] = up[k - 1] * u;
      vp[k] = vp[k - 1] * v;
    }
    Scalar total(0);
    for (int d = 0; d <= order_; ++d)
      for (int j = 0; j <= d; ++j) total += coeff(d - j, j) * up[d - j] * vp[j];
    return total;
  }

  Jet2& operator+=(const Jet2& o) { return *this = *this + o; }
  Jet2& operator-=(const Jet2& o) { return *this = *this - o; }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }
  Jet2& operator*=(Scalar s) {
    c_ *= s;
    return *this;
  }
  Jet2& operator+=(Scalar s) {
    c_[0] += s;
    return *this;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    const int n = std::min(a.order_, b.order_);
    Jet2 r(n, a.base_);
    const int m = triangular_size(n);
    r.c_ = a.c_.head(m) + b.c_.head(m);
    return r;
  }
  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    const int n = std::min(a.order_, b.order_);
    Jet2 r(n, a.base_);
    const int m = triangular_size(n);
    r.c_ = a.c_.head(m) - b.c_.head(m);
    return r;
  }
  friend Jet2 operator-(const Jet2& a) {
    Jet2 r = a;
    r.c_ = -r.c_;
    return r;
  }
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    const int n = std::min(a.order_, b.order_);
    Jet2 r(n, a.base_);
    for (int da = 0; da <= n; ++da)
      for (int ja = 0; ja <= da; ++ja) {
        const Scalar ca = a.c_[triangular_index(da - ja, ja)];
        if (ca == Scalar(0)) continue;
        for (int db = 0; db <= n - da; ++db)
          for (int jb = 0; jb <= db; ++jb)
            r.c_[triangular_index(da - ja + db - jb, ja + jb)] += ca * b.c_[triangular_index(db - jb, jb)];
      }
    return r;
  }
  friend Jet2 operator*(const Jet2& a, Scalar s) {
    Jet2 r = a;
    r.c_ *= s;
    return r;
  }
  friend Jet2 operator*(Scalar s, const Jet2& a) { return a * s; }
  friend Jet2 operator+(const Jet2& a, Scalar s) {
    Jet2 r = a;
    r.c_[0] += s;
    return r;
  }
  friend Jet2 operator+(Scalar s, const Jet2& a) { return a + s; }
  friend Jet2 operator-(const Jet2& a, Scalar s) { return a + (-s); }
  friend Jet2 operator-(Scalar s, const Jet2& a) { return (-a) + s; }

 private:
  int order_;
  Point base_;
  Coefficients c_;
};

using Jet2d = Jet2<double>;

inline double one_like(double) { return 1.0; }
template <typename Scalar>
Jet2<Scalar> one_like(const Jet2<Scalar>& j) {
  return Jet2<Scalar>::constant(j.order(), Scalar(1), j.base());
}

/// Substitutes the jets X, Y for the displacement variables of f.
/// With X, Y free of constant terms this is the jet of the composition.
template <typename Scalar>
Jet2<Scalar> compose(const Jet2<Scalar>& f, const Jet2<Scalar>& X, const Jet2<Scalar>& Y) {
  const int n = std::min(X.order(), Y.order());
  std::vector<Jet2<Scalar>> xp{one_like(X).truncated(n)}, yp{one_like(Y).truncated(n)};
  for (int k = 1; k <= f.order(); ++k) {
    xp.push_back(xp.back() * X);
    yp.push_back(yp.back() * Y);
  }
  Jet2<Scalar> r(n, X.base());
  for (int d = 0; d <= f.order(); ++d)
    for (int j = 0; j <= d; ++j) {
      const Scalar c = f.coeff(d - j, j);
      if (c == Scalar(0)) continue;
      r += (xp[d - j] * yp[j]) * c;
    }
  return r;
}

/// g(u, v) = f(M (u, v)); the base of g is M^{-1} base(f) when M is invertible.
template <typename Scalar>
Jet2<Scalar> linear_substitute(const Jet2<Scalar>& f, const Eigen::Matrix<Scalar, 2, 2>& M) {
  using Point = typename Jet2<Scalar>::Point;
  Point base = Point::Zero();
  if (M.determinant() != Scalar(0)) base = M.inverse() * f.base();
  Jet2<Scalar> X(f.order(), base), Y(f.order(), base);
  if (f.order() >= 1) {
    X.coeff(1, 0) = M(0, 0);
    X.coeff(0, 1) = M(0, 1);
    Y.coeff(1, 0) = M(1, 0);
    Y.coeff(0, 1) = M(1, 1);
  }
  return compose(f, X, Y);
}

struct Term2 {
  int i, j;
  double c;
};

/// Polynomial sum c x^i y^j in absolute coordinates.
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  explicit BivariatePolynomial(std::vector<Term2> terms) : terms_(std::move(terms)) {}

  const std::vector<Term2>& terms() const { return terms_; }
  int degree() const;

  template <typename T>
  T evaluate(const T& x, const T& y) const {
    const int n = degree();
    std::vector<T> xp{one_like(x)}, yp{one_like(y)};
    for (int k = 1; k <= n; ++k) {
      xp.push_back(xp.back() * x);
      yp.push_back(yp.back() * y);
    }
    T r = xp[0] * 0.0;
    for (const auto& t : terms_) r += xp[t.i] * yp[t.j] * t.c;
    return r;
  }

  /// Exact jet at p (any order).
  Jet2d jet(const Eigen::Vector2d& p, int order) const;

 private:
  std::vector<Term2> terms_;
};

struct Term3 {
  int i, j, k;
  double c;
};

class TrivariatePolynomial {
 public:
  TrivariatePolynomial() = default;
  explicit TrivariatePolynomial(std::vector<Term3> terms) : terms_(std::move(terms)) {}

  const std::vector<Term3>& terms() const { return terms_; }
  int degree() const;

  template <typename T>
  T evaluate(const T& x, const T& y, const T& z) const {
    const int n = degree();
    std::vector<T> xp{one_like(x)}, yp{one_like(y)}, zp{one_like(z)};
    for (int k = 1; k <= n; ++k) {
      xp.push_back(xp.back() * x);
      yp.push_back(yp.back() * y);
      zp.push_back(zp.back() * z);
    }
    T r = xp[0] * 0.0;
    for (const auto& t : terms_) r += xp[t.i] * yp[t.j] * zp[t.k] * t.c;
    return r;
  }
  double operator()(const Eigen::Vector3d& q) const { return evaluate(q.x(), q.y(), q.z()); }

  TrivariatePolynomial derivative(int axis) const;
  Eigen::Vector3d gradient(const Eigen::Vector3d& q) const;

 private:
  std::vector<Term3> terms_;
};

struct ChartDomain {
  enum class Kind { rectangle, disc };
  Kind kind = Kind::rectangle;
  Eigen::Vector2d lo{-1, -1}, hi{1, 1};
  Eigen::Vector2d center{0, 0};
  double radius = 1;

  static ChartDomain rectangle(Eigen::Vector2d lo, Eigen::Vector2d hi);
  static ChartDomain disc(Eigen::Vector2d center, double radius);
  bool contains(const Eigen::Vector2d& p) const;
  /// Axis-aligned bounding box.
  std::pair<Eigen::Vector2d, Eigen::Vector2d> bounds() const;
};

/// A graph z = f(x, y) over a planar domain, evaluated through exact jets.
class SurfaceChart {
 public:
  using Evaluator = std::function<Jet2d(const Eigen::Vector2d&, int)>;

  SurfaceChart(std::string name, ChartDomain domain, Evaluator evaluator)
      : name_(std::move(name)), domain_(domain), evaluator_(std::move(evaluator)) {}

  const std::string& name() const { return name_; }
  const ChartDomain& domain() const { return domain_; }
  /// No domain check; used by loops that may graze the boundary.
  Jet2d raw_jet(const Eigen::Vector2d& p, int order) const { return evaluator_(p, order); }

 private:
  std::string name_;
  ChartDomain domain_;
  Evaluator evaluator_;
};

SurfaceChart graph_chart(std::string name, BivariatePolynomial f, ChartDomain domain);

/// Taylor coefficients of the chart function at p.
Jet2d jet_eval(const SurfaceChart& chart, const Eigen::Vector2d& p, int order);

struct ImplicitSurface {
  TrivariatePolynomial F;
  double gradient_threshold = 1e-8;
  /// Point the surface is star-shaped about (used by the global atlas).
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
};

/// Orthonormal frame; the local graph is z along `normal` over the (e1, e2) plane.
struct Frame3 {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d e1 = Eigen::Vector3d::UnitX();
  Eigen::Vector3d e2 = Eigen::Vector3d::UnitY();
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();

  Eigen::Vector3d point(double x, double y, double z) const { return origin + x * e1 + y * e2 + z * normal; }
};

/// Height z with F(frame.point(x, y, z)) = 0, Newton from z_guess.
double solve_height(const ImplicitSurface& surf, const Frame3& frame, const Eigen::Vector2d& xy, double z_guess);

/// Jet at (x, y) of the height function z(x, y) defined by F = 0 in `frame`, given the solved height z.
Jet2d implicit_graph_jet(const ImplicitSurface& surf, const Frame3& frame, const Eigen::Vector2d& xy, double z,
                         int order);

struct MongeChart {
  Jet2d jet;
  Frame3 frame;
};

/// Local graph over the tangent plane at q; f(0,0) = f_x = f_y = 0.
/// e1_hint, when given, is projected to the tangent plane to fix the first axis.
MongeChart monge_chart(const ImplicitSurface& surf, const Eigen::Vector3d& q, int order,
                       const std::optional<Eigen::Vector3d>& e1_hint = std::nullopt);

/// Chart over the Monge frame at q, evaluated by solving for the height at each point.
SurfaceChart monge_surface_chart(const ImplicitSurface& surf, const Frame3& frame, double radius);

}  // namespace quadrapt
