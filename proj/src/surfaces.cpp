#include "quadrapt/surfaces.hpp"

#include <cmath>

namespace quadrapt {

namespace {

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& p, std::initializer_list<const char*> allowed,
                    const std::string& name) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw Error(Errc::invalid_parameter, "catalog entry " + name + " has no parameter " + k);
    if (!std::isfinite(v)) throw Error(Errc::invalid_parameter, "parameter " + k + " is not finite");
  }
}

CatalogEntry graph_named(const std::string& name, std::map<std::string, double> params, BivariatePolynomial f,
                         ChartDomain domain) {
  CatalogEntry e = graph_entry(std::move(f), domain);
  e.name = name;
  e.params = std::move(params);
  e.chart = graph_chart(name, *e.graph, domain);
  return e;
}

}  // namespace

double ProfileCurve::regularity(double t) const {
  const auto X = x(t), Y = y(t);
  return X[1] * Y[2] - X[2] * Y[1];
}

ProfileCurve rotation_profile(double lambda) {
  ProfileCurve c;
  c.x = [lambda](double t) {
    const double s = std::sin(t), co = std::cos(t), s2 = std::sin(2 * t), c2 = std::cos(2 * t);
    // cos t + (lambda / 2) sin 2t
    return std::array<double, 4>{co + 0.5 * lambda * s2, -s + lambda * c2, -co - 2 * lambda * s2,
                                 s - 4 * lambda * c2};
  };
  c.y = [](double t) {
    const double s = std::sin(t), co = std::cos(t);
    return std::array<double, 4>{s, co, -s, -co};
  };
  c.t0 = -M_PI / 2;
  c.t1 = M_PI / 2;
  return c;
}

double affine_reparam_condition(const ProfileCurve& c, double t) {
  const auto X = c.x(t), Y = c.y(t);
  const double D = X[1] * Y[2] - X[2] * Y[1];
  if (std::abs(D) < 1e-12) throw Error(Errc::degenerate_chart, "profile is not affinely regular here");
  if (std::abs(X[0]) < 1e-12) throw Error(Errc::domain, "axis point: use the pole analysis");
  const double Dt = X[1] * Y[3] - X[3] * Y[1];
  const double st = std::cbrt(D);
  const double stt = Dt / (3 * st * st);
  const double ypp = (Y[2] * st - Y[1] * stt) / (st * st * st);
  const double xp = X[1] / st, yp = Y[1] / st;
  return X[0] * ypp - xp * yp;
}

double rotation_identity_residual(double lambda, double t) {
  const ProfileCurve c = rotation_profile(lambda);
  const auto X = c.x(t), Y = c.y(t);
  const double D = X[1] * Y[2] - X[2] * Y[1];
  const double Dt = X[1] * Y[3] - X[3] * Y[1];
  const double s = std::sin(t), co = std::cos(t);
  return Dt * (1 + lambda * s) + 3 * lambda * co * D - 6 * lambda * co * co * co * (1 + 2 * lambda * s);
}

TrivariatePolynomial rotation_surface_polynomial(double lambda) {
  return TrivariatePolynomial({{2, 0, 0, 1},
                               {0, 2, 0, 1},
                               {0, 0, 4, lambda * lambda},
                               {0, 0, 3, 2 * lambda},
                               {0, 0, 2, 1 - lambda * lambda},
                               {0, 0, 1, -2 * lambda},
                               {0, 0, 0, -1}});
}

CatalogEntry implicit_entry(TrivariatePolynomial F, std::optional<int> chiM) {
  CatalogEntry e;
  e.name = "implicit";
  ImplicitSurface s;
  s.F = std::move(F);
  e.quadric = s.F.degree() <= 2;
  e.implicit = s;
  e.chiM = chiM;
  return e;
}

CatalogEntry graph_entry(BivariatePolynomial f, ChartDomain domain) {
  CatalogEntry e;
  e.name = "graph";
  e.quadric = f.degree() <= 2;
  e.chart = graph_chart("graph", f, domain);
  e.graph = std::move(f);
  return e;
}

std::vector<std::string> catalog_names() {
  return {"fold",        "gauss_cusp", "elliptic_normal", "hyperbolic_normal", "pick_def",        "pick_indef",
          "rotation",    "sphere",     "quadric",         "perturbed_sphere",  "hyperbolic_disc"};
}

CatalogEntry catalog(const std::string& name, const std::map<std::string, double>& p) {
  const ChartDomain square = ChartDomain::rectangle({-1, -1}, {1, 1});
  if (name == "fold") {
    reject_unknown(p, {}, name);
    return graph_named(name, p, BivariatePolynomial({{2, 0, 0.5}, {0, 3, 1.0 / 6}}), square);
  }
  if (name == "gauss_cusp") {
    reject_unknown(p, {"lambda", "lambda_cusp"}, name);
    const double l = param(p, "lambda_cusp", param(p, "lambda", 1.0));
    if (std::abs(l) < 1e-12 || std::abs(l - 3) < 1e-12)
      throw Error(Errc::invalid_parameter, "Gauss cusp modulus must differ from 0 and 3");
    return graph_named(name, {{"lambda_cusp", l}}, BivariatePolynomial({{2, 0, 0.5}, {1, 2, 0.5}, {0, 4, l / 24}}),
                       square);
  }
  if (name == "elliptic_normal") {
    reject_unknown(p, {"a40", "a31", "a22", "a13", "a04"}, name);
    const double a40 = param(p, "a40", 1), a31 = param(p, "a31", 0), a22 = param(p, "a22", 0),
                 a13 = param(p, "a13", 0), a04 = param(p, "a04", 1);
    CatalogEntry e = graph_named(name, {{"a40", a40}, {"a31", a31}, {"a22", a22}, {"a13", a13}, {"a04", a04}},
                                 BivariatePolynomial({{2, 0, 0.5},
                                                      {0, 2, 0.5},
                                                      {4, 0, a40 / 24},
                                                      {3, 1, a31 / 6},
                                                      {2, 2, a22 / 4},
                                                      {1, 3, a13 / 6},
                                                      {0, 4, a04 / 24}}),
                                 ChartDomain::disc({0, 0}, 0.5));
    e.region = "elliptic";
    return e;
  }
  if (name == "hyperbolic_normal") {
    reject_unknown(p, {"a", "b", "c", "d", "e"}, name);
    const double a = param(p, "a", 1), b = param(p, "b", 2), c = param(p, "c", -4), d = param(p, "d", 12),
                 ee = param(p, "e", 0);
    CatalogEntry e = graph_named(
        name, {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", ee}},
        BivariatePolynomial(
            {{1, 1, 1.0}, {4, 0, a / 24}, {3, 1, b / 6}, {2, 2, ee / 4}, {1, 3, c / 6}, {0, 4, d / 24}}),
        ChartDomain::disc({0, 0}, 0.5));
    e.region = "hyperbolic";
    return e;
  }
  if (name == "pick_def") {
    reject_unknown(p, {"c"}, name);
    const double c = param(p, "c", 1);
    return graph_named(name, {{"c", c}},
                       BivariatePolynomial({{2, 0, 0.5}, {0, 2, 0.5}, {3, 0, c / 6}, {1, 2, -c / 2}}), square);
  }
  if (name == "pick_indef") {
    reject_unknown(p, {"a", "b"}, name);
    const double a = param(p, "a", 1), b = param(p, "b", 1);
    return graph_named(name, {{"a", a}, {"b", b}},
                       BivariatePolynomial({{1, 1, 1.0}, {3, 0, a * a * a}, {0, 3, b * b * b}}), square);
  }
  if (name == "rotation") {
    reject_unknown(p, {"lambda", "lambda_rot"}, name);
    const double l = param(p, "lambda_rot", param(p, "lambda", 0.2));
    if (std::abs(l) >= 0.5) throw Error(Errc::invalid_parameter, "rotation bump parameter must satisfy |lambda| < 1/2");
    CatalogEntry e = implicit_entry(rotation_surface_polynomial(l), 2);
    e.name = name;
    e.params = {{"lambda_rot", l}};
    e.profile = rotation_profile(l);
    e.quadric = l == 0;
    e.chiE = 2;
    e.chiH = 0;
    e.known = {{{0, 0, 1}, Rational(1)}, {{0, 0, -1}, Rational(1)}};
    return e;
  }
  if (name == "sphere" || name == "quadric") {
    reject_unknown(p, {"a", "b", "c"}, name);
    const double a = param(p, "a", 1), b = param(p, "b", name == "sphere" ? 1 : 1.5),
                 c = param(p, "c", name == "sphere" ? 1 : 0.75);
    CatalogEntry e = implicit_entry(
        TrivariatePolynomial({{2, 0, 0, 1 / (a * a)}, {0, 2, 0, 1 / (b * b)}, {0, 0, 2, 1 / (c * c)}, {0, 0, 0, -1}}),
        2);
    e.name = name;
    e.params = {{"a", a}, {"b", b}, {"c", c}};
    e.chiE = 2;
    e.chiH = 0;
    return e;
  }
  if (name == "perturbed_sphere") {
    reject_unknown(p, {"epsilon", "offset"}, name);
    const double eps = param(p, "epsilon", 0.05), off = param(p, "offset", 0.6);
    if (eps < 0 || eps > 0.2) throw Error(Errc::invalid_parameter, "epsilon must lie in [0, 0.2]");
    CatalogEntry e = implicit_entry(TrivariatePolynomial({{2, 0, 0, 1},
                                                          {0, 2, 0, 1},
                                                          {0, 0, 2, 1},
                                                          {4, 0, 0, eps},
                                                          {0, 4, 0, eps},
                                                          {0, 0, 4, eps},
                                                          {0, 0, 0, -1 - eps * off}}),
                                    2);
    e.name = name;
    e.params = {{"epsilon", eps}, {"offset", off}};
    e.quadric = eps == 0;
    e.chiE = 2;
    e.chiH = 0;
    return e;
  }
  if (name == "hyperbolic_disc") {
    reject_unknown(p, {"k", "eps"}, name);
    const double k = param(p, "k", 1), eps = param(p, "eps", 0.1);
    if (k <= 0) throw Error(Errc::invalid_parameter, "k must be positive");
    CatalogEntry e = graph_named(name, {{"k", k}, {"eps", eps}},
                                 BivariatePolynomial({{1, 1, 1.0},
                                                      {4, 0, k},
                                                      {2, 2, 2 * k},
                                                      {0, 4, k},
                                                      {3, 1, eps},
                                                      {1, 3, -2 * eps},
                                                      {5, 0, eps},
                                                      {0, 5, -eps / 2}}),
                                 ChartDomain::disc({0, 0}, 0.9));
    e.region = "hyperbolic";
    e.chiH = 1;
    return e;
  }
  throw Error(Errc::unknown_name, "unknown catalog entry: " + name);
}

CubicFormValue fold_cubic_oracle(const Eigen::Vector2d& p) {
  CubicFormValue c;
  c.n111 = 0;
  c.n112 = -0.25;
  c.n122 = 0;
  c.n222 = 0.25 * p.y();
  c.hess = p.y();
  return c;
}

CubicFormValue cusp_cubic_oracle(const Eigen::Vector2d& p, double lambda) {
  const double x = p.x(), y = p.y();
  CubicFormValue c;
  c.n111 = -0.75;
  c.n112 = -0.25 * lambda * y;
  c.n122 = 0.25 * (3 * x - lambda * y * y / 2);
  c.n222 = 0.25 * y * (x * (6 + lambda) + lambda * (lambda - 2) * y * y / 2);
  c.hess = x + lambda * y * y / 2 - y * y;
  return c;
}

}  // namespace quadrapt
