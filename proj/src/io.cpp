#include "quadrapt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace quadrapt {

namespace {

Json vec(const Eigen::Vector2d& v) { return Json::array({v.x(), v.y()}); }
Json vec(const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(Errc::usage, std::string("surface spec is missing \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::usage, std::string("surface spec field \"") + key + "\": " + e.what());
  }
}

void read_metadata(const Json& spec, CatalogEntry& e) {
  if (spec.contains("chiE")) e.chiE = field<int>(spec, "chiE");
  if (spec.contains("chiH")) e.chiH = field<int>(spec, "chiH");
  if (spec.contains("chiM")) e.chiM = field<int>(spec, "chiM");
  if (spec.contains("region")) {
    e.region = field<std::string>(spec, "region");
    parse_region(e.region);
  }
  if (spec.contains("name")) e.name = field<std::string>(spec, "name");
}

ChartDomain read_domain(const Json& spec) {
  if (!spec.contains("domain")) return ChartDomain::rectangle({-1, -1}, {1, 1});
  const Json& d = spec.at("domain");
  if (d.contains("disc")) {
    const auto v = d.at("disc").get<std::vector<double>>();
    if (v.size() != 3 || !(v[2] > 0)) throw Error(Errc::usage, "disc domain needs [cx, cy, r] with r > 0");
    return ChartDomain::disc({v[0], v[1]}, v[2]);
  }
  if (d.contains("rectangle")) {
    const auto v = d.at("rectangle").get<std::vector<double>>();
    if (v.size() != 4 || !(v[2] > v[0] && v[3] > v[1]))
      throw Error(Errc::usage, "rectangle domain needs [x0, y0, x1, y1] with positive area");
    return ChartDomain::rectangle({v[0], v[1]}, {v[2], v[3]});
  }
  throw Error(Errc::usage, "domain must be a disc or a rectangle");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

CatalogEntry parse_surface_spec(const Json& spec) {
  if (!spec.is_object()) throw Error(Errc::usage, "surface spec must be a JSON object");
  const std::string kind = field<std::string>(spec, "kind");
  if (kind == "catalog") {
    std::map<std::string, double> params;
    if (spec.contains("params")) params = field<std::map<std::string, double>>(spec, "params");
    return catalog(field<std::string>(spec, "name"), params);
  }
  if (kind == "graph") {
    std::vector<Term2> terms;
    for (const auto& t : field<std::vector<std::vector<double>>>(spec, "coeffs")) {
      if (t.size() != 3 || t[0] < 0 || t[1] < 0 || t[0] != std::floor(t[0]) || t[1] != std::floor(t[1]))
        throw Error(Errc::usage, "graph coefficient must be [i, j, c] with i, j non-negative integers");
      terms.push_back({int(t[0]), int(t[1]), t[2]});
    }
    CatalogEntry e = graph_entry(BivariatePolynomial(std::move(terms)), read_domain(spec));
    read_metadata(spec, e);
    return e;
  }
  if (kind == "implicit") {
    std::vector<Term3> terms;
    for (const auto& t : field<std::vector<std::vector<double>>>(spec, "terms")) {
      if (t.size() != 4) throw Error(Errc::usage, "implicit term must be [i, j, k, c]");
      for (int m = 0; m < 3; ++m)
        if (t[m] < 0 || t[m] != std::floor(t[m]))
          throw Error(Errc::usage, "implicit exponents must be non-negative integers");
      terms.push_back({int(t[0]), int(t[1]), int(t[2]), t[3]});
    }
    CatalogEntry e = implicit_entry(TrivariatePolynomial(std::move(terms)));
    if (spec.contains("center")) {
      const auto c = field<std::vector<double>>(spec, "center");
      if (c.size() != 3) throw Error(Errc::usage, "center must have three coordinates");
      e.implicit->center = {c[0], c[1], c[2]};
    }
    read_metadata(spec, e);
    return e;
  }
  throw Error(Errc::usage, "surface spec kind must be graph, implicit or catalog");
}

CatalogEntry load_surface_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::usage, "cannot open " + path);
  try {
    return parse_surface_spec(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::usage, path + ": " + e.what());
  }
}

Json to_json(const QuarticRoots& r) {
  Json j;
  j["count"] = r.count;
  Json roots = Json::array();
  for (size_t k = 0; k < r.angles.size(); ++k) {
    const double t = r.angles[k];
    Json x;
    x["angle"] = t;
    if (std::abs(std::cos(t)) > 1e-12) x["tan"] = std::tan(t);
    x["multiplicity"] = r.multiplicity[k];
    roots.push_back(x);
  }
  j["roots"] = roots;
  j["discriminant"] = r.discriminant;
  j["nearBoundary"] = r.near_boundary;
  return j;
}

Json to_json(const EllipticModel& m) {
  Json j;
  j["region"] = "elliptic";
  j["a"] = m.a;
  j["b"] = m.b;
  j["c"] = m.c;
  j["d"] = m.d;
  j["S"] = m.S;
  j["T"] = m.T;
  j["Delta"] = m.Delta;
  j["delta"] = m.delta;
  j["astroid"] = m.astroid;
  if (m.normalizable) j["normalized"] = {{"a", m.aNorm}, {"h", m.hNorm}};
  j["rootCountP"] = m.rootCountP;
  j["portrait"] = portrait_name(m.portrait);
  j["simple"] = m.simple;
  if (m.index) j["index"] = m.index->str();
  return j;
}

Json to_json(const HyperbolicModel& m) {
  Json j;
  j["region"] = "hyperbolic";
  j["a"] = m.a;
  j["b"] = m.b;
  j["c"] = m.c;
  j["d"] = m.d;
  j["e"] = m.e;
  j["case"] = case_name(m.caseLabel);
  j["parameterRegion"] = m.region;
  j["normalized"] = {{"a", m.an}, {"b", m.bn}, {"c", m.cn}, {"d", m.dn}};
  j["S"] = m.S;
  j["T"] = m.T;
  j["Delta"] = m.Delta;
  j["delta"] = m.delta;
  j["rootCountP"] = m.rootCountP;
  j["simple"] = m.simple;
  if (m.index) j["index"] = *m.index;
  return j;
}

Json to_json(const BlowupSingularity& s) {
  Json j;
  j["t0"] = s.t0;
  j["branch"] = s.branch;
  j["kind"] = kind_name(s.kind);
  j["dP"] = s.dP;
  j["Q"] = s.q;
  j["cover"] = s.cover;
  j["phiPrime"] = s.phi_prime;
  j["identityResidual"] = blowup_identity_residual(s);
  return j;
}

Json to_json(const QuadraticPointReport& p) {
  Json j;
  j["chart"] = p.chart;
  j["planar"] = vec(p.planar);
  j["location"] = vec(p.location);
  j["region"] = region_name(p.region);
  j["label"] = p.label;
  j["simple"] = p.simple;
  j["index"] = p.index.str();
  if (p.modelIndex) j["modelIndex"] = p.modelIndex->str();
  if (p.elliptic) j["localModel"] = to_json(*p.elliptic);
  if (p.hyperbolic) j["localModel"] = to_json(*p.hyperbolic);
  j["loopRadius"] = p.loopRadius;
  j["residual"] = p.residual;
  j["iterations"] = p.iterations;
  return j;
}

Json to_json(const GlobalReport& g) {
  Json j;
  j["schemaVersion"] = kSchemaVersion;
  j["surface"] = g.surface;
  j["gridDensity"] = g.gridDensity;
  j["totallyQuadratic"] = g.search.totallyQuadratic;
  j["samples"] = g.search.samples;
  j["seeds"] = g.search.seeds;
  Json pts = Json::array();
  for (const auto& p : g.search.points) pts.push_back(to_json(p));
  j["points"] = pts;
  Json un = Json::array();
  for (const auto& u : g.search.unconverged)
    un.push_back({{"chart", u.chart}, {"location", vec(u.location)}, {"residual", u.residual}});
  j["unconverged"] = un;
  Json par = Json::array();
  for (const auto& p : g.search.nearParabolic) par.push_back(to_json(p));
  j["nearParabolic"] = par;
  Json out = Json::array();
  for (const auto& p : g.search.outsideRegion) out.push_back(to_json(p));
  j["outsideRegion"] = out;
  j["countE"] = g.countE;
  j["countH"] = g.countH;
  j["sumE"] = g.sumE.str();
  j["sumH"] = g.sumH.str();
  auto opt_int = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  auto opt_rat = [](const std::optional<Rational>& v) { return v ? Json(v->str()) : Json(nullptr); };
  j["chiE"] = opt_int(g.chiE);
  j["chiH"] = opt_int(g.chiH);
  j["chiM"] = opt_int(g.chiM);
  j["residualE"] = opt_rat(g.residualE);
  j["residualH"] = opt_rat(g.residualH);
  j["residualM"] = opt_rat(g.residualM);
  j["parityOk"] = g.parityOk;
  j["countBoundOk"] = g.countBoundOk;
  j["inconclusive"] = g.inconclusive;
  j["pass"] = g.pass;
  j["warnings"] = g.search.warnings;
  return j;
}

Json to_json(const LoewnerReport& r) {
  Json j;
  j["schemaVersion"] = kSchemaVersion;
  j["trials"] = r.trials;
  j["accepted"] = r.accepted;
  j["rejected"] = r.rejected;
  j["violations"] = r.violations;
  j["seed"] = r.seed;
  j["maxDegree"] = r.maxDegree;
  Json h = Json::object();
  for (const auto& [k, v] : r.histogram) h[k.str()] = v;
  j["histogram"] = h;
  return j;
}

Json classification_json(Region region, double a, double b, double c, double d, double e,
                         const ModelTolerances& tol) {
  Json j;
  j["schemaVersion"] = kSchemaVersion;
  if (region == Region::elliptic) {
    const EllipticModel m = make_elliptic(a, b, c, d, tol);
    if (!m.simple) throw Error(Errc::non_simple, "delta = ad - bc vanishes: the singularity is not simple");
    const EllipticClass k = classify(m, tol);
    const EllipticIndex w = elliptic_index_detail(m);
    j["model"] = to_json(m);
    j["roots"] = to_json(quartic_real_roots(char_polys(m).P));
    j["portrait"] = portrait_name(k.portrait);
    j["index"] = w.index.str();
    j["tableIndex"] = k.index.str();
    j["degAB"] = w.degAB;
    j["degPQ"] = w.degPQ;
  } else {
    const HyperbolicModel m = make_hyperbolic(a, b, c, d, e, tol);
    if (!m.simple) throw Error(Errc::non_simple, "delta = ad - bc vanishes: the singularity is not simple");
    const HyperbolicClass k = classify(m, tol);
    j["model"] = to_json(m);
    j["roots"] = to_json(quartic_real_roots(char_polys(m).P));
    j["portrait"] = std::string(case_name(k.caseLabel)) + " " + k.region;
    j["index"] = hyperbolic_index(m);
    j["tableIndex"] = k.index;
  }
  return j;
}

Json portrait_summary_json(const PhasePortrait& p) {
  Json j;
  j["schemaVersion"] = kSchemaVersion;
  j["region"] = region_name(p.region);
  j["abcd"] = {p.a, p.b, p.c, p.d};
  j["bbox"] = {p.bbox.xmin, p.bbox.ymin, p.bbox.xmax, p.bbox.ymax};
  j["density"] = p.density;
  int saddles = 0, nodes = 0;
  Json s = Json::array();
  for (const auto& x : p.singularities) {
    s.push_back(to_json(x));
    saddles += x.kind == SingularityKind::saddle;
    nodes += x.kind == SingularityKind::node;
  }
  j["singularities"] = s;
  j["saddles"] = saddles;
  j["nodes"] = nodes;
  j["leaves"] = p.leaves.size();
  j["separatrices"] = p.separatrices.size();
  j["portraitIndex"] = portrait_index(p).str();
  j["diagnostics"] = p.diagnostics;
  return j;
}

std::string global_summary_table(const GlobalReport& g) {
  std::ostringstream os;
  char buf[200];
  os << "surface " << g.surface << ", grid " << g.gridDensity << "\n";
  if (g.search.totallyQuadratic) {
    os << "totally quadratic: the cubic form vanishes identically\n";
    return os.str();
  }
  std::snprintf(buf, sizeof buf, "%-8s %-11s %-11s %-11s %-10s %-14s %-6s %-9s\n", "chart", "x", "y", "z", "region",
                "label", "index", "residual");
  os << buf;
  for (const auto& p : g.search.points) {
    std::snprintf(buf, sizeof buf, "%-8s %-11s %-11s %-11s %-10s %-14s %-6s %-9.2e\n", p.chart.c_str(),
                  fmt(p.location.x()).c_str(), fmt(p.location.y()).c_str(), fmt(p.location.z()).c_str(),
                  region_name(p.region), p.label.c_str(), p.index.str().c_str(), p.residual);
    os << buf;
  }
  os << "points " << g.search.points.size() << " (E " << g.countE << ", H " << g.countH << ")";
  os << "  sumE " << g.sumE << "  sumH " << g.sumH;
  if (g.chiM) os << "  chi(M) " << *g.chiM;
  if (g.chiE) os << "  chi(E) " << *g.chiE;
  if (g.chiH) os << "  chi(H) " << *g.chiH;
  os << "\n";
  if (!g.search.unconverged.empty()) os << "unconverged candidates: " << g.search.unconverged.size() << "\n";
  if (!g.search.nearParabolic.empty()) os << "near-parabolic points excluded: " << g.search.nearParabolic.size() << "\n";
  if (!g.search.outsideRegion.empty()) os << "points outside the region: " << g.search.outsideRegion.size() << "\n";
  os << (g.pass ? "PASS" : g.inconclusive ? "INCONCLUSIVE" : "FAIL") << "\n";
  return os.str();
}

}  // namespace quadrapt
