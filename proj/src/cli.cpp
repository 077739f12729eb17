#include "quadrapt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "quadrapt/acceptance.hpp"
#include "quadrapt/io.hpp"

namespace quadrapt {

namespace {

std::vector<double> parse_numbers(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find('/') != std::string::npos) {
      out.push_back(parse_rational(item).value());
      continue;
    }
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw Error(Errc::usage, std::string(what) + ": not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::usage, "cannot write " + path);
  f << text;
}

int exit_for(Errc c) {
  switch (c) {
    case Errc::near_singular:
    case Errc::degenerate_chart:
    case Errc::singular_point:
    case Errc::unsupported:
      return exit_numerical;
    default:
      return exit_usage;
  }
}

struct Surface {
  std::string catalogName, spec;
  std::optional<double> lambda;
  std::vector<std::string> params;
};

CatalogEntry load_surface(const Surface& s) {
  if (s.catalogName.empty() == s.spec.empty()) throw Error(Errc::usage, "give exactly one of --catalog and --spec");
  if (!s.spec.empty()) {
    if (s.lambda || !s.params.empty()) throw Error(Errc::usage, "--lambda and --param apply to --catalog only");
    return load_surface_spec(s.spec);
  }
  std::map<std::string, double> p;
  for (const auto& kv : s.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(Errc::usage, "--param expects key=value, got " + kv);
    p[kv.substr(0, eq)] = parse_numbers(kv.substr(eq + 1), "--param").at(0);
  }
  if (s.lambda) {
    if (s.catalogName == "rotation")
      p["lambda_rot"] = *s.lambda;
    else if (s.catalogName == "gauss_cusp")
      p["lambda_cusp"] = *s.lambda;
    else
      throw Error(Errc::usage, "--lambda applies to the rotation and gauss_cusp entries");
  }
  return catalog(s.catalogName, p);
}

void add_surface_options(CLI::App* app, Surface& s) {
  app->add_option("--catalog", s.catalogName, "catalog entry name");
  app->add_option("--spec", s.spec, "JSON surface spec file");
  app->add_option("--lambda", s.lambda, "lambda_rot (rotation) or lambda_cusp (gauss_cusp)");
  app->add_option("--param", s.params, "catalog parameter key=value (repeatable)");
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << text;
  else
    write_text(out_path, text);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic points of surfaces: local models, indices, blow-up portraits, global index sums",
               "quadrapt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string region, abcd, out_path, format = "json", bbox = "-1,-1,1,1", only;
  double tol = 0;
  int grid = 64, density = 12, trials = 500, max_degree = 8, order = 4;
  std::uint64_t seed = 20240611;
  std::string point;
  Surface surface;

  auto* classify_cmd = app.add_subcommand("classify", "classify a simple quadratic point from its (a,b,c,d)");
  classify_cmd->add_option("--region", region, "elliptic or hyperbolic")->required();
  classify_cmd->add_option("--abcd", abcd, "a,b,c,d (hyperbolic: optional fifth value e); p/q allowed")->required();
  classify_cmd->add_option("--tol", tol, "relative boundary tolerance");
  classify_cmd->add_option("--out", out_path, "output file (default stdout)");
  classify_cmd->add_option("--format", format)->check(CLI::IsMember({"json"}));

  auto* portrait_cmd = app.add_subcommand("portrait", "integrate the web or line field of a local model");
  portrait_cmd->add_option("--region", region, "elliptic or hyperbolic")->required();
  portrait_cmd->add_option("--abcd", abcd, "a,b,c,d")->required();
  portrait_cmd->add_option("--bbox", bbox, "xmin,ymin,xmax,ymax");
  portrait_cmd->add_option("--density", density, "seed grid per side");
  portrait_cmd->add_option("--out", out_path, "output prefix: writes PREFIX.svg and PREFIX.csv");
  portrait_cmd->add_option("--format", format, "stdout format without --out")
      ->check(CLI::IsMember({"json", "csv", "svg"}));

  auto* global_cmd = app.add_subcommand("global", "find quadratic points and check the index sums");
  add_surface_options(global_cmd, surface);
  global_cmd->add_option("--grid", grid, "samples per chart side");
  global_cmd->add_option("--tol", tol, "acceptance residual for Newton refinement");
  global_cmd->add_option("--out", out_path, "JSON report file");
  global_cmd->add_option("--format", format, "table (default) or json on stdout")
      ->check(CLI::IsMember({"json", "table"}));

  auto* jet_cmd = app.add_subcommand("jet", "jet, cubic form and directions at a point");
  add_surface_options(jet_cmd, surface);
  jet_cmd->add_option("--point", point, "x,y for graphs, x,y,z for implicit surfaces")->required();
  jet_cmd->add_option("--order", order, "jet order (>= 4)");
  jet_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* loewner_cmd = app.add_subcommand("loewner", "index bound on random semi-homogeneous forms");
  loewner_cmd->add_option("--trials", trials);
  loewner_cmd->add_option("--max-degree", max_degree);
  loewner_cmd->add_option("--seed", seed);
  loewner_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--only", only, "comma-separated criterion numbers");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (tol < 0 || (tol == 0 && (classify_cmd->count("--tol") || global_cmd->count("--tol"))))
      throw Error(Errc::usage, "--tol must be positive");

    if (*classify_cmd) {
      const Region r = parse_region(region);
      const auto v = parse_numbers(abcd, "--abcd");
      if (v.size() != 4 && !(r == Region::hyperbolic && v.size() == 5))
        throw Error(Errc::usage, "--abcd needs four values (five with e for hyperbolic)");
      ModelTolerances mt;
      if (tol > 0) mt.boundary = tol;
      const Json j = classification_json(r, v[0], v[1], v[2], v[3], v.size() == 5 ? v[4] : 0, mt);
      emit(j.dump(2) + "\n", out_path, out);
      return exit_ok;
    }

    if (*portrait_cmd) {
      const Region r = parse_region(region);
      const auto v = parse_numbers(abcd, "--abcd");
      if (v.size() != 4) throw Error(Errc::usage, "--abcd needs four values");
      const auto b = parse_numbers(bbox, "--bbox");
      if (b.size() != 4) throw Error(Errc::usage, "--bbox needs xmin,ymin,xmax,ymax");
      const Bbox box{b[0], b[1], b[2], b[3]};
      PhasePortrait p;
      if (r == Region::elliptic) {
        const EllipticModel m = make_elliptic(v[0], v[1], v[2], v[3]);
        if (!m.simple) throw Error(Errc::non_simple, "delta = ad - bc vanishes: the singularity is not simple");
        p = integrate_portrait(m, box, density);
      } else {
        const HyperbolicModel m = make_hyperbolic(v[0], v[1], v[2], v[3]);
        if (!m.simple) throw Error(Errc::non_simple, "delta = ad - bc vanishes: the singularity is not simple");
        p = integrate_portrait(m, box, density);
      }
      if (!out_path.empty()) {
        write_text(out_path + ".svg", portrait_svg(p));
        write_text(out_path + ".csv", portrait_csv(p));
        out << portrait_summary_json(p).dump(2) << "\n";
      } else if (format == "svg") {
        out << portrait_svg(p);
      } else if (format == "csv") {
        out << portrait_csv(p);
      } else {
        out << portrait_summary_json(p).dump(2) << "\n";
      }
      return exit_ok;
    }

    if (*global_cmd) {
      const CatalogEntry e = load_surface(surface);
      SearchOptions opt;
      if (grid < 8) throw Error(Errc::usage, "--grid must be at least 8");
      opt.gridDensity = grid;
      if (tol > 0) opt.acceptResidual = tol;
      const GlobalReport g = poincare_hopf_check(e, opt);
      const Json j = to_json(g);
      if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
      if (global_cmd->count("--format") && format == "json" && out_path.empty())
        out << j.dump(2) << "\n";
      else
        out << global_summary_table(g);
      if (g.search.totallyQuadratic) return exit_ok;
      if (g.inconclusive) return exit_numerical;
      const bool checked = g.residualE || g.residualH || g.residualM;
      return !checked || g.pass ? exit_ok : exit_acceptance;
    }

    if (*jet_cmd) {
      if (order < 4) throw Error(Errc::usage, "--order must be at least 4");
      const CatalogEntry e = load_surface(surface);
      const auto p = parse_numbers(point, "--point");
      Json j;
      j["schemaVersion"] = kSchemaVersion;
      j["surface"] = e.name;
      Jet2d jet;
      if (e.chart) {
        if (p.size() != 2) throw Error(Errc::usage, "--point needs x,y for a graph surface");
        jet = jet_eval(*e.chart, {p[0], p[1]}, order);
      } else {
        if (p.size() != 3) throw Error(Errc::usage, "--point needs x,y,z for an implicit surface");
        const MongeChart mc = monge_chart(*e.implicit, {p[0], p[1], p[2]}, order);
        jet = mc.jet;
        j["frame"] = {{"origin", {mc.frame.origin.x(), mc.frame.origin.y(), mc.frame.origin.z()}},
                      {"e1", {mc.frame.e1.x(), mc.frame.e1.y(), mc.frame.e1.z()}},
                      {"e2", {mc.frame.e2.x(), mc.frame.e2.y(), mc.frame.e2.z()}},
                      {"normal", {mc.frame.normal.x(), mc.frame.normal.y(), mc.frame.normal.z()}}};
      }
      j["order"] = jet.order();
      Json coeffs = Json::array();
      for (int d = 0; d <= jet.order(); ++d)
        for (int k = 0; k <= d; ++k) coeffs.push_back({d - k, k, jet.coeff(d - k, k)});
      j["coeffs"] = coeffs;
      const CubicFormValue c = cubic_components(jet);
      j["cubicForm"] = {{"n111", c.n111}, {"n112", c.n112}, {"n122", c.n122}, {"n222", c.n222}, {"hess", c.hess}};
      j["quadratic"] = is_singular(c);
      if (!is_singular(c)) {
        const DirectionSet d = bcde_directions(c);
        j["directions"] = {{"kind", direction_kind_name(d.kind)}, {"angles", d.angles}};
      }
      emit(j.dump(2) + "\n", out_path, out);
      return exit_ok;
    }

    if (*loewner_cmd) {
      const LoewnerReport r = loewner_check(trials, max_degree, seed);
      emit(to_json(r).dump(2) + "\n", out_path, out);
      return r.violations == 0 ? exit_ok : exit_acceptance;
    }

    if (*verify_cmd) {
      AcceptanceOptions opt;
      opt.seed = seed;
      if (!only.empty())
        for (double v : parse_numbers(only, "--only")) opt.only.push_back(int(v));
      const auto results = run_acceptance(opt);
      out << acceptance_table(results);
      const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
      out << (ok ? "all criteria passed\n" : "acceptance FAILED\n");
      return ok ? exit_ok : exit_acceptance;
    }
  } catch (const Error& e) {
    err << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_numerical;
  }
  return exit_usage;
}

}  // namespace quadrapt
