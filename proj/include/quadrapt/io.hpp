#pragma once

#include <string>

#include <json.hpp>

#include "quadrapt/blowup.hpp"
#include "quadrapt/global.hpp"
#include "quadrapt/index.hpp"
#include "quadrapt/localmodel.hpp"
#include "quadrapt/surfaces.hpp"

namespace quadrapt {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"kind":"graph","coeffs":[[i,j,c],...]}, {"kind":"implicit","terms":[[i,j,k,c],...]}
/// or {"kind":"catalog","name":...,"params":{...}}.
/// Graph specs take "domain": {"disc":[cx,cy,r]} or {"rectangle":[x0,y0,x1,y1]};
/// optional "chiE", "chiH", "chiM", "region", and "center" for implicit specs.
CatalogEntry parse_surface_spec(const Json& spec);
CatalogEntry load_surface_spec(const std::string& path);

Json to_json(const EllipticModel& m);
Json to_json(const HyperbolicModel& m);
Json to_json(const QuarticRoots& r);
Json to_json(const BlowupSingularity& s);
Json to_json(const QuadraticPointReport& p);
Json to_json(const GlobalReport& g);
Json to_json(const LoewnerReport& r);

/// Model, discriminants, roots of P, portrait label and index for (a, b, c, d).
Json classification_json(Region region, double a, double b, double c, double d, double e = 0,
                         const ModelTolerances& tol = {});

/// Singularities, counts and index of a portrait (polylines go to CSV/SVG).
Json portrait_summary_json(const PhasePortrait& p);

/// Fixed-width table for the terminal.
std::string global_summary_table(const GlobalReport& g);

}  // namespace quadrapt
