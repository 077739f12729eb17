#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "quadrapt/localmodel.hpp"
#include "quadrapt/rational.hpp"
#include "quadrapt/surfaces.hpp"

namespace quadrapt {

struct QuadraticPointReport {
  /// "graph" or "face+x", "face-y", ... for the cube-sphere atlas of an implicit surface
  std::string chart;
  Eigen::Vector2d planar = Eigen::Vector2d::Zero();
  Eigen::Vector3d location = Eigen::Vector3d::Zero();
  Region region = Region::elliptic;
  std::optional<EllipticModel> elliptic;
  std::optional<HyperbolicModel> hyperbolic;
  /// D1/D2/D3, the hyperbolic region label, or "non-simple"
  std::string label;
  bool simple = false;
  /// from the winding of the cubic form around a small loop
  Rational index;
  /// from the local model, when simple
  std::optional<Rational> modelIndex;
  double loopRadius = 0;
  /// scale-normalized max numerator component
  double residual = 0;
  int iterations = 0;
};

struct UnconvergedCandidate {
  std::string chart;
  Eigen::Vector3d location = Eigen::Vector3d::Zero();
  double residual = 0;
};

struct SearchOptions {
  /// samples per chart side
  int gridDensity = 64;
  /// seeds are grid minima below seedRatio * median of the normalized norm
  double seedRatio = 0.5;
  double acceptResidual = 1e-10;
  /// a stalled candidate below this level is reported as unconverged; above it the seed is dropped
  double stallResidual = 1e-6;
  /// |det H| / |H|^2 below this counts as parabolic
  double parabolic = 1e-6;
  double mergeRadius = 1e-6;
  /// every sample below this means the cubic form vanishes identically
  double totallyQuadratic = 1e-9;
  int maxIterations = 60;
};

struct SearchResult {
  std::vector<QuadraticPointReport> points;
  std::vector<UnconvergedCandidate> unconverged;
  /// converged points dropped for sitting on the parabolic curve or outside the requested region
  std::vector<QuadraticPointReport> nearParabolic;
  std::vector<QuadraticPointReport> outsideRegion;
  bool totallyQuadratic = false;
  int samples = 0;
  int seeds = 0;
  std::vector<std::string> warnings;
};

SearchResult find_quadratic_points(const CatalogEntry& entry, const SearchOptions& opt = {});

struct GlobalReport {
  std::string surface;
  int gridDensity = 0;
  SearchResult search;
  Rational sumE, sumH;
  int countE = 0, countH = 0;
  std::optional<int> chiE, chiH, chiM;
  std::optional<Rational> residualE, residualH, residualM;
  /// odd count whenever chi(H) is odd and every hyperbolic index is +-1
  bool parityOk = true;
  /// at least 6 elliptic points whenever every elliptic index is +-1/3 and sumE = 2
  bool countBoundOk = true;
  bool inconclusive = false;
  bool pass = false;
};

GlobalReport poincare_hopf_check(const CatalogEntry& entry, const SearchOptions& opt = {});

/// Same points (within tol, index included) in both reports.
bool same_point_set(const SearchResult& a, const SearchResult& b, double tol = 1e-6);

}  // namespace quadrapt
