#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "quadrapt/localmodel.hpp"
#include "quadrapt/rational.hpp"

namespace quadrapt {

enum class SingularityKind { saddle, node, non_hyperbolic };

const char* kind_name(SingularityKind k);

struct BlowupSingularity {
  double t0 = 0;
  /// 1..3 for the web, 1 for the line field
  int branch = 1;
  SingularityKind kind = SingularityKind::non_hyperbolic;
  double dP = 0;
  double q = 0;
  /// position on the covering circle (length 6 pi for the web, 2 pi for the line field)
  double cover = 0;
  /// phi'(t0) by central differences of the continuous root angle
  double phi_prime = 0;
};

std::vector<BlowupSingularity> blowup_singularities(const CharPoly& cp);

/// |P'(t0) + 3 Q(t0) (1 + phi'(t0))| / (|P'(t0)| + |3 Q(t0) (1 + phi'(t0))|).
double blowup_identity_residual(const BlowupSingularity& s);

/// Sign of Q at a root of P from -sin^2 t (c + d tan t), checked against direct evaluation.
int sign_of_Q_at_root(const HyperbolicModel& m, double t0);

struct Bbox {
  double xmin = -1, ymin = -1, xmax = 1, ymax = 1;
  double diagonal() const;
  bool contains(const Eigen::Vector2d& p) const;
};

struct Polyline {
  int id = 0;
  int branch = 1;
  bool separatrix = false;
  std::vector<Eigen::Vector2d> points;
};

struct PhasePortrait {
  Region region = Region::elliptic;
  double a = 0, b = 0, c = 0, d = 0;
  std::vector<BlowupSingularity> singularities;
  std::vector<Polyline> leaves;
  /// indices into leaves
  std::vector<int> separatrices;
  Bbox bbox;
  int density = 0;
  std::vector<std::string> diagnostics;
};

/// Root directions in [0, pi) of the 1-jet model at a point off the origin.
std::vector<double> model_directions(Region region, double a, double b, double c, double d, const Eigen::Vector2d& p);

struct LeafOptions {
  double step = 0;       // 0: bbox diagonal / 2000
  int budget = 100000;
  double min_radius = 1e-6;
};

/// Leaf through seed, started along `dir` and extended both ways; reversing dir reverses the result.
std::vector<Eigen::Vector2d> trace_leaf(Region region, double a, double b, double c, double d,
                                        const Eigen::Vector2d& seed, const Eigen::Vector2d& dir, const Bbox& box,
                                        const LeafOptions& opt = {}, std::string* diagnostic = nullptr);

PhasePortrait integrate_portrait(const EllipticModel& m, const Bbox& box, int density);
PhasePortrait integrate_portrait(const HyperbolicModel& m, const Bbox& box, int density);

/// Index from the circular order of saddles and nodes on the covering circle.
Rational portrait_index(const PhasePortrait& p);

std::string portrait_csv(const PhasePortrait& p);
std::string portrait_svg(const PhasePortrait& p);

}  // namespace quadrapt
