#include "quadrapt/error.hpp"

namespace quadrapt {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::domain: return "domain";
    case Errc::degenerate_chart: return "degenerate-chart";
    case Errc::off_surface: return "off-surface";
    case Errc::singular_point: return "singular-point";
    case Errc::normalization_required: return "normalization-required";
    case Errc::not_quadratic_point: return "not-a-quadratic-point";
    case Errc::non_simple: return "non-simple";
    case Errc::boundary: return "boundary";
    case Errc::near_singular: return "near-singular";
    case Errc::not_semi_homogeneous: return "not-semi-homogeneous";
    case Errc::unknown_name: return "unknown-name";
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::unsupported: return "unsupported";
    case Errc::usage: return "usage";
  }
  return "error";
}

}  // namespace quadrapt
