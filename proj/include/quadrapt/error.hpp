#pragma once

#include <stdexcept>
#include <string>

namespace quadrapt {

enum class Errc {
  domain,
  degenerate_chart,
  off_surface,
  singular_point,
  normalization_required,
  not_quadratic_point,
  non_simple,
  boundary,
  near_singular,
  not_semi_homogeneous,
  unknown_name,
  invalid_parameter,
  unsupported,
  usage,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace quadrapt
