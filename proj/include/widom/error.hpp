#pragma once

#include <stdexcept>
#include <string>

namespace widom {

enum class ErrorCode {
  invalid_argument,
  point_on_arc,
  infinity_pole,
  outside_image,
  outside_arc,
  singular_node,
  quadrature_failure,
  size_too_small,
  degenerate_normalization,
  wrong_normalization,
  lp_failure,
  empty_extremal_set,
  u0_outside_disk,
  ill_conditioned_fit,
  no_convergence,
};

const char* to_string(ErrorCode code);

/// Domain error raised by every module; the code identifies the failed contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace widom
