#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dgl {

/// Failure categories raised by the numerical routines.
enum class Errc {
  no_sign_change,
  max_iterations,
  unsupported_range,
  convergence_failure,
  length_mismatch,
  bracket_failure,
  bound_violated,
  grid_mismatch,
  not_stationary,
  unknown_figure,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dgl
