#include "dgl/error.hpp"

namespace dgl {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::no_sign_change: return "NoSignChange";
    case Errc::max_iterations: return "MaxIterations";
    case Errc::unsupported_range: return "UnsupportedRange";
    case Errc::convergence_failure: return "ConvergenceFailure";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::bracket_failure: return "BracketFailure";
    case Errc::bound_violated: return "BoundViolated";
    case Errc::grid_mismatch: return "GridMismatch";
    case Errc::not_stationary: return "NotStationary";
    case Errc::unknown_figure: return "UnknownFigure";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace dgl
