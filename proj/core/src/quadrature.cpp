#include "onestep/quadrature.hpp"

#include "onestep/error.hpp"

namespace onestep {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::ModelViolation: return "model-violation";
    case ErrorKind::ReducibleChain: return "reducible-chain";
    case ErrorKind::AssumptionViolation: return "assumption-violation";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Stability: return "stability";
  }
  return "unknown";
}

namespace quad {

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::InvalidInput, "trapezoid: size mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  }
  return sum;
}

}  // namespace quad
}  // namespace onestep
