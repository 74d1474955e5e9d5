#pragma once

#include <span>

#include "onestep/fokkerplanck.hpp"
#include "onestep/rates.hpp"

namespace onestep {

struct OUParameters {
  double z_star = 0.0;
  double q = 0.0;      // (A'(z*) - C'(z*)) / (A(z*) + C(z*)) < 0
  double scale = 0.0;  // 2NK / (A(z*) + C(z*)) = w(z*)
  int N = 0;
  double K = 0.0;
};

double curvature_q(const RateModel& model, double z_star);

OUParameters ou_parameters(const RateModel& model, int N, double K);

/// Gaussian approximation w(z) = scale * exp(N q (z - z*)^2). K must be
/// the normalisation constant of v for the same (model, N), so w(z*) = v(z*).
DensityProfile steady_state_w(const RateModel& model, int N, double K,
                              std::span<const double> grid);
DensityProfile steady_state_w(const OUParameters& ou,
                              std::span<const double> grid);

/// Alternative normalisation: w rescaled to mass 1/N on [0,1] (via erf).
/// Used for comparison output only.
DensityProfile steady_state_w_mass_normalized(const OUParameters& ou,
                                              std::span<const double> grid);

/// U(z) = sqrt(2/(pi N)) exp(-2N (z - 1/2)^2), the a = c linear case.
DensityProfile symmetric_linear_U(int N, std::span<const double> grid);

/// Normal approximation of the binomial pmf B_k(N, q).
double moivre_laplace(int N, double q, int k);

/// Exact binomial pmf, evaluated in log-space.
double binomial_pmf(int N, double q, int k);

/// Standard normal density.
double normal_pdf(double x);

}  // namespace onestep
