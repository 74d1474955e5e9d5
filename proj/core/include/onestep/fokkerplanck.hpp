#pragma once

#include <span>
#include <vector>

#include "onestep/master.hpp"
#include "onestep/rates.hpp"

namespace onestep {

/// Density sampled on an ascending grid in [0,1], stored in log-space first.
struct DensityProfile {
  std::vector<double> grid;
  std::vector<double> log_values;
  std::vector<double> values;
  double K = 0.0;
  double z_star = 0.0;
  int N = 0;

  std::size_t argmax() const;
};

/// Grid z_j = j / (refine * N), j = 0..refine*N. refine = 1 gives z = k/N.
std::vector<double> lattice_grid(int N, int refine = 1);

/// Reflecting-boundary locations of the continuum problem, -1/2N and
/// 1 + 1/2N. Informational only: all integrals here run over [0,1].
inline double left_boundary(int N) { return -0.5 / N; }
inline double right_boundary(int N) { return 1.0 + 0.5 / N; }

inline constexpr double kBTolerance = 1e-12;
inline constexpr int kBReferencePoints = 2049;

/// B(z) = 2 * integral_{z*}^{z} (A-C)/(A+C), by direct adaptive Simpson.
double compute_B(const RateModel& model, double z_star, double z);

/// B with its antiderivative cached on Chebyshev-like reference points
/// (plus z* itself). Evaluation integrates only from the nearest node.
/// Immutable after construction, safe to share across threads.
class BFunction {
 public:
  BFunction(const RateModel& model, double z_star,
            int reference_points = kBReferencePoints);

  double operator()(double z) const;
  double z_star() const noexcept { return z_star_; }
  const RateModel& model() const noexcept { return model_; }

 private:
  double integrand(double x) const;

  RateModel model_;
  double z_star_;
  std::vector<double> nodes_;
  std::vector<double> cumulative_;
};

/// K such that the stationary density has mass 1/N on [0,1]:
///   K = (1/N) / integral_0^1 2N/(A+C) exp(N B).
double normalization_K(const BFunction& B, int N);
double normalization_K(const RateModel& model, int N, double z_star);

/// log v = ln(2NK) - ln(A+C) + N B. Throws AssumptionViolation if the model
/// fails validate_assumptions.
DensityProfile steady_state_v(const RateModel& model, int N,
                              std::span<const double> grid);
DensityProfile steady_state_v(const BFunction& B, int N, double K,
                              std::span<const double> grid);

/// Closed form for A = a(1-z), C = cz with a != c. The exponent is the
/// explicit primitive anchored at z*, and K is found by integrating that
/// closed form over [0,1], independently of the B quadrature.
DensityProfile linear_closed_form_v(double a, double c, int N,
                                    std::span<const double> grid);

/// Exponent H(z) of the linear closed form (vanishes at z*).
double linear_closed_form_H(double a, double c, int N, double z);

/// Second-order finite-difference discretisation of the Fokker-Planck
/// operator with g_k = (a_k+c_k)/(2N^2), h_k = (a_k-c_k)/N. Boundary rows
/// are taken from the master equation.
Generator fp_discretization_matrix(const DiscreteChain& chain);

}  // namespace onestep
