#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "onestep/fokkerplanck.hpp"
#include "onestep/rates.hpp"

namespace onestep {

/// Per-N metric plus a least-squares fit of log(metric) against log(N).
/// For k_scaling the `errors` column holds K(N).
struct ConvergenceReport {
  std::vector<int> Ns;
  std::vector<double> errors;
  double fitted_slope = 0.0;
  double fitted_intercept = 0.0;
  double r_squared = 0.0;
  bool exact_case = false;  // no fit performed
};

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
};

/// Ordinary least squares y = slope x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// max_i |f_i - g_i|; throws InvalidInput if the grids differ.
double sup_error(const DensityProfile& f, const DensityProfile& g);

struct SweepOptions {
  int refine = 1;   // evaluation grid z = j / (refine N)
  int threads = 1;  // per-N pipelines run concurrently up to this count
};

/// Relative level below which sup|v - w| counts as an exact coincidence.
inline constexpr double kExactCaseRelTol = 1e-9;

ConvergenceReport empirical_order(const RateModel& model,
                                  std::span<const int> Ns,
                                  const SweepOptions& options = {});

ConvergenceReport k_scaling(const RateModel& model, std::span<const int> Ns,
                            const SweepOptions& options = {});

/// N_i = n_min * factor^i while N_i <= n_max.
std::vector<int> geometric_sweep(int n_min, int n_max, int factor);

struct ExpInequalityCheck {
  bool holds = true;
  std::int64_t checked = 0;
  std::optional<double> counterexample;
};

/// |1 - e^y| <= 2|y| for y uniform in [-1,1] plus the points -1, 0, 1.
ExpInequalityCheck check_exp_inequality(std::int64_t samples,
                                        std::uint64_t seed);

struct QuadraticBounds {
  double r;  // min of B(z)/(z-z*)^2
  double R;  // max of B(z)/(z-z*)^2
  double q;
};

/// Samples B(z)/(z-z*)^2 on a uniform grid, skipping |z - z*| < 1e-6, and
/// includes the limit value q. Throws AssumptionViolation if R >= 0.
QuadraticBounds check_rR_bounds(const RateModel& model, int grid_size);

struct MasterComparison {
  double sup_pv;
  double sup_pw;
};

/// Exact stationary p_k against v(k/N) and w(k/N).
MasterComparison compare_to_master(const RateModel& model, int N);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace onestep
