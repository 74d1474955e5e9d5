#pragma once

#include <functional>
#include <span>
#include <vector>

#include "onestep/rates.hpp"

namespace onestep {

/// Tridiagonal master-equation generator acting on (p_0, ..., p_N):
///   (G p)_k = sub[k] p_{k-1} + diag[k] p_k + sup[k] p_{k+1}
/// with sub[0] = 0 and sup[N] = 0.
struct Generator {
  int N = 0;
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> sup;

  void apply(std::span<const double> p, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> p) const;
  std::vector<double> column_sums() const;
};

Generator generator_matrix(const DiscreteChain& chain);

/// Probability vector over states 0..N.
struct Distribution {
  std::vector<double> p;

  int N() const noexcept { return static_cast<int>(p.size()) - 1; }

  static Distribution point_mass(int N, int k);
  /// Throws InvalidInput unless entries are nonnegative and sum to 1 (1e-12).
  void validate() const;
};

/// Exact stationary state from detailed balance, accumulated in log-space.
Distribution stationary_distribution(const DiscreteChain& chain);

double first_moment(const Distribution& dist);

struct MasterRunStats {
  int steps = 0;
  double step = 0.0;
  /// Sum over steps of |1 - sum p| before renormalisation, divided by t_end.
  double mass_drift_per_unit_time = 0.0;
  /// Most negative raw entry seen before clamping (0 if none).
  double min_raw_value = 0.0;
};

using MasterObserver = std::function<void(double t, const Distribution&)>;

/// Largest step accepted by integrate_master: 0.5 / max_k (a_k + c_k).
double master_stability_limit(const DiscreteChain& chain);

/// Classical RK4 on the master equation. Uses ceil(t_end / dt) equal steps
/// so the final state sits exactly at t_end. The observer sees t = 0 and
/// every step. Throws ErrorKind::Stability if dt exceeds the stability limit.
MasterRunStats integrate_master(const DiscreteChain& chain,
                                const Distribution& p0, double t_end,
                                double dt, const MasterObserver& observer);

struct MasterTrajectory {
  std::vector<double> times;
  std::vector<Distribution> states;
  MasterRunStats stats;
};

/// Convenience wrapper storing every sample_every-th state (plus the last).
MasterTrajectory integrate_master(const DiscreteChain& chain,
                                  const Distribution& p0, double t_end,
                                  double dt, int sample_every = 1);

/// Number of equal RK4 steps and their length used for a run on [0, t_end].
struct StepPlan {
  int steps;
  double h;
};
StepPlan plan_steps(double t_end, double dt);

}  // namespace onestep
