#pragma once

#include <vector>

#include "onestep/rates.hpp"

namespace onestep {

struct MeanFieldSolution {
  std::vector<double> times;
  std::vector<double> y1;
};

/// RK4 trajectory of y' = A(y) - C(y) on [0, t_end], using the same step
/// plan as integrate_master so both trajectories share time points.
MeanFieldSolution integrate_mf(const RateModel& model, double y0, double t_end,
                               double dt);

/// Unique root z* of A - C in [0,1]; throws AssumptionViolation when the
/// root is missing or not unique.
double equilibrium(const RateModel& model);

}  // namespace onestep
