#include "onestep/meanfield.hpp"

#include <algorithm>
#include <sstream>

#include "onestep/error.hpp"
#include "onestep/master.hpp"

namespace onestep {

namespace {
constexpr double kRangeTolerance = 1e-9;
}

MeanFieldSolution integrate_mf(const RateModel& model, double y0, double t_end,
                               double dt) {
  if (!(y0 >= 0.0 && y0 <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "y0 must lie in [0,1]");
  }
  const StepPlan plan = plan_steps(t_end, dt);
  auto rhs = [&](double y) { return model.A(y) - model.C(y); };

  MeanFieldSolution sol;
  sol.times.reserve(plan.steps + 1);
  sol.y1.reserve(plan.steps + 1);
  sol.times.push_back(0.0);
  sol.y1.push_back(y0);
  double y = y0;
  const double h = plan.h;
  for (int s = 1; s <= plan.steps; ++s) {
    const double k1 = rhs(y);
    const double k2 = rhs(y + 0.5 * h * k1);
    const double k3 = rhs(y + 0.5 * h * k2);
    const double k4 = rhs(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (y < -kRangeTolerance || y > 1.0 + kRangeTolerance) {
      std::ostringstream os;
      os << "mean-field trajectory left [0,1] (y = " << y << " at t = "
         << s * h << ")";
      throw Error(ErrorKind::ModelViolation, os.str());
    }
    y = std::clamp(y, 0.0, 1.0);
    sol.times.push_back(s == plan.steps ? t_end : s * h);
    sol.y1.push_back(y);
  }
  return sol;
}

double equilibrium(const RateModel& model) {
  const AssumptionReport report = validate_assumptions(model);
  if (!report.has_unique_root || !report.z_star) {
    std::string msg = "no unique root of A-C in (0,1)";
    if (!report.messages.empty()) msg += ": " + report.messages.front();
    throw Error(ErrorKind::AssumptionViolation, msg);
  }
  return *report.z_star;
}

}  // namespace onestep
