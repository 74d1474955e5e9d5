#include "onestep/master.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "onestep/error.hpp"

namespace onestep {

void Generator::apply(std::span<const double> p, std::span<double> out) const {
  const std::size_t n = diag.size();
  for (std::size_t k = 0; k < n; ++k) {
    double acc = diag[k] * p[k];
    if (k > 0) acc += sub[k] * p[k - 1];
    if (k + 1 < n) acc += sup[k] * p[k + 1];
    out[k] = acc;
  }
}

std::vector<double> Generator::apply(std::span<const double> p) const {
  std::vector<double> out(diag.size());
  apply(p, out);
  return out;
}

std::vector<double> Generator::column_sums() const {
  const std::size_t n = diag.size();
  std::vector<double> sums(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    sums[j] += diag[j];
    if (j + 1 < n) sums[j] += sub[j + 1];  // row j+1 reads p_j
    if (j > 0) sums[j] += sup[j - 1];      // row j-1 reads p_j
  }
  return sums;
}

Generator generator_matrix(const DiscreteChain& chain) {
  const int N = chain.N;
  Generator g;
  g.N = N;
  g.sub.assign(N + 1, 0.0);
  g.diag.assign(N + 1, 0.0);
  g.sup.assign(N + 1, 0.0);
  for (int k = 0; k <= N; ++k) {
    if (k > 0) g.sub[k] = chain.a[k - 1];
    g.diag[k] = -(chain.a[k] + chain.c[k]);
    if (k < N) g.sup[k] = chain.c[k + 1];
  }
  return g;
}

Distribution Distribution::point_mass(int N, int k) {
  if (N < 1 || k < 0 || k > N) {
    throw Error(ErrorKind::InvalidParameter, "point mass index out of range");
  }
  Distribution d;
  d.p.assign(N + 1, 0.0);
  d.p[k] = 1.0;
  return d;
}

void Distribution::validate() const {
  if (p.size() < 2) {
    throw Error(ErrorKind::InvalidInput, "distribution needs at least 2 states");
  }
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(ErrorKind::InvalidInput,
                  "distribution has a negative or non-finite entry");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "distribution does not sum to 1 (sum = " << sum << ")";
    throw Error(ErrorKind::InvalidInput, os.str());
  }
}

Distribution stationary_distribution(const DiscreteChain& chain) {
  const int N = chain.N;
  for (int k = 0; k < N; ++k) {
    if (!(chain.a[k] > 0.0)) {
      std::ostringstream os;
      os << "reducible chain: up-rate a_" << k << " is zero";
      throw Error(ErrorKind::ReducibleChain, os.str());
    }
    if (!(chain.c[k + 1] > 0.0)) {
      std::ostringstream os;
      os << "reducible chain: down-rate c_" << (k + 1) << " is zero";
      throw Error(ErrorKind::ReducibleChain, os.str());
    }
  }
  // Detailed balance: a_k pi_k = c_{k+1} pi_{k+1}.
  std::vector<double> logp(N + 1);
  logp[0] = 0.0;
  for (int k = 0; k < N; ++k) {
    logp[k + 1] = logp[k] + std::log(chain.a[k]) - std::log(chain.c[k + 1]);
  }
  const double top = *std::max_element(logp.begin(), logp.end());
  double sum = 0.0;
  for (double lp : logp) sum += std::exp(lp - top);
  const double log_norm = top + std::log(sum);
  Distribution d;
  d.p.resize(N + 1);
  for (int k = 0; k <= N; ++k) d.p[k] = std::exp(logp[k] - log_norm);
  return d;
}

double first_moment(const Distribution& dist) {
  const double n = static_cast<double>(dist.N());
  double m = 0.0;
  for (std::size_t k = 0; k < dist.p.size(); ++k) {
    m += static_cast<double>(k) / n * dist.p[k];
  }
  return m;
}

double master_stability_limit(const DiscreteChain& chain) {
  const double rate = chain.max_exit_rate();
  return rate > 0.0 ? 0.5 / rate : INFINITY;
}

StepPlan plan_steps(double t_end, double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "t_end and dt must be positive");
  }
  const double ratio = t_end / dt;
  int steps = static_cast<int>(std::ceil(ratio - 1e-9 * ratio));
  steps = std::max(steps, 1);
  return {steps, t_end / steps};
}

MasterRunStats integrate_master(const DiscreteChain& chain,
                                const Distribution& p0, double t_end,
                                double dt, const MasterObserver& observer) {
  p0.validate();
  if (p0.N() != chain.N) {
    throw Error(ErrorKind::InvalidInput,
                "initial distribution size does not match the chain");
  }
  const StepPlan plan = plan_steps(t_end, dt);
  const double limit = master_stability_limit(chain);
  if (dt > limit) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the stability limit " << limit;
    throw Error(ErrorKind::Stability, os.str());
  }

  const Generator g = generator_matrix(chain);
  const std::size_t n = p0.p.size();
  const double h = plan.h;
  Distribution state = p0;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

  MasterRunStats stats;
  stats.steps = plan.steps;
  stats.step = h;
  double drift_sum = 0.0;
  if (observer) observer(0.0, state);

  for (int s = 1; s <= plan.steps; ++s) {
    auto& p = state.p;
    g.apply(p, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k1[i];
    g.apply(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k2[i];
    g.apply(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + h * k3[i];
    g.apply(tmp, k4);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      sum += p[i];
    }
    drift_sum += std::abs(sum - 1.0);
    double clamped_sum = 0.0;
    for (double& x : p) {
      if (x < 0.0) {
        stats.min_raw_value = std::min(stats.min_raw_value, x);
        x = 0.0;
      }
      clamped_sum += x;
    }
    for (double& x : p) x /= clamped_sum;
    if (observer) observer(s == plan.steps ? t_end : s * h, state);
  }
  stats.mass_drift_per_unit_time = drift_sum / t_end;
  return stats;
}

MasterTrajectory integrate_master(const DiscreteChain& chain,
                                  const Distribution& p0, double t_end,
                                  double dt, int sample_every) {
  if (sample_every < 1) {
    throw Error(ErrorKind::InvalidParameter, "sample_every must be >= 1");
  }
  MasterTrajectory traj;
  int index = 0;
  const StepPlan plan = plan_steps(t_end, dt);
  traj.stats = integrate_master(
      chain, p0, t_end, dt, [&](double t, const Distribution& d) {
        if (index % sample_every == 0 || index == plan.steps) {
          traj.times.push_back(t);
          traj.states.push_back(d);
        }
        ++index;
      });
  return traj;
}

}  // namespace onestep
