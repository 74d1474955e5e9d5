#include "onestep/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "onestep/error.hpp"
#include "onestep/master.hpp"
#include "onestep/ouapprox.hpp"

namespace onestep {

namespace {

void check_sweep(std::span<const int> Ns) {
  if (Ns.size() < 4) {
    throw Error(ErrorKind::InvalidParameter, "a sweep needs at least 4 values of N");
  }
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (Ns[i] < 10) {
      throw Error(ErrorKind::InvalidParameter, "sweep values must be >= 10");
    }
    if (i > 0 && Ns[i] <= Ns[i - 1]) {
      throw Error(ErrorKind::InvalidParameter,
                  "sweep values must be strictly increasing");
    }
  }
}

double validated_z_star(const RateModel& model) {
  const AssumptionReport report = validate_assumptions(model);
  if (!report.all_ok()) {
    std::string msg = "model violates the standing assumptions";
    for (const auto& m : report.messages) msg += "; " + m;
    throw Error(ErrorKind::AssumptionViolation, msg);
  }
  return *report.z_star;
}

void fit_report(ConvergenceReport& report) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < report.Ns.size(); ++i) {
    x.push_back(std::log(static_cast<double>(report.Ns[i])));
    y.push_back(std::log(report.errors[i]));
  }
  const LineFit fit = fit_line(x, y);
  report.fitted_slope = fit.slope;
  report.fitted_intercept = fit.intercept;
  report.r_squared = fit.r_squared;
}

}  // namespace

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::InvalidInput, "fit_line: need >= 2 paired points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::InvalidInput, "fit_line: degenerate x");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

double sup_error(const DensityProfile& f, const DensityProfile& g) {
  if (f.grid != g.grid) {
    throw Error(ErrorKind::InvalidInput, "sup_error: profiles use different grids");
  }
  double sup = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    sup = std::max(sup, std::abs(f.values[i] - g.values[i]));
  }
  return sup;
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<int> geometric_sweep(int n_min, int n_max, int factor) {
  if (n_min < 2 || n_max < n_min || factor < 2) {
    throw Error(ErrorKind::InvalidParameter,
                "sweep needs 2 <= min <= max and factor >= 2");
  }
  std::vector<int> Ns;
  for (long long n = n_min; n <= n_max; n *= factor) {
    Ns.push_back(static_cast<int>(n));
  }
  return Ns;
}

ConvergenceReport empirical_order(const RateModel& model,
                                  std::span<const int> Ns,
                                  const SweepOptions& options) {
  check_sweep(Ns);
  const double z_star = validated_z_star(model);
  const BFunction B(model, z_star);

  ConvergenceReport report;
  report.Ns.assign(Ns.begin(), Ns.end());
  report.errors.assign(Ns.size(), 0.0);
  std::vector<double> peaks(Ns.size(), 0.0);
  parallel_for(Ns.size(), options.threads, [&](std::size_t i) {
    const int N = Ns[i];
    const double K = normalization_K(B, N);
    const auto grid = lattice_grid(N, options.refine);
    const DensityProfile v = steady_state_v(B, N, K, grid);
    const DensityProfile w = steady_state_w(model, N, K, grid);
    report.errors[i] = sup_error(v, w);
    peaks[i] = *std::max_element(v.values.begin(), v.values.end());
  });

  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (report.errors[i] <= kExactCaseRelTol * peaks[i]) {
      report.exact_case = true;
      return report;
    }
  }
  fit_report(report);
  return report;
}

ConvergenceReport k_scaling(const RateModel& model, std::span<const int> Ns,
                            const SweepOptions& options) {
  check_sweep(Ns);
  const double z_star = validated_z_star(model);
  const BFunction B(model, z_star);

  ConvergenceReport report;
  report.Ns.assign(Ns.begin(), Ns.end());
  report.errors.assign(Ns.size(), 0.0);
  parallel_for(Ns.size(), options.threads, [&](std::size_t i) {
    report.errors[i] = normalization_K(B, Ns[i]);
  });
  fit_report(report);
  return report;
}

ExpInequalityCheck check_exp_inequality(std::int64_t samples,
                                        std::uint64_t seed) {
  if (samples < 1000) {
    throw Error(ErrorKind::InvalidParameter, "need at least 1000 samples");
  }
  ExpInequalityCheck result;
  auto holds = [](double y) {
    return std::abs(1.0 - std::exp(y)) <= 2.0 * std::abs(y);
  };
  auto record = [&](double y) {
    ++result.checked;
    if (!holds(y) && result.holds) {
      result.holds = false;
      result.counterexample = y;
    }
  };
  for (double y : {-1.0, 0.0, 1.0}) record(y);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (std::int64_t i = 0; i < samples; ++i) record(uniform(rng));
  return result;
}

QuadraticBounds check_rR_bounds(const RateModel& model, int grid_size) {
  if (grid_size < 10) {
    throw Error(ErrorKind::InvalidParameter, "grid_size must be >= 10");
  }
  const double z_star = validated_z_star(model);
  const double q = curvature_q(model, z_star);
  const BFunction B(model, z_star);
  QuadraticBounds bounds{q, q, q};
  for (int i = 0; i < grid_size; ++i) {
    const double z = static_cast<double>(i) / (grid_size - 1);
    const double d = z - z_star;
    if (std::abs(d) < 1e-6) continue;
    const double f = B(z) / (d * d);
    bounds.r = std::min(bounds.r, f);
    bounds.R = std::max(bounds.R, f);
  }
  if (!(bounds.R < 0.0)) {
    std::ostringstream os;
    os << "B(z)/(z-z*)^2 reaches " << bounds.R << " >= 0";
    throw Error(ErrorKind::AssumptionViolation, os.str());
  }
  return bounds;
}

MasterComparison compare_to_master(const RateModel& model, int N) {
  if (N < 2 || N > 20000) {
    throw Error(ErrorKind::InvalidParameter, "compare_to_master: 2 <= N <= 20000");
  }
  const double z_star = validated_z_star(model);
  const BFunction B(model, z_star);
  const double K = normalization_K(B, N);
  const auto grid = lattice_grid(N);
  const DensityProfile v = steady_state_v(B, N, K, grid);
  const DensityProfile w = steady_state_w(model, N, K, grid);
  const Distribution p = stationary_distribution(build_chain(model, N));
  MasterComparison out{0.0, 0.0};
  for (int k = 0; k <= N; ++k) {
    out.sup_pv = std::max(out.sup_pv, std::abs(p.p[k] - v.values[k]));
    out.sup_pw = std::max(out.sup_pw, std::abs(p.p[k] - w.values[k]));
  }
  return out;
}

}  // namespace onestep
