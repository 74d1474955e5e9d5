#include "app/commands.hpp"

#include <cstdlib>
#include <functional>

#include <fmt/format.h>

#include "onestep/onestep.hpp"

namespace onestep::app {

namespace {

using nlohmann::json;

std::string num(double x) { return fmt::format("{:.17g}", x); }

json report_json(const ConvergenceReport& r) {
  json j;
  j["Ns"] = r.Ns;
  j["errors"] = r.errors;
  if (r.exact_case) {
    j["exact_case"] = true;
  } else {
    j["slope"] = r.fitted_slope;
    j["intercept"] = r.fitted_intercept;
    j["r2"] = r.r_squared;
  }
  return j;
}

int require_N(const ExperimentConfig& cfg, std::ostream& err) {
  if (!cfg.N) {
    err << "error: this command needs N (--N or \"N\" in the config)\n";
    return -1;
  }
  return *cfg.N;
}

// Runs body and converts failures into exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

int check_assumptions(const RateModel& model, int grid_size, std::ostream& err) {
  const AssumptionReport report = validate_assumptions(model, grid_size);
  if (report.all_ok()) return kExitOk;
  err << "error: " << model.describe() << " violates the standing assumptions\n";
  for (const auto& m : report.messages) err << "  " << m << '\n';
  return kExitAssumption;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::InvalidInput:
      return kExitUsage;
    case ErrorKind::ModelViolation:
    case ErrorKind::ReducibleChain:
    case ErrorKind::AssumptionViolation:
      return kExitAssumption;
    case ErrorKind::Numerical:
    case ErrorKind::Stability:
      return kExitNumerical;
  }
  return kExitNumerical;
}

int threads_from_env() {
  const char* env = std::getenv("ONESTEP_THREADS");
  if (!env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min<long>(v, 256));
}

int cmd_validate(const ExperimentConfig& cfg, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const RateModel model = make_model(cfg.model);
    const AssumptionReport r = validate_assumptions(model, cfg.grid_size);
    json j;
    j["model"] = model.describe();
    j["has_unique_root"] = r.has_unique_root;
    j["z_star"] = r.z_star ? json(*r.z_star) : json(nullptr);
    j["stability_ok"] = r.stability_ok;
    j["positivity_ok"] = r.positivity_ok;
    j["nonnegativity_ok"] = r.nonnegativity_ok;
    j["min_sum"] = r.min_sum;
    j["messages"] = r.messages;
    j["ok"] = r.all_ok();
    out << j.dump(2) << '\n';
    return r.all_ok() ? kExitOk : kExitAssumption;
  });
}

int cmd_steady(const ExperimentConfig& cfg, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const int N = require_N(cfg, err);
    if (N < 0) return static_cast<int>(kExitUsage);
    const RateModel model = make_model(cfg.model);
    if (int rc = check_assumptions(model, cfg.grid_size, err)) return rc;

    const double z_star = equilibrium(model);
    const BFunction B(model, z_star);
    const double K = normalization_K(B, N);
    const auto grid = lattice_grid(N);
    const DensityProfile v = steady_state_v(B, N, K, grid);
    const DensityProfile w = steady_state_w(model, N, K, grid);
    const Distribution p = stationary_distribution(build_chain(model, N));
    std::optional<DensityProfile> w_mass;
    if (cfg.w_mass) {
      w_mass = steady_state_w_mass_normalized(ou_parameters(model, N, K), grid);
    }

    out << "k,z,p_exact,v,w" << (w_mass ? ",w_mass" : "") << '\n';
    for (int k = 0; k <= N; ++k) {
      out << k << ',' << num(grid[k]) << ',' << num(p.p[k]) << ','
          << num(v.values[k]) << ',' << num(w.values[k]);
      if (w_mass) out << ',' << num(w_mass->values[k]);
      out << '\n';
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_evolve(const ExperimentConfig& cfg, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const int N = require_N(cfg, err);
    if (N < 0) return static_cast<int>(kExitUsage);
    const RateModel model = make_model(cfg.model);
    const DiscreteChain chain = build_chain(model, N);

    Distribution p0;
    if (cfg.initial == "stationary") {
      p0 = stationary_distribution(chain);
    } else {
      if (cfg.k0 < 0 || cfg.k0 > N) throw UsageError("k0 must lie in [0, N]");
      p0 = Distribution::point_mass(N, cfg.k0);
    }
    const double y0 = cfg.y0.value_or(first_moment(p0));
    const double dt = cfg.dt.value_or(master_stability_limit(chain));

    std::vector<double> times, m1;
    integrate_master(chain, p0, cfg.t_end, dt,
                     [&](double t, const Distribution& d) {
                       times.push_back(t);
                       m1.push_back(first_moment(d));
                     });
    const MeanFieldSolution mf = integrate_mf(model, y0, cfg.t_end, dt);

    out << "t,m1,y1,abs_diff\n";
    const std::size_t last = times.size() - 1;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (i % static_cast<std::size_t>(cfg.every) != 0 && i != last) continue;
      out << num(times[i]) << ',' << num(m1[i]) << ',' << num(mf.y1[i]) << ','
          << num(std::abs(m1[i] - mf.y1[i])) << '\n';
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_converge(const ExperimentConfig& cfg, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const RateModel model = make_model(cfg.model);
    if (int rc = check_assumptions(model, cfg.grid_size, err)) return rc;
    const std::vector<int> Ns =
        geometric_sweep(cfg.sweep.min, cfg.sweep.max, cfg.sweep.factor);
    if (Ns.size() < 4) {
      throw UsageError("the N-sweep must contain at least 4 points");
    }
    const SweepOptions options{cfg.refine, cfg.threads};
    const ConvergenceReport vw = empirical_order(model, Ns, options);
    const ConvergenceReport kr = k_scaling(model, Ns, options);

    json j;
    j["model"] = model.describe();
    j["exact_case"] = vw.exact_case;
    j["v_minus_w"] = report_json(vw);
    j["K"] = report_json(kr);
    out << j.dump(2) << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_moivre(const ExperimentConfig& cfg, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const int N = require_N(cfg, err);
    if (N < 0) return static_cast<int>(kExitUsage);
    double q = 0.5;
    if (cfg.q) {
      q = *cfg.q;
    } else if (cfg.model.kind == "linear") {
      q = cfg.model.a / (cfg.model.a + cfg.model.c);
    } else {
      throw UsageError("moivre needs q, or a linear model to derive it from");
    }
    out << "k,binomial,moivre_laplace,abs_diff\n";
    for (int k = 0; k <= N; ++k) {
      const double exact = binomial_pmf(N, q, k);
      const double approx = moivre_laplace(N, q, k);
      out << k << ',' << num(exact) << ',' << num(approx) << ','
          << num(std::abs(exact - approx)) << '\n';
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace onestep::app
