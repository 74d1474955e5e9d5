#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "app/commands.hpp"
#include "app/config.hpp"

namespace {

using onestep::app::ExperimentConfig;
using nlohmann::json;

struct Flags {
  std::string config_path;
  std::optional<std::string> model;
  std::optional<double> a, c, beta, gamma;
  std::optional<std::string> coeffs_a, coeffs_c;
  std::optional<int> N, n_min, n_max, factor;
  std::optional<double> t_end, dt, y0, q;
  std::optional<std::string> initial;
  std::optional<int> k0, refine, grid_size, every;
  std::optional<std::uint64_t> seed;
  bool w_mass = false;
  std::optional<std::string> out;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "JSON configuration file");
  sub->add_option("--model", f.model, "Model kind: linear, sis or polynomial");
  sub->add_option("--a", f.a, "Linear model: up-rate constant a");
  sub->add_option("--c", f.c, "Linear model: down-rate constant c");
  sub->add_option("--beta", f.beta, "SIS model: infection rate");
  sub->add_option("--gamma", f.gamma, "SIS model: recovery rate");
  sub->add_option("--A", f.coeffs_a, "Polynomial model: A coefficients, ascending, comma separated");
  sub->add_option("--C", f.coeffs_c, "Polynomial model: C coefficients, ascending, comma separated");
  sub->add_option("--N", f.N, "System size");
  sub->add_option("--Nmin", f.n_min, "Sweep: smallest N");
  sub->add_option("--Nmax", f.n_max, "Sweep: largest N");
  sub->add_option("--factor", f.factor, "Sweep: geometric factor");
  sub->add_option("--t-end", f.t_end, "Integration horizon");
  sub->add_option("--dt", f.dt, "RK4 step");
  sub->add_option("--y0", f.y0, "Mean-field initial value");
  sub->add_option("--initial", f.initial, "Master initial state: point or stationary");
  sub->add_option("--k0", f.k0, "Point-mass initial state index");
  sub->add_option("--refine", f.refine, "Evaluation grid refinement factor");
  sub->add_option("--grid-size", f.grid_size, "Assumption validation grid size");
  sub->add_option("--q", f.q, "Binomial parameter for moivre");
  sub->add_option("--every", f.every, "Emit every n-th time step");
  sub->add_option("--seed", f.seed, "Random seed");
  sub->add_flag("--w-mass", f.w_mass, "Also emit w normalised to mass 1/N");
  sub->add_option("--out", f.out, "Output file (default: stdout)");
}

json merged_config(const Flags& f) {
  json j = json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) {
      throw onestep::app::UsageError("cannot open config file " + f.config_path);
    }
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw onestep::app::UsageError(std::string("config is not valid JSON: ") + e.what());
    }
  }
  auto set = [&](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  set("kind", f.model);
  set("a", f.a);
  set("c", f.c);
  set("beta", f.beta);
  set("gamma", f.gamma);
  if (f.coeffs_a) j["A"] = onestep::app::parse_number_list(*f.coeffs_a);
  if (f.coeffs_c) j["C"] = onestep::app::parse_number_list(*f.coeffs_c);
  set("N", f.N);
  if (f.n_min || f.n_max || f.factor) {
    if (!j.contains("sweep")) j["sweep"] = json::object();
    if (f.n_min) j["sweep"]["min"] = *f.n_min;
    if (f.n_max) j["sweep"]["max"] = *f.n_max;
    if (f.factor) j["sweep"]["factor"] = *f.factor;
  }
  set("t_end", f.t_end);
  set("dt", f.dt);
  set("y0", f.y0);
  set("q", f.q);
  set("initial", f.initial);
  set("k0", f.k0);
  set("refine", f.refine);
  set("grid_size", f.grid_size);
  set("every", f.every);
  set("seed", f.seed);
  if (f.w_mass) j["w_mass"] = true;
  set("out", f.out);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"onestep: stationary states of density-dependent one-step processes"};
  app.require_subcommand(1);
  Flags flags;

  using Command = int (*)(const ExperimentConfig&, std::ostream&, std::ostream&);
  struct Entry {
    const char* name;
    const char* help;
    Command run;
    bool needs_model;
  };
  const Entry entries[] = {
      {"validate", "Check the standing assumptions on A and C", onestep::app::cmd_validate, true},
      {"steady", "Exact, Fokker-Planck and Gaussian stationary states (CSV)", onestep::app::cmd_steady, true},
      {"evolve", "Master equation first moment vs mean-field ODE (CSV)", onestep::app::cmd_evolve, true},
      {"converge", "Convergence order of |v-w| and of K over an N-sweep (JSON)", onestep::app::cmd_converge, true},
      {"moivre", "Binomial pmf vs its normal approximation (CSV)", onestep::app::cmd_moivre, false},
  };
  for (const auto& e : entries) add_flags(app.add_subcommand(e.name, e.help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : onestep::app::kExitUsage;
  }

  for (const auto& e : entries) {
    if (!app.got_subcommand(e.name)) continue;
    ExperimentConfig cfg;
    try {
      cfg = onestep::app::parse_config(merged_config(flags), e.needs_model);
    } catch (const onestep::app::UsageError& err) {
      std::cerr << "error: " << err.what() << '\n';
      return onestep::app::kExitUsage;
    }
    cfg.threads = onestep::app::threads_from_env();
    if (cfg.out.empty()) return e.run(cfg, std::cout, std::cerr);
    std::ofstream file(cfg.out);
    if (!file) {
      std::cerr << "error: cannot open output file " << cfg.out << '\n';
      return onestep::app::kExitUsage;
    }
    return e.run(cfg, file, std::cerr);
  }
  return onestep::app::kExitUsage;
}
