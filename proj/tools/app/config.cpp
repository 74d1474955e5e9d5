#include "app/config.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace onestep::app {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "kind", "a",      "c",     "beta",      "gamma", "A",      "C",
      "N",    "sweep",  "t_end", "dt",        "y0",    "initial", "k0",
      "refine", "seed", "grid_size", "q",     "every", "w_mass",  "out"};
  return keys;
}

template <class T>
T get(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("config key \"") + key +
                     "\" is missing or has the wrong type");
  }
}

template <class T>
void maybe(const nlohmann::json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = get<T>(j, key);
}

template <class T>
void maybe(const nlohmann::json& j, const char* key, std::optional<T>& dst) {
  if (j.contains(key)) dst = get<T>(j, key);
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& j, bool require_model) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known_keys().count(key)) {
      throw UsageError("unknown config key \"" + key + "\"");
    }
  }
  if (require_model && !j.contains("kind")) {
    throw UsageError("config is missing \"kind\"");
  }

  ExperimentConfig cfg;
  if (j.contains("kind")) cfg.model.kind = get<std::string>(j, "kind");
  if (cfg.model.kind.empty() && !require_model) {
    // model-free command
  } else if (cfg.model.kind == "linear") {
    cfg.model.a = get<double>(j, "a");
    cfg.model.c = get<double>(j, "c");
  } else if (cfg.model.kind == "sis") {
    cfg.model.beta = get<double>(j, "beta");
    cfg.model.gamma = get<double>(j, "gamma");
  } else if (cfg.model.kind == "polynomial") {
    cfg.model.coeffs_a = get<std::vector<double>>(j, "A");
    cfg.model.coeffs_c = get<std::vector<double>>(j, "C");
  } else {
    throw UsageError("unknown model kind \"" + cfg.model.kind +
                     "\" (expected linear, sis or polynomial)");
  }

  maybe(j, "N", cfg.N);
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    if (!s.is_object()) throw UsageError("\"sweep\" must be an object");
    maybe(s, "min", cfg.sweep.min);
    maybe(s, "max", cfg.sweep.max);
    maybe(s, "factor", cfg.sweep.factor);
  }
  maybe(j, "t_end", cfg.t_end);
  maybe(j, "dt", cfg.dt);
  maybe(j, "y0", cfg.y0);
  maybe(j, "initial", cfg.initial);
  maybe(j, "k0", cfg.k0);
  maybe(j, "refine", cfg.refine);
  maybe(j, "seed", cfg.seed);
  maybe(j, "grid_size", cfg.grid_size);
  maybe(j, "q", cfg.q);
  maybe(j, "every", cfg.every);
  maybe(j, "w_mass", cfg.w_mass);
  maybe(j, "out", cfg.out);

  if (cfg.N && *cfg.N < 2) throw UsageError("N must be at least 2");
  if (cfg.initial != "point" && cfg.initial != "stationary") {
    throw UsageError("initial must be \"point\" or \"stationary\"");
  }
  if (cfg.refine < 1) throw UsageError("refine must be >= 1");
  if (cfg.every < 1) throw UsageError("every must be >= 1");
  if (!(cfg.t_end > 0.0)) throw UsageError("t_end must be positive");
  if (cfg.dt && !(*cfg.dt > 0.0)) throw UsageError("dt must be positive");
  return cfg;
}

RateModel make_model(const ModelSpec& spec) {
  if (spec.kind == "linear") return RateModel::linear(spec.a, spec.c);
  if (spec.kind == "sis") return RateModel::sis_complete(spec.beta, spec.gamma);
  if (spec.kind == "polynomial") {
    return RateModel::polynomial(spec.coeffs_a, spec.coeffs_c);
  }
  throw UsageError("unknown model kind \"" + spec.kind + "\"");
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number list \"" + text + "\"");
    }
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

}  // namespace onestep::app
