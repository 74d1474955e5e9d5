#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "onestep/rates.hpp"

namespace onestep::app {

/// Malformed or incomplete configuration (exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelSpec {
  std::string kind;  // "linear" | "sis" | "polynomial"
  double a = 0.0, c = 0.0;
  double beta = 0.0, gamma = 0.0;
  std::vector<double> coeffs_a, coeffs_c;
};

struct SweepSpec {
  int min = 100;
  int max = 6400;
  int factor = 2;
};

struct ExperimentConfig {
  ModelSpec model;
  std::optional<int> N;
  SweepSpec sweep;
  double t_end = 5.0;
  std::optional<double> dt;
  std::optional<double> y0;
  std::string initial = "point";  // "point" | "stationary"
  int k0 = 0;
  int refine = 1;
  std::uint64_t seed = 42;
  int grid_size = kDefaultValidationGrid;
  std::optional<double> q;  // moivre: binomial parameter
  int every = 1;
  bool w_mass = false;
  std::string out;
  int threads = 1;
};

/// Flat JSON object; see README for the key list. Unknown keys are rejected.
/// With require_model = false a missing "kind" leaves the model empty.
ExperimentConfig parse_config(const nlohmann::json& j, bool require_model = true);

RateModel make_model(const ModelSpec& spec);

/// Parses a comma-separated list of numbers ("1,-1,0.3").
std::vector<double> parse_number_list(const std::string& text);

}  // namespace onestep::app
