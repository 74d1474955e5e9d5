#include "onestep/fokkerplanck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "onestep/error.hpp"
#include "onestep/quadrature.hpp"

namespace onestep {

namespace {

constexpr double kNormalizationRelTol = 1e-13;

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorKind::InvalidInput, "empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
      throw Error(ErrorKind::InvalidInput, "grid points must lie in [0,1]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorKind::InvalidInput, "grid must be strictly ascending");
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

// Integral over [0,1] of a function concentrated around z_star with
// Gaussian width ~ sigma. Panels are graded around the peak so that the
// initial Simpson samples never miss it.
template <class F>
double integrate_peaked(F&& f, double z_star, double sigma, double reference) {
  static constexpr double kOffsets[] = {0.25, 0.5, 1.0, 1.5, 2.0, 3.0,
                                        4.0,  5.0, 6.0, 8.0, 10.0, 12.0,
                                        16.0, 20.0, 25.0, 30.0, 40.0};
  std::vector<double> cuts{0.0, 1.0, z_star};
  for (double m : kOffsets) {
    for (double sign : {-1.0, 1.0}) {
      const double x = z_star + sign * m * sigma;
      if (x > 0.0 && x < 1.0) cuts.push_back(x);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double tol =
      kNormalizationRelTol * reference / static_cast<double>(cuts.size());
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    total += quad::adaptive_simpson(f, cuts[i - 1], cuts[i], tol);
  }
  return total;
}

double curvature_at(const RateModel& model, double z_star) {
  const double q = (model.dA(z_star) - model.dC(z_star)) /
                   (model.A(z_star) + model.C(z_star));
  if (!(q < 0.0)) {
    throw Error(ErrorKind::AssumptionViolation,
                "A'(z*) - C'(z*) must be negative");
  }
  return q;
}

}  // namespace

std::size_t DensityProfile::argmax() const {
  return static_cast<std::size_t>(
      std::max_element(log_values.begin(), log_values.end()) -
      log_values.begin());
}

std::vector<double> lattice_grid(int N, int refine) {
  if (N < 1 || refine < 1) {
    throw Error(ErrorKind::InvalidParameter, "lattice_grid: N, refine >= 1");
  }
  const int m = N * refine;
  std::vector<double> grid(m + 1);
  for (int j = 0; j <= m; ++j) {
    grid[j] = static_cast<double>(j) / static_cast<double>(m);
  }
  return grid;
}

double compute_B(const RateModel& model, double z_star, double z) {
  if (!(z >= 0.0 && z <= 1.0)) {
    throw Error(ErrorKind::InvalidInput, "compute_B: z must lie in [0,1]");
  }
  auto integrand = [&](double x) {
    return 2.0 * (model.A(x) - model.C(x)) / (model.A(x) + model.C(x));
  };
  return quad::adaptive_simpson(integrand, z_star, z, kBTolerance);
}

BFunction::BFunction(const RateModel& model, double z_star,
                     int reference_points)
    : model_(model), z_star_(z_star) {
  if (reference_points < 3) {
    throw Error(ErrorKind::InvalidParameter, "BFunction: too few nodes");
  }
  if (!(z_star > 0.0 && z_star < 1.0)) {
    throw Error(ErrorKind::AssumptionViolation, "z* must lie in (0,1)");
  }
  const int m = reference_points - 1;
  nodes_.reserve(reference_points + 1);
  for (int j = 0; j <= m; ++j) {
    nodes_.push_back(0.5 * (1.0 - std::cos(std::numbers::pi * j / m)));
  }
  nodes_.front() = 0.0;
  nodes_.back() = 1.0;
  nodes_.push_back(z_star);
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());

  const auto star = static_cast<std::size_t>(
      std::lower_bound(nodes_.begin(), nodes_.end(), z_star) - nodes_.begin());
  cumulative_.assign(nodes_.size(), 0.0);
  auto f = [this](double x) { return integrand(x); };
  for (std::size_t j = star + 1; j < nodes_.size(); ++j) {
    const double width = nodes_[j] - nodes_[j - 1];
    cumulative_[j] = cumulative_[j - 1] +
                     quad::adaptive_simpson(f, nodes_[j - 1], nodes_[j],
                                            kBTolerance * width);
  }
  for (std::size_t j = star; j-- > 0;) {
    const double width = nodes_[j + 1] - nodes_[j];
    cumulative_[j] = cumulative_[j + 1] +
                     quad::adaptive_simpson(f, nodes_[j + 1], nodes_[j],
                                            kBTolerance * width);
  }
}

double BFunction::integrand(double x) const {
  const double a = model_.A(x);
  const double c = model_.C(x);
  return 2.0 * (a - c) / (a + c);
}

double BFunction::operator()(double z) const {
  if (!(z >= 0.0 && z <= 1.0)) {
    throw Error(ErrorKind::InvalidInput, "B: z must lie in [0,1]");
  }
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), z);
  std::size_t j = static_cast<std::size_t>(it - nodes_.begin());
  if (j == nodes_.size()) j = nodes_.size() - 1;
  if (j > 0 && (z - nodes_[j - 1]) < (nodes_[j] - z)) --j;
  if (nodes_[j] == z) return cumulative_[j];
  auto f = [this](double x) { return integrand(x); };
  return cumulative_[j] +
         quad::adaptive_simpson(f, nodes_[j], z,
                                kBTolerance * std::abs(z - nodes_[j]));
}

double normalization_K(const BFunction& B, int N) {
  if (N < 1) throw Error(ErrorKind::InvalidParameter, "N must be positive");
  const RateModel& model = B.model();
  const double z_star = B.z_star();
  const double q = curvature_at(model, z_star);
  const double n = static_cast<double>(N);
  const double sigma = 1.0 / std::sqrt(n * -q);
  const double peak = 2.0 * n / (model.A(z_star) + model.C(z_star));
  auto integrand = [&](double z) {
    return 2.0 * n / (model.A(z) + model.C(z)) * std::exp(n * B(z));
  };
  const double integral = integrate_peaked(
      integrand, z_star, sigma, peak * sigma * std::sqrt(std::numbers::pi));
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw Error(ErrorKind::Numerical, "normalisation integral is not positive");
  }
  return (1.0 / n) / integral;
}

double normalization_K(const RateModel& model, int N, double z_star) {
  const BFunction B(model, z_star);
  return normalization_K(B, N);
}

DensityProfile steady_state_v(const BFunction& B, int N, double K,
                              std::span<const double> grid) {
  check_grid(grid);
  if (!(K > 0.0)) throw Error(ErrorKind::InvalidParameter, "K must be > 0");
  const RateModel& model = B.model();
  DensityProfile out;
  out.grid.assign(grid.begin(), grid.end());
  out.K = K;
  out.z_star = B.z_star();
  out.N = N;
  out.log_values.resize(grid.size());
  out.values.resize(grid.size());
  const double n = static_cast<double>(N);
  const double log_prefactor = std::log(2.0 * n * K);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double z = grid[i];
    out.log_values[i] =
        log_prefactor - std::log(model.A(z) + model.C(z)) + n * B(z);
    out.values[i] = std::exp(out.log_values[i]);
  }
  return out;
}

DensityProfile steady_state_v(const RateModel& model, int N,
                              std::span<const double> grid) {
  const double z_star = validated_z_star(model);
  const BFunction B(model, z_star);
  const double K = normalization_K(B, N);
  return steady_state_v(B, N, K, grid);
}

double linear_closed_form_H(double a, double c, int N, double z) {
  const double z_star = a / (a + c);
  const double n = static_cast<double>(N);
  const double d = a - c;
  return 2.0 * n / (d * d) *
         ((a * a - c * c) * (z - z_star) +
          2.0 * a * c *
              std::log((a + (c - a) * z) / (a + (c - a) * z_star)));
}

DensityProfile linear_closed_form_v(double a, double c, int N,
                                    std::span<const double> grid) {
  if (!(a > 0.0) || !(c > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "a and c must be positive");
  }
  if (a == c) {
    throw Error(ErrorKind::InvalidParameter,
                "a == c: use symmetric_linear_U for the symmetric case");
  }
  if (N < 1) throw Error(ErrorKind::InvalidParameter, "N must be positive");
  check_grid(grid);
  const double n = static_cast<double>(N);
  const double z_star = a / (a + c);
  const double sum_at_star = 2.0 * a * c / (a + c);
  const double q = -(a + c) * (a + c) / (2.0 * a * c);
  const double sigma = 1.0 / std::sqrt(n * -q);
  auto integrand = [&](double z) {
    return 2.0 * n / (a + (c - a) * z) *
           std::exp(linear_closed_form_H(a, c, N, z));
  };
  const double integral = integrate_peaked(
      integrand, z_star, sigma,
      2.0 * n / sum_at_star * sigma * std::sqrt(std::numbers::pi));
  const double K = (1.0 / n) / integral;

  DensityProfile out;
  out.grid.assign(grid.begin(), grid.end());
  out.K = K;
  out.z_star = z_star;
  out.N = N;
  out.log_values.resize(grid.size());
  out.values.resize(grid.size());
  const double log_prefactor = std::log(2.0 * n * K);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double z = grid[i];
    out.log_values[i] = log_prefactor - std::log(a + (c - a) * z) +
                        linear_closed_form_H(a, c, N, z);
    out.values[i] = std::exp(out.log_values[i]);
  }
  return out;
}

Generator fp_discretization_matrix(const DiscreteChain& chain) {
  const int N = chain.N;
  const double n = static_cast<double>(N);
  const double n2 = n * n;
  std::vector<double> g(N + 1), h(N + 1);
  for (int k = 0; k <= N; ++k) {
    g[k] = (chain.a[k] + chain.c[k]) / (2.0 * n2);
    h[k] = (chain.a[k] - chain.c[k]) / n;
  }
  Generator out;
  out.N = N;
  out.sub.assign(N + 1, 0.0);
  out.diag.assign(N + 1, 0.0);
  out.sup.assign(N + 1, 0.0);
  // Interior rows: N^2 [(gu)_{k-1} - 2(gu)_k + (gu)_{k+1}]
  //              - N/2 [(hu)_{k+1} - (hu)_{k-1}]
  for (int k = 1; k < N; ++k) {
    out.sub[k] = g[k - 1] * n2 + h[k - 1] * n / 2.0;
    out.diag[k] = -2.0 * g[k] * n2;
    out.sup[k] = g[k + 1] * n2 - h[k + 1] * n / 2.0;
  }
  // Reflecting boundary rows coincide with the master equation.
  out.diag[0] = -(chain.a[0] + chain.c[0]);
  out.sup[0] = chain.c[1];
  out.sub[N] = chain.a[N - 1];
  out.diag[N] = -(chain.a[N] + chain.c[N]);
  return out;
}

}  // namespace onestep
