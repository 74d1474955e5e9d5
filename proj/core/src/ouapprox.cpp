#include "onestep/ouapprox.hpp"

#include <cmath>
#include <numbers>

#include "onestep/error.hpp"
#include "onestep/meanfield.hpp"

namespace onestep {

namespace {

DensityProfile gaussian_profile(double log_peak, double z_star, double q, int N,
                                double K, std::span<const double> grid) {
  DensityProfile out;
  out.grid.assign(grid.begin(), grid.end());
  out.K = K;
  out.z_star = z_star;
  out.N = N;
  out.log_values.resize(grid.size());
  out.values.resize(grid.size());
  const double n = static_cast<double>(N);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = grid[i] - z_star;
    out.log_values[i] = log_peak + n * q * (d * d);
    out.values[i] = std::exp(out.log_values[i]);
  }
  return out;
}

}  // namespace

double curvature_q(const RateModel& model, double z_star) {
  const double q = (model.dA(z_star) - model.dC(z_star)) /
                   (model.A(z_star) + model.C(z_star));
  if (!(q < 0.0)) {
    throw Error(ErrorKind::AssumptionViolation,
                "curvature q = (A'-C')/(A+C) at z* must be negative");
  }
  return q;
}

OUParameters ou_parameters(const RateModel& model, int N, double K) {
  if (!(K > 0.0)) throw Error(ErrorKind::InvalidParameter, "K must be > 0");
  const AssumptionReport report = validate_assumptions(model);
  if (!report.all_ok()) {
    std::string msg = "model violates the standing assumptions";
    for (const auto& m : report.messages) msg += "; " + m;
    throw Error(ErrorKind::AssumptionViolation, msg);
  }
  OUParameters ou;
  ou.z_star = *report.z_star;
  ou.q = curvature_q(model, ou.z_star);
  ou.N = N;
  ou.K = K;
  ou.scale = 2.0 * N * K / (model.A(ou.z_star) + model.C(ou.z_star));
  return ou;
}

DensityProfile steady_state_w(const OUParameters& ou,
                              std::span<const double> grid) {
  return gaussian_profile(std::log(ou.scale), ou.z_star, ou.q, ou.N, ou.K,
                          grid);
}

DensityProfile steady_state_w(const RateModel& model, int N, double K,
                              std::span<const double> grid) {
  const OUParameters ou = ou_parameters(model, N, K);
  const double n = static_cast<double>(N);
  // Same expression as v's prefactor, so w(z*) and v(z*) agree bit for bit.
  const double log_peak = std::log(2.0 * n * K) -
                          std::log(model.A(ou.z_star) + model.C(ou.z_star));
  return gaussian_profile(log_peak, ou.z_star, ou.q, N, K, grid);
}

DensityProfile steady_state_w_mass_normalized(const OUParameters& ou,
                                              std::span<const double> grid) {
  const double n = static_cast<double>(ou.N);
  const double s = std::sqrt(n * -ou.q);
  const double mass_unit =
      std::sqrt(std::numbers::pi) / (2.0 * s) *
      (std::erf(s * (1.0 - ou.z_star)) + std::erf(s * ou.z_star));
  const double peak = (1.0 / n) / mass_unit;
  return gaussian_profile(std::log(peak), ou.z_star, ou.q, ou.N, ou.K, grid);
}

DensityProfile symmetric_linear_U(int N, std::span<const double> grid) {
  if (N < 2) throw Error(ErrorKind::InvalidParameter, "N must be >= 2");
  const double n = static_cast<double>(N);
  const double peak = std::sqrt(2.0 / (std::numbers::pi * n));
  // A + C = 1 for a = c = 1, so U = 2NK exp(...) gives K = U(1/2) / 2N.
  return gaussian_profile(std::log(peak), 0.5, -2.0, N, peak / (2.0 * n),
                          grid);
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double binomial_pmf(int N, double q, int k) {
  if (N < 0 || k < 0 || k > N) {
    throw Error(ErrorKind::InvalidParameter, "binomial_pmf: need 0 <= k <= N");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "binomial_pmf: need 0 <= q <= 1");
  }
  if (q == 0.0) return k == 0 ? 1.0 : 0.0;
  if (q == 1.0) return k == N ? 1.0 : 0.0;
  const double n = static_cast<double>(N);
  const double kk = static_cast<double>(k);
  const double log_choose =
      std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0);
  return std::exp(log_choose + kk * std::log(q) + (n - kk) * std::log1p(-q));
}

double moivre_laplace(int N, double q, int k) {
  if (N < 1 || k < 0 || k > N) {
    throw Error(ErrorKind::InvalidParameter, "moivre_laplace: need 0 <= k <= N");
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "moivre_laplace: need 0 < q < 1");
  }
  const double n = static_cast<double>(N);
  const double sd = std::sqrt(n * q * (1.0 - q));
  return normal_pdf((static_cast<double>(k) - n * q) / sd) / sd;
}

}  // namespace onestep
