#pragma once

#include <optional>
#include <string>
#include <vector>

namespace onestep {

/// Real polynomial with coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  double operator()(double z) const noexcept;
  Polynomial derivative() const;

  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

 private:
  std::vector<double> coeffs_{0.0};
};

enum class ModelKind { Linear, SISComplete, Polynomial };

/// Coefficient functions A (up-rate density) and C (down-rate density) on
/// [0,1] together with their exact first and second derivatives.
///
/// Every supported kind is polynomial, so A and C are evaluable on the whole
/// real line; everything downstream only samples [0,1].
class RateModel {
 public:
  /// A(z) = a(1-z), C(z) = cz.
  static RateModel linear(double a, double c);
  /// A(z) = beta z(1-z), C(z) = gamma z (SIS on the complete graph).
  static RateModel sis_complete(double beta, double gamma);
  /// Arbitrary polynomials. Requires A(1) = 0 and C(0) = 0 and both
  /// nonnegative on [0,1] (sampled on a 1001-point grid).
  static RateModel polynomial(std::vector<double> coeffs_a,
                              std::vector<double> coeffs_c);

  ModelKind kind() const noexcept { return kind_; }
  /// Parameters as given: (a, c), (beta, gamma), or empty for polynomials.
  const std::vector<double>& parameters() const noexcept { return params_; }

  double A(double z) const noexcept { return a_(z); }
  double C(double z) const noexcept { return c_(z); }
  double dA(double z) const noexcept { return da_(z); }
  double dC(double z) const noexcept { return dc_(z); }
  double d2A(double z) const noexcept { return d2a_(z); }
  double d2C(double z) const noexcept { return d2c_(z); }

  const Polynomial& A_poly() const noexcept { return a_; }
  const Polynomial& C_poly() const noexcept { return c_; }

  std::string describe() const;

 private:
  RateModel(ModelKind kind, std::vector<double> params, Polynomial a,
            Polynomial c);

  ModelKind kind_;
  std::vector<double> params_;
  Polynomial a_, c_, da_, dc_, d2a_, d2c_;
};

/// Finite-N rates a_k = N A(k/N), c_k = N C(k/N), k = 0..N.
struct DiscreteChain {
  int N = 0;
  std::vector<double> a;
  std::vector<double> c;

  std::size_t size() const noexcept { return a.size(); }
  double max_exit_rate() const noexcept;
};

DiscreteChain build_chain(const RateModel& model, int N);

struct AssumptionReport {
  bool has_unique_root = false;
  std::optional<double> z_star;
  bool stability_ok = false;
  bool positivity_ok = false;
  bool nonnegativity_ok = false;
  double min_sum = 0.0;  // min of A+C on the validation grid
  std::vector<std::string> messages;

  bool all_ok() const noexcept {
    return has_unique_root && stability_ok && positivity_ok && nonnegativity_ok;
  }
};

inline constexpr int kDefaultValidationGrid = 1001;

/// Checks nonnegativity of A and C, positivity of A+C, uniqueness of the
/// root z* of A-C in [0,1] and A'(z*) - C'(z*) < 0. Violations are reported,
/// never thrown (except for grid_size < 100).
AssumptionReport validate_assumptions(const RateModel& model,
                                      int grid_size = kDefaultValidationGrid);

/// Bisects a sign change of A-C on [lo, hi] to full double precision.
double bisect_root(const RateModel& model, double lo, double hi);

}  // namespace onestep
