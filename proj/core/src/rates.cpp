#include "onestep/rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "onestep/error.hpp"

namespace onestep {

namespace {

constexpr double kRateTolerance = 1e-12;

std::vector<double> trimmed(std::vector<double> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(0.0);
  return coeffs;
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be a positive finite number, got " << value;
    throw Error(ErrorKind::InvalidParameter, os.str());
  }
}

std::string format_poly(const Polynomial& p) {
  std::ostringstream os;
  os << '[';
  const auto& c = p.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
  os << ']';
  return os.str();
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs)
    : coeffs_(trimmed(std::move(coeffs))) {}

double Polynomial::operator()(double z) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d[i - 1] = static_cast<double>(i) * coeffs_[i];
  }
  return Polynomial(std::move(d));
}

RateModel::RateModel(ModelKind kind, std::vector<double> params, Polynomial a,
                     Polynomial c)
    : kind_(kind),
      params_(std::move(params)),
      a_(std::move(a)),
      c_(std::move(c)),
      da_(a_.derivative()),
      dc_(c_.derivative()),
      d2a_(da_.derivative()),
      d2c_(dc_.derivative()) {}

RateModel RateModel::linear(double a, double c) {
  require_positive(a, "a");
  require_positive(c, "c");
  return RateModel(ModelKind::Linear, {a, c}, Polynomial({a, -a}),
                   Polynomial({0.0, c}));
}

RateModel RateModel::sis_complete(double beta, double gamma) {
  require_positive(beta, "beta");
  require_positive(gamma, "gamma");
  return RateModel(ModelKind::SISComplete, {beta, gamma},
                   Polynomial({0.0, beta, -beta}), Polynomial({0.0, gamma}));
}

RateModel RateModel::polynomial(std::vector<double> coeffs_a,
                                std::vector<double> coeffs_c) {
  if (coeffs_a.empty() || coeffs_c.empty()) {
    throw Error(ErrorKind::InvalidParameter,
                "polynomial model needs non-empty coefficient lists");
  }
  for (double v : coeffs_a) {
    if (!std::isfinite(v))
      throw Error(ErrorKind::InvalidParameter, "non-finite coefficient in A");
  }
  for (double v : coeffs_c) {
    if (!std::isfinite(v))
      throw Error(ErrorKind::InvalidParameter, "non-finite coefficient in C");
  }
  RateModel model(ModelKind::Polynomial, {}, Polynomial(std::move(coeffs_a)),
                  Polynomial(std::move(coeffs_c)));

  double scale = 1.0;
  for (double v : model.a_.coefficients()) scale = std::max(scale, std::abs(v));
  for (double v : model.c_.coefficients()) scale = std::max(scale, std::abs(v));
  if (std::abs(model.A(1.0)) > kRateTolerance * scale) {
    throw Error(ErrorKind::ModelViolation, "A(1) must be 0");
  }
  if (std::abs(model.C(0.0)) > kRateTolerance * scale) {
    throw Error(ErrorKind::ModelViolation, "C(0) must be 0");
  }
  for (int i = 0; i < kDefaultValidationGrid; ++i) {
    const double z = static_cast<double>(i) / (kDefaultValidationGrid - 1);
    if (model.A(z) < -kRateTolerance * scale ||
        model.C(z) < -kRateTolerance * scale) {
      std::ostringstream os;
      os << "A and C must be nonnegative on [0,1]; violated at z = " << z;
      throw Error(ErrorKind::ModelViolation, os.str());
    }
  }
  return model;
}

std::string RateModel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case ModelKind::Linear:
      os << "linear(a=" << params_[0] << ", c=" << params_[1] << ")";
      break;
    case ModelKind::SISComplete:
      os << "sis(beta=" << params_[0] << ", gamma=" << params_[1] << ")";
      break;
    case ModelKind::Polynomial:
      os << "polynomial(A=" << format_poly(a_) << ", C=" << format_poly(c_)
         << ")";
      break;
  }
  return os.str();
}

double DiscreteChain::max_exit_rate() const noexcept {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, a[k] + c[k]);
  return m;
}

DiscreteChain build_chain(const RateModel& model, int N) {
  if (N < 2) {
    throw Error(ErrorKind::InvalidParameter, "N must be at least 2");
  }
  DiscreteChain chain;
  chain.N = N;
  chain.a.resize(N + 1);
  chain.c.resize(N + 1);
  const double n = static_cast<double>(N);
  for (int k = 0; k <= N; ++k) {
    const double z = static_cast<double>(k) / n;
    double a = n * model.A(z);
    double c = n * model.C(z);
    const double floor = -kRateTolerance * n * (1.0 + std::abs(a) + std::abs(c));
    if (a < floor || c < floor) {
      std::ostringstream os;
      os << "negative rate at k = " << k << " (a = " << a << ", c = " << c
         << ")";
      throw Error(ErrorKind::ModelViolation, os.str());
    }
    chain.a[k] = std::max(a, 0.0);
    chain.c[k] = std::max(c, 0.0);
  }
  chain.a[N] = 0.0;
  chain.c[0] = 0.0;
  return chain;
}

double bisect_root(const RateModel& model, double lo, double hi) {
  auto f = [&](double z) { return model.A(z) - model.C(z); };
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

AssumptionReport validate_assumptions(const RateModel& model, int grid_size) {
  if (grid_size < 100) {
    throw Error(ErrorKind::InvalidParameter, "grid_size must be at least 100");
  }
  AssumptionReport report;
  const int n = grid_size;
  std::vector<double> z(n), f(n);
  double min_a = INFINITY, min_c = INFINITY, min_sum = INFINITY, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    z[i] = static_cast<double>(i) / (n - 1);
    const double a = model.A(z[i]);
    const double c = model.C(z[i]);
    f[i] = a - c;
    min_a = std::min(min_a, a);
    min_c = std::min(min_c, c);
    min_sum = std::min(min_sum, a + c);
    scale = std::max(scale, std::abs(a) + std::abs(c));
  }
  scale = std::max(scale, 1e-300);
  report.min_sum = min_sum;

  report.nonnegativity_ok = min_a >= -kRateTolerance * scale &&
                            min_c >= -kRateTolerance * scale;
  if (!report.nonnegativity_ok) {
    report.messages.push_back("A or C is negative somewhere on [0,1]");
  }
  report.positivity_ok = min_sum > 0.0;
  if (!report.positivity_ok) {
    std::ostringstream os;
    os << "A+C is not positive on [0,1] (min " << min_sum << ")";
    report.messages.push_back(os.str());
  }

  const double zero_tol = 1e-13 * scale;
  auto is_zero = [&](int i) { return std::abs(f[i]) <= zero_tol; };
  std::vector<double> roots;
  bool tangential = false;
  for (int i = 0; i < n; ++i) {
    if (is_zero(i)) {
      if (i == 0 || !is_zero(i - 1)) {
        double root = z[i];
        // Near-zero grid value: refine if the neighbours bracket a crossing.
        if (f[i] != 0.0 && i > 0 && i + 1 < n &&
            (f[i - 1] < 0.0) != (f[i + 1] < 0.0)) {
          root = bisect_root(model, z[i - 1], z[i + 1]);
        }
        roots.push_back(root);
      }
      continue;
    }
    if (i + 1 < n && !is_zero(i + 1) && (f[i] < 0.0) != (f[i + 1] < 0.0)) {
      roots.push_back(bisect_root(model, z[i], z[i + 1]));
    }
    if (i > 0 && i + 1 < n && !is_zero(i - 1) && !is_zero(i + 1) &&
        (f[i - 1] < 0.0) == (f[i] < 0.0) && (f[i + 1] < 0.0) == (f[i] < 0.0) &&
        std::abs(f[i]) < std::abs(f[i - 1]) &&
        std::abs(f[i]) < std::abs(f[i + 1]) && std::abs(f[i]) < 1e-6 * scale) {
      tangential = true;
    }
  }

  if (tangential) {
    report.messages.push_back(
        "unique root not certified: A-C has a near-tangential minimum");
  }
  if (roots.empty()) {
    report.messages.push_back("A-C has no root in [0,1]: unique root missing");
  } else if (roots.size() > 1) {
    std::ostringstream os;
    os << "A-C has " << roots.size() << " roots in [0,1] (";
    for (std::size_t i = 0; i < roots.size() && i < 6; ++i) {
      os << (i ? ", " : "") << roots[i];
    }
    os << "): unique root assumption fails";
    report.messages.push_back(os.str());
  } else if (roots.front() <= 0.0 || roots.front() >= 1.0) {
    report.messages.push_back(
        "the unique root of A-C lies on the boundary of [0,1]");
  } else if (!tangential) {
    report.has_unique_root = true;
    report.z_star = roots.front();
  }

  if (report.z_star) {
    const double zs = *report.z_star;
    // Degenerate (multiple) roots give A'-C' at roundoff level; demand a
    // margin relative to the size of the rates.
    report.stability_ok = model.dA(zs) - model.dC(zs) < -1e-10 * scale;
    if (!report.stability_ok) {
      report.messages.push_back("A'(z*) - C'(z*) is not negative");
    }
  }
  return report;
}

}  // namespace onestep
