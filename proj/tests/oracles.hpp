#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's numerical routines.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

/// Binomial pmf by multiplicative recurrence in long double.
inline std::vector<long double> binomial_pmf(int N, long double q) {
  std::vector<long double> p(N + 1);
  p[0] = std::exp(static_cast<long double>(N) * std::log1p(-q));
  const long double ratio = q / (1.0L - q);
  for (int k = 0; k < N; ++k) {
    p[k + 1] = p[k] * static_cast<long double>(N - k) / (k + 1) * ratio;
  }
  return p;
}

/// C(n, k) exactly in 64-bit (n <= 60).
inline std::uint64_t choose(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

/// B(z) for A = a(1-z), C = cz, by integrating 2(a-(a+c)x)/(a+(c-a)x) by
/// hand: partial fractions give (a+c)/(a-c) x + 2ac/(a-c)^2 ln(a+(c-a)x).
inline double linear_B(double a, double c, double z) {
  const double zs = a / (a + c);
  if (a == c) return -2.0 * (z - 0.5) * (z - 0.5);
  const double d = a - c;
  return 2.0 * ((a + c) / d * (z - zs) +
                2.0 * a * c / (d * d) *
                    std::log((a + (c - a) * z) / (a + (c - a) * zs)));
}

/// K for a = c = 1 from the Gaussian integral over [0,1] via erf.
inline double symmetric_K(int N) {
  const double n = N;
  const double mass = std::sqrt(std::numbers::pi / (2.0 * n)) *
                      std::erf(std::sqrt(2.0 * n) * 0.5);
  return (1.0 / (2.0 * n * n)) / mass;
}

/// Central finite difference.
template <class F>
double derivative(F&& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Composite Simpson on a fixed uniform mesh (brute force).
template <class F>
double simpson(F&& f, double a, double b, int panels = 20000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Random polynomial model A = (1-z) P(z), C = z Q(z) with positive P, Q.
struct RandomPoly {
  std::vector<double> a, c;
};

inline std::vector<double> times_one_minus_z(const std::vector<double>& p) {
  std::vector<double> out(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += p[i];
    out[i + 1] -= p[i];
  }
  return out;
}

inline std::vector<double> times_z(const std::vector<double>& p) {
  std::vector<double> out(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i];
  return out;
}

inline RandomPoly random_poly(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(0.1, 3.0);
  std::uniform_int_distribution<int> deg(0, 3);
  std::vector<double> p(deg(rng) + 1), q(deg(rng) + 1);
  for (auto& x : p) x = coef(rng);
  for (auto& x : q) x = coef(rng);
  return {times_one_minus_z(p), times_z(q)};
}

}  // namespace oracle
