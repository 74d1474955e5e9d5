#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "onestep/error.hpp"
#include "onestep/fokkerplanck.hpp"
#include "onestep/master.hpp"
#include "onestep/quadrature.hpp"
#include "oracles.hpp"

using namespace onestep;

namespace {

std::optional<RateModel> random_valid_model(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const auto spec = oracle::random_poly(rng);
    auto model = RateModel::polynomial(spec.a, spec.c);
    if (validate_assumptions(model).all_ok()) return model;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("lattice grid") {
  const auto g = lattice_grid(4);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g[1] == 0.25);
  CHECK(g.back() == 1.0);
  CHECK(lattice_grid(4, 3).size() == 13);
  CHECK(left_boundary(10) == -0.05);
  CHECK(right_boundary(10) == doctest::Approx(1.05));
}

TEST_CASE("B for the symmetric linear model is -2(z - 1/2)^2") {
  const auto m = RateModel::linear(1, 1);
  const BFunction B(m, 0.5);
  for (int i = 0; i <= 100; ++i) {
    const double z = i / 100.0;
    CHECK(std::abs(B(z) + 2.0 * (z - 0.5) * (z - 0.5)) <= 1e-12);
    CHECK(std::abs(compute_B(m, 0.5, z) + 2.0 * (z - 0.5) * (z - 0.5)) <= 1e-12);
  }
  CHECK(B(0.5) == 0.0);
}

TEST_CASE("B matches the hand primitive for linear rates") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 12.0);
  for (int t = 0; t < 20; ++t) {
    const double a = u(rng), c = u(rng);
    const auto m = RateModel::linear(a, c);
    const double zs = a / (a + c);
    const BFunction B(m, zs);
    for (int i = 0; i <= 50; ++i) {
      const double z = i / 50.0;
      CHECK(std::abs(B(z) - oracle::linear_B(a, c, z)) <= 1e-10);
    }
  }
}

TEST_CASE("B near z* behaves like q (z - z*)^2") {
  const auto m = RateModel::linear(2, 1);
  const BFunction B(m, 2.0 / 3.0);
  const double eps = 1e-3;
  CHECK(B(2.0 / 3.0 + eps) / (eps * eps) == doctest::Approx(-9.0 / 4.0).epsilon(1e-2));
  // B(z) / (z - z*)^2 approaches q monotonically as z -> z*.
  double prev = INFINITY;
  for (double d : {1e-2, 1e-3, 1e-4}) {
    const double gap = std::abs(B(2.0 / 3.0 + d) / (d * d) + 9.0 / 4.0);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("cached B agrees with direct quadrature, is negative off z*, and has the right slope") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 12; ++t) {
    const auto model = random_valid_model(rng);
    REQUIRE(model.has_value());
    const double zs = *validate_assumptions(*model).z_star;
    const BFunction B(*model, zs);
    for (int i = 0; i < 200; ++i) {
      const double z = u(rng);
      const double b = B(z);
      CHECK(std::abs(b - compute_B(*model, zs, z)) <= 1e-10);
      if (std::abs(z - zs) > 1e-6) CHECK(b < 0.0);
    }
    for (double z : {0.1, 0.37, 0.5, 0.81}) {
      const double slope = oracle::derivative([&](double x) { return B(x); }, z);
      const double expect =
          2.0 * (model->A(z) - model->C(z)) / (model->A(z) + model->C(z));
      CHECK(std::abs(slope - expect) <= 1e-6 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("B rejects points outside [0,1]") {
  const BFunction B(RateModel::linear(1, 1), 0.5);
  CHECK_THROWS_AS(B(1.5), Error);
  CHECK_THROWS_AS(B(-0.1), Error);
}

TEST_CASE("normalisation constant in the symmetric case") {
  const auto m = RateModel::linear(1, 1);
  for (int N : {10, 50, 400, 5000}) {
    CHECK(normalization_K(m, N, 0.5) ==
          doctest::Approx(oracle::symmetric_K(N)).epsilon(1e-10));
  }
  const auto v = steady_state_v(m, 50, std::vector<double>{0.5});
  CHECK(v.values[0] == doctest::Approx(std::sqrt(2.0 / (std::numbers::pi * 50))).epsilon(1e-3));
  // N K is proportional to N^{-1/2}.
  const double r = 1600 * normalization_K(m, 1600, 0.5) / (400 * normalization_K(m, 400, 0.5));
  CHECK(r == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("v has mass 1/N on [0,1]") {
  std::mt19937_64 rng(41);
  std::vector<RateModel> models{RateModel::linear(1, 1), RateModel::linear(2, 1),
                                RateModel::linear(10, 1)};
  for (int t = 0; t < 4; ++t) models.push_back(*random_valid_model(rng));
  for (const auto& m : models) {
    for (int N : {50, 200, 1000}) {
      const auto grid = lattice_grid(N, 20);
      const auto v = steady_state_v(m, N, grid);
      // Mass by brute-force composite Simpson on v evaluated pointwise.
      const BFunction B(m, v.z_star);
      const double mass = oracle::simpson(
          [&](double z) { return steady_state_v(B, N, v.K, std::vector<double>{z}).values[0]; },
          0.0, 1.0, 40000);
      CHECK(std::abs(mass * N - 1.0) <= 1e-6);
      for (double x : v.values) CHECK((std::isfinite(x) && x >= 0.0));
    }
  }
}

TEST_CASE("linear closed form matches the quadrature pipeline") {
  for (auto [a, c] : {std::pair{2.0, 1.0}, {10.0, 1.0}, {0.3, 4.0}}) {
    for (int N : {20, 50, 500}) {
      const auto grid = lattice_grid(N);
      const auto closed = linear_closed_form_v(a, c, N, grid);
      const auto quad = steady_state_v(RateModel::linear(a, c), N, grid);
      double worst = 0.0, peak = 0.0;
      for (std::size_t j = 0; j < grid.size(); ++j) {
        worst = std::max(worst, std::abs(closed.values[j] - quad.values[j]));
        peak = std::max(peak, quad.values[j]);
      }
      CHECK(worst <= 1e-8 * peak);
      CHECK(linear_closed_form_H(a, c, N, a / (a + c)) == doctest::Approx(0.0));
      CHECK(closed.K == doctest::Approx(quad.K).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(linear_closed_form_v(1.0, 1.0, 10, lattice_grid(10)), Error);
}

TEST_CASE("linear closed form tracks the binomial near the mode") {
  const int N = 200;
  const double a = 2, c = 1;
  const auto grid = lattice_grid(N);
  const auto v = linear_closed_form_v(a, c, N, grid);
  const auto p = oracle::binomial_pmf(N, 2.0L / 3.0L);
  for (int k = 125; k <= 141; ++k) {
    const double ref = static_cast<double>(p[k]);
    CHECK(std::abs(v.values[k] - ref) <= 0.1 * ref);
  }
}

TEST_CASE("mode of v sits at z* + (a - c) / (2N(a + c)) for linear rates") {
  for (auto [a, c, N] : {std::tuple{10.0, 1.0, 50}, {2.0, 1.0, 101}, {1.0, 3.0, 77},
                         {5.0, 2.0, 333}}) {
    const double mode = a / (a + c) + (a - c) / (2.0 * N * (a + c));
    const double scaled = mode * N;
    if (std::abs(scaled - std::floor(scaled) - 0.5) < 0.05) continue;
    const auto v = steady_state_v(RateModel::linear(a, c), N, lattice_grid(N));
    CHECK(static_cast<double>(v.argmax()) == std::round(scaled));
  }
  const auto v = steady_state_v(RateModel::linear(1, 1), 50, lattice_grid(50));
  CHECK(v.argmax() == 25);
}

TEST_CASE("finite-difference Fokker-Planck operator reproduces the master generator") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 20; ++t) {
    const auto spec = oracle::random_poly(rng);
    const auto model = RateModel::polynomial(spec.a, spec.c);
    for (int N : {10, 100, 1000}) {
      const auto chain = build_chain(model, N);
      const Generator fp = fp_discretization_matrix(chain);
      const Generator me = generator_matrix(chain);
      for (int k = 0; k <= N; ++k) {
        const double scale = std::max(1.0, std::abs(me.diag[k]));
        CHECK(std::abs(fp.sub[k] - me.sub[k]) <= 1e-13 * scale);
        CHECK(std::abs(fp.diag[k] - me.diag[k]) <= 1e-13 * scale);
        CHECK(std::abs(fp.sup[k] - me.sup[k]) <= 1e-13 * scale);
      }
    }
  }
  const auto small = fp_discretization_matrix(build_chain(RateModel::linear(1, 1), 2));
  CHECK(small.sub[1] == 2.0);
  CHECK(small.diag[1] == -2.0);
  CHECK(small.sup[1] == 2.0);
}

TEST_CASE("zero rates give a zero operator") {
  DiscreteChain chain;
  chain.N = 5;
  chain.a.assign(6, 0.0);
  chain.c.assign(6, 0.0);
  const auto fp = fp_discretization_matrix(chain);
  for (int k = 0; k <= 5; ++k) {
    CHECK(fp.sub[k] == 0.0);
    CHECK(fp.diag[k] == 0.0);
    CHECK(fp.sup[k] == 0.0);
  }
}

TEST_CASE("steady_state_v rejects models that fail the assumptions") {
  try {
    steady_state_v(RateModel::sis_complete(2, 1), 50, lattice_grid(50));
    FAIL("expected assumption violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AssumptionViolation);
  }
}
