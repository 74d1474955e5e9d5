#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "onestep/error.hpp"
#include "onestep/master.hpp"
#include "oracles.hpp"

using namespace onestep;

TEST_CASE("generator for the N = 2 symmetric chain") {
  const auto chain = build_chain(RateModel::linear(1.0, 1.0), 2);
  REQUIRE(chain.a == std::vector<double>{2, 1, 0});
  REQUIRE(chain.c == std::vector<double>{0, 1, 2});
  const Generator g = generator_matrix(chain);
  CHECK(g.diag == std::vector<double>{-2, -2, -2});
  CHECK(g.sub == std::vector<double>{0, 2, 1});
  CHECK(g.sup == std::vector<double>{1, 2, 0});
  for (double s : g.column_sums()) CHECK(s == 0.0);
  // (1/4, 1/2, 1/4) is annihilated.
  for (double x : g.apply(std::vector<double>{0.25, 0.5, 0.25})) CHECK(x == 0.0);
}

TEST_CASE("generator column sums vanish for random models") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto spec = oracle::random_poly(rng);
    const auto chain = build_chain(RateModel::polynomial(spec.a, spec.c),
                                   2 + static_cast<int>(rng() % 500));
    const Generator g = generator_matrix(chain);
    const double scale = chain.max_exit_rate();
    for (double s : g.column_sums()) CHECK(std::abs(s) <= 1e-14 * scale);
  }
}

TEST_CASE("stationary distribution of small chains") {
  const auto p = stationary_distribution(build_chain(RateModel::linear(1, 1), 2));
  CHECK(p.p[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p.p[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.p[2] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(first_moment(p) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("stationary distribution equals the binomial pmf for linear rates") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.2, 10.0);
  for (int t = 0; t < 25; ++t) {
    const double a = u(rng), c = u(rng);
    const int N = 2 + static_cast<int>(rng() % 199);
    const auto p = stationary_distribution(build_chain(RateModel::linear(a, c), N));
    const auto ref = oracle::binomial_pmf(N, static_cast<long double>(a) / (a + c));
    p.validate();
    for (int k = 0; k <= N; ++k) {
      const double rel = std::abs(std::log(p.p[k]) - std::log(static_cast<double>(ref[k])));
      CHECK(rel <= 1e-12);
    }
  }
}

TEST_CASE("binomial mode for a = 10, c = 1, N = 50") {
  const auto p = stationary_distribution(build_chain(RateModel::linear(10, 1), 50));
  const auto mode = std::max_element(p.p.begin(), p.p.end()) - p.p.begin();
  CHECK((mode == 45 || mode == 46));
}

TEST_CASE("stationary state is a null vector of the generator") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const auto spec = oracle::random_poly(rng);
    const auto model = RateModel::polynomial(spec.a, spec.c);
    const auto chain = build_chain(model, 10 + static_cast<int>(rng() % 400));
    const auto p = stationary_distribution(chain);
    const auto r = generator_matrix(chain).apply(p.p);
    double worst = 0.0;
    for (double x : r) worst = std::max(worst, std::abs(x));
    CHECK(worst <= 1e-10 * chain.max_exit_rate());
  }
}

TEST_CASE("reducible chains are rejected with the offending index") {
  const auto chain = build_chain(RateModel::sis_complete(2.0, 1.0), 10);
  try {
    stationary_distribution(chain);
    FAIL("expected reducible-chain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReducibleChain);
    CHECK(std::string(e.what()).find("a_0") != std::string::npos);
  }
}

TEST_CASE("first moment") {
  CHECK(first_moment(Distribution::point_mass(7, 7)) == 1.0);
  CHECK(first_moment(Distribution::point_mass(7, 0)) == 0.0);
  const int N = 40;
  const auto ref = oracle::binomial_pmf(N, 0.3L);
  Distribution d;
  for (auto x : ref) d.p.push_back(static_cast<double>(x));
  CHECK(first_moment(d) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("distribution validation") {
  Distribution d{{0.5, 0.6}};
  CHECK_THROWS_AS(d.validate(), Error);
  Distribution neg{{1.5, -0.5}};
  CHECK_THROWS_AS(neg.validate(), Error);
  CHECK_THROWS_AS(Distribution::point_mass(5, 6), Error);
}

TEST_CASE("integration from the stationary state stays put") {
  const auto chain = build_chain(RateModel::linear(2, 1), 60);
  const auto p0 = stationary_distribution(chain);
  double worst = 0.0;
  const auto stats = integrate_master(
      chain, p0, 3.0, master_stability_limit(chain),
      [&](double, const Distribution& d) {
        for (std::size_t k = 0; k < d.p.size(); ++k) {
          worst = std::max(worst, std::abs(d.p[k] - p0.p[k]));
        }
      });
  CHECK(worst <= 1e-9);
  CHECK(stats.mass_drift_per_unit_time <= 1e-9);
}

TEST_CASE("relaxation from a point mass to Binomial(50, 1/2)") {
  const auto chain = build_chain(RateModel::linear(1, 1), 50);
  const auto traj = integrate_master(chain, Distribution::point_mass(50, 0),
                                     20.0, master_stability_limit(chain), 100);
  const auto ref = stationary_distribution(chain);
  const auto& last = traj.states.back();
  CHECK(traj.times.back() == 20.0);
  double tv = 0.0;
  for (int k = 0; k <= 50; ++k) tv += 0.5 * std::abs(last.p[k] - ref.p[k]);
  CHECK(tv <= 1e-6);
  CHECK(traj.stats.mass_drift_per_unit_time <= 1e-9);
  CHECK(traj.stats.min_raw_value >= -1e-12);
  for (const auto& s : traj.states) {
    double sum = 0.0;
    for (double x : s.p) {
      CHECK(x >= 0.0);
      sum += x;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("mass conservation and nonnegativity on random models") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 8; ++t) {
    const auto spec = oracle::random_poly(rng);
    const auto chain = build_chain(RateModel::polynomial(spec.a, spec.c),
                                   20 + static_cast<int>(rng() % 150));
    const int k0 = static_cast<int>(rng() % (chain.N + 1));
    const auto stats = integrate_master(chain, Distribution::point_mass(chain.N, k0),
                                        1.0, master_stability_limit(chain),
                                        MasterObserver{});
    CHECK(stats.mass_drift_per_unit_time <= 1e-9);
    CHECK(stats.min_raw_value >= -1e-9);
  }
}

TEST_CASE("step plan and stability guard") {
  const auto plan = plan_steps(1.0, 0.3);
  CHECK(plan.steps == 4);
  CHECK(plan.h == doctest::Approx(0.25));
  CHECK(plan_steps(1.0, 0.25).steps == 4);

  const auto chain = build_chain(RateModel::linear(1, 1), 10);
  const double limit = master_stability_limit(chain);
  CHECK(limit == doctest::Approx(0.05));
  try {
    integrate_master(chain, Distribution::point_mass(10, 0), 1.0, 2.0 * limit, 1);
    FAIL("expected stability error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Stability);
  }
}
