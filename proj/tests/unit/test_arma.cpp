#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tipwatch/arma.hpp"
#include "tipwatch/error.hpp"

using namespace tipwatch;
using namespace tipwatch::arma;

TEST_CASE("root moduli") {
  const std::vector<double> half{0.5};
  CHECK(min_root_modulus_ar(half) == doctest::Approx(2.0));
  CHECK(min_root_modulus_ma(half) == doctest::Approx(2.0));
  CHECK(std::isinf(min_root_modulus_ar({})));
  const std::vector<double> ar2{0.5, 0.3};
  CHECK(min_root_modulus_ar(ar2) == doctest::Approx(oracle::min_root_modulus({-0.5, -0.3})));
  CHECK_FALSE(admissible(ArmaModel{0.0, {1.0}, {}, 1.0}));
  CHECK_FALSE(admissible(ArmaModel{0.0, {}, {-1.0}, 1.0}));
  CHECK(admissible(ArmaModel{0.0, {0.9}, {0.4}, 1.0}));
}

TEST_CASE("stationary mean") {
  ArmaModel m{2.0, {0.5, 0.25}, {}, 1.0};
  CHECK(m.mean() == doctest::Approx(8.0));
}

TEST_CASE("white-noise likelihood is the iid normal density") {
  std::vector<double> x{0.3, -1.2, 0.8, 2.1, -0.4, 0.0, 1.1};
  ArmaModel m{0.5, {}, {}, 2.0};
  double want = 0;
  for (double v : x) want += -0.5 * std::log(2 * std::numbers::pi * 2.0) - (v - 0.5) * (v - 0.5) / 4.0;
  CHECK(log_likelihood(m, x) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("likelihood agrees with the dense covariance oracle") {
  std::mt19937_64 rng(42);
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) {
      auto phi = oracle::random_admissible(p, 1.1, rng, true);
      auto theta = oracle::random_admissible(q, 1.1, rng, false);
      ArmaModel m{0.7, phi, theta, 1.3};
      auto x = simulate(m, 80, rng());
      CAPTURE(p);
      CAPTURE(q);
      CHECK(log_likelihood(m, x) ==
            doctest::Approx(oracle::dense_gaussian_loglik(phi, theta, 0.7, 1.3, x)).epsilon(1e-10));
    }
}

TEST_CASE("bic penalty") {
  CHECK(bic(-100.0, 2, 1, 350) == doctest::Approx(200.0 + 4 * std::log(350.0)));
  CHECK(bic(-100.0, 2, 1, 350, true) == doctest::Approx(200.0 + 5 * std::log(350.0)));
}

TEST_CASE("simulate is seeded") {
  ArmaModel m{0.0, {0.6}, {0.3}, 1.0};
  CHECK(simulate(m, 50, 7) == simulate(m, 50, 7));
  CHECK(simulate(m, 50, 7) != simulate(m, 50, 8));
  CHECK(simulate(m, 50, 7).size() == 50);
}

TEST_CASE("fit recovers an AR(1)") {
  ArmaModel m{1.0, {0.6}, {}, 1.0};
  auto x = simulate(m, 2000, 11);
  auto f = fit(x, 1, 0);
  CHECK(f.converged);
  CHECK(f.admissible);
  CHECK(f.model.phi[0] == doctest::Approx(0.6).epsilon(0.1));
  CHECK(f.model.mean() == doctest::Approx(2.5).epsilon(0.1));
  CHECK(f.cls_phi.has_value());
  // The profiled optimum beats the truth.
  CHECK(f.loglik >= log_likelihood(m, x) - 1e-9);
  CHECK(f.bic == doctest::Approx(bic(f.loglik, 1, 0, x.size())));
}

TEST_CASE("fit of an MA(1)") {
  ArmaModel m{0.0, {}, {0.5}, 2.0};
  auto x = simulate(m, 3000, 5);
  auto f = fit(x, 0, 1);
  CHECK(f.model.theta[0] == doctest::Approx(0.5).epsilon(0.15));
  CHECK(f.model.sigma2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("fit rejects short or constant input") {
  std::vector<double> tiny(10, 1.0);
  CHECK_THROWS_AS(fit(tiny, 1, 1), Error);
  std::vector<double> flat(100, 3.0);
  try {
    fit(flat, 1, 0);
    FAIL("constant data accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInput);
  }
}
