#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tipwatch/error.hpp"
#include "tipwatch/stationarity.hpp"

using namespace tipwatch;
using namespace tipwatch::stationarity;

namespace {
std::vector<double> noise(std::size_t n, std::uint64_t seed, bool walk) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  std::vector<double> x(n);
  double acc = 0;
  for (auto& v : x) v = walk ? (acc += n01(rng)) : n01(rng);
  return x;
}
}  // namespace

TEST_CASE("automatic Bartlett lag") {
  CHECK(kpss_auto_lags(100) == 4);
  CHECK(kpss_auto_lags(350) == 5);
  CHECK(kpss_auto_lags(1000) == 7);
}

TEST_CASE("statistic matches the hand computation") {
  for (bool walk : {false, true}) {
    auto x = noise(300, 17, walk);
    for (std::size_t l : {0u, 3u, 8u}) {
      auto r = kpss(x, l);
      CHECK(r.lags == l);
      CHECK(r.statistic == doctest::Approx(oracle::kpss_stat(x, l)).epsilon(1e-12));
      CHECK(r.reject_stationarity == (r.statistic > kKpssCritical5));
    }
  }
}

TEST_CASE("random walk is rejected, differencing fixes it") {
  int ones = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto x = noise(500, seed, true);
    CHECK(kpss(x).reject_stationarity);
    CHECK(choose_d(x, 2) >= 1);
    CHECK(choose_d(x, 0) == 0);
    ones += choose_d(x, 2) == 1;
  }
  // The differenced walk is white noise, rejected only at the test's size.
  CHECK(ones >= 16);
}

TEST_CASE("degenerate inputs") {
  std::vector<double> flat(50, 1.0);
  try {
    kpss(flat);
    FAIL("constant input accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroVariance);
  }
  std::vector<double> tiny{1, 2, 3};
  CHECK_THROWS_AS(kpss(tiny), Error);
}
