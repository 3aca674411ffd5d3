#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "tipwatch/csv.hpp"
#include "tipwatch/error.hpp"
#include "tipwatch/series.hpp"

using namespace tipwatch;

namespace {
ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::IoError;
}
}  // namespace

TEST_CASE("TimeSeries validates its inputs") {
  CHECK_THROWS_AS(TimeSeries(0.0, 0.0, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(TimeSeries(0.0, 1.0, {}), Error);
  CHECK_THROWS_AS(TimeSeries(0.0, 1.0, {1.0, NAN}), Error);
  TimeSeries s(10.0, 0.5, {1, 2, 3});
  CHECK(s.time_at(2) == doctest::Approx(11.0));
}

TEST_CASE("difference") {
  const std::vector<double> sq{1, 4, 9, 16, 25};
  CHECK(difference(sq, 0) == sq);
  CHECK(difference(sq, 1) == std::vector<double>{3, 5, 7, 9});
  CHECK(difference(sq, 2) == std::vector<double>{2, 2, 2});
  TimeSeries s(0.0, 2.0, sq);
  auto d = difference(s, 2);
  CHECK(d.size() == 3);
  CHECK(d.t0() == doctest::Approx(4.0));
}

TEST_CASE("windows cover the series from the left") {
  auto w = windows(30, 12, 9);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == Window{0, 12});
  CHECK(w[2] == Window{18, 12});
  CHECK(w.back().end_index() == 29);
  CHECK(windows(10, 10, 1).size() == 1);
  CHECK_THROWS_AS(windows(10, 11, 1), Error);
  CHECK_THROWS_AS(windows(100, kMinWindow - 1, 1), Error);
}

TEST_CASE("detrend_linear matches hand OLS") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  std::vector<double> y(57);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.3 * i - 2 + n01(rng);
  auto got = detrend_linear(y);
  auto want = oracle::ols_residuals(y);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("csv loading") {
  std::istringstream ok("t,a,b\n0,1,5\n0.5,2,6\n1.0,3,7\n");
  auto s = csv::load_csv(ok, std::string("b"));
  CHECK(s.size() == 3);
  CHECK(s.dt() == doctest::Approx(0.5));
  CHECK(s[2] == 7.0);

  std::istringstream by_index("a,b\n1,2\n3,4\n");
  auto s2 = csv::load_csv(by_index, std::size_t{1}, {.dt = 2.0, .t0 = 1.0});
  CHECK(s2[1] == 4.0);
  CHECK(s2.time_at(1) == doctest::Approx(3.0));

  CHECK(kind_of([] {
          std::istringstream in("t,a\n0,1\n1,2\n");
          csv::load_csv(in, std::string("zz"));
        }) == ErrorKind::MissingColumn);
  CHECK(kind_of([] {
          std::istringstream in("t,a\n0,1\n1,2\n3,4\n");
          csv::load_csv(in, std::string("a"));
        }) == ErrorKind::NonUniformSampling);
  CHECK(kind_of([] {
          std::istringstream in("t,a\n0,1\n1,x\n");
          csv::load_csv(in, std::string("a"));
        }) == ErrorKind::NonNumericEntry);
}

TEST_CASE("format_double round-trips with the shortest form") {
  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::format_double(2.0) == "2");
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 30) - 15);
    CHECK(std::stod(csv::format_double(v)) == v);
  }
}
