#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "tipwatch/box_model.hpp"
#include "tipwatch/calibration.hpp"
#include "tipwatch/csv.hpp"
#include "tipwatch/equilibria.hpp"
#include "tipwatch/error.hpp"
#include "tipwatch/hosing.hpp"
#include "tipwatch/integrate.hpp"
#include "tipwatch/upsilon.hpp"

using namespace tipwatch;
using namespace tipwatch::box;

TEST_CASE("closing salinity conserves salt for any state") {
  BoxModelParams p;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.5, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double sn = u(rng), st = u(rng);
    const double total = salt_content(sn, st, compute_SIP(sn, st, p), p);
    CHECK(std::abs(total - p.total_salt()) / p.total_salt() < 1e-14);
  }
  CHECK(salt_content(p.SN_ref, p.ST_ref, p.SIP_ref, p) ==
        doctest::Approx(p.total_salt()).epsilon(1e-15));
}

TEST_CASE("flow and fluxes") {
  BoxModelParams p;
  const double g = amoc_flow(p.SS, p);
  CHECK(g == doctest::Approx(p.lambda * p.alpha * (p.TS - p.T0)));
  CHECK(flux_north(1.0, p) == doctest::Approx(p.FN0 + p.FN_H));
  CHECK(flux_tropical(0.0, p) == doctest::Approx(p.FT0));
}

TEST_CASE("parameter validation") {
  BoxModelParams p;
  CHECK_NOTHROW(p.validate());
  p.VN_table = -1;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.gamma = 1.5;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("hosing profile is continuous at the corners") {
  HosingScenario s;
  s.H0 = 0.1;
  s.Hpert = 0.4;
  s.Trise = 100;
  s.Tpert = 400;
  s.Tfall = 300;
  CHECK(hosing(-5.0, s) == 0.1);
  CHECK(hosing(0.0, s) == doctest::Approx(0.1));
  CHECK(hosing(50.0, s) == doctest::Approx(0.25));
  CHECK(hosing(100.0, s) == doctest::Approx(0.4));
  CHECK(hosing(300.0, s) == doctest::Approx(0.4));
  CHECK(hosing(500.0, s) == doctest::Approx(0.4));
  CHECK(hosing(650.0, s) == doctest::Approx(0.25));
  CHECK(hosing(800.0, s) == doctest::Approx(0.1));
  CHECK(hosing(5000.0, s) == 0.1);
  for (double t : {100.0, 500.0, 800.0}) {
    CHECK(std::abs(hosing(t - 1e-9, s) - hosing(t + 1e-9, s)) < 1e-9);
  }
  // A negative pulse goes down and back up.
  s.Hpert = -0.2;
  CHECK(hosing(50.0, s) == doctest::Approx(-0.05));
  CHECK(hosing(800.0, s) == doctest::Approx(0.1));
  s.Tpert = INFINITY;
  CHECK(hosing(1e6, s) == doctest::Approx(-0.2));
}

TEST_CASE("scenario validation") {
  HosingScenario s;
  CHECK_NOTHROW(s.validate());
  s.Trise = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.output_dt = 0.25;
  s.dt_int = 0.1;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.noise_amplitude = -1;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("three equilibria at zero hosing") {
  BoxModelParams p;
  auto eq = find_equilibria(0.0, p);
  REQUIRE(eq.size() == 3);
  CHECK(eq[0].branch == BranchLabel::Upper);
  CHECK(eq[1].branch == BranchLabel::Unstable);
  CHECK(eq[2].branch == BranchLabel::Lower);
  CHECK(eq[0].stable);
  CHECK_FALSE(eq[1].stable);
  CHECK(eq[2].stable);
  CHECK(eq[0].gamma(p) > 0);
  CHECK(eq[2].gamma(p) < 0);
  for (const auto& e : eq) {
    auto r = derivatives({e.SN, e.ST}, 0.0, p);
    CHECK(std::abs(r.dSN) < 1e-12);
    CHECK(std::abs(r.dST) < 1e-12);
  }
}

TEST_CASE("a single root far past the fold") {
  BoxModelParams p;
  auto eq = find_equilibria(0.6, p);
  REQUIRE(eq.size() == 1);
  CHECK(eq[0].branch == BranchLabel::Lower);
  CHECK_FALSE(unstable_branch_SN(0.6, p).has_value());
}

TEST_CASE("sweep grid hits its endpoints and matches the serial sweep") {
  BoxModelParams p;
  auto a = equilibrium_sweep(-0.2, 0.2, 5, p);
  auto b = equilibrium_sweep_serial(-0.2, 0.2, 5, p);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].H == b[i].H);
    CHECK(a[i].SN == b[i].SN);
  }
  CHECK(a.front().H == -0.2);
  CHECK(a.back().H == 0.2);
  bool has_zero = false;
  for (const auto& e : a) has_zero |= e.H == 0.0;
  CHECK(has_zero);
  CHECK_THROWS_AS(equilibrium_sweep(0, 1, 1, p), Error);
}

TEST_CASE("hopf point on the upper branch") {
  BoxModelParams p;
  auto h = locate_hopf(0.2, 0.39, p);
  REQUIRE(h.has_value());
  CHECK(*h > 0.3);
  CHECK(*h < 0.5);
  auto below = find_equilibria(*h - 0.01, p);
  auto above = find_equilibria(*h + 0.01, p);
  CHECK(below[0].complex_pair());
  CHECK(below[0].max_real() < 0);
  CHECK(above[0].max_real() > 0);
}

TEST_CASE("noise-free run from equilibrium stays put") {
  BoxModelParams p;
  HosingScenario s;
  s.duration = 50;
  auto tr = integrate(s, p);
  CHECK(tr.size() == 250);
  auto eq = find_equilibria(0.0, p);
  CHECK(tr.SN.back() == doctest::Approx(eq[0].SN).epsilon(1e-9));
  CHECK(tr.max_salt_residual(p) < 1e-14);
  CHECK(tr.series("Gamma").size() == 250);
  CHECK_THROWS_AS(static_cast<void>(tr.series("nope")), Error);
}

TEST_CASE("noisy runs are reproducible per seed") {
  BoxModelParams p;
  HosingScenario s;
  s.duration = 20;
  s.noise_amplitude = 1e-3;
  s.seed = 5;
  auto a = integrate(s, p);
  auto b = integrate(s, p);
  CHECK(a.SN == b.SN);
  s.seed = 6;
  CHECK(integrate(s, p).SN != a.SN);
  CHECK(a.max_salt_residual(p) < 1e-14);
  std::ostringstream out;
  write_trajectory(a, out);
  CHECK(out.str().rfind("t,S_N,S_T,S_IP,Gamma,H\n", 0) == 0);
}

TEST_CASE("blow-up is reported with its time") {
  BoxModelParams p;
  HosingScenario s;
  s.duration = 10;
  s.initial.kind = InitialState::Kind::Explicit;
  s.initial.SN = 1e300;
  s.initial.ST = 1e300;
  try {
    integrate(s, p);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFiniteState);
  }
}

TEST_CASE("threshold follows the unstable branch") {
  BoxModelParams p;
  BranchThreshold thr(0.0, 0.5, p);
  CHECK(thr(0.0) == doctest::Approx(*unstable_branch_SN(0.0, p)).epsilon(1e-9));
  CHECK(thr(0.2) == doctest::Approx(*unstable_branch_SN(0.2, p)).epsilon(1e-3));
  auto fold = fold_hosing(p);
  REQUIRE(fold.has_value());
  CHECK(thr(0.5) == doctest::Approx(thr(*fold - 0.003)).epsilon(1e-2));

  Trajectory tr;
  tr.t = {0, 1, 2, 3};
  tr.SN = {0.1, 0.05, -0.1, -0.1};
  tr.H = {0, 0, 0, 0};
  tr.ST = tr.SIP = tr.Gamma = tr.H;
  auto when = transition_time(tr, thr, Crossing::Down);
  REQUIRE(when.has_value());
  CHECK(*when == 2.0);
  tr.SN = {-0.1, -0.1, 0.1, 0.1};
  CHECK(*transition_time(tr, thr, Crossing::Up) == 2.0);
}

TEST_CASE("trajectory CSV feeds the indicator unchanged") {
  BoxModelParams p;
  HosingScenario s;
  s.duration = 200;
  s.noise_amplitude = 1e-3;
  s.seed = 2;
  const auto tr = integrate(s, p);
  std::stringstream io;
  write_trajectory(tr, io);
  const auto loaded = csv::load_csv(io, std::string("S_N"));
  const auto direct = tr.series("S_N");
  REQUIRE(loaded.size() == direct.size());
  CHECK(std::equal(loaded.values().begin(), loaded.values().end(), direct.values().begin()));
  upsilon::SelectionConfig c;
  c.p_max = c.q_max = 1;
  c.tau = 300;
  c.stride = 350;
  std::ostringstream a, b;
  upsilon::to_table(upsilon::run_indicator(loaded, c)).write(a);
  upsilon::to_table(upsilon::run_indicator(direct, c)).write(b);
  CHECK(a.str() == b.str());
}
