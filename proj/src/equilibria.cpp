#include "tipwatch/equilibria.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tipwatch/csv.hpp"
#include "tipwatch/error.hpp"

namespace tipwatch::box {

namespace {

constexpr double kMergeTol = 1e-9;
constexpr double kJacobianStep = 1e-8;
constexpr int kLatticeSN = 21;
constexpr int kLatticeST = 21;
constexpr double kSNLo = -0.5, kSNHi = 0.5;
constexpr double kSTLo = -0.5, kSTHi = 2.0;

using Mat2 = std::array<double, 4>;  // row major

Mat2 jacobian(double SN, double ST, double H, const BoxModelParams& p, double h) {
  const BoxRates a = derivatives({SN + h, ST}, H, p);
  const BoxRates b = derivatives({SN - h, ST}, H, p);
  const BoxRates c = derivatives({SN, ST + h}, H, p);
  const BoxRates d = derivatives({SN, ST - h}, H, p);
  return {(a.dSN - b.dSN) / (2 * h), (c.dSN - d.dSN) / (2 * h), (a.dST - b.dST) / (2 * h),
          (c.dST - d.dST) / (2 * h)};
}

double norm(const BoxRates& r) { return std::max(std::abs(r.dSN), std::abs(r.dST)); }

std::optional<BoxState> newton(BoxState x, double H, const BoxModelParams& p) {
  BoxRates f = derivatives(x, H, p);
  double fn = norm(f);
  for (int it = 0; it < 100; ++it) {
    if (fn < 1e-15) return x;
    const Mat2 J = jacobian(x.SN, x.ST, H, p, 1e-7);
    const double det = J[0] * J[3] - J[1] * J[2];
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) return std::nullopt;
    const double dSN = (J[3] * f.dSN - J[1] * f.dST) / det;
    const double dST = (-J[2] * f.dSN + J[0] * f.dST) / det;
    double lam = 1.0;
    bool moved = false;
    for (int half = 0; half < 40; ++half, lam *= 0.5) {
      const BoxState y{x.SN - lam * dSN, x.ST - lam * dST};
      const BoxRates g = derivatives(y, H, p);
      const double gn = norm(g);
      if (std::isfinite(gn) && gn < fn) {
        const double step = lam * std::max(std::abs(dSN), std::abs(dST));
        x = y;
        f = g;
        fn = gn;
        moved = true;
        if (step < 1e-15) return fn < 1e-12 ? std::optional<BoxState>(x) : std::nullopt;
        break;
      }
    }
    if (!moved) return fn < 1e-12 ? std::optional<BoxState>(x) : std::nullopt;
    if (std::abs(x.SN) > 10.0 || std::abs(x.ST) > 10.0) return std::nullopt;
  }
  return fn < 1e-12 ? std::optional<BoxState>(x) : std::nullopt;
}

EquilibriumPoint make_point(const BoxState& x, double H, const BoxModelParams& p) {
  EquilibriumPoint pt;
  pt.H = H;
  pt.SN = x.SN;
  pt.ST = x.ST;
  std::tie(pt.eig1, pt.eig2) = jacobian_eigenvalues(x.SN, x.ST, H, p);
  pt.stable = pt.eig1.real() < 0.0 && pt.eig2.real() < 0.0;
  return pt;
}

// Endpoint-weighted so symmetric grids hit 0 exactly.
double grid_point(double lo, double hi, int k, int steps) {
  return (lo * (steps - 1 - k) + hi * k) / (steps - 1);
}

}  // namespace

std::string to_string(BranchLabel label) {
  switch (label) {
    case BranchLabel::Upper: return "upper";
    case BranchLabel::Lower: return "lower";
    case BranchLabel::Unstable: return "unstable";
  }
  return "?";
}

std::pair<std::complex<double>, std::complex<double>> jacobian_eigenvalues(
    double SN, double ST, double H, const BoxModelParams& params) {
  const Mat2 J = jacobian(SN, ST, H, params, kJacobianStep);
  const double half_tr = 0.5 * (J[0] + J[3]);
  const double det = J[0] * J[3] - J[1] * J[2];
  const double disc = half_tr * half_tr - det;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    return {{half_tr + s, 0.0}, {half_tr - s, 0.0}};
  }
  const double s = std::sqrt(-disc);
  return {{half_tr, s}, {half_tr, -s}};
}

std::vector<EquilibriumPoint> find_equilibria(double H, const BoxModelParams& params) {
  std::vector<BoxState> roots;
  for (int i = 0; i < kLatticeSN; ++i) {
    for (int j = 0; j < kLatticeST; ++j) {
      const BoxState guess{kSNLo + (kSNHi - kSNLo) * i / (kLatticeSN - 1),
                           kSTLo + (kSTHi - kSTLo) * j / (kLatticeST - 1)};
      const auto r = newton(guess, H, params);
      if (!r) continue;
      const bool dup = std::any_of(roots.begin(), roots.end(), [&](const BoxState& q) {
        return std::abs(q.SN - r->SN) < kMergeTol && std::abs(q.ST - r->ST) < kMergeTol;
      });
      if (!dup) roots.push_back(*r);
    }
  }
  if (roots.empty()) {
    throw Error(ErrorKind::NoConvergence,
                "no equilibrium converged at H = " + csv::format_double(H));
  }
  std::sort(roots.begin(), roots.end(),
            [](const BoxState& a, const BoxState& b) { return a.SN > b.SN; });

  std::vector<EquilibriumPoint> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(make_point(r, H, params));
  if (out.size() == 1) {
    out[0].branch = out[0].gamma(params) >= 0.0 ? BranchLabel::Upper : BranchLabel::Lower;
  } else {
    for (auto& pt : out) pt.branch = BranchLabel::Unstable;
    out.front().branch = BranchLabel::Upper;
    out.back().branch = BranchLabel::Lower;
  }
  return out;
}

std::vector<EquilibriumPoint> equilibrium_sweep(double H_min, double H_max, int steps,
                                                const BoxModelParams& params) {
  if (!(H_min < H_max) || steps < 2) {
    throw Error(ErrorKind::InvalidArgument, "need H_min < H_max and steps >= 2");
  }
  std::vector<std::vector<EquilibriumPoint>> per(static_cast<std::size_t>(steps));
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < steps; ++k) {
    const double H = grid_point(H_min, H_max, k, steps);
    try {
      per[static_cast<std::size_t>(k)] = find_equilibria(H, params);
    } catch (const Error&) {
    }
  }
  std::vector<EquilibriumPoint> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<EquilibriumPoint> equilibrium_sweep_serial(double H_min, double H_max, int steps,
                                                       const BoxModelParams& params) {
  if (!(H_min < H_max) || steps < 2) {
    throw Error(ErrorKind::InvalidArgument, "need H_min < H_max and steps >= 2");
  }
  std::vector<EquilibriumPoint> out;
  for (int k = 0; k < steps; ++k) {
    const double H = grid_point(H_min, H_max, k, steps);
    try {
      auto v = find_equilibria(H, params);
      out.insert(out.end(), v.begin(), v.end());
    } catch (const Error&) {
    }
  }
  return out;
}

std::optional<double> unstable_branch_SN(double H, const BoxModelParams& params) {
  const auto pts = find_equilibria(H, params);
  if (pts.size() < 3) return std::nullopt;
  return pts[1].SN;
}

std::optional<double> locate_hopf(double H_lo, double H_hi, const BoxModelParams& params,
                                  double tol) {
  // Largest real part on the upper branch; nullopt once the branch is gone.
  auto upper_real = [&](double H) -> std::optional<double> {
    const auto pts = find_equilibria(H, params);
    if (pts.empty() || pts.front().branch != BranchLabel::Upper) return std::nullopt;
    return pts.front().max_real();
  };
  auto lo = upper_real(H_lo);
  auto hi = upper_real(H_hi);
  if (!lo || !hi || (*lo < 0.0) == (*hi < 0.0)) return std::nullopt;
  double a = H_lo, b = H_hi;
  const bool lo_neg = *lo < 0.0;
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    const auto v = upper_real(m);
    if (!v) return std::nullopt;
    if ((*v < 0.0) == lo_neg) a = m;
    else b = m;
  }
  // A real eigenvalue through zero is a fold, not a Hopf point.
  const auto at = find_equilibria(0.5 * (a + b), params);
  if (!at.front().complex_pair()) return std::nullopt;
  return 0.5 * (a + b);
}

}  // namespace tipwatch::box
