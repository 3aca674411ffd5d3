#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tipwatch/arma.hpp"
#include "tipwatch/csv.hpp"
#include "tipwatch/series.hpp"

namespace tipwatch::upsilon {

enum class SearchMode { Exhaustive, Stepwise };

struct SelectionConfig {
  int p_max = 5;
  int q_max = 5;
  int d_max = 2;
  std::size_t tau = 350;
  std::size_t stride = 1;
  /// |dBIC| above which a window is flagged significant (annotation only).
  double delta_bic_significance = 2.0;
  /// Drop pure moving-average candidates (p = 0, q >= 1).
  bool exclude_pure_ma = false;
  /// Penalise sigma^2 as an extra parameter in the BIC.
  bool count_sigma2 = false;
  SearchMode search = SearchMode::Exhaustive;
  /// Random simplex restarts per candidate fit.
  int restarts = 2;
  /// Seeds the per-window optimiser streams.
  std::uint64_t seed = 0;

  /// Throws InvalidArgument on an unusable configuration.
  void validate() const;
};

enum class BaseModel { Arma00, Arma10 };
std::string_view to_string(BaseModel base) noexcept;

/// One row of the candidate table.
struct Candidate {
  int p = 0;
  int q = 0;
  double bic = 0.0;
  bool admissible = false;
  bool converged = false;
  /// Fit could not be attempted (too short, degenerate, ...).
  bool failed = false;
};

struct Selection {
  int d = 0;
  std::size_t fitted_length = 0;
  arma::FittedArma best;
  /// Always holds the (0,0) and (1,0) fits; the latter may be inadmissible.
  arma::FittedArma base00;
  std::optional<arma::FittedArma> base10;
  std::vector<Candidate> table;
};

struct UpsilonValue {
  double upsilon = 0.0;
  double delta_bic0 = 0.0;
  double delta_bic1 = 0.0;
  BaseModel base_used = BaseModel::Arma00;
  /// |dBIC| against the base model actually used.
  double min_abs_delta = 0.0;
};

/**
 * Choose d by KPSS, fit every (p,q) candidate on the d-differenced window and
 * return the BIC minimiser among admissible, converged fits. Ties go to the
 * smaller p + q, then smaller q, then smaller p.
 */
Selection select_best(std::span<const double> window, const SelectionConfig& config,
                      std::uint64_t stream = 0);

/// Ordering used to break BIC ties; true when a is preferred over b.
bool preferred(const Candidate& a, const Candidate& b) noexcept;

/**
 * Extended-base-class indicator: 1 - exp(-min(|dBIC0|, |dBIC1|) / tau), falling back
 * to dBIC0 alone when the (1,0) fit is inadmissible.
 */
UpsilonValue upsilon_value(double bic00, double bic10, bool arma10_admissible, double bic_best,
                           std::size_t tau);
UpsilonValue upsilon_value(const Selection& selection, std::size_t tau);

struct OrderPersistence {
  int order = 0;
  double persistence = 0.0;
};

/// O = p + q and R = sum |phi_i| + sum |theta_j|.
OrderPersistence order_persistence(const arma::ArmaModel& model);

struct WindowResult {
  double end_time = 0.0;
  std::size_t window_index = 0;
  int d = 0;
  int p = 0;
  int q = 0;
  std::vector<double> phi;
  std::vector<double> theta;
  double nu = 0.0;
  double sigma2 = 0.0;
  double delta_bic0 = 0.0;
  double delta_bic1 = 0.0;
  BaseModel base_used = BaseModel::Arma00;
  bool arma10_admissible = true;
  double upsilon = 0.0;
  int order = 0;
  double persistence = 0.0;
  bool significant = false;
  double variance = 0.0;
  double autocorr_lag1 = 0.0;
  /// "OK" or the name of the error that stopped this window.
  std::string status = "OK";

  [[nodiscard]] bool ok() const noexcept { return status == "OK"; }
};

/// Evaluate a single window (selection, indicator, classical statistics).
WindowResult evaluate_window(const TimeSeries& series, const Window& window,
                             std::size_t window_index, const SelectionConfig& config);

/**
 * Sweep every window of the series with OpenMP. Window failures become rows with
 * status != "OK". Output equals run_indicator_serial bit for bit.
 */
std::vector<WindowResult> run_indicator(const TimeSeries& series, const SelectionConfig& config);

/// Reference single-threaded sweep.
std::vector<WindowResult> run_indicator_serial(const TimeSeries& series,
                                               const SelectionConfig& config);

/// Restrict a sweep to windows whose end time lies in [t_begin, t_end].
std::vector<WindowResult> run_indicator_range(const TimeSeries& series,
                                              const SelectionConfig& config, double t_begin,
                                              double t_end);

/// Columns: end_time, d, p, q, delta_bic0, delta_bic1, base_used, upsilon, order,
/// persistence, significant, variance, autocorr_lag1, status.
csv::Table to_table(const std::vector<WindowResult>& results);

}  // namespace tipwatch::upsilon
