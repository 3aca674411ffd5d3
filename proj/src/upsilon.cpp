#include "tipwatch/upsilon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "tipwatch/classical.hpp"
#include "tipwatch/error.hpp"
#include "tipwatch/rng.hpp"
#include "tipwatch/stationarity.hpp"

namespace tipwatch::upsilon {
namespace {

using Key = std::pair<int, int>;

class CandidateFitter {
 public:
  CandidateFitter(std::span<const double> data, const SelectionConfig& config, std::uint64_t stream)
      : data_(data), config_(config), stream_(stream) {}

  // Fit once; later requests reuse the stored result.
  const Candidate& get(int p, int q) {
    const Key key{p, q};
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    Candidate c;
    c.p = p;
    c.q = q;
    try {
      arma::FitOptions opt;
      opt.restarts = config_.restarts;
      opt.seed = derive_seed(config_.seed, {stream_});
      opt.count_sigma2 = config_.count_sigma2;
      for (Key lower : {Key{p - 1, q}, Key{p, q - 1}}) {
        if (auto f = fits_.find(lower); f != fits_.end()) opt.warm_starts.push_back(f->second.model);
      }
      auto fitted = arma::fit(data_, p, q, opt);
      c.bic = fitted.bic;
      c.admissible = fitted.admissible;
      c.converged = fitted.converged;
      fits_.emplace(key, std::move(fitted));
    } catch (const Error&) {
      c.failed = true;
      c.bic = std::numeric_limits<double>::infinity();
    }
    return table_.emplace(key, c).first->second;
  }

  [[nodiscard]] const arma::FittedArma* fitted(int p, int q) const {
    auto it = fits_.find({p, q});
    return it == fits_.end() ? nullptr : &it->second;
  }

  [[nodiscard]] std::vector<Candidate> table() const {
    std::vector<Candidate> out;
    out.reserve(table_.size());
    for (const auto& [key, c] : table_) out.push_back(c);
    return out;
  }

 private:
  std::span<const double> data_;
  const SelectionConfig& config_;
  std::uint64_t stream_;
  std::map<Key, Candidate> table_;
  std::map<Key, arma::FittedArma> fits_;
};

bool usable(const Candidate& c, const SelectionConfig& config) {
  if (c.failed || !c.admissible || !c.converged) return false;
  return !(config.exclude_pure_ma && c.p == 0 && c.q >= 1);
}

bool better(const Candidate& a, const Candidate& b) {
  if (a.bic != b.bic) return a.bic < b.bic;
  return preferred(a, b);
}

}  // namespace

void SelectionConfig::validate() const {
  if (p_max < 1) throw Error(ErrorKind::InvalidArgument, "p_max must be >= 1");
  if (q_max < 0) throw Error(ErrorKind::InvalidArgument, "q_max must be >= 0");
  if (d_max < 0 || d_max > 2) throw Error(ErrorKind::InvalidArgument, "d_max must be 0, 1 or 2");
  if (tau < 20) throw Error(ErrorKind::InvalidArgument, "tau must be >= 20");
  if (stride < 1) throw Error(ErrorKind::InvalidArgument, "stride must be >= 1");
  if (restarts < 0) throw Error(ErrorKind::InvalidArgument, "restarts must be >= 0");
}

std::string_view to_string(BaseModel base) noexcept {
  return base == BaseModel::Arma00 ? "ARMA00" : "ARMA10";
}

bool preferred(const Candidate& a, const Candidate& b) noexcept {
  if (a.p + a.q != b.p + b.q) return a.p + a.q < b.p + b.q;
  if (a.q != b.q) return a.q < b.q;
  return a.p < b.p;
}

Selection select_best(std::span<const double> window, const SelectionConfig& config,
                      std::uint64_t stream) {
  config.validate();
  if (arma::is_degenerate(window)) throw Error(ErrorKind::DegenerateInput, "window is constant");

  Selection sel;
  sel.d = stationarity::choose_d(window, config.d_max);
  const auto y = difference(window, static_cast<std::size_t>(sel.d));
  if (arma::is_degenerate(y)) {
    throw Error(ErrorKind::DegenerateInput, "differenced window is constant");
  }
  sel.fitted_length = y.size();

  CandidateFitter fitter(y, config, stream);
  fitter.get(0, 0);
  fitter.get(1, 0);

  if (config.search == SearchMode::Exhaustive) {
    // Increasing total order so lower-order optima can seed their neighbours.
    for (int k = 0; k <= config.p_max + config.q_max; ++k)
      for (int q = std::max(0, k - config.p_max); q <= std::min(k, config.q_max); ++q) {
        const int p = k - q;
        if (config.exclude_pure_ma && p == 0 && q >= 1) continue;
        fitter.get(p, q);
      }
  } else {
    const Key seeds[] = {{2, 2}, {0, 0}, {1, 0}, {0, 1}};
    std::optional<Candidate> current;
    for (auto [p, q] : seeds) {
      p = std::min(p, config.p_max);
      q = std::min(q, config.q_max);
      if (config.exclude_pure_ma && p == 0 && q >= 1) continue;
      const auto& c = fitter.get(p, q);
      if (usable(c, config) && (!current || better(c, *current))) current = c;
    }
    bool moved = current.has_value();
    while (moved) {
      moved = false;
      const int p0 = current->p;
      const int q0 = current->q;
      for (int dp = -1; dp <= 1; ++dp)
        for (int dq = -1; dq <= 1; ++dq) {
          const int p = p0 + dp;
          const int q = q0 + dq;
          if ((dp == 0 && dq == 0) || p < 0 || q < 0 || p > config.p_max || q > config.q_max) continue;
          if (config.exclude_pure_ma && p == 0 && q >= 1) continue;
          const auto& c = fitter.get(p, q);
          if (usable(c, config) && better(c, *current)) {
            current = c;
            moved = true;
          }
        }
    }
  }

  sel.table = fitter.table();
  const Candidate* best = nullptr;
  for (const auto& c : sel.table) {
    if (!usable(c, config)) continue;
    if (!best || better(c, *best)) best = &c;
  }
  if (!best) throw Error(ErrorKind::AllCandidatesFailed, "no admissible candidate");
  sel.best = *fitter.fitted(best->p, best->q);
  sel.best.d = sel.d;

  const auto* f00 = fitter.fitted(0, 0);
  if (!f00) throw Error(ErrorKind::AllCandidatesFailed, "ARMA(0,0) fit failed");
  sel.base00 = *f00;
  sel.base00.d = sel.d;
  if (const auto* f10 = fitter.fitted(1, 0)) {
    sel.base10 = *f10;
    sel.base10->d = sel.d;
  }
  return sel;
}

UpsilonValue upsilon_value(double bic00, double bic10, bool arma10_admissible, double bic_best,
                           std::size_t tau) {
  UpsilonValue v;
  v.delta_bic0 = bic00 - bic_best;
  v.delta_bic1 = bic10 - bic_best;
  const double a0 = std::abs(v.delta_bic0);
  const double a1 = std::abs(v.delta_bic1);
  if (!arma10_admissible || !std::isfinite(a1) || a0 <= a1) {
    v.base_used = BaseModel::Arma00;
    v.min_abs_delta = a0;
  } else {
    v.base_used = BaseModel::Arma10;
    v.min_abs_delta = a1;
  }
  v.upsilon = -std::expm1(-v.min_abs_delta / static_cast<double>(tau));
  return v;
}

UpsilonValue upsilon_value(const Selection& selection, std::size_t tau) {
  const bool have10 = selection.base10.has_value();
  const double bic10 = have10 ? selection.base10->bic : std::numeric_limits<double>::infinity();
  const bool adm10 = have10 && selection.base10->admissible && selection.base10->converged;
  return upsilon_value(selection.base00.bic, bic10, adm10, selection.best.bic, tau);
}

OrderPersistence order_persistence(const arma::ArmaModel& model) {
  OrderPersistence op;
  op.order = model.p() + model.q();
  for (double v : model.phi) op.persistence += std::abs(v);
  for (double v : model.theta) op.persistence += std::abs(v);
  return op;
}

WindowResult evaluate_window(const TimeSeries& series, const Window& window,
                             std::size_t window_index, const SelectionConfig& config) {
  WindowResult row;
  row.end_time = window_end_time(series, window);
  row.window_index = window_index;
  const auto values = window_values(series, window);
  try {
    row.variance = classical::window_variance(values);
    row.autocorr_lag1 = classical::window_autocorr(values, 1);
    const auto sel = select_best(values, config, window_index);
    const auto uv = upsilon_value(sel, config.tau);
    const auto op = order_persistence(sel.best.model);
    row.d = sel.d;
    row.p = sel.best.p();
    row.q = sel.best.q();
    row.phi = sel.best.model.phi;
    row.theta = sel.best.model.theta;
    row.nu = sel.best.model.nu;
    row.sigma2 = sel.best.model.sigma2;
    row.delta_bic0 = uv.delta_bic0;
    row.delta_bic1 = uv.delta_bic1;
    row.base_used = uv.base_used;
    row.arma10_admissible = sel.base10 && sel.base10->admissible;
    row.upsilon = uv.upsilon;
    row.order = op.order;
    row.persistence = op.persistence;
    row.significant = uv.min_abs_delta > config.delta_bic_significance;
  } catch (const Error& e) {
    row.status = std::string(to_string(e.kind()));
  } catch (const std::exception&) {
    row.status = "InternalError";
  }
  return row;
}

std::vector<WindowResult> run_indicator(const TimeSeries& series, const SelectionConfig& config) {
  config.validate();
  const auto ws = windows(series, config.tau, config.stride);
  std::vector<WindowResult> results(ws.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < ws.size(); ++i) results[i] = evaluate_window(series, ws[i], i, config);
  return results;
}

std::vector<WindowResult> run_indicator_serial(const TimeSeries& series,
                                               const SelectionConfig& config) {
  config.validate();
  const auto ws = windows(series, config.tau, config.stride);
  std::vector<WindowResult> results;
  results.reserve(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) results.push_back(evaluate_window(series, ws[i], i, config));
  return results;
}

std::vector<WindowResult> run_indicator_range(const TimeSeries& series,
                                              const SelectionConfig& config, double t_begin,
                                              double t_end) {
  config.validate();
  const auto ws = windows(series, config.tau, config.stride);
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const double t = window_end_time(series, ws[i]);
    if (t >= t_begin && t <= t_end) picked.push_back(i);
  }
  std::vector<WindowResult> results(picked.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < picked.size(); ++k) {
    results[k] = evaluate_window(series, ws[picked[k]], picked[k], config);
  }
  return results;
}

csv::Table to_table(const std::vector<WindowResult>& results) {
  using csv::format_double;
  csv::Table table;
  table.header = {"end_time", "d",           "p",          "q",           "delta_bic0",
                  "delta_bic1", "base_used", "upsilon",    "order",       "persistence",
                  "significant", "variance", "autocorr_lag1", "status"};
  table.rows.reserve(results.size());
  for (const auto& r : results) {
    if (r.ok()) {
      table.rows.push_back({format_double(r.end_time), std::to_string(r.d), std::to_string(r.p),
                            std::to_string(r.q), format_double(r.delta_bic0),
                            format_double(r.delta_bic1), std::string(to_string(r.base_used)),
                            format_double(r.upsilon), std::to_string(r.order),
                            format_double(r.persistence), r.significant ? "1" : "0",
                            format_double(r.variance), format_double(r.autocorr_lag1), r.status});
    } else {
      table.rows.push_back({format_double(r.end_time), "", "", "", "nan", "nan", "", "nan", "",
                            "nan", "0", format_double(r.variance),
                            format_double(r.autocorr_lag1), r.status});
    }
  }
  return table;
}

}  // namespace tipwatch::upsilon
