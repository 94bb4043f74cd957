#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "capsim/compare.hpp"
#include "capsim/errors.hpp"
#include "capsim/integrate.hpp"
#include "capsim/lhs.hpp"

namespace capsim {

/// Linear-interpolated empirical percentile (rank h = (n-1)*p between the
/// closest order statistics). Input must be sorted ascending, p in [0, 1].
inline double percentile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw input_error("percentile of an empty sample");
  const std::size_t n = sorted.size();
  const double h = (static_cast<double>(n) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

/// Descriptive summary of one sampled quantity.
struct DistributionSummary {
  double mean = 0;
  double p2_5 = 0;
  double p25 = 0;
  double median = 0;
  double p75 = 0;
  double p97_5 = 0;
};

inline DistributionSummary summarize_values(std::vector<double> values) {
  if (values.empty()) throw input_error("cannot summarize an empty sample");
  std::sort(values.begin(), values.end());
  double sum = 0;
  for (double v : values) sum += v;
  DistributionSummary s;
  s.mean = sum / static_cast<double>(values.size());
  s.p2_5 = percentile_sorted(values, 0.025);
  s.p25 = percentile_sorted(values, 0.25);
  s.median = percentile_sorted(values, 0.5);
  s.p75 = percentile_sorted(values, 0.75);
  s.p97_5 = percentile_sorted(values, 0.975);
  return s;
}

/// One successful draw: the sampled parameters and the horizon comparison.
struct DrawOutcome {
  int index = 0;
  Parameters params;
  std::array<ComparisonSummary, 3> at_horizon;
};

/// A draw whose baseline or scenario run hit a model domain error.
struct DrawFailure {
  int index = 0;
  std::string message;
};

/// Paired ensemble output: per-draw horizon comparisons plus the scenario
/// runs' full time series of the three metrics (for band export).
struct EnsembleResult {
  int draws = 0;
  std::vector<double> times;
  std::vector<DrawOutcome> successes;
  std::vector<DrawFailure> failures;
  /// scenario_series[m][j][ti]: metric kMetrics[m], j-th success, time index ti.
  std::array<std::vector<std::vector<double>>, 3> scenario_series;
};

/// Runs baseline and scenario for every draw of the design, with that draw's
/// parameters applied to both runs (paired design: the uncertain parameters
/// move the baseline too). Draws whose runs raise model domain errors are
/// recorded as failures and excluded from summaries; bad inputs (an invalid
/// space or parameters outside their legal ranges) propagate instead.
inline EnsembleResult run_ensemble(const Model& model, const ScenarioSpec& scenario,
                                   const ParameterSpace& space, const LhsDesign& design,
                                   const IntegrationConfig& cfg) {
  validate(space);
  EnsembleResult out;
  out.draws = design.n;
  for (int i = 0; i < design.n; ++i) {
    Model draw_model = model;
    draw_model.params = apply_draw(model.params, space, design, i);
    try {
      const Trajectory base = simulate(draw_model, baseline_scenario(draw_model.params), cfg);
      const Trajectory scen = simulate(draw_model, scenario, cfg);
      DrawOutcome ok;
      ok.index = i;
      ok.params = draw_model.params;
      ok.at_horizon = compare_at(base, scen, cfg.t_end);
      if (out.times.empty()) {
        out.times.reserve(scen.samples.size());
        for (const TrajectorySample& s : scen.samples) out.times.push_back(s.state.t);
      }
      for (std::size_t m = 0; m < kMetrics.size(); ++m) {
        std::vector<double> series;
        series.reserve(scen.samples.size());
        for (const TrajectorySample& s : scen.samples) {
          series.push_back(metric_value(s, kMetrics[m]));
        }
        out.scenario_series[m].push_back(std::move(series));
      }
      out.successes.push_back(std::move(ok));
    } catch (const model_error& e) {
      out.failures.push_back({i, e.what()});
    }
  }
  return out;
}

/// Horizon-change distribution per metric, in the published table's shape.
struct ScenarioDistribution {
  Metric metric = Metric::income_pc;
  double mean_abs_change = 0;  // mean absolute change vs baseline
  double mean_pct = 0;         // mean percent change
  double median_pct = 0;
  double lo95 = 0;             // 2.5th percentile of percent change
  double hi95 = 0;             // 97.5th percentile of percent change
};

inline std::array<ScenarioDistribution, 3> summarize(const EnsembleResult& ensemble) {
  if (ensemble.successes.empty()) {
    throw input_error("no successful draws to summarize");
  }
  std::array<ScenarioDistribution, 3> out;
  for (std::size_t m = 0; m < kMetrics.size(); ++m) {
    std::vector<double> abs_changes, pct_changes;
    abs_changes.reserve(ensemble.successes.size());
    pct_changes.reserve(ensemble.successes.size());
    for (const DrawOutcome& d : ensemble.successes) {
      const ComparisonSummary& row = summary_for(d.at_horizon, kMetrics[m]);
      abs_changes.push_back(row.abs_change);
      pct_changes.push_back(row.pct_change);
    }
    const DistributionSummary abs_s = summarize_values(abs_changes);
    const DistributionSummary pct_s = summarize_values(pct_changes);
    out[m].metric = kMetrics[m];
    out[m].mean_abs_change = abs_s.mean;
    out[m].mean_pct = pct_s.mean;
    out[m].median_pct = pct_s.median;
    out[m].lo95 = pct_s.p2_5;
    out[m].hi95 = pct_s.p97_5;
  }
  return out;
}

/// Fan-chart bands: the distribution of each metric's absolute scenario
/// value at every recorded time.
struct BandSeries {
  Metric metric = Metric::income_pc;
  std::vector<DistributionSummary> at_time;  // aligned with EnsembleResult::times
};

inline std::array<BandSeries, 3> bands(const EnsembleResult& ensemble) {
  if (ensemble.successes.empty()) {
    throw input_error("no successful draws to summarize");
  }
  std::array<BandSeries, 3> out;
  for (std::size_t m = 0; m < kMetrics.size(); ++m) {
    out[m].metric = kMetrics[m];
    out[m].at_time.reserve(ensemble.times.size());
    for (std::size_t ti = 0; ti < ensemble.times.size(); ++ti) {
      std::vector<double> values;
      values.reserve(ensemble.scenario_series[m].size());
      for (const std::vector<double>& series : ensemble.scenario_series[m]) {
        values.push_back(series[ti]);
      }
      out[m].at_time.push_back(summarize_values(values));
    }
  }
  return out;
}

}  // namespace capsim
