#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "capsim/errors.hpp"
#include "capsim/integrate.hpp"

namespace capsim {

/// The three headline outputs scenario runs are compared on.
enum class Metric { income_pc, consumption_index, underutilised_persons };

inline constexpr std::array<Metric, 3> kMetrics = {
    Metric::income_pc, Metric::consumption_index, Metric::underutilised_persons};

inline std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::income_pc: return "income_pc";
    case Metric::consumption_index: return "consumption_index";
    case Metric::underutilised_persons: return "underutilised_persons";
  }
  return "";
}

inline Metric metric_from_name(std::string_view name) {
  for (Metric m : kMetrics) {
    if (metric_name(m) == name) return m;
  }
  throw input_error("unknown metric '" + std::string(name) +
                    "' (expected income_pc, consumption_index or underutilised_persons)");
}

inline double metric_value(const TrajectorySample& s, Metric m) {
  switch (m) {
    case Metric::income_pc: return s.outputs.income_pc;
    case Metric::consumption_index: return s.outputs.consumption_index;
    case Metric::underutilised_persons: return s.state.u;
  }
  return 0;
}

/// One comparison row in the shape of the published summary table.
///
/// Sign convention follows that table's mixed presentation: for income and
/// consumption the change is a reduction (positive = scenario below
/// baseline); for underutilised persons it is an increase (positive =
/// scenario above baseline).
struct ComparisonSummary {
  Metric metric = Metric::income_pc;
  double baseline_value = 0;
  double scenario_value = 0;
  double abs_change = 0;
  double pct_change = 0;
};

/// Runs the scenario and the default baseline on identical time grids.
/// The baseline keeps the model's own K-L growth rate and an unchanged
/// job-creation rate.
inline std::pair<Trajectory, Trajectory> run_pair(const Model& model,
                                                  const ScenarioSpec& scenario,
                                                  const IntegrationConfig& cfg) {
  return {simulate(model, baseline_scenario(model.params), cfg),
          simulate(model, scenario, cfg)};
}

/// Scenario-vs-baseline changes in the three metrics at one recorded time.
/// Both trajectories must contain a sample at exactly that time.
inline std::array<ComparisonSummary, 3> compare_at(const Trajectory& baseline,
                                                   const Trajectory& scenario,
                                                   double t) {
  const TrajectorySample& b = sample_at(baseline, t);
  const TrajectorySample& s = sample_at(scenario, t);
  std::array<ComparisonSummary, 3> out;
  for (std::size_t i = 0; i < kMetrics.size(); ++i) {
    const Metric m = kMetrics[i];
    ComparisonSummary& row = out[i];
    row.metric = m;
    row.baseline_value = metric_value(b, m);
    row.scenario_value = metric_value(s, m);
    row.abs_change = m == Metric::underutilised_persons
                         ? row.scenario_value - row.baseline_value
                         : row.baseline_value - row.scenario_value;
    row.pct_change =
        row.baseline_value != 0 ? 100.0 * row.abs_change / row.baseline_value : 0.0;
  }
  return out;
}

inline const ComparisonSummary& summary_for(const std::array<ComparisonSummary, 3>& rows,
                                            Metric m) {
  for (const ComparisonSummary& r : rows) {
    if (r.metric == m) return r;
  }
  throw input_error("metric missing from comparison rows");
}

}  // namespace capsim
