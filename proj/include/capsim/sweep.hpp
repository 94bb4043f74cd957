#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "capsim/compare.hpp"
#include "capsim/errors.hpp"
#include "capsim/format.hpp"
#include "capsim/integrate.hpp"

namespace capsim {

/// The capital-deepening x job-creation grid experiment: 30 x 30 = 900
/// cells by default, spanning 2%-10% K-L growth and 0.5- to 12-fold job
/// creation, scored by consumption change at the 2050.5 horizon.
struct GridSpec {
  double alpha_min = 0.02;
  double alpha_max = 0.10;
  int alpha_steps = 30;
  double fold_min = 0.5;
  double fold_max = 12.0;
  int fold_steps = 30;
  double horizon = 2050.5;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline void validate(const GridSpec& g) {
  if (g.alpha_steps < 2 || g.fold_steps < 2) {
    throw input_error("grid axes need at least 2 steps");
  }
  if (!(g.alpha_min < g.alpha_max) || !(g.fold_min < g.fold_max)) {
    throw input_error("grid axis minimum must be below maximum");
  }
}

/// Inclusive linspace; both endpoints are reproduced exactly.
inline std::vector<double> grid_axis(double lo, double hi, int steps) {
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    v[static_cast<std::size_t>(i)] = lo + i * (hi - lo) / (steps - 1);
  }
  v.front() = lo;
  v.back() = hi;
  return v;
}

struct CellFailure {
  int alpha_index = 0;
  int fold_index = 0;
  std::string message;
};

/// Grid output: cells in row-major order (alpha outer, fold inner); cells
/// whose run failed are absent. `findings` lists observed violations of the
/// expected response directions rather than suppressing them.
struct SweepResult {
  std::vector<double> alphas;
  std::vector<double> folds;
  std::vector<std::optional<double>> cells;  // pct change of consumption index
  std::vector<CellFailure> failures;
  std::vector<std::string> findings;

  const std::optional<double>& cell(int alpha_index, int fold_index) const {
    return cells[static_cast<std::size_t>(alpha_index) * folds.size() +
                 static_cast<std::size_t>(fold_index)];
  }
};

namespace detail {

/// Expected shape of the response surface, checked cell-wise:
///  - along each alpha row, once a fold achieves non-negative consumption
///    change, every higher fold should too (pass set is an up-set);
///  - along each fold column, consumption change should not rise with alpha.
/// Violations become findings.
inline void collect_findings(SweepResult& r) {
  for (std::size_t ai = 0; ai < r.alphas.size(); ++ai) {
    bool seen_pass = false;
    double pass_fold = 0;
    for (std::size_t fi = 0; fi < r.folds.size(); ++fi) {
      const std::optional<double>& c = r.cell(static_cast<int>(ai), static_cast<int>(fi));
      if (!c) continue;
      if (*c >= 0) {
        if (!seen_pass) pass_fold = r.folds[fi];
        seen_pass = true;
      } else if (seen_pass) {
        r.findings.push_back("alpha = " + format_double(r.alphas[ai]) +
                             ": non-negative consumption change at fold " +
                             format_double(pass_fold) + " but negative again at fold " +
                             format_double(r.folds[fi]));
        break;
      }
    }
  }
  for (std::size_t fi = 0; fi < r.folds.size(); ++fi) {
    bool have_prev = false;
    double prev = 0, prev_alpha = 0;
    for (std::size_t ai = 0; ai < r.alphas.size(); ++ai) {
      const std::optional<double>& c = r.cell(static_cast<int>(ai), static_cast<int>(fi));
      if (!c) continue;
      if (have_prev && *c > prev + 1e-12) {
        r.findings.push_back("fold = " + format_double(r.folds[fi]) +
                             ": consumption change rises from " + format_double(prev) +
                             " to " + format_double(*c) + " between alpha = " +
                             format_double(prev_alpha) + " and alpha = " +
                             format_double(r.alphas[ai]));
        break;
      }
      have_prev = true;
      prev = *c;
      prev_alpha = r.alphas[ai];
    }
  }
}

}  // namespace detail

/// Runs every grid cell against one shared default baseline and scores the
/// percent change of the consumption index at the grid horizon. Cells that
/// hit model domain errors are recorded and skipped; the sweep continues.
inline SweepResult grid_sweep(const Model& model, const GridSpec& grid,
                              const IntegrationConfig& cfg) {
  validate(grid);
  SweepResult result;
  result.alphas = grid_axis(grid.alpha_min, grid.alpha_max, grid.alpha_steps);
  result.folds = grid_axis(grid.fold_min, grid.fold_max, grid.fold_steps);
  result.cells.assign(result.alphas.size() * result.folds.size(), std::nullopt);

  const Trajectory base = simulate(model, baseline_scenario(model.params), cfg);
  const double base_c = sample_at(base, grid.horizon).outputs.consumption_index;

  for (std::size_t ai = 0; ai < result.alphas.size(); ++ai) {
    for (std::size_t fi = 0; fi < result.folds.size(); ++fi) {
      ScenarioSpec cell;
      cell.id = "sweep";
      cell.alpha = result.alphas[ai];
      cell.job_fold = result.folds[fi];
      cell.ramp.t0 = cfg.t_start;
      try {
        const Trajectory run = simulate(model, cell, cfg);
        const double c = sample_at(run, grid.horizon).outputs.consumption_index;
        result.cells[ai * result.folds.size() + fi] = 100.0 * (c - base_c) / base_c;
      } catch (const model_error& e) {
        result.failures.push_back({static_cast<int>(ai), static_cast<int>(fi), e.what()});
      }
    }
  }
  detail::collect_findings(result);
  return result;
}

enum class ThresholdCriterion { all_times, at_window_end };

inline std::string criterion_name(ThresholdCriterion c) {
  return c == ThresholdCriterion::all_times ? "all_times" : "at_window_end";
}

inline ThresholdCriterion criterion_from_name(const std::string& name) {
  if (name == "all_times") return ThresholdCriterion::all_times;
  if (name == "at_window_end") return ThresholdCriterion::at_window_end;
  throw input_error("unknown criterion '" + name +
                    "' (expected all_times or at_window_end)");
}

/// Smallest job-creation fold that keeps scenario consumption from falling
/// below the baseline's over the window.
struct ThresholdQuery {
  double alpha = 0.11;
  double window_lo = 2025.0;
  double window_hi = 2045.0;
  double fold_lo = 1.0;
  double fold_hi = 12.0;
  ThresholdCriterion criterion = ThresholdCriterion::all_times;
  double tolerance = 0.05;
};

inline void validate(const ThresholdQuery& q, const IntegrationConfig& cfg) {
  if (!(q.window_lo < q.window_hi)) throw input_error("threshold window is empty");
  if (q.window_lo < cfg.t_start - 1e-9 || q.window_hi > cfg.t_end + 1e-9) {
    throw input_error("threshold window extends beyond the simulated horizon");
  }
  if (!(q.fold_lo >= 0) || !(q.fold_lo < q.fold_hi)) {
    throw input_error("threshold fold bounds must satisfy 0 <= lo < hi");
  }
  if (!(q.tolerance > 0)) throw input_error("threshold tolerance must be > 0");
}

struct ThresholdResult {
  bool found = false;
  double fold = 0;  // meaningful only when found
  bool monotone = true;
  bool used_linear_scan = false;
  int evaluations = 0;
};

/// Bisection (to the query tolerance, returning the passing end of the final
/// bracket) after an empirical monotonicity pre-scan; if the pre-scan shows
/// the pass set is not an up-set in fold, falls back to a linear scan and
/// says so in the result.
inline ThresholdResult threshold_search(const Model& model, const ThresholdQuery& query,
                                        const IntegrationConfig& cfg) {
  validate(query, cfg);
  const Trajectory base = simulate(model, baseline_scenario(model.params), cfg);
  std::vector<std::size_t> window;
  for (std::size_t i = 0; i < base.samples.size(); ++i) {
    const double t = base.samples[i].state.t;
    if (t >= query.window_lo - 1e-9 && t <= query.window_hi + 1e-9) window.push_back(i);
  }
  if (window.empty()) throw input_error("threshold window contains no recorded samples");
  if (query.criterion == ThresholdCriterion::at_window_end) {
    window.erase(window.begin(), window.end() - 1);
  }

  ThresholdResult result;
  auto passes = [&](double fold) {
    ScenarioSpec sc;
    sc.id = "threshold";
    sc.alpha = query.alpha;
    sc.job_fold = fold;
    sc.ramp.t0 = cfg.t_start;
    const Trajectory run = simulate(model, sc, cfg);
    ++result.evaluations;
    for (std::size_t i : window) {
      if (run.samples[i].outputs.consumption_index <
          base.samples[i].outputs.consumption_index) {
        return false;
      }
    }
    return true;
  };

  const std::vector<double> scan_folds = grid_axis(query.fold_lo, query.fold_hi, 7);
  std::vector<bool> scan(scan_folds.size());
  for (std::size_t i = 0; i < scan_folds.size(); ++i) scan[i] = passes(scan_folds[i]);

  bool seen_pass = false;
  result.monotone = true;
  for (bool ok : scan) {
    if (seen_pass && !ok) result.monotone = false;
    seen_pass = seen_pass || ok;
  }

  if (scan.front()) {
    result.found = true;
    result.fold = query.fold_lo;
    return result;
  }
  if (!scan.back()) {
    result.found = false;
    return result;
  }

  if (result.monotone) {
    std::size_t k = 0;
    while (!scan[k + 1]) ++k;
    double fail = scan_folds[k], pass = scan_folds[k + 1];
    while (pass - fail > query.tolerance) {
      const double mid = 0.5 * (fail + pass);
      if (passes(mid)) {
        pass = mid;
      } else {
        fail = mid;
      }
    }
    result.found = true;
    result.fold = pass;
    return result;
  }

  result.used_linear_scan = true;
  for (double fold = query.fold_lo; fold <= query.fold_hi + 1e-12;
       fold += query.tolerance) {
    if (passes(fold)) {
      result.found = true;
      result.fold = fold;
      return result;
    }
  }
  result.found = false;
  return result;
}

}  // namespace capsim
