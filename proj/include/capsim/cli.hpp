#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capsim/anchors.hpp"
#include "capsim/calibrate.hpp"
#include "capsim/compare.hpp"
#include "capsim/config.hpp"
#include "capsim/csv.hpp"
#include "capsim/ensemble.hpp"
#include "capsim/errors.hpp"
#include "capsim/format.hpp"
#include "capsim/integrate.hpp"
#include "capsim/lhs.hpp"
#include "capsim/sweep.hpp"

namespace capsim {
namespace detail {

inline Method method_from_name(const std::string& name) {
  if (name == "euler") return Method::euler;
  if (name == "rk4") return Method::rk4;
  throw input_error("unknown method '" + name + "' (expected euler or rk4)");
}

inline std::pair<double, double> parse_window(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos) {
    throw input_error("window must be 'lo:hi', got '" + text + "'");
  }
  const double lo = parse_double(text.substr(0, colon));
  const double hi = parse_double(text.substr(colon + 1));
  return {lo, hi};
}

/// metric:scenario:time:value[:weight]
inline CalibrationTarget parse_target(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t colon = text.find(':', begin);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(begin));
      break;
    }
    parts.push_back(text.substr(begin, colon - begin));
    begin = colon + 1;
  }
  if (parts.size() != 4 && parts.size() != 5) {
    throw input_error("target must be 'metric:scenario:time:value[:weight]', got '" +
                      text + "'");
  }
  CalibrationTarget t;
  t.metric = metric_from_name(parts[0]);
  t.scenario_id = parts[1];
  if (t.scenario_id.empty()) throw input_error("target scenario id must not be empty");
  t.time = parse_double(parts[2]);
  t.value = parse_double(parts[3]);
  t.weight = parts.size() == 5 ? parse_double(parts[4]) : 1.0;
  validate(t);
  return t;
}

template <typename WriteFn>
void write_file(const std::string& path, WriteFn write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write '" + path + "'");
  write(out);
  if (!out) throw input_error("failed while writing '" + path + "'");
}

inline std::string bands_path_for(const std::string& summary_path) {
  const std::string suffix = ".csv";
  if (summary_path.size() > suffix.size() &&
      summary_path.compare(summary_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return summary_path.substr(0, summary_path.size() - suffix.size()) + "_bands.csv";
  }
  return summary_path + "_bands.csv";
}

inline void print_summary_report(std::ostream& out, const std::string& scenario,
                                 const std::array<ScenarioDistribution, 3>& dists) {
  for (const ScenarioDistribution& d : dists) {
    out << "scenario " << scenario << ' ' << metric_name(d.metric)
        << ": mean_change = " << format_double(d.mean_abs_change)
        << ", mean_pct = " << format_double(d.mean_pct)
        << ", median_pct = " << format_double(d.median_pct) << ", 95% interval = ["
        << format_double(d.lo95) << ", " << format_double(d.hi95) << "]\n";
    if (const auto ref = reference_summary(scenario, d.metric)) {
      out << "  reference: mean_change = " << format_double(ref->mean_change)
          << ", mean_pct = " << format_double(ref->mean_pct)
          << ", median_pct = " << format_double(ref->median_pct) << ", 95% interval = ["
          << format_double(ref->lo95) << ", " << format_double(ref->hi95) << "]\n";
    }
  }
}

}  // namespace detail

/// Parses arguments (program name excluded) and runs one subcommand.
/// Returns 0 on success, 1 on bad input, 2 on a model domain error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"deterministic stock-flow engine for labour-market capital-deepening "
               "scenarios"};
  app.name("capsim");
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;  // empty = the subcommand's own default
  std::string method = "euler";
  double dt = 1.0 / 32.0;
  auto add_common = [&](CLI::App* sub, const char* default_out) {
    sub->add_option("--config", config_path, "configuration file (defaults built in)");
    sub->add_option("--out", out_path, std::string("output path (default: ") + default_out + ")");
    sub->add_option("--dt", dt, "integration step in years")->capture_default_str();
    sub->add_option("--method", method, "integration scheme: euler or rk4")
        ->capture_default_str();
  };
  auto resolve_out = [&](const char* default_out) {
    return out_path.empty() ? std::string(default_out) : out_path;
  };

  CLI::App* sim = app.add_subcommand("simulate", "run one scenario, write its trajectory");
  std::string sim_scenario = "baseline";
  double sim_alpha = 0, sim_fold = 0;
  int sim_stride = 1;
  add_common(sim, "trajectory.csv");
  sim->add_option("--scenario", sim_scenario, "scenario id")->capture_default_str();
  sim->add_option("--alpha", sim_alpha, "override the scenario's K-L growth rate");
  sim->add_option("--fold", sim_fold, "override the scenario's job-creation fold");
  sim->add_option("--stride", sim_stride, "record every n-th step")->capture_default_str();

  CLI::App* scen = app.add_subcommand(
      "scenarios", "paired ensembles for scenarios a, b, c; summary table");
  int scen_draws = 200;
  std::uint64_t scen_seed = 42;
  add_common(scen, "summary.csv");
  scen->add_option("--draws", scen_draws, "ensemble size")->capture_default_str();
  scen->add_option("--seed", scen_seed, "sampling seed")->capture_default_str();

  CLI::App* sens = app.add_subcommand(
      "sensitivity", "one scenario's uncertainty ensemble; summary plus fan bands");
  std::string sens_scenario = "b";
  std::string sens_bands;
  int sens_draws = 200;
  std::uint64_t sens_seed = 42;
  add_common(sens, "sensitivity_summary.csv");
  sens->add_option("--scenario", sens_scenario, "scenario id")->capture_default_str();
  sens->add_option("--draws", sens_draws, "ensemble size")->capture_default_str();
  sens->add_option("--seed", sens_seed, "sampling seed")->capture_default_str();
  sens->add_option("--bands", sens_bands, "bands output path (default: <out>_bands.csv)");

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "K-L growth x job-fold grid; consumption-change heatmap");
  GridSpec grid;
  add_common(sweep_cmd, "heatmap.csv");
  sweep_cmd->add_option("--alpha-min", grid.alpha_min)->capture_default_str();
  sweep_cmd->add_option("--alpha-max", grid.alpha_max)->capture_default_str();
  sweep_cmd->add_option("--alpha-steps", grid.alpha_steps)->capture_default_str();
  sweep_cmd->add_option("--fold-min", grid.fold_min)->capture_default_str();
  sweep_cmd->add_option("--fold-max", grid.fold_max)->capture_default_str();
  sweep_cmd->add_option("--fold-steps", grid.fold_steps)->capture_default_str();

  CLI::App* thr = app.add_subcommand(
      "threshold", "smallest job-creation fold that protects consumption");
  ThresholdQuery query;
  std::string thr_window = "2025:2045";
  std::string thr_criterion = "all_times";
  add_common(thr, "threshold.json");
  thr->add_option("--alpha", query.alpha, "K-L growth rate under test")
      ->capture_default_str();
  thr->add_option("--window", thr_window, "protection window 'lo:hi'")
      ->capture_default_str();
  thr->add_option("--criterion", thr_criterion, "all_times or at_window_end")
      ->capture_default_str();
  thr->add_option("--fold-min", query.fold_lo)->capture_default_str();
  thr->add_option("--fold-max", query.fold_hi)->capture_default_str();
  thr->add_option("--tolerance", query.tolerance)->capture_default_str();

  CLI::App* cal = app.add_subcommand(
      "calibrate", "fit the onset growth rate to target percent changes");
  std::vector<std::string> cal_targets;
  std::string cal_free = "beta";
  CalibrationOptions cal_options;
  add_common(cal, "calibrated.ini");
  cal->add_option("--target", cal_targets,
                  "metric:scenario:time:value[:weight], repeatable "
                  "(default underutilised_persons:b:2050.5:99.76)");
  cal->add_option("--free", cal_free, "beta or beta_and_converter_scale")
      ->capture_default_str();
  cal->add_option("--beta-lo", cal_options.beta_lo)->capture_default_str();
  cal->add_option("--beta-hi", cal_options.beta_hi)->capture_default_str();
  cal->add_option("--scale-lo", cal_options.scale_lo)->capture_default_str();
  cal->add_option("--scale-hi", cal_options.scale_hi)->capture_default_str();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));

    ModelConfig config =
        config_path.empty() ? ModelConfig{} : load_config_file(config_path);
    IntegrationConfig cfg;
    cfg.dt = dt;
    cfg.method = detail::method_from_name(method);

    if (app.got_subcommand(sim)) {
      ScenarioSpec scenario = find_scenario(config, sim_scenario);
      if (sim->count("--alpha") > 0) scenario.alpha = sim_alpha;
      if (sim->count("--fold") > 0) scenario.job_fold = sim_fold;
      cfg.record_stride = sim_stride;
      const Trajectory tr = simulate(config.model, scenario, cfg);
      const std::string path = resolve_out("trajectory.csv");
      detail::write_file(path, [&](std::ostream& os) { write_trajectory_csv(os, tr); });
      out << "scenario " << scenario.id << ": " << tr.samples.size()
          << " samples -> " << path << '\n';
    } else if (app.got_subcommand(scen)) {
      const LhsDesign design =
          lhs_sample(default_parameter_space(), scen_draws, scen_seed);
      std::vector<SummaryRow> rows;
      out << "draws = " << scen_draws << ", seed = " << scen_seed << '\n';
      for (const std::string& id : {"a", "b", "c"}) {
        const ScenarioSpec scenario = find_scenario(config, id);
        const EnsembleResult ensemble = run_ensemble(
            config.model, scenario, default_parameter_space(), design, cfg);
        const auto dists = summarize(ensemble);
        for (const ScenarioDistribution& d : dists) rows.push_back({id, d});
        out << "scenario " << id << ": " << ensemble.failures.size() << " of "
            << ensemble.draws << " draws failed\n";
        detail::print_summary_report(out, id, dists);
      }
      const std::string path = resolve_out("summary.csv");
      detail::write_file(path, [&](std::ostream& os) { write_summary_csv(os, rows); });
      out << "summary -> " << path << '\n';
    } else if (app.got_subcommand(sens)) {
      const ScenarioSpec scenario = find_scenario(config, sens_scenario);
      const LhsDesign design =
          lhs_sample(default_parameter_space(), sens_draws, sens_seed);
      const EnsembleResult ensemble = run_ensemble(
          config.model, scenario, default_parameter_space(), design, cfg);
      const auto dists = summarize(ensemble);
      std::vector<SummaryRow> rows;
      for (const ScenarioDistribution& d : dists) rows.push_back({scenario.id, d});
      const std::string path = resolve_out("sensitivity_summary.csv");
      detail::write_file(path, [&](std::ostream& os) { write_summary_csv(os, rows); });
      const std::string bands_path =
          sens_bands.empty() ? detail::bands_path_for(path) : sens_bands;
      const auto band_series = bands(ensemble);
      detail::write_file(bands_path, [&](std::ostream& os) {
        write_bands_csv(os, ensemble.times, band_series);
      });
      out << "draws = " << sens_draws << ", seed = " << sens_seed << ", failed = "
          << ensemble.failures.size() << '\n';
      detail::print_summary_report(out, scenario.id, dists);
      out << "summary -> " << path << "\nbands -> " << bands_path << '\n';
    } else if (app.got_subcommand(sweep_cmd)) {
      const SweepResult result = grid_sweep(config.model, grid, cfg);
      const std::string path = resolve_out("heatmap.csv");
      detail::write_file(path,
                         [&](std::ostream& os) { write_heatmap_csv(os, result); });
      out << result.alphas.size() << " x " << result.folds.size() << " cells, "
          << result.failures.size() << " failed -> " << path << '\n';
      for (const std::string& finding : result.findings) {
        out << "finding: " << finding << '\n';
      }
    } else if (app.got_subcommand(thr)) {
      const auto window = detail::parse_window(thr_window);
      query.window_lo = window.first;
      query.window_hi = window.second;
      query.criterion = criterion_from_name(thr_criterion);
      const ThresholdResult result = threshold_search(config.model, query, cfg);
      const std::string path = resolve_out("threshold.json");
      detail::write_file(path,
                         [&](std::ostream& os) { write_threshold_json(os, query, result); });
      if (result.found) {
        out << "minimal fold = " << format_double(result.fold) << " (reference "
            << format_double(kReferenceThresholdFold) << ")\n";
      } else {
        out << "no fold within [" << format_double(query.fold_lo) << ", "
            << format_double(query.fold_hi) << "] satisfies the criterion (reference "
            << format_double(kReferenceThresholdFold) << ")\n";
      }
      if (!result.monotone) {
        out << "note: pass set was not monotone in fold; linear scan used\n";
      }
      out << "result -> " << path << '\n';
    } else if (app.got_subcommand(cal)) {
      std::vector<CalibrationTarget> targets;
      for (const std::string& t : cal_targets) targets.push_back(detail::parse_target(t));
      if (targets.empty()) targets.push_back(CalibrationTarget{});
      if (cal_free == "beta") {
        cal_options.free = FreeParameters::beta;
      } else if (cal_free == "beta_and_converter_scale") {
        cal_options.free = FreeParameters::beta_and_converter_scale;
      } else {
        throw input_error("unknown --free value '" + cal_free +
                          "' (expected beta or beta_and_converter_scale)");
      }
      const CalibrationResult result =
          calibrate(config.model, config.scenarios, targets, cal_options, cfg);
      ModelConfig adjusted = config;
      adjusted.model = result.model;
      const std::string path = resolve_out("calibrated.ini");
      detail::write_file(path,
                         [&](std::ostream& os) { os << emit_config(adjusted); });
      out << "beta = " << format_double(result.model.params.onset_growth)
          << ", onset scale = " << format_double(result.onset_scale)
          << ", objective = " << format_double(result.objective)
          << ", evaluations = " << result.evaluations << '\n';
      if (result.at_boundary) {
        out << "warning: solution sits at a search bound; widen the bounds to improve\n";
      }
      const Trajectory base =
          simulate(result.model, baseline_scenario(result.model.params), cfg);
      for (const CalibrationTarget& t : targets) {
        const Trajectory run =
            simulate(result.model, find_scenario(adjusted, t.scenario_id), cfg);
        const double achieved =
            summary_for(compare_at(base, run, t.time), t.metric).pct_change;
        out << "target " << metric_name(t.metric) << ' ' << t.scenario_id << " @ "
            << format_double(t.time) << ": achieved " << format_double(achieved)
            << " (target " << format_double(t.value) << ")\n";
      }
      out << "adjusted config -> " << path << '\n';
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const input_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const model_error& e) {
    err << "model error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace capsim
