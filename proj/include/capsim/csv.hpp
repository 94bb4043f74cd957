#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "capsim/compare.hpp"
#include "capsim/ensemble.hpp"
#include "capsim/format.hpp"
#include "capsim/integrate.hpp"
#include "capsim/sweep.hpp"

namespace capsim {

/// All emitters write LF-terminated lines and shortest round-trip numbers,
/// so identical inputs give byte-identical files on every platform.

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,P,U,O,K,MFP,price_level,income_pc,consumption_index\n";
  for (const TrajectorySample& s : tr.samples) {
    os << format_double(s.state.t) << ',' << format_double(s.state.p) << ','
       << format_double(s.state.u) << ',' << format_double(s.state.o) << ','
       << format_double(s.state.k) << ',' << format_double(s.state.m_level) << ','
       << format_double(s.outputs.price_level) << ','
       << format_double(s.outputs.income_pc) << ','
       << format_double(s.outputs.consumption_index) << '\n';
  }
}

/// One labelled row of the scenario summary table.
struct SummaryRow {
  std::string scenario;
  ScenarioDistribution stats;
};

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "scenario,metric,mean_reduction,mean_pct,median_pct,uncertainty_lo95,"
        "uncertainty_hi95\n";
  for (const SummaryRow& r : rows) {
    os << r.scenario << ',' << metric_name(r.stats.metric) << ','
       << format_double(r.stats.mean_abs_change) << ',' << format_double(r.stats.mean_pct)
       << ',' << format_double(r.stats.median_pct) << ',' << format_double(r.stats.lo95)
       << ',' << format_double(r.stats.hi95) << '\n';
  }
}

inline void write_bands_csv(std::ostream& os, const std::vector<double>& times,
                            const std::array<BandSeries, 3>& series) {
  os << "t,metric,p2_5,p25,median,p75,p97_5\n";
  for (const BandSeries& band : series) {
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      const DistributionSummary& d = band.at_time[ti];
      os << format_double(times[ti]) << ',' << metric_name(band.metric) << ','
         << format_double(d.p2_5) << ',' << format_double(d.p25) << ','
         << format_double(d.median) << ',' << format_double(d.p75) << ','
         << format_double(d.p97_5) << '\n';
    }
  }
}

/// Cells that failed to run serialize as an empty final field.
inline void write_heatmap_csv(std::ostream& os, const SweepResult& sweep) {
  os << "alpha,fold,pct_change_consumption\n";
  for (std::size_t ai = 0; ai < sweep.alphas.size(); ++ai) {
    for (std::size_t fi = 0; fi < sweep.folds.size(); ++fi) {
      os << format_double(sweep.alphas[ai]) << ',' << format_double(sweep.folds[fi])
         << ',';
      const auto& cell = sweep.cell(static_cast<int>(ai), static_cast<int>(fi));
      if (cell) os << format_double(*cell);
      os << '\n';
    }
  }
}

inline void write_threshold_json(std::ostream& os, const ThresholdQuery& query,
                                 const ThresholdResult& result) {
  nlohmann::json j;
  j["alpha"] = query.alpha;
  j["window"] = {query.window_lo, query.window_hi};
  j["criterion"] = criterion_name(query.criterion);
  j["found"] = result.found;
  if (result.found) {
    j["fold"] = result.fold;
  } else {
    j["fold"] = nullptr;
  }
  os << j.dump(2) << '\n';
}

}  // namespace capsim
