#include <catch2/catch_amalgamated.hpp>

#include <capsim/compare.hpp>
#include <capsim/ensemble.hpp>
#include <capsim/errors.hpp>
#include <capsim/lhs.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace capsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ScenarioSpec scenario_b() { return standard_scenarios()[1]; }

ParameterSpace degenerate_space() {
  const Parameters base;
  return {{{"lambda", base.job_creation_rate, base.job_creation_rate},
           {"omega", base.price_affected_share, base.price_affected_share},
           {"beta", base.onset_growth, base.onset_growth},
           {"r", base.underemployed_per_unemployed, base.underemployed_per_unemployed}}};
}

}  // namespace

TEST_CASE("percentiles of hand-checkable samples", "[ensemble]") {
  const DistributionSummary s = summarize_values({1.0, 2.0, 3.0, 4.0, 100.0});
  REQUIRE(s.mean == 22.0);
  REQUIRE(s.median == 3.0);

  std::vector<double> centuria(100);
  std::iota(centuria.begin(), centuria.end(), 1.0);
  const DistributionSummary c = summarize_values(centuria);
  REQUIRE(c.mean == 50.5);
  REQUIRE(c.median == 50.5);

  std::vector<double> two_hundred(200);
  std::iota(two_hundred.begin(), two_hundred.end(), 1.0);
  const DistributionSummary t = summarize_values(two_hundred);
  // rank h = 199 * 0.025 = 4.975 between the 5th and 6th order statistics.
  REQUIRE_THAT(t.p2_5, WithinAbs(5.975, 1e-12));
  REQUIRE_THAT(t.p97_5, WithinAbs(195.025, 1e-12));

  const DistributionSummary one = summarize_values({7.25});
  REQUIRE(one.mean == 7.25);
  REQUIRE(one.p2_5 == 7.25);
  REQUIRE(one.median == 7.25);
  REQUIRE(one.p97_5 == 7.25);
}

TEST_CASE("percentile endpoints and ordering", "[ensemble][property]") {
  std::mt19937 rng(23u);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  std::uniform_int_distribution<int> size_dist(1, 40);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(size_dist(rng)));
    for (double& x : v) x = dist(rng);
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());

    REQUIRE(percentile_sorted(sorted, 0.0) == sorted.front());
    REQUIRE(percentile_sorted(sorted, 1.0) == sorted.back());

    const DistributionSummary s = summarize_values(v);
    REQUIRE(sorted.front() <= s.p2_5);
    REQUIRE(s.p2_5 <= s.p25);
    REQUIRE(s.p25 <= s.median);
    REQUIRE(s.median <= s.p75);
    REQUIRE(s.p75 <= s.p97_5);
    REQUIRE(s.p97_5 <= sorted.back());
  }
}

TEST_CASE("empty samples are rejected", "[ensemble]") {
  REQUIRE_THROWS_AS(summarize_values({}), input_error);
  REQUIRE_THROWS_AS(percentile_sorted({}, 0.5), input_error);
}

TEST_CASE("latin hypercube covers every stratum exactly once", "[lhs][property]") {
  const ParameterSpace space = default_parameter_space();
  for (int n : {1, 7, 200}) {
    const LhsDesign design = lhs_sample(space, n, 42u);
    REQUIRE(design.n == n);
    REQUIRE(design.unit.size() == static_cast<std::size_t>(n));
    for (std::size_t d = 0; d < space.dimensions.size(); ++d) {
      std::vector<int> counts(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i) {
        const double u = design.unit[static_cast<std::size_t>(i)][d];
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        const int stratum = static_cast<int>(u * n);
        // Every coordinate sits at its stratum midpoint.
        REQUIRE(u == (stratum + 0.5) / n);
        counts[static_cast<std::size_t>(stratum)]++;
      }
      for (int c : counts) REQUIRE(c == 1);
    }
  }
}

TEST_CASE("hypercube designs are seed-deterministic", "[lhs][determinism]") {
  const ParameterSpace space = default_parameter_space();
  const LhsDesign a = lhs_sample(space, 50, 42u);
  const LhsDesign b = lhs_sample(space, 50, 42u);
  REQUIRE(a == b);
  const LhsDesign c = lhs_sample(space, 50, 43u);
  REQUIRE(a.unit != c.unit);
}

TEST_CASE("a single draw sits at the centre of every range", "[lhs]") {
  const ParameterSpace space = default_parameter_space();
  const LhsDesign design = lhs_sample(space, 1, 9u);
  const Parameters p = apply_draw(Parameters{}, space, design, 0);
  REQUIRE_THAT(p.job_creation_rate, WithinRel(0.0021, 1e-12));
  REQUIRE_THAT(p.price_affected_share, WithinRel(0.5, 1e-12));
  REQUIRE_THAT(p.onset_growth, WithinRel(0.0015, 1e-12));
  REQUIRE_THAT(p.underemployed_per_unemployed, WithinRel(1.6, 1e-12));
}

TEST_CASE("sample space validation", "[lhs]") {
  REQUIRE_THROWS_AS(lhs_sample(default_parameter_space(), 0, 1u), input_error);

  ParameterSpace unknown{{{"bogus", 0.0, 1.0}}};
  REQUIRE_THROWS_AS(lhs_sample(unknown, 3, 1u), input_error);

  ParameterSpace inverted{{{"beta", 0.2, 0.1}}};
  REQUIRE_THROWS_AS(lhs_sample(inverted, 3, 1u), input_error);

  ParameterSpace degenerate{{{"beta", 0.0015, 0.0015}}};
  REQUIRE_NOTHROW(lhs_sample(degenerate, 3, 1u));
}

TEST_CASE("draws stay inside their ranges and touch nothing else", "[lhs][property]") {
  const ParameterSpace space = default_parameter_space();
  const Parameters base;
  const LhsDesign design = lhs_sample(space, 40, 7u);
  for (int i = 0; i < design.n; ++i) {
    const Parameters p = apply_draw(base, space, design, i);
    REQUIRE(p.job_creation_rate >= 0.00189);
    REQUIRE(p.job_creation_rate <= 0.00231);
    REQUIRE(p.price_affected_share >= 0.30);
    REQUIRE(p.price_affected_share <= 0.70);
    REQUIRE(p.onset_growth >= 0.00135);
    REQUIRE(p.onset_growth <= 0.00165);
    REQUIRE(p.underemployed_per_unemployed >= 1.44);
    REQUIRE(p.underemployed_per_unemployed <= 1.76);
    // Parameters outside the space are untouched.
    REQUIRE(p.population_growth == base.population_growth);
    REQUIRE(p.onset_delay == base.onset_delay);
    REQUIRE(p.income_scale == base.income_scale);
    REQUIRE(p.kl_growth == base.kl_growth);
  }
}

TEST_CASE("a degenerate space reproduces the single deterministic run", "[ensemble]") {
  const Model model;
  const IntegrationConfig cfg;
  const ParameterSpace space = degenerate_space();
  const LhsDesign design = lhs_sample(space, 5, 3u);
  const EnsembleResult ens = run_ensemble(model, scenario_b(), space, design, cfg);

  REQUIRE(ens.failures.empty());
  REQUIRE(ens.successes.size() == 5);

  const auto [base, scen] = run_pair(model, scenario_b(), cfg);
  const auto direct = compare_at(base, scen, cfg.t_end);
  const auto summaries = summarize(ens);
  for (std::size_t m = 0; m < kMetrics.size(); ++m) {
    const double expect_pct = summary_for(direct, kMetrics[m]).pct_change;
    // The mean re-sums identical values, so it is equal only to rounding.
    REQUIRE_THAT(summaries[m].mean_pct, WithinRel(expect_pct, 1e-14));
    REQUIRE(summaries[m].median_pct == expect_pct);
    REQUIRE(summaries[m].lo95 == expect_pct);
    REQUIRE(summaries[m].hi95 == expect_pct);
  }

  const auto fan = bands(ens);
  for (std::size_t m = 0; m < kMetrics.size(); ++m) {
    REQUIRE(fan[m].at_time.size() == ens.times.size());
    for (std::size_t ti = 0; ti < ens.times.size(); ++ti) {
      const double v = metric_value(scen.samples[ti], kMetrics[m]);
      REQUIRE(fan[m].at_time[ti].p2_5 == v);
      REQUIRE(fan[m].at_time[ti].median == v);
      REQUIRE(fan[m].at_time[ti].p97_5 == v);
    }
  }
}

TEST_CASE("ensembles are seed-deterministic end to end", "[ensemble][determinism]") {
  const Model model;
  IntegrationConfig cfg;
  cfg.record_stride = 32;
  const ParameterSpace space = default_parameter_space();
  const LhsDesign design = lhs_sample(space, 25, 42u);

  const EnsembleResult a = run_ensemble(model, scenario_b(), space, design, cfg);
  const EnsembleResult b = run_ensemble(model, scenario_b(), space, design, cfg);
  REQUIRE(a.times == b.times);
  REQUIRE(a.successes.size() == b.successes.size());
  const auto sa = summarize(a);
  const auto sb = summarize(b);
  for (std::size_t m = 0; m < kMetrics.size(); ++m) {
    REQUIRE(sa[m].mean_abs_change == sb[m].mean_abs_change);
    REQUIRE(sa[m].mean_pct == sb[m].mean_pct);
    REQUIRE(sa[m].median_pct == sb[m].median_pct);
    REQUIRE(sa[m].lo95 == sb[m].lo95);
    REQUIRE(sa[m].hi95 == sb[m].hi95);
  }
}

TEST_CASE("band percentiles are ordered at every time", "[ensemble][property]") {
  const Model model;
  IntegrationConfig cfg;
  cfg.record_stride = 64;
  const ParameterSpace space = default_parameter_space();
  const LhsDesign design = lhs_sample(space, 30, 5u);
  const EnsembleResult ens = run_ensemble(model, scenario_b(), space, design, cfg);
  REQUIRE(ens.failures.empty());

  const auto fan = bands(ens);
  for (const BandSeries& series : fan) {
    REQUIRE(series.at_time.size() == ens.times.size());
    for (const DistributionSummary& s : series.at_time) {
      REQUIRE(s.p2_5 <= s.p25);
      REQUIRE(s.p25 <= s.median);
      REQUIRE(s.median <= s.p75);
      REQUIRE(s.p75 <= s.p97_5);
    }
  }
}

TEST_CASE("runaway draws are excluded but reported", "[ensemble]") {
  const Model model;
  IntegrationConfig cfg;
  cfg.record_stride = 864;
  // Stretch the onset-growth range far beyond its plausible band; the high
  // strata blow through the labour force, the low ones stay valid.
  const ParameterSpace space{{{"beta", 0.0015, 0.1015}}};
  const LhsDesign design = lhs_sample(space, 50, 11u);
  const EnsembleResult ens = run_ensemble(model, scenario_b(), space, design, cfg);

  REQUIRE(ens.draws == 50);
  REQUIRE_FALSE(ens.successes.empty());
  REQUIRE_FALSE(ens.failures.empty());
  REQUIRE(ens.successes.size() + ens.failures.size() == 50);
  for (const DrawFailure& f : ens.failures) {
    REQUIRE(f.index >= 0);
    REQUIRE(f.index < 50);
    REQUIRE(f.message.find("U > L") != std::string::npos);
  }
  // Summaries skip the failed draws.
  REQUIRE_NOTHROW(summarize(ens));
}

TEST_CASE("an ensemble with no survivors cannot be summarized", "[ensemble]") {
  const Model model;
  IntegrationConfig cfg;
  cfg.record_stride = 864;
  const ParameterSpace space{{{"beta", 0.5, 0.9}}};
  const LhsDesign design = lhs_sample(space, 3, 1u);
  const EnsembleResult ens = run_ensemble(model, scenario_b(), space, design, cfg);
  REQUIRE(ens.successes.empty());
  REQUIRE(ens.failures.size() == 3);
  REQUIRE_THROWS_AS(summarize(ens), input_error);
  REQUIRE_THROWS_AS(bands(ens), input_error);
}

TEST_CASE("invalid sampled parameters propagate as input errors", "[ensemble]") {
  const Model model;
  const IntegrationConfig cfg;
  const ParameterSpace space{{{"omega", 1.5, 2.0}}};
  const LhsDesign design = lhs_sample(space, 2, 1u);
  REQUIRE_THROWS_AS(run_ensemble(model, scenario_b(), space, design, cfg), input_error);
}
