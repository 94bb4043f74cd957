#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "capsim/errors.hpp"

namespace capsim {

/// Scalar constants of the labour-market / capital-deepening model.
///
/// Defaults are the Australian calibration: population and labour-force
/// counts as of mid-2023, rates per year. All rates are fractions (1.1%/yr
/// population growth is 0.011).
struct Parameters {
  double initial_population = 26'638'544.0;   // persons (P at 2023.5)
  double initial_underutilised = 1'445'000.0; // persons unemployed + underemployed
  double initial_onset_rate = 0.099;          // target underutilised share of labour force
  double initial_kl_ratio = 94.6;             // capital-to-labour ratio index (2021 = 100)
  double population_growth = 0.011;           // net increase, fraction/yr
  double initial_labour_force = 14'585'316.0; // persons participating or seeking work
  double reference_population = 26'638'544.0; // population at 2023.5; fixes labour share
  double onset_delay = 5.0;                   // years for underutilisation to track its target
  double job_creation_rate = 0.0021;          // new jobs per labour-force member per year
  double mortality_rate = 0.0015;             // working-age, fraction/yr
  double onset_growth = 0.0015;               // base growth of the onset rate, fraction/yr
  double kl_growth = 0.018;                   // historic K-L ratio increase, fraction/yr
  double mfp_growth = 0.0056298;              // base multifactor-productivity growth, fraction/yr
  double underemployed_per_unemployed = 1.6;  // headcount ratio within the underutilised stock
  double underemployed_income_ratio = 0.77;   // disposable income vs a fully employed person
  double income_scale = 86'985.0;             // currency units/person-year; anchors initial income
  double price_affected_share = 0.5;          // share of income subject to price declines
  double initial_mfp = 1.0;                   // MFP level, normalised

  /// Constant share of the population in the labour force.
  double labour_share() const { return initial_labour_force / reference_population; }

  /// Labour force implied by the initial population.
  double initial_labour() const { return initial_population * labour_share(); }

  /// Underutilisation rate at the start of a run, the reference point for
  /// the income converter.
  double initial_underutilisation_rate() const {
    return initial_underutilised / initial_labour();
  }

  friend bool operator==(const Parameters&, const Parameters&) = default;
};

/// Throws input_error listing every violated constraint.
inline void validate(const Parameters& p) {
  std::vector<std::string> bad;
  auto require = [&](bool ok, const char* msg) {
    if (!ok) bad.emplace_back(msg);
  };
  require(p.initial_population > 0, "p0 must be > 0");
  require(p.initial_underutilised > 0, "u0 must be > 0");
  require(p.initial_labour_force > 0, "i must be > 0");
  require(p.reference_population > 0, "mu must be > 0");
  require(p.initial_underutilised < p.initial_labour_force, "u0 must be < i");
  require(p.initial_labour_force <= p.reference_population, "i must be <= mu");
  require(p.reference_population == p.initial_population, "mu must equal p0");
  require(p.initial_onset_rate >= 0 && p.initial_onset_rate <= 1, "o0 must be in [0, 1]");
  require(p.initial_kl_ratio > 0, "k0 must be > 0");
  require(p.price_affected_share >= 0 && p.price_affected_share <= 1, "omega must be in [0, 1]");
  require(p.onset_delay > 0, "d must be > 0");
  require(p.underemployed_per_unemployed > 0, "r must be > 0");
  require(p.income_scale > 0, "tau must be > 0");
  require(p.initial_mfp > 0, "m0 must be > 0");
  if (!bad.empty()) {
    std::string msg = "invalid parameters: " + bad[0];
    for (std::size_t i = 1; i < bad.size(); ++i) msg += "; " + bad[i];
    throw input_error(msg);
  }
}

/// Key names used by the config format and the sensitivity sample space.
struct ParameterField {
  std::string_view key;
  double Parameters::* member;
};

inline constexpr std::array<ParameterField, 18> kParameterFields = {{
    {"p0", &Parameters::initial_population},
    {"u0", &Parameters::initial_underutilised},
    {"o0", &Parameters::initial_onset_rate},
    {"k0", &Parameters::initial_kl_ratio},
    {"g", &Parameters::population_growth},
    {"i", &Parameters::initial_labour_force},
    {"mu", &Parameters::reference_population},
    {"d", &Parameters::onset_delay},
    {"lambda", &Parameters::job_creation_rate},
    {"m", &Parameters::mortality_rate},
    {"beta", &Parameters::onset_growth},
    {"alpha", &Parameters::kl_growth},
    {"nu", &Parameters::mfp_growth},
    {"r", &Parameters::underemployed_per_unemployed},
    {"underemployed_income_ratio", &Parameters::underemployed_income_ratio},
    {"tau", &Parameters::income_scale},
    {"omega", &Parameters::price_affected_share},
    {"m0", &Parameters::initial_mfp},
}};

/// nullptr when the key is unknown.
inline double Parameters::* parameter_field(std::string_view key) {
  for (const ParameterField& f : kParameterFields) {
    if (f.key == key) return f.member;
  }
  return nullptr;
}

}  // namespace capsim
