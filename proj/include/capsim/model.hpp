#pragma once

#include <algorithm>
#include <cmath>

#include "capsim/converters.hpp"
#include "capsim/errors.hpp"
#include "capsim/parameters.hpp"
#include "capsim/table_function.hpp"

namespace capsim {

/// What the onset and MFP converters take as input.
enum class ConverterInput {
  /// K(t) relative to its initial value K0 (default).
  ratio_to_initial,
  /// K(t) relative to the same-time K of a run growing at the default rate.
  ratio_to_baseline,
};

/// Integrator state: absolute time plus the five integrated quantities.
struct SimState {
  double t = 0;        // years, absolute (e.g. 2023.5)
  double p = 0;        // population, persons
  double u = 0;        // underutilised persons
  double o = 0;        // onset rate, target underutilised share of labour force
  double k = 0;        // capital-to-labour ratio, index points
  double m_level = 0;  // multifactor productivity, normalised level

  friend bool operator==(const SimState&, const SimState&) = default;
};

inline bool state_valid(const SimState& s) {
  return std::isfinite(s.t) && s.p > 0 && s.u >= 0 && s.o >= 0 && s.k > 0 &&
         s.m_level > 0;
}

/// Parameters plus converter tables: everything a run needs besides the
/// scenario overlay.
struct Model {
  Parameters params;
  Converters converters;
  ConverterInput converter_input = ConverterInput::ratio_to_initial;

  SimState initial_state(double t_start) const {
    return {t_start, params.initial_population, params.initial_underutilised,
            params.initial_onset_rate, params.initial_kl_ratio, params.initial_mfp};
  }

  friend bool operator==(const Model&, const Model&) = default;
};

/// Unemployed / underemployed headcounts within the underutilised stock.
struct UnderutilisedSplit {
  double unemployed = 0;
  double underemployed = 0;
};

/// r is the underemployed-to-unemployed headcount ratio; the two parts sum
/// back to u exactly up to rounding.
inline UnderutilisedSplit split_underutilised(double u, double r) {
  return {u / (1.0 + r), u * r / (1.0 + r)};
}

/// Aggregate disposable income (psi, currency units per year):
/// fully employed persons plus underemployed persons discounted by their
/// income ratio, scaled by the wage-pressure converter and the per-person
/// income scale tau. Throws model_error if u exceeds the labour force.
inline double aggregate_disposable_income(double p, double u, const Parameters& par,
                                          const TableFunction& income_effect) {
  const double labour = p * par.labour_share();
  if (u > labour) {
    throw model_error("underutilised persons exceed the labour force (U > L)");
  }
  const double underemployed = split_underutilised(u, par.underemployed_per_unemployed).underemployed;
  const double effective_earners =
      (labour - u) + par.underemployed_income_ratio * underemployed;
  const double rate_ratio = (u / labour) / par.initial_underutilisation_rate();
  return effective_earners * income_effect(rate_ratio) * par.income_scale;
}

/// Purchasing power relative to the start of the run: income change deflated
/// by the price change on the affected share omega of spending.
inline double consumption_index(double income_pc_ratio, double price_ratio,
                                double omega) {
  const double deflator = price_ratio * omega + (1.0 - omega);
  if (deflator <= 0) {
    throw model_error("consumption deflator is non-positive");
  }
  return income_pc_ratio / deflator;
}

/// Quantities computed from a state but not integrated.
struct DerivedOutputs {
  double labour_force = 0;      // persons
  double psi = 0;               // aggregate disposable income, currency/yr
  double income_pc = 0;         // psi / population
  double income_pc_ratio = 0;   // vs the initial per-capita income
  double price_level = 0;       // price converter output
  double consumption_index = 0; // normalised purchasing power, 1 at start

  friend bool operator==(const DerivedOutputs&, const DerivedOutputs&) = default;
};

inline DerivedOutputs derived_outputs(const Model& model, const SimState& s) {
  const Parameters& par = model.params;
  DerivedOutputs out;
  out.labour_force = s.p * par.labour_share();
  out.psi = aggregate_disposable_income(s.p, s.u, par, model.converters.income);
  out.income_pc = out.psi / s.p;
  const double income_pc0 =
      aggregate_disposable_income(par.initial_population, par.initial_underutilised,
                                  par, model.converters.income) /
      par.initial_population;
  out.income_pc_ratio = out.income_pc / income_pc0;
  out.price_level = model.converters.prices(s.m_level / par.initial_mfp);
  const double price0 = model.converters.prices(1.0);
  out.consumption_index = consumption_index(out.income_pc_ratio,
                                            out.price_level / price0,
                                            par.price_affected_share);
  return out;
}

/// Time derivatives of the five integrated quantities.
struct Rates {
  double dp = 0;
  double du = 0;
  double donset = 0;
  double dk = 0;
  double dm = 0;
};

/// The stock-flow equations.
///
/// alpha is the effective K-L growth rate for this run, lambda_multiplier the
/// (possibly ramped) factor on the job-creation rate, and k_baseline the
/// same-time K of a default-rate run — consulted only in ratio_to_baseline
/// converter-input mode. The underutilisation inflow is a goal-seeking
/// adjustment and may be negative; the integrator floors U at zero.
inline Rates derivatives(const Model& model, const SimState& s, double alpha,
                         double lambda_multiplier, double k_baseline) {
  const Parameters& par = model.params;
  const double u = std::max(s.u, 0.0);
  const double labour = s.p * par.labour_share();
  const double lambda_eff = par.job_creation_rate * lambda_multiplier;
  const double x_k = model.converter_input == ConverterInput::ratio_to_initial
                         ? s.k / par.initial_kl_ratio
                         : s.k / k_baseline;
  Rates r;
  r.dp = s.p * par.population_growth;
  r.du = (labour * s.o - u) / par.onset_delay - labour * lambda_eff -
         u * par.mortality_rate;
  r.donset = s.o * par.onset_growth * model.converters.onset(x_k);
  r.dk = s.k * alpha;
  r.dm = s.m_level * par.mfp_growth * model.converters.mfp(x_k);
  return r;
}

}  // namespace capsim
