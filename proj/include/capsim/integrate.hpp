#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "capsim/errors.hpp"
#include "capsim/model.hpp"
#include "capsim/scenario.hpp"

namespace capsim {

enum class Method { euler, rk4 };

inline std::string method_name(Method m) {
  return m == Method::euler ? "euler" : "rk4";
}

/// Fixed-step integration settings. The default grid is 864 steps of 1/32
/// year across the 27-year horizon.
struct IntegrationConfig {
  double t_start = 2023.5;
  double t_end = 2050.5;
  double dt = 1.0 / 32.0;
  Method method = Method::euler;
  int record_stride = 1;  // steps between recorded samples; the end is always recorded

  friend bool operator==(const IntegrationConfig&, const IntegrationConfig&) = default;
};

inline void validate(const IntegrationConfig& cfg) {
  if (!(cfg.t_end > cfg.t_start)) throw input_error("t_end must be > t_start");
  if (!(cfg.dt > 0)) throw input_error("dt must be > 0");
  const double steps = (cfg.t_end - cfg.t_start) / cfg.dt;
  if (std::abs(steps - std::round(steps)) > 1e-9) {
    throw input_error("(t_end - t_start) / dt must be an integer");
  }
  if (cfg.record_stride < 1) throw input_error("record_stride must be >= 1");
}

struct TrajectorySample {
  SimState state;
  DerivedOutputs outputs;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

/// A recorded run: samples in time order plus enough metadata to identify
/// what produced them.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::string scenario_id;
  std::uint64_t inputs_hash = 0;
  double dt = 0;
  std::string method;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Exact-grid sample lookup; times not on the recorded grid are an error
/// rather than silently snapping to a neighbour.
inline const TrajectorySample& sample_at(const Trajectory& tr, double t) {
  for (const TrajectorySample& s : tr.samples) {
    if (std::abs(s.state.t - t) <= 1e-9) return s;
  }
  throw input_error("time " + std::to_string(t) + " is not on the recorded grid");
}

namespace detail {

inline std::uint64_t fnv1a(std::uint64_t h, double v) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i) {
    h ^= (bits >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t inputs_fingerprint(const Model& model, const ScenarioSpec& sc) {
  std::uint64_t h = 14695981039346656037ull;
  for (const ParameterField& f : kParameterFields) h = fnv1a(h, model.params.*f.member);
  for (const TableFunction* tf : {&model.converters.onset, &model.converters.mfp,
                                  &model.converters.prices, &model.converters.income}) {
    for (const TableFunction::Point& pt : tf->points()) {
      h = fnv1a(h, pt.x);
      h = fnv1a(h, pt.y);
    }
  }
  h = fnv1a(h, model.converter_input == ConverterInput::ratio_to_initial ? 0.0 : 1.0);
  h = fnv1a(h, sc.alpha);
  h = fnv1a(h, sc.job_fold);
  h = fnv1a(h, sc.ramp.t0);
  h = fnv1a(h, sc.ramp.duration);
  return h;
}

/// The five integrated quantities plus the default-rate K track that feeds
/// the ratio_to_baseline converter-input mode.
struct StepState {
  double p, u, o, k, m_level, k_baseline;
};

inline StepState rates_at(const Model& model, const ScenarioSpec& sc, double t,
                          const StepState& s) {
  SimState st{t, s.p, s.u, s.o, s.k, s.m_level};
  const Rates r = derivatives(model, st, sc.alpha, job_multiplier(sc, t), s.k_baseline);
  return {r.dp, r.du, r.donset, r.dk, r.dm, s.k_baseline * model.params.kl_growth};
}

inline StepState advance(const StepState& s, const StepState& r, double h) {
  return {s.p + h * r.p,       s.u + h * r.u, s.o + h * r.o,
          s.k + h * r.k,       s.m_level + h * r.m_level,
          s.k_baseline + h * r.k_baseline};
}

}  // namespace detail

/// Runs one scenario over the configured horizon and records the trajectory.
///
/// Euler or classic RK4, fixed step; the underutilised stock is floored at
/// zero after every step (its goal-seeking inflow may legitimately be
/// negative). Deterministic: identical inputs give bit-identical output.
/// Domain errors from the model equations are rethrown with the offending
/// time attached.
inline Trajectory simulate(const Model& model, const ScenarioSpec& scenario,
                           const IntegrationConfig& cfg) {
  validate(model.params);
  validate(scenario);
  validate(cfg);

  const int n = static_cast<int>(std::round((cfg.t_end - cfg.t_start) / cfg.dt));
  const double dt = cfg.dt;

  Trajectory tr;
  tr.scenario_id = scenario.id;
  tr.inputs_hash = detail::inputs_fingerprint(model, scenario);
  tr.dt = dt;
  tr.method = method_name(cfg.method);
  tr.samples.reserve(static_cast<std::size_t>(n / cfg.record_stride) + 2);

  detail::StepState s{model.params.initial_population,
                      model.params.initial_underutilised,
                      model.params.initial_onset_rate,
                      model.params.initial_kl_ratio,
                      model.params.initial_mfp,
                      model.params.initial_kl_ratio};

  for (int step = 0;; ++step) {
    const double t = cfg.t_start + step * dt;
    if (step % cfg.record_stride == 0 || step == n) {
      SimState st{t, s.p, s.u, s.o, s.k, s.m_level};
      try {
        tr.samples.push_back({st, derived_outputs(model, st)});
      } catch (const model_error& e) {
        throw model_error(std::string(e.what()) + " at t = " + std::to_string(t));
      }
    }
    if (step == n) break;

    if (cfg.method == Method::euler) {
      s = detail::advance(s, detail::rates_at(model, scenario, t, s), dt);
    } else {
      const detail::StepState k1 = detail::rates_at(model, scenario, t, s);
      const detail::StepState k2 =
          detail::rates_at(model, scenario, t + dt / 2, detail::advance(s, k1, dt / 2));
      const detail::StepState k3 =
          detail::rates_at(model, scenario, t + dt / 2, detail::advance(s, k2, dt / 2));
      const detail::StepState k4 =
          detail::rates_at(model, scenario, t + dt, detail::advance(s, k3, dt));
      s.p += dt / 6 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
      s.u += dt / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u);
      s.o += dt / 6 * (k1.o + 2 * k2.o + 2 * k3.o + k4.o);
      s.k += dt / 6 * (k1.k + 2 * k2.k + 2 * k3.k + k4.k);
      s.m_level += dt / 6 * (k1.m_level + 2 * k2.m_level + 2 * k3.m_level + k4.m_level);
      s.k_baseline +=
          dt / 6 * (k1.k_baseline + 2 * k2.k_baseline + 2 * k3.k_baseline + k4.k_baseline);
    }
    s.u = std::max(s.u, 0.0);

    const double labour = s.p * model.params.labour_share();
    if (s.u > labour) {
      throw model_error("underutilised persons exceed the labour force (U > L) at t = " +
                        std::to_string(cfg.t_start + (step + 1) * dt));
    }
  }

  return tr;
}

}  // namespace capsim
