#pragma once

#include <string>
#include <vector>

#include "capsim/errors.hpp"
#include "capsim/parameters.hpp"

namespace capsim {

/// S-shaped transition of the job-creation multiplier from 1 to `fold`.
struct RampSpec {
  double fold = 1.0;      // target multiplier on the job-creation rate
  double t0 = 2023.5;     // ramp start, years
  double duration = 2.0;  // years to reach the full fold

  friend bool operator==(const RampSpec&, const RampSpec&) = default;
};

inline void validate(const RampSpec& r) {
  if (!(r.duration > 0)) throw input_error("ramp duration must be > 0");
  if (!(r.fold >= 0)) throw input_error("ramp fold must be >= 0");
}

/// Smoothstep interpolation: 1 before t0, `fold` after t0+duration,
/// 1 + (fold-1)*(3u^2 - 2u^3) in between. Continuous with continuous first
/// derivative at both ends.
inline double ramp_multiplier(const RampSpec& spec, double t) {
  if (t <= spec.t0) return 1.0;
  if (t >= spec.t0 + spec.duration) return spec.fold;
  const double u = (t - spec.t0) / spec.duration;
  const double s = 3.0 * u * u - 2.0 * u * u * u;
  return 1.0 + (spec.fold - 1.0) * s;
}

/// A named experiment: a K-L growth rate, an optional job-creation fold
/// (ramped in when != 1), and free-text notes.
struct ScenarioSpec {
  std::string id;
  double alpha = 0.018;   // effective K-L growth for this run, fraction/yr
  double job_fold = 1.0;  // multiplier on the job-creation rate
  RampSpec ramp;          // applied when job_fold != 1
  std::string notes;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// alpha = 0 is legal (used to freeze capital deepening entirely).
inline void validate(const ScenarioSpec& s) {
  if (s.id.empty()) throw input_error("scenario id must not be empty");
  if (!(s.alpha >= 0)) throw input_error("scenario alpha must be >= 0");
  if (!(s.job_fold >= 0)) throw input_error("scenario job_fold must be >= 0");
  validate(s.ramp);
}

/// Job-creation multiplier at time t: ramps toward job_fold, constant 1 when
/// job_fold == 1.
inline double job_multiplier(const ScenarioSpec& s, double t) {
  RampSpec r = s.ramp;
  r.fold = s.job_fold;
  return ramp_multiplier(r, t);
}

/// The do-nothing reference run: K-L growth at the historic default,
/// job creation unchanged.
inline ScenarioSpec baseline_scenario(const Parameters& params) {
  ScenarioSpec s;
  s.id = "baseline";
  s.alpha = params.kl_growth;
  s.job_fold = 1.0;
  s.notes = "historic K-L growth, unchanged job creation";
  return s;
}

/// The three standard capital-deepening intensities (4%, 7%, 10% per year),
/// job creation unchanged.
inline std::vector<ScenarioSpec> standard_scenarios() {
  std::vector<ScenarioSpec> out;
  ScenarioSpec a;
  a.id = "a";
  a.alpha = 0.04;
  a.notes = "moderate capital deepening";
  ScenarioSpec b;
  b.id = "b";
  b.alpha = 0.07;
  b.notes = "strong capital deepening";
  ScenarioSpec c;
  c.id = "c";
  c.alpha = 0.10;
  c.notes = "extreme capital deepening";
  out.push_back(a);
  out.push_back(b);
  out.push_back(c);
  return out;
}

}  // namespace capsim
