#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "capsim/converters.hpp"
#include "capsim/errors.hpp"
#include "capsim/format.hpp"
#include "capsim/model.hpp"
#include "capsim/parameters.hpp"
#include "capsim/scenario.hpp"
#include "capsim/table_function.hpp"

namespace capsim {

/// Everything a run can be configured with: model (parameters, converter
/// tables, converter-input mode) plus the named scenarios.
struct ModelConfig {
  Model model;
  std::vector<ScenarioSpec> scenarios = standard_scenarios();

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

inline ScenarioSpec find_scenario(const ModelConfig& config, const std::string& id) {
  if (id == "baseline") return baseline_scenario(config.model.params);
  for (const ScenarioSpec& s : config.scenarios) {
    if (s.id == id) return s;
  }
  std::string known = "baseline";
  for (const ScenarioSpec& s : config.scenarios) known += ", " + s.id;
  throw input_error("unknown scenario '" + id + "' (known: " + known + ")");
}

namespace detail {

inline std::string trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] inline void config_fail(int line, const std::string& msg) {
  throw input_error("config line " + std::to_string(line) + ": " + msg);
}

inline TableFunction* converter_slot(Model& model, const std::string& name) {
  if (name == "eta") return &model.converters.onset;
  if (name == "mfp") return &model.converters.mfp;
  if (name == "prices") return &model.converters.prices;
  if (name == "theta") return &model.converters.income;
  return nullptr;
}

}  // namespace detail

/// Parses the configuration text over the embedded defaults.
///
/// Layout: `[parameters]` holds `key = value` lines (the published symbol
/// names, plus `converter_input`); `[converter:eta|mfp|prices|theta]`
/// sections hold one `x y` breakpoint per line and replace the built-in
/// table wholesale; `[scenario:<id>]` sections merge over the standard
/// scenario of that id or define a new one. `#` starts a comment. Unknown
/// sections and keys are hard errors: a typo that silently fell back to a
/// default value would corrupt every downstream experiment.
inline ModelConfig parse_config(const std::string& text) {
  ModelConfig config;
  enum class Section { none, parameters, converter, scenario };
  Section section = Section::none;
  std::string section_name;            // as written, for messages
  std::vector<TableFunction::Point> points;  // pending converter points
  int points_first_line = 0;
  TableFunction* converter = nullptr;
  ScenarioSpec* scenario = nullptr;
  std::set<std::string> seen_sections;

  auto close_converter = [&]() {
    if (section != Section::converter) return;
    if (points.size() < 2) {
      detail::config_fail(points_first_line,
                          "[" + section_name + "] needs at least 2 breakpoints");
    }
    *converter = TableFunction(points);
    points.clear();
  };

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') detail::config_fail(line_no, "unterminated section header");
      close_converter();
      section_name = line.substr(1, line.size() - 2);
      if (!seen_sections.insert(section_name).second) {
        detail::config_fail(line_no, "duplicate section [" + section_name + "]");
      }
      if (section_name == "parameters") {
        section = Section::parameters;
      } else if (section_name.rfind("converter:", 0) == 0) {
        converter = detail::converter_slot(config.model, section_name.substr(10));
        if (converter == nullptr) {
          detail::config_fail(line_no, "unknown converter section [" + section_name +
                                           "] (expected eta, mfp, prices or theta)");
        }
        section = Section::converter;
        points_first_line = line_no;
      } else if (section_name.rfind("scenario:", 0) == 0) {
        const std::string id = section_name.substr(9);
        if (id.empty()) detail::config_fail(line_no, "scenario id must not be empty");
        scenario = nullptr;
        for (ScenarioSpec& s : config.scenarios) {
          if (s.id == id) scenario = &s;
        }
        if (scenario == nullptr) {
          ScenarioSpec fresh;
          fresh.id = id;
          config.scenarios.push_back(fresh);
          scenario = &config.scenarios.back();
        }
        section = Section::scenario;
      } else {
        detail::config_fail(line_no, "unknown section [" + section_name + "]");
      }
      continue;
    }

    if (section == Section::none) {
      detail::config_fail(line_no, "content before the first section header");
    }

    if (section == Section::converter) {
      std::istringstream pair(line);
      std::string xs, ys, extra;
      if (!(pair >> xs >> ys) || (pair >> extra)) {
        detail::config_fail(line_no, "[" + section_name +
                                         "] expects one 'x y' breakpoint per line");
      }
      TableFunction::Point pt;
      try {
        pt.x = parse_double(xs);
        pt.y = parse_double(ys);
      } catch (const input_error& e) {
        detail::config_fail(line_no, "[" + section_name + "] " + e.what());
      }
      if (!points.empty() && pt.x <= points.back().x) {
        detail::config_fail(line_no, "[" + section_name +
                                         "] x values must be strictly increasing (" +
                                         format_double(pt.x) + " after " +
                                         format_double(points.back().x) + ")");
      }
      points.push_back(pt);
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      detail::config_fail(line_no, "expected 'key = value'");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) detail::config_fail(line_no, "empty key");

    if (section == Section::parameters) {
      if (key == "converter_input") {
        if (value == "ratio_to_initial") {
          config.model.converter_input = ConverterInput::ratio_to_initial;
        } else if (value == "ratio_to_baseline") {
          config.model.converter_input = ConverterInput::ratio_to_baseline;
        } else {
          detail::config_fail(line_no, "converter_input must be ratio_to_initial or "
                                       "ratio_to_baseline");
        }
        continue;
      }
      double Parameters::* field = parameter_field(key);
      if (field == nullptr) {
        detail::config_fail(line_no, "unknown parameter '" + key + "'");
      }
      try {
        config.model.params.*field = parse_double(value);
      } catch (const input_error& e) {
        detail::config_fail(line_no, e.what());
      }
      continue;
    }

    // Section::scenario
    try {
      if (key == "alpha") {
        scenario->alpha = parse_double(value);
      } else if (key == "job_fold") {
        scenario->job_fold = parse_double(value);
      } else if (key == "ramp_t0") {
        scenario->ramp.t0 = parse_double(value);
      } else if (key == "ramp_duration") {
        scenario->ramp.duration = parse_double(value);
      } else if (key == "notes") {
        scenario->notes = value;
      } else {
        detail::config_fail(line_no, "unknown scenario key '" + key + "'");
      }
    } catch (const input_error& e) {
      detail::config_fail(line_no, e.what());
    }
  }
  close_converter();

  validate(config.model.params);
  for (const ScenarioSpec& s : config.scenarios) validate(s);
  return config;
}

inline ModelConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

/// Serializes the effective configuration; parsing the result reproduces the
/// input bit for bit (numbers are shortest round-trip decimals).
inline std::string emit_config(const ModelConfig& config) {
  std::ostringstream os;
  os << "[parameters]\n";
  for (const ParameterField& f : kParameterFields) {
    os << f.key << " = " << format_double(config.model.params.*f.member) << '\n';
  }
  os << "converter_input = "
     << (config.model.converter_input == ConverterInput::ratio_to_initial
             ? "ratio_to_initial"
             : "ratio_to_baseline")
     << '\n';
  const std::pair<const char*, const TableFunction*> tables[] = {
      {"eta", &config.model.converters.onset},
      {"mfp", &config.model.converters.mfp},
      {"prices", &config.model.converters.prices},
      {"theta", &config.model.converters.income},
  };
  for (const auto& [name, table] : tables) {
    os << "\n[converter:" << name << "]\n";
    for (const TableFunction::Point& pt : table->points()) {
      os << format_double(pt.x) << ' ' << format_double(pt.y) << '\n';
    }
  }
  for (const ScenarioSpec& s : config.scenarios) {
    os << "\n[scenario:" << s.id << "]\n";
    os << "alpha = " << format_double(s.alpha) << '\n';
    os << "job_fold = " << format_double(s.job_fold) << '\n';
    os << "ramp_t0 = " << format_double(s.ramp.t0) << '\n';
    os << "ramp_duration = " << format_double(s.ramp.duration) << '\n';
    if (!s.notes.empty()) os << "notes = " << s.notes << '\n';
  }
  return os.str();
}

}  // namespace capsim
