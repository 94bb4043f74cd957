#include <catch2/catch_amalgamated.hpp>

#include <capsim/config.hpp>
#include <capsim/errors.hpp>

#include <string>

using namespace capsim;

namespace {

std::string error_message(const std::string& text) {
  try {
    parse_config(text);
  } catch (const input_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("an empty config yields the built-in setup", "[config]") {
  const ModelConfig cfg = parse_config("");
  REQUIRE(cfg.model.params == Parameters{});
  REQUIRE(cfg.model.converters == Converters{});
  REQUIRE(cfg.model.converter_input == ConverterInput::ratio_to_initial);
  REQUIRE(cfg.scenarios == standard_scenarios());
}

TEST_CASE("comments and blank lines are ignored", "[config]") {
  const ModelConfig cfg = parse_config(
      "# leading comment\n"
      "\n"
      "[parameters]  # trailing comment\n"
      "beta = 0.003  # another\n"
      "\n");
  REQUIRE(cfg.model.params.onset_growth == 0.003);
}

TEST_CASE("parameter overrides touch only their key", "[config]") {
  const ModelConfig cfg = parse_config("[parameters]\nbeta = 0.003\n");
  Parameters expected;
  expected.onset_growth = 0.003;
  REQUIRE(cfg.model.params == expected);
  REQUIRE(cfg.scenarios == standard_scenarios());
}

TEST_CASE("every documented parameter key is accepted", "[config]") {
  for (const ParameterField& f : kParameterFields) {
    const std::string text =
        "[parameters]\n" + std::string(f.key) + " = " +
        format_double(Parameters{}.*f.member) + "\n";
    REQUIRE_NOTHROW(parse_config(text));
  }
}

TEST_CASE("converter input mode is configurable", "[config]") {
  REQUIRE(parse_config("[parameters]\nconverter_input = ratio_to_baseline\n")
              .model.converter_input == ConverterInput::ratio_to_baseline);
  REQUIRE(parse_config("[parameters]\nconverter_input = ratio_to_initial\n")
              .model.converter_input == ConverterInput::ratio_to_initial);
  const std::string msg =
      error_message("[parameters]\nconverter_input = sideways\n");
  REQUIRE(msg.find("config line 2") != std::string::npos);
  REQUIRE(msg.find("ratio_to_initial") != std::string::npos);
}

TEST_CASE("parse errors carry their line number", "[config]") {
  REQUIRE(error_message("beta = 1\n").find("config line 1: content before") !=
          std::string::npos);
  REQUIRE(error_message("[parameters]\nbogus = 1\n")
              .find("config line 2: unknown parameter 'bogus'") != std::string::npos);
  REQUIRE(error_message("[parameters]\nbeta == oops\n")
              .find("config line 2") != std::string::npos);
  REQUIRE(error_message("[parameters]\nbeta\n")
              .find("config line 2: expected 'key = value'") != std::string::npos);
  REQUIRE(error_message("[nonsense]\n")
              .find("config line 1: unknown section [nonsense]") != std::string::npos);
  REQUIRE(error_message("[parameters\n")
              .find("config line 1: unterminated section header") != std::string::npos);
  REQUIRE(error_message("[parameters]\n[parameters]\n")
              .find("config line 2: duplicate section [parameters]") != std::string::npos);
  REQUIRE(error_message("[scenario:b]\nspeed = 9\n")
              .find("config line 2: unknown scenario key 'speed'") != std::string::npos);
}

TEST_CASE("converter sections replace the built-in tables", "[config]") {
  const ModelConfig cfg = parse_config(
      "[converter:eta]\n"
      "0 0.5\n"
      "2 1.5\n");
  REQUIRE(cfg.model.converters.onset.points().size() == 2);
  REQUIRE(cfg.model.converters.onset(1.0) == 1.0);
  // The other tables keep their defaults.
  REQUIRE(cfg.model.converters.mfp == Converters{}.mfp);
  REQUIRE(cfg.model.converters.prices == Converters{}.prices);
  REQUIRE(cfg.model.converters.income == Converters{}.income);
}

TEST_CASE("converter section errors", "[config]") {
  REQUIRE(error_message("[converter:eta]\n1 1\n")
              .find("needs at least 2 breakpoints") != std::string::npos);
  REQUIRE(error_message("[converter:eta]\n1 1\n0.5 2\n")
              .find("config line 3: [converter:eta] x values must be strictly "
                    "increasing") != std::string::npos);
  REQUIRE(error_message("[converter:eta]\n1 1 7\n2 2\n")
              .find("one 'x y' breakpoint per line") != std::string::npos);
  REQUIRE(error_message("[converter:eta]\n1 abc\n2 2\n")
              .find("config line 2") != std::string::npos);
  REQUIRE(error_message("[converter:warp]\n1 1\n2 2\n")
              .find("unknown converter section") != std::string::npos);
}

TEST_CASE("scenario sections merge over the standard list", "[config]") {
  const ModelConfig cfg = parse_config(
      "[scenario:b]\n"
      "alpha = 0.08\n"
      "\n"
      "[scenario:d]\n"
      "alpha = 0.12\n"
      "job_fold = 3\n"
      "notes = exploratory run\n");
  REQUIRE(cfg.scenarios.size() == 4);
  const ScenarioSpec b = find_scenario(cfg, "b");
  REQUIRE(b.alpha == 0.08);
  REQUIRE(b.notes == standard_scenarios()[1].notes);  // untouched fields survive
  const ScenarioSpec d = find_scenario(cfg, "d");
  REQUIRE(d.alpha == 0.12);
  REQUIRE(d.job_fold == 3.0);
  REQUIRE(d.notes == "exploratory run");
  REQUIRE(d.ramp.duration == 2.0);
}

TEST_CASE("scenario lookup knows the baseline", "[config]") {
  const ModelConfig cfg = parse_config("");
  const ScenarioSpec base = find_scenario(cfg, "baseline");
  REQUIRE(base.alpha == cfg.model.params.kl_growth);
  REQUIRE(base.job_fold == 1.0);
  try {
    find_scenario(cfg, "zz");
    FAIL("expected input_error");
  } catch (const input_error& e) {
    const std::string msg = e.what();
    REQUIRE(msg.find("unknown scenario 'zz'") != std::string::npos);
    REQUIRE(msg.find("baseline") != std::string::npos);
    REQUIRE(msg.find("b, c") != std::string::npos);
  }
}

TEST_CASE("final validation runs on the merged result", "[config]") {
  const std::string msg = error_message("[parameters]\nu0 = 20000000\n");
  REQUIRE(msg.find("u0 must be < i") != std::string::npos);
  REQUIRE(error_message("[scenario:b]\nalpha = -0.5\n")
              .find("alpha must be >= 0") != std::string::npos);
}

TEST_CASE("emit and parse round-trip bit for bit", "[config]") {
  const ModelConfig plain = parse_config("");
  REQUIRE(parse_config(emit_config(plain)) == plain);

  const ModelConfig custom = parse_config(
      "[parameters]\n"
      "beta = 0.015069720441439529\n"
      "omega = 0.37\n"
      "converter_input = ratio_to_baseline\n"
      "[converter:eta]\n"
      "0 0\n"
      "0.5 0.41\n"
      "5 5\n"
      "[scenario:d]\n"
      "alpha = 0.12\n"
      "job_fold = 2.5\n"
      "ramp_t0 = 2024\n"
      "notes = stress case\n");
  const ModelConfig reparsed = parse_config(emit_config(custom));
  REQUIRE(reparsed == custom);
  // And emission is a fixed point from then on.
  REQUIRE(emit_config(reparsed) == emit_config(custom));
}

TEST_CASE("missing config files are reported", "[config]") {
  REQUIRE_THROWS_AS(load_config_file("/nonexistent/path/model.ini"), input_error);
}
