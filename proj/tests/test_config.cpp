#include <doctest.h>

#include "bintrack/config.hpp"

using namespace bintrack;

TEST_CASE("parse_config: happy path with defaults") {
  RunConfig cfg = parse_config(
      "# tracking run\n"
      "seed = 42\n"
      "n_targets = 3\n"
      "n_sensors = 16\n"
      "sigma2 = 0.01\n"
      "duration = 30\n"
      "algorithm = abc-pt\n"
      "epsilon = auto\n");
  CHECK(cfg.seed == 42);
  CHECK(cfg.n_targets == 3);
  CHECK(cfg.algorithm == "abc-pt");
  CHECK_FALSE(cfg.sampler.epsilon.has_value());
  CHECK(cfg.sampler.n_particles == 300);  // default
  CHECK(cfg.sampler.seed == 42);
  CHECK_NOTHROW(cfg.require({"seed", "n_targets", "sigma2"}));
}

TEST_CASE("parse_config: unknown key is an error naming the key") {
  try {
    parse_config("seed = 1\nsgima2 = 0.5\n");
    FAIL("expected a throw");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("sgima2") != std::string::npos);
  }
}

TEST_CASE("parse_config: missing required key is reported by name") {
  RunConfig cfg = parse_config("seed = 1\nn_targets = 2\n");
  try {
    cfg.require({"seed", "sigma2"});
    FAIL("expected a throw");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("sigma2") != std::string::npos);
  }
}

TEST_CASE("parse_config: lists, ladder and estimator") {
  RunConfig cfg = parse_config(
      "seed = 9\n"
      "targets = 2, 3, 4\n"
      "sensors = 16,64\n"
      "algorithms = abc-rej, abc-rw, abc-pt\n"
      "epsilon_ladder = 1.0, 2.0, 4.0\n"
      "n_chains = 3\n"
      "estimator = map\n");
  CHECK(cfg.targets_list == std::vector<int>{2, 3, 4});
  CHECK(cfg.sensors_list == std::vector<int>{16, 64});
  CHECK(cfg.algorithms_list.size() == 3);
  CHECK(cfg.sampler.epsilon_ladder == std::vector<double>{1.0, 2.0, 4.0});
  CHECK(cfg.sampler.mode == Estimate::Mode::Map);
}

TEST_CASE("parse_config: malformed input diagnostics") {
  CHECK_THROWS(parse_config("seed\n"));                       // no '='
  CHECK_THROWS(parse_config("seed = \n"));                    // empty value
  CHECK_THROWS(parse_config("seed = 1\nseed = 2\n"));         // duplicate
  CHECK_THROWS(parse_config("sigma2 = abc\n"));               // not a number
  CHECK_THROWS(parse_config("n_particles = 12x\n"));          // trailing junk
  CHECK_THROWS(parse_config("algorithms = abc-rej, nope\n")); // bad algorithm
  CHECK_THROWS(parse_config("estimator = median\n"));
}

TEST_CASE("parse_config: identical text gives identical hash, differing text differs") {
  const std::string text = "seed = 5\nn_targets = 2\n";
  CHECK(parse_config(text).config_hash == parse_config(text).config_hash);
  CHECK(parse_config(text).config_hash != parse_config(text + "duration = 9\n").config_hash);
}
