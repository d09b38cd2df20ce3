#include <doctest.h>

#include <string>

#include "pmx/config.hpp"
#include "pmx/errors.hpp"
#include "pmx/presets.hpp"

using namespace pmx;

TEST_CASE("a minimal config takes the reference defaults") {
  const auto parsed = parse_config("[system]\ndelta = 0.4\n");
  const auto& c = parsed.config;
  CHECK(parsed.warnings.empty());
  CHECK(c.grid.cells == 64);
  CHECK(c.grid.x_min == -1.0);
  CHECK(c.grid.x_max == 1.0);
  CHECK(c.time.t_end == 3.0);
  CHECK(c.time.dt == 1e-6);
  CHECK(c.time.mode == TimeSection::Mode::fixed);
  CHECK(c.time.record_count == 10);
  CHECK(c.delta == 0.4);
  CHECK(c.species.size() == 1);
  CHECK(c.record_times().size() == 11);
}

TEST_CASE("delta above the convexity threshold warns but parses") {
  const auto parsed = parse_config("[system]\nM = 2\ndelta = 1.5\n");
  CHECK(parsed.config.delta == 1.5);
  REQUIRE(parsed.warnings.size() == 1);
  CHECK(parsed.warnings[0].find("delta") != std::string::npos);
}

TEST_CASE("a misspelled key is rejected with its line number") {
  try {
    (void)parse_config("# comment\n[system]\nM = 2\ndetla = 0.4\n");
    FAIL("expected a configuration error");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("line 4") != std::string::npos);
    CHECK(what.find("detla") != std::string::npos);
  }
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_config("[grid]\nJ = 64\n"), ConfigError);               // no [system]
  CHECK_THROWS_AS(parse_config("[system]\ndelta = abc\n"), ConfigError);        // type mismatch
  CHECK_THROWS_AS(parse_config("[system]\ndelta = 0.1\ndelta = 0.2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[sistem]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[system]\nM = 1\n[species.2]\nmass = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[system]\n[species.1]\nic = sideways\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/dir/run.cfg"), IoError);
}

TEST_CASE("species sections") {
  const auto c = parse_config(
                     "[system]\nM = 2\ndelta = 0.3\nepsilon = 0.001\n"
                     "[species.1]\npotential = quadratic 0.5\nic = leftbump\nmass = 2\n"
                     "[species.2]\npotential = quadratic 50\nkernel = gaussian 1 0.2\nic = rightbump\n"
                     "[time]\nmode = adaptive\nsafety = 0.5\nt_end = 1\n")
                     .config;
  REQUIRE(c.species.size() == 2);
  CHECK(c.epsilon == 0.001);
  CHECK(c.species[0].potential == PotentialSpec::quadratic(0.5));
  CHECK(c.species[0].mass == 2.0);
  CHECK(c.species[0].ic.kind == InitialCondition::Kind::leftbump);
  CHECK(c.species[1].kernel.kind == KernelConfig::Kind::gaussian);
  CHECK(std::holds_alternative<AdaptiveStep>(c.time.time_mode()));
  const auto g = c.make_grid();
  const auto s = c.system(g);
  CHECK(s.species[1].kernel.samples[g.size() - 1] == doctest::Approx(1.0));
}

TEST_CASE("render and parse round-trip every preset") {
  for (int n = 1; n <= 4; ++n)
    for (double delta : example_deltas(n))
      for (bool strong : {false, true}) {
        auto c = example_config(n, delta, strong);
        CHECK(parse_config(render_config(c)).config == c);
        c.particles = ParticleSection{{4000, 4000}, 0.05, 1e-3, 7, Sampling::iid,
                                      InteractionProfile::Kind::bump, false};
        c.epsilon = 1e-3;
        c.species[0].kernel = KernelConfig{KernelConfig::Kind::gaussian, 0.1, 0.3, {}};
        CHECK(parse_config(render_config(c)).config == c);
      }
}

TEST_CASE("reference examples") {
  CHECK(example_deltas(1) == std::vector<double>{0.4, 0.6, 0.8, 0.99});
  CHECK(example_deltas(4).size() == 12);
  const auto c3 = example_config(3, 0.4);
  CHECK(c3.species[1].potential == PotentialSpec::quadratic(50.0));
  CHECK(example_config(4, 0.0).time.t_end == 5.0);
  CHECK(example_c_l(1) == 6.0);
  CHECK(example_c_l(3) == 100.0);
  CHECK_THROWS_AS(example_config(5, 0.4), ConfigError);
  CHECK_THROWS_AS(example_deltas(0), ConfigError);
}
