#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pmx/diagnostics.hpp"
#include "pmx/errors.hpp"
#include "pmx/fv.hpp"

using namespace pmx;

namespace {

State uniform_state(std::size_t m, const Grid1D& g, double value) {
  return {0.0, DensityField(m, g.size(), value)};
}

}  // namespace

TEST_CASE("convolution") {
  const auto g = make_grid(-1.0, 1.0, 32);
  std::vector<double> u(g.size(), 0.5);

  SUBCASE("no kernel gives zeros") {
    for (double w : convolve(KernelSpec::none(), u, g)) CHECK(w == 0.0);
  }
  SUBCASE("constant kernel returns the mass") {
    const auto w = convolve(KernelSpec::from_function(g, [](double) { return 1.0; }), u, g);
    for (double v : w) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("point mass reproduces the kernel") {
    const std::size_t k = 11;
    std::vector<double> spike(g.size(), 0.0);
    spike[k] = 1.0 / g.dx();
    const auto w = convolve(KernelSpec::from_function(g, [](double r) { return std::exp(-r * r); }),
                            spike, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double r = (static_cast<double>(j) - static_cast<double>(k)) * g.dx();
      CHECK(w[j] == doctest::Approx(std::exp(-r * r)).epsilon(1e-13));
    }
  }
  SUBCASE("linear in u") {
    const auto kernel = KernelSpec::from_function(g, [](double r) { return 1.0 / (1.0 + r * r); });
    std::vector<double> a(g.size()), b(g.size()), ab(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      a[j] = std::sin(3.0 * g.center(j)) + 1.0;
      b[j] = g.center(j) * g.center(j);
      ab[j] = 2.0 * a[j] - 3.0 * b[j];
    }
    const auto wa = convolve(kernel, a, g), wb = convolve(kernel, b, g), wab = convolve(kernel, ab, g);
    for (std::size_t j = 0; j < g.size(); ++j)
      CHECK(wab[j] == doctest::Approx(2.0 * wa[j] - 3.0 * wb[j]).epsilon(1e-12));
  }
  SUBCASE("lattice mismatch") {
    CHECK_THROWS_AS(convolve(KernelSpec::tabulated({1.0, 1.0, 1.0}), u, g), ConfigError);
  }
}

TEST_CASE("xi assembles density, potential and cross terms") {
  const auto g = make_grid(-1.0, 1.0, 16);
  SUBCASE("decoupled") {
    auto s = test::pair(0.0);
    s.species[1].potential = PotentialSpec::zero();
    State st = uniform_state(2, g, 0.0);
    for (std::size_t j = 0; j < g.size(); ++j) {
      st.u(0, j) = 0.1 * static_cast<double>(j);
      st.u(1, j) = 7.0;
    }
    const auto xi = potential_xi(st, s, g, 0);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(xi[j] == st.u(0, j));
  }
  SUBCASE("uniform with delta = 0.5") {
    auto s = test::pair(0.5);
    s.species[1].potential = PotentialSpec::zero();
    for (double x : potential_xi(uniform_state(2, g, 0.5), s, g, 0))
      CHECK(x == doctest::Approx(0.75));
  }
  SUBCASE("delta = 1 with V_2 = 2x^2") {
    const auto s = test::pair(1.0);
    const auto xi = potential_xi(uniform_state(2, g, 0.5), s, g, 1);
    for (std::size_t j = 0; j < g.size(); ++j)
      CHECK(xi[j] == doctest::Approx(1.0 + 2.0 * g.center(j) * g.center(j)));
  }
}

TEST_CASE("face velocities") {
  SUBCASE("constant xi") {
    const auto g = make_grid(0.0, 1.0, 8);
    const auto f = face_velocities(std::vector<double>(8, 3.0), g);
    REQUIRE(f.v.size() == 9);
    for (double v : f.v) CHECK(v == 0.0);
  }
  SUBCASE("one difference") {
    const auto g = make_grid(0.0, 2.0, 2);  // dx = 1
    const auto f = face_velocities(std::vector<double>{0.0, 1.0}, g);
    CHECK(f.v[0] == 0.0);
    CHECK(f.v[1] == -1.0);
    CHECK(f.v[2] == 0.0);
  }
  SUBCASE("linear field") {
    const auto g = make_grid(0.0, 1.0, 4);
    std::vector<double> xi(g.centers().begin(), g.centers().end());
    const auto f = face_velocities(xi, g);
    CHECK(f.v.front() == 0.0);
    CHECK(f.v.back() == 0.0);
    for (std::size_t k = 1; k < 4; ++k) CHECK(f.v[k] == doctest::Approx(-1.0));
    for (double& x : xi) x = -x;
    const auto flipped = face_velocities(xi, g);
    for (std::size_t k = 0; k < 5; ++k) CHECK(flipped.v[k] == -f.v[k]);
  }
}

TEST_CASE("upwind flux") {
  CHECK(upwind_flux(2.0, 0.3, 0.9) == doctest::Approx(0.6));
  CHECK(upwind_flux(-2.0, 0.3, 0.9) == doctest::Approx(-1.8));
  CHECK(upwind_flux(0.0, 0.3, 0.9) == 0.0);
  CHECK(upwind_flux(0.0, 123.0, 4.0) == 0.0);
  static_assert(upwind_flux(1.0, 2.0, 3.0) == 2.0);
}

TEST_CASE("cfl step") {
  const auto g = make_grid(-1.0, 1.0, 64);
  SystemSpec s;
  s.species = {test::species()};
  CHECK(cfl_dt(uniform_state(1, g, 0.0), s, g, 0.9) == kDefaultDtCap);
  CHECK(cfl_dt(uniform_state(1, g, 0.0), s, g, 0.9, 0.25) == 0.25);
  CHECK(cfl_dt(uniform_state(1, g, 0.5), s, g, 0.9) ==
        doctest::Approx(0.9 * g.dx() * g.dx()).epsilon(1e-14));
}

TEST_CASE("uniform states are equilibria") {
  const auto g = make_grid(-1.0, 1.0, 32);
  for (double delta : {0.0, 0.4, 0.99}) {
    auto s = test::pair(delta);
    s.species[1].potential = PotentialSpec::zero();
    const State st = uniform_state(2, g, 0.5);
    const auto [next, report] = step(st, s, g, 1e-3);
    CHECK(next.u == st.u);
    CHECK(report.max_velocity == 0.0);
  }
}

TEST_CASE("a spike spreads without losing mass") {
  const auto g = make_grid(-1.0, 1.0, 64);
  SystemSpec s;
  s.species = {test::species()};
  State st = uniform_state(1, g, 0.0);
  st.u(0, 20) = 1.0 / g.dx();
  const double before = discrete_mass(st.u.row(0), g);
  const double dt = cfl_dt(st, s, g, 1.0);
  const auto [next, report] = step(st, s, g, dt);
  CHECK(std::abs(discrete_mass(next.u.row(0), g) - before) <= 1e-15 * before);
  CHECK(report.min_density_after >= 0.0);
  CHECK(next.u(0, 19) > 0.0);
  CHECK(next.u(0, 21) > 0.0);
}

TEST_CASE("one reference step keeps positivity and mass") {
  const auto g = make_grid(-1.0, 1.0, 64);
  const auto s = test::pair(0.4);
  const State st = build_initial_state(s, g);
  const auto [next, report] = step(st, s, g, 1e-6);
  CHECK(report.min_density_after >= 0.0);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(discrete_mass(next.u.row(i), g) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mass drift and positivity over many steps") {
  const auto g = make_grid(-1.0, 1.0, 64);
  auto s = test::pair(0.8);
  s.epsilon = 1e-3;
  State st = build_initial_state(s, g);
  Stepper stepper(s, g);
  double worst_min = 1.0;
  for (int n = 0; n < 10000; ++n) worst_min = std::min(worst_min, stepper.advance(st, 1e-6).min_density_after);
  CHECK(worst_min >= 0.0);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(std::abs(discrete_mass(st.u.row(i), g) - 1.0) < 1e-12);
}

TEST_CASE("positivity holds at the adaptive step") {
  const auto g = make_grid(-1.0, 1.0, 64);
  auto s = test::pair(0.6);
  s.species[0].potential = PotentialSpec::quadratic(0.5);
  s.species[1].potential = PotentialSpec::quadratic(50.0);
  State st = build_initial_state(s, g);
  Stepper stepper(s, g);
  for (int n = 0; n < 2000; ++n) {
    const auto r = stepper.advance(st, stepper.stable_dt(st, 1.0));
    REQUIRE(r.min_density_after >= 0.0);
  }
}

TEST_CASE("non-finite updates raise a timed blowup") {
  const auto g = make_grid(-1.0, 1.0, 16);
  SystemSpec s;
  s.species = {test::species()};
  State st = build_initial_state(s, g);
  st.t = 0.25;
  st.u(0, 3) = std::nan("");
  try {
    (void)step(st, s, g, 1e-4);
    FAIL("expected a blowup");
  } catch (const NumericalBlowup& e) {
    CHECK(e.time() == 0.25);
  }
}

TEST_CASE("record times") {
  const auto t = equally_spaced_times(3.0, 10);
  REQUIRE(t.size() == 11);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 3.0);
  CHECK(t[1] == doctest::Approx(0.3));
}

TEST_CASE("empty run returns the initial state with one record") {
  const auto g = make_grid(-1.0, 1.0, 32);
  const auto s = test::pair(0.4);
  int records = 0;
  const std::vector<double> times{0.0};
  const State out = run(s, g, 0.0, FixedStep{1e-3}, times,
                        [&](const DiagnosticsRecord& r, const State&) {
                          ++records;
                          CHECK(r.t == 0.0);
                        });
  CHECK(records == 1);
  CHECK(out == build_initial_state(s, g));
}

TEST_CASE("runs emit one record per record time") {
  const auto g = make_grid(-1.0, 1.0, 32);
  const auto s = test::pair(0.4);
  const auto times = equally_spaced_times(0.01, 10);
  for (TimeMode mode : {TimeMode{FixedStep{3e-5}}, TimeMode{AdaptiveStep{}}}) {
    std::vector<double> seen;
    const State out = run(s, g, 0.01, mode, times,
                          [&](const DiagnosticsRecord& r, const State&) { seen.push_back(r.t); });
    REQUIRE(seen.size() == times.size());
    for (std::size_t k = 0; k < times.size(); ++k) CHECK(seen[k] == doctest::Approx(times[k]).epsilon(1e-4));
    CHECK(out.t == 0.01);
  }
}

TEST_CASE("a single species conserves mass over a run") {
  const auto g = make_grid(-1.0, 1.0, 64);
  SystemSpec s;
  s.species = {test::species(PotentialSpec::zero(), InitialCondition::leftbump())};
  const State out = run(s, g, 0.05, AdaptiveStep{}, {}, {});
  CHECK(std::abs(discrete_mass(out.u.row(0), g) - 1.0) < 1e-12);
}

TEST_CASE("uncoupled species evolve independently, bitwise") {
  const auto g = make_grid(-1.0, 1.0, 32);
  const auto pair = test::pair(0.0);
  SystemSpec first, second;
  first.species = {pair.species[0]};
  second.species = {pair.species[1]};
  const FixedStep mode{2e-5};
  const State both = run(pair, g, 0.01, mode, {}, {});
  const State a = run(first, g, 0.01, mode, {}, {});
  const State b = run(second, g, 0.01, mode, {}, {});
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(both.u(0, j) == a.u(0, j));
    CHECK(both.u(1, j) == b.u(0, j));
  }
}

TEST_CASE("mirrored data gives the mirrored solution") {
  const auto g = make_grid(-1.0, 1.0, 32);
  auto s = test::pair(0.6);
  auto mirrored = s;
  std::swap(mirrored.species[0].ic, mirrored.species[1].ic);
  mirrored.species[0].ic = InitialCondition::rightbump();
  mirrored.species[1].ic = InitialCondition::leftbump();
  // V(x) = 2x^2 is even, so only the ICs need reflecting
  const State a = run(s, g, 0.02, FixedStep{1e-5}, {}, {});
  const State b = run(mirrored, g, 0.02, FixedStep{1e-5}, {}, {});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      CHECK(a.u(i, j) == doctest::Approx(b.u(i, g.size() - 1 - j)).epsilon(1e-10).scale(1.0));
}

TEST_CASE("added diffusivity does not roughen the solution") {
  const auto g = make_grid(-1.0, 1.0, 64);
  double previous = 1e300;
  for (double eps : {0.0, 1e-3, 1e-2}) {
    auto s = test::pair(0.4);
    s.epsilon = eps;
    const State out = run(s, g, 0.2, AdaptiveStep{}, {}, {});
    double h1 = 0.0;
    for (std::size_t i = 0; i < 2; ++i) h1 += h1_seminorm(out.u.row(i), g);
    CHECK(h1 <= previous);
    previous = h1;
  }
}

TEST_CASE("equilibrating from uniform data concentrates u_2 at the center") {
  const auto g = make_grid(-1.0, 1.0, 64);
  const auto s = test::pair(0.4, InitialCondition::uniform(), InitialCondition::uniform());
  const State out = run(s, g, 0.5, AdaptiveStep{}, {}, {});
  CHECK(out.u(1, 31) > out.u(1, 0));
  CHECK(out.u(1, 32) > out.u(1, 63));
}
