#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "pmx/diagnostics.hpp"
#include "pmx/energy.hpp"
#include "pmx/fv.hpp"

using namespace pmx;

TEST_CASE("L2 norm") {
  const auto g = make_grid(-1.0, 1.0, 64);
  CHECK(l2_norm(std::vector<double>(64, 0.0), g) == 0.0);
  CHECK(l2_norm(std::vector<double>(64, 0.5), g) == doctest::Approx(std::sqrt(0.5)));
  const auto fine = make_grid(-1.0, 1.0, 512);
  std::vector<double> x(fine.centers().begin(), fine.centers().end());
  CHECK(std::abs(l2_norm(x, fine) - std::sqrt(2.0 / 3.0)) < 1e-3);
}

TEST_CASE("H1 seminorm") {
  const auto g = make_grid(-1.0, 1.0, 64);
  CHECK(h1_seminorm(std::vector<double>(64, 3.0), g) == 0.0);
  std::vector<double> x(g.centers().begin(), g.centers().end());
  // 63 unit slopes over J - 1 interior pairs
  CHECK(h1_seminorm(x, g) == doctest::Approx(std::sqrt(2.0 - g.dx())).epsilon(1e-13));
  CHECK(std::abs(h1_seminorm(x, g) - std::sqrt(2.0)) < g.dx());
  const double h = 0.7;
  std::vector<double> spike(64, 0.0);
  spike[30] = h;
  CHECK(h1_seminorm(spike, g) == doctest::Approx(h * std::sqrt(2.0 / g.dx())).epsilon(1e-13));
}

TEST_CASE("total variation") {
  CHECK(tv_norm(std::vector<double>(10, 2.0)) == 0.0);
  CHECK(tv_norm(std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}) == 1.0);
  CHECK(tv_norm(std::vector<double>{0.0, 0.0, 1.5, 0.0}) == 3.0);
}

TEST_CASE("positive-part entropy") {
  const auto g = make_grid(-1.0, 1.0, 16);
  CHECK(entropy_pos(std::vector<double>(16, 0.5), g) == 0.0);
  CHECK(entropy_pos(std::vector<double>(16, 0.0), g) == 0.0);
  CHECK(entropy_pos(std::vector<double>(16, std::numbers::e), make_grid(0.0, 1.0, 16)) ==
        doctest::Approx(std::numbers::e));
  CHECK(entropy_pos(std::vector<double>(16, 2.0), g) == doctest::Approx(4.0 * std::log(2.0)));
}

TEST_CASE("norm properties") {
  const auto g = make_grid(-1.0, 1.0, 40);
  std::vector<double> u(g.size()), scaled(g.size()), shifted(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) u[j] = std::abs(std::sin(5.0 * g.center(j)));
  for (double lambda : {0.0, 0.3, 2.5}) {
    for (std::size_t j = 0; j < g.size(); ++j) scaled[j] = lambda * u[j];
    CHECK(l2_norm(scaled, g) == doctest::Approx(lambda * l2_norm(u, g)));
    CHECK(h1_seminorm(scaled, g) == doctest::Approx(lambda * h1_seminorm(u, g)));
    CHECK(tv_norm(scaled) == doctest::Approx(lambda * tv_norm(u)));
  }
  for (std::size_t j = 0; j < g.size(); ++j) shifted[j] = u[j] + 4.0;
  CHECK(tv_norm(shifted) == doctest::Approx(tv_norm(u)));
  CHECK(tv_norm(u) <= 2.0 * g.cells() * *std::max_element(u.begin(), u.end()));

  // entropy grows under a pointwise increase above 1
  std::vector<double> high(g.size()), higher(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    high[j] = 1.0 + u[j];
    higher[j] = high[j] + 0.1 * static_cast<double>(j % 3);
  }
  CHECK(entropy_pos(higher, g) >= entropy_pos(high, g));
}

TEST_CASE("records carry the norms of the state") {
  const auto g = make_grid(-1.0, 1.0, 64);
  const auto s = test::pair(0.4);
  const State st = build_initial_state(s, g);
  const auto r = make_record(st, s, g);
  REQUIRE(r.species.size() == 2);
  CHECK(r.species[0].mass == doctest::Approx(1.0));
  CHECK(r.species[0].min_density == 0.0);
  CHECK(r.species[1].tv == tv_norm(st.u.row(1)));
  CHECK(r.energy == energy(st, s, g));
}

TEST_CASE("integrated norms") {
  CHECK(integrated_norms(std::vector<DiagnosticsRecord>{{0.0, {{}, {}}, 0.0}}).u_2T == 0.0);

  const double a = 0.8;
  SpeciesNorms n;
  n.l2 = a;
  n.h1semi = 2.0;
  n.tv = 1.0;
  const std::vector<DiagnosticsRecord> one{{0.0, {n, n}, 0.0}};
  const auto r = integrated_norms(one, 0.3);
  CHECK(r.delta == 0.3);
  CHECK(r.u_2T == doctest::Approx(a * std::sqrt(2.0)));
  CHECK(r.grad_u_2T == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(r.tv_T == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("entropy estimate at a uniform equilibrium") {
  const auto g = make_grid(-1.0, 1.0, 64);
  SystemSpec s;
  s.species = {test::species()};
  const State st = build_initial_state(s, g);
  const std::vector<State> snapshots{st, State{1.0, st.u}};
  const auto est = energy_estimate_check(snapshots, s, g, 0.0);
  CHECK(est.holds);
  CHECK(est.species[0].lhs == 0.0);
  CHECK(est.species[0].rhs > 0.0);
}

TEST_CASE("entropy estimate along runs") {
  const auto g = make_grid(-1.0, 1.0, 64);
  const auto check_run = [&](const SystemSpec& s, double c_l) {
    std::vector<State> snapshots;
    (void)run(s, g, 0.5, AdaptiveStep{}, equally_spaced_times(0.5, 10),
              [&](const DiagnosticsRecord&, const State& st) { snapshots.push_back(st); });
    return energy_estimate_check(snapshots, s, g, c_l);
  };
  CHECK(check_run(test::pair(0.4), 6.0).holds);
  SystemSpec lone;
  lone.species = {test::species(PotentialSpec::quadratic(2.0), InitialCondition::leftbump())};
  CHECK(check_run(lone, 6.0).holds);
}
