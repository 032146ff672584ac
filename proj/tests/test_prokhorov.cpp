/*
   Copyright 2026 The fuzzyprok Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fuzzyprok/errors.hpp"
#include "fuzzyprok/prokhorov.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace fuzzyprok;
using fuzzyprok::testing::Rng;

namespace {

SpacePtr constant_pair(double m) {
  return std::make_shared<const FuzzySpace>(FuzzySpace::table(
      {"x", "y"}, {1.0}, {{{1.0}, {m}}, {{m}, {1.0}}}));
}

SpacePtr chain() {
  return std::make_shared<const FuzzySpace>(FuzzySpace::standard(
      {"x", "y", "z"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
}

Measure weights(const SpacePtr& s, std::vector<std::pair<PointIndex, double>> w) {
  return Measure::from_weights(s, w);
}

// max over B in supp(nu) of nu(B) - mu(E^T(B)) for a fixed adjacency.
double reverse_deficiency(const Measure& mu, const Measure& nu,
                          const Adjacency& adj) {
  double worst = 0.0;
  for (const auto& b : fuzzyprok::testing::subsets_of(nu.support())) {
    PointSet pre;
    for (const auto& [u, v] : adj.edges)
      if (b.count(v)) pre.insert(u);
    worst = std::max(worst, mass(nu, b) - mass(mu, pre));
  }
  return worst;
}

double forward_deficiency(const Measure& mu, const Measure& nu,
                          const Adjacency& adj) {
  double worst = 0.0;
  for (const auto& a : fuzzyprok::testing::subsets_of(mu.support())) {
    PointSet img;
    for (const auto& [u, v] : adj.edges)
      if (a.count(u)) img.insert(v);
    worst = std::max(worst, mass(mu, a) - mass(nu, img));
  }
  return worst;
}

}  // namespace

TEST_SUITE("feasible") {
  TEST_CASE("two point examples") {
    auto s = constant_pair(0.2);
    auto x = dirac(s, 0), y = dirac(s, 1);
    CHECK_FALSE(feasible(x, y, Radius(0.5), TimeScale(1.0)));
    CHECK(feasible(x, y, Radius(0.85), TimeScale(1.0)));
    CHECK(feasible(x, x, Radius(0.01), TimeScale(1.0)));
  }

  TEST_CASE("agrees with the subset oracle and is up-closed") {
    Rng rng(201);
    const std::vector<double> radii{0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                    0.6, 0.7, 0.8, 0.9, 0.95};
    for (int trial = 0; trial < 150; ++trial) {
      auto s = fuzzyprok::testing::random_space(rng, 2, 6);
      auto mu = fuzzyprok::testing::random_measure(rng, s);
      auto nu = fuzzyprok::testing::random_measure(rng, s);
      double t = rng.pick({0.25, 1.0, 4.0});
      bool seen = false;
      for (double r : radii) {
        bool f = feasible(mu, nu, Radius(r), TimeScale(t));
        CHECK(f == fuzzyprok::testing::oracle_feasible(mu, nu, r, t));
        if (seen) CHECK(f);
        seen = seen || f;
        if (f) CHECK(feasible(mu, nu, Radius(r), TimeScale(2 * t)));
      }
    }
  }

  TEST_CASE("errors") {
    auto a = dirac(chain(), 0);
    auto b = dirac(chain(), 0);
    CHECK_THROWS_AS(feasible(a, b, Radius(0.5), TimeScale(1.0)),
                    SpaceMismatchError);
  }
}

TEST_SUITE("deficiency") {
  TEST_CASE("forward and reverse deficiencies agree on every adjacency") {
    Rng rng(202);
    for (int trial = 0; trial < 200; ++trial) {
      auto s = fuzzyprok::testing::random_space(rng, 2, 7);
      auto mu = fuzzyprok::testing::random_measure(rng, s);
      auto nu = fuzzyprok::testing::random_measure(rng, s);
      Radius r(0.05 + 0.9 * rng.below(64) / 64.0);
      TimeScale t(rng.pick({0.25, 1.0, 4.0}));
      auto adj = adjacency(mu, nu, r, t);
      double fwd = forward_deficiency(mu, nu, adj);
      double rev = reverse_deficiency(mu, nu, adj);
      CHECK(fwd == doctest::Approx(rev).epsilon(1e-12));
      CHECK(hall_deficiency(mu, nu, adj) ==
            doctest::Approx(fwd).epsilon(1e-12));
    }
  }

  TEST_CASE("sweep starts at zero, is nonincreasing, and ends at zero") {
    Rng rng(203);
    for (int trial = 0; trial < 200; ++trial) {
      auto s = fuzzyprok::testing::random_space(rng);
      auto mu = fuzzyprok::testing::random_measure(rng, s);
      auto nu = fuzzyprok::testing::random_measure(rng, s);
      auto sweep = breakpoint_sweep(mu, nu, TimeScale(rng.pick({0.25, 1.0, 4.0})));
      REQUIRE(sweep.breakpoints.size() == sweep.deficiencies.size());
      CHECK(sweep.breakpoints.front() == 0.0);
      CHECK(std::is_sorted(sweep.breakpoints.begin(), sweep.breakpoints.end()));
      for (std::size_t k = 1; k < sweep.deficiencies.size(); ++k)
        CHECK(sweep.deficiencies[k] <= sweep.deficiencies[k - 1]);
      CHECK(sweep.deficiencies.back() == 0.0);
    }
  }

  TEST_CASE("0.9 example") {
    auto s = constant_pair(0.9);
    auto sweep = breakpoint_sweep(dirac(s, 0), dirac(s, 1), TimeScale(1.0));
    REQUIRE(sweep.breakpoints.size() == 2);
    CHECK(sweep.breakpoints[0] == 0.0);
    CHECK(sweep.breakpoints[1] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(sweep.deficiencies[0] == 1.0);
    CHECK(sweep.deficiencies[1] == 0.0);
  }
}

TEST_SUITE("evaluators") {
  TEST_CASE("identical measures give 1") {
    auto s = chain();
    auto mu = weights(s, {{0, 0.5}, {2, 0.5}});
    for (auto m : {Method::Flow, Method::Brute}) {
      auto r = prokhorov(mu, mu, TimeScale(1.0), m);
      CHECK(r.value == 1.0);
      CHECK(r.r_star == 0.0);
      CHECK(r.method == m);
    }
  }

  TEST_CASE("two point standard space at distance 1") {
    auto s = std::make_shared<const FuzzySpace>(
        FuzzySpace::standard({"x", "y"}, {{0, 1}, {1, 0}}));
    for (auto m : {Method::Flow, Method::Brute})
      CHECK(prokhorov(dirac(s, 0), dirac(s, 1), TimeScale(1.0), m).value ==
            doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("partial overlap at M = 0.2") {
    auto s = constant_pair(0.2);
    auto nu = weights(s, {{0, 0.7}, {1, 0.3}});
    auto brute = prokhorov_brute(dirac(s, 0), nu, TimeScale(1.0));
    CHECK(brute.value == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(brute.r_star == doctest::Approx(0.3).epsilon(1e-15));
    REQUIRE(brute.witness);
    CHECK(prokhorov_flow(dirac(s, 0), nu, TimeScale(1.0)).value ==
          doctest::Approx(0.7).epsilon(1e-15));
  }

  TEST_CASE("flow at M = 0.9") {
    auto s = constant_pair(0.9);
    auto r = prokhorov_flow(dirac(s, 0), dirac(s, 1), TimeScale(1.0));
    CHECK(r.value == doctest::Approx(0.9).epsilon(1e-15));
    CHECK_FALSE(r.witness);
  }

  TEST_CASE("chain endpoints") {
    auto s = chain();
    auto flow = prokhorov_flow(dirac(s, 0), dirac(s, 2), TimeScale(1.0));
    auto brute = prokhorov_brute(dirac(s, 0), dirac(s, 2), TimeScale(1.0));
    CHECK(flow.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(flow.value - brute.value) <= 1e-12);
    REQUIRE(brute.witness);
    CHECK(brute.witness->side == Side::Mu);
    CHECK(brute.witness->subset == PointSet{0});
  }

  TEST_CASE("flow and brute match the candidate-scan oracle") {
    Rng rng(204);
    for (int trial = 0; trial < 200; ++trial) {
      auto s = fuzzyprok::testing::random_space(rng, 2, 7);
      auto mu = fuzzyprok::testing::random_measure(rng, s);
      auto nu = fuzzyprok::testing::random_measure(rng, s);
      double t = rng.pick({0.25, 1.0, 4.0});
      double expected = fuzzyprok::testing::oracle_r_star(mu, nu, t);
      auto flow = prokhorov_flow(mu, nu, TimeScale(t));
      auto brute = prokhorov_brute(mu, nu, TimeScale(t));
      CHECK(flow.r_star == doctest::Approx(expected).epsilon(1e-9));
      CHECK(brute.r_star == doctest::Approx(expected).epsilon(1e-9));
      CHECK(flow.value == doctest::Approx(1.0 - flow.r_star).epsilon(1e-15));
    }
  }

  TEST_CASE("errors") {
    auto s = chain();
    CHECK_THROWS_AS(prokhorov(dirac(s, 0), dirac(chain(), 0), TimeScale(1.0)),
                    SpaceMismatchError);
    // 12 + 12 support points exceed the default cap of 20.
    std::vector<std::pair<PointIndex, double>> w;
    for (PointIndex i = 0; i < 11; ++i) w.emplace_back(i, 1.0 / 16.0);
    w.emplace_back(11, 5.0 / 16.0);
    Matrix d(12, std::vector<double>(12, 1.0));
    for (std::size_t i = 0; i < 12; ++i) d[i][i] = 0.0;
    auto sp = std::make_shared<const FuzzySpace>(
        FuzzySpace::standard(fuzzyprok::testing::point_labels(12), d));
    auto mu = Measure::from_weights(sp, w);
    BruteOptions opts;
    opts.support_cap = 20;
    CHECK_THROWS_AS(prokhorov_brute(mu, mu, TimeScale(1.0), opts), LimitError);
    opts.support_cap = 24;
    CHECK(prokhorov_brute(mu, mu, TimeScale(1.0), opts).value == 1.0);
  }
}

TEST_SUITE("curve") {
  TEST_CASE("dirac pair follows the generator") {
    auto s = std::make_shared<const FuzzySpace>(
        FuzzySpace::standard({"x", "y"}, {{0, 3}, {3, 0}}));
    auto curve = prokhorov_curve(dirac(s, 0), dirac(s, 1), 0.5, 10.0, 20);
    REQUIRE(curve.size() == 20);
    CHECK(curve.front().t == 0.5);
    CHECK(curve.back().t == 10.0);
    for (const auto& p : curve)
      CHECK(p.value == doctest::Approx(p.t / (p.t + 3.0)).epsilon(1e-12));
  }

  TEST_CASE("identical measures are constant at 1") {
    auto s = chain();
    for (const auto& p : prokhorov_curve(dirac(s, 1), dirac(s, 1), 0.1, 5, 7))
      CHECK(p.value == 1.0);
  }

  TEST_CASE("random curves are nondecreasing") {
    Rng rng(205);
    for (int trial = 0; trial < 60; ++trial) {
      auto s = fuzzyprok::testing::random_space(rng);
      auto mu = fuzzyprok::testing::random_measure(rng, s);
      auto nu = fuzzyprok::testing::random_measure(rng, s);
      auto curve = prokhorov_curve(mu, nu, 0.05, 20.0, 40);
      for (std::size_t k = 1; k < curve.size(); ++k)
        CHECK(curve[k].value >= curve[k - 1].value - 1e-12);
    }
  }

  TEST_CASE("errors") {
    auto s = chain();
    CHECK_THROWS_AS(prokhorov_curve(dirac(s, 0), dirac(s, 1), 2.0, 1.0, 5),
                    DomainError);
    CHECK_THROWS_AS(prokhorov_curve(dirac(s, 0), dirac(s, 1), 0.0, 1.0, 5),
                    DomainError);
    CHECK_THROWS_AS(prokhorov_curve(dirac(s, 0), dirac(s, 1), 1.0, 2.0, 1),
                    DomainError);
  }
}

TEST_SUITE("convergence") {
  TEST_CASE("dirac target has zero gap") {
    auto s = chain();
    std::vector<std::size_t> schedule{1, 10, 100};
    for (const auto& row :
         convergence_experiment(dirac(s, 1), schedule, TimeScale(1.0), 3)) {
      CHECK(row.gap == 0.0);
      CHECK(row.total_variation == 0.0);
      CHECK(row.within_tv);
    }
  }

  TEST_CASE("every row is dominated by total variation") {
    auto s = chain();
    auto mu = weights(s, {{0, 0.5}, {1, 0.25}, {2, 0.25}});
    std::vector<std::size_t> schedule{1, 5, 25, 125, 625};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto rows = convergence_experiment(mu, schedule, TimeScale(1.0), seed);
      REQUIRE(rows.size() == schedule.size());
      for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k].n == schedule[k]);
        CHECK(rows[k].within_tv);
        auto emp = sample_empirical(mu, schedule[k], seed);
        CHECK(rows[k].total_variation == total_variation(emp, mu));
      }
    }
  }
}

TEST_SUITE("tv domination") {
  TEST_CASE("1 - value <= TV on random instances") {
    Rng rng(206);
    for (int trial = 0; trial < 300; ++trial) {
      auto s = fuzzyprok::testing::random_space(rng);
      auto mu = fuzzyprok::testing::random_measure(rng, s);
      auto nu = fuzzyprok::testing::random_measure(rng, s);
      double t = rng.pick({0.1, 1.0, 10.0});
      CHECK(1.0 - prokhorov_flow(mu, nu, TimeScale(t)).value <=
            total_variation(mu, nu) + 1e-12);
    }
  }
}

TEST_SUITE("measure space and psi") {
  TEST_CASE("measure_space stores values on the grid") {
    auto s = chain();
    std::vector<Measure> pts{dirac(s, 0), dirac(s, 2)};
    auto ms = measure_space(pts, {"A", "B"}, {1.0, 2.0});
    CHECK(ms.membership(0, 1, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(ms.membership(0, 1, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ms.membership(1, 1, 2.0) == 1.0);
    CHECK_THROWS_AS(measure_space(pts, {"A"}, {1.0}), DomainError);
  }

  TEST_CASE("dirac meta-measures reproduce the base distance") {
    auto s = chain();
    auto mu = weights(s, {{0, 0.5}, {1, 0.5}});
    auto nu = dirac(s, 2);
    auto trial = psi_compare(MetaMeasure({{1.0, mu}}), MetaMeasure({{1.0, nu}}),
                             TimeScale(1.0));
    double base = prokhorov_flow(mu, nu, TimeScale(1.0)).value;
    CHECK(trial.lifted == doctest::Approx(base).epsilon(1e-12));
    CHECK(trial.flattened == doctest::Approx(base).epsilon(1e-12));
    CHECK_FALSE(trial.violation);
  }

  TEST_CASE("identical meta-measures give 1 at both levels") {
    auto s = chain();
    MetaMeasure a({{0.5, dirac(s, 0)}, {0.5, dirac(s, 1)}});
    auto trial = psi_compare(a, a, TimeScale(1.0));
    CHECK(trial.lifted == 1.0);
    CHECK(trial.flattened == 1.0);
    CHECK(trial.distinct_components == 2);
  }

  TEST_CASE("probe is deterministic and counts its violations") {
    auto s = chain();
    auto a = psi_nonexpansion_probe(s, 25, 9, TimeScale(1.0));
    auto b = psi_nonexpansion_probe(s, 25, 9, TimeScale(1.0));
    REQUIRE(a.trials.size() == 25);
    std::size_t count = 0;
    for (std::size_t k = 0; k < a.trials.size(); ++k) {
      CHECK(a.trials[k].lifted == b.trials[k].lifted);
      CHECK(a.trials[k].flattened == b.trials[k].flattened);
      count += a.trials[k].violation;
    }
    CHECK(count == a.violations);
    CHECK_THROWS_AS(psi_nonexpansion_probe(s, 0, 1, TimeScale(1.0)),
                    DomainError);
  }
}
