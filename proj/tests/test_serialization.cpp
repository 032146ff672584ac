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

#include <cmath>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "fuzzyprok/errors.hpp"
#include "fuzzyprok/serialization.hpp"
#include "support/generators.hpp"

using namespace fuzzyprok;
using fuzzyprok::testing::Rng;

namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& message, const std::string& field) {
  return message.find(field) != std::string::npos;
}

const char* kChain = R"({
  "labels": ["x", "y", "z"],
  "generator": "standard",
  "dist": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
})";

}  // namespace

TEST_SUITE("space files") {
  TEST_CASE("standard and exponential") {
    auto s = parse_space(kChain);
    CHECK(s.size() == 3);
    CHECK(s.membership(0, 2, 2.0) == 0.5);
    auto e = parse_space(
        R"({"labels":["a","b"],"generator":"exponential","dist":[[0,1],[1,0]]})");
    CHECK(e.membership(0, 1, 1.0) == doctest::Approx(std::exp(-1.0)));
  }

  TEST_CASE("table keys by index or label, mirrored, diagonal defaults to 1") {
    auto s = parse_space(R"({
      "labels": ["a", "b"], "generator": "table", "t_grid": [1, 2],
      "values": { "0,1": [0.25, 0.5] }
    })");
    CHECK(s.membership(1, 0, 2.0) == 0.5);
    CHECK(s.membership(1, 1, 1.0) == 1.0);
    auto by_label = parse_space(R"({
      "labels": ["a", "b"], "generator": "table", "t_grid": [1],
      "values": { "b,a": [0.25] }
    })");
    CHECK(by_label.membership(0, 1, 1.0) == 0.25);
  }

  TEST_CASE("schema errors name the field") {
    CHECK(mentions(error_of([] { parse_space("{"); }), "JSON"));
    CHECK(mentions(error_of([] { parse_space(R"({"generator":"standard"})"); }),
                   "labels"));
    CHECK(mentions(error_of([] {
                     parse_space(R"({"labels":["a"],"generator":"cubic",
                                     "dist":[[0]]})");
                   }),
                   "generator"));
    CHECK(mentions(
        error_of([] {
          parse_space(R"({"labels":["a"],"generator":"standard"})");
        }),
        "dist"));
    CHECK(mentions(error_of([] {
                     parse_space(R"({"labels":["a","b"],"generator":"table",
                                     "t_grid":[1],"values":{}})");
                   }),
                   "0,1"));
    CHECK(mentions(error_of([] {
                     parse_space(R"({"labels":["a","b"],"generator":"table",
                                     "t_grid":[1],"values":{"0,q":[0.5]}})");
                   }),
                   "0,q"));
    CHECK_THROWS_AS(parse_space(R"({"labels":["a","b"],"generator":"standard",
                                    "dist":[[0,-1],[1,0]]})"),
                    DomainError);
  }

  TEST_CASE("write then parse then write is a fixed point") {
    Rng rng(401);
    for (int trial = 0; trial < 40; ++trial) {
      auto s = fuzzyprok::testing::random_space(rng, 1, 6);
      std::string once = write_space(*s);
      auto back = parse_space(once);
      CHECK(write_space(back) == once);
      for (PointIndex i = 0; i < s->size(); ++i)
        for (PointIndex j = 0; j < s->size(); ++j)
          CHECK(back.membership(i, j, 0.7) == s->membership(i, j, 0.7));
    }
    // Tables: asymmetric entries survive the trip.
    auto t = FuzzySpace::table({"a", "b"}, {1.0, 2.0},
                               {{{1, 1}, {0.25, 0.5}}, {{0.125, 0.5}, {1, 1}}});
    std::string once = write_space(t);
    CHECK(write_space(parse_space(once)) == once);
    CHECK(parse_space(once).membership(1, 0, 1.0) == 0.125);
    CHECK(once.back() == '\n');
  }
}

TEST_SUITE("measure files") {
  TEST_CASE("weights by label") {
    auto s = std::make_shared<const FuzzySpace>(parse_space(kChain));
    auto m = parse_measure(R"({"space":"chain.json","weights":{"x":0.5,"z":0.5}})", s);
    CHECK(m.weight(0) == 0.5);
    CHECK(m.weight(2) == 0.5);
    auto no_space = parse_measure(R"({"weights":{"y":1}})", s);
    CHECK(no_space == dirac(s, 1));
  }

  TEST_CASE("errors") {
    auto s = std::make_shared<const FuzzySpace>(parse_space(kChain));
    CHECK(mentions(error_of([&] { parse_measure("{}", s); }), "weights"));
    CHECK(mentions(error_of([&] {
                     parse_measure(R"({"weights":{"w":1}})", s);
                   }),
                   "w"));
    CHECK(mentions(error_of([&] {
                     parse_measure(R"({"weights":{"x":"half"}})", s);
                   }),
                   "x"));
    CHECK_THROWS_AS(parse_measure(R"({"weights":{"x":0.5}})", s), DomainError);
  }
}

TEST_SUITE("ambient files") {
  TEST_CASE("bare list and assignment") {
    auto y = std::make_shared<const FuzzySpace>(
        FuzzySpace::standard({"a", "b"}, {{0, 1}, {1, 0}}));
    auto bare = parse_ambient(R"(["a","b","c"])", y);
    CHECK(bare.labels.size() == 3);
    CHECK(std::holds_alternative<TwoAnchorMixture>(bare.strategy));
    auto assigned = parse_ambient(
        R"({"labels":["a","b","c"],"assignment":{"c":{"a":0.25,"b":0.75}}})", y);
    REQUIRE(std::holds_alternative<UserAssignment>(assigned.strategy));
    CHECK(std::get<UserAssignment>(assigned.strategy).images.at("c").weight(1) ==
          0.75);
    CHECK_THROWS_AS(parse_ambient(R"({"assignment":{}})", y), SchemaError);
    CHECK_THROWS_AS(parse_ambient("[1, 2]", y), SchemaError);
  }
}

TEST_SUITE("writers") {
  TEST_CASE("format_double round-trips") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    Rng rng(402);
    for (int k = 0; k < 1000; ++k) {
      double v = static_cast<double>(rng.engine()()) / 1e19;
      CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
  }

  TEST_CASE("result json") {
    auto s = parse_space(kChain);
    ProkhorovResult r;
    r.value = 0.75;
    r.r_star = 0.25;
    r.method = Method::Brute;
    r.witness = Witness{Side::Nu, {0, 2}};
    std::string out = write_result(r, s);
    CHECK(mentions(out, R"("method":"brute")"));
    CHECK(mentions(out, R"("value":0.75)"));
    CHECK(mentions(out, R"("r_star":0.25)"));
    CHECK(mentions(out, R"("x")"));
    CHECK(mentions(out, R"("z")"));
    r.witness.reset();
    CHECK(mentions(write_result(r, s), R"("witness":null)"));
  }

  TEST_CASE("csv outputs") {
    MetricCurve curve{{0.5, 0.25}, {1.0, 0.5}};
    CHECK(write_curve_csv(curve) == "t,m_hat\n0.5,0.25\n1,0.5\n");
    std::vector<ConvergenceRow> rows{{10, 0.125, 0.25, true}};
    CHECK(write_convergence_csv(rows) == "n,gap,tv,within_tv\n10,0.125,0.25,true\n");
    PsiProbeReport report;
    report.trials.push_back({0, 3, 0.75, 0.5, true});
    report.violations = 1;
    report.max_excess = 0.25;
    std::string psi = write_psi_report(report);
    CHECK(psi.rfind("trial,components,lifted,flattened,violation\n", 0) == 0);
    CHECK(mentions(psi, "0,3,0.75,0.5,true\n"));
    CHECK(mentions(psi, "violations=1"));
    CHECK(psi.find('\r') == std::string::npos);
  }

  TEST_CASE("validation report names labels") {
    auto s = FuzzySpace::standard({"a", "b"}, {{0, 1}, {2, 0}});
    auto report = validate_axioms(s, std::vector<double>{1.0});
    std::string out = write_validation_report(report, s);
    CHECK(mentions(out, R"("valid": false)"));
    CHECK(mentions(out, R"("symmetry")"));
    CHECK(mentions(out, R"("a")"));
    CHECK(mentions(out, R"("b")"));
  }
}

TEST_CASE("t grid specs") {
  auto g = parse_t_grid("log:0.01:100:5");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.01);
  CHECK(g[2] == doctest::Approx(1.0));
  CHECK(g.back() == 100.0);
  CHECK(parse_t_grid("0.5,1,2") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK_THROWS(parse_t_grid(""));
  CHECK_THROWS(parse_t_grid("log:1:2"));
  CHECK_THROWS(parse_t_grid("1,x"));
  CHECK_THROWS(parse_t_grid("2,1"));
  CHECK_THROWS(parse_t_grid("-1,2"));
}
