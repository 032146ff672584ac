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

// fuzzyprok: command-line front end over the C API.
//
// Exit status: 0 success, 1 validation/input failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuzzyprok/fuzzyprok.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr const char* kDefaultGrid = "log:0.01:100:32";

struct Failure {
  int code;
  std::string message;
};

struct SpaceDeleter {
  void operator()(fp_space* s) const { fp_space_free(s); }
};
struct MeasureDeleter {
  void operator()(fp_measure* m) const { fp_measure_free(m); }
};
struct StringDeleter {
  void operator()(char* s) const { fp_string_free(s); }
};
struct GridDeleter {
  void operator()(double* g) const { fp_grid_free(g); }
};

using Space = std::unique_ptr<fp_space, SpaceDeleter>;
using MeasureHandle = std::unique_ptr<fp_measure, MeasureDeleter>;
using OwnedString = std::unique_ptr<char, StringDeleter>;

void check(fp_status status, const std::string& context) {
  if (status != FP_OK)
    throw Failure{kExitFailure, context + ": " + fp_last_error()};
}

std::string read_file(const std::string& path, const std::string& role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitFailure, role + ": cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw Failure{kExitFailure, "--out: cannot write '" + path + "'"};
}

Space load_space(const std::string& path) {
  fp_space* raw = nullptr;
  check(fp_space_parse(read_file(path, "space file").c_str(), &raw),
        "space file '" + path + "'");
  return Space(raw);
}

MeasureHandle load_measure(const fp_space* space, const std::string& path) {
  fp_measure* raw = nullptr;
  check(fp_measure_parse(space, read_file(path, "measure file").c_str(), &raw),
        "measure file '" + path + "'");
  return MeasureHandle(raw);
}

std::vector<double> parse_grid(const std::string& spec) {
  double* raw = nullptr;
  std::size_t n = 0;
  if (fp_parse_t_grid(spec.c_str(), &raw, &n) != FP_OK)
    throw Failure{kExitUsage, std::string("--t-grid: ") + fp_last_error()};
  std::unique_ptr<double, GridDeleter> owned(raw);
  return std::vector<double>(raw, raw + n);
}

std::vector<std::size_t> parse_schedule(const std::string& spec) {
  std::vector<std::size_t> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || item.empty() || v == 0)
      throw Failure{kExitUsage,
                    "--schedule: '" + item + "' is not a positive integer"};
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw Failure{kExitUsage, "--schedule: empty schedule"};
  return out;
}

fp_method parse_method(const std::string& name) {
  return name == "brute" ? FP_METHOD_BRUTE : FP_METHOD_FLOW;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy Prokhorov metric on finite fuzzy metric spaces"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const std::string grid_help =
      "Scale grid: log:<min>:<max>:<count> or a comma list of increasing "
      "scales (default " + std::string(kDefaultGrid) + ")";

  // validate
  std::string v_space, v_grid;
  auto* validate = app.add_subcommand(
      "validate", "Check the fuzzy metric axioms; prints a JSON report");
  validate->add_option("space", v_space, "Space file")->required();
  validate->add_option("--t-grid", v_grid,
                       grid_help + "; table spaces default to their own grid");

  // metric
  std::string m_space, m_mu, m_nu, m_method = "flow";
  double m_t = 0.0;
  std::size_t m_cap = 20;
  auto* metric = app.add_subcommand("metric", "Compute M^(mu, nu, t) as JSON");
  metric->add_option("space", m_space, "Space file")->required();
  metric->add_option("mu", m_mu, "Measure file")->required();
  metric->add_option("nu", m_nu, "Measure file")->required();
  metric->add_option("--t", m_t, "Scale t > 0")->required();
  metric->add_option("--method", m_method, "flow (default) or brute")
      ->check(CLI::IsMember({"flow", "brute"}));
  metric->add_option("--brute-cap", m_cap,
                     "Cap on |supp(mu)| + |supp(nu)| for brute (default 20)");

  // curve
  std::string c_space, c_mu, c_nu, c_out, c_method = "flow";
  double c_tmin = 0.0, c_tmax = 0.0;
  std::size_t c_steps = 0;
  auto* curve =
      app.add_subcommand("curve", "Sample t -> M^(mu, nu, t) as CSV (t,m_hat)");
  curve->add_option("space", c_space, "Space file")->required();
  curve->add_option("mu", c_mu, "Measure file")->required();
  curve->add_option("nu", c_nu, "Measure file")->required();
  curve->add_option("--t-min", c_tmin, "Smallest scale")->required();
  curve->add_option("--t-max", c_tmax, "Largest scale")->required();
  curve->add_option("--steps", c_steps, "Number of samples (>= 2)")->required();
  curve->add_option("--out", c_out, "CSV output file (default stdout)");
  curve->add_option("--method", c_method, "flow (default) or brute")
      ->check(CLI::IsMember({"flow", "brute"}));

  // extend
  std::string e_space, e_ambient, e_grid, e_out;
  auto* extend = app.add_subcommand(
      "extend", "Extend a fuzzy metric on Y to an ambient label set X");
  extend->add_option("space", e_space, "Space file on Y")->required();
  extend->add_option("--ambient", e_ambient,
                     "JSON label array, or {\"labels\": [...], "
                     "\"assignment\": {label: {y: w}}}")
      ->required();
  extend->add_option("--t-grid", e_grid, grid_help);
  extend->add_option("--out", e_out, "Output space file (table)")->required();

  // adjoin
  std::string a_space, a_grid, a_out, a_label = "⊥";
  auto* adjoin = app.add_subcommand(
      "adjoin", "Adjoin a terminal point at membership 1/2 from every point");
  adjoin->add_option("space", a_space, "Space file")->required();
  adjoin->add_option("--out", a_out, "Output space file (table)")->required();
  adjoin->add_option("--t-grid", a_grid,
                     grid_help + "; table spaces default to their own grid");
  adjoin->add_option("--label", a_label, "Label of the new point (default ⊥)");

  // converge
  std::string g_space, g_mu, g_schedule = "10,100,1000,10000";
  double g_t = 0.0;
  std::uint64_t g_seed = 0;
  auto* converge = app.add_subcommand(
      "converge", "Empirical-measure convergence table (n,gap,tv,within_tv)");
  converge->add_option("space", g_space, "Space file")->required();
  converge->add_option("mu", g_mu, "Measure file")->required();
  converge->add_option("--schedule", g_schedule,
                       "Comma list of sample counts (default 10,100,1000,10000)");
  converge->add_option("--t", g_t, "Scale t > 0")->required();
  converge->add_option("--seed", g_seed, "Seed for MT19937-64")->required();

  // psi-probe
  std::string p_space;
  std::size_t p_trials = 0;
  std::uint64_t p_seed = 0;
  double p_t = 0.0;
  auto* psi = app.add_subcommand(
      "psi-probe", "Search random meta-measure pairs for psi expanding M^");
  psi->add_option("space", p_space, "Space file")->required();
  psi->add_option("--trials", p_trials, "Number of trials (>= 1)")->required();
  psi->add_option("--seed", p_seed, "Seed for MT19937-64")->required();
  psi->add_option("--t", p_t, "Scale t > 0")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) {
      Space space = load_space(v_space);
      std::vector<double> grid;
      if (!v_grid.empty()) {
        grid = parse_grid(v_grid);
      } else {
        const double* own = nullptr;
        std::size_t n = 0;
        check(fp_space_t_grid(space.get(), &own, &n), "space");
        grid = n > 0 ? std::vector<double>(own, own + n)
                     : parse_grid(kDefaultGrid);
      }
      std::size_t violations = 0;
      char* report = nullptr;
      check(fp_validate(space.get(), grid.data(), grid.size(), &violations,
                        &report),
            "validate");
      OwnedString owned(report);
      std::cout << report;
      if (violations > 0) {
        std::cerr << "validate: '" << v_space << "' violates the fuzzy metric "
                  << "axioms (" << violations << " violations)\n";
        return kExitFailure;
      }
    } else if (*metric) {
      Space space = load_space(m_space);
      MeasureHandle mu = load_measure(space.get(), m_mu);
      MeasureHandle nu = load_measure(space.get(), m_nu);
      fp_result result{};
      char* json = nullptr;
      check(fp_prokhorov(mu.get(), nu.get(), m_t, parse_method(m_method), m_cap,
                         &result, &json),
            "metric");
      OwnedString owned(json);
      std::cout << json;
    } else if (*curve) {
      Space space = load_space(c_space);
      MeasureHandle mu = load_measure(space.get(), c_mu);
      MeasureHandle nu = load_measure(space.get(), c_nu);
      char* csv = nullptr;
      check(fp_curve(mu.get(), nu.get(), c_tmin, c_tmax, c_steps,
                     parse_method(c_method), nullptr, nullptr, &csv),
            "curve");
      OwnedString owned(csv);
      if (c_out.empty())
        std::cout << csv;
      else
        write_file(c_out, csv);
    } else if (*extend) {
      Space space = load_space(e_space);
      std::string ambient = read_file(e_ambient, "--ambient");
      std::vector<double> grid = parse_grid(e_grid.empty() ? kDefaultGrid : e_grid);
      fp_space* raw = nullptr;
      check(fp_extend(space.get(), ambient.c_str(), grid.data(), grid.size(),
                      &raw),
            "extend");
      Space extended(raw);
      char* json = nullptr;
      check(fp_space_write(extended.get(), &json), "extend");
      OwnedString owned(json);
      write_file(e_out, json);
    } else if (*adjoin) {
      Space space = load_space(a_space);
      std::vector<double> grid;
      if (!a_grid.empty()) grid = parse_grid(a_grid);
      fp_space* raw = nullptr;
      check(fp_adjoin_terminal(space.get(), grid.empty() ? nullptr : grid.data(),
                               grid.size(), a_label.c_str(), &raw),
            "adjoin");
      Space adjoined(raw);
      char* json = nullptr;
      check(fp_space_write(adjoined.get(), &json), "adjoin");
      OwnedString owned(json);
      write_file(a_out, json);
    } else if (*converge) {
      std::vector<std::size_t> schedule = parse_schedule(g_schedule);
      Space space = load_space(g_space);
      MeasureHandle mu = load_measure(space.get(), g_mu);
      char* csv = nullptr;
      check(fp_convergence(mu.get(), schedule.data(), schedule.size(), g_t,
                           g_seed, nullptr, &csv),
            "converge");
      OwnedString owned(csv);
      std::cout << csv;
    } else if (*psi) {
      Space space = load_space(p_space);
      char* table = nullptr;
      check(fp_psi_probe(space.get(), p_trials, p_seed, p_t, nullptr, &table),
            "psi-probe");
      OwnedString owned(table);
      std::cout << table;
    }
  } catch (const Failure& f) {
    std::cerr << "fuzzyprok: " << f.message << "\n";
    return f.code;
  }
  return 0;
}
