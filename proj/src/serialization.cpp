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

#include "fuzzyprok/serialization.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "fuzzyprok/errors.hpp"
#include "json.hpp"

namespace fuzzyprok {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

const json& require(const json& obj, const char* key, const char* what) {
  if (!obj.is_object())
    throw SchemaError(std::string(what) + ": expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end())
    throw SchemaError(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number())
    throw SchemaError("field \"" + field + "\" must be a number");
  return v.get<double>();
}

std::vector<double> as_numbers(const json& v, const std::string& field) {
  if (!v.is_array())
    throw SchemaError("field \"" + field + "\" must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(as_number(v[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<std::string> as_labels(const json& v, const std::string& field) {
  if (!v.is_array())
    throw SchemaError("field \"" + field + "\" must be an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_string())
      throw SchemaError("field \"" + field + "[" + std::to_string(k) +
                        "]\" must be a string");
    out.push_back(v[k].get<std::string>());
  }
  return out;
}

std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    return std::nullopt;
  return v;
}

std::size_t resolve_point(std::string_view token,
                          const std::vector<std::string>& labels,
                          const std::string& key) {
  if (auto i = parse_index(token)) {
    if (*i < labels.size()) return *i;
    throw SchemaError("values key \"" + key + "\": index " + std::string(token) +
                      " out of range");
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == token) return i;
  throw SchemaError("values key \"" + key + "\": unknown point '" +
                    std::string(token) + "'");
}

std::vector<std::pair<PointIndex, double>> weights_by_label(
    const json& obj, const FuzzySpace& space, const std::string& field) {
  if (!obj.is_object())
    throw SchemaError("field \"" + field + "\" must be an object of weights");
  std::vector<std::pair<PointIndex, double>> out;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    auto i = space.find(it.key());
    if (!i)
      throw SchemaError("field \"" + field + "\": label '" + it.key() +
                        "' is not a point of the space");
    out.emplace_back(*i, as_number(it.value(), field + "." + it.key()));
  }
  return out;
}

}  // namespace

FuzzySpace parse_space(std::string_view text) {
  const json doc = parse_json(text, "space");
  std::vector<std::string> labels =
      as_labels(require(doc, "labels", "space"), "labels");
  const json& gen = require(doc, "generator", "space");
  if (!gen.is_string())
    throw SchemaError("field \"generator\" must be a string");
  const std::string kind = gen.get<std::string>();

  if (kind == "standard" || kind == "exponential") {
    const json& dist = require(doc, "dist", "space");
    if (!dist.is_array())
      throw SchemaError("field \"dist\" must be an array of rows");
    Matrix m;
    for (std::size_t i = 0; i < dist.size(); ++i)
      m.push_back(as_numbers(dist[i], "dist[" + std::to_string(i) + "]"));
    return kind == "standard" ? FuzzySpace::standard(std::move(labels), m)
                              : FuzzySpace::exponential(std::move(labels), m);
  }
  if (kind == "table") {
    std::vector<double> grid =
        as_numbers(require(doc, "t_grid", "space"), "t_grid");
    const json& vals = require(doc, "values", "space");
    if (!vals.is_object())
      throw SchemaError("field \"values\" must be an object keyed \"i,j\"");
    const std::size_t n = labels.size();
    std::vector<std::vector<std::vector<double>>> values(
        n, std::vector<std::vector<double>>(n));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    for (auto it = vals.begin(); it != vals.end(); ++it) {
      const std::string& key = it.key();
      auto comma = key.find(',');
      if (comma == std::string::npos)
        throw SchemaError("values key \"" + key + "\" must have the form i,j");
      std::size_t i = resolve_point(std::string_view(key).substr(0, comma),
                                    labels, key);
      std::size_t j = resolve_point(std::string_view(key).substr(comma + 1),
                                    labels, key);
      if (given[i][j])
        throw SchemaError("values key \"" + key + "\" duplicates pair " +
                          std::to_string(i) + "," + std::to_string(j));
      values[i][j] = as_numbers(it.value(), "values." + key);
      given[i][j] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (given[i][j]) continue;
        if (i == j) {
          values[i][j].assign(grid.size(), 1.0);
        } else if (given[j][i]) {
          values[i][j] = values[j][i];
        } else {
          throw SchemaError("values: missing pair " + std::to_string(i) + "," +
                            std::to_string(j) + " ('" + labels[i] + "', '" +
                            labels[j] + "')");
        }
      }
    }
    return FuzzySpace::table(std::move(labels), std::move(grid),
                             std::move(values));
  }
  throw SchemaError("field \"generator\" must be one of standard, "
                    "exponential, table; got \"" + kind + "\"");
}

std::string write_space(const FuzzySpace& space) {
  json doc;
  doc["labels"] = space.labels();
  const Generator& g = space.generator();
  if (const auto* s = std::get_if<StandardGenerator>(&g)) {
    doc["generator"] = "standard";
    doc["dist"] = s->dist;
  } else if (const auto* e = std::get_if<ExponentialGenerator>(&g)) {
    doc["generator"] = "exponential";
    doc["dist"] = e->dist;
  } else {
    const auto& t = std::get<TableGenerator>(g);
    doc["generator"] = "table";
    doc["t_grid"] = t.t_grid;
    json values = json::object();
    const std::size_t n = space.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto& series = t.values[i][j];
        bool emit = i < j;
        if (i == j)
          emit = std::any_of(series.begin(), series.end(),
                             [](double v) { return v != 1.0; });
        if (i > j) emit = series != t.values[j][i];
        if (emit)
          values[std::to_string(i) + "," + std::to_string(j)] = series;
      }
    }
    doc["values"] = std::move(values);
  }
  return doc.dump(2) + "\n";
}

Measure parse_measure(std::string_view text, const SpacePtr& space) {
  if (!space) throw DomainError("measure: null space");
  const json doc = parse_json(text, "measure");
  if (doc.contains("space") && !doc["space"].is_string() &&
      !doc["space"].is_object())
    throw SchemaError("field \"space\" must be a path string or an object");
  return Measure::from_weights(
      space, weights_by_label(require(doc, "weights", "measure"), *space,
                              "weights"));
}

AmbientSpec parse_ambient(std::string_view text, const SpacePtr& subspace) {
  if (!subspace) throw DomainError("ambient: null subspace");
  const json doc = parse_json(text, "ambient");
  if (doc.is_array()) return {as_labels(doc, "labels"), TwoAnchorMixture{}};
  AmbientSpec spec{as_labels(require(doc, "labels", "ambient"), "labels"),
                   TwoAnchorMixture{}};
  if (auto it = doc.find("assignment"); it != doc.end()) {
    if (!it->is_object())
      throw SchemaError("field \"assignment\" must be an object");
    UserAssignment user;
    for (auto a = it->begin(); a != it->end(); ++a) {
      user.images.emplace(
          a.key(), Measure::from_weights(
                       subspace, weights_by_label(a.value(), *subspace,
                                                  "assignment." + a.key())));
    }
    spec.strategy = std::move(user);
  }
  return spec;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string write_result(const ProkhorovResult& result,
                         const FuzzySpace& space) {
  json doc;
  doc["value"] = result.value;
  doc["r_star"] = result.r_star;
  doc["method"] = method_name(result.method);
  if (result.witness) {
    json labels = json::array();
    for (PointIndex p : result.witness->subset) labels.push_back(space.label(p));
    doc["witness"] = std::move(labels);
  } else {
    doc["witness"] = nullptr;
  }
  return doc.dump() + "\n";
}

std::string write_curve_csv(const MetricCurve& curve) {
  std::string out = "t,m_hat\n";
  for (const auto& p : curve)
    out += format_double(p.t) + "," + format_double(p.value) + "\n";
  return out;
}

std::string write_validation_report(const ValidationReport& report,
                                    const FuzzySpace& space) {
  json doc;
  doc["valid"] = report.ok();
  doc["total"] = report.total;
  json list = json::array();
  for (const auto& v : report.violations) {
    json item;
    item["axiom"] = axiom_name(v.axiom);
    json points = json::array({space.label(v.i), space.label(v.j)});
    if (v.axiom == Axiom::Triangle) points.push_back(space.label(v.k));
    item["points"] = std::move(points);
    item["t"] = v.t;
    if (v.axiom == Axiom::Triangle || v.axiom == Axiom::Monotonicity)
      item["s"] = v.s;
    item["lhs"] = v.lhs;
    item["rhs"] = v.rhs;
    item["message"] = v.describe(space);
    list.push_back(std::move(item));
  }
  doc["violations"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string write_convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "n,gap,tv,within_tv\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + "," + format_double(r.gap) + "," +
           format_double(r.total_variation) + "," +
           (r.within_tv ? "true" : "false") + "\n";
  return out;
}

std::string write_psi_report(const PsiProbeReport& report) {
  std::string out = "trial,components,lifted,flattened,violation\n";
  for (const auto& t : report.trials)
    out += std::to_string(t.trial) + "," +
           std::to_string(t.distinct_components) + "," +
           format_double(t.lifted) + "," + format_double(t.flattened) + "," +
           (t.violation ? "true" : "false") + "\n";
  out += "# violations=" + std::to_string(report.violations) +
         " trials=" + std::to_string(report.trials.size()) +
         " max_excess=" + format_double(report.max_excess) + "\n";
  return out;
}

std::vector<double> parse_t_grid(std::string_view spec) {
  auto number = [&](std::string_view token) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
      throw SchemaError("t-grid: '" + std::string(token) + "' is not a number");
    return v;
  };
  if (spec.starts_with("log:")) {
    std::vector<std::string_view> parts;
    std::string_view rest = spec.substr(4);
    for (std::size_t pos; (pos = rest.find(':')) != std::string_view::npos;) {
      parts.push_back(rest.substr(0, pos));
      rest = rest.substr(pos + 1);
    }
    parts.push_back(rest);
    if (parts.size() != 3)
      throw SchemaError("t-grid: expected log:<min>:<max>:<count>");
    auto count = parse_index(parts[2]);
    if (!count) throw SchemaError("t-grid: count must be a positive integer");
    try {
      return log_grid(number(parts[0]), number(parts[1]), *count);
    } catch (const DomainError& e) {
      throw SchemaError(std::string("t-grid: ") + e.what());
    }
  }
  std::vector<double> grid;
  std::string_view rest = spec;
  while (true) {
    auto pos = rest.find(',');
    grid.push_back(number(rest.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    rest = rest.substr(pos + 1);
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0))
      throw SchemaError("t-grid: scales must be > 0");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      throw SchemaError("t-grid: scales must be strictly increasing");
  }
  return grid;
}

}  // namespace fuzzyprok
