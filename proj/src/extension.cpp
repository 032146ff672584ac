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

#include "fuzzyprok/extension.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "fuzzyprok/errors.hpp"
#include "fuzzyprok/prokhorov.hpp"

namespace fuzzyprok {

EmbeddingPlan plan_embedding(const std::vector<std::string>& ambient,
                             const SpacePtr& subspace,
                             const EmbeddingStrategy& strategy) {
  if (!subspace) throw DomainError("embedding: null subspace");
  std::unordered_set<std::string> seen;
  for (const auto& l : ambient)
    if (!seen.insert(l).second)
      throw DomainError("embedding: duplicate ambient label '" + l + "'");
  for (const auto& y : subspace->labels())
    if (!seen.contains(y))
      throw DomainError("embedding: subspace label '" + y +
                        "' is missing from the ambient set");

  std::vector<std::string> fresh;
  for (const auto& x : ambient)
    if (!subspace->find(x)) fresh.push_back(x);

  EmbeddingPlan plan{ambient, subspace, {}};
  plan.images.reserve(ambient.size());

  if (std::holds_alternative<TwoAnchorMixture>(strategy)) {
    if (!fresh.empty() && subspace->size() < 2)
      throw DomainError(
          "embedding: the two-anchor strategy needs |Y| >= 2 when the ambient "
          "set has new points");
    std::vector<std::string> sorted = subspace->labels();
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = fresh.size();
    std::size_t k = 0;
    for (const auto& x : ambient) {
      if (auto y = subspace->find(x)) {
        plan.images.push_back(dirac(subspace, *y));
        continue;
      }
      ++k;
      const double lambda = static_cast<double>(k) / static_cast<double>(m + 1);
      plan.images.push_back(Measure::from_weights(
          subspace, std::vector<std::pair<PointIndex, double>>{
                        {subspace->index_of(sorted[0]), 1.0 - lambda},
                        {subspace->index_of(sorted[1]), lambda}}));
    }
  } else {
    const auto& user = std::get<UserAssignment>(strategy);
    for (const auto& [label, image] : user.images) {
      if (!seen.contains(label))
        throw DomainError("embedding: assignment for unknown point '" + label +
                          "'");
      if (image.space() != subspace)
        throw SpaceMismatchError("embedding: image of '" + label +
                                 "' is not a measure on the subspace");
    }
    for (const auto& x : ambient) {
      auto y = subspace->find(x);
      auto it = user.images.find(x);
      if (y) {
        Measure delta = dirac(subspace, *y);
        if (it != user.images.end() && !(it->second == delta))
          throw DomainError("embedding: '" + x +
                            "' lies in the subspace and must map to its Dirac "
                            "measure");
        plan.images.push_back(std::move(delta));
      } else {
        if (it == user.images.end())
          throw DomainError("embedding: no image assigned to '" + x + "'");
        plan.images.push_back(it->second);
      }
    }
  }

  for (std::size_t i = 0; i < plan.images.size(); ++i)
    for (std::size_t j = i + 1; j < plan.images.size(); ++j)
      if (total_variation(plan.images[i], plan.images[j]) <= kDefaultTolerance)
        throw DomainError("embedding: '" + ambient[i] + "' and '" + ambient[j] +
                          "' map to the same measure; F must be injective");
  return plan;
}

std::vector<double> default_extension_grid() {
  return log_grid(0.01, 100.0, 32);
}

std::vector<double> refine_grid(const std::vector<double>& t_grid) {
  std::vector<double> out;
  out.reserve(2 * t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (k > 0) out.push_back(std::sqrt(t_grid[k - 1] * t_grid[k]));
    out.push_back(t_grid[k]);
  }
  return out;
}

FuzzySpace extend_metric(const EmbeddingPlan& plan,
                         const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw DomainError("extend: t grid must be nonempty");
  FuzzySpace extended = measure_space(plan.images, plan.ambient, t_grid);
  for (const auto& probe : {t_grid, refine_grid(t_grid)}) {
    ValidationReport report = validate_axioms(extended, probe);
    if (!report.ok())
      throw ValidationError("extend: extended metric fails validation (" +
                            std::to_string(report.total) + " violations): " +
                            report.violations.front().describe(extended));
  }
  return extended;
}

FuzzySpace adjoin_terminal(const FuzzySpace& space,
                           const std::vector<double>& t_grid,
                           const std::string& terminal_label) {
  if (t_grid.empty()) throw DomainError("adjoin: t grid must be nonempty");
  if (space.find(terminal_label))
    throw DomainError("adjoin: label '" + terminal_label +
                      "' is already taken");
  const std::size_t n = space.size();
  std::vector<std::string> labels = space.labels();
  labels.push_back(terminal_label);
  std::vector<std::vector<std::vector<double>>> values(
      n + 1, std::vector<std::vector<double>>(
                 n + 1, std::vector<double>(t_grid.size(), 0.5)));
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    TimeScale t(t_grid[k]);
    for (PointIndex i = 0; i < n; ++i)
      for (PointIndex j = 0; j < n; ++j)
        values[i][j][k] = space.membership(i, j, t);
    values[n][n][k] = 1.0;
  }
  return FuzzySpace::table(std::move(labels), t_grid, std::move(values));
}

}  // namespace fuzzyprok
