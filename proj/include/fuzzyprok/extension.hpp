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

#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "fuzzyprok/measure.hpp"
#include "fuzzyprok/space.hpp"

namespace fuzzyprok {

/// Ambient points outside Y become mixtures of the two lexicographically
/// smallest labels y0 < y1 of Y: the k-th of m new points (in ambient order)
/// maps to (1 - k/(m+1)) delta_{y0} + k/(m+1) delta_{y1}.
struct TwoAnchorMixture {};

/// Explicit images for (some or all) ambient points. Points of Y, if listed,
/// must map to their own Dirac measure. Unlisted new points are an error.
struct UserAssignment {
  std::map<std::string, Measure> images;
};

using EmbeddingStrategy = std::variant<TwoAnchorMixture, UserAssignment>;

/// An injective map F from the ambient labels into P(Y) with F(y) = delta_y.
struct EmbeddingPlan {
  std::vector<std::string> ambient;
  SpacePtr subspace;
  std::vector<Measure> images;  // images[i] = F(ambient[i])
};

EmbeddingPlan plan_embedding(const std::vector<std::string>& ambient,
                             const SpacePtr& subspace,
                             const EmbeddingStrategy& strategy = {});

/// M'(x, x', t) = M^(F(x), F(x'), t) tabulated on t_grid. The result is
/// validated on t_grid and on a refined probe grid; a failure throws
/// ValidationError carrying the first violation.
FuzzySpace extend_metric(const EmbeddingPlan& plan,
                         const std::vector<double>& t_grid);

/// The grid a plain `extend` uses: 32 log-spaced scales in [0.01, 100].
std::vector<double> default_extension_grid();

/// t_grid with the geometric midpoint of every adjacent pair inserted.
std::vector<double> refine_grid(const std::vector<double>& t_grid);

/// X plus one terminal point at membership 1/2 from everything else,
/// tabulated on t_grid.
FuzzySpace adjoin_terminal(const FuzzySpace& space,
                           const std::vector<double>& t_grid,
                           const std::string& terminal_label = "⊥");

}  // namespace fuzzyprok
