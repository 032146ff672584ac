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

#include <cstddef>
#include <limits>
#include <vector>

namespace fuzzyprok {

/// Edmonds-Karp max-flow on real capacities.
///
/// Always augments along a shortest residual path, so the number of
/// augmentations is bounded by O(VE) regardless of capacity values. Edges
/// may be added between solve() calls; the flow found so far stays feasible
/// and later calls only augment it.
class MaxFlow {
 public:
  static constexpr double kUnbounded = std::numeric_limits<double>::infinity();

  MaxFlow(std::size_t nodes, std::size_t source, std::size_t sink);

  std::size_t add_edge(std::size_t from, std::size_t to, double capacity);

  /// Augments to a maximum flow and returns its value.
  double solve();

  double value() const noexcept { return value_; }
  double edge_flow(std::size_t edge) const;

  /// Nodes reachable from the source in the residual graph (valid after
  /// solve(); this is the source side of a minimum cut).
  std::vector<bool> source_side() const;

 private:
  struct Arc {
    std::size_t to;
    std::size_t rev;
    double residual;
  };

  bool bfs(std::vector<std::size_t>& parent_arc,
           std::vector<std::size_t>& parent_node) const;

  std::vector<std::vector<Arc>> graph_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::size_t source_;
  std::size_t sink_;
  double value_ = 0.0;
};

}  // namespace fuzzyprok
