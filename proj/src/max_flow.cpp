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

#include "fuzzyprok/max_flow.hpp"

#include <algorithm>
#include <deque>

#include "fuzzyprok/errors.hpp"

namespace fuzzyprok {

namespace {
// Residuals at or below this are treated as saturated.
constexpr double kResidualEpsilon = 1e-15;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
}  // namespace

MaxFlow::MaxFlow(std::size_t nodes, std::size_t source, std::size_t sink)
    : graph_(nodes), source_(source), sink_(sink) {
  if (source >= nodes || sink >= nodes || source == sink)
    throw DomainError("max-flow: invalid source/sink");
}

std::size_t MaxFlow::add_edge(std::size_t from, std::size_t to,
                              double capacity) {
  if (from >= graph_.size() || to >= graph_.size() || from == to)
    throw DomainError("max-flow: invalid edge endpoints");
  if (!(capacity >= 0.0)) throw DomainError("max-flow: negative capacity");
  graph_[from].push_back({to, graph_[to].size(), capacity});
  graph_[to].push_back({from, graph_[from].size() - 1, 0.0});
  edges_.emplace_back(from, graph_[from].size() - 1);
  return edges_.size() - 1;
}

bool MaxFlow::bfs(std::vector<std::size_t>& parent_arc,
                  std::vector<std::size_t>& parent_node) const {
  std::fill(parent_arc.begin(), parent_arc.end(), kNone);
  std::fill(parent_node.begin(), parent_node.end(), kNone);
  std::deque<std::size_t> queue{source_};
  parent_node[source_] = source_;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < graph_[u].size(); ++a) {
      const Arc& arc = graph_[u][a];
      if (arc.residual <= kResidualEpsilon || parent_node[arc.to] != kNone)
        continue;
      parent_node[arc.to] = u;
      parent_arc[arc.to] = a;
      if (arc.to == sink_) return true;
      queue.push_back(arc.to);
    }
  }
  return false;
}

double MaxFlow::solve() {
  std::vector<std::size_t> parent_arc(graph_.size());
  std::vector<std::size_t> parent_node(graph_.size());
  while (bfs(parent_arc, parent_node)) {
    double bottleneck = kUnbounded;
    for (std::size_t v = sink_; v != source_; v = parent_node[v]) {
      const Arc& arc = graph_[parent_node[v]][parent_arc[v]];
      bottleneck = std::min(bottleneck, arc.residual);
    }
    if (bottleneck == kUnbounded)
      throw DomainError("max-flow: unbounded source-sink path");
    for (std::size_t v = sink_; v != source_; v = parent_node[v]) {
      Arc& arc = graph_[parent_node[v]][parent_arc[v]];
      arc.residual -= bottleneck;
      graph_[arc.to][arc.rev].residual += bottleneck;
    }
    value_ += bottleneck;
  }
  return value_;
}

double MaxFlow::edge_flow(std::size_t edge) const {
  const auto& [from, slot] = edges_.at(edge);
  const Arc& arc = graph_[from][slot];
  return graph_[arc.to][arc.rev].residual;
}

std::vector<bool> MaxFlow::source_side() const {
  std::vector<bool> seen(graph_.size(), false);
  std::deque<std::size_t> queue{source_};
  seen[source_] = true;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (const Arc& arc : graph_[u]) {
      if (arc.residual > kResidualEpsilon && !seen[arc.to]) {
        seen[arc.to] = true;
        queue.push_back(arc.to);
      }
    }
  }
  return seen;
}

}  // namespace fuzzyprok
