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

#include "fuzzyprok/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fuzzyprok/errors.hpp"

namespace fuzzyprok {

namespace {

double normalized_sum(double sum, const char* what) {
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << what << " sum to " << sum << ", not 1";
    throw DomainError(os.str());
  }
  return sum;
}

}  // namespace

Measure Measure::from_weights(
    SpacePtr space, const std::vector<std::pair<PointIndex, double>>& weights) {
  if (!space) throw DomainError("measure: null space");
  std::vector<Atom> atoms;
  atoms.reserve(weights.size());
  for (const auto& [i, w] : weights) {
    space->check_index(i);
    if (!std::isfinite(w) || w < 0.0) {
      std::ostringstream os;
      os << "measure: weight of '" << space->label(i) << "' is " << w
         << "; weights must be finite and nonnegative";
      throw DomainError(os.str());
    }
    if (w > 0.0) atoms.push_back({i, w});
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.point < b.point; });
  for (std::size_t k = 1; k < atoms.size(); ++k) {
    if (atoms[k].point == atoms[k - 1].point)
      throw DomainError("measure: duplicate weight for '" +
                        space->label(atoms[k].point) + "'");
  }
  double sum = 0.0;
  for (const auto& a : atoms) sum += a.weight;
  sum = normalized_sum(sum, "measure: weights");
  if (sum != 1.0)
    for (auto& a : atoms) a.weight /= sum;
  return Measure(std::move(space), std::move(atoms));
}

Measure Measure::from_weights(SpacePtr space,
                              const std::map<PointIndex, double>& weights) {
  return from_weights(std::move(space),
                      std::vector<std::pair<PointIndex, double>>(
                          weights.begin(), weights.end()));
}

std::vector<PointIndex> Measure::support() const {
  std::vector<PointIndex> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.point);
  return out;
}

double Measure::weight(PointIndex i) const {
  space_->check_index(i);
  auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), i,
      [](const Atom& a, PointIndex p) { return a.point < p; });
  return (it != atoms_.end() && it->point == i) ? it->weight : 0.0;
}

bool operator==(const Measure& a, const Measure& b) {
  if (a.space_ != b.space_ || a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t k = 0; k < a.atoms_.size(); ++k) {
    if (a.atoms_[k].point != b.atoms_[k].point ||
        a.atoms_[k].weight != b.atoms_[k].weight)
      return false;
  }
  return true;
}

MetaMeasure::MetaMeasure(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty())
    throw DomainError("meta-measure: at least one component is required");
  double sum = 0.0;
  for (const auto& c : components_) {
    if (!std::isfinite(c.weight) || !(c.weight > 0.0))
      throw DomainError("meta-measure: component weights must be positive");
    if (c.measure.space() != components_.front().measure.space())
      throw SpaceMismatchError(
          "meta-measure: components live on different spaces");
    sum += c.weight;
  }
  sum = normalized_sum(sum, "meta-measure: component weights");
  if (sum != 1.0)
    for (auto& c : components_) c.weight /= sum;
}

void require_same_space(const Measure& a, const Measure& b) {
  if (a.space() != b.space())
    throw SpaceMismatchError("measures live on different spaces");
}

Measure dirac(SpacePtr space, PointIndex x) {
  return Measure::from_weights(std::move(space),
                               std::vector<std::pair<PointIndex, double>>{
                                   {x, 1.0}});
}

double mass(const Measure& mu, const PointSet& a) {
  for (PointIndex i : a) mu.space()->check_index(i);
  double total = 0.0;
  for (const auto& atom : mu.atoms())
    if (a.contains(atom.point)) total += atom.weight;
  return total;
}

Measure pushforward(const PointMap& f, SpacePtr target, const Measure& mu) {
  if (!target) throw DomainError("pushforward: null target space");
  std::map<PointIndex, double> image;
  for (const auto& atom : mu.atoms()) {
    if (atom.point >= f.size())
      throw DomainError("pushforward: map is undefined on support point '" +
                        mu.space()->label(atom.point) + "'");
    target->check_index(f[atom.point]);
    image[f[atom.point]] += atom.weight;
  }
  return Measure::from_weights(std::move(target), image);
}

double total_variation(const Measure& mu, const Measure& nu) {
  require_same_space(mu, nu);
  const auto& a = mu.atoms();
  const auto& b = nu.atoms();
  double sum = 0.0;
  std::size_t p = 0, q = 0;
  while (p < a.size() || q < b.size()) {
    if (q == b.size() || (p < a.size() && a[p].point < b[q].point)) {
      sum += a[p++].weight;
    } else if (p == a.size() || b[q].point < a[p].point) {
      sum += b[q++].weight;
    } else {
      sum += std::abs(a[p++].weight - b[q++].weight);
    }
  }
  return 0.5 * sum;
}

Measure sample_empirical(const Measure& mu, std::size_t n,
                         std::uint64_t seed) {
  if (n == 0) throw DomainError("sample_empirical: nSamples must be >= 1");
  const auto& atoms = mu.atoms();
  std::vector<double> cumulative;
  cumulative.reserve(atoms.size());
  double running = 0.0;
  for (const auto& a : atoms) {
    running += a.weight;
    cumulative.push_back(running);
  }
  std::mt19937_64 engine(seed);
  std::vector<std::size_t> counts(atoms.size(), 0);
  for (std::size_t draw = 0; draw < n; ++draw) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    const double target = u * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    std::size_t slot = static_cast<std::size_t>(it - cumulative.begin());
    if (slot >= atoms.size()) slot = atoms.size() - 1;
    ++counts[slot];
  }
  std::vector<std::pair<PointIndex, double>> weights;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (counts[k] > 0)
      weights.emplace_back(atoms[k].point, static_cast<double>(counts[k]) /
                                               static_cast<double>(n));
  }
  return Measure::from_weights(mu.space(), weights);
}

Measure flatten(const MetaMeasure& big) {
  std::map<PointIndex, double> mixture;
  for (const auto& c : big.components())
    for (const auto& atom : c.measure.atoms())
      mixture[atom.point] += c.weight * atom.weight;
  return Measure::from_weights(big.components().front().measure.space(),
                               mixture);
}

}  // namespace fuzzyprok
