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

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "fuzzyprok/space.hpp"

namespace fuzzyprok {

using SpacePtr = std::shared_ptr<const FuzzySpace>;

/// Inputs whose weights sum to within this of 1 are renormalized.
inline constexpr double kWeightSumTolerance = 1e-12;

/// A finite-support probability measure on a FuzzySpace.
///
/// Atoms are kept sorted by point index; every stored weight is positive.
class Measure {
 public:
  struct Atom {
    PointIndex point;
    double weight;
  };

  /// Zero weights are dropped, negative or non-finite weights rejected, and
  /// the remainder renormalized by its sum if that sum is within
  /// kWeightSumTolerance of 1. Duplicate indices are an error.
  static Measure from_weights(SpacePtr space,
                              const std::vector<std::pair<PointIndex, double>>&
                                  weights);
  static Measure from_weights(SpacePtr space,
                              const std::map<PointIndex, double>& weights);

  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::vector<PointIndex> support() const;
  double weight(PointIndex i) const;

  friend bool operator==(const Measure& a, const Measure& b);

 private:
  Measure(SpacePtr space, std::vector<Atom> atoms)
      : space_(std::move(space)), atoms_(std::move(atoms)) {}

  SpacePtr space_;
  std::vector<Atom> atoms_;
};

/// Weighted list of measures on one space: an element of P(P(X)) with
/// finite support.
class MetaMeasure {
 public:
  struct Component {
    double weight;
    Measure measure;
  };

  explicit MetaMeasure(std::vector<Component> components);

  const std::vector<Component>& components() const noexcept {
    return components_;
  }

 private:
  std::vector<Component> components_;
};

/// Throws SpaceMismatchError unless both measures live on the same space.
void require_same_space(const Measure& a, const Measure& b);

Measure dirac(SpacePtr space, PointIndex x);

/// mu(A).
double mass(const Measure& mu, const PointSet& a);

/// Image measure P(f)(mu) on `target`.
Measure pushforward(const PointMap& f, SpacePtr target, const Measure& mu);

double total_variation(const Measure& mu, const Measure& nu);

/// Empirical measure of n i.i.d. draws from mu.
///
/// Draws come from std::mt19937_64 seeded with `seed`; each 64-bit output x
/// is mapped to u = (x >> 11) * 2^-53 in [0, 1) and inverted against the
/// cumulative weights in increasing point order. Output is a pure function
/// of (mu, n, seed) on every platform, and the first m draws of a run are
/// the draws of a run with n = m.
Measure sample_empirical(const Measure& mu, std::size_t n, std::uint64_t seed);

/// psi: the mixture sum_i alpha_i mu_i.
Measure flatten(const MetaMeasure& big);

}  // namespace fuzzyprok
