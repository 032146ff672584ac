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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fuzzyprok {

using PointIndex = std::size_t;
using PointSet = std::set<PointIndex>;
using Matrix = std::vector<std::vector<double>>;

/// Absolute tolerance for non-threshold floating comparisons.
inline constexpr double kDefaultTolerance = 1e-9;

/// Lukasiewicz t-norm max(a + b - 1, 0). Throws DomainError outside [0, 1].
double luk(double a, double b);

/// Ball radius, strictly inside (0, 1).
class Radius {
 public:
  explicit Radius(double r);
  double value() const noexcept { return r_; }

 private:
  double r_;
};

/// Scale parameter t > 0.
class TimeScale {
 public:
  explicit TimeScale(double t);
  double value() const noexcept { return t_; }

 private:
  double t_;
};

/// M(i, j, t) = t / (t + d(i, j)).
struct StandardGenerator {
  Matrix dist;
};

/// M(i, j, t) = exp(-d(i, j) / t).
struct ExponentialGenerator {
  Matrix dist;
};

/// Per-pair samples on a strictly increasing t grid; linear in between,
/// constant outside. values[i][j][k] is M(i, j, t_grid[k]).
struct TableGenerator {
  std::vector<double> t_grid;
  std::vector<std::vector<std::vector<double>>> values;
};

using Generator =
    std::variant<StandardGenerator, ExponentialGenerator, TableGenerator>;

/// A finite fuzzy metric space (Lukasiewicz t-norm) with labelled points.
///
/// Construction checks structure only: shapes, finiteness, ranges, distinct
/// labels. Whether the membership function satisfies the fuzzy metric axioms
/// is a question for validate_axioms(), which reports violations as data.
class FuzzySpace {
 public:
  static FuzzySpace standard(std::vector<std::string> labels, Matrix dist);
  static FuzzySpace exponential(std::vector<std::string> labels, Matrix dist);
  static FuzzySpace table(std::vector<std::string> labels,
                          std::vector<double> t_grid,
                          std::vector<std::vector<std::vector<double>>> values);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(PointIndex i) const;
  std::optional<PointIndex> find(const std::string& label) const;
  /// Like find() but throws IndexError naming the label.
  PointIndex index_of(const std::string& label) const;
  const Generator& generator() const noexcept { return generator_; }

  double membership(PointIndex i, PointIndex j, TimeScale t) const;
  double membership(PointIndex i, PointIndex j, double t) const {
    return membership(i, j, TimeScale(t));
  }

  void check_index(PointIndex i) const;

 private:
  FuzzySpace(std::vector<std::string> labels, Generator generator);

  std::vector<std::string> labels_;
  Generator generator_;
};

bool in_ball(const FuzzySpace& space, PointIndex center, PointIndex y,
             Radius r, TimeScale t);

/// A^{r,t}: union of the open balls B(x, r, t) over x in A.
PointSet neighborhood(const FuzzySpace& space, const PointSet& a, Radius r,
                      TimeScale t);

enum class Axiom {
  Positivity,   // M > 0
  Identity,     // M = 1 iff i = j
  Symmetry,     // M(i, j) = M(j, i)
  Triangle,     // M(i, k, t + s) >= luk(M(i, j, t), M(j, k, s))
  Monotonicity  // nondecreasing in t along the samples
};

const char* axiom_name(Axiom a) noexcept;

struct Violation {
  Axiom axiom;
  PointIndex i = 0;
  PointIndex j = 0;
  PointIndex k = 0;  // only meaningful for Triangle
  double t = 0.0;
  double s = 0.0;    // Triangle: second scale; Monotonicity: later scale
  double lhs = 0.0;
  double rhs = 0.0;

  std::string describe(const FuzzySpace& space) const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// Total number found; violations is truncated at the configured cap.
  std::size_t total = 0;

  bool ok() const noexcept { return total == 0; }
};

struct ValidationOptions {
  double tolerance = kDefaultTolerance;
  std::size_t max_recorded = 1000;
};

ValidationReport validate_axioms(const FuzzySpace& space,
                                 std::span<const double> t_samples,
                                 const ValidationOptions& options = {});

/// A total map from the points of one space to the points of another.
using PointMap = std::vector<PointIndex>;

struct NonexpansionWitness {
  PointIndex x;
  PointIndex y;
  double t;
  double source_value;  // M(x, y, t)
  double target_value;  // M'(f(x), f(y), t)
};

struct NonexpansionCheck {
  bool nonexpanding = true;
  std::optional<NonexpansionWitness> witness;
};

NonexpansionCheck check_nonexpanding(const FuzzySpace& source,
                                     const FuzzySpace& target,
                                     const PointMap& f,
                                     std::span<const double> t_samples,
                                     double tolerance = kDefaultTolerance);

/// `count` log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace fuzzyprok
