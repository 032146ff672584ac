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

#include "fuzzyprok/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "fuzzyprok/errors.hpp"

namespace fuzzyprok {

namespace {

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << "luk: argument " << name << " = " << v << " is outside [0, 1]";
    throw DomainError(os.str());
  }
}

void check_labels(const std::vector<std::string>& labels) {
  if (labels.empty()) throw DomainError("space: at least one point is required");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second)
      throw DomainError("space: duplicate label '" + l + "'");
  }
}

void check_distances(const Matrix& dist, std::size_t n) {
  if (dist.size() != n)
    throw DomainError("space: dist must have " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n)
      throw DomainError("space: dist row " + std::to_string(i) + " must have " +
                        std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      double d = dist[i][j];
      if (!std::isfinite(d) || d < 0.0) {
        std::ostringstream os;
        os << "space: dist[" << i << "][" << j << "] = " << d
           << " must be finite and nonnegative";
        throw DomainError(os.str());
      }
    }
  }
}

double interpolate(const std::vector<double>& grid,
                   const std::vector<double>& values, double t) {
  if (t <= grid.front()) return values.front();
  if (t >= grid.back()) return values.back();
  auto it = std::upper_bound(grid.begin(), grid.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  std::size_t lo = hi - 1;
  double w = (t - grid[lo]) / (grid[hi] - grid[lo]);
  return values[lo] + w * (values[hi] - values[lo]);
}

}  // namespace

double luk(double a, double b) {
  check_unit(a, "a");
  check_unit(b, "b");
  return std::max(a + b - 1.0, 0.0);
}

Radius::Radius(double r) : r_(r) {
  if (!(r > 0.0 && r < 1.0)) {
    std::ostringstream os;
    os << "radius r = " << r << " must lie in (0, 1)";
    throw DomainError(os.str());
  }
}

TimeScale::TimeScale(double t) : t_(t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << "scale t = " << t << " must be finite and > 0";
    throw DomainError(os.str());
  }
}

FuzzySpace::FuzzySpace(std::vector<std::string> labels, Generator generator)
    : labels_(std::move(labels)), generator_(std::move(generator)) {}

FuzzySpace FuzzySpace::standard(std::vector<std::string> labels, Matrix dist) {
  check_labels(labels);
  check_distances(dist, labels.size());
  return FuzzySpace(std::move(labels), StandardGenerator{std::move(dist)});
}

FuzzySpace FuzzySpace::exponential(std::vector<std::string> labels,
                                   Matrix dist) {
  check_labels(labels);
  check_distances(dist, labels.size());
  return FuzzySpace(std::move(labels), ExponentialGenerator{std::move(dist)});
}

FuzzySpace FuzzySpace::table(
    std::vector<std::string> labels, std::vector<double> t_grid,
    std::vector<std::vector<std::vector<double>>> values) {
  check_labels(labels);
  const std::size_t n = labels.size();
  if (t_grid.empty()) throw DomainError("space: t_grid must be nonempty");
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > 0.0) || !std::isfinite(t_grid[k]))
      throw DomainError("space: t_grid[" + std::to_string(k) +
                        "] must be finite and > 0");
    if (k > 0 && !(t_grid[k] > t_grid[k - 1]))
      throw DomainError("space: t_grid must be strictly increasing at index " +
                        std::to_string(k));
  }
  if (values.size() != n)
    throw DomainError("space: table must have " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i].size() != n)
      throw DomainError("space: table row " + std::to_string(i) +
                        " must have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      const auto& series = values[i][j];
      if (series.size() != t_grid.size())
        throw DomainError("space: values for pair " + std::to_string(i) + "," +
                          std::to_string(j) + " must have " +
                          std::to_string(t_grid.size()) + " samples");
      for (double v : series) {
        if (!(v > 0.0 && v <= 1.0)) {
          std::ostringstream os;
          os << "space: values for pair " << i << "," << j << " contain " << v
             << ", outside (0, 1]";
          throw DomainError(os.str());
        }
      }
    }
  }
  return FuzzySpace(std::move(labels),
                    TableGenerator{std::move(t_grid), std::move(values)});
}

const std::string& FuzzySpace::label(PointIndex i) const {
  check_index(i);
  return labels_[i];
}

std::optional<PointIndex> FuzzySpace::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<PointIndex>(it - labels_.begin());
}

PointIndex FuzzySpace::index_of(const std::string& label) const {
  auto i = find(label);
  if (!i) throw IndexError("unknown point label '" + label + "'");
  return *i;
}

void FuzzySpace::check_index(PointIndex i) const {
  if (i >= labels_.size())
    throw IndexError("point index " + std::to_string(i) +
                     " out of range for a space of " +
                     std::to_string(labels_.size()) + " points");
}

double FuzzySpace::membership(PointIndex i, PointIndex j, TimeScale t) const {
  check_index(i);
  check_index(j);
  const double tv = t.value();
  struct Visitor {
    PointIndex i, j;
    double t;
    double operator()(const StandardGenerator& g) const {
      return t / (t + g.dist[i][j]);
    }
    double operator()(const ExponentialGenerator& g) const {
      return std::exp(-g.dist[i][j] / t);
    }
    double operator()(const TableGenerator& g) const {
      return interpolate(g.t_grid, g.values[i][j], t);
    }
  };
  return std::visit(Visitor{i, j, tv}, generator_);
}

bool in_ball(const FuzzySpace& space, PointIndex center, PointIndex y,
             Radius r, TimeScale t) {
  return space.membership(center, y, t) > 1.0 - r.value();
}

PointSet neighborhood(const FuzzySpace& space, const PointSet& a, Radius r,
                      TimeScale t) {
  for (PointIndex x : a) space.check_index(x);
  PointSet out;
  if (a.empty()) return out;
  for (PointIndex y = 0; y < space.size(); ++y) {
    if (a.contains(y)) {
      out.insert(y);
      continue;
    }
    for (PointIndex x : a) {
      if (in_ball(space, x, y, r, t)) {
        out.insert(y);
        break;
      }
    }
  }
  return out;
}

const char* axiom_name(Axiom a) noexcept {
  switch (a) {
    case Axiom::Positivity: return "positivity";
    case Axiom::Identity: return "identity";
    case Axiom::Symmetry: return "symmetry";
    case Axiom::Triangle: return "triangle";
    case Axiom::Monotonicity: return "monotonicity";
  }
  return "unknown";
}

std::string Violation::describe(const FuzzySpace& space) const {
  std::ostringstream os;
  os.precision(17);
  const auto& li = space.label(i);
  const auto& lj = space.label(j);
  switch (axiom) {
    case Axiom::Positivity:
      os << "positivity: M(" << li << ", " << lj << ", " << t << ") = " << lhs
         << " is not > 0";
      break;
    case Axiom::Identity:
      if (i == j)
        os << "identity: M(" << li << ", " << lj << ", " << t << ") = " << lhs
           << " but must equal 1";
      else
        os << "identity: M(" << li << ", " << lj << ", " << t
           << ") = 1 for distinct points";
      break;
    case Axiom::Symmetry:
      os << "symmetry: pair (" << li << ", " << lj << ") at t = " << t
         << ": M(" << li << ", " << lj << ") = " << lhs << " but M(" << lj
         << ", " << li << ") = " << rhs;
      break;
    case Axiom::Triangle:
      os << "triangle: triple (" << li << ", " << lj << ", "
         << space.label(k) << ") at t = " << t << ", s = " << s << ": M("
         << li << ", " << space.label(k) << ", t+s) = " << lhs
         << " < luk(M(" << li << ", " << lj << ", t), M(" << lj << ", "
         << space.label(k) << ", s)) = " << rhs;
      break;
    case Axiom::Monotonicity:
      os << "monotonicity: pair (" << li << ", " << lj << "): M(t = " << t
         << ") = " << lhs << " > M(t = " << s << ") = " << rhs;
      break;
  }
  return os.str();
}

ValidationReport validate_axioms(const FuzzySpace& space,
                                 std::span<const double> t_samples,
                                 const ValidationOptions& options) {
  ValidationReport report;
  auto record = [&](Violation v) {
    if (report.violations.size() < options.max_recorded)
      report.violations.push_back(v);
    ++report.total;
  };

  std::vector<double> ts(t_samples.begin(), t_samples.end());
  for (double t : ts) TimeScale check(t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  const std::size_t n = space.size();
  const double eps = options.tolerance;

  // memo[k][i][j] = M(i, j, ts[k])
  std::vector<Matrix> memo(ts.size(), Matrix(n, std::vector<double>(n)));
  for (std::size_t k = 0; k < ts.size(); ++k)
    for (PointIndex i = 0; i < n; ++i)
      for (PointIndex j = 0; j < n; ++j)
        memo[k][i][j] = space.membership(i, j, ts[k]);

  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double t = ts[k];
    const Matrix& m = memo[k];
    for (PointIndex i = 0; i < n; ++i) {
      for (PointIndex j = 0; j < n; ++j) {
        double v = m[i][j];
        if (!(v > 0.0)) record({Axiom::Positivity, i, j, 0, t, 0.0, v, 0.0});
        if (i == j && v != 1.0)
          record({Axiom::Identity, i, j, 0, t, 0.0, v, 1.0});
        if (i != j && v >= 1.0)
          record({Axiom::Identity, i, j, 0, t, 0.0, v, 1.0});
        if (i < j && std::abs(v - m[j][i]) > eps)
          record({Axiom::Symmetry, i, j, 0, t, 0.0, v, m[j][i]});
        if (k + 1 < ts.size() && memo[k + 1][i][j] < v - eps)
          record({Axiom::Monotonicity, i, j, 0, t, ts[k + 1], v,
                  memo[k + 1][i][j]});
      }
    }
  }

  for (std::size_t a = 0; a < ts.size(); ++a) {
    for (std::size_t b = 0; b < ts.size(); ++b) {
      const double t = ts[a];
      const double s = ts[b];
      Matrix sum(n, std::vector<double>(n));
      for (PointIndex i = 0; i < n; ++i)
        for (PointIndex k = 0; k < n; ++k)
          sum[i][k] = space.membership(i, k, t + s);
      for (PointIndex i = 0; i < n; ++i) {
        for (PointIndex j = 0; j < n; ++j) {
          const double left = std::clamp(memo[a][i][j], 0.0, 1.0);
          for (PointIndex k = 0; k < n; ++k) {
            const double right = std::clamp(memo[b][j][k], 0.0, 1.0);
            const double bound = luk(left, right);
            if (sum[i][k] < bound - eps)
              record({Axiom::Triangle, i, j, k, t, s, sum[i][k], bound});
          }
        }
      }
    }
  }
  return report;
}

NonexpansionCheck check_nonexpanding(const FuzzySpace& source,
                                     const FuzzySpace& target,
                                     const PointMap& f,
                                     std::span<const double> t_samples,
                                     double tolerance) {
  if (f.size() != source.size())
    throw DomainError("point map must be defined on all " +
                      std::to_string(source.size()) + " source points");
  for (PointIndex image : f) target.check_index(image);

  NonexpansionCheck result;
  for (double t : t_samples) {
    TimeScale ts(t);
    for (PointIndex x = 0; x < source.size(); ++x) {
      for (PointIndex y = x + 1; y < source.size(); ++y) {
        double before = source.membership(x, y, ts);
        double after = target.membership(f[x], f[y], ts);
        if (after < before - tolerance) {
          result.nonexpanding = false;
          result.witness = NonexpansionWitness{x, y, t, before, after};
          return result;
        }
      }
    }
  }
  return result;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw DomainError("log grid needs 0 < lo < hi and count >= 2");
  std::vector<double> grid(count);
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k)
    grid[k] = std::exp(llo + step * static_cast<double>(k));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace fuzzyprok
