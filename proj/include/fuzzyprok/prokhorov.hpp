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

// Fuzzy Prokhorov metric between finite-support measures:
//
//   M^(mu, nu, t) = 1 - inf{ r in (0, 1) : mu(A) <= nu(A^{r,t}) + r and
//                                          nu(A) <= mu(A^{r,t}) + r for all A }
//
// On a finite space the quantifier over A can be restricted to subsets of
// the two supports. Neighborhoods only change when r crosses one of the
// values 1 - M(u, v, t) with u in supp(mu), v in supp(nu); an edge (u, v)
// is active for r strictly greater than its breakpoint. Both evaluators
// below share that convention.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyprok/measure.hpp"
#include "fuzzyprok/space.hpp"

namespace fuzzyprok {

/// Mass differences at or below this are rounding noise and read as zero.
inline constexpr double kMassTolerance = 1e-12;

enum class Method { Brute, Flow };
enum class Side { Mu, Nu };

const char* method_name(Method m) noexcept;

/// Edges u -> v (u in supp(mu), v in supp(nu)) with v in B(u, r, t).
struct Adjacency {
  std::vector<PointIndex> source;
  std::vector<PointIndex> target;
  std::vector<std::pair<PointIndex, PointIndex>> edges;

  bool contains(PointIndex u, PointIndex v) const;
};

Adjacency adjacency(const Measure& mu, const Measure& nu, Radius r,
                    TimeScale t);

/// max_A (mu(A) - nu(E(A))) over A in supp(mu), as 1 - maxflow.
double hall_deficiency(const Measure& mu, const Measure& nu,
                       const Adjacency& adj);

/// Radius breakpoints 0 = b_0 < ... < b_K < 1 and the deficiency D_k of the
/// constant adjacency on each interval (b_k, b_{k+1}].
struct BreakpointSweep {
  std::vector<double> breakpoints;
  std::vector<double> deficiencies;
};

BreakpointSweep breakpoint_sweep(const Measure& mu, const Measure& nu,
                                 TimeScale t);

bool feasible(const Measure& mu, const Measure& nu, Radius r, TimeScale t);

struct Witness {
  Side side;
  PointSet subset;
};

struct ProkhorovResult {
  double value = 1.0;
  double r_star = 0.0;
  Method method = Method::Flow;
  std::optional<Witness> witness;  // brute only
};

struct BruteOptions {
  /// Upper bound on |supp(mu)| + |supp(nu)|.
  std::size_t support_cap = 20;
};

/// Subset enumeration; exact but exponential in the support sizes.
ProkhorovResult prokhorov_brute(const Measure& mu, const Measure& nu,
                                TimeScale t, const BruteOptions& options = {});

/// Breakpoint sweep with one incremental max-flow; polynomial.
ProkhorovResult prokhorov_flow(const Measure& mu, const Measure& nu,
                               TimeScale t);

ProkhorovResult prokhorov(const Measure& mu, const Measure& nu, TimeScale t,
                          Method method = Method::Flow,
                          const BruteOptions& options = {});

struct CurvePoint {
  double t;
  double value;
};

using MetricCurve = std::vector<CurvePoint>;

/// M^(mu, nu, .) at `steps` uniformly spaced scales in [t_min, t_max].
MetricCurve prokhorov_curve(const Measure& mu, const Measure& nu, double t_min,
                            double t_max, std::size_t steps,
                            Method method = Method::Flow);

struct ConvergenceRow {
  std::size_t n;
  double gap;              // 1 - M^(empirical, mu, t)
  double total_variation;  // TV(empirical, mu)
  bool within_tv;          // gap <= TV + kDefaultTolerance
};

/// Empirical measures for each n come from the same seeded stream, so the
/// rows follow one i.i.d. sequence.
std::vector<ConvergenceRow> convergence_experiment(
    const Measure& mu, std::span<const std::size_t> schedule, TimeScale t,
    std::uint64_t seed);

/// A table-generated space whose points are the given (pairwise distinct)
/// measures and whose membership is M^ sampled on t_grid.
FuzzySpace measure_space(std::span<const Measure> points,
                         std::vector<std::string> labels,
                         std::vector<double> t_grid);

struct PsiTrial {
  std::size_t trial;
  std::size_t distinct_components;
  double lifted;     // M^^(A, B, t) over the space of component measures
  double flattened;  // M^(psi(A), psi(B), t)
  bool violation;    // flattened < lifted - kDefaultTolerance
};

struct PsiProbeReport {
  std::vector<PsiTrial> trials;
  std::size_t violations = 0;
  double max_excess = 0.0;  // max(lifted - flattened) over trials
};

/// Random search for pairs on which psi fails to be nonexpanding. Reports
/// what it finds; makes no claim either way.
PsiProbeReport psi_nonexpansion_probe(const SpacePtr& space,
                                      std::size_t trial_count,
                                      std::uint64_t seed, TimeScale t);

/// Lifted/flattened comparison for one explicit pair of meta-measures.
PsiTrial psi_compare(const MetaMeasure& a, const MetaMeasure& b, TimeScale t);

}  // namespace fuzzyprok
