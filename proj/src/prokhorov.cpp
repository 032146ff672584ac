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

#include "fuzzyprok/prokhorov.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "fuzzyprok/errors.hpp"
#include "fuzzyprok/max_flow.hpp"

namespace fuzzyprok {

namespace {

double snap(double deficiency) {
  return deficiency <= kMassTolerance ? 0.0 : deficiency;
}

// c[a][b] = 1 - M(S[a], T[b], t): the radius above which the edge is active.
Matrix edge_thresholds(const Measure& mu, const Measure& nu, TimeScale t) {
  const auto& space = *mu.space();
  const auto& s = mu.atoms();
  const auto& r = nu.atoms();
  Matrix c(s.size(), std::vector<double>(r.size()));
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < r.size(); ++b)
      c[a][b] = 1.0 - space.membership(s[a].point, r[b].point, t);
  return c;
}

std::vector<double> collect_breakpoints(const Matrix& thresholds) {
  std::vector<double> bps{0.0};
  for (const auto& row : thresholds)
    for (double c : row)
      if (c > 0.0 && c < 1.0) bps.push_back(c);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  return bps;
}

// Infimum of r in (b_k, b_{k+1}] with r >= need, if any.
std::optional<double> interval_infimum(double need, double lo, double hi) {
  if (need <= lo) return lo;
  if (need <= hi) return need;
  return std::nullopt;
}

// Bipartite network source -> S -> T -> sink. Edge arcs are added lazily.
class TransportNetwork {
 public:
  TransportNetwork(const Measure& mu, const Measure& nu)
      : s_(mu.atoms().size()),
        t_(nu.atoms().size()),
        flow_(s_ + t_ + 2, 0, s_ + t_ + 1) {
    for (std::size_t a = 0; a < s_; ++a)
      flow_.add_edge(0, 1 + a, mu.atoms()[a].weight);
    for (std::size_t b = 0; b < t_; ++b)
      flow_.add_edge(1 + s_ + b, s_ + t_ + 1, nu.atoms()[b].weight);
    for (const auto& atom : mu.atoms()) mu_total_ += atom.weight;
  }

  void connect(std::size_t a, std::size_t b) {
    flow_.add_edge(1 + a, 1 + s_ + b, MaxFlow::kUnbounded);
  }

  double deficiency() { return snap(mu_total_ - flow_.solve()); }

 private:
  std::size_t s_;
  std::size_t t_;
  MaxFlow flow_;
  double mu_total_ = 0.0;
};

}  // namespace

const char* method_name(Method m) noexcept {
  return m == Method::Brute ? "brute" : "flow";
}

bool Adjacency::contains(PointIndex u, PointIndex v) const {
  return std::find(edges.begin(), edges.end(), std::make_pair(u, v)) !=
         edges.end();
}

Adjacency adjacency(const Measure& mu, const Measure& nu, Radius r,
                    TimeScale t) {
  require_same_space(mu, nu);
  Adjacency adj{mu.support(), nu.support(), {}};
  for (PointIndex u : adj.source)
    for (PointIndex v : adj.target)
      if (in_ball(*mu.space(), u, v, r, t)) adj.edges.emplace_back(u, v);
  return adj;
}

double hall_deficiency(const Measure& mu, const Measure& nu,
                       const Adjacency& adj) {
  require_same_space(mu, nu);
  TransportNetwork net(mu, nu);
  auto slot = [](const Measure& m, PointIndex p) -> std::size_t {
    const auto& atoms = m.atoms();
    for (std::size_t k = 0; k < atoms.size(); ++k)
      if (atoms[k].point == p) return k;
    throw IndexError("adjacency endpoint " + std::to_string(p) +
                     " is not a support point");
  };
  for (const auto& [u, v] : adj.edges) net.connect(slot(mu, u), slot(nu, v));
  return net.deficiency();
}

BreakpointSweep breakpoint_sweep(const Measure& mu, const Measure& nu,
                                 TimeScale t) {
  require_same_space(mu, nu);
  const Matrix c = edge_thresholds(mu, nu, t);
  BreakpointSweep sweep;
  sweep.breakpoints = collect_breakpoints(c);

  TransportNetwork net(mu, nu);
  std::vector<std::vector<bool>> added(
      c.size(), std::vector<bool>(c.empty() ? 0 : c.front().size(), false));
  for (double b : sweep.breakpoints) {
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t v = 0; v < c[a].size(); ++v)
        if (!added[a][v] && c[a][v] <= b) {
          net.connect(a, v);
          added[a][v] = true;
        }
    sweep.deficiencies.push_back(net.deficiency());
  }
  return sweep;
}

bool feasible(const Measure& mu, const Measure& nu, Radius r, TimeScale t) {
  return hall_deficiency(mu, nu, adjacency(mu, nu, r, t)) <= r.value();
}

ProkhorovResult prokhorov_flow(const Measure& mu, const Measure& nu,
                               TimeScale t) {
  require_same_space(mu, nu);
  const Matrix c = edge_thresholds(mu, nu, t);
  const std::vector<double> bps = collect_breakpoints(c);

  // Deficiency is nonincreasing in k and the candidate of interval k lies in
  // [b_k, b_{k+1}], so the first feasible interval holds the infimum.
  TransportNetwork net(mu, nu);
  std::vector<std::vector<bool>> added(
      c.size(), std::vector<bool>(c.empty() ? 0 : c.front().size(), false));
  for (std::size_t k = 0; k < bps.size(); ++k) {
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t v = 0; v < c[a].size(); ++v)
        if (!added[a][v] && c[a][v] <= bps[k]) {
          net.connect(a, v);
          added[a][v] = true;
        }
    const double hi = k + 1 < bps.size() ? bps[k + 1] : 1.0;
    if (auto r = interval_infimum(net.deficiency(), bps[k], hi)) {
      ProkhorovResult result;
      result.r_star = *r;
      result.value = 1.0 - *r;
      result.method = Method::Flow;
      return result;
    }
  }
  // Unreachable for valid spaces: the last interval has full adjacency.
  throw ValidationError(
      "prokhorov_flow: no feasible radius; the space violates positivity");
}

ProkhorovResult prokhorov_brute(const Measure& mu, const Measure& nu,
                                TimeScale t, const BruteOptions& options) {
  require_same_space(mu, nu);
  const auto& space = *mu.space();
  const auto& s = mu.atoms();
  const auto& r = nu.atoms();
  if (s.size() + r.size() > options.support_cap) {
    std::ostringstream os;
    os << "prokhorov_brute: |supp(mu)| + |supp(nu)| = " << s.size() + r.size()
       << " exceeds the cap of " << options.support_cap;
    throw LimitError(os.str());
  }
  if (s.size() > 30 || r.size() > 30)
    throw LimitError("prokhorov_brute: a support exceeds 30 points");

  std::vector<double> bps{0.0};
  for (const auto& u : s)
    for (const auto& v : r) {
      double c = 1.0 - space.membership(u.point, v.point, t);
      if (c > 0.0 && c < 1.0) bps.push_back(c);
    }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  ProkhorovResult result;
  result.method = Method::Brute;
  result.r_star = 0.0;
  result.witness = Witness{Side::Mu, {}};

  // One side at a time: subsets A of `from`, masses of A^{r,t} in `to`.
  auto scan = [&](const std::vector<Measure::Atom>& from,
                  const std::vector<Measure::Atom>& to, Side side) {
    const std::size_t nf = from.size();
    const std::size_t nt = to.size();
    const std::size_t subsets = std::size_t{1} << nf;

    std::vector<double> from_mass(subsets, 0.0);
    for (std::size_t m = 1; m < subsets; ++m) {
      std::size_t low = static_cast<std::size_t>(__builtin_ctzll(m));
      from_mass[m] = from_mass[m & (m - 1)] + from[low].weight;
    }
    std::vector<double> to_mass(std::size_t{1} << nt, 0.0);
    for (std::size_t m = 1; m < to_mass.size(); ++m) {
      std::size_t low = static_cast<std::size_t>(__builtin_ctzll(m));
      to_mass[m] = to_mass[m & (m - 1)] + to[low].weight;
    }

    std::vector<std::optional<double>> infimum(subsets);
    std::vector<std::uint64_t> reach(subsets, 0);
    std::size_t open = subsets;
    for (std::size_t k = 0; k < bps.size() && open > 0; ++k) {
      const double lo = bps[k];
      const double hi = k + 1 < bps.size() ? bps[k + 1] : 1.0;
      const Radius probe((lo + hi) / 2.0);
      std::vector<std::uint64_t> ball(nf, 0);
      for (std::size_t a = 0; a < nf; ++a)
        for (std::size_t b = 0; b < nt; ++b)
          if (in_ball(space, from[a].point, to[b].point, probe, t))
            ball[a] |= std::uint64_t{1} << b;
      for (std::size_t m = 0; m < subsets; ++m) {
        if (m > 0) {
          std::size_t low = static_cast<std::size_t>(__builtin_ctzll(m));
          reach[m] = reach[m & (m - 1)] | ball[low];
        }
        if (infimum[m]) continue;
        const double need = snap(from_mass[m] - to_mass[reach[m]]);
        if (auto inf = interval_infimum(need, lo, hi)) {
          infimum[m] = *inf;
          --open;
        }
      }
    }
    for (std::size_t m = 0; m < subsets; ++m) {
      if (!infimum[m])
        throw ValidationError(
            "prokhorov_brute: no feasible radius; the space violates "
            "positivity");
      if (*infimum[m] > result.r_star) {
        result.r_star = *infimum[m];
        PointSet subset;
        for (std::size_t a = 0; a < nf; ++a)
          if (m & (std::size_t{1} << a)) subset.insert(from[a].point);
        result.witness = Witness{side, std::move(subset)};
      }
    }
  };

  scan(s, r, Side::Mu);
  scan(r, s, Side::Nu);
  result.value = 1.0 - result.r_star;
  return result;
}

ProkhorovResult prokhorov(const Measure& mu, const Measure& nu, TimeScale t,
                          Method method, const BruteOptions& options) {
  return method == Method::Brute ? prokhorov_brute(mu, nu, t, options)
                                 : prokhorov_flow(mu, nu, t);
}

MetricCurve prokhorov_curve(const Measure& mu, const Measure& nu, double t_min,
                            double t_max, std::size_t steps, Method method) {
  if (!(t_min > 0.0) || !(t_max > t_min))
    throw DomainError("curve: need 0 < t_min < t_max");
  if (steps < 2) throw DomainError("curve: steps must be >= 2");
  MetricCurve curve;
  curve.reserve(steps);
  const double width = t_max - t_min;
  for (std::size_t i = 0; i < steps; ++i) {
    double t = i + 1 == steps
                   ? t_max
                   : t_min + width * static_cast<double>(i) /
                                 static_cast<double>(steps - 1);
    curve.push_back({t, prokhorov(mu, nu, TimeScale(t), method).value});
  }
  return curve;
}

std::vector<ConvergenceRow> convergence_experiment(
    const Measure& mu, std::span<const std::size_t> schedule, TimeScale t,
    std::uint64_t seed) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(schedule.size());
  for (std::size_t n : schedule) {
    Measure empirical = sample_empirical(mu, n, seed);
    const double gap = prokhorov_flow(empirical, mu, t).r_star;
    const double tv = total_variation(empirical, mu);
    rows.push_back({n, gap, tv, gap <= tv + kDefaultTolerance});
  }
  return rows;
}

FuzzySpace measure_space(std::span<const Measure> points,
                         std::vector<std::string> labels,
                         std::vector<double> t_grid) {
  const std::size_t n = points.size();
  if (n == 0) throw DomainError("measure space: no points");
  if (labels.size() != n)
    throw DomainError("measure space: one label per measure is required");
  for (std::size_t i = 1; i < n; ++i) require_same_space(points[0], points[i]);

  std::vector<std::vector<std::vector<double>>> values(
      n, std::vector<std::vector<double>>(n,
                                          std::vector<double>(t_grid.size())));
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    TimeScale t(t_grid[k]);
    for (std::size_t i = 0; i < n; ++i) {
      values[i][i][k] = 1.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        double v = prokhorov_flow(points[i], points[j], t).value;
        values[i][j][k] = v;
        values[j][i][k] = v;
      }
    }
  }
  return FuzzySpace::table(std::move(labels), std::move(t_grid),
                           std::move(values));
}

PsiTrial psi_compare(const MetaMeasure& a, const MetaMeasure& b, TimeScale t) {
  std::vector<Measure> distinct;
  auto intern = [&](const Measure& m) -> PointIndex {
    for (std::size_t i = 0; i < distinct.size(); ++i)
      if (distinct[i] == m) return i;
    distinct.push_back(m);
    return distinct.size() - 1;
  };
  std::map<PointIndex, double> wa, wb;
  for (const auto& c : a.components()) wa[intern(c.measure)] += c.weight;
  for (const auto& c : b.components()) wb[intern(c.measure)] += c.weight;

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < distinct.size(); ++i)
    labels.push_back("m" + std::to_string(i));
  auto lifted_space = std::make_shared<const FuzzySpace>(
      measure_space(distinct, std::move(labels), {t.value()}));

  PsiTrial trial{};
  trial.distinct_components = distinct.size();
  trial.lifted = prokhorov_flow(Measure::from_weights(lifted_space, wa),
                                Measure::from_weights(lifted_space, wb), t)
                     .value;
  trial.flattened = prokhorov_flow(flatten(a), flatten(b), t).value;
  trial.violation = trial.flattened < trial.lifted - kDefaultTolerance;
  return trial;
}

PsiProbeReport psi_nonexpansion_probe(const SpacePtr& space,
                                      std::size_t trial_count,
                                      std::uint64_t seed, TimeScale t) {
  if (!space) throw DomainError("psi probe: null space");
  if (trial_count == 0) throw DomainError("psi probe: trialCount must be >= 1");
  std::mt19937_64 rng(seed);
  auto below = [&rng](std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
  };
  // `units` dyadic units spread over `parts` slots, each slot getting >= 1.
  auto dyadic = [&](std::size_t parts, std::size_t units) {
    std::vector<double> w(parts, 1.0);
    for (std::size_t u = parts; u < units; ++u) w[below(parts)] += 1.0;
    for (double& x : w) x /= static_cast<double>(units);
    return w;
  };
  auto random_subset = [&](std::size_t universe, std::size_t max_size) {
    std::vector<std::size_t> idx(universe);
    for (std::size_t i = 0; i < universe; ++i) idx[i] = i;
    for (std::size_t i = universe; i > 1; --i) std::swap(idx[i - 1], idx[below(i)]);
    idx.resize(1 + below(std::min(universe, max_size)));
    return idx;
  };
  auto random_measure = [&]() {
    auto pts = random_subset(space->size(), 4);
    auto w = dyadic(pts.size(), 16);
    std::vector<std::pair<PointIndex, double>> weights;
    for (std::size_t i = 0; i < pts.size(); ++i) weights.emplace_back(pts[i], w[i]);
    return Measure::from_weights(space, weights);
  };
  auto random_meta = [&](const std::vector<Measure>& pool) {
    auto picks = random_subset(pool.size(), pool.size());
    auto w = dyadic(picks.size(), 8);
    std::vector<MetaMeasure::Component> comps;
    for (std::size_t i = 0; i < picks.size(); ++i)
      comps.push_back({w[i], pool[picks[i]]});
    return MetaMeasure(std::move(comps));
  };

  PsiProbeReport report;
  for (std::size_t trial = 0; trial < trial_count; ++trial) {
    std::vector<Measure> pool;
    const std::size_t pool_size = 2 + below(3);
    for (std::size_t i = 0; i < pool_size; ++i) pool.push_back(random_measure());
    MetaMeasure a = random_meta(pool);
    MetaMeasure b = random_meta(pool);
    PsiTrial row = psi_compare(a, b, t);
    row.trial = trial;
    report.max_excess = std::max(report.max_excess, row.lifted - row.flattened);
    if (row.violation) ++report.violations;
    report.trials.push_back(row);
  }
  return report;
}

}  // namespace fuzzyprok
