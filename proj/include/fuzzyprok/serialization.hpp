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

// Text formats. Parsers throw SchemaError naming the offending field;
// structural problems found by the core constructors surface as DomainError.
//
// Space:
//   { "labels": [...], "generator": "standard" | "exponential",
//     "dist": [[...], ...] }
//   { "labels": [...], "generator": "table", "t_grid": [...],
//     "values": { "i,j": [...], ... } }
//   Table keys are 0-based point indices (labels are accepted too). A pair
//   given in one orientation only is mirrored; diagonal entries default to 1.
//
// Measure:
//   { "space": "<path>" | {...}, "weights": { "<label>": w, ... } }
//   "space" is optional and informational; labels resolve against the space
//   the caller supplies.
//
// Ambient (extension input):
//   [ "<label>", ... ]  or
//   { "labels": [...], "assignment": { "<label>": { "<y>": w, ... } } }

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fuzzyprok/extension.hpp"
#include "fuzzyprok/measure.hpp"
#include "fuzzyprok/prokhorov.hpp"
#include "fuzzyprok/space.hpp"

namespace fuzzyprok {

FuzzySpace parse_space(std::string_view text);
std::string write_space(const FuzzySpace& space);

Measure parse_measure(std::string_view text, const SpacePtr& space);

struct AmbientSpec {
  std::vector<std::string> labels;
  EmbeddingStrategy strategy;
};

AmbientSpec parse_ambient(std::string_view text, const SpacePtr& subspace);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// { "value", "r_star", "method", "witness": [labels] | null }
std::string write_result(const ProkhorovResult& result,
                         const FuzzySpace& space);

/// Header `t,m_hat`, LF line endings.
std::string write_curve_csv(const MetricCurve& curve);

std::string write_validation_report(const ValidationReport& report,
                                    const FuzzySpace& space);

/// Header `n,gap,tv,within_tv`.
std::string write_convergence_csv(const std::vector<ConvergenceRow>& rows);

/// Header `trial,components,lifted,flattened,violation` then a summary line.
std::string write_psi_report(const PsiProbeReport& report);

/// `log:<min>:<max>:<count>` or a comma-separated list of scales.
std::vector<double> parse_t_grid(std::string_view spec);

}  // namespace fuzzyprok
