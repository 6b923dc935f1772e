// Copyright 2026 The bdsest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BDS_REPORT_HPP
#define BDS_REPORT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "bds/distinguish.hpp"
#include "bds/harness.hpp"

namespace bds {

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(std::string_view name);

/// JSON: {"config": {...}, "points": [{"n", "mean_risk", "std_error",
/// "analytic"}]} with analytic null when absent.
/// CSV: header "n,mean_risk,std_error,analytic", one row per N, empty
/// analytic field when absent. Both newline-terminated.
std::string emit_report(const RiskCurve& curve, ReportFormat format);

/// Inverse of emit_report(curve, ReportFormat::json).
RiskCurve parse_report_json(std::string_view text);

std::string analytic_report(const std::vector<AnalyticPoint>& points,
                            Strategy strategy, EstimatorKind estimator,
                            ReportFormat format);

std::string discrimination_json(const DiscriminationResult& result);

/// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace bds

#endif  // BDS_REPORT_HPP
