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

#include "bds/report.hpp"

#include <charconv>
#include <stdexcept>

#include "json.hpp"

namespace bds {

namespace {

using nlohmann::json;

json config_json(const ExperimentConfig& c, const std::string& analytic_kind) {
  json j;
  j["strategy"] = std::string(to_string(c.strategy));
  j["estimator"] = std::string(to_string(c.estimator));
  j["loss"] = std::string(to_string(c.loss));
  j["prior_alpha"] = {c.prior.alpha(0), c.prior.alpha(1), c.prior.alpha(2),
                      c.prior.alpha(3)};
  j["n_values"] = c.n_values;
  j["samples"] = c.samples;
  j["grid_resolution"] = c.grid_resolution;
  j["seed"] = c.seed;
  j["analytic_kind"] = analytic_kind;
  return j;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string emit_report(const RiskCurve& curve, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out = "n,mean_risk,std_error,analytic\n";
    for (const auto& p : curve.points) {
      out += std::to_string(p.n);
      out += ',';
      out += format_double(p.mean_risk);
      out += ',';
      out += format_double(p.std_error);
      out += ',';
      if (p.analytic) out += format_double(*p.analytic);
      out += '\n';
    }
    return out;
  }
  json j;
  j["config"] = config_json(curve.config, curve.analytic_kind);
  j["points"] = json::array();
  for (const auto& p : curve.points) {
    json point;
    point["n"] = p.n;
    point["mean_risk"] = p.mean_risk;
    point["std_error"] = p.std_error;
    point["analytic"] = p.analytic ? json(*p.analytic) : json(nullptr);
    j["points"].push_back(std::move(point));
  }
  return j.dump(2) + "\n";
}

RiskCurve parse_report_json(std::string_view text) {
  const json j = json::parse(text);
  RiskCurve curve;
  const json& c = j.at("config");
  curve.config.strategy = parse_strategy(c.at("strategy").get<std::string>());
  curve.config.estimator = parse_estimator(c.at("estimator").get<std::string>());
  curve.config.loss = parse_loss(c.at("loss").get<std::string>());
  const auto alpha = c.at("prior_alpha").get<std::vector<double>>();
  if (alpha.size() != 4) throw std::invalid_argument("prior_alpha needs 4 entries");
  curve.config.prior.alpha << alpha[0], alpha[1], alpha[2], alpha[3];
  curve.config.n_values = c.at("n_values").get<std::vector<std::int64_t>>();
  curve.config.samples = c.at("samples").get<std::int64_t>();
  curve.config.grid_resolution = c.at("grid_resolution").get<int>();
  curve.config.seed = c.at("seed").get<std::uint64_t>();
  curve.analytic_kind = c.at("analytic_kind").get<std::string>();
  for (const json& p : j.at("points")) {
    RiskPoint point;
    point.n = p.at("n").get<std::int64_t>();
    point.mean_risk = p.at("mean_risk").get<double>();
    point.std_error = p.at("std_error").get<double>();
    if (!p.at("analytic").is_null()) point.analytic = p.at("analytic").get<double>();
    curve.points.push_back(point);
  }
  return curve;
}

std::string analytic_report(const std::vector<AnalyticPoint>& points,
                            Strategy strategy, EstimatorKind estimator,
                            ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out = "n,value,formula_id,upper_bound\n";
    for (const auto& p : points) {
      out += std::to_string(p.n) + ',' + format_double(p.result.value) + ',' +
             p.result.formula_id + ',' + (p.result.upper_bound ? "true" : "false") + '\n';
    }
    return out;
  }
  json j;
  j["strategy"] = std::string(to_string(strategy));
  j["estimator"] = std::string(to_string(estimator));
  j["points"] = json::array();
  for (const auto& p : points) {
    j["points"].push_back({{"n", p.n},
                           {"value", p.result.value},
                           {"formula_id", p.result.formula_id},
                           {"upper_bound", p.result.upper_bound}});
  }
  return j.dump(2) + "\n";
}

std::string discrimination_json(const DiscriminationResult& result) {
  json j;
  j["success_bound"] = result.success_bound;
  j["positive_indices"] = result.positive_indices;
  j["negative_indices"] = result.negative_indices;
  j["locc_optimal"] = result.locc_optimal;
  return j.dump(2) + "\n";
}

}  // namespace bds
