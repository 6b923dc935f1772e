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

// bds: Monte Carlo risk curves, closed-form references and discrimination
// bounds for Bell diagonal states.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bds/analytics.hpp"
#include "bds/distinguish.hpp"
#include "bds/harness.hpp"
#include "bds/report.hpp"
#include "json.hpp"

namespace {

constexpr int kConfigError = 2;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

bds::Vec4 to_theta(const std::vector<double>& v, const char* name) {
  if (v.size() != 4) {
    throw ConfigError(std::string(name) + " needs exactly 4 values");
  }
  return bds::Vec4(v[0], v[1], v[2], v[3]);
}

bds::PriorSpec to_prior(const std::vector<double>& v) {
  bds::PriorSpec prior;
  if (v.size() == 1) {
    prior.alpha = bds::Vec4::Constant(v[0]);
  } else if (v.size() == 4) {
    prior.alpha = bds::Vec4(v[0], v[1], v[2], v[3]);
  } else {
    throw ConfigError("--prior-alpha takes 1 or 4 values");
  }
  return prior;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("BDS_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const std::string text(env);
      const auto seed = std::stoull(text, &used, 0);
      if (used != text.size() || text.front() == '-') throw std::invalid_argument(text);
      return seed;
    } catch (const std::exception&) {
      throw ConfigError(std::string("BDS_SEED is not an unsigned integer: ") + env);
    }
  }
  return bds::kDefaultSeed;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell diagonal state estimation toolkit"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "json";
  std::string strategy = "bell";
  std::string estimator = "di";
  std::vector<std::int64_t> n_values;

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo average-risk curve");
  std::string loss = "hs";
  std::vector<double> prior_alpha{1.0};
  std::int64_t samples = 1000;
  int grid = bds::kDefaultGridResolution;
  std::optional<std::uint64_t> seed_flag;
  unsigned threads = 1;
  sim->add_option("--strategy", strategy, "bell, parity_ordered, parity_random, mub, pauli, haar, haar_separable");
  sim->add_option("--estimator", estimator, "di, mle or bme");
  sim->add_option("--loss", loss, "hs or infidelity");
  sim->add_option("--prior-alpha", prior_alpha, "Dirichlet parameter (1 or 4 values)")->expected(1, 4);
  sim->add_option("--n", n_values, "shot count (repeatable)")->required()->allow_extra_args(false);
  sim->add_option("--samples", samples, "trials per N");
  sim->add_option("--grid", grid, "grid resolution m");
  sim->add_option("--seed", seed_flag, "64-bit seed (overrides BDS_SEED)");
  sim->add_option("--threads", threads, "worker threads, 0 = all cores");
  sim->add_option("--format", format, "json or csv");
  sim->add_option("--out", out_path, "output file (default stdout)");

  // analytic
  auto* ana = app.add_subcommand("analytic", "closed-form average-risk curve");
  ana->add_option("--strategy", strategy, "measurement strategy");
  ana->add_option("--estimator", estimator, "di, mle or bme");
  ana->add_option("--n", n_values, "shot count (repeatable)")->required()->allow_extra_args(false);
  ana->add_option("--format", format, "json or csv");
  ana->add_option("--out", out_path, "output file (default stdout)");

  // distinguish
  auto* dis = app.add_subcommand("distinguish", "optimal discrimination of two Bell diagonal states");
  std::vector<double> rho_theta;
  std::vector<double> phi_theta;
  dis->add_option("--rho", rho_theta, "Bell weights of the first state")->required()->expected(4);
  dis->add_option("--phi", phi_theta, "Bell weights of the second state")->required()->expected(4);
  dis->add_option("--out", out_path, "output file (default stdout)");

  // bound
  auto* bnd = app.add_subcommand("bound", "quantum Cramer-Rao or parity-BME bound");
  std::string kind = "qcrb";
  std::vector<double> bound_theta;
  bnd->add_option("--kind", kind, "qcrb or bme-parity");
  bnd->add_option("--theta", bound_theta, "Bell weights (qcrb only)")->expected(4);
  bnd->add_option("--n", n_values, "shot count (repeatable)")->required()->allow_extra_args(false);
  bnd->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    std::string text;
    if (sim->parsed()) {
      bds::ExperimentConfig config;
      config.strategy = bds::parse_strategy(strategy);
      config.estimator = bds::parse_estimator(estimator);
      config.loss = bds::parse_loss(loss);
      config.prior = to_prior(prior_alpha);
      config.n_values = n_values;
      config.samples = samples;
      config.grid_resolution = grid;
      config.seed = resolve_seed(seed_flag);
      const auto fmt = bds::parse_report_format(format);
      const auto curve = bds::run_experiment(config, bds::RunOptions{threads});
      text = bds::emit_report(curve, fmt);
    } else if (ana->parsed()) {
      const auto s = bds::parse_strategy(strategy);
      const auto e = bds::parse_estimator(estimator);
      const auto fmt = bds::parse_report_format(format);
      text = bds::analytic_report(bds::analytic_curve(s, e, n_values), s, e, fmt);
    } else if (dis->parsed()) {
      const auto rho = bds::BellDiagonalState::from_theta(to_theta(rho_theta, "--rho"));
      const auto phi = bds::BellDiagonalState::from_theta(to_theta(phi_theta, "--phi"));
      text = bds::discrimination_json(bds::optimal_povm(rho, phi));
    } else {
      nlohmann::json j;
      j["kind"] = kind;
      j["points"] = nlohmann::json::array();
      if (kind == "qcrb") {
        const auto state = bds::BellDiagonalState::from_theta(to_theta(bound_theta, "--theta"));
        j["theta"] = bound_theta;
        for (auto n : n_values) {
          j["points"].push_back({{"n", n}, {"value", bds::qcrb_bound(state.theta(), n)}});
        }
      } else if (kind == "bme-parity") {
        for (auto n : n_values) {
          j["points"].push_back({{"n", n}, {"value", bds::bme_parity_upper_bound(n)}});
        }
      } else {
        throw ConfigError("unknown bound kind '" + kind + "'");
      }
      text = j.dump(2) + "\n";
    }
    write_output(text, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "bds: " << e.what() << "\n";
    return kConfigError;
  } catch (const bds::NoClosedForm& e) {
    std::cerr << "bds: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "bds: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
