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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bds/analytics.hpp"
#include "bds/distinguish.hpp"
#include "bds/estimators.hpp"
#include "bds/harness.hpp"
#include "bds/measurements.hpp"
#include "bds/report.hpp"
#include "bds/states.hpp"

namespace py = pybind11;

namespace {

// Python callers pass plain strings; the enums stay internal.
bds::ExperimentConfig make_config(const std::string& strategy,
                                  const std::string& estimator,
                                  const std::vector<std::int64_t>& n_values,
                                  std::int64_t samples, const std::string& loss,
                                  const bds::Vec4& prior_alpha, int grid,
                                  std::uint64_t seed) {
  bds::ExperimentConfig c;
  c.strategy = bds::parse_strategy(strategy);
  c.estimator = bds::parse_estimator(estimator);
  c.loss = bds::parse_loss(loss);
  c.prior.alpha = prior_alpha;
  c.n_values = n_values;
  c.samples = samples;
  c.grid_resolution = grid;
  c.seed = seed;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bell diagonal state estimation core";

  py::class_<bds::BellDiagonalState>(m, "BellDiagonalState")
      .def_static("from_theta", &bds::BellDiagonalState::from_theta)
      .def_static("from_t", &bds::BellDiagonalState::from_t)
      .def_static("maximally_mixed", &bds::BellDiagonalState::maximally_mixed)
      .def_static("bell", &bds::BellDiagonalState::bell)
      .def_property_readonly("theta", &bds::BellDiagonalState::theta)
      .def_property_readonly("t", &bds::BellDiagonalState::t)
      .def("purity", &bds::BellDiagonalState::purity)
      .def("density_matrix",
           [](const bds::BellDiagonalState& s) { return bds::density_matrix(s).matrix(); })
      .def("__repr__", [](const bds::BellDiagonalState& s) {
        const auto& th = s.theta();
        return "BellDiagonalState(theta=[" + bds::format_double(th(0)) + ", " +
               bds::format_double(th(1)) + ", " + bds::format_double(th(2)) + ", " +
               bds::format_double(th(3)) + "])";
      });

  m.def("theta_to_t", &bds::theta_to_t);
  m.def("t_to_theta", &bds::t_to_theta);
  m.def("is_physical", &bds::is_physical);
  m.def("is_separable", &bds::is_separable);
  m.def("twirl", [](const bds::Mat4c& rho) {
    return bds::twirl(bds::DensityMatrix4(rho));
  });

  py::class_<bds::Estimate>(m, "Estimate")
      .def_readonly("theta_hat", &bds::Estimate::theta_hat)
      .def_readonly("physical", &bds::Estimate::physical)
      .def_readonly("posterior_mean", &bds::Estimate::posterior_mean)
      .def_readonly("posterior_cov", &bds::Estimate::posterior_cov)
      .def_property_readonly("t_hat", &bds::Estimate::t_hat);

  py::class_<bds::StateGrid>(m, "StateGrid")
      .def(py::init<int>(), py::arg("resolution") = bds::kDefaultGridResolution)
      .def("__len__", &bds::StateGrid::size)
      .def_property_readonly("resolution", &bds::StateGrid::resolution)
      .def_property_readonly("thetas", &bds::StateGrid::thetas)
      .def_property_readonly("weights", &bds::StateGrid::weights);

  // One call from state to estimate; the outcome record stays on the C++ side.
  m.def(
      "estimate",
      [](const bds::BellDiagonalState& state, const std::string& strategy,
         std::int64_t shots, const std::string& estimator, std::uint64_t seed,
         const bds::StateGrid* grid, const bds::Vec4& prior_alpha) {
        if (grid == nullptr) {
          // Built once on first use; immutable afterwards.
          static const bds::StateGrid default_grid(37);
          grid = &default_grid;
        }
        const auto record = bds::sample_outcomes(
            state, bds::MeasurementPlan{bds::parse_strategy(strategy), shots}, seed);
        switch (bds::parse_estimator(estimator)) {
          case bds::EstimatorKind::di:
            return bds::direct_inversion(record);
          case bds::EstimatorKind::mle:
            return bds::mle(record, *grid);
          case bds::EstimatorKind::bme:
            return bds::bme(record, *grid, bds::PriorSpec{prior_alpha});
        }
        throw std::invalid_argument("unknown estimator");
      },
      py::arg("state"), py::arg("strategy"), py::arg("shots"),
      py::arg("estimator") = "di", py::arg("seed") = bds::kDefaultSeed,
      py::arg("grid") = nullptr, py::arg("prior_alpha") = bds::Vec4::Ones());

  m.def("hs_loss", &bds::hs_loss);
  m.def("infidelity_loss", &bds::infidelity_loss);
  m.def("qfi_matrix", &bds::qfi_matrix);
  m.def("qcrb_bound", &bds::qcrb_bound);
  m.def("risk_bsm_di", &bds::risk_bsm_di);
  m.def("avg_risk_bsm_di", &bds::avg_risk_bsm_di);
  m.def("risk_bsm_bme", &bds::risk_bsm_bme);
  m.def("avg_risk_bsm_bme", &bds::avg_risk_bsm_bme);
  m.def("g_hyp", &bds::g_hyp);
  m.def("risk_parity_random_di", &bds::risk_parity_random_di);
  m.def("avg_risk_parity_random_di", &bds::avg_risk_parity_random_di);
  m.def("risk_parity_ordered_di", &bds::risk_parity_ordered_di);
  m.def("avg_risk_parity_ordered_di", &bds::avg_risk_parity_ordered_di);
  m.def("bme_parity_pointwise", &bds::bme_parity_pointwise);
  m.def("bme_parity_upper_bound", &bds::bme_parity_upper_bound);

  py::class_<bds::DiscriminationResult>(m, "DiscriminationResult")
      .def_readonly("success_bound", &bds::DiscriminationResult::success_bound)
      .def_readonly("positive_indices", &bds::DiscriminationResult::positive_indices)
      .def_readonly("negative_indices", &bds::DiscriminationResult::negative_indices)
      .def_readonly("locc_optimal", &bds::DiscriminationResult::locc_optimal);
  m.def("helstrom_bound", &bds::helstrom_bound);
  m.def("optimal_povm", &bds::optimal_povm);
  m.def("is_locc_optimal", &bds::is_locc_optimal);

  m.def(
      "run_experiment",
      [](const std::string& strategy, const std::string& estimator,
         const std::vector<std::int64_t>& n_values, std::int64_t samples,
         const std::string& loss, const bds::Vec4& prior_alpha, int grid,
         std::uint64_t seed, const std::string& format, unsigned threads) {
        const auto config = make_config(strategy, estimator, n_values, samples,
                                        loss, prior_alpha, grid, seed);
        const auto fmt = bds::parse_report_format(format);
        bds::RiskCurve curve;
        {
          py::gil_scoped_release release;
          curve = bds::run_experiment(config, bds::RunOptions{threads});
        }
        return bds::emit_report(curve, fmt);
      },
      py::arg("strategy"), py::arg("estimator"), py::arg("n_values"),
      py::arg("samples") = 1000, py::arg("loss") = "hs",
      py::arg("prior_alpha") = bds::Vec4::Ones(),
      py::arg("grid") = bds::kDefaultGridResolution,
      py::arg("seed") = bds::kDefaultSeed, py::arg("format") = "json",
      py::arg("threads") = 1,
      "Run a Monte Carlo risk curve and return the report text.");

  m.def(
      "analytic_curve",
      [](const std::string& strategy, const std::string& estimator,
         const std::vector<std::int64_t>& n_values) {
        std::vector<std::tuple<std::int64_t, double, bool>> out;
        for (const auto& p : bds::analytic_curve(bds::parse_strategy(strategy),
                                                 bds::parse_estimator(estimator),
                                                 n_values)) {
          out.emplace_back(p.n, p.result.value, p.result.upper_bound);
        }
        return out;
      },
      py::arg("strategy"), py::arg("estimator"), py::arg("n_values"),
      "List of (n, value, is_upper_bound).");

  py::register_exception<bds::NoClosedForm>(m, "NoClosedForm", PyExc_ValueError);
}
