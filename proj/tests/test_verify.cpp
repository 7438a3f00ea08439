// Copyright 2026 The thetaphase Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "thetaphase/verify.hpp"

using namespace thetaphase;

namespace {

// Every public operation the verify run must exercise at least once.
const std::vector<std::string> kRequiredOps{
    "theta3", "theta3_du", "jacobi_residual", "omega", "fourier_op", "displacement", "displaced_fourier",
    "displaced_parity", "momentum_coeffs", "torus_rep", "scalar_product_analytic", "coefficients_from_torus",
    "find_zeros", "state_from_zeros", "coherent_eval", "coherent_fourier_relation_residual", "kernel", "reproduce",
    "coherent_coeffs", "parity_coeffs", "marginals", "fourier_fiducial_eval", "circle_displace", "circle_parity",
    "displaced_parity_circle", "coherent_overlap_circle", "resolution_identity_circle", "strip_rep",
    "strip_scalar_product", "strip_invert", "strip_coherent_eval", "strip_coherent_fourier_residual", "strip_zeros",
    "kernel_c", "strip_reproduce", "strip_coherent_coeffs", "strip_marginals", "weyl_finite", "wigner_finite",
    "weyl_finite_from_coherent", "wigner_finite_from_coherent", "weyl_circle", "wigner_circle",
    "weyl_circle_from_coeffs", "wigner_circle_from_coeffs", "export_grid"};

RunConfig parallel_defaults() {
  RunConfig cfg;
  cfg.parallel = true;
  return cfg;
}

// Computed once; the full run takes a few seconds.
const VerifyReport& default_report() {
  static const VerifyReport report = run_verify(parallel_defaults());
  return report;
}

}  // namespace

TEST_CASE("default configuration passes every entry") {
  const VerifyReport& report = default_report();
  CHECK(report.entries.size() == verify_entry_names().size());
  for (const VerifyEntry& e : report.entries) {
    INFO(e.name << " residual " << e.residual << " tolerance " << e.tolerance << " " << e.error);
    CHECK(e.passed);
    CHECK(e.error.empty());
  }
  CHECK(report.passed());
}

TEST_CASE("verify covers every public operation") {
  std::set<std::string> seen;
  for (const VerifyEntry& e : default_report().entries) seen.insert(e.ops.begin(), e.ops.end());
  for (const std::string& op : kRequiredOps) {
    INFO(op);
    CHECK(seen.count(op) == 1);
  }
}

TEST_CASE("entry names are unique and grouped") {
  const auto names = verify_entry_names();
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
  for (const std::string& n : names) {
    INFO(n);
    CHECK(n.find('.') != std::string::npos);
    CHECK(is_tolerance_key(n));
    CHECK(is_tolerance_key(n.substr(0, n.find('.'))));
  }
  CHECK(is_tolerance_key("all"));
  CHECK_FALSE(is_tolerance_key("nonsense"));
  CHECK(default_tolerance("torus.zero_count") == 0.5);
  CHECK_THROWS_AS(default_tolerance("nonsense"), InvalidArgument);
}

TEST_CASE("zero tolerance fails every entry") {
  RunConfig cfg = parallel_defaults();
  cfg.tolerances["all"] = 0.0;
  const VerifyReport report = run_verify(cfg);
  CHECK(report.entries.size() == verify_entry_names().size());
  for (const VerifyEntry& e : report.entries) {
    INFO(e.name);
    CHECK_FALSE(e.passed);
  }
  CHECK_FALSE(report.passed());
}

TEST_CASE("reports are deterministic and independent of scheduling") {
  RunConfig cfg;
  const std::vector<std::string> filters{"theta", "finite", "circle.group_law", "phase.weyl_finite"};
  const std::string sequential = run_verify(cfg, filters).to_json().dump();
  cfg.parallel = true;
  const std::string parallel = run_verify(cfg, filters).to_json().dump();
  CHECK(sequential == parallel);
  CHECK(run_verify(cfg, filters).to_json().dump() == parallel);

  cfg.seed = 7;
  CHECK(run_verify(cfg, filters).to_json().dump() != parallel);
}

TEST_CASE("filters select entries or groups in table order") {
  const VerifyReport r = run_verify(RunConfig{}, {"torus.coefficients", "theta"});
  REQUIRE(r.entries.size() == 4);
  CHECK(r.entries[0].name == "theta.identities");
  CHECK(r.entries[3].name == "torus.coefficients");

  // Entries produced together run together, but only the selected ones are reported.
  const VerifyReport zeros = run_verify(RunConfig{}, {"torus.zero_sum"});
  REQUIRE(zeros.entries.size() == 1);
  CHECK(zeros.entries[0].name == "torus.zero_sum");

  const VerifyReport kernel = run_verify(RunConfig{}, {"strip.kernel"});
  REQUIRE(kernel.entries.size() == 1);
  CHECK(kernel.entries[0].name == "strip.kernel");
  CHECK(run_verify(RunConfig{}, {"strip.ker"}).entries.empty());

  CHECK(run_verify(RunConfig{}, {"nothing"}).entries.empty());
  CHECK_FALSE(run_verify(RunConfig{}, {"nothing"}).passed());
}

TEST_CASE("tolerance lookup prefers the most specific key") {
  RunConfig cfg;
  CHECK(cfg.tolerance_for("strip.kernel", 1e-9) == 1e-9);
  cfg.tolerances["all"] = 1.0;
  CHECK(cfg.tolerance_for("strip.kernel", 1e-9) == 1.0);
  cfg.tolerances["strip"] = 2.0;
  CHECK(cfg.tolerance_for("strip.kernel", 1e-9) == 2.0);
  CHECK(cfg.tolerance_for("circle.period", 1e-9) == 1.0);
  cfg.tolerances["strip.kernel"] = 3.0;
  CHECK(cfg.tolerance_for("strip.kernel", 1e-9) == 3.0);
  CHECK(cfg.tolerance_for("strip.zeros", 1e-9) == 2.0);
}

TEST_CASE("group override reaches the report") {
  RunConfig cfg;
  cfg.tolerances["theta"] = 1e-30;
  const VerifyReport r = run_verify(cfg, {"theta", "finite.clock_shift"});
  for (const VerifyEntry& e : r.entries) {
    INFO(e.name);
    if (e.name.rfind("theta.", 0) == 0) {
      CHECK(e.tolerance == 1e-30);
      CHECK_FALSE(e.passed);
    } else {
      CHECK(e.tolerance == 1e-11);
      CHECK(e.passed);
    }
  }
}

TEST_CASE("toml configuration") {
  const RunConfig cfg = parse_run_config(R"(
seed = 11
dims = [3, 5]
n_max = 6
format = "csv"
parallel = true

[tolerances]
all = 1e-3
"strip.kernel" = 1e-10
theta = 1e-12

[quadrature]
torus = 80
strip_imag = 200

[theta]
eps = 1e-15
max_terms = 400
)");
  CHECK(cfg.seed == 11);
  CHECK(cfg.dims == std::vector<int>{3, 5});
  CHECK(cfg.n_max == 6);
  CHECK(cfg.format == OutputFormat::csv);
  CHECK(cfg.parallel);
  CHECK(cfg.tolerance_for("strip.kernel", 1.0) == 1e-10);
  CHECK(cfg.tolerance_for("theta.modular", 1.0) == 1e-12);
  CHECK(cfg.tolerance_for("circle.overlap", 1.0) == 1e-3);
  CHECK(cfg.torus_quadrature.n_real == 80);
  CHECK(cfg.torus_quadrature.n_imag == 80);
  CHECK(cfg.strip_quadrature.n_imag == 200);
  CHECK(cfg.theta.eps == 1e-15);
  CHECK(cfg.theta.max_terms == 400);

  CHECK(parse_run_config("").seed == RunConfig{}.seed);
  CHECK(parse_run_config("[tolerances]\nall = 0\n").tolerance_for("x.y", 1.0) == 0.0);
}

TEST_CASE("invalid configurations are rejected") {
  const auto rejects = [](const std::string& text) {
    INFO(text);
    CHECK_THROWS_AS(parse_run_config(text), ConfigError);
  };
  rejects("seed = ");
  rejects("unknown = 1");
  rejects("seed = -1");
  rejects("seed = 1.5");
  rejects("dims = [4]");
  rejects("dims = []");
  rejects("dims = 3");
  rejects("n_max = 0");
  rejects("format = \"xml\"");
  rejects("parallel = 1");
  rejects("[tolerances]\nall = -1.0");
  rejects("[tolerances]\nall = nan");
  rejects("[tolerances]\nnot_an_entry = 1.0");
  rejects("[tolerances]\nall = \"small\"");
  rejects("[quadrature]\ntorus = 1");
  rejects("[quadrature]\nsphere = 10");
  rejects("[theta]\nprecision = 10");
  rejects("tolerances = 3");

  try {
    parse_run_config("unknown = 1", "my.toml");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("my.toml") != std::string::npos);
    CHECK(std::string(e.what()).find("unknown") != std::string::npos);
  }
  CHECK_THROWS_AS(load_run_config("/nonexistent/thetaphase.toml"), ConfigError);
  CHECK_THROWS_AS(parse_output_format("yaml"), ConfigError);

  RunConfig cfg;
  cfg.tolerances["all"] = -1.0;
  CHECK_THROWS_AS(run_verify(cfg), ConfigError);
}

TEST_CASE("report rendering") {
  VerifyReport r;
  r.seed = 5;
  VerifyEntry ok;
  ok.name = "a.ok";
  ok.identity = "x = x";
  ok.residual = 1e-14;
  ok.tolerance = 1e-12;
  ok.passed = true;
  ok.runtime_ms = 2.5;
  ok.ops = {"theta3"};
  VerifyEntry bad = ok;
  bad.name = "a.bad";
  bad.residual = std::numeric_limits<double>::infinity();
  bad.passed = false;
  bad.error = "boom";
  r.entries = {ok, bad};

  CHECK_FALSE(r.passed());
  const nlohmann::json j = r.to_json();
  CHECK(j["seed"] == 5);
  CHECK(j["passed"] == false);
  CHECK(j["entries"][0]["residual"] == 1e-14);
  CHECK(j["entries"][1]["residual"].is_null());
  CHECK(j["entries"][1]["error"] == "boom");
  CHECK_FALSE(j["entries"][0].contains("runtime_ms"));
  CHECK_FALSE(j.contains("runtime_ms"));
  CHECK(r.to_json(true)["entries"][0]["runtime_ms"] == 2.5);
  CHECK(r.to_json(true)["runtime_ms"] == 5.0);

  const std::string csv = r.to_csv();
  CHECK(csv.rfind("name,residual,tolerance,passed\n", 0) == 0);
  CHECK(csv.find("a.ok,1e-14,") != std::string::npos);
  CHECK(csv.find("a.bad,inf,") != std::string::npos);
  CHECK(r.to_csv(true).find(",runtime_ms\n") != std::string::npos);
  CHECK(r.render(OutputFormat::csv) == csv);
  CHECK(nlohmann::json::parse(r.render(OutputFormat::json)) == j);

  r.entries = {ok};
  CHECK(r.passed());
  r.entries.clear();
  CHECK_FALSE(r.passed());
}

TEST_CASE("probes report exact agreement on small inputs") {
  const ThetaConfig<> theta;
  CHECK(theta_identity_residual(theta, 1) < 1e-11);
  CHECK(clock_shift_residual(Dimension(9)) < 1e-11);
  CHECK(displaced_parity_residual(Dimension(11)) < 1e-11);
  CHECK(circle_group_law_residual(3, 9) < 1e-10);
  CHECK(strip_kernel_residual(theta) < 1e-9);

  const ConvergenceSweep s = wigner_convergence_sweep(random_circle_state(4, 3), FiducialCircle::gaussian_momenta(),
                                                      PhaseLabelCircle(0.4, 2));
  REQUIRE(s.k_max.size() == s.error.size());
  CHECK(std::is_sorted(s.k_max.begin(), s.k_max.end()));
  CHECK(s.error.back() < 1e-9);
  CHECK(s.worst_ratio < 0.5);
}
