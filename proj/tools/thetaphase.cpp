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

// thetaphase command-line front end.
//
// Exit codes: 0 success (or all checks passed), 1 a check or the verify
// report failed, 2 bad usage or an error while running.

#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thetaphase/io.hpp"
#include "thetaphase/verify.hpp"

namespace tp = thetaphase;

namespace {

constexpr int kFailed = 1;
constexpr int kError = 2;

tp::Complex parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0;
  double im = 0.0;
  char sep = 0;
  if (!(in >> re)) throw tp::ParseError("expected RE or RE,IM, got '" + text + "'");
  if (in >> sep) {
    if (sep != ',' || !(in >> im)) throw tp::ParseError("expected RE or RE,IM, got '" + text + "'");
  }
  if (in >> sep) throw tp::ParseError("trailing characters in '" + text + "'");
  return {re, im};
}

// Writes to the file, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    tp::write_text_file(path, text);
  }
}

tp::FiniteState load_finite(const std::string& path, std::optional<int> d) {
  tp::FiniteState g = tp::load_finite_state(path);
  if (d && g.dim().d() != *d) {
    throw tp::ParseError(path + ": state has dimension " + std::to_string(g.dim().d()) + ", --d says " +
                         std::to_string(*d));
  }
  return g;
}

// gauss | random:SEED | path to a state file
tp::FiducialFinite finite_fiducial(const std::string& spec, const tp::Dimension& dim) {
  if (spec == "gauss") return tp::FiducialFinite::discrete_gaussian(dim);
  if (spec.rfind("random:", 0) == 0) return tp::FiducialFinite::seeded_random(dim, std::stoull(spec.substr(7)));
  return tp::FiducialFinite::user(load_finite(spec, dim.d()));
}

tp::FiducialCircle circle_fiducial(const std::string& spec, int n_max) {
  if (spec == "gauss") return tp::FiducialCircle::gaussian_momenta();
  if (spec.rfind("random:", 0) == 0) return tp::FiducialCircle::seeded_random(n_max, std::stoull(spec.substr(7)));
  return tp::FiducialCircle::user(tp::load_circle_state(spec));
}

nlohmann::json complex_list(const std::vector<tp::Complex>& zs) {
  nlohmann::json out = nlohmann::json::array();
  for (tp::Complex z : zs) out.push_back(tp::to_json(z));
  return out;
}

// A named residual check and the verify entry whose tolerance it shares.
struct NamedCheck {
  std::string name;
  std::string entry;
  std::function<double()> run;
};

// Prints check,residual,tolerance,passed rows; returns the exit code.
int run_checks(const std::vector<NamedCheck>& checks, const std::string& which, std::optional<double> tol,
               const std::string& label_header, const std::string& label) {
  std::vector<const NamedCheck*> selected;
  for (const NamedCheck& c : checks) {
    if (which == "all" || which == c.name) selected.push_back(&c);
  }
  if (selected.empty()) throw tp::InvalidArgument("unknown check '" + which + "'");
  bool all_passed = true;
  std::cout << "check," << label_header << ",residual,tolerance,passed\n" << std::setprecision(17);
  for (const NamedCheck* c : selected) {
    const double t = tol.value_or(tp::default_tolerance(c->entry));
    const double r = c->run();
    const bool ok = r < t;
    all_passed = all_passed && ok;
    std::cout << c->name << ',' << label << ',' << r << ',' << t << ',' << (ok ? "true" : "false") << '\n';
  }
  return all_passed ? 0 : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta-function phase-space toolkit for finite and circle quantum systems"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "TOML run configuration (default: $THETA_PHASE_CONFIG)");

  // Resolved after parsing, before any subcommand runs.
  tp::RunConfig cfg;
  const auto load_config = [&] {
    cfg = config_path.empty() ? tp::run_config_from_environment() : tp::load_run_config(config_path);
  };

  int exit_code = 0;

  // theta eval
  auto* theta = app.add_subcommand("theta", "Jacobi theta function");
  theta->require_subcommand(1);
  auto* theta_eval = theta->add_subcommand("eval", "Evaluate theta3(u; tau) and its u-derivative");
  std::string u_text, tau_text;
  theta_eval->add_option("--u", u_text, "Argument RE,IM")->required();
  theta_eval->add_option("--tau", tau_text, "Modulus RE,IM with IM > 0")->required();
  theta_eval->callback([&] {
    const tp::ThetaArgs<> args{parse_complex(u_text), parse_complex(tau_text)};
    const tp::ThetaValue<> v = tp::theta3_with_du(args, cfg.theta);
    const nlohmann::json out{{"u", tp::to_json(args.u)},
                             {"tau", tp::to_json(args.tau)},
                             {"value", tp::to_json(v.value)},
                             {"du", tp::to_json(v.du)},
                             {"modular_residual", tp::jacobi_residual(args, cfg.theta)}};
    std::cout << out.dump(2) << '\n';
  });

  // finite ...
  auto* finite = app.add_subcommand("finite", "Finite system Z(d)");
  finite->require_subcommand(1);
  std::optional<int> d_opt;
  std::string state_path, out_path, torus_grid_spec = "64", strip_grid_spec = "64x33";

  auto* finite_rep = finite->add_subcommand("rep", "Sample G(z) on the cell and write CSV");
  finite_rep->add_option("--d", d_opt, "Dimension (checked against the state)");
  finite_rep->add_option("--state", state_path, "State JSON file")->required();
  finite_rep->add_option("--grid", torus_grid_spec, "N or NRxNI")->capture_default_str();
  finite_rep->add_option("--out", out_path, "CSV output (stdout if omitted)");
  finite_rep->callback([&] {
    const tp::FiniteState g = load_finite(state_path, d_opt);
    const auto [nr, ni] = tp::parse_grid_spec(torus_grid_spec);
    std::ostringstream csv;
    tp::write_grid_csv(csv, tp::torus_grid(tp::torus_rep(g, cfg.theta), nr, ni));
    emit(out_path, csv.str());
  });

  auto* finite_zeros = finite->add_subcommand("zeros", "Zeros of G(z) in the cell and the zero-sum check");
  finite_zeros->add_option("--d", d_opt, "Dimension (checked against the state)");
  finite_zeros->add_option("--state", state_path, "State JSON file")->required();
  finite_zeros->add_option("--out", out_path, "JSON output (stdout if omitted)");
  finite_zeros->callback([&] {
    const tp::FiniteState g = load_finite(state_path, d_opt);
    const tp::ZeroSet zs = tp::find_zeros(tp::torus_rep(g, cfg.theta));
    nlohmann::json out{{"d", g.dim().d()},
                       {"zeros", complex_list(zs.zeros)},
                       {"newton_residuals", zs.newton_residuals},
                       {"lattice", {zs.lattice.M, zs.lattice.N}},
                       {"target", tp::to_json(zs.target)},
                       {"sum_residual", std::abs(zs.sum_residual)}};
    emit(out_path, out.dump(2) + "\n");
  });

  auto* finite_coherent = finite->add_subcommand("coherent", "Coherent-state residual checks as CSV");
  int coherent_d = 3;
  std::string fiducial_spec = "gauss", check_name = "all";
  std::optional<double> tol_opt;
  std::optional<std::uint64_t> seed_opt;
  const std::vector<std::string> coherent_names{"all",       "evaluation", "fourier",         "kernel",
                                                "expansions", "analysis",   "marginals",       "fourier-fiducial"};
  finite_coherent->add_option("--d", coherent_d, "Dimension")->capture_default_str();
  finite_coherent->add_option("--fiducial", fiducial_spec, "gauss, random:SEED or a state file")->capture_default_str();
  finite_coherent->add_option("--check", check_name, "Check to run")->capture_default_str()->check(CLI::IsMember(coherent_names));
  finite_coherent->add_option("--tol", tol_opt, "Tolerance for every check (default: per check)");
  finite_coherent->add_option("--seed", seed_opt, "Seed for random test states");
  finite_coherent->callback([&] {
    const tp::Dimension dim(coherent_d);
    const tp::CoherentFamilyFinite fam(finite_fiducial(fiducial_spec, dim), cfg.theta);
    const std::uint64_t seed = seed_opt.value_or(cfg.seed);
    const std::vector<NamedCheck> checks{
        {"evaluation", "coherent.evaluation", [&] { return tp::coherent_evaluation_residual(fam); }},
        {"fourier", "coherent.fourier_relations", [&] { return tp::coherent_fourier_residual(fam); }},
        {"kernel", "coherent.kernel", [&] { return tp::coherent_kernel_residual(fam); }},
        {"expansions", "coherent.expansions", [&] { return tp::coherent_expansion_residual(fam, seed); }},
        {"analysis", "coherent.analysis",
         [&] { return tp::coherent_analysis_residual(fam, seed, cfg.torus_quadrature); }},
        {"marginals", "coherent.marginals", [&] { return tp::coherent_marginal_residual(fam); }},
        {"fourier-fiducial", "coherent.fourier_fiducial", [&] { return tp::fourier_fiducial_sweep_residual(fam); }},
    };
    exit_code = run_checks(checks, check_name, tol_opt, "d", std::to_string(coherent_d));
  });

  auto* finite_wigner = finite->add_subcommand("wigner", "Wigner or Weyl table of a state as CSV");
  std::string method = "direct", function = "wigner";
  finite_wigner->add_option("--d", d_opt, "Dimension (checked against the state)");
  finite_wigner->add_option("--state", state_path, "State JSON file")->required();
  finite_wigner->add_option("--method", method, "direct or coherent")->capture_default_str()
      ->check(CLI::IsMember({"direct", "coherent"}));
  finite_wigner->add_option("--fiducial", fiducial_spec, "Fiducial for --method coherent")->capture_default_str();
  finite_wigner->add_option("--function", function, "wigner or weyl")->capture_default_str()->check(CLI::IsMember({"wigner", "weyl"}));
  finite_wigner->add_option("--out", out_path, "CSV output (stdout if omitted)");
  finite_wigner->callback([&] {
    const tp::FiniteState g = load_finite(state_path, d_opt);
    tp::CMatrix table;
    if (method == "direct") {
      table = function == "wigner" ? tp::wigner_finite(g).values : tp::weyl_finite(g).values;
    } else {
      const tp::FiducialFinite f = finite_fiducial(fiducial_spec, g.dim());
      table = function == "wigner" ? tp::wigner_finite_from_coherent(g, f).values
                                   : tp::weyl_finite_from_coherent(g, f).values;
    }
    std::ostringstream csv;
    tp::write_table_csv(csv, table, "alpha", "beta");
    emit(out_path, csv.str());
  });

  auto* finite_op = finite->add_subcommand("op", "Dump an operator matrix as CSV");
  int op_d = 3, op_a = 0, op_b = 0;
  std::string op_name;
  finite_op->add_option("--d", op_d, "Dimension")->capture_default_str();
  finite_op->add_option("--name", op_name, "Operator")
      ->required()
      ->check(CLI::IsMember({"clock", "shift", "fourier", "displacement", "displaced-fourier", "displaced-parity"}));
  finite_op->add_option("--a", op_a, "Position label alpha")->capture_default_str();
  finite_op->add_option("--b", op_b, "Momentum label beta")->capture_default_str();
  finite_op->add_option("--out", out_path, "CSV output (stdout if omitted)");
  finite_op->callback([&] {
    const tp::Dimension dim(op_d);
    const tp::PhaseLabelFinite p(dim, op_a, op_b);
    const auto op = [&]() -> tp::FiniteOperator {
      if (op_name == "clock") return tp::clock_op(dim);
      if (op_name == "shift") return tp::shift_op(dim);
      if (op_name == "fourier") return tp::fourier_op(dim);
      if (op_name == "displacement") return tp::displacement(dim, p);
      if (op_name == "displaced-fourier") return tp::displaced_fourier(dim, p);
      return tp::displaced_parity(dim, p);
    }();
    std::ostringstream csv;
    tp::write_matrix_csv(csv, op.matrix());
    emit(out_path, csv.str());
  });

  // circle ...
  auto* circle = app.add_subcommand("circle", "Particle on a circle");
  circle->require_subcommand(1);

  auto* circle_rep = circle->add_subcommand("rep", "Sample Q(z) on the strip and write CSV");
  circle_rep->add_option("--state", state_path, "Circle state JSON file")->required();
  circle_rep->add_option("--grid", strip_grid_spec, "N or NRxNI")->capture_default_str();
  circle_rep->add_option("--out", out_path, "CSV output (stdout if omitted)");
  circle_rep->callback([&] {
    const auto [nr, ni] = tp::parse_grid_spec(strip_grid_spec);
    std::ostringstream csv;
    tp::write_grid_csv(csv, tp::strip_grid(tp::strip_rep(tp::load_circle_state(state_path), cfg.theta), nr, ni));
    emit(out_path, csv.str());
  });

  auto* circle_zeros = circle->add_subcommand("zeros", "Zeros of Q(z) in the strip");
  circle_zeros->add_option("--state", state_path, "Circle state JSON file")->required();
  circle_zeros->add_option("--out", out_path, "JSON output (stdout if omitted)");
  circle_zeros->callback([&] {
    const tp::StripZeroSet zs = tp::strip_zeros(tp::strip_rep(tp::load_circle_state(state_path), cfg.theta));
    const nlohmann::json out{{"zeros", complex_list(zs.zeros)},        {"residuals", zs.residuals},
                             {"n_low", zs.n_low},                      {"n_high", zs.n_high},
                             {"degenerate_leading", zs.degenerate_leading}, {"discarded", zs.discarded}};
    emit(out_path, out.dump(2) + "\n");
  });

  int n_max_opt = 8;
  auto* circle_check = circle->add_subcommand("check", "Strip representation residual checks as CSV");
  const std::vector<std::string> strip_names{"all",        "fourier",   "shift-form", "scalar-product", "kernel",
                                             "reproduce",  "expansions", "marginals", "zeros"};
  check_name = "all";
  circle_check->add_option("--check", check_name, "Check to run")->capture_default_str()->check(CLI::IsMember(strip_names));
  circle_check->add_option("--nmax", n_max_opt, "Momentum cutoff of the test states")->capture_default_str();
  circle_check->add_option("--fiducial", fiducial_spec, "gauss, random:SEED or a circle state file")->capture_default_str();
  circle_check->add_option("--tol", tol_opt, "Tolerance for every check (default: per check)");
  circle_check->add_option("--seed", seed_opt, "Seed for random test states");
  circle_check->callback([&] {
    const tp::FiducialCircle r = circle_fiducial(fiducial_spec, n_max_opt);
    const std::uint64_t seed = seed_opt.value_or(cfg.seed);
    const tp::CircleState q = tp::random_circle_state(n_max_opt, seed);
    const int k_max = std::max(24, 3 * n_max_opt);
    const std::vector<NamedCheck> checks{
        {"fourier", "strip.fourier", [&] { return tp::strip_fourier_residual(r); }},
        {"shift-form", "strip.shift_form", [&] { return tp::strip_shift_form_residual(r, seed); }},
        {"scalar-product", "strip.scalar_product",
         [&] {
           const tp::CircleState q2 = tp::random_circle_state(n_max_opt, seed + 1);
           const tp::Complex quad = tp::strip_scalar_product(tp::strip_rep(q, cfg.theta), tp::strip_rep(q2, cfg.theta),
                                                             cfg.strip_quadrature);
           return std::abs(quad - tp::inner(q2, q));
         }},
        {"kernel", "strip.kernel",
         [&] {
           return std::max(tp::strip_kernel_residual(cfg.theta),
                           tp::kernel_resolution_residual(r, {0.3, 0.1}, {1.2, -0.4}, 40, 96));
         }},
        {"reproduce", "strip.reproduce", [&] { return tp::strip_reproduce_residual(q, cfg.strip_quadrature, seed); }},
        {"expansions", "strip.expansions",
         [&] { return tp::strip_expansion_residual(q, r, k_max, cfg.strip_quadrature); }},
        {"marginals", "strip.marginals", [&] { return tp::strip_marginal_residual(r); }},
        {"zeros", "strip.zeros", [&] { return tp::strip_zero_residual(n_max_opt, seed); }},
    };
    exit_code = run_checks(checks, check_name, tol_opt, "n_max", std::to_string(n_max_opt));
  });

  auto* circle_wigner = circle->add_subcommand("wigner", "Wigner or Weyl function on an (a, K) grid as CSV");
  int a_grid = 64, k_max_opt = 8;
  function = "wigner";
  circle_wigner->add_option("--state", state_path, "Circle state JSON file")->required();
  circle_wigner->add_option("--a-grid", a_grid, "Number of points a_j = 2 pi j / N")->capture_default_str();
  circle_wigner->add_option("--kmax", k_max_opt, "Largest |K|")->capture_default_str();
  circle_wigner->add_option("--function", function, "wigner or weyl")->capture_default_str()->check(CLI::IsMember({"wigner", "weyl"}));
  circle_wigner->add_option("--out", out_path, "CSV output (stdout if omitted)");
  circle_wigner->callback([&] {
    const tp::CircleState q = tp::load_circle_state(state_path);
    const tp::PhaseMapCircle map =
        function == "wigner" ? tp::wigner_map_circle(q, a_grid, k_max_opt) : tp::weyl_map_circle(q, a_grid, k_max_opt);
    std::ostringstream csv;
    csv << "a,K,re,im\n" << std::setprecision(17);
    for (int K = -map.k_max(); K <= map.k_max(); ++K) {
      for (int j = 0; j < map.n_a(); ++j) {
        const tp::Complex v = map.at(j, K);
        csv << map.a(j) << ',' << K << ',' << v.real() << ',' << v.imag() << '\n';
      }
    }
    emit(out_path, csv.str());
  });

  auto* circle_op = circle->add_subcommand("op", "Displacement and parity operator checks as CSV");
  const std::vector<std::string> op_names{"all", "group-law", "period", "parity", "parity-fourier", "resolution"};
  check_name = "all";
  circle_op->add_option("--check", check_name, "Check to run")->capture_default_str()->check(CLI::IsMember(op_names));
  circle_op->add_option("--nmax", n_max_opt, "Momentum cutoff")->capture_default_str();
  circle_op->add_option("--tol", tol_opt, "Tolerance for every check (default: per check)");
  circle_op->add_option("--seed", seed_opt, "Seed for random test states");
  circle_op->callback([&] {
    const std::uint64_t seed = seed_opt.value_or(cfg.seed);
    const int k_max = std::max(24, 3 * n_max_opt);
    const std::vector<NamedCheck> checks{
        {"group-law", "circle.group_law", [&] { return tp::circle_group_law_residual(n_max_opt, seed); }},
        {"period", "circle.period", [&] { return tp::circle_period_residual(n_max_opt, seed); }},
        {"parity", "circle.parity", [&] { return tp::circle_parity_residual(n_max_opt, k_max); }},
        {"parity-fourier", "circle.parity_fourier", [&] { return tp::circle_parity_fourier_residual(n_max_opt, k_max); }},
        {"resolution", "circle.resolution",
         [&] {
           return std::max(tp::resolution_identity_circle(tp::FiducialCircle::gaussian_momenta(n_max_opt), k_max, 64),
                           tp::resolution_identity_circle(tp::FiducialCircle::seeded_random(n_max_opt, seed), k_max, 64));
         }},
    };
    exit_code = run_checks(checks, check_name, tol_opt, "n_max", std::to_string(n_max_opt));
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run every residual suite and print a pass/fail report");
  bool parallel = false, timing = false;
  std::vector<std::string> tol_overrides, only;
  std::optional<std::string> format_opt;
  verify->add_flag("--parallel", parallel, "Run independent suites concurrently");
  verify->add_flag("--timing", timing, "Include runtime_ms in the report");
  verify->add_option("--tol", tol_overrides, "Tolerance override NAME=VALUE (entry, group or 'all')");
  verify->add_option("--format", format_opt, "json or csv (default from config)")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--only", only, "Run only this entry or group (repeatable)");
  verify->add_option("--seed", seed_opt, "Override the configured seed");
  verify->add_option("--out", out_path, "Report output (stdout if omitted)");
  verify->callback([&] {
    if (parallel) cfg.parallel = true;
    if (seed_opt) cfg.seed = *seed_opt;
    if (format_opt) cfg.format = tp::parse_output_format(*format_opt);
    for (const std::string& item : tol_overrides) {
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos) throw tp::ConfigError("--tol expects NAME=VALUE, got '" + item + "'");
      const std::string key = item.substr(0, eq);
      if (!tp::is_tolerance_key(key)) throw tp::ConfigError("unknown tolerance key '" + key + "'");
      try {
        cfg.tolerances[key] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw tp::ConfigError("--tol " + key + ": '" + item.substr(eq + 1) + "' is not a number");
      }
    }
    const tp::VerifyReport report = tp::run_verify(cfg, only);
    if (report.entries.empty()) throw tp::ConfigError("--only matched no entries");
    emit(out_path, report.render(cfg.format, timing));
    if (!out_path.empty() && out_path != "-") {
      int failed = 0;
      for (const tp::VerifyEntry& e : report.entries) failed += e.passed ? 0 : 1;
      std::cerr << report.entries.size() - failed << "/" << report.entries.size() << " entries passed\n";
    }
    exit_code = report.passed() ? 0 : kFailed;
  });

  // Load the config once the global options are parsed, before any callback.
  app.parse_complete_callback([&] { load_config(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  } catch (const tp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return exit_code;
}
