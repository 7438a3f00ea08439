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

// Residual suites over every layer, and the probes they are built from.
//
// Each report entry is named "<group>.<check>" (e.g. "circle.resolution").
// An entry passes when its residual is strictly below its tolerance.

#ifndef THETAPHASE_VERIFY_HPP
#define THETAPHASE_VERIFY_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "thetaphase/phase_space.hpp"
#include "thetaphase/strip_analytic.hpp"
#include "thetaphase/torus.hpp"

namespace thetaphase {

enum class OutputFormat { csv, json };

struct RunConfig {
  /// Keyed by entry name, group name or "all"; the most specific key wins.
  std::map<std::string, double> tolerances;
  QuadratureSpec torus_quadrature;
  StripQuadratureSpec strip_quadrature;
  ThetaConfig<> theta;
  OutputFormat format = OutputFormat::json;
  std::uint64_t seed = 2026;
  std::vector<int> dims{3, 5, 7};
  int n_max = 8;
  bool parallel = false;

  /// Throws ConfigError.
  void validate() const;
  double tolerance_for(const std::string& entry, double fallback) const;
};

/// TOML: top-level seed, dims, n_max, format, parallel; tables [tolerances],
/// [quadrature] (torus, torus_real, torus_imag, strip_real, strip_imag) and
/// [theta] (eps, max_terms, transform_threshold). Unknown keys are errors.
RunConfig parse_run_config(const std::string& toml_text, const std::string& source = "config");
RunConfig load_run_config(const std::filesystem::path& path);
/// The file named by THETA_PHASE_CONFIG, or the defaults when it is unset.
RunConfig run_config_from_environment();

OutputFormat parse_output_format(const std::string& name);

struct VerifyEntry {
  std::string name;
  /// The identity being checked, in words.
  std::string identity;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Wall time of the task that produced the entry.
  double runtime_ms = 0.0;
  std::vector<std::string> ops;
  std::string detail;
  std::string error;
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;
  std::uint64_t seed = 0;

  bool passed() const;
  /// Timing is left out unless asked for, so reruns compare equal byte for byte.
  nlohmann::json to_json(bool with_timing = false) const;
  std::string to_csv(bool with_timing = false) const;
  std::string render(OutputFormat format, bool with_timing = false) const;
};

/// Every entry name run_verify can produce, in report order.
std::vector<std::string> verify_entry_names();
/// Built-in tolerance of an entry. Throws InvalidArgument for unknown names.
double default_tolerance(const std::string& entry);
/// True for entry names, group names and "all".
bool is_tolerance_key(const std::string& key);

/// Runs the entries selected by the filters: an entry name or a group name
/// (all entries when empty).
/// Suite failures and exceptions are recorded in the report, not thrown.
VerifyReport run_verify(const RunConfig& cfg, const std::vector<std::string>& filters = {});

// Probes. Each returns the worst residual over a fixed sample set; seeds pick
// the random states.

double theta_identity_residual(const ThetaConfig<>& cfg, std::uint64_t seed);
double theta_derivative_residual(const ThetaConfig<>& cfg, std::uint64_t seed);
double theta_modular_residual(const ThetaConfig<>& cfg, std::uint64_t seed);

double clock_shift_residual(const Dimension& dim);
double displaced_fourier_residual(const Dimension& dim);
double displaced_parity_residual(const Dimension& dim);
double fourier_basis_residual(const Dimension& dim, std::uint64_t seed);

double coherent_evaluation_residual(const CoherentFamilyFinite& fam);
double coherent_fourier_residual(const CoherentFamilyFinite& fam);
double coherent_kernel_residual(const CoherentFamilyFinite& fam);
double coherent_expansion_residual(const CoherentFamilyFinite& fam, std::uint64_t seed);
double coherent_analysis_residual(const CoherentFamilyFinite& fam, std::uint64_t seed, const QuadratureSpec& q);
double coherent_marginal_residual(const CoherentFamilyFinite& fam);
double fourier_fiducial_sweep_residual(const CoherentFamilyFinite& fam);

struct ZeroSweep {
  /// max |number of zeros - d|
  double count = 0.0;
  double zero_sum = 0.0;
  /// max (1 - fidelity) of the rebuilt states.
  double reconstruction = 0.0;
};
ZeroSweep torus_zero_sweep(const Dimension& dim, int states, std::uint64_t seed, const QuadratureSpec& q,
                           const ThetaConfig<>& cfg);

double circle_group_law_residual(int n_max, std::uint64_t seed);
double circle_period_residual(int n_max, std::uint64_t seed);
double circle_parity_residual(int n_max, int k_max);
double circle_parity_fourier_residual(int n_max, int k_max);
double circle_overlap_residual(const FiducialCircle& r, std::uint64_t seed);

double strip_representation_residual(const CircleState& q, const ThetaConfig<>& cfg);
double strip_shift_form_residual(const FiducialCircle& r, std::uint64_t seed);
double strip_fourier_residual(const FiducialCircle& r);
/// Zeros of a random state: |Q| at the zeros relative to the peak on the strip,
/// and the move by a - iK under D(a, K).
double strip_zero_residual(int n_max, std::uint64_t seed);
double strip_kernel_residual(const ThetaConfig<>& cfg);
double strip_reproduce_residual(const CircleState& q, const StripQuadratureSpec& sq, std::uint64_t seed);
double strip_expansion_residual(const CircleState& q, const FiducialCircle& r, int k_max,
                                const StripQuadratureSpec& sq);
double strip_marginal_residual(const FiducialCircle& r);

struct ConvergenceSweep {
  std::vector<int> k_max;
  std::vector<double> error;
  /// Largest err[k+1] / err[k] among steps that start above the floor.
  double worst_ratio = 0.0;
};
ConvergenceSweep wigner_convergence_sweep(const CircleState& q, const FiducialCircle& r,
                                          const PhaseLabelCircle& p);

}  // namespace thetaphase

#endif  // THETAPHASE_VERIFY_HPP
