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

// Analytic functions on the strip [0, 2pi) x R for circle states.
//
//   Q(z) = int_0^{2pi} dx q(x) theta3((x - z)/2; i/2pi) = 2pi sum_N q_N exp(-N^2/2 + iNz)
//
// Integrals over the strip use the measure
//   dm(z) = exp(-y^2) dx dy / (4 pi^{5/2}),   z = x + iy,
// cut off at |y| <= y_max.

#ifndef THETAPHASE_STRIP_ANALYTIC_HPP
#define THETAPHASE_STRIP_ANALYTIC_HPP

#include <vector>

#include "thetaphase/circle_system.hpp"
#include "thetaphase/theta.hpp"

namespace thetaphase {

class StripFunction {
 public:
  explicit StripFunction(CircleState q, ThetaConfig<> cfg = {});

  const CircleState& state() const { return q_; }
  const ThetaConfig<>& theta_config() const { return cfg_; }
  /// Half height of the integration strip, n_max + 6.
  double y_max() const { return q_.n_max() + 6.0; }

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;

 private:
  CircleState q_;
  ThetaConfig<> cfg_;
};

StripFunction strip_rep(const CircleState& q, const ThetaConfig<>& cfg = {});

/// theta3((x - z)/2; i/2pi), the kernel of the strip transform.
Complex strip_theta(double x, Complex z, const ThetaConfig<>& cfg = {});

struct StripQuadratureSpec {
  int n_real = 128;
  int n_imag = 160;
};

/// Nodes and dm(z) weights on [0, 2pi) x [-y_max, y_max]: periodic
/// rectangle rule in x, trapezoid rule in y.
struct StripRule {
  std::vector<Complex> nodes;
  Eigen::VectorXd weights;
};
StripRule strip_rule(double y_max, const StripQuadratureSpec& sq = {});

/// (1/2pi) int dm(z) Q1(z) [Q2(z)]^*.
Complex strip_scalar_product(const StripFunction& q1, const StripFunction& q2,
                             const StripQuadratureSpec& sq = {});

/// q(x) = int dm(z) Q(z) theta3((x - z^*)/2; i/2pi).
Complex strip_invert(const StripFunction& q, double x, const StripQuadratureSpec& sq = {});

enum class StripCoherentPath {
  /// strip_rep of D(a, K)|r>.
  displaced_state,
  /// exp(-iKa/2 + iKz - K^2/2) R(z + iK - a).
  shift_form,
};

Complex strip_coherent_eval(const FiducialCircle& r, Complex z, const PhaseLabelCircle& p,
                            StripCoherentPath path = StripCoherentPath::displaced_state);

/// |d(-z; a, K) - (1/2pi) sum_{|M|<=k_max} int db d(z; b, 2M - K) exp[i(-bK - aK + 2Ma)/2]|
/// with an n_b-point b-grid.
double strip_coherent_fourier_residual(const FiducialCircle& r, Complex z, const PhaseLabelCircle& p,
                                       int k_max, int n_b);

/// Zeros of Q in the strip, from the Laurent polynomial in w = exp(iz).
struct StripZeroSet {
  /// Re z folded into [0, 2pi).
  std::vector<Complex> zeros;
  /// |Q(zeta)| after polishing.
  std::vector<double> residuals;
  /// Lowest and highest momenta with nonzero coefficient.
  int n_low = 0;
  int n_high = 0;
  /// True when q_{-n_max} or q_{n_max} vanishes and the degree was reduced.
  bool degenerate_leading = false;
  /// Roots dropped for |w| outside [1e-12, 1e12].
  int discarded = 0;
};
StripZeroSet strip_zeros(const StripFunction& q);

/// K_c(z, w^*) = 2pi theta3((w^* - z)/2; i/pi). Takes w and conjugates it internally.
Complex kernel_c(Complex z, Complex w, const ThetaConfig<>& cfg = {});

/// |(1/4pi^2) sum_{|K|<=k_max} int da d(z; a, K) [d(w; a, K)]^* - K_c(z, w^*)|.
double kernel_resolution_residual(const FiducialCircle& r, Complex z, Complex w, int k_max, int n_a);

/// int dm(w) K_c(z, w^*) Q(w).
Complex strip_reproduce(const StripFunction& q, Complex z, const StripQuadratureSpec& sq = {});

/// q(a, K; r) = <r|D(-a, -K)|q>.
Complex circle_coherent_coeff(const CircleState& q, const FiducialCircle& r, const PhaseLabelCircle& p);
/// q~(b, M; r) = <r|U(-b, -M)|q>.
Complex circle_parity_coeff(const CircleState& q, const FiducialCircle& r, const PhaseLabelCircle& p);

/// Coefficients sampled at a_j = 2pi j / n_a and |K| <= k_max;
/// values(j, K + k_max).
struct CircleCoeffTable {
  int n_a = 0;
  int k_max = 0;
  CMatrix values;

  double a(int j) const { return 2.0 * kPi * j / n_a; }
  Complex at(int j, int K) const { return values(j, K + k_max); }
};

CircleCoeffTable strip_coherent_coeffs(const CircleState& q, const FiducialCircle& r, int n_a, int k_max);
CircleCoeffTable strip_parity_coeffs(const CircleState& q, const FiducialCircle& r, int n_a, int k_max);

/// (1/2pi) sum_K int da d(z; a, K) q(a, K).
Complex strip_coherent_synthesis(const FiducialCircle& r, const CircleCoeffTable& c, Complex z);
/// (1/2pi) sum_M int db d(-z; b, M) q~(b, M).
Complex strip_parity_synthesis(const FiducialCircle& r, const CircleCoeffTable& c, Complex z);

/// (1/2pi) int dm(w) [d(w; a, K)]^* Q(w).
Complex strip_coherent_coeff_by_quadrature(const StripFunction& q, const FiducialCircle& r,
                                           const PhaseLabelCircle& p, const StripQuadratureSpec& sq = {});
/// (1/2pi) int dm(w) [d(-w; b, M)]^* Q(w).
Complex strip_parity_coeff_by_quadrature(const StripFunction& q, const FiducialCircle& r,
                                         const PhaseLabelCircle& p, const StripQuadratureSpec& sq = {});

/// |q~(b, M) - (1/2pi) sum_{|K|<=k_max} int da q(-a, M - 2K) exp[i(-aM - bM + 2Kb)/2]|.
double parity_from_coherent_residual(const CircleState& q, const FiducialCircle& r,
                                     const PhaseLabelCircle& p, int k_max, int n_a);

enum class StripMarginalKind { sum_over_K, integral_over_a };

struct StripMarginal {
  Complex value;
  Complex expected;
  double residual() const { return std::abs(value - expected); }
};

/// sum_over_K: sum_{|K|<=k_max} d(z; a, K) against 2pi r(-a/2) theta3((a - 2z)/4; i/2pi),
///   label = a.
/// integral_over_a: int da d(z; a, -2K) against 4pi^2 r_K exp(-izK - K^2/2),
///   label = K, n points in a.
StripMarginal strip_marginals(const FiducialCircle& r, Complex z, StripMarginalKind which, double label,
                              int k_max = 0, int n_a = 64);

}  // namespace thetaphase

#endif  // THETAPHASE_STRIP_ANALYTIC_HPP
