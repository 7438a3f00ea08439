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

// Analytic representation of a state of Z(d) on the torus:
//
//   G(z) = pi^{-1/4} sum_m g_m theta3(pi m/d - z sqrt(pi/2d); i/d).
//
// G is periodic with period L = sqrt(2 pi d) along the real axis and
// quasi-periodic along the imaginary axis, so it is determined by its values
// on a square cell of side L. Integrals over the cell use the measure
// d^2z exp(-Im(z)^2).

#ifndef THETAPHASE_TORUS_HPP
#define THETAPHASE_TORUS_HPP

#include <utility>
#include <vector>

#include "thetaphase/common.hpp"
#include "thetaphase/finite_system.hpp"
#include "thetaphase/theta.hpp"

namespace thetaphase {

/// Integer labels (M, N) of a torus cell.
struct CellIndex {
  int M = 0;
  int N = 0;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Side length L = sqrt(2 pi d) of the torus cell.
double torus_side(const Dimension& dim);

/// theta3(pi m/d - z sqrt(pi/2d); i/d), the kernel shared by every
/// torus-side formula.
Complex torus_basis(const Dimension& dim, long long m, Complex z, const ThetaConfig<>& cfg = {});
/// Basis value and its z-derivative.
std::pair<Complex, Complex> torus_basis_with_dz(const Dimension& dim, long long m, Complex z,
                                                const ThetaConfig<>& cfg = {});

/// Basis values theta3(pi m/d - z_j sqrt(pi/2d); i/d) as a (points x d) matrix.
CMatrix torus_basis_matrix(const Dimension& dim, const std::vector<Complex>& points,
                           const ThetaConfig<>& cfg = {});

class TorusFunction {
 public:
  explicit TorusFunction(FiniteState state, ThetaConfig<> cfg = {}, CellIndex cell = {});

  const FiniteState& state() const { return state_; }
  const Dimension& dim() const { return state_.dim(); }
  CellIndex cell() const { return cell_; }
  double side() const { return side_; }
  const ThetaConfig<>& theta_config() const { return cfg_; }

  Complex evaluate(Complex z) const;
  Complex operator()(Complex z) const { return evaluate(z); }
  Complex derivative(Complex z) const { return evaluate_with_derivative(z).second; }
  std::pair<Complex, Complex> evaluate_with_derivative(Complex z) const;

 private:
  FiniteState state_;
  ThetaConfig<> cfg_;
  CellIndex cell_;
  double side_;
};

TorusFunction torus_rep(const FiniteState& g, const ThetaConfig<>& cfg = {});

/// Uniform midpoint grid on the cell [0, L)^2.
struct QuadratureSpec {
  int n_real = 96;
  int n_imag = 96;
  void validate() const;
};

/// Nodes z_j and weights w_j (including exp(-Im(z_j)^2)) of the cell rule,
/// so that int_S dmu(z) f(z) ~ sum_j w_j f(z_j).
struct CellRule {
  std::vector<Complex> nodes;
  std::vector<double> weights;
};
CellRule cell_rule(const Dimension& dim, const QuadratureSpec& q);

template <typename F>
Complex integrate_cell(const CellRule& rule, F&& f) {
  Complex acc = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) acc += rule.weights[j] * f(rule.nodes[j]);
  return acc;
}

/// d^{-3/2} (2 pi)^{-1/2} int_S dmu(z) G1(z) G2(z*), which equals
/// <g1*|g2> = sum_m g1_m g2_m. Note the bilinear pairing.
Complex scalar_product_analytic(const TorusFunction& g1, const TorusFunction& g2,
                                const QuadratureSpec& q = {});

enum class CoefficientBasis { position, momentum };

/// Recovers g_m (or g~_m) from G by integrating against the theta kernel.
/// The result is flagged unnormalized; it carries whatever norm G had.
FiniteState coefficients_from_torus(const TorusFunction& g, const QuadratureSpec& q = {},
                                    CoefficientBasis basis = CoefficientBasis::position);

/// 2^{-1/2} pi^{-1} d^{-3/2} int_S dmu theta_n(z) theta_m(z*), which should be
/// the Kronecker delta. Returns the full d x d table.
CMatrix orthogonality_table(const Dimension& dim, const QuadratureSpec& q = {},
                            const ThetaConfig<>& cfg = {});

struct ZeroSet {
  std::vector<Complex> zeros;
  /// Sum of zeros minus L(M + iN) + d^{3/2} sqrt(pi/2) (1 + i).
  Complex sum_residual;
  std::vector<double> newton_residuals;
  /// Lattice integers (M, N) selected by the zero sum.
  CellIndex lattice;
  /// Right-hand side of the zero-sum constraint for `lattice`.
  Complex target;
};

/// d^{3/2} sqrt(pi/2) (1 + i) + L (M + i N).
Complex zero_sum_target(const Dimension& dim, CellIndex lattice);

struct ZeroSearchOptions {
  /// Window origin offset as a fraction of L, applied to both axes.
  double window_offset = 1e-3 * (1.0 + 1.4142135623730951) / 2.0;
  int initial_edge_samples = 64;
  int max_edge_samples = 64 << 10;
  int newton_max_iter = 50;
  double newton_step_tol = 1e-12;  // relative to L
  int max_depth = 40;
  double constraint_tol = 1e-6;
};

/// Locates the d zeros of G in the window [delta, L + delta)^2 by recursive
/// argument-principle subdivision followed by Newton refinement.
/// Throws ZeroCountMismatch or NonconvergedNewton.
ZeroSet find_zeros(const TorusFunction& g, const ZeroSearchOptions& opts = {});

/// Winding number of G along the boundary of [lo, lo + w] x [lo, lo + ih],
/// refined by doubling samples until stable.
int winding_number(const TorusFunction& g, Complex lo, double width, double height,
                   const ZeroSearchOptions& opts = {});

/// The unnormalized product
///   exp(-i sqrt(2 pi/d) N z) prod_n theta3(sqrt(pi/2d)(z - zeta_n) + pi(1+i)/2; i).
Complex zero_product(const std::vector<Complex>& zeros, int cell_n, const Dimension& dim, Complex z,
                     const ThetaConfig<>& cfg = {});

/// Rebuilds the state from its zeros. The constant factor is fixed by
/// normalization and by making the largest-magnitude coefficient real positive.
/// Throws ConstraintViolation when the zero-sum constraint fails by more than
/// `tol` for the given N.
TorusFunction state_from_zeros(const ZeroSet& zs, int cell_n, const Dimension& dim,
                               const QuadratureSpec& q = {}, const ThetaConfig<>& cfg = {},
                               double tol = 1e-6);

/// Same phase convention applied to an arbitrary state.
FiniteState canonical_phase(const FiniteState& g);

/// |<a|b>| for normalized states.
double fidelity(const FiniteState& a, const FiniteState& b);

}  // namespace thetaphase

#endif  // THETAPHASE_TORUS_HPP
