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

// Coherent states D(alpha, beta)|f> of Z(d) in the torus representation.
//
// A family is fixed by a generic fiducial |f>. Its d^2 members are
// represented by the analytic functions
//
//   Dz(z; alpha, beta) = torus_rep(D(alpha, beta)|f>)(z),
//
// and the parity family Pz(z; alpha, beta) = torus_rep(P(alpha, beta)|f>)(z).
// Label tables are d x d matrices indexed (alpha, beta).

#ifndef THETAPHASE_FINITE_COHERENT_HPP
#define THETAPHASE_FINITE_COHERENT_HPP

#include <cstdint>

#include "thetaphase/finite_system.hpp"
#include "thetaphase/torus.hpp"

namespace thetaphase {

enum class FiducialKind { discrete_gaussian, seeded_random, user };

/// True unless f is (numerically) a position or a momentum basis vector.
bool is_generic(const FiniteState& f);

class FiducialFinite {
 public:
  /// f_m proportional to exp(-pi mbar^2/d), mbar the centered representative.
  static FiducialFinite discrete_gaussian(const Dimension& dim);
  static FiducialFinite seeded_random(const Dimension& dim, std::uint64_t seed);
  /// Normalizes f; throws NonGenericFiducial if f is not generic.
  static FiducialFinite user(const FiniteState& f);

  const FiniteState& state() const { return state_; }
  const Dimension& dim() const { return state_.dim(); }
  FiducialKind kind() const { return kind_; }

 private:
  FiducialFinite(FiniteState f, FiducialKind kind);

  FiniteState state_;
  FiducialKind kind_;
};

class CoherentFamilyFinite {
 public:
  explicit CoherentFamilyFinite(FiducialFinite f, ThetaConfig<> cfg = {});

  const FiducialFinite& fiducial() const { return fiducial_; }
  const Dimension& dim() const { return fiducial_.dim(); }
  const ThetaConfig<>& theta_config() const { return cfg_; }
  int size() const { return dim().d() * dim().d(); }

  FiniteState member(const PhaseLabelFinite& p) const { return displace(fiducial_.state(), p); }
  const TorusFunction& fiducial_rep() const { return rep_; }

 private:
  FiducialFinite fiducial_;
  ThetaConfig<> cfg_;
  TorusFunction rep_;
};

enum class CoherentPath {
  /// torus_rep of the displaced vector.
  displaced_state,
  /// Shifted and rescaled fiducial function.
  shift_form,
};

Complex coherent_eval(const CoherentFamilyFinite& fam, Complex z, const PhaseLabelFinite& p,
                      CoherentPath path = CoherentPath::displaced_state);

/// torus_rep of P(alpha, beta)|f>.
Complex parity_eval(const CoherentFamilyFinite& fam, Complex z, const PhaseLabelFinite& p);

/// |Dz(z; g, e) - (1/d) sum_{a,b} omega(-2^{-1} b g + 2^{-1} a e) Dz(-z; a, b)|.
double coherent_fourier_relation_residual(const CoherentFamilyFinite& fam, Complex z,
                                          const PhaseLabelFinite& p);
/// |Pz(z; g, e) - (1/d) sum_{a,b} omega(b g - a e) Dz(z; a, b)|.
double parity_fourier_residual(const CoherentFamilyFinite& fam, Complex z, const PhaseLabelFinite& p);
/// |Pz(z; a, b) - Dz(-z; -2a, -2b)|.
double parity_reflection_residual(const CoherentFamilyFinite& fam, Complex z,
                                  const PhaseLabelFinite& p);

/// Reproducing kernel K(z, w*) =
///   pi^{-1/2} sum_m theta3(pi m/d - z s; i/d) theta3(pi m/d - w* s; i/d),
/// s = sqrt(pi/2d). Takes w and conjugates it internally.
Complex kernel(const Dimension& dim, Complex z, Complex w, const ThetaConfig<>& cfg = {});

/// Residuals of the symmetry relations one might expect of K.
struct KernelSymmetry {
  /// |K(z, w*) - K(w*, z)|
  double swap;
  /// |K(z, w*) - K(-z, w*)|
  double negate_first;
  /// |K(z, w*) - K(-z, -w*)|
  double negate_both;
};
KernelSymmetry kernel_symmetry(const Dimension& dim, Complex z, Complex w,
                               const ThetaConfig<>& cfg = {});

/// (1/d) sum_{a,b} Dz(z; a, b) [Dz(w; a, b)]^*.
Complex coherent_kernel_sum(const CoherentFamilyFinite& fam, Complex z, Complex w);

/// d^{-3/2} (2 pi)^{-1/2} int_S dmu(w) K(z, w*) G(w).
Complex reproduce(const TorusFunction& g, Complex z, const QuadratureSpec& q = {});

/// g(a, b; f) = <f|D(-a, -b)|g>, as a d x d table.
CMatrix coherent_coeffs(const FiniteState& g, const FiducialFinite& f);
/// g~(c, e; f) = <f|P(-2^{-1} c, -2^{-1} e)|g>.
CMatrix parity_coeffs(const FiniteState& g, const FiducialFinite& f);
/// (1/d) sum_{a,b} g(a, b; f) omega(2^{-1} b c - 2^{-1} a e).
CMatrix parity_coeffs_from_coherent(const Dimension& dim, const CMatrix& coeffs);

/// (1/d) sum_{a,b} Dz(z; a, b) c(a, b).
Complex coherent_synthesis(const CoherentFamilyFinite& fam, const CMatrix& coeffs, Complex z);
/// (1/d) sum_{c,e} Dz(-z; c, e) c~(c, e).
Complex parity_synthesis(const CoherentFamilyFinite& fam, const CMatrix& coeffs, Complex z);

/// Coefficient tables recovered from G by cell quadrature against the
/// conjugated coherent functions at w (coherent) or -w (parity).
CMatrix coherent_coeffs_by_quadrature(const CoherentFamilyFinite& fam, const TorusFunction& g,
                                      const QuadratureSpec& q = {});
CMatrix parity_coeffs_by_quadrature(const CoherentFamilyFinite& fam, const TorusFunction& g,
                                    const QuadratureSpec& q = {});

enum class MarginalKind { alpha_sum, beta_sum };

struct Marginal {
  Complex sum;
  Complex expected;
  double residual() const { return std::abs(sum - expected); }
};

/// alpha_sum: (1/d) sum_a Dz(z; a, 2 label) against pi^{-1/4} f_{-label} theta_label(z).
/// beta_sum:  (1/d) sum_b Dz(z; 2 label, b) against
///            pi^{-1/4} f~_{-label} exp(-z^2/2) theta3(pi label/d - i z s; i/d).
Marginal marginals(const CoherentFamilyFinite& fam, Complex z, int label, MarginalKind which);

/// torus_rep of F(alpha, beta)|f>.
Complex fourier_fiducial_eval(const CoherentFamilyFinite& fam, Complex z, const PhaseLabelFinite& p);
/// |Fz(z; -2^{-1}(a - b), -2^{-1}(a + b)) - omega(4^{-1}(a^2 + b^2)) exp(-z^2/2) Dz(iz; a, b)|.
double fourier_fiducial_residual(const CoherentFamilyFinite& fam, Complex z, const PhaseLabelFinite& p);

/// Largest deviation over all label pairs between <f|D(-c,-e) D(a,b)|f> by
/// matrix products and by the single-sum overlap formula.
double coherent_overlap_residual(const FiniteState& f);

}  // namespace thetaphase

#endif  // THETAPHASE_FINITE_COHERENT_HPP
