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

// Weyl and Wigner functions.
//
// Finite:  weyl(a, b) = <g|D(a, b)|g>,  wigner(a, b) = <g|P(a, b)|g>.
// Circle:  weyl(a, K) = <q|D(a, K)|q>,  wigner(a, K) = <q|U(a, K)|q>.
//
// The plain functions contract operators against the state directly. The
// *_from_coherent / *_from_coeffs variants go through coherent-state
// coefficients and serve as independent cross-checks.

#ifndef THETAPHASE_PHASE_SPACE_HPP
#define THETAPHASE_PHASE_SPACE_HPP

#include "thetaphase/finite_coherent.hpp"
#include "thetaphase/strip_analytic.hpp"

namespace thetaphase {

struct WeylTableFinite {
  Dimension dim;
  CMatrix values;

  Complex operator()(long long a, long long b) const { return values(dim.reduce(a), dim.reduce(b)); }
};

struct WignerTableFinite {
  Dimension dim;
  CMatrix values;

  Complex operator()(long long a, long long b) const { return values(dim.reduce(a), dim.reduce(b)); }
  double max_imag() const { return values.imag().cwiseAbs().maxCoeff(); }
};

WeylTableFinite weyl_finite(const FiniteState& g);
WignerTableFinite wigner_finite(const FiniteState& g);

/// W(c, e) = (1/d) sum_{a,b} omega(b c - a e) weyl(a, b).
WignerTableFinite wigner_from_weyl(const WeylTableFinite& weyl);

/// (1/d) sum_{c,e} [g(c, e; f)]^* g(c - a, e - b; f) omega[2^{-1}(a e - b c)].
WeylTableFinite weyl_finite_from_coherent(const FiniteState& g, const FiducialFinite& f);
/// Same sum with the conjugate on the other factor, compared against the
/// direct table; nonzero for generic states.
double weyl_finite_unconjugated_residual(const FiniteState& g, const FiducialFinite& f);

/// (1/d^2) sum g(e, z; f) [g(c, h; f)]^* omega(a h - b c + 2^{-1} z c - z a - 2^{-1} e h + e b).
WignerTableFinite wigner_finite_from_coherent(const FiniteState& g, const FiducialFinite& f);

Complex weyl_circle(const CircleState& q, const PhaseLabelCircle& p);
Complex wigner_circle(const CircleState& q, const PhaseLabelCircle& p);

/// |W(a, M) - (1/2pi) sum_{|K|<=k_max} int db weyl(b, M + 2K) exp[i(bM - aM - 2Ka)/2]|.
double wigner_weyl_link_residual_circle(const CircleState& q, const PhaseLabelCircle& p, int k_max, int n_b);

/// (1/2pi) sum_{|M|<=k_max} int db [q(b, M; r)]^* q(b - a, M - K; r) exp[i(Kb - aM)/2].
Complex weyl_circle_from_coeffs(const CircleState& q, const FiducialCircle& r, const PhaseLabelCircle& p,
                                int k_max, int n_b);

/// (1/4pi^2) sum_{|M|,|N|<=k_max} int db dg [q(b, M; r)]^* q(-g, M - K - 2N; r)
///   exp[i(gK - gM - aK - 2aN + 2bK - bM + 2bN)/2].
Complex wigner_circle_from_coeffs(const CircleState& q, const FiducialCircle& r, const PhaseLabelCircle& p,
                                  int k_max, int n_b, int n_gamma);

/// Values on a_j = 2pi j / n_a, |K| <= k_max.
class PhaseMapCircle {
 public:
  PhaseMapCircle(int n_a, int k_max, CMatrix values);

  int n_a() const { return n_a_; }
  int k_max() const { return k_max_; }
  double a(int j) const { return 2.0 * kPi * j / n_a_; }
  const CMatrix& values() const { return values_; }

  /// Value at a_j for any integer j; a full turn costs (-1)^K.
  Complex at(long long j, int K) const;

 private:
  int n_a_;
  int k_max_;
  CMatrix values_;
};

PhaseMapCircle weyl_map_circle(const CircleState& q, int n_a, int k_max);
PhaseMapCircle wigner_map_circle(const CircleState& q, int n_a, int k_max);

}  // namespace thetaphase

#endif  // THETAPHASE_PHASE_SPACE_HPP
