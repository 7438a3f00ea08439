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

// Quantum systems with positions and momenta in Z(d), d odd.
//
// States are amplitude vectors in the position basis |X;m>. Operators are
// dense d x d matrices in the same basis. All Z(d) arithmetic goes through
// Dimension::reduce, and 2^{-1} = (d+1)/2.

#ifndef THETAPHASE_FINITE_SYSTEM_HPP
#define THETAPHASE_FINITE_SYSTEM_HPP

#include <cstdint>

#include "thetaphase/common.hpp"

namespace thetaphase {

class Dimension {
 public:
  /// Throws InvalidArgument unless d is odd and >= 3.
  explicit Dimension(int d);

  int d() const { return d_; }
  /// Inverse of 2 in Z(d).
  int inv2() const { return inv2_; }
  /// Inverse of 4 in Z(d), computed as inv2^2 mod d.
  int inv4() const { return static_cast<int>(reduce(static_cast<long long>(inv2_) * inv2_)); }
  int reduce(long long m) const { return static_cast<int>(mod_floor(m, d_)); }
  /// Representative of m in [-(d-1)/2, (d-1)/2].
  int centered(long long m) const;

  friend bool operator==(const Dimension&, const Dimension&) = default;

 private:
  int d_;
  int inv2_;
};

struct PhaseLabelFinite {
  int alpha = 0;
  int beta = 0;

  PhaseLabelFinite() = default;
  PhaseLabelFinite(const Dimension& dim, long long a, long long b)
      : alpha(dim.reduce(a)), beta(dim.reduce(b)) {}

  friend bool operator==(const PhaseLabelFinite&, const PhaseLabelFinite&) = default;
};

class FiniteState {
 public:
  /// Normalizes g unless normalize is false; throws on a zero vector.
  FiniteState(const Dimension& dim, CVector g, bool normalize = true);

  static FiniteState unnormalized(const Dimension& dim, CVector g) {
    return FiniteState(dim, std::move(g), false);
  }

  const Dimension& dim() const { return dim_; }
  const CVector& amplitudes() const { return g_; }
  /// Amplitude g_m with m taken mod d.
  Complex operator[](long long m) const { return g_(dim_.reduce(m)); }
  bool normalized() const { return normalized_; }
  double norm() const { return g_.norm(); }

 private:
  Dimension dim_;
  CVector g_;
  bool normalized_;
};

class FiniteOperator {
 public:
  FiniteOperator(const Dimension& dim, CMatrix entries);

  const Dimension& dim() const { return dim_; }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(long long row, long long col) const {
    return m_(dim_.reduce(row), dim_.reduce(col));
  }

  /// max |U^dagger U - 1|.
  double unitarity_defect() const;
  bool is_unitary(double tol = 1e-12) const { return unitarity_defect() < tol; }

  FiniteOperator operator*(const FiniteOperator& rhs) const;
  FiniteState apply(const FiniteState& g) const;
  FiniteOperator adjoint() const { return {dim_, m_.adjoint()}; }

 private:
  Dimension dim_;
  CMatrix m_;
};

/// exp(i 2 pi m / d) with m reduced mod d first.
Complex omega(long long m, const Dimension& dim);

/// Z = sum_n omega(n) |X;n><X;n|.
FiniteOperator clock_op(const Dimension& dim);
/// X = sum_n |X;n+1><X;n|.
FiniteOperator shift_op(const Dimension& dim);
/// F_{mn} = d^{-1/2} omega(mn).
FiniteOperator fourier_op(const Dimension& dim);

/// D(alpha, beta) = Z^alpha X^beta omega(-2^{-1} alpha beta).
FiniteOperator displacement(const Dimension& dim, const PhaseLabelFinite& p);
/// F(alpha, beta) = D(alpha, beta) F D(-alpha, -beta).
FiniteOperator displaced_fourier(const Dimension& dim, const PhaseLabelFinite& p);
/// P(alpha, beta) = D(alpha, beta) F^2 D(-alpha, -beta). Hermitian and unitary.
FiniteOperator displaced_parity(const Dimension& dim, const PhaseLabelFinite& p);

/// D(alpha, beta)|g> without materializing the matrix:
/// (D g)_m = omega(-2^{-1} alpha beta + alpha m) g_{m - beta}.
FiniteState displace(const FiniteState& g, const PhaseLabelFinite& p);

/// Momentum-basis coefficients g~_m = d^{-1/2} sum_n omega(-mn) g_n.
FiniteState momentum_coeffs(const FiniteState& g);

FiniteState position_state(const Dimension& dim, long long m);
/// |P;k> = F|X;k>.
FiniteState momentum_state(const Dimension& dim, long long k);
/// Normalized state with i.i.d. standard normal real and imaginary parts.
FiniteState random_state(const Dimension& dim, std::uint64_t seed);

/// max |(1/d) sum_{alpha,beta} D|f><f|D^dagger - 1|.
double displacement_frame_residual(const FiniteState& f);

}  // namespace thetaphase

#endif  // THETAPHASE_FINITE_SYSTEM_HPP
