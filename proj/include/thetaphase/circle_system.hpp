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

// A particle on a circle, in the momentum basis |N>.
//
// States keep the coefficients q_N for |N| <= n_max; everything outside is
// zero. The wavefunction is q(x) = sum_N q_N exp(iNx), normalized so that
// (1/2pi) int |q|^2 dx = sum |q_N|^2 = 1.
//
//   D(a, K)|N> = exp(-ia(N + K/2)) |N + K>,   U0|N> = |-N>,   U(a, K) = D(a, K) U0.

#ifndef THETAPHASE_CIRCLE_SYSTEM_HPP
#define THETAPHASE_CIRCLE_SYSTEM_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "thetaphase/common.hpp"

namespace thetaphase {

class CircleState {
 public:
  /// q holds 2 n_max + 1 coefficients for N = -n_max, ..., n_max.
  CircleState(int n_max, CVector q, bool normalize = true);

  static CircleState unnormalized(int n_max, CVector q) {
    return CircleState(n_max, std::move(q), false);
  }
  /// Momentum eigenstate |N>.
  static CircleState momentum(int n_max, int N);

  int n_max() const { return n_max_; }
  int size() const { return 2 * n_max_ + 1; }
  const CVector& coeffs() const { return q_; }
  /// q_N, zero outside the stored range.
  Complex operator[](long long N) const {
    return (N < -n_max_ || N > n_max_) ? Complex(0.0) : q_(static_cast<Eigen::Index>(N + n_max_));
  }
  bool normalized(double tol = 1e-12) const { return std::abs(norm() - 1.0) < tol; }
  double norm() const { return q_.norm(); }

  /// |q_{-n_max}|^2 + |q_{n_max}|^2.
  double edge_mass() const;
  bool truncation_faithful(double tail_tol = 1e-12) const { return edge_mass() < tail_tol; }

  /// Same coefficients on a larger or smaller range; dropped mass is lost.
  CircleState resized(int n_max) const;

  /// q(x) = sum_N q_N exp(iNx).
  Complex wavefunction(double x) const;

 private:
  int n_max_;
  CVector q_;
};

CircleState random_circle_state(int n_max, std::uint64_t seed);

/// <a|b> = sum conj(a_N) b_N over the union of the ranges.
Complex inner(const CircleState& a, const CircleState& b);

/// Phase-space label (a, K). a is stored reduced to [0, 4pi), which leaves
/// D(a, K) unchanged; reduction by 2pi costs a factor (-1)^K.
struct PhaseLabelCircle {
  double a = 0.0;
  int K = 0;

  PhaseLabelCircle() = default;
  PhaseLabelCircle(double a_in, int K_in);

  /// Label with a reduced to [0, 2pi) and the sign picked up on the way.
  std::pair<PhaseLabelCircle, int> reduced_2pi() const;
};

/// A state together with the norm dropped by truncation.
struct TruncatedState {
  CircleState state;
  double lost_norm = 0.0;
};

/// D(a, K)|q>. out_n_max < 0 keeps q's range; pass q.n_max() + |K| for an
/// exact result.
TruncatedState circle_displace(const CircleState& q, const PhaseLabelCircle& p, int out_n_max = -1);
/// U0|q>.
CircleState circle_parity(const CircleState& q);
/// U(a, K)|q> = D(a, K) U0 |q>.
TruncatedState displaced_parity_circle(const CircleState& q, const PhaseLabelCircle& p,
                                       int out_n_max = -1);

/// Matrices on the truncated lattice |N| <= n_max.
CMatrix circle_displacement_matrix(int n_max, const PhaseLabelCircle& p);
CMatrix circle_parity_matrix(int n_max);
CMatrix displaced_parity_matrix(int n_max, const PhaseLabelCircle& p);

enum class FiducialCircleKind { gaussian_momenta, seeded_random, user };

/// 1 / sum p_N^2 with p_N = |q_N|^2 / sum |q|^2.
double participation_ratio(const CircleState& q);

class FiducialCircle {
 public:
  /// r_N proportional to exp(-N^2/2).
  static FiducialCircle gaussian_momenta(int n_max = 16);
  static FiducialCircle seeded_random(int n_max, std::uint64_t seed);
  /// Throws NonGenericFiducial when the participation ratio is <= 1.5.
  static FiducialCircle user(const CircleState& r);

  const CircleState& state() const { return state_; }
  int n_max() const { return state_.n_max(); }
  FiducialCircleKind kind() const { return kind_; }

 private:
  FiducialCircle(CircleState r, FiducialCircleKind kind);

  CircleState state_;
  FiducialCircleKind kind_;
};

/// |a, K> = D(a, K)|r>, on the exact range n_max(r) + |K|.
CircleState coherent_state_circle(const FiducialCircle& r, const PhaseLabelCircle& p);

/// <b, M|a, K> from coefficients, p1 = (a, K), p2 = (b, M).
Complex coherent_overlap_circle(const FiducialCircle& r, const PhaseLabelCircle& p1,
                                const PhaseLabelCircle& p2);
/// Same overlap from the position-space integral
///   (1/2pi) int r(x) r*(x + a - b) exp[i(K - M)x + i(Ka/2 + Mb/2 - Ma)] dx
/// by the trapezoid rule on n_x points (0 picks an exact size).
Complex coherent_overlap_circle_integral(const FiducialCircle& r, const PhaseLabelCircle& p1,
                                         const PhaseLabelCircle& p2, int n_x = 0);

/// max over |M|, |N| <= n_max(r) of
///   |(1/2pi) sum_{|K|<=k_max} int da <M|a,K><a,K|N> - delta_MN|
/// with an n_a-point a-grid.
double resolution_identity_circle(const FiducialCircle& r, int k_max, int n_a);
/// Stride form: (tau/2pi) sum_K int da |a, tau K + sigma><a, tau K + sigma|.
double resolution_identity_circle_stride(const FiducialCircle& r, int tau, int sigma, int k_max, int n_a);
/// Rescales each residue class N = sigma mod tau to carry mass 1/tau.
CircleState balance_stride(const CircleState& r, int tau);

/// max |<M|U0|N> - (1/2pi) sum_{|K|<=k_max} int da <M|D(a, 2K)|N>| over |M|, |N| <= n_max.
double parity_average_residual(int n_max, int k_max, int n_a);
/// max |<M|U(a,K)|N> - (1/2pi) sum_M' int db <M|D(b, K+2M')|N> exp[i(Kb - aK - 2M'a)/2]|.
double parity_fourier_residual_circle(int n_max, const PhaseLabelCircle& p, int k_max, int n_b);

/// Uniform grid of n points on [0, 2pi).
std::vector<double> circle_grid(int n);

}  // namespace thetaphase

#endif  // THETAPHASE_CIRCLE_SYSTEM_HPP
