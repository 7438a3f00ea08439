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

#include "thetaphase/circle_system.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace thetaphase {

namespace {

constexpr double kMinParticipation = 1.5;

Eigen::Index slot(int n_max, long long N) { return static_cast<Eigen::Index>(N + n_max); }

}  // namespace

CircleState::CircleState(int n_max, CVector q, bool normalize) : n_max_(n_max), q_(std::move(q)) {
  if (n_max < 0) throw InvalidArgument("CircleState: n_max must be >= 0");
  if (q_.size() != 2 * n_max + 1) {
    throw DimensionMismatch("CircleState: expected " + std::to_string(2 * n_max + 1) +
                            " coefficients, got " + std::to_string(q_.size()));
  }
  if (normalize) {
    const double n = q_.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw InvalidArgument("CircleState: cannot normalize a zero or non-finite vector");
    }
    q_ /= n;
  }
}

CircleState CircleState::momentum(int n_max, int N) {
  if (std::abs(N) > n_max) throw InvalidArgument("CircleState::momentum: |N| exceeds n_max");
  CVector q = CVector::Zero(2 * n_max + 1);
  q(slot(n_max, N)) = 1.0;
  return {n_max, std::move(q)};
}

double CircleState::edge_mass() const {
  if (n_max_ == 0) return std::norm(q_(0));
  return std::norm(q_(0)) + std::norm(q_(q_.size() - 1));
}

CircleState CircleState::resized(int n_max) const {
  CVector q = CVector::Zero(2 * n_max + 1);
  for (int N = -std::min(n_max, n_max_); N <= std::min(n_max, n_max_); ++N) q(slot(n_max, N)) = (*this)[N];
  return {n_max, std::move(q), false};
}

Complex CircleState::wavefunction(double x) const {
  Complex acc = 0.0;
  for (int N = -n_max_; N <= n_max_; ++N) acc += q_(slot(n_max_, N)) * std::polar(1.0, N * x);
  return acc;
}

CircleState random_circle_state(int n_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CVector q(2 * n_max + 1);
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    q(k) = Complex(re, im);
  }
  return {n_max, std::move(q)};
}

Complex inner(const CircleState& a, const CircleState& b) {
  const int n = std::min(a.n_max(), b.n_max());
  Complex acc = 0.0;
  for (int N = -n; N <= n; ++N) acc += std::conj(a[N]) * b[N];
  return acc;
}

PhaseLabelCircle::PhaseLabelCircle(double a_in, int K_in) : a(std::fmod(a_in, 4.0 * kPi)), K(K_in) {
  if (a < 0.0) a += 4.0 * kPi;
  if (a >= 4.0 * kPi) a -= 4.0 * kPi;
}

std::pair<PhaseLabelCircle, int> PhaseLabelCircle::reduced_2pi() const {
  if (a < 2.0 * kPi) return {*this, 1};
  PhaseLabelCircle out;
  out.a = a - 2.0 * kPi;
  out.K = K;
  return {out, (K % 2 == 0) ? 1 : -1};
}

TruncatedState circle_displace(const CircleState& q, const PhaseLabelCircle& p, int out_n_max) {
  const int n_out = out_n_max < 0 ? q.n_max() : out_n_max;
  CVector out = CVector::Zero(2 * n_out + 1);
  double lost = 0.0;
  for (int N = -q.n_max(); N <= q.n_max(); ++N) {
    const long long M = static_cast<long long>(N) + p.K;
    if (M < -n_out || M > n_out) {
      lost += std::norm(q[N]);
      continue;
    }
    out(slot(n_out, M)) = q[N] * std::polar(1.0, -p.a * (N + 0.5 * p.K));
  }
  return {CircleState::unnormalized(n_out, std::move(out)), std::sqrt(lost)};
}

CircleState circle_parity(const CircleState& q) {
  return CircleState::unnormalized(q.n_max(), q.coeffs().reverse());
}

TruncatedState displaced_parity_circle(const CircleState& q, const PhaseLabelCircle& p, int out_n_max) {
  return circle_displace(circle_parity(q), p, out_n_max);
}

CMatrix circle_displacement_matrix(int n_max, const PhaseLabelCircle& p) {
  const int size = 2 * n_max + 1;
  CMatrix m = CMatrix::Zero(size, size);
  for (int N = -n_max; N <= n_max; ++N) {
    const int M = N + p.K;
    if (M < -n_max || M > n_max) continue;
    m(slot(n_max, M), slot(n_max, N)) = std::polar(1.0, -p.a * (N + 0.5 * p.K));
  }
  return m;
}

CMatrix circle_parity_matrix(int n_max) {
  const int size = 2 * n_max + 1;
  CMatrix m = CMatrix::Zero(size, size);
  for (int N = -n_max; N <= n_max; ++N) m(slot(n_max, -N), slot(n_max, N)) = 1.0;
  return m;
}

CMatrix displaced_parity_matrix(int n_max, const PhaseLabelCircle& p) {
  const int size = 2 * n_max + 1;
  CMatrix m = CMatrix::Zero(size, size);
  for (int N = -n_max; N <= n_max; ++N) {
    const int M = p.K - N;
    if (M < -n_max || M > n_max) continue;
    m(slot(n_max, M), slot(n_max, N)) = std::polar(1.0, -p.a * (-N + 0.5 * p.K));
  }
  return m;
}

double participation_ratio(const CircleState& q) {
  const Eigen::VectorXd p = q.coeffs().cwiseAbs2() / q.coeffs().squaredNorm();
  return 1.0 / p.squaredNorm();
}

FiducialCircle::FiducialCircle(CircleState r, FiducialCircleKind kind) : state_(std::move(r)), kind_(kind) {
  if (!(participation_ratio(state_) > kMinParticipation)) {
    throw NonGenericFiducial("circle fiducial is too close to a single momentum state");
  }
}

FiducialCircle FiducialCircle::gaussian_momenta(int n_max) {
  CVector r(2 * n_max + 1);
  for (int N = -n_max; N <= n_max; ++N) r(slot(n_max, N)) = std::exp(-0.5 * N * N);
  return {CircleState(n_max, std::move(r)), FiducialCircleKind::gaussian_momenta};
}

FiducialCircle FiducialCircle::seeded_random(int n_max, std::uint64_t seed) {
  return {random_circle_state(n_max, seed), FiducialCircleKind::seeded_random};
}

FiducialCircle FiducialCircle::user(const CircleState& r) {
  return {CircleState(r.n_max(), r.coeffs()), FiducialCircleKind::user};
}

CircleState coherent_state_circle(const FiducialCircle& r, const PhaseLabelCircle& p) {
  return circle_displace(r.state(), p, r.n_max() + std::abs(p.K)).state;
}

Complex coherent_overlap_circle(const FiducialCircle& r, const PhaseLabelCircle& p1,
                                const PhaseLabelCircle& p2) {
  return inner(coherent_state_circle(r, p2), coherent_state_circle(r, p1));
}

Complex coherent_overlap_circle_integral(const FiducialCircle& r, const PhaseLabelCircle& p1,
                                         const PhaseLabelCircle& p2, int n_x) {
  const double a = p1.a;
  const double b = p2.a;
  const int K = p1.K;
  const int M = p2.K;
  if (n_x <= 0) n_x = 4 * r.n_max() + 2 * std::abs(K - M) + 8;
  const Complex phase = std::polar(1.0, K * a / 2.0 + M * b / 2.0 - M * a);
  Complex acc = 0.0;
  for (double x : circle_grid(n_x)) {
    acc += r.state().wavefunction(x) * std::conj(r.state().wavefunction(x + a - b)) *
           std::polar(1.0, (K - M) * x);
  }
  return phase * acc / static_cast<double>(n_x);
}

namespace {

// (scale/2pi) sum_{K in ks} int da |a,K><a,K| restricted to |N| <= n.
CMatrix coherent_projector_sum(const FiducialCircle& r, const std::vector<int>& ks, int n_a, double scale) {
  const int n = r.n_max();
  const int size = 2 * n + 1;
  CMatrix sum = CMatrix::Zero(size, size);
  const double h = 2.0 * kPi / n_a;
  for (int K : ks) {
    for (double a : circle_grid(n_a)) {
      const CircleState v = coherent_state_circle(r, PhaseLabelCircle(a, K));
      CVector w(size);
      for (int N = -n; N <= n; ++N) w(slot(n, N)) = v[N];
      sum += w * w.adjoint() * h;
    }
  }
  return sum * (scale / (2.0 * kPi));
}

}  // namespace

double resolution_identity_circle(const FiducialCircle& r, int k_max, int n_a) {
  if (k_max < r.n_max()) throw InvalidArgument("resolution_identity_circle: k_max below n_max");
  std::vector<int> ks;
  for (int K = -k_max; K <= k_max; ++K) ks.push_back(K);
  const CMatrix sum = coherent_projector_sum(r, ks, n_a, 1.0);
  return max_abs_diff(sum, CMatrix::Identity(sum.rows(), sum.cols()));
}

double resolution_identity_circle_stride(const FiducialCircle& r, int tau, int sigma, int k_max, int n_a) {
  if (tau < 1 || sigma < 0 || sigma >= tau) throw InvalidArgument("stride: need tau >= 1, 0 <= sigma < tau");
  std::vector<int> ks;
  for (int K = -k_max; K <= k_max; ++K) {
    if (((K - sigma) % tau + tau) % tau == 0) ks.push_back(K);
  }
  const CMatrix sum = coherent_projector_sum(r, ks, n_a, static_cast<double>(tau));
  return max_abs_diff(sum, CMatrix::Identity(sum.rows(), sum.cols()));
}

CircleState balance_stride(const CircleState& r, int tau) {
  if (tau < 1) throw InvalidArgument("balance_stride: tau must be >= 1");
  CVector q = r.coeffs();
  for (int sigma = 0; sigma < tau; ++sigma) {
    double mass = 0.0;
    for (int N = -r.n_max(); N <= r.n_max(); ++N) {
      if (((N - sigma) % tau + tau) % tau == 0) mass += std::norm(r[N]);
    }
    if (!(mass > 0.0)) throw InvalidArgument("balance_stride: empty residue class");
    const double scale = 1.0 / std::sqrt(tau * mass);
    for (int N = -r.n_max(); N <= r.n_max(); ++N) {
      if (((N - sigma) % tau + tau) % tau == 0) q(slot(r.n_max(), N)) *= scale;
    }
  }
  return CircleState::unnormalized(r.n_max(), std::move(q));
}

double parity_average_residual(int n_max, int k_max, int n_a) {
  const int size = 2 * n_max + 1;
  CMatrix sum = CMatrix::Zero(size, size);
  for (int K = -k_max; K <= k_max; ++K) {
    for (double a : circle_grid(n_a)) sum += circle_displacement_matrix(n_max, PhaseLabelCircle(a, 2 * K));
  }
  sum /= static_cast<double>(n_a);
  return max_abs_diff(sum, circle_parity_matrix(n_max));
}

double parity_fourier_residual_circle(int n_max, const PhaseLabelCircle& p, int k_max, int n_b) {
  const int size = 2 * n_max + 1;
  CMatrix sum = CMatrix::Zero(size, size);
  const double a = p.a;
  const int K = p.K;
  for (int M = -k_max; M <= k_max; ++M) {
    for (double b : circle_grid(n_b)) {
      sum += circle_displacement_matrix(n_max, PhaseLabelCircle(b, K + 2 * M)) *
             std::polar(1.0, 0.5 * (K * b - a * K - 2.0 * M * a));
    }
  }
  sum /= static_cast<double>(n_b);
  return max_abs_diff(sum, displaced_parity_matrix(n_max, p));
}

std::vector<double> circle_grid(int n) {
  if (n < 1) throw InvalidArgument("circle_grid: need at least one point");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = 2.0 * kPi * k / n;
  return g;
}

}  // namespace thetaphase
