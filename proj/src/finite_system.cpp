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

#include "thetaphase/finite_system.hpp"

#include <cmath>
#include <random>
#include <string>

namespace thetaphase {

Dimension::Dimension(int d) : d_(d), inv2_((d + 1) / 2) {
  if (d < 3 || d % 2 == 0) {
    throw InvalidArgument("Dimension: d must be odd and >= 3 (got " + std::to_string(d) +
                          "); even d has no inverse of 2 in Z(d)");
  }
}

int Dimension::centered(long long m) const {
  const int r = reduce(m);
  return r > (d_ - 1) / 2 ? r - d_ : r;
}

FiniteState::FiniteState(const Dimension& dim, CVector g, bool normalize)
    : dim_(dim), g_(std::move(g)), normalized_(normalize) {
  if (g_.size() != dim_.d()) {
    throw DimensionMismatch("FiniteState: expected " + std::to_string(dim_.d()) +
                            " amplitudes, got " + std::to_string(g_.size()));
  }
  if (normalize) {
    const double n = g_.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw InvalidArgument("FiniteState: cannot normalize a zero or non-finite vector");
    }
    g_ /= n;
  }
}

FiniteOperator::FiniteOperator(const Dimension& dim, CMatrix entries)
    : dim_(dim), m_(std::move(entries)) {
  if (m_.rows() != dim_.d() || m_.cols() != dim_.d()) {
    throw DimensionMismatch("FiniteOperator: matrix is not d x d");
  }
}

double FiniteOperator::unitarity_defect() const {
  return max_abs_diff(m_.adjoint() * m_, CMatrix::Identity(dim_.d(), dim_.d()));
}

FiniteOperator FiniteOperator::operator*(const FiniteOperator& rhs) const {
  if (!(dim_ == rhs.dim_)) throw DimensionMismatch("FiniteOperator product: dimension mismatch");
  return {dim_, m_ * rhs.m_};
}

FiniteState FiniteOperator::apply(const FiniteState& g) const {
  if (!(dim_ == g.dim())) throw DimensionMismatch("FiniteOperator::apply: dimension mismatch");
  return FiniteState(dim_, m_ * g.amplitudes(), false);
}

Complex omega(long long m, const Dimension& dim) {
  const double phase = 2.0 * kPi * static_cast<double>(dim.reduce(m)) / dim.d();
  return std::polar(1.0, phase);
}

FiniteOperator clock_op(const Dimension& dim) {
  CMatrix z = CMatrix::Zero(dim.d(), dim.d());
  for (int n = 0; n < dim.d(); ++n) z(n, n) = omega(n, dim);
  return {dim, z};
}

FiniteOperator shift_op(const Dimension& dim) {
  CMatrix x = CMatrix::Zero(dim.d(), dim.d());
  for (int n = 0; n < dim.d(); ++n) x(dim.reduce(n + 1), n) = 1.0;
  return {dim, x};
}

FiniteOperator fourier_op(const Dimension& dim) {
  const int d = dim.d();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  CMatrix f(d, d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) f(m, n) = scale * omega(static_cast<long long>(m) * n, dim);
  }
  return {dim, f};
}

FiniteOperator displacement(const Dimension& dim, const PhaseLabelFinite& p) {
  // <X;m| D(alpha,beta) |X;n> = omega(-2^{-1} alpha beta + alpha m) delta(m, n + beta)
  const int d = dim.d();
  const long long ab = static_cast<long long>(p.alpha) * p.beta;
  CMatrix out = CMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    const int m = dim.reduce(n + p.beta);
    out(m, n) = omega(-static_cast<long long>(dim.inv2()) * ab + static_cast<long long>(p.alpha) * m,
                      dim);
  }
  return {dim, out};
}

FiniteOperator displaced_fourier(const Dimension& dim, const PhaseLabelFinite& p) {
  const PhaseLabelFinite minus(dim, -p.alpha, -p.beta);
  return displacement(dim, p) * fourier_op(dim) * displacement(dim, minus);
}

FiniteOperator displaced_parity(const Dimension& dim, const PhaseLabelFinite& p) {
  // F^2 |X;n> = |X;-n>
  const int d = dim.d();
  CMatrix parity = CMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) parity(dim.reduce(-n), n) = 1.0;
  const PhaseLabelFinite minus(dim, -p.alpha, -p.beta);
  return displacement(dim, p) * FiniteOperator(dim, parity) * displacement(dim, minus);
}

FiniteState displace(const FiniteState& g, const PhaseLabelFinite& p) {
  const Dimension& dim = g.dim();
  const long long ab = static_cast<long long>(p.alpha) * p.beta;
  CVector out(dim.d());
  for (int m = 0; m < dim.d(); ++m) {
    out(m) = omega(-static_cast<long long>(dim.inv2()) * ab + static_cast<long long>(p.alpha) * m,
                   dim) *
             g[m - p.beta];
  }
  return FiniteState(dim, std::move(out), false);
}

FiniteState momentum_coeffs(const FiniteState& g) {
  return FiniteState(g.dim(), fourier_op(g.dim()).matrix().adjoint() * g.amplitudes(), false);
}

FiniteState position_state(const Dimension& dim, long long m) {
  CVector g = CVector::Zero(dim.d());
  g(dim.reduce(m)) = 1.0;
  return FiniteState(dim, std::move(g));
}

FiniteState momentum_state(const Dimension& dim, long long k) {
  return FiniteState(dim, fourier_op(dim).matrix().col(dim.reduce(k)));
}

FiniteState random_state(const Dimension& dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CVector g(dim.d());
  for (int m = 0; m < dim.d(); ++m) {
    const double re = normal(rng);
    const double im = normal(rng);
    g(m) = Complex(re, im);
  }
  return FiniteState(dim, std::move(g));
}

double displacement_frame_residual(const FiniteState& f) {
  const Dimension& dim = f.dim();
  const int d = dim.d();
  CMatrix sum = CMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const CVector v = displace(f, PhaseLabelFinite(dim, a, b)).amplitudes();
      sum += v * v.adjoint();
    }
  }
  sum /= static_cast<double>(d);
  return max_abs_diff(sum, CMatrix::Identity(d, d));
}

}  // namespace thetaphase
