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

#include "thetaphase/phase_space.hpp"

#include <cmath>

namespace thetaphase {

namespace {

CMatrix sandwich_table(const FiniteState& g, FiniteOperator (*op)(const Dimension&, const PhaseLabelFinite&)) {
  const Dimension& dim = g.dim();
  const int d = dim.d();
  CMatrix t(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      t(a, b) = g.amplitudes().dot(op(dim, PhaseLabelFinite(dim, a, b)).matrix() * g.amplitudes());
    }
  }
  return t;
}

// (1/d) sum_{c,e} x(c, e) y(c - a, e - b) omega[2^{-1}(a e - b c)] for each (a, b).
CMatrix weyl_contraction(const Dimension& dim, const CMatrix& x, const CMatrix& y) {
  const int d = dim.d();
  const long long h = dim.inv2();
  CMatrix t = CMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Complex acc = 0.0;
      for (int c = 0; c < d; ++c) {
        for (int e = 0; e < d; ++e) {
          acc += x(c, e) * y(dim.reduce(c - a), dim.reduce(e - b)) * omega(h * (a * e - b * c), dim);
        }
      }
      t(a, b) = acc / static_cast<double>(d);
    }
  }
  return t;
}

CircleState exact_apply(const CircleState& q, const PhaseLabelCircle& p, bool parity) {
  const int out = q.n_max() + std::abs(p.K);
  return parity ? displaced_parity_circle(q, p, out).state : circle_displace(q, p, out).state;
}

}  // namespace

WeylTableFinite weyl_finite(const FiniteState& g) { return {g.dim(), sandwich_table(g, &displacement)}; }

WignerTableFinite wigner_finite(const FiniteState& g) { return {g.dim(), sandwich_table(g, &displaced_parity)}; }

WignerTableFinite wigner_from_weyl(const WeylTableFinite& weyl) {
  const Dimension& dim = weyl.dim;
  const int d = dim.d();
  CMatrix t = CMatrix::Zero(d, d);
  for (int c = 0; c < d; ++c) {
    for (int e = 0; e < d; ++e) {
      Complex acc = 0.0;
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) acc += omega(b * c - a * e, dim) * weyl.values(a, b);
      }
      t(c, e) = acc / static_cast<double>(d);
    }
  }
  return {dim, t};
}

WeylTableFinite weyl_finite_from_coherent(const FiniteState& g, const FiducialFinite& f) {
  if (!(g.dim() == f.dim())) throw DimensionMismatch("weyl_finite_from_coherent: dimensions differ");
  const CMatrix c = coherent_coeffs(g, f);
  return {g.dim(), weyl_contraction(g.dim(), c.conjugate(), c)};
}

double weyl_finite_unconjugated_residual(const FiniteState& g, const FiducialFinite& f) {
  if (!(g.dim() == f.dim())) throw DimensionMismatch("weyl_finite_unconjugated_residual: dimensions differ");
  const CMatrix c = coherent_coeffs(g, f);
  return max_abs_diff(weyl_contraction(g.dim(), c, c.conjugate()), weyl_finite(g).values);
}

WignerTableFinite wigner_finite_from_coherent(const FiniteState& g, const FiducialFinite& f) {
  const Dimension& dim = g.dim();
  if (!(dim == f.dim())) throw DimensionMismatch("wigner_finite_from_coherent: dimensions differ");
  const int d = dim.d();
  const long long h = dim.inv2();
  const CMatrix c = coherent_coeffs(g, f);
  CMatrix t = CMatrix::Zero(d, d);
  for (long long a = 0; a < d; ++a) {
    for (long long b = 0; b < d; ++b) {
      Complex acc = 0.0;
      for (long long gm = 0; gm < d; ++gm) {
        for (long long dl = 0; dl < d; ++dl) {
          const Complex left = std::conj(c(gm, dl));
          for (long long ep = 0; ep < d; ++ep) {
            for (long long ze = 0; ze < d; ++ze) {
              const long long phase = a * dl - b * gm + h * ze * gm - ze * a - h * ep * dl + ep * b;
              acc += c(ep, ze) * left * omega(phase, dim);
            }
          }
        }
      }
      t(a, b) = acc / static_cast<double>(d * d);
    }
  }
  return {dim, t};
}

Complex weyl_circle(const CircleState& q, const PhaseLabelCircle& p) { return inner(q, exact_apply(q, p, false)); }

Complex wigner_circle(const CircleState& q, const PhaseLabelCircle& p) { return inner(q, exact_apply(q, p, true)); }

double wigner_weyl_link_residual_circle(const CircleState& q, const PhaseLabelCircle& p, int k_max, int n_b) {
  const double a = p.a;
  const int M = p.K;
  Complex acc = 0.0;
  for (int K = -k_max; K <= k_max; ++K) {
    for (double b : circle_grid(n_b)) {
      acc += weyl_circle(q, PhaseLabelCircle(b, M + 2 * K)) * std::exp(0.5 * kI * (b * M - a * M - 2.0 * K * a));
    }
  }
  acc /= static_cast<double>(n_b);
  return std::abs(wigner_circle(q, p) - acc);
}

Complex weyl_circle_from_coeffs(const CircleState& q, const FiducialCircle& r, const PhaseLabelCircle& p,
                                int k_max, int n_b) {
  const double a = p.a;
  const int K = p.K;
  Complex acc = 0.0;
  for (int M = -k_max; M <= k_max; ++M) {
    for (double b : circle_grid(n_b)) {
      acc += std::conj(circle_coherent_coeff(q, r, PhaseLabelCircle(b, M))) *
             circle_coherent_coeff(q, r, PhaseLabelCircle(b - a, M - K)) * std::exp(0.5 * kI * (K * b - a * M));
    }
  }
  return acc / static_cast<double>(n_b);
}

Complex wigner_circle_from_coeffs(const CircleState& q, const FiducialCircle& r, const PhaseLabelCircle& p,
                                  int k_max, int n_b, int n_gamma) {
  const double a = p.a;
  const int K = p.K;
  const std::vector<double> bs = circle_grid(n_b);
  const std::vector<double> gs = circle_grid(n_gamma);

  // left(j, M) = q(b_j, M)^*, right(l, L) = q(-g_l, L) with L = M - K - 2N.
  const int l_min = -3 * k_max - K;
  const int l_count = 6 * k_max + 1;
  CMatrix left(n_b, 2 * k_max + 1);
  for (int j = 0; j < n_b; ++j) {
    for (int M = -k_max; M <= k_max; ++M) {
      left(j, M + k_max) = std::conj(circle_coherent_coeff(q, r, PhaseLabelCircle(bs[j], M)));
    }
  }
  CMatrix right(n_gamma, l_count);
  for (int l = 0; l < n_gamma; ++l) {
    for (int L = 0; L < l_count; ++L) right(l, L) = circle_coherent_coeff(q, r, PhaseLabelCircle(-gs[l], l_min + L));
  }

  // The phase splits into a b-part, a g-part and a constant.
  Complex acc = 0.0;
  for (int M = -k_max; M <= k_max; ++M) {
    for (int N = -k_max; N <= k_max; ++N) {
      Complex b_part = 0.0;
      for (int j = 0; j < n_b; ++j) {
        b_part += left(j, M + k_max) * std::exp(0.5 * kI * bs[j] * static_cast<double>(2 * K - M + 2 * N));
      }
      Complex g_part = 0.0;
      const int L = M - K - 2 * N - l_min;
      for (int l = 0; l < n_gamma; ++l) {
        g_part += right(l, L) * std::exp(0.5 * kI * gs[l] * static_cast<double>(K - M));
      }
      acc += b_part * g_part * std::exp(-0.5 * kI * a * static_cast<double>(K) - kI * a * static_cast<double>(N));
    }
  }
  return acc / static_cast<double>(n_b) / static_cast<double>(n_gamma);
}

PhaseMapCircle::PhaseMapCircle(int n_a, int k_max, CMatrix values)
    : n_a_(n_a), k_max_(k_max), values_(std::move(values)) {
  if (values_.rows() != n_a || values_.cols() != 2 * k_max + 1) {
    throw DimensionMismatch("PhaseMapCircle: table shape does not match the grid");
  }
}

Complex PhaseMapCircle::at(long long j, int K) const {
  if (std::abs(K) > k_max_) throw InvalidArgument("PhaseMapCircle::at: |K| exceeds k_max");
  const long long turns = (j >= 0) ? j / n_a_ : -((-j + n_a_ - 1) / n_a_);
  const Complex v = values_(static_cast<Eigen::Index>(j - turns * n_a_), K + k_max_);
  return (turns % 2 != 0 && K % 2 != 0) ? -v : v;
}

namespace {

PhaseMapCircle phase_map(const CircleState& q, int n_a, int k_max, bool parity) {
  CMatrix t(n_a, 2 * k_max + 1);
  const std::vector<double> as = circle_grid(n_a);
  for (int j = 0; j < n_a; ++j) {
    for (int K = -k_max; K <= k_max; ++K) t(j, K + k_max) = inner(q, exact_apply(q, PhaseLabelCircle(as[j], K), parity));
  }
  return {n_a, k_max, std::move(t)};
}

}  // namespace

PhaseMapCircle weyl_map_circle(const CircleState& q, int n_a, int k_max) { return phase_map(q, n_a, k_max, false); }

PhaseMapCircle wigner_map_circle(const CircleState& q, int n_a, int k_max) { return phase_map(q, n_a, k_max, true); }

}  // namespace thetaphase
