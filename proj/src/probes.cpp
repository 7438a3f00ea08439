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

#include <algorithm>
#include <cmath>
#include <random>

#include "thetaphase/verify.hpp"

namespace thetaphase {

namespace {

using Args = ThetaArgs<>;

std::vector<Complex> box_points(std::uint64_t seed, int count, double re_lo, double re_hi, double im_half) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(re_lo, re_hi), im(-im_half, im_half);
  std::vector<Complex> out;
  for (int k = 0; k < count; ++k) {
    const double x = re(rng);
    out.emplace_back(x, im(rng));
  }
  return out;
}

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

CMatrix mpow(const CMatrix& m, int k) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  for (int j = 0; j < k; ++j) out = out * m;
  return out;
}

double unitarity(const CMatrix& m) {
  return max_abs_diff(CMatrix(m.adjoint() * m), CMatrix::Identity(m.rows(), m.cols()));
}

// Exact circle maps, range grown by |K|.
CircleState circle_D(const CircleState& q, double a, int K) {
  return circle_displace(q, PhaseLabelCircle(a, K), q.n_max() + std::abs(K)).state;
}

CircleState circle_U(const CircleState& q, double a, int K) {
  return displaced_parity_circle(q, PhaseLabelCircle(a, K), q.n_max() + std::abs(K)).state;
}

double circle_diff(const CircleState& x, const CircleState& y, Complex scale = 1.0) {
  const int n = std::max(x.n_max(), y.n_max());
  double worst = 0.0;
  for (int N = -n; N <= n; ++N) worst = std::max(worst, std::abs(x[N] - scale * y[N]));
  return worst;
}

double periodic_distance(Complex x, Complex y) {
  return std::hypot(std::remainder(x.real() - y.real(), 2.0 * kPi), x.imag() - y.imag());
}

}  // namespace

double theta_identity_residual(const ThetaConfig<>& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-3.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 192; ++trial) {
    const int d = 1 + 2 * (trial % 16);
    const Complex tau(0.0, 1.0 / d);
    const double re = box(rng);
    const Complex u(re, box(rng));
    const double scale = std::max(1.0, theta3_abs_scale(Args{u, tau}, cfg));
    const Complex value = theta3(Args{u, tau}, cfg);
    worst = std::max(worst, std::abs(theta3(Args{u + kPi, tau}, cfg) - value) / scale);
    worst = std::max(worst, std::abs(theta3(Args{-u, tau}, cfg) - value) / scale);
    worst = std::max(worst, std::abs(theta3_direct(Args{u, tau}, cfg) - value) / scale);
    const Complex factor = std::exp(-kI * kPi * tau - 2.0 * kI * u);
    const double qscale = std::max({1.0, theta3_abs_scale(Args{u + kPi * tau, tau}, cfg), std::abs(factor) * scale});
    worst = std::max(worst, std::abs(theta3(Args{u + kPi * tau, tau}, cfg) - factor * value) / qscale);
  }
  return worst;
}

double theta_derivative_residual(const ThetaConfig<>& cfg, std::uint64_t seed) {
  // Cauchy integral on a small circle; spectrally accurate for an entire function.
  constexpr int kNodes = 32;
  constexpr double kRadius = 0.05;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-3.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 64; ++trial) {
    const int d = 1 + 2 * (trial % 16);
    const Complex tau(0.0, 1.0 / d);
    const double re = box(rng);
    const Complex u(re, box(rng));
    Complex acc = 0.0;
    for (int k = 0; k < kNodes; ++k) {
      const Complex e = std::exp(kI * (2.0 * kPi * k / kNodes));
      acc += theta3(Args{u + kRadius * e, tau}, cfg) / e;
    }
    acc /= kNodes * kRadius;
    const double scale =
        std::max(1.0, theta3_abs_scale(Args{Complex(u.real(), std::abs(u.imag()) + kRadius), tau}, cfg) / kRadius);
    worst = std::max(worst, std::abs(theta3_du(Args{u, tau}, cfg) - acc) / scale);
  }
  return worst;
}

double theta_modular_residual(const ThetaConfig<>& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-3.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 64; ++trial) {
    const int d = 1 + 2 * (trial % 16);
    const double re = box(rng);
    const Args args{Complex(re, box(rng)), Complex(0.0, 1.0 / d)};
    worst = std::max(worst, jacobi_residual(args, cfg) / std::max(1.0, theta3_abs_scale(args, cfg)));
  }
  return worst;
}

double clock_shift_residual(const Dimension& dim) {
  const int d = dim.d();
  const CMatrix z = clock_op(dim).matrix();
  const CMatrix x = shift_op(dim).matrix();
  const CMatrix one = CMatrix::Identity(d, d);
  double worst = std::max(max_abs_diff(mpow(x, d), one), max_abs_diff(mpow(z, d), one));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const CMatrix za = mpow(z, a);
      const CMatrix xb = mpow(x, b);
      worst = std::max(worst, max_abs_diff(CMatrix(xb * za), CMatrix(za * xb * omega(-a * b, dim))));
      const CMatrix dm = displacement(dim, PhaseLabelFinite(dim, a, b)).matrix();
      const long long h = dim.inv2();
      worst = std::max(worst, max_abs_diff(dm, CMatrix(za * xb * omega(-h * a * b, dim))));
      worst = std::max(worst, unitarity(dm));
    }
  }
  return worst;
}

double displaced_fourier_residual(const Dimension& dim) {
  const int d = dim.d();
  const long long h = dim.inv2();
  const CMatrix f = fourier_op(dim).matrix();
  double worst = std::max(unitarity(f), max_abs_diff(mpow(f, 4), CMatrix::Identity(d, d)));
  for (long long a = 0; a < d; ++a) {
    for (long long b = 0; b < d; ++b) {
      const CMatrix fab = displaced_fourier(dim, PhaseLabelFinite(dim, a, b)).matrix();
      const CMatrix conj = displacement(dim, PhaseLabelFinite(dim, a, b)).matrix() * f *
                           displacement(dim, PhaseLabelFinite(dim, -a, -b)).matrix();
      const Complex phase = omega(h * (a * a + b * b), dim);
      const CMatrix left = phase * f * displacement(dim, PhaseLabelFinite(dim, -a - b, a - b)).matrix();
      const CMatrix right = phase * displacement(dim, PhaseLabelFinite(dim, a - b, a + b)).matrix() * f;
      worst = std::max({worst, max_abs_diff(fab, conj), max_abs_diff(fab, left), max_abs_diff(fab, right)});
    }
  }
  return worst;
}

double displaced_parity_residual(const Dimension& dim) {
  const int d = dim.d();
  const CMatrix p00 = displaced_parity(dim, {}).matrix();
  double worst = max_abs_diff(CMatrix(p00 * p00), CMatrix::Identity(d, d));
  std::vector<CMatrix> displacements;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) displacements.push_back(displacement(dim, PhaseLabelFinite(dim, a, b)).matrix());
  }
  for (long long g = 0; g < d; ++g) {
    for (long long e = 0; e < d; ++e) {
      const CMatrix p = displaced_parity(dim, PhaseLabelFinite(dim, g, e)).matrix();
      CMatrix sum = CMatrix::Zero(d, d);
      for (long long a = 0; a < d; ++a) {
        for (long long b = 0; b < d; ++b) sum += omega(b * g - a * e, dim) * displacements[a * d + b];
      }
      sum /= static_cast<double>(d);
      const CMatrix doubled = displacement(dim, PhaseLabelFinite(dim, 2 * g, 2 * e)).matrix() * p00;
      worst = std::max({worst, max_abs_diff(p, sum), max_abs_diff(p, doubled), max_abs_diff(p, CMatrix(p.adjoint()))});
    }
  }
  return worst;
}

double fourier_basis_residual(const Dimension& dim, std::uint64_t seed) {
  const FiniteOperator f = fourier_op(dim);
  double worst = 0.0;
  for (int n = 0; n < dim.d(); ++n) {
    worst = std::max(worst, max_abs_diff(f.apply(position_state(dim, n)).amplitudes(), momentum_state(dim, n).amplitudes()));
  }
  const FiniteState g = random_state(dim, seed);
  const FiniteState gt = momentum_coeffs(g);
  worst = std::max(worst, max_abs_diff(gt.amplitudes(), CVector(f.matrix().adjoint() * g.amplitudes())));
  worst = std::max(worst, std::abs(gt.norm() - g.norm()));
  FiniteState h = g;
  for (int k = 0; k < 4; ++k) h = momentum_coeffs(h);
  return std::max(worst, max_abs_diff(h.amplitudes(), g.amplitudes()));
}

double coherent_evaluation_residual(const CoherentFamilyFinite& fam) {
  const Dimension& dim = fam.dim();
  const std::vector<Complex> zs{{0.3, -0.4}, {-1.1, 0.7}, {1.6, 1.2}};
  double worst = 0.0;
  for (int a = 0; a < dim.d(); ++a) {
    for (int b = 0; b < dim.d(); ++b) {
      const PhaseLabelFinite p(dim, a, b);
      for (Complex z : zs) {
        worst = std::max(worst, rel(coherent_eval(fam, z, p, CoherentPath::shift_form), coherent_eval(fam, z, p)));
      }
    }
  }
  return worst;
}

double coherent_fourier_residual(const CoherentFamilyFinite& fam) {
  const Dimension& dim = fam.dim();
  double worst = 0.0;
  for (int a = 0; a < dim.d(); ++a) {
    for (int b = 0; b < dim.d(); ++b) {
      const PhaseLabelFinite p(dim, a, b);
      const Complex z(0.3 * a - 0.4, 0.2 * b + 0.1);
      worst = std::max({worst, coherent_fourier_relation_residual(fam, z, p), parity_fourier_residual(fam, z, p),
                        parity_reflection_residual(fam, z, p)});
    }
  }
  return worst;
}

double coherent_kernel_residual(const CoherentFamilyFinite& fam) {
  const auto zs = box_points(13, 5, -2.0, 2.0, 2.0);
  const auto ws = box_points(14, 5, -2.0, 2.0, 2.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const Complex expected = kernel(fam.dim(), zs[k], ws[k], fam.theta_config());
    worst = std::max(worst, rel(coherent_kernel_sum(fam, zs[k], ws[k]), expected));
    // the symmetric pair that does hold
    worst = std::max(worst, kernel_symmetry(fam.dim(), zs[k], ws[k], fam.theta_config()).negate_both /
                                std::max(1.0, std::abs(expected)));
  }
  return worst;
}

double coherent_expansion_residual(const CoherentFamilyFinite& fam, std::uint64_t seed) {
  const Dimension& dim = fam.dim();
  const FiniteState g = random_state(dim, seed);
  const TorusFunction rep(g, fam.theta_config());
  const CMatrix c = coherent_coeffs(g, fam.fiducial());
  const CMatrix ct = parity_coeffs(g, fam.fiducial());
  double worst = max_abs_diff(ct, parity_coeffs_from_coherent(dim, c));
  for (Complex z : box_points(seed + 1, 6, -2.0, 2.0, 2.0)) {
    const Complex v = rep(z);
    worst = std::max({worst, rel(coherent_synthesis(fam, c, z), v), rel(parity_synthesis(fam, ct, z), v)});
  }
  return worst;
}

double coherent_analysis_residual(const CoherentFamilyFinite& fam, std::uint64_t seed, const QuadratureSpec& q) {
  const FiniteState g = random_state(fam.dim(), seed);
  const TorusFunction rep(g, fam.theta_config());
  return std::max(max_abs_diff(coherent_coeffs_by_quadrature(fam, rep, q), coherent_coeffs(g, fam.fiducial())),
                  max_abs_diff(parity_coeffs_by_quadrature(fam, rep, q), parity_coeffs(g, fam.fiducial())));
}

double coherent_marginal_residual(const CoherentFamilyFinite& fam) {
  double worst = 0.0;
  for (int label = 0; label < fam.dim().d(); ++label) {
    for (Complex z : {Complex(0.4, 0.0), Complex(0.1, 0.3), Complex(-0.8, -0.5)}) {
      worst = std::max({worst, marginals(fam, z, label, MarginalKind::alpha_sum).residual(),
                        marginals(fam, z, label, MarginalKind::beta_sum).residual()});
    }
  }
  return worst;
}

double fourier_fiducial_sweep_residual(const CoherentFamilyFinite& fam) {
  const Dimension& dim = fam.dim();
  double worst = 0.0;
  for (int a = 0; a < dim.d(); ++a) {
    for (int b = 0; b < dim.d(); ++b) {
      for (Complex z : {Complex(0.6, -0.3), Complex(-0.2, 0.5)}) {
        worst = std::max(worst, fourier_fiducial_residual(fam, z, PhaseLabelFinite(dim, a, b)));
      }
    }
  }
  // the zero label is the plain transform of the fiducial function
  const Complex z(0.3, 0.8);
  return std::max(worst, std::abs(fourier_fiducial_eval(fam, z, {}) - std::exp(-z * z / 2.0) * coherent_eval(fam, kI * z, {})));
}

ZeroSweep torus_zero_sweep(const Dimension& dim, int states, std::uint64_t seed, const QuadratureSpec& q,
                           const ThetaConfig<>& cfg) {
  ZeroSweep out;
  for (int s = 0; s < states; ++s) {
    const FiniteState g = random_state(dim, seed + static_cast<std::uint64_t>(s));
    ZeroSet zs;
    try {
      zs = find_zeros(TorusFunction(g, cfg));
    } catch (const ZeroCountMismatch&) {
      out.count = std::max(out.count, 1.0);
      continue;
    }
    out.count = std::max(out.count, std::abs(static_cast<double>(zs.zeros.size()) - dim.d()));
    out.zero_sum = std::max(out.zero_sum, std::abs(zs.sum_residual));
    const TorusFunction rebuilt = state_from_zeros(zs, zs.lattice.N, dim, q, cfg);
    out.reconstruction = std::max(out.reconstruction, 1.0 - fidelity(g, rebuilt.state()));
  }
  return out;
}

double circle_group_law_residual(int n_max, std::uint64_t seed) {
  const CircleState q = random_circle_state(n_max, seed);
  const CircleState q2 = random_circle_state(n_max, seed + 1);
  double worst = 0.0;
  const std::vector<std::pair<double, int>> labels{{0.9, 2}, {-1.7, -5}, {3.1, 1}, {5.5, -3}};
  for (auto [a, K] : labels) {
    for (auto [b, M] : labels) {
      const CircleState lhs = circle_D(circle_D(q, b, M), a, K);
      worst = std::max(worst, circle_diff(lhs, circle_D(q, a + b, K + M), std::exp(kI * ((K * b - M * a) / 2.0))));
    }
    // unitarity and the adjoint
    worst = std::max(worst, std::abs(circle_D(q, a, K).norm() - 1.0));
    worst = std::max(worst, std::abs(inner(circle_D(q, a, K), q2) - inner(q, circle_D(q2, -a, -K))));
  }
  return worst;
}

double circle_period_residual(int n_max, std::uint64_t seed) {
  const CircleState q = random_circle_state(n_max, seed);
  double worst = 0.0;
  for (int K : {-3, 2, 3, 4}) {
    const double sign = (K % 2 != 0) ? -1.0 : 1.0;
    worst = std::max(worst, circle_diff(circle_D(q, 1.3 + 2.0 * kPi, K), circle_D(q, 1.3, K), sign));
    worst = std::max(worst, circle_diff(circle_U(q, 1.3 + 2.0 * kPi, K), circle_U(q, 1.3, K), sign));
    // U(a, K) squares to one
    worst = std::max(worst, circle_diff(circle_U(circle_U(q, 1.2, K), 1.2, K), q));
  }
  // even and odd momentum forms
  const double a = 0.8;
  const int K = 2;
  worst = std::max(worst, circle_diff(circle_U(q, a, 2 * K), circle_D(circle_parity(circle_D(q, -a / 2, -K)), a / 2, K)));
  worst = std::max(worst, circle_diff(circle_U(q, a, 2 * K + 1), circle_D(circle_U(circle_D(q, -a / 2, -K), 0.0, 1), a / 2, K)));
  return worst;
}

double circle_parity_residual(int n_max, int k_max) {
  const CMatrix u0 = circle_parity_matrix(n_max);
  double worst = 0.0;
  for (int M = -n_max; M <= n_max; ++M) {
    for (int N = -n_max; N <= n_max; ++N) {
      worst = std::max(worst, std::abs(u0(M + n_max, N + n_max) - Complex(M == -N ? 1.0 : 0.0)));
    }
  }
  return std::max(worst, parity_average_residual(n_max, k_max, 4 * n_max + 16));
}

double circle_parity_fourier_residual(int n_max, int k_max) {
  double worst = 0.0;
  for (const PhaseLabelCircle p : {PhaseLabelCircle(0.0, 0), PhaseLabelCircle(1.3, 3), PhaseLabelCircle(5.0, -2)}) {
    worst = std::max(worst, parity_fourier_residual_circle(n_max, p, k_max, 4 * n_max + 16));
  }
  return worst;
}

double circle_overlap_residual(const FiducialCircle& r, std::uint64_t seed) {
  const PhaseLabelCircle p1(0.5, 1), p2(1.0, -2);
  double worst = std::abs(coherent_overlap_circle(r, p1, p1) - 1.0);
  worst = std::max(worst, std::abs(coherent_overlap_circle(r, p1, p2) - coherent_overlap_circle_integral(r, p1, p2)));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 4.0 * kPi);
  std::uniform_int_distribution<int> mom(-9, 9);
  for (int k = 0; k < 50; ++k) {
    const double a = angle(rng);
    const int K = mom(rng);
    const double b = angle(rng);
    const PhaseLabelCircle x(a, K), y(b, mom(rng));
    const Complex o = coherent_overlap_circle(r, x, y);
    worst = std::max({worst, std::abs(o) - 1.0, std::abs(o - coherent_overlap_circle_integral(r, x, y))});
  }
  return worst;
}

double strip_representation_residual(const CircleState& q, const ThetaConfig<>& cfg) {
  const StripFunction Q(q, cfg);
  const int n_x = 4 * q.n_max() + 32;
  double worst = 0.0;
  for (Complex z : box_points(41, 6, 0.0, 2.0 * kPi, 2.0)) {
    Complex integral = 0.0;
    for (double x : circle_grid(n_x)) integral += q.wavefunction(x) * strip_theta(x, z, cfg);
    integral *= 2.0 * kPi / n_x;
    const Complex v = Q(z);
    worst = std::max({worst, rel(integral, v), rel(Q(z + 2.0 * kPi), v)});
  }
  return worst;
}

double strip_shift_form_residual(const FiducialCircle& r, std::uint64_t seed) {
  double worst = 0.0;
  const auto zs = box_points(seed, 8, 0.0, 2.0 * kPi, 2.0);
  for (const PhaseLabelCircle p : {PhaseLabelCircle(0.7, 2), PhaseLabelCircle(2.9, -3), PhaseLabelCircle(5.1, 1)}) {
    for (Complex z : zs) {
      worst = std::max(worst, rel(strip_coherent_eval(r, z, p, StripCoherentPath::shift_form),
                                  strip_coherent_eval(r, z, p, StripCoherentPath::displaced_state)));
    }
  }
  return worst;
}

double strip_fourier_residual(const FiducialCircle& r) {
  return std::max(strip_coherent_fourier_residual(r, 0.4, PhaseLabelCircle(0.0, 0), 40, 96),
                  strip_coherent_fourier_residual(r, Complex(0.2, 0.3), PhaseLabelCircle(1.1, 1), 40, 96));
}

double strip_zero_residual(int n_max, std::uint64_t seed) {
  const CircleState r = random_circle_state(n_max, seed);
  const StripFunction R = strip_rep(r);
  const StripZeroSet base = strip_zeros(R);
  double peak = 0.0;
  for (Complex z : strip_rule(R.y_max(), {64, 64}).nodes) peak = std::max(peak, std::abs(R(z)));

  double worst = std::abs(static_cast<double>(base.zeros.size()) + base.discarded - 2.0 * n_max);
  for (Complex zeta : base.zeros) worst = std::max(worst, std::abs(R(zeta)) / peak);

  // D(a, K) moves every zero by a - iK
  const PhaseLabelCircle p(0.9, 2);
  const StripZeroSet moved = strip_zeros(strip_rep(circle_displace(r, p, n_max + 2).state));
  if (moved.zeros.size() != base.zeros.size()) return std::max(worst, 1.0);
  for (Complex zeta : base.zeros) {
    const Complex target = zeta + p.a - kI * static_cast<double>(p.K);
    double best = 1e300;
    for (Complex m : moved.zeros) best = std::min(best, periodic_distance(m, target));
    worst = std::max(worst, best);
  }
  return worst;
}

double strip_kernel_residual(const ThetaConfig<>& cfg) {
  constexpr int kNodes = 512;
  double worst = 0.0;
  const auto zs = box_points(51, 4, -3.0, 3.0, 1.0);
  const auto ws = box_points(52, 4, -3.0, 3.0, 1.0);
  for (std::size_t k = 0; k < zs.size(); ++k) {
    // closed form against the x-integral of two strip kernels
    Complex quad = 0.0;
    for (double x : circle_grid(kNodes)) quad += strip_theta(x, zs[k], cfg) * strip_theta(x, std::conj(ws[k]), cfg);
    quad *= 2.0 * kPi / kNodes;
    const Complex closed = kernel_c(zs[k], ws[k], cfg);
    worst = std::max({worst, rel(closed, quad), rel(kernel_c(-zs[k], -ws[k], cfg), closed)});
  }
  return worst;
}

double strip_reproduce_residual(const CircleState& q, const StripQuadratureSpec& sq, std::uint64_t seed) {
  const StripFunction Q = strip_rep(q);
  double worst = 0.0;
  for (Complex z : box_points(seed, 6, 0.0, 2.0 * kPi, 1.5)) worst = std::max(worst, std::abs(strip_reproduce(Q, z, sq) - Q(z)));
  return worst;
}

double strip_expansion_residual(const CircleState& q, const FiducialCircle& r, int k_max, const StripQuadratureSpec& sq) {
  const StripFunction Q = strip_rep(q);
  const int n_a = 4 * (q.n_max() + r.n_max()) + 16;
  const CircleCoeffTable c = strip_coherent_coeffs(q, r, n_a, k_max);
  const CircleCoeffTable ct = strip_parity_coeffs(q, r, n_a, k_max);
  double worst = 0.0;
  for (Complex z : box_points(61, 6, 0.0, 2.0 * kPi, 1.0)) {
    const Complex v = Q(z);
    worst = std::max({worst, rel(strip_coherent_synthesis(r, c, z), v), rel(strip_parity_synthesis(r, ct, z), v)});
  }
  for (const PhaseLabelCircle p : {PhaseLabelCircle(0.5, 1), PhaseLabelCircle(2.0, -3)}) {
    worst = std::max(worst, std::abs(strip_coherent_coeff_by_quadrature(Q, r, p, sq) - circle_coherent_coeff(q, r, p)));
    worst = std::max(worst, std::abs(strip_parity_coeff_by_quadrature(Q, r, p, sq) - circle_parity_coeff(q, r, p)));
    worst = std::max(worst, parity_from_coherent_residual(q, r, p, k_max, n_a));
  }
  return worst;
}

double strip_marginal_residual(const FiducialCircle& r) {
  double worst = 0.0;
  for (int K : {-2, 0, 1, 2}) {
    worst = std::max(worst, strip_marginals(r, Complex(0.1, 0.4), StripMarginalKind::integral_over_a, K).residual());
  }
  for (double a : {0.0, 2.5, 4.0}) {
    worst = std::max(worst, strip_marginals(r, Complex(1.0, -0.2), StripMarginalKind::sum_over_K, a).residual());
  }
  return worst;
}

ConvergenceSweep wigner_convergence_sweep(const CircleState& q, const FiducialCircle& r, const PhaseLabelCircle& p) {
  constexpr double kFloor = 1e-11;
  ConvergenceSweep out;
  out.k_max = {3, 6, 12, 24};
  const Complex exact = wigner_circle(q, p);
  for (int k : out.k_max) out.error.push_back(std::abs(wigner_circle_from_coeffs(q, r, p, k, 48, 48) - exact));
  for (std::size_t j = 0; j + 1 < out.error.size(); ++j) {
    if (out.error[j] < kFloor) continue;
    out.worst_ratio = std::max(out.worst_ratio, out.error[j + 1] < kFloor ? 0.0 : out.error[j + 1] / out.error[j]);
  }
  return out;
}

}  // namespace thetaphase
