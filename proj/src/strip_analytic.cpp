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

#include "thetaphase/strip_analytic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace thetaphase {

namespace {

const Complex kStripTau(0.0, 1.0 / (2.0 * kPi));
const Complex kKernelTau(0.0, 1.0 / kPi);

double measure_prefactor() { return 1.0 / (4.0 * std::pow(kPi, 2.5)); }

int default_k_max(int n_max) { return 2 * n_max + 8; }

// y_max for functions carrying momenta up to n.
double strip_height(int n) { return n + 6.0; }

CircleState exact_displace(const CircleState& q, const PhaseLabelCircle& p) {
  return circle_displace(q, p, q.n_max() + std::abs(p.K)).state;
}

CircleState exact_displaced_parity(const CircleState& q, const PhaseLabelCircle& p) {
  return displaced_parity_circle(q, p, q.n_max() + std::abs(p.K)).state;
}

}  // namespace

StripFunction::StripFunction(CircleState q, ThetaConfig<> cfg) : q_(std::move(q)), cfg_(cfg) {}

Complex StripFunction::operator()(Complex z) const {
  Complex acc = 0.0;
  for (int N = -q_.n_max(); N <= q_.n_max(); ++N) {
    const Complex c = q_[N];
    if (c == Complex(0.0)) continue;
    acc += c * std::exp(-0.5 * N * N + kI * static_cast<double>(N) * z);
  }
  return 2.0 * kPi * acc;
}

Complex StripFunction::derivative(Complex z) const {
  Complex acc = 0.0;
  for (int N = -q_.n_max(); N <= q_.n_max(); ++N) {
    const Complex c = q_[N];
    if (c == Complex(0.0) || N == 0) continue;
    acc += kI * static_cast<double>(N) * c * std::exp(-0.5 * N * N + kI * static_cast<double>(N) * z);
  }
  return 2.0 * kPi * acc;
}

StripFunction strip_rep(const CircleState& q, const ThetaConfig<>& cfg) { return StripFunction(q, cfg); }

Complex strip_theta(double x, Complex z, const ThetaConfig<>& cfg) {
  return theta3<double>({(x - z) / 2.0, kStripTau}, cfg);
}

StripRule strip_rule(double y_max, const StripQuadratureSpec& sq) {
  if (sq.n_real < 1 || sq.n_imag < 2 || !(y_max > 0.0)) {
    throw InvalidArgument("strip_rule: need n_real >= 1, n_imag >= 2 and y_max > 0");
  }
  StripRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(sq.n_real) * sq.n_imag);
  rule.weights.resize(static_cast<Eigen::Index>(sq.n_real) * sq.n_imag);
  const double hx = 2.0 * kPi / sq.n_real;
  const double hy = 2.0 * y_max / (sq.n_imag - 1);
  Eigen::Index k = 0;
  for (int iy = 0; iy < sq.n_imag; ++iy) {
    const double y = -y_max + iy * hy;
    const double wy = (iy == 0 || iy == sq.n_imag - 1) ? 0.5 * hy : hy;
    const double w = measure_prefactor() * hx * wy * std::exp(-y * y);
    for (int ix = 0; ix < sq.n_real; ++ix) {
      rule.nodes.emplace_back(ix * hx, y);
      rule.weights(k++) = w;
    }
  }
  return rule;
}

Complex strip_scalar_product(const StripFunction& q1, const StripFunction& q2, const StripQuadratureSpec& sq) {
  const StripRule rule = strip_rule(std::max(q1.y_max(), q2.y_max()), sq);
  Complex acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Complex z = rule.nodes[k];
    acc += rule.weights(static_cast<Eigen::Index>(k)) * q1(z) * std::conj(q2(z));
  }
  return acc / (2.0 * kPi);
}

Complex strip_invert(const StripFunction& q, double x, const StripQuadratureSpec& sq) {
  const StripRule rule = strip_rule(q.y_max(), sq);
  Complex acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Complex z = rule.nodes[k];
    acc += rule.weights(static_cast<Eigen::Index>(k)) * q(z) * strip_theta(x, std::conj(z), q.theta_config());
  }
  return acc;
}

Complex strip_coherent_eval(const FiducialCircle& r, Complex z, const PhaseLabelCircle& p,
                            StripCoherentPath path) {
  if (path == StripCoherentPath::displaced_state) {
    return StripFunction(exact_displace(r.state(), p))(z);
  }
  const double K = p.K;
  const Complex phase = std::exp(-0.5 * kI * K * p.a + kI * K * z - 0.5 * K * K);
  return phase * StripFunction(r.state())(z + kI * K - p.a);
}

double strip_coherent_fourier_residual(const FiducialCircle& r, Complex z, const PhaseLabelCircle& p,
                                       int k_max, int n_b) {
  const double a = p.a;
  const int K = p.K;
  Complex acc = 0.0;
  for (int M = -k_max; M <= k_max; ++M) {
    for (double b : circle_grid(n_b)) {
      acc += strip_coherent_eval(r, z, PhaseLabelCircle(b, 2 * M - K)) *
             std::exp(0.5 * kI * (-b * K - a * K + 2.0 * M * a));
    }
  }
  acc /= static_cast<double>(n_b);
  return std::abs(strip_coherent_eval(r, -z, p) - acc);
}

StripZeroSet strip_zeros(const StripFunction& q) {
  const CircleState& s = q.state();
  const int n = s.n_max();
  StripZeroSet out;
  int low = n + 1, high = -n - 1;
  for (int N = -n; N <= n; ++N) {
    if (s[N] != Complex(0.0)) {
      low = std::min(low, N);
      high = std::max(high, N);
    }
  }
  if (low > high) throw InvalidArgument("strip_zeros: zero function");
  out.n_low = low;
  out.n_high = high;
  out.degenerate_leading = (low > -n) || (high < n);
  const int degree = high - low;
  if (degree == 0) return out;

  // P(w) = sum_k c_{low+k} w^k, rescaled by w = s v so the extreme coefficients match.
  CVector c(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    const int N = low + k;
    c(k) = 2.0 * kPi * s[N] * std::exp(-0.5 * N * N);
  }
  const double scale = std::pow(std::abs(c(0)) / std::abs(c(degree)), 1.0 / degree);
  CVector b(degree + 1);
  for (int k = 0; k <= degree; ++k) b(k) = c(k) * std::pow(scale, k);
  CMatrix companion = CMatrix::Zero(degree, degree);
  for (int k = 1; k < degree; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < degree; ++k) companion(k, degree - 1) = -b(k) / b(degree);
  Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NonconvergedNewton("strip_zeros: eigenvalue solver failed");

  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const Complex w = solver.eigenvalues()(k) * scale;
    if (std::abs(w) < 1e-12 || std::abs(w) > 1e12) {
      ++out.discarded;
      continue;
    }
    Complex z = -kI * std::log(w);
    for (int it = 0; it < 50; ++it) {
      const Complex d = q.derivative(z);
      if (d == Complex(0.0)) break;
      const Complex step = q(z) / d;
      z -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    double x = std::fmod(z.real(), 2.0 * kPi);
    if (x < 0.0) x += 2.0 * kPi;
    z = Complex(x, z.imag());
    out.zeros.push_back(z);
  }
  std::sort(out.zeros.begin(), out.zeros.end(), [](Complex x, Complex y) {
    return x.imag() != y.imag() ? x.imag() < y.imag() : x.real() < y.real();
  });
  for (Complex z : out.zeros) out.residuals.push_back(std::abs(q(z)));
  return out;
}

Complex kernel_c(Complex z, Complex w, const ThetaConfig<>& cfg) {
  return 2.0 * kPi * theta3<double>({(std::conj(w) - z) / 2.0, kKernelTau}, cfg);
}

double kernel_resolution_residual(const FiducialCircle& r, Complex z, Complex w, int k_max, int n_a) {
  Complex acc = 0.0;
  for (int K = -k_max; K <= k_max; ++K) {
    for (double a : circle_grid(n_a)) {
      const StripFunction d(exact_displace(r.state(), PhaseLabelCircle(a, K)));
      acc += d(z) * std::conj(d(w));
    }
  }
  acc *= 2.0 * kPi / n_a / (4.0 * kPi * kPi);
  return std::abs(acc - kernel_c(z, w));
}

Complex strip_reproduce(const StripFunction& q, Complex z, const StripQuadratureSpec& sq) {
  const StripRule rule = strip_rule(q.y_max(), sq);
  Complex acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Complex w = rule.nodes[k];
    acc += rule.weights(static_cast<Eigen::Index>(k)) * kernel_c(z, w, q.theta_config()) * q(w);
  }
  return acc;
}

Complex circle_coherent_coeff(const CircleState& q, const FiducialCircle& r, const PhaseLabelCircle& p) {
  return inner(r.state(), exact_displace(q, PhaseLabelCircle(-p.a, -p.K)));
}

Complex circle_parity_coeff(const CircleState& q, const FiducialCircle& r, const PhaseLabelCircle& p) {
  return inner(r.state(), exact_displaced_parity(q, PhaseLabelCircle(-p.a, -p.K)));
}

namespace {

template <typename Coeff>
CircleCoeffTable coeff_table(int n_a, int k_max, Coeff coeff) {
  if (n_a < 1 || k_max < 0) throw InvalidArgument("coefficient table: need n_a >= 1 and k_max >= 0");
  CircleCoeffTable t;
  t.n_a = n_a;
  t.k_max = k_max;
  t.values.resize(n_a, 2 * k_max + 1);
  for (int j = 0; j < n_a; ++j) {
    for (int K = -k_max; K <= k_max; ++K) t.values(j, K + k_max) = coeff(PhaseLabelCircle(t.a(j), K));
  }
  return t;
}

}  // namespace

CircleCoeffTable strip_coherent_coeffs(const CircleState& q, const FiducialCircle& r, int n_a, int k_max) {
  return coeff_table(n_a, k_max, [&](const PhaseLabelCircle& p) { return circle_coherent_coeff(q, r, p); });
}

CircleCoeffTable strip_parity_coeffs(const CircleState& q, const FiducialCircle& r, int n_a, int k_max) {
  return coeff_table(n_a, k_max, [&](const PhaseLabelCircle& p) { return circle_parity_coeff(q, r, p); });
}

Complex strip_coherent_synthesis(const FiducialCircle& r, const CircleCoeffTable& c, Complex z) {
  Complex acc = 0.0;
  for (int j = 0; j < c.n_a; ++j) {
    for (int K = -c.k_max; K <= c.k_max; ++K) {
      acc += strip_coherent_eval(r, z, PhaseLabelCircle(c.a(j), K)) * c.at(j, K);
    }
  }
  return acc / static_cast<double>(c.n_a);
}

Complex strip_parity_synthesis(const FiducialCircle& r, const CircleCoeffTable& c, Complex z) {
  return strip_coherent_synthesis(r, c, -z);
}

namespace {

Complex coeff_quadrature(const StripFunction& q, const FiducialCircle& r, const PhaseLabelCircle& p,
                         const StripQuadratureSpec& sq, double sign) {
  const StripFunction d(exact_displace(r.state(), p));
  const double y_max = std::max(q.y_max(), strip_height(r.n_max() + std::abs(p.K)));
  const StripRule rule = strip_rule(y_max, sq);
  Complex acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Complex w = rule.nodes[k];
    acc += rule.weights(static_cast<Eigen::Index>(k)) * std::conj(d(sign * w)) * q(w);
  }
  return acc / (2.0 * kPi);
}

}  // namespace

Complex strip_coherent_coeff_by_quadrature(const StripFunction& q, const FiducialCircle& r,
                                           const PhaseLabelCircle& p, const StripQuadratureSpec& sq) {
  return coeff_quadrature(q, r, p, sq, 1.0);
}

Complex strip_parity_coeff_by_quadrature(const StripFunction& q, const FiducialCircle& r,
                                         const PhaseLabelCircle& p, const StripQuadratureSpec& sq) {
  return coeff_quadrature(q, r, p, sq, -1.0);
}

double parity_from_coherent_residual(const CircleState& q, const FiducialCircle& r, const PhaseLabelCircle& p,
                                     int k_max, int n_a) {
  const double b = p.a;
  const int M = p.K;
  Complex acc = 0.0;
  for (int K = -k_max; K <= k_max; ++K) {
    for (double a : circle_grid(n_a)) {
      acc += circle_coherent_coeff(q, r, PhaseLabelCircle(-a, M - 2 * K)) *
             std::exp(0.5 * kI * (-a * M - b * M + 2.0 * K * b));
    }
  }
  acc /= static_cast<double>(n_a);
  return std::abs(circle_parity_coeff(q, r, p) - acc);
}

StripMarginal strip_marginals(const FiducialCircle& r, Complex z, StripMarginalKind which, double label,
                              int k_max, int n_a) {
  StripMarginal out{0.0, 0.0};
  if (which == StripMarginalKind::sum_over_K) {
    const double a = label;
    if (k_max <= 0) k_max = default_k_max(r.n_max());
    for (int K = -k_max; K <= k_max; ++K) out.value += strip_coherent_eval(r, z, PhaseLabelCircle(a, K));
    out.expected = 2.0 * kPi * r.state().wavefunction(-0.5 * a) *
                   theta3<double>({(a - 2.0 * z) / 4.0, kStripTau});
    return out;
  }
  const int K = static_cast<int>(std::lround(label));
  for (double a : circle_grid(n_a)) out.value += strip_coherent_eval(r, z, PhaseLabelCircle(a, -2 * K));
  out.value *= 2.0 * kPi / n_a;
  out.expected = 4.0 * kPi * kPi * r.state()[K] * std::exp(-kI * z * static_cast<double>(K) - 0.5 * K * K);
  return out;
}

}  // namespace thetaphase
