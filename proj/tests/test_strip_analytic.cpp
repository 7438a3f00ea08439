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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "thetaphase/strip_analytic.hpp"

using namespace thetaphase;

namespace {

// sum_{|n|<=terms} exp(-n^2/2 + 2inu), i.e. theta3(u; i/2pi) by brute force.
Complex strip_theta_series(Complex u, int terms = 80) {
  Complex acc = 0.0;
  for (int n = -terms; n <= terms; ++n) acc += std::exp(-0.5 * n * n + 2.0 * kI * static_cast<double>(n) * u);
  return acc;
}

// int_0^{2pi} dx q(x) theta3((x - z)/2; i/2pi) by the trapezoid rule.
Complex strip_rep_by_integral(const CircleState& q, Complex z, int n_x) {
  Complex acc = 0.0;
  for (double x : circle_grid(n_x)) acc += q.wavefunction(x) * strip_theta_series((x - z) / 2.0);
  return acc * (2.0 * kPi / n_x);
}

std::vector<Complex> strip_points(std::uint64_t seed, int count, double height) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(0.0, 2.0 * kPi), im(-height, height);
  std::vector<Complex> out;
  for (int k = 0; k < count; ++k) out.emplace_back(re(rng), im(rng));
  return out;
}

double periodic_distance(Complex x, Complex y) {
  const double dx = std::remainder(x.real() - y.real(), 2.0 * kPi);
  return std::hypot(dx, x.imag() - y.imag());
}

}  // namespace

TEST_CASE("strip representation") {
  CHECK(std::abs(strip_rep(CircleState::momentum(4, 0))(Complex(0.3, 1.7)) - 2.0 * kPi) < 1e-13);
  CHECK(std::abs(strip_rep(CircleState::momentum(4, 3))(0.5) - 2.0 * kPi * std::exp(Complex(-4.5, 1.5))) < 1e-15);

  const CircleState q = random_circle_state(8, 21);
  const StripFunction Q = strip_rep(q);
  const Complex z(1.0, 0.5);
  CHECK(std::abs(Q(z) - strip_rep_by_integral(q, z, 64)) < 1e-10);
  CHECK(std::abs(Q(z + 2.0 * kPi) - Q(z)) < 1e-12);
  CHECK(Q.y_max() == 14.0);
  CHECK(std::abs(strip_theta(0.4, z) - strip_theta_series((0.4 - z) / 2.0)) < 1e-13);

  // derivative against a central difference
  const double h = 1e-5;
  CHECK(std::abs(Q.derivative(z) - (Q(z + h) - Q(z - h)) / (2.0 * h)) < 1e-7 * std::abs(Q.derivative(z)) + 1e-9);
}

TEST_CASE("scalar product") {
  const StripFunction g = strip_rep(FiducialCircle::gaussian_momenta().state());
  CHECK(std::abs(strip_scalar_product(g, g) - 1.0) < 1e-7);
  CHECK(std::abs(strip_scalar_product(strip_rep(CircleState::momentum(8, 1)), strip_rep(CircleState::momentum(8, 2)))) <
        1e-8);

  const CircleState q1 = random_circle_state(8, 1), q2 = random_circle_state(8, 2);
  CHECK(std::abs(strip_scalar_product(strip_rep(q1), strip_rep(q2)) - inner(q2, q1)) < 1e-7);

  // different ranges embed the smaller one
  const CircleState q3 = random_circle_state(4, 3);
  CHECK(std::abs(strip_scalar_product(strip_rep(q1), strip_rep(q3)) - inner(q3, q1)) < 1e-7);
}

TEST_CASE("inversion") {
  const StripFunction one = strip_rep(CircleState::momentum(4, 0));
  for (double x : {0.0, 1.0, 4.0}) CHECK(std::abs(strip_invert(one, x) - 1.0) < 1e-8);

  const CircleState q = random_circle_state(6, 9);
  const double x = kPi / 3.0;
  CHECK(std::abs(strip_invert(strip_rep(q), x) - q.wavefunction(x)) < 1e-7);

  // linearity in Q
  const CircleState p = random_circle_state(6, 10);
  const Complex s(0.3, -1.1);
  const CircleState mix = CircleState::unnormalized(6, q.coeffs() + s * p.coeffs());
  const Complex lhs = strip_invert(strip_rep(mix), x);
  CHECK(std::abs(lhs - strip_invert(strip_rep(q), x) - s * strip_invert(strip_rep(p), x)) < 1e-10);

  // round trip on a grid of x
  double worst = 0.0;
  for (double y : circle_grid(7)) worst = std::max(worst, std::abs(strip_invert(strip_rep(p), y) - p.wavefunction(y)));
  CHECK(worst < 1e-7);
}

TEST_CASE("coherent functions on the strip") {
  const FiducialCircle g = FiducialCircle::gaussian_momenta();
  const std::vector<Complex> zs = strip_points(31, 10, 2.0);
  for (Complex z : zs) {
    CHECK(std::abs(strip_coherent_eval(g, z, PhaseLabelCircle(0.0, 0)) - strip_rep(g.state())(z)) < 1e-15);
  }
  double worst = 0.0;
  for (Complex z : zs) {
    const PhaseLabelCircle p(0.7, 2);
    worst = std::max(worst, std::abs(strip_coherent_eval(g, z, p, StripCoherentPath::displaced_state) -
                                     strip_coherent_eval(g, z, p, StripCoherentPath::shift_form)));
  }
  CHECK(worst < 1e-9);

  const Complex z(0.4, 0.3);
  const PhaseLabelCircle p(0.3, 3), p2(0.3 + 2.0 * kPi, 3);
  for (StripCoherentPath path : {StripCoherentPath::displaced_state, StripCoherentPath::shift_form}) {
    CHECK(std::abs(strip_coherent_eval(g, z, p2, path) + strip_coherent_eval(g, z, p, path)) < 1e-10);
    CHECK(std::abs(strip_coherent_eval(g, z + 2.0 * kPi, p, path) - strip_coherent_eval(g, z, p, path)) < 1e-10);
  }
}

TEST_CASE("two-dimensional Fourier relation") {
  const FiducialCircle g = FiducialCircle::gaussian_momenta();
  CHECK(strip_coherent_fourier_residual(g, 0.4, PhaseLabelCircle(0.0, 0), 40, 96) < 1e-7);
  CHECK(strip_coherent_fourier_residual(g, Complex(0.2, 0.3), PhaseLabelCircle(1.1, 1), 40, 96) < 1e-7);

  // The Gaussian tail is below rounding once k_max reaches 8, so the decay is
  // visible at small k_max and flat from 8 on.
  const PhaseLabelCircle p(1.1, 1);
  const Complex z(0.2, 0.3);
  std::vector<double> res;
  for (int k_max : {1, 2, 4, 8, 16, 32}) res.push_back(strip_coherent_fourier_residual(g, z, p, k_max, 96));
  CHECK(res[0] > res[1]);
  CHECK(res[1] > res[2]);
  CHECK(res[2] > res[3]);
  for (std::size_t k = 3; k + 1 < res.size(); ++k) {
    CHECK(res[k] < 1e-12);
    CHECK(res[k + 1] <= res[k] + 1e-13);
  }
}

TEST_CASE("zeros") {
  // 1 + exp(-1/2) exp(iz) vanishes at exp(iz) = -exp(1/2)
  CVector c(3);
  c << 0.0, 1.0, 1.0;
  const StripZeroSet two = strip_zeros(strip_rep(CircleState::unnormalized(1, c)));
  CHECK(two.degenerate_leading);
  CHECK(two.n_low == 0);
  CHECK(two.n_high == 1);
  REQUIRE(two.zeros.size() == 1);
  CHECK(std::abs(two.zeros[0] - Complex(kPi, -0.5)) < 1e-12);

  const CircleState r = random_circle_state(5, 40);
  const StripFunction R = strip_rep(r);
  const StripZeroSet base = strip_zeros(R);
  CHECK_FALSE(base.degenerate_leading);
  CHECK(base.zeros.size() + base.discarded == 10);
  CHECK(base.zeros.size() == 10);

  // residuals against the largest value on the strip grid
  double peak = 0.0;
  for (Complex z : strip_rule(R.y_max(), {64, 64}).nodes) peak = std::max(peak, std::abs(R(z)));
  for (Complex zeta : base.zeros) CHECK(std::abs(R(zeta)) < 1e-9 * peak);

  // displacement moves every zero by a - iK
  const PhaseLabelCircle p(0.9, 2);
  const FiducialCircle fr = FiducialCircle::user(r);
  const StripZeroSet moved = strip_zeros(strip_rep(circle_displace(r, p, 7).state));
  CHECK(moved.degenerate_leading);
  REQUIRE(moved.zeros.size() == base.zeros.size());
  double worst = 0.0;
  for (Complex zeta : base.zeros) {
    const Complex target = zeta - 2.0 * kI + 0.9;
    double best = 1e300;
    for (Complex m : moved.zeros) best = std::min(best, periodic_distance(m, target));
    worst = std::max(worst, best);
  }
  CHECK(worst < 1e-8);
  for (Complex m : moved.zeros) CHECK(std::abs(strip_coherent_eval(fr, m, p, StripCoherentPath::shift_form)) < 1e-9 * peak);
}

TEST_CASE("kernel") {
  const Complex z(0.3, 0.1), w(1.2, -0.4);
  Complex quad = 0.0;
  for (double x : circle_grid(512)) {
    quad += strip_theta_series((x - z) / 2.0) * strip_theta_series((x - std::conj(w)) / 2.0);
  }
  quad *= 2.0 * kPi / 512;
  CHECK(std::abs(kernel_c(z, w) - quad) < 1e-9);

  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Complex a(u(rng), u(rng)), b(u(rng), u(rng));
    worst = std::max(worst, std::abs(kernel_c(a, b) - kernel_c(-a, -b)) / std::max(1.0, std::abs(kernel_c(a, b))));
  }
  CHECK(worst < 1e-11);

  const FiducialCircle g = FiducialCircle::gaussian_momenta();
  CHECK(kernel_resolution_residual(g, z, w, 40, 96) < 1e-7);
  // independent of the fiducial
  CHECK(kernel_resolution_residual(FiducialCircle::seeded_random(6, 12), z, w, 40, 96) < 1e-7);
}

TEST_CASE("reproducing kernel") {
  const StripFunction one = strip_rep(CircleState::momentum(4, 0));
  CHECK(std::abs(strip_reproduce(one, Complex(1.0, 0.2)) - one(Complex(1.0, 0.2))) < 1e-7);

  const StripFunction Q = strip_rep(random_circle_state(8, 77));
  double worst = 0.0;
  for (Complex z : strip_points(5, 10, 1.5)) worst = std::max(worst, std::abs(strip_reproduce(Q, z) - Q(z)));
  CHECK(worst < 1e-6);

  const StripFunction P = strip_rep(random_circle_state(8, 78));
  const CircleState sum = CircleState::unnormalized(8, Q.state().coeffs() + 2.0 * P.state().coeffs());
  const Complex z(2.0, -0.3);
  CHECK(std::abs(strip_reproduce(strip_rep(sum), z) - strip_reproduce(Q, z) - 2.0 * strip_reproduce(P, z)) < 1e-10);
}

TEST_CASE("coherent expansions") {
  const FiducialCircle r = FiducialCircle::gaussian_momenta(8);
  CHECK(std::abs(circle_coherent_coeff(r.state(), r, PhaseLabelCircle(0.0, 0)) - 1.0) < 1e-14);

  const CircleState q = random_circle_state(8, 55);
  const StripFunction Q = strip_rep(q);
  const CircleCoeffTable c = strip_coherent_coeffs(q, r, 64, 24);
  const CircleCoeffTable ct = strip_parity_coeffs(q, r, 64, 24);
  double worst = 0.0, worst_parity = 0.0;
  for (Complex z : strip_points(8, 10, 1.0)) {
    worst = std::max(worst, std::abs(Q(z) - strip_coherent_synthesis(r, c, z)));
    worst_parity = std::max(worst_parity, std::abs(Q(z) - strip_parity_synthesis(r, ct, z)));
  }
  CHECK(worst < 1e-6);
  CHECK(worst_parity < 1e-6);

  // inverses by strip quadrature
  for (const PhaseLabelCircle p : {PhaseLabelCircle(0.5, 1), PhaseLabelCircle(2.0, -3)}) {
    CHECK(std::abs(strip_coherent_coeff_by_quadrature(Q, r, p) - circle_coherent_coeff(q, r, p)) < 1e-7);
    CHECK(std::abs(strip_parity_coeff_by_quadrature(Q, r, p) - circle_parity_coeff(q, r, p)) < 1e-7);
  }

  // cocycles
  const PhaseLabelCircle p(1.4, 3), p2(1.4 + 2.0 * kPi, 3);
  CHECK(std::abs(circle_coherent_coeff(q, r, p2) + circle_coherent_coeff(q, r, p)) < 1e-12);
  CHECK(std::abs(circle_parity_coeff(q, r, p2) + circle_parity_coeff(q, r, p)) < 1e-12);

  CHECK(parity_from_coherent_residual(q, r, PhaseLabelCircle(0.6, 1), 24, 64) < 1e-6);
  CHECK(parity_from_coherent_residual(q, r, PhaseLabelCircle(3.3, -2), 24, 64) < 1e-6);
}

TEST_CASE("marginals") {
  const FiducialCircle g = FiducialCircle::gaussian_momenta();
  const StripMarginal a0 = strip_marginals(g, 0.7, StripMarginalKind::integral_over_a, 0);
  CHECK(std::abs(a0.expected - 4.0 * kPi * kPi * g.state()[0]) < 1e-12);
  CHECK(a0.residual() < 1e-8);
  CHECK(strip_marginals(g, 0.3, StripMarginalKind::sum_over_K, 0.0).residual() < 1e-8);
  CHECK(strip_marginals(g, Complex(0.1, 0.4), StripMarginalKind::integral_over_a, 2).residual() < 1e-8);
  CHECK(strip_marginals(g, Complex(1.0, -0.2), StripMarginalKind::sum_over_K, 2.5).residual() < 1e-8);

  // direct closed-form sum for the second marginal with a random fiducial
  const FiducialCircle rnd = FiducialCircle::seeded_random(5, 3);
  const Complex z(0.1, 0.4);
  const StripMarginal m = strip_marginals(rnd, z, StripMarginalKind::integral_over_a, -2);
  CHECK(std::abs(m.expected - 4.0 * kPi * kPi * rnd.state()[-2] * std::exp(2.0 * kI * z - 2.0)) < 1e-12);
  CHECK(m.residual() < 1e-8);
}
