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

#include "thetaphase/torus.hpp"

using namespace thetaphase;

namespace {

Complex theta_partial_sum(Complex u, Complex tau, int terms) {
  Complex acc = 0.0;
  for (int n = -terms; n <= terms; ++n) {
    acc += std::exp(kI * kPi * tau * static_cast<double>(n * n) + 2.0 * kI * static_cast<double>(n) * u);
  }
  return acc;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Independent zero counter: total phase change of G around the boundary of
// [lo, lo+L]^2 with a fixed dense sampling.
double contour_count(const TorusFunction& g, Complex lo, double side, int per_edge) {
  const Complex corners[4] = {lo, lo + side, lo + Complex(side, side), lo + Complex(0.0, side)};
  double total = 0.0;
  Complex prev = g(corners[0]);
  for (int e = 0; e < 4; ++e) {
    for (int k = 1; k <= per_edge; ++k) {
      const Complex z = corners[e] + (corners[(e + 1) % 4] - corners[e]) * (double(k) / per_edge);
      const Complex cur = g(z);
      total += std::arg(cur / prev);
      prev = cur;
    }
  }
  return total / (2.0 * kPi);
}

// Distance between two points on the torus of side L.
double torus_distance(Complex a, Complex b, double side) {
  const auto wrap = [side](double x) { return x - side * std::round(x / side); };
  return std::hypot(wrap(a.real() - b.real()), wrap(a.imag() - b.imag()));
}

}  // namespace

TEST_CASE("torus_rep examples") {
  SUBCASE("position state at the origin") {
    const Dimension d3(3);
    const TorusFunction g = torus_rep(position_state(d3, 0));
    const Complex oracle = std::pow(kPi, -0.25) * theta_partial_sum(0.0, Complex(0, 1.0 / 3), 40);
    CHECK(std::abs(g(0.0) - oracle) < 1e-14);
  }
  SUBCASE("momentum state |P;2>, d=5") {
    const Dimension d5(5);
    const TorusFunction g = torus_rep(momentum_state(d5, 2));
    const double s = std::sqrt(kPi / 10.0);
    for (Complex z : {Complex(0.3, 0.1), Complex(1.7, -0.4), Complex(3.2, 2.5), Complex(-1.1, 4.0)}) {
      const Complex expected = std::pow(kPi, -0.25) * std::exp(-z * z / 2.0) *
                               theta_partial_sum(kPi * 2.0 / 5.0 - kI * z * s, Complex(0, 0.2), 60);
      CHECK(rel(g(z), expected) < 1e-10);
    }
  }
}

TEST_CASE("torus periodicity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int d : {3, 5, 7}) {
    const Dimension dim(d);
    const TorusFunction g = torus_rep(random_state(dim, 40 + d));
    const double side = g.side();
    for (int k = 0; k < 10; ++k) {
      const Complex z(side * unit(rng), side * unit(rng));
      const Complex v = g(z);
      CHECK(rel(g(z + side), v) < 1e-10);
      const Complex factor = std::exp(kPi * d - kI * z * side);
      CHECK(std::abs(g(z + kI * side) - v * factor) < 1e-9 * std::max(1.0, std::abs(v * factor)));
    }
  }
}

TEST_CASE("derivative matches finite difference") {
  const Dimension d5(5);
  const TorusFunction g = torus_rep(random_state(d5, 2));
  const Complex z(1.3, 2.1);
  const double h = 1e-5;
  const Complex fd = (g(z + h) - g(z - h)) / (2 * h);
  CHECK(rel(g.derivative(z), fd) < 1e-7);
}

TEST_CASE("scalar_product_analytic") {
  const Dimension d3(3);
  const TorusFunction x0 = torus_rep(position_state(d3, 0));
  const TorusFunction x1 = torus_rep(position_state(d3, 1));
  CHECK(std::abs(scalar_product_analytic(x0, x0) - 1.0) < 1e-8);
  CHECK(std::abs(scalar_product_analytic(x0, x1)) < 1e-8);

  const Dimension d5(5);
  const FiniteState g1 = random_state(d5, 101);
  const FiniteState g2 = random_state(d5, 202);
  const Complex oracle = (g1.amplitudes().array() * g2.amplitudes().array()).sum();
  CHECK(std::abs(scalar_product_analytic(torus_rep(g1), torus_rep(g2)) - oracle) < 1e-7);

  CHECK_THROWS_AS(scalar_product_analytic(x0, torus_rep(g1)), DimensionMismatch);
}

TEST_CASE("quadrature converges by 96 points per axis") {
  for (int d : {3, 7, 11}) {
    const Dimension dim(d);
    const TorusFunction g1 = torus_rep(random_state(dim, 5));
    const TorusFunction g2 = torus_rep(random_state(dim, 6));
    const Complex coarse = scalar_product_analytic(g1, g2, {96, 96});
    const Complex fine = scalar_product_analytic(g1, g2, {192, 192});
    CAPTURE(d);
    CHECK(std::abs(coarse - fine) < 1e-9);
  }
}

TEST_CASE("coefficients_from_torus") {
  SUBCASE("basis round trip d=5") {
    const Dimension d5(5);
    const FiniteState g = position_state(d5, 2);
    CHECK(max_abs_diff(coefficients_from_torus(torus_rep(g)).amplitudes(), g.amplitudes()) < 1e-8);
  }
  SUBCASE("random round trip d=7") {
    const Dimension d7(7);
    const FiniteState g = random_state(d7, 77);
    const TorusFunction rep = torus_rep(g);
    CHECK(max_abs_diff(coefficients_from_torus(rep).amplitudes(), g.amplitudes()) < 1e-7);
    CHECK(max_abs_diff(coefficients_from_torus(rep, {}, CoefficientBasis::momentum).amplitudes(),
                       momentum_coeffs(g).amplitudes()) < 1e-7);
  }
}

TEST_CASE("orthogonality kernel") {
  for (int d : {3, 5, 7}) {
    const CMatrix table = orthogonality_table(Dimension(d));
    CAPTURE(d);
    CHECK(max_abs_diff(table, CMatrix::Identity(d, d)) < 1e-7);
  }
}

TEST_CASE("find_zeros on |P;0>, d=3") {
  const Dimension d3(3);
  const TorusFunction g = torus_rep(momentum_state(d3, 0));
  const ZeroSet zs = find_zeros(g);
  REQUIRE(zs.zeros.size() == 3);
  const double spacing = std::sqrt(2.0 * kPi / 3.0);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(g(zs.zeros[k])) < 1e-9);
    CHECK(std::abs(zs.zeros[k].imag() - zs.zeros[0].imag()) < 1e-9);
  }
  std::vector<double> re;
  for (Complex z : zs.zeros) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  CHECK(std::abs(re[1] - re[0] - spacing) < 1e-9);
  CHECK(std::abs(re[2] - re[1] - spacing) < 1e-9);
  CHECK(std::abs(zs.sum_residual) < 1e-6);
  // contour oracle at 512 samples per edge
  CHECK(std::abs(contour_count(g, Complex(0.01, 0.01) * g.side(), g.side(), 512) - 3.0) < 1e-6);
}

TEST_CASE("find_zeros on random states") {
  SUBCASE("d=3 zero-sum constraint at the principal cell") {
    const Dimension d3(3);
    const ZeroSet zs = find_zeros(torus_rep(random_state(d3, 17)));
    CHECK(std::abs(zs.sum_residual) < 1e-6);
  }
  SUBCASE("20 states at d=5") {
    const Dimension d5(5);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const TorusFunction g = torus_rep(random_state(d5, seed));
      const ZeroSet zs = find_zeros(g);
      CAPTURE(seed);
      CHECK(zs.zeros.size() == 5);
      const double oracle = contour_count(g, Complex(0.0123, 0.0321) * g.side(), g.side(), 2048);
      CHECK(std::abs(oracle - 5.0) < 1e-3);
      CHECK(std::abs(zs.sum_residual) < 1e-6);
      // |G| near the zeros is measured against the typical size of G on the cell
      double scale = 0.0;
      for (int j = 0; j < 16; ++j)
        for (int k = 0; k < 16; ++k) scale = std::max(scale, std::abs(g(Complex(j, k) * g.side() / 16.0)));
      for (double r : zs.newton_residuals) CHECK(r < 1e-9 * scale);
    }
  }
}

TEST_CASE("zeros move with displacements") {
  const Dimension d5(5);
  const FiniteState f = random_state(d5, 31);
  const double step = std::sqrt(2.0 * kPi / 5.0);
  const ZeroSet base = find_zeros(torus_rep(f));
  for (auto [a, b] : {std::pair{1, 0}, std::pair{0, 2}, std::pair{3, 4}}) {
    const ZeroSet moved = find_zeros(torus_rep(displace(f, PhaseLabelFinite(d5, a, b))));
    const Complex shift(b * step, -a * step);
    for (Complex z : base.zeros) {
      double best = 1e300;
      for (Complex w : moved.zeros) best = std::min(best, torus_distance(z + shift, w, torus_side(d5)));
      CHECK(best < 1e-8);
    }
  }
}

TEST_CASE("state_from_zeros") {
  SUBCASE("random state, d=3") {
    const Dimension d3(3);
    const FiniteState g = random_state(d3, 9);
    const ZeroSet zs = find_zeros(torus_rep(g));
    const TorusFunction rec = state_from_zeros(zs, zs.lattice.N, d3);
    CHECK(fidelity(g, rec.state()) > 1 - 1e-7);
    // phase convention: largest coefficient is real positive
    Eigen::Index k = 0;
    rec.state().amplitudes().cwiseAbs().maxCoeff(&k);
    CHECK(std::abs(rec.state().amplitudes()(k).imag()) < 1e-12);
    CHECK(rec.state().amplitudes()(k).real() > 0);
  }
  SUBCASE("|P;1>, d=3") {
    const Dimension d3(3);
    const FiniteState g = momentum_state(d3, 1);
    const ZeroSet zs = find_zeros(torus_rep(g));
    CHECK(fidelity(g, state_from_zeros(zs, zs.lattice.N, d3).state()) > 1 - 1e-7);
  }
  SUBCASE("random states, d=5") {
    const Dimension d5(5);
    for (std::uint64_t seed = 50; seed < 55; ++seed) {
      const FiniteState g = random_state(d5, seed);
      const ZeroSet zs = find_zeros(torus_rep(g));
      CHECK(fidelity(g, state_from_zeros(zs, zs.lattice.N, d5).state()) > 1 - 1e-7);
    }
  }
  SUBCASE("perturbed zero breaks the constraint") {
    const Dimension d3(3);
    ZeroSet zs = find_zeros(torus_rep(random_state(d3, 4)));
    zs.zeros[0] += 0.1;
    CHECK_THROWS_AS(state_from_zeros(zs, zs.lattice.N, d3), ConstraintViolation);
  }
}
