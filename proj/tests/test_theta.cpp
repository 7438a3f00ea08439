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

#include <cmath>
#include <random>

#include "thetaphase/theta.hpp"

using thetaphase::Complex;
using thetaphase::kPi;
using thetaphase::ThetaArgs;
using thetaphase::ThetaConfig;

namespace {

// Symmetric partial sum with a fixed number of terms. Independent of the
// library's truncation and transform logic.
Complex partial_sum(Complex u, Complex tau, int terms) {
  Complex acc = 0.0;
  for (int n = -terms; n <= terms; ++n) {
    acc += std::exp(Complex(0, 1) * kPi * tau * static_cast<double>(n * n) +
                    Complex(0, 2) * static_cast<double>(n) * u);
  }
  return acc;
}

Complex central_difference(Complex u, Complex tau, double h) {
  const auto th = [&](Complex v) { return thetaphase::theta3(ThetaArgs<>{v, tau}); };
  return (th(u + h) - th(u - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("theta3 at u=0, tau=i") {
  const Complex oracle = partial_sum(0.0, Complex(0, 1), 20);
  const Complex value = thetaphase::theta3(ThetaArgs<>{0.0, Complex(0, 1)});
  CHECK(std::abs(value - oracle) < 1e-15);
  // pi^{1/4} / Gamma(3/4)
  CHECK(std::abs(value.real() - 1.0864348112133080) < 1e-15);
  CHECK(std::abs(value.imag()) < 1e-16);
}

TEST_CASE("theta3 has period pi in u") {
  const Complex a = thetaphase::theta3(ThetaArgs<>{kPi, Complex(0, 1)});
  const Complex b = thetaphase::theta3(ThetaArgs<>{0.0, Complex(0, 1)});
  CHECK(std::abs(a - b) < 1e-15);
}

TEST_CASE("direct and transformed paths agree at tau=i/5") {
  const ThetaArgs<> args{0.0, Complex(0, 0.2)};
  const Complex direct = thetaphase::theta3_direct(args);
  const Complex transformed = thetaphase::theta3(args);
  CHECK(std::abs(direct - transformed) < 1e-12);
  CHECK(std::abs(direct - partial_sum(0.0, Complex(0, 0.2), 40)) < 1e-13);
}

TEST_CASE("theta3_du") {
  SUBCASE("vanishes at u=0") {
    CHECK(std::abs(thetaphase::theta3_du(ThetaArgs<>{0.0, Complex(0, 1)})) < 1e-16);
  }
  SUBCASE("finite difference, real u") {
    const Complex tau(0, 1);
    const Complex u = 0.3;
    const Complex fd = central_difference(u, tau, 1e-5);
    const Complex du = thetaphase::theta3_du(ThetaArgs<>{u, tau});
    CHECK(std::abs(du - fd) / std::abs(du) < 1e-8);
  }
  SUBCASE("finite difference, complex u and transformed tau") {
    const Complex tau(0, 1.0 / 3.0);
    const Complex u(0.3, 0.2);
    const Complex fd = central_difference(u, tau, 1e-5);
    const Complex du = thetaphase::theta3_du(ThetaArgs<>{u, tau});
    CHECK(std::abs(du - fd) / std::abs(du) < 1e-7);
  }
}

TEST_CASE("jacobi_residual") {
  CHECK(thetaphase::jacobi_residual(ThetaArgs<>{0.0, Complex(0, 1)}) < 1e-13);
  CHECK(thetaphase::jacobi_residual(ThetaArgs<>{Complex(1, 0.5), Complex(0, 2)}) < 1e-12);
  CHECK(thetaphase::jacobi_residual(ThetaArgs<>{0.7, Complex(0, 1.0 / 7.0)}) < 1e-11);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(thetaphase::theta3(ThetaArgs<>{0.0, Complex(1, 0)}), thetaphase::NonconvergentTau);
  CHECK_THROWS_AS(thetaphase::theta3(ThetaArgs<>{0.0, Complex(0, -1)}), thetaphase::NonconvergentTau);
  ThetaConfig<> tight;
  tight.max_terms = 2;
  CHECK_THROWS_AS(thetaphase::theta3_direct(ThetaArgs<>{0.0, Complex(0, 0.01)}, tight),
                  thetaphase::TruncationOverflow);
  ThetaConfig<> bad;
  bad.eps = 0.0;
  CHECK_THROWS_AS(thetaphase::theta3(ThetaArgs<>{0.0, Complex(0, 1)}, bad),
                  thetaphase::InvalidArgument);
}

TEST_CASE("long double instantiation matches double") {
  using LC = std::complex<long double>;
  ThetaConfig<long double> cfg;
  cfg.eps = 1e-18L;
  const LC v = thetaphase::theta3(ThetaArgs<long double>{LC(0.4L, 0.3L), LC(0, 0.25L)}, cfg);
  const Complex w = thetaphase::theta3(ThetaArgs<>{Complex(0.4, 0.3), Complex(0, 0.25)});
  CHECK(std::abs(Complex(static_cast<double>(v.real()), static_cast<double>(v.imag())) - w) <
        1e-13 * std::abs(w));
}

TEST_CASE("identities on random samples") {
  std::mt19937_64 rng(20260115);
  std::uniform_real_distribution<double> box(-3.0, 3.0);
  const ThetaConfig<> cfg;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + 2 * (trial % 16);  // 1, 3, ..., 31
    const Complex tau(0.0, 1.0 / d);
    const Complex u(box(rng), box(rng));
    const ThetaArgs<> args{u, tau};
    const double scale = std::max(1.0, thetaphase::theta3_abs_scale(args));
    const Complex value = thetaphase::theta3(args);
    CAPTURE(d);
    CAPTURE(u);
    // period
    CHECK(std::abs(thetaphase::theta3(ThetaArgs<>{u + kPi, tau}) - value) < 10 * cfg.eps * scale);
    // evenness
    CHECK(std::abs(thetaphase::theta3(ThetaArgs<>{-u, tau}) - value) < 10 * cfg.eps * scale);
    // quasi-periodicity
    const Complex shifted = thetaphase::theta3(ThetaArgs<>{u + kPi * tau, tau});
    const Complex factor = std::exp(-Complex(0, 1) * kPi * tau - Complex(0, 2) * u);
    const double qscale =
        std::max({1.0, thetaphase::theta3_abs_scale(ThetaArgs<>{u + kPi * tau, tau}),
                  std::abs(factor) * scale});
    CHECK(std::abs(shifted - factor * value) < 10 * cfg.eps * qscale);
    // direct vs transformed
    CHECK(std::abs(thetaphase::theta3_direct(args) - value) < 1e-11 * scale);
    CHECK(thetaphase::jacobi_residual(args) < 1e-11 * scale);
  }
}
