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

// Jacobi theta function
//
//   theta3(u, tau) = sum_n exp(i pi tau n^2 + 2 i n u),   Im tau > 0,
//
// and its u-derivative, evaluated by a truncated lattice sum. The truncation
// order is chosen from a geometric tail bound so that the neglected terms are
// below cfg.eps in absolute value. For small Im tau the sum is evaluated on
// the modular image
//
//   theta3(u, tau) = (-i tau)^(-1/2) exp(u^2 / (i pi tau)) theta3(u/tau, -1/tau)
//
// whose nome is much smaller. The real part of u is first folded into
// [-pi/2, pi/2] using the exact period pi.
//
// Everything is templated on the real scalar so that long double can be used
// for reference computations.

#ifndef THETAPHASE_THETA_HPP
#define THETAPHASE_THETA_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "thetaphase/common.hpp"

namespace thetaphase {

template <typename Real = double>
struct ThetaConfig {
  Real eps = Real(1e-14);
  int max_terms = 10000;
  /// The modular transform is applied when Im tau is below this value.
  Real transform_threshold = Real(1);

  void validate() const {
    if (!(eps > 0)) throw InvalidArgument("ThetaConfig: eps must be > 0");
    if (max_terms < 1) throw InvalidArgument("ThetaConfig: max_terms must be >= 1");
    if (!(transform_threshold > 0)) {
      throw InvalidArgument("ThetaConfig: transform_threshold must be > 0");
    }
  }
};

template <typename Real = double>
struct ThetaArgs {
  std::complex<Real> u;
  std::complex<Real> tau;
};

/// Value together with its u-derivative.
template <typename Real = double>
struct ThetaValue {
  std::complex<Real> value;
  std::complex<Real> du;
};

namespace detail {

template <typename Real>
void check_tau(const std::complex<Real>& tau) {
  if (!(tau.imag() > 0)) {
    throw NonconvergentTau("theta3: Im tau must be positive, got " +
                           std::to_string(static_cast<double>(tau.imag())));
  }
}

/// Smallest n >= 1 past the peak of the term envelope with
/// pi Im(tau) n^2 - 2 n |Im u| > ln(2/eps) + ln(n+1).
template <typename Real>
int truncation_order(Real im_u_abs, Real im_tau, const ThetaConfig<Real>& cfg) {
  const Real pi = std::numbers::pi_v<Real>;
  const Real target = std::log(Real(2) / cfg.eps);
  const Real peak = im_u_abs / (pi * im_tau);
  for (int n = 1; n <= cfg.max_terms; ++n) {
    const Real rn = static_cast<Real>(n);
    if (rn > peak && pi * im_tau * rn * rn - 2 * rn * im_u_abs > target + std::log(rn + 1)) {
      return n;
    }
  }
  throw TruncationOverflow("theta3: truncation order exceeds max_terms = " +
                           std::to_string(cfg.max_terms));
}

/// Plain lattice sum; no transform.
template <typename Real>
ThetaValue<Real> direct_sum(const std::complex<Real>& u, const std::complex<Real>& tau,
                            const ThetaConfig<Real>& cfg, bool with_derivative) {
  using C = std::complex<Real>;
  const Real pi = std::numbers::pi_v<Real>;
  const int n_max = truncation_order(std::abs(u.imag()), tau.imag(), cfg);
  const C i_pi_tau = C(0, 1) * pi * tau;
  const C two_i_u = C(0, 2) * u;
  C value(1);
  C du(0);
  for (int n = 1; n <= n_max; ++n) {
    const Real rn = static_cast<Real>(n);
    const C base = std::exp(i_pi_tau * rn * rn);
    const C plus = base * std::exp(two_i_u * rn);
    const C minus = base * std::exp(-two_i_u * rn);
    value += plus + minus;
    if (with_derivative) du += C(0, 2) * rn * (plus - minus);
  }
  return {value, du};
}

/// u - k pi with k chosen so the real part lies in [-pi/2, pi/2].
template <typename Real>
std::complex<Real> fold_real_part(const std::complex<Real>& u) {
  const Real pi = std::numbers::pi_v<Real>;
  const Real k = std::round(u.real() / pi);
  return {u.real() - k * pi, u.imag()};
}

template <typename Real>
bool use_transform(const std::complex<Real>& tau, const ThetaConfig<Real>& cfg) {
  if (!(tau.imag() < cfg.transform_threshold)) return false;
  // Only worthwhile if the image nome is smaller, i.e. |tau| < 1.
  return std::norm(tau) < Real(1);
}

template <typename Real>
ThetaValue<Real> evaluate(const ThetaArgs<Real>& args, const ThetaConfig<Real>& cfg,
                          bool with_derivative) {
  using C = std::complex<Real>;
  const Real pi = std::numbers::pi_v<Real>;
  check_tau(args.tau);
  cfg.validate();
  const C u = fold_real_part(args.u);
  const C tau = args.tau;
  if (!use_transform(tau, cfg)) return direct_sum(u, tau, cfg, with_derivative);

  const C i_pi_tau = C(0, 1) * pi * tau;
  const C prefactor = std::pow(C(0, -1) * tau, Real(-0.5)) * std::exp(u * u / i_pi_tau);
  const ThetaValue<Real> inner = direct_sum(u / tau, C(-1) / tau, cfg, with_derivative);
  ThetaValue<Real> out;
  out.value = prefactor * inner.value;
  if (with_derivative) {
    out.du = prefactor * (Real(2) * u / i_pi_tau * inner.value + inner.du / tau);
  }
  return out;
}

}  // namespace detail

/// theta3(u, tau). Throws NonconvergentTau for Im tau <= 0 and
/// TruncationOverflow when more than cfg.max_terms terms would be needed.
template <typename Real = double>
std::complex<Real> theta3(const ThetaArgs<Real>& args, const ThetaConfig<Real>& cfg = {}) {
  return detail::evaluate(args, cfg, false).value;
}

template <typename Real = double>
std::complex<Real> theta3(const std::complex<Real>& u, const std::complex<Real>& tau,
                          const ThetaConfig<Real>& cfg = {}) {
  return theta3(ThetaArgs<Real>{u, tau}, cfg);
}

/// d theta3 / du, same truncation policy as theta3.
template <typename Real = double>
std::complex<Real> theta3_du(const ThetaArgs<Real>& args, const ThetaConfig<Real>& cfg = {}) {
  return detail::evaluate(args, cfg, true).du;
}

template <typename Real = double>
ThetaValue<Real> theta3_with_du(const ThetaArgs<Real>& args, const ThetaConfig<Real>& cfg = {}) {
  return detail::evaluate(args, cfg, true);
}

/// theta3 by the plain lattice sum, never transformed.
template <typename Real = double>
std::complex<Real> theta3_direct(const ThetaArgs<Real>& args, const ThetaConfig<Real>& cfg = {}) {
  detail::check_tau(args.tau);
  cfg.validate();
  return detail::direct_sum(detail::fold_real_part(args.u), args.tau, cfg, false).value;
}

/// sum_n |exp(i pi tau n^2 + 2 i n u)| = theta3(i Im u, i Im tau). This is the
/// natural magnitude against which rounding in the lattice sum is measured.
template <typename Real = double>
Real theta3_abs_scale(const ThetaArgs<Real>& args, const ThetaConfig<Real>& cfg = {}) {
  using C = std::complex<Real>;
  return std::real(theta3(ThetaArgs<Real>{C(0, args.u.imag()), C(0, args.tau.imag())}, cfg));
}

/// |theta3(u,tau) - (-i tau)^(-1/2) exp(u^2/(i pi tau)) theta3(u/tau, -1/tau)|
/// with both sides summed directly. Used as a self-test of the modular identity.
template <typename Real = double>
Real jacobi_residual(const ThetaArgs<Real>& args, const ThetaConfig<Real>& cfg = {}) {
  using C = std::complex<Real>;
  const Real pi = std::numbers::pi_v<Real>;
  detail::check_tau(args.tau);
  const C& u = args.u;
  const C& tau = args.tau;
  const C lhs = theta3_direct(args, cfg);
  const C prefactor =
      std::pow(C(0, -1) * tau, Real(-0.5)) * std::exp(u * u / (C(0, 1) * pi * tau));
  const C rhs = prefactor * theta3_direct(ThetaArgs<Real>{u / tau, C(-1) / tau}, cfg);
  return std::abs(lhs - rhs);
}

}  // namespace thetaphase

#endif  // THETAPHASE_THETA_HPP
