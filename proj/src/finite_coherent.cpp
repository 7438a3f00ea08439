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

#include "thetaphase/finite_coherent.hpp"

#include <algorithm>
#include <cmath>

namespace thetaphase {

namespace {

const double kPiQuarterInv = std::pow(kPi, -0.25);

constexpr double kGenericMargin = 1e-6;

double cell_prefactor(const Dimension& dim) {
  return 1.0 / (std::pow(dim.d(), 1.5) * std::sqrt(2.0 * kPi));
}

Complex rep_at(const FiniteState& g, Complex z, const ThetaConfig<>& cfg) {
  Complex acc = 0.0;
  for (int m = 0; m < g.dim().d(); ++m) {
    const Complex gm = g.amplitudes()(m);
    if (gm != 0.0) acc += gm * torus_basis(g.dim(), m, z, cfg);
  }
  return kPiQuarterInv * acc;
}

// Values of torus_basis at each point, times the weights, summed against G.
// Returns B^H (w .* G) for the given points and weights.
CVector weighted_projection(const CMatrix& basis, const std::vector<double>& weights,
                            const CVector& values) {
  CVector wg(values.size());
  for (Eigen::Index j = 0; j < values.size(); ++j) wg(j) = weights[static_cast<std::size_t>(j)] * values(j);
  return basis.adjoint() * wg;
}

CVector sample(const TorusFunction& g, const std::vector<Complex>& points) {
  CVector v(static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) v(static_cast<Eigen::Index>(j)) = g(points[j]);
  return v;
}

}  // namespace

bool is_generic(const FiniteState& f) {
  const FiniteState unit(f.dim(), f.amplitudes());
  const double limit = 1.0 - kGenericMargin;
  return unit.amplitudes().cwiseAbs().maxCoeff() < limit &&
         momentum_coeffs(unit).amplitudes().cwiseAbs().maxCoeff() < limit;
}

FiducialFinite::FiducialFinite(FiniteState f, FiducialKind kind) : state_(std::move(f)), kind_(kind) {
  if (!is_generic(state_)) {
    throw NonGenericFiducial("fiducial is a position or momentum basis vector (up to phase)");
  }
}

FiducialFinite FiducialFinite::discrete_gaussian(const Dimension& dim) {
  CVector f(dim.d());
  for (int m = 0; m < dim.d(); ++m) {
    const double c = dim.centered(m);
    f(m) = std::exp(-kPi * c * c / dim.d());
  }
  return {FiniteState(dim, std::move(f)), FiducialKind::discrete_gaussian};
}

FiducialFinite FiducialFinite::seeded_random(const Dimension& dim, std::uint64_t seed) {
  return {random_state(dim, seed), FiducialKind::seeded_random};
}

FiducialFinite FiducialFinite::user(const FiniteState& f) {
  return {FiniteState(f.dim(), f.amplitudes()), FiducialKind::user};
}

CoherentFamilyFinite::CoherentFamilyFinite(FiducialFinite f, ThetaConfig<> cfg)
    : fiducial_(std::move(f)), cfg_(cfg), rep_(fiducial_.state(), cfg) {}

Complex coherent_eval(const CoherentFamilyFinite& fam, Complex z, const PhaseLabelFinite& p,
                      CoherentPath path) {
  if (path == CoherentPath::displaced_state) {
    return rep_at(fam.member(p), z, fam.theta_config());
  }
  const Dimension& dim = fam.dim();
  const double step = std::sqrt(2.0 * kPi / dim.d());
  const double a = p.alpha;
  const double b = p.beta;
  const Complex phase = omega(-static_cast<long long>(dim.inv2()) * p.alpha * p.beta, dim);
  return phase * fam.fiducial_rep()(z - b * step + kI * a * step) *
         std::exp(kI * z * a * step - kPi * a * a / dim.d());
}

Complex parity_eval(const CoherentFamilyFinite& fam, Complex z, const PhaseLabelFinite& p) {
  const FiniteState v = displaced_parity(fam.dim(), p).apply(fam.fiducial().state());
  return rep_at(v, z, fam.theta_config());
}

double coherent_fourier_relation_residual(const CoherentFamilyFinite& fam, Complex z,
                                          const PhaseLabelFinite& p) {
  const Dimension& dim = fam.dim();
  const long long h = dim.inv2();
  Complex sum = 0.0;
  for (int a = 0; a < dim.d(); ++a) {
    for (int b = 0; b < dim.d(); ++b) {
      sum += omega(-h * b * p.alpha + h * a * p.beta, dim) *
             coherent_eval(fam, -z, PhaseLabelFinite(dim, a, b));
    }
  }
  return std::abs(coherent_eval(fam, z, p) - sum / static_cast<double>(dim.d()));
}

double parity_fourier_residual(const CoherentFamilyFinite& fam, Complex z, const PhaseLabelFinite& p) {
  const Dimension& dim = fam.dim();
  Complex sum = 0.0;
  for (int a = 0; a < dim.d(); ++a) {
    for (int b = 0; b < dim.d(); ++b) {
      sum += omega(static_cast<long long>(b) * p.alpha - static_cast<long long>(a) * p.beta, dim) *
             coherent_eval(fam, z, PhaseLabelFinite(dim, a, b));
    }
  }
  return std::abs(parity_eval(fam, z, p) - sum / static_cast<double>(dim.d()));
}

double parity_reflection_residual(const CoherentFamilyFinite& fam, Complex z,
                                  const PhaseLabelFinite& p) {
  const PhaseLabelFinite doubled(fam.dim(), -2LL * p.alpha, -2LL * p.beta);
  return std::abs(parity_eval(fam, z, p) - coherent_eval(fam, -z, doubled));
}

Complex kernel(const Dimension& dim, Complex z, Complex w, const ThetaConfig<>& cfg) {
  const Complex wc = std::conj(w);
  Complex acc = 0.0;
  for (int m = 0; m < dim.d(); ++m) acc += torus_basis(dim, m, z, cfg) * torus_basis(dim, m, wc, cfg);
  return acc / std::sqrt(kPi);
}

KernelSymmetry kernel_symmetry(const Dimension& dim, Complex z, Complex w, const ThetaConfig<>& cfg) {
  // kernel(z, w) is K(z, w*); K(a, b) for arbitrary second slot b is kernel(a, conj(b)).
  const Complex wc = std::conj(w);
  const auto k = [&](Complex a, Complex b) { return kernel(dim, a, std::conj(b), cfg); };
  const Complex base = k(z, wc);
  return {std::abs(base - k(wc, z)), std::abs(base - k(-z, wc)), std::abs(base - k(-z, -wc))};
}

Complex coherent_kernel_sum(const CoherentFamilyFinite& fam, Complex z, Complex w) {
  const Dimension& dim = fam.dim();
  Complex acc = 0.0;
  for (int a = 0; a < dim.d(); ++a) {
    for (int b = 0; b < dim.d(); ++b) {
      const FiniteState v = fam.member(PhaseLabelFinite(dim, a, b));
      acc += rep_at(v, z, fam.theta_config()) * std::conj(rep_at(v, w, fam.theta_config()));
    }
  }
  return acc / static_cast<double>(dim.d());
}

Complex reproduce(const TorusFunction& g, Complex z, const QuadratureSpec& q) {
  const Dimension& dim = g.dim();
  const CellRule rule = cell_rule(dim, q);
  std::vector<Complex> conj_nodes(rule.nodes.size());
  std::transform(rule.nodes.begin(), rule.nodes.end(), conj_nodes.begin(),
                 [](Complex w) { return std::conj(w); });
  // K(z, w*) = pi^{-1/2} t(z)^T b(w*)
  const CMatrix bc = torus_basis_matrix(dim, conj_nodes, g.theta_config());
  const CVector values = sample(g, rule.nodes);
  CVector wg(values.size());
  for (Eigen::Index j = 0; j < values.size(); ++j) wg(j) = rule.weights[static_cast<std::size_t>(j)] * values(j);
  CVector tz(dim.d());
  for (int m = 0; m < dim.d(); ++m) tz(m) = torus_basis(dim, m, z, g.theta_config());
  const Complex integral = tz.transpose() * (bc.transpose() * wg);
  return cell_prefactor(dim) * integral / std::sqrt(kPi);
}

CMatrix coherent_coeffs(const FiniteState& g, const FiducialFinite& f) {
  if (!(g.dim() == f.dim())) throw DimensionMismatch("coherent_coeffs: dimensions differ");
  const Dimension& dim = g.dim();
  CMatrix out(dim.d(), dim.d());
  for (int a = 0; a < dim.d(); ++a) {
    for (int b = 0; b < dim.d(); ++b) {
      // <f|D(-a,-b)|g> = <D(a,b) f|g>
      out(a, b) = displace(f.state(), PhaseLabelFinite(dim, a, b)).amplitudes().dot(g.amplitudes());
    }
  }
  return out;
}

CMatrix parity_coeffs(const FiniteState& g, const FiducialFinite& f) {
  if (!(g.dim() == f.dim())) throw DimensionMismatch("parity_coeffs: dimensions differ");
  const Dimension& dim = g.dim();
  const long long h = dim.inv2();
  CMatrix out(dim.d(), dim.d());
  for (int c = 0; c < dim.d(); ++c) {
    for (int e = 0; e < dim.d(); ++e) {
      const FiniteOperator p = displaced_parity(dim, PhaseLabelFinite(dim, -h * c, -h * e));
      out(c, e) = f.state().amplitudes().dot(p.matrix() * g.amplitudes());
    }
  }
  return out;
}

CMatrix parity_coeffs_from_coherent(const Dimension& dim, const CMatrix& coeffs) {
  const long long h = dim.inv2();
  CMatrix out = CMatrix::Zero(dim.d(), dim.d());
  for (int c = 0; c < dim.d(); ++c) {
    for (int e = 0; e < dim.d(); ++e) {
      for (int a = 0; a < dim.d(); ++a) {
        for (int b = 0; b < dim.d(); ++b) out(c, e) += coeffs(a, b) * omega(h * b * c - h * a * e, dim);
      }
    }
  }
  return out / static_cast<double>(dim.d());
}

Complex coherent_synthesis(const CoherentFamilyFinite& fam, const CMatrix& coeffs, Complex z) {
  const Dimension& dim = fam.dim();
  Complex acc = 0.0;
  for (int a = 0; a < dim.d(); ++a) {
    for (int b = 0; b < dim.d(); ++b) acc += coherent_eval(fam, z, PhaseLabelFinite(dim, a, b)) * coeffs(a, b);
  }
  return acc / static_cast<double>(dim.d());
}

Complex parity_synthesis(const CoherentFamilyFinite& fam, const CMatrix& coeffs, Complex z) {
  return coherent_synthesis(fam, coeffs, -z);
}

namespace {

CMatrix coeffs_by_quadrature(const CoherentFamilyFinite& fam, const TorusFunction& g,
                             const QuadratureSpec& q, bool reflect) {
  const Dimension& dim = fam.dim();
  if (!(g.dim() == dim)) throw DimensionMismatch("coefficient quadrature: dimensions differ");
  const CellRule rule = cell_rule(dim, q);
  std::vector<Complex> points = rule.nodes;
  if (reflect) {
    for (Complex& w : points) w = -w;
  }
  const CMatrix basis = torus_basis_matrix(dim, points, fam.theta_config());
  const CVector proj = weighted_projection(basis, rule.weights, sample(g, rule.nodes));
  // [Dz(w)]^* G(w) summed = pi^{-1/4} conj(h)^T B^H (w .* G)
  const double scale = cell_prefactor(dim) * kPiQuarterInv;
  CMatrix out(dim.d(), dim.d());
  for (int a = 0; a < dim.d(); ++a) {
    for (int b = 0; b < dim.d(); ++b) {
      out(a, b) = scale * fam.member(PhaseLabelFinite(dim, a, b)).amplitudes().dot(proj);
    }
  }
  return out;
}

}  // namespace

CMatrix coherent_coeffs_by_quadrature(const CoherentFamilyFinite& fam, const TorusFunction& g,
                                      const QuadratureSpec& q) {
  return coeffs_by_quadrature(fam, g, q, false);
}

CMatrix parity_coeffs_by_quadrature(const CoherentFamilyFinite& fam, const TorusFunction& g,
                                    const QuadratureSpec& q) {
  return coeffs_by_quadrature(fam, g, q, true);
}

Marginal marginals(const CoherentFamilyFinite& fam, Complex z, int label, MarginalKind which) {
  const Dimension& dim = fam.dim();
  const FiniteState& f = fam.fiducial().state();
  Complex sum = 0.0;
  Marginal out{};
  if (which == MarginalKind::alpha_sum) {
    for (int a = 0; a < dim.d(); ++a) sum += coherent_eval(fam, z, PhaseLabelFinite(dim, a, 2LL * label));
    out.expected = kPiQuarterInv * f[-label] * torus_basis(dim, label, z, fam.theta_config());
  } else {
    for (int b = 0; b < dim.d(); ++b) sum += coherent_eval(fam, z, PhaseLabelFinite(dim, 2LL * label, b));
    const double s = std::sqrt(kPi / (2.0 * dim.d()));
    const Complex u = kPi * static_cast<double>(dim.reduce(label)) / dim.d() - kI * z * s;
    out.expected = kPiQuarterInv * momentum_coeffs(f)[-label] * std::exp(-z * z / 2.0) *
                   theta3(ThetaArgs<>{u, Complex(0.0, 1.0 / dim.d())}, fam.theta_config());
  }
  out.sum = sum / static_cast<double>(dim.d());
  return out;
}

Complex fourier_fiducial_eval(const CoherentFamilyFinite& fam, Complex z, const PhaseLabelFinite& p) {
  const FiniteState v = displaced_fourier(fam.dim(), p).apply(fam.fiducial().state());
  return rep_at(v, z, fam.theta_config());
}

double fourier_fiducial_residual(const CoherentFamilyFinite& fam, Complex z, const PhaseLabelFinite& p) {
  const Dimension& dim = fam.dim();
  const long long h = dim.inv2();
  const long long a = p.alpha;
  const long long b = p.beta;
  const PhaseLabelFinite rotated(dim, -h * (a - b), -h * (a + b));
  const Complex lhs = fourier_fiducial_eval(fam, z, rotated);
  const Complex rhs = omega(static_cast<long long>(dim.inv4()) * (a * a + b * b), dim) *
                      std::exp(-z * z / 2.0) * coherent_eval(fam, kI * z, p);
  return std::abs(lhs - rhs);
}

double coherent_overlap_residual(const FiniteState& f) {
  const Dimension& dim = f.dim();
  const int d = dim.d();
  const long long h = dim.inv2();
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          const CMatrix prod = displacement(dim, PhaseLabelFinite(dim, -c, -e)).matrix() *
                               displacement(dim, PhaseLabelFinite(dim, a, b)).matrix();
          const Complex lhs = f.amplitudes().dot(prod * f.amplitudes());
          Complex sum = 0.0;
          for (int n = 0; n < d; ++n) {
            sum += std::conj(f[n + b - e]) * f[n] * omega(static_cast<long long>(a - c) * n, dim);
          }
          const Complex rhs = omega(h * (a * b + c * e) - static_cast<long long>(b) * c, dim) * sum;
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

}  // namespace thetaphase
