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

#include "thetaphase/torus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace thetaphase {

namespace {

const double kPiQuarterInv = std::pow(kPi, -0.25);

double basis_scale(const Dimension& dim) { return std::sqrt(kPi / (2.0 * dim.d())); }

Complex basis_tau(const Dimension& dim) { return {0.0, 1.0 / dim.d()}; }

}  // namespace

double torus_side(const Dimension& dim) { return std::sqrt(2.0 * kPi * dim.d()); }

Complex torus_basis(const Dimension& dim, long long m, Complex z, const ThetaConfig<>& cfg) {
  const Complex u = kPi * static_cast<double>(dim.reduce(m)) / dim.d() - z * basis_scale(dim);
  return theta3(ThetaArgs<>{u, basis_tau(dim)}, cfg);
}

std::pair<Complex, Complex> torus_basis_with_dz(const Dimension& dim, long long m, Complex z,
                                                const ThetaConfig<>& cfg) {
  const double s = basis_scale(dim);
  const Complex u = kPi * static_cast<double>(dim.reduce(m)) / dim.d() - z * s;
  const ThetaValue<> v = theta3_with_du(ThetaArgs<>{u, basis_tau(dim)}, cfg);
  return {v.value, -s * v.du};
}

CMatrix torus_basis_matrix(const Dimension& dim, const std::vector<Complex>& points,
                           const ThetaConfig<>& cfg) {
  CMatrix b(static_cast<Eigen::Index>(points.size()), dim.d());
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (int m = 0; m < dim.d(); ++m) b(static_cast<Eigen::Index>(j), m) = torus_basis(dim, m, points[j], cfg);
  }
  return b;
}

TorusFunction::TorusFunction(FiniteState state, ThetaConfig<> cfg, CellIndex cell)
    : state_(std::move(state)), cfg_(cfg), cell_(cell), side_(torus_side(state_.dim())) {
  cfg_.validate();
}

Complex TorusFunction::evaluate(Complex z) const {
  Complex acc = 0.0;
  for (int m = 0; m < dim().d(); ++m) {
    const Complex gm = state_.amplitudes()(m);
    if (gm != 0.0) acc += gm * torus_basis(dim(), m, z, cfg_);
  }
  return kPiQuarterInv * acc;
}

std::pair<Complex, Complex> TorusFunction::evaluate_with_derivative(Complex z) const {
  Complex value = 0.0;
  Complex dz = 0.0;
  for (int m = 0; m < dim().d(); ++m) {
    const Complex gm = state_.amplitudes()(m);
    if (gm == 0.0) continue;
    const auto [b, db] = torus_basis_with_dz(dim(), m, z, cfg_);
    value += gm * b;
    dz += gm * db;
  }
  return {kPiQuarterInv * value, kPiQuarterInv * dz};
}

TorusFunction torus_rep(const FiniteState& g, const ThetaConfig<>& cfg) {
  return TorusFunction(g, cfg);
}

void QuadratureSpec::validate() const {
  if (n_real < 8 || n_imag < 8) throw InvalidArgument("QuadratureSpec: need at least 8 points per axis");
}

CellRule cell_rule(const Dimension& dim, const QuadratureSpec& q) {
  q.validate();
  const double side = torus_side(dim);
  const double hr = side / q.n_real;
  const double hi = side / q.n_imag;
  CellRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(q.n_real) * q.n_imag);
  rule.weights.reserve(rule.nodes.capacity());
  for (int k = 0; k < q.n_imag; ++k) {
    const double y = (k + 0.5) * hi;
    const double w = hr * hi * std::exp(-y * y);
    for (int j = 0; j < q.n_real; ++j) {
      rule.nodes.emplace_back((j + 0.5) * hr, y);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

Complex scalar_product_analytic(const TorusFunction& g1, const TorusFunction& g2,
                                const QuadratureSpec& q) {
  if (!(g1.dim() == g2.dim())) throw DimensionMismatch("scalar_product_analytic: dimensions differ");
  const Dimension& dim = g1.dim();
  const CellRule rule = cell_rule(dim, q);
  const Complex integral =
      integrate_cell(rule, [&](Complex z) { return g1(z) * g2(std::conj(z)); });
  return integral / (std::pow(dim.d(), 1.5) * std::sqrt(2.0 * kPi));
}

FiniteState coefficients_from_torus(const TorusFunction& g, const QuadratureSpec& q,
                                    CoefficientBasis basis) {
  const Dimension& dim = g.dim();
  const int d = dim.d();
  const CellRule rule = cell_rule(dim, q);
  const double prefactor = 1.0 / (std::sqrt(2.0) * std::pow(kPi, 0.75) * std::pow(d, 1.5));
  CVector coeffs = CVector::Zero(d);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const Complex z = rule.nodes[j];
    const Complex gz = rule.weights[j] * g(std::conj(z));
    for (int m = 0; m < d; ++m) coeffs(m) += torus_basis(dim, m, z, g.theta_config()) * gz;
  }
  coeffs *= prefactor;
  if (basis == CoefficientBasis::momentum) {
    CVector tilde = CVector::Zero(d);
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) tilde(m) += omega(-static_cast<long long>(m) * n, dim) * coeffs(n);
    }
    coeffs = tilde / std::sqrt(static_cast<double>(d));
  }
  return FiniteState::unnormalized(dim, std::move(coeffs));
}

CMatrix orthogonality_table(const Dimension& dim, const QuadratureSpec& q, const ThetaConfig<>& cfg) {
  const int d = dim.d();
  const CellRule rule = cell_rule(dim, q);
  std::vector<Complex> conj_nodes(rule.nodes.size());
  std::transform(rule.nodes.begin(), rule.nodes.end(), conj_nodes.begin(),
                 [](Complex z) { return std::conj(z); });
  const CMatrix b = torus_basis_matrix(dim, rule.nodes, cfg);
  const CMatrix bc = torus_basis_matrix(dim, conj_nodes, cfg);
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(),
                                            static_cast<Eigen::Index>(rule.weights.size()));
  const double prefactor = 1.0 / (std::sqrt(2.0) * kPi * std::pow(d, 1.5));
  return prefactor * (b.transpose() * w.asDiagonal() * bc);
}

Complex zero_sum_target(const Dimension& dim, CellIndex lattice) {
  const double side = torus_side(dim);
  return side * Complex(lattice.M, lattice.N) +
         std::pow(dim.d(), 1.5) * std::sqrt(kPi / 2.0) * Complex(1.0, 1.0);
}

namespace {

struct Box {
  Complex lo;
  double width;
  double height;
  Complex center() const { return lo + Complex(width / 2, height / 2); }
  bool contains(Complex z, double margin) const {
    return z.real() >= lo.real() - margin && z.real() <= lo.real() + width + margin &&
           z.imag() >= lo.imag() - margin && z.imag() <= lo.imag() + height + margin;
  }
};

// Winding count at a fixed sampling, plus the largest phase step seen.
std::pair<double, double> winding_at(const TorusFunction& g, const Box& box, int n) {
  const Complex corners[4] = {box.lo, box.lo + box.width, box.lo + Complex(box.width, box.height),
                              box.lo + Complex(0.0, box.height)};
  double total = 0.0;
  double max_step = 0.0;
  Complex prev = g(corners[0]);
  for (int e = 0; e < 4; ++e) {
    const Complex a = corners[e];
    const Complex b = corners[(e + 1) % 4];
    for (int k = 1; k <= n; ++k) {
      const Complex cur = g(a + (b - a) * (static_cast<double>(k) / n));
      if (cur == 0.0 || prev == 0.0) {
        throw ZeroCountMismatch("find_zeros: zero on a subdivision boundary");
      }
      const double step = std::arg(cur / prev);
      total += step;
      max_step = std::max(max_step, std::abs(step));
      prev = cur;
    }
  }
  return {total / (2.0 * kPi), max_step};
}

int winding_box(const TorusFunction& g, const Box& box, const ZeroSearchOptions& opts) {
  int n = opts.initial_edge_samples;
  auto [prev, prev_step] = winding_at(g, box, n);
  while (n < opts.max_edge_samples) {
    n *= 2;
    const auto [cur, step] = winding_at(g, box, n);
    const long rounded = std::lround(cur);
    if (std::lround(prev) == rounded && std::abs(cur - rounded) < 0.1 && step < kPi / 3) {
      return static_cast<int>(rounded);
    }
    prev = cur;
    prev_step = step;
  }
  throw ZeroCountMismatch("find_zeros: winding number did not stabilize");
}

struct NewtonResult {
  Complex z;
  bool converged;
};

NewtonResult newton(const TorusFunction& g, Complex z, const ZeroSearchOptions& opts) {
  const double tol = opts.newton_step_tol * g.side();
  for (int it = 0; it < opts.newton_max_iter; ++it) {
    const auto [value, dz] = g.evaluate_with_derivative(z);
    if (dz == 0.0) return {z, false};
    const Complex step = value / dz;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return {z, false};
    if (std::abs(step) < tol) return {z, true};
  }
  return {z, false};
}

// Splits slightly off the midpoint so that symmetric zero patterns do not
// land on the cut.
constexpr double kSplit = 0.5 + 0.01 * (1.4142135623730951 - 1.0);

void search(const TorusFunction& g, const Box& box, int count, int depth,
            const ZeroSearchOptions& opts, std::vector<Complex>& out) {
  if (count == 0) return;
  const double size = std::max(box.width, box.height);
  if (count == 1 || size < 1e-7 * g.side()) {
    const NewtonResult r = newton(g, box.center(), opts);
    if (r.converged && box.contains(r.z, 1e-9 * g.side())) {
      for (int k = 0; k < count; ++k) out.push_back(r.z);
      return;
    }
    if (depth >= opts.max_depth || size < 1e-7 * g.side()) {
      throw NonconvergedNewton("find_zeros: Newton refinement failed near " +
                               std::to_string(box.center().real()) + "+" +
                               std::to_string(box.center().imag()) + "i");
    }
  }
  if (depth >= opts.max_depth) throw ZeroCountMismatch("find_zeros: subdivision depth exceeded");
  Box a = box;
  Box b = box;
  if (box.width >= box.height) {
    a.width = box.width * kSplit;
    b.lo = box.lo + a.width;
    b.width = box.width - a.width;
  } else {
    a.height = box.height * kSplit;
    b.lo = box.lo + Complex(0.0, a.height);
    b.height = box.height - a.height;
  }
  const int ca = winding_box(g, a, opts);
  const int cb = winding_box(g, b, opts);
  if (ca + cb != count || ca < 0 || cb < 0) {
    throw ZeroCountMismatch("find_zeros: sub-box winding numbers do not add up");
  }
  search(g, a, ca, depth + 1, opts, out);
  search(g, b, cb, depth + 1, opts, out);
}

}  // namespace

int winding_number(const TorusFunction& g, Complex lo, double width, double height,
                   const ZeroSearchOptions& opts) {
  return winding_box(g, Box{lo, width, height}, opts);
}

ZeroSet find_zeros(const TorusFunction& g, const ZeroSearchOptions& opts) {
  const Dimension& dim = g.dim();
  const double side = g.side();
  const double offset = opts.window_offset * side;
  const Box window{Complex(offset, offset), side, side};
  const int total = winding_box(g, window, opts);
  if (total != dim.d()) {
    throw ZeroCountMismatch("find_zeros: expected " + std::to_string(dim.d()) +
                            " zeros in the cell, winding number gives " + std::to_string(total));
  }
  ZeroSet zs;
  search(g, window, total, 0, opts, zs.zeros);
  if (static_cast<int>(zs.zeros.size()) != dim.d()) {
    throw ZeroCountMismatch("find_zeros: isolated " + std::to_string(zs.zeros.size()) + " zeros");
  }
  std::sort(zs.zeros.begin(), zs.zeros.end(), [](Complex a, Complex b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  Complex sum = 0.0;
  for (Complex z : zs.zeros) {
    sum += z;
    zs.newton_residuals.push_back(std::abs(g(z)));
  }
  const Complex shifted = (sum - zero_sum_target(dim, {})) / side;
  zs.lattice = {static_cast<int>(std::lround(shifted.real())),
                static_cast<int>(std::lround(shifted.imag()))};
  zs.target = zero_sum_target(dim, zs.lattice);
  zs.sum_residual = sum - zs.target;
  return zs;
}

Complex zero_product(const std::vector<Complex>& zeros, int cell_n, const Dimension& dim, Complex z,
                     const ThetaConfig<>& cfg) {
  const double s = basis_scale(dim);
  const Complex shift = kPi * Complex(1.0, 1.0) / 2.0;
  Complex acc = std::exp(-kI * std::sqrt(2.0 * kPi / dim.d()) * static_cast<double>(cell_n) * z);
  for (Complex zeta : zeros) acc *= theta3(ThetaArgs<>{s * (z - zeta) + shift, kI}, cfg);
  return acc;
}

FiniteState canonical_phase(const FiniteState& g) {
  const CVector& a = g.amplitudes();
  const double largest = a.cwiseAbs().maxCoeff();
  Eigen::Index pick = 0;
  for (Eigen::Index m = 0; m < a.size(); ++m) {
    if (std::abs(a(m)) >= largest * (1.0 - 1e-9)) {
      pick = m;
      break;
    }
  }
  const Complex phase = std::conj(a(pick)) / std::abs(a(pick));
  return FiniteState(g.dim(), a * phase, g.normalized());
}

double fidelity(const FiniteState& a, const FiniteState& b) {
  if (!(a.dim() == b.dim())) throw DimensionMismatch("fidelity: dimensions differ");
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

TorusFunction state_from_zeros(const ZeroSet& zs, int cell_n, const Dimension& dim,
                               const QuadratureSpec& q, const ThetaConfig<>& cfg, double tol) {
  if (static_cast<int>(zs.zeros.size()) != dim.d()) {
    throw ConstraintViolation("state_from_zeros: need exactly d zeros");
  }
  const double side = torus_side(dim);
  Complex sum = 0.0;
  for (Complex z : zs.zeros) sum += z;
  Complex residual = sum - zero_sum_target(dim, CellIndex{0, cell_n});
  residual -= side * std::round(residual.real() / side);
  if (std::abs(residual) > tol) {
    throw ConstraintViolation("state_from_zeros: zero-sum constraint violated by " +
                              std::to_string(std::abs(residual)));
  }
  const int d = dim.d();
  const CellRule rule = cell_rule(dim, q);
  CVector coeffs = CVector::Zero(d);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const Complex z = rule.nodes[j];
    const Complex pz = rule.weights[j] * zero_product(zs.zeros, cell_n, dim, std::conj(z), cfg);
    for (int m = 0; m < d; ++m) coeffs(m) += torus_basis(dim, m, z, cfg) * pz;
  }
  return TorusFunction(canonical_phase(FiniteState(dim, std::move(coeffs))), cfg);
}

}  // namespace thetaphase
