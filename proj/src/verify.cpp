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

#include "thetaphase/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "thetaphase/io.hpp"

namespace thetaphase {

namespace {

struct EntrySpec {
  std::string name;
  std::string identity;
  double tolerance;
  std::vector<std::string> ops;
};

struct Outcome {
  double residual = 0.0;
  std::string detail;
};

// One unit of work. It produces one outcome per declared entry.
struct Task {
  std::vector<EntrySpec> entries;
  std::function<std::vector<Outcome>(const RunConfig&)> run;
};

std::string group_of(const std::string& name) { return name.substr(0, name.find('.')); }

int circle_k_max(const RunConfig& cfg) { return std::max(24, 3 * cfg.n_max); }

// Finite suites use both default fiducials.
std::vector<CoherentFamilyFinite> families(const Dimension& dim, const RunConfig& cfg) {
  return {CoherentFamilyFinite(FiducialFinite::discrete_gaussian(dim), cfg.theta),
          CoherentFamilyFinite(FiducialFinite::seeded_random(dim, cfg.seed), cfg.theta)};
}

std::vector<FiducialCircle> circle_fiducials(const RunConfig& cfg) {
  return {FiducialCircle::gaussian_momenta(cfg.n_max), FiducialCircle::seeded_random(cfg.n_max, cfg.seed)};
}

template <typename F>
double over_dims(const RunConfig& cfg, F&& f) {
  double worst = 0.0;
  for (int d : cfg.dims) worst = std::max(worst, f(Dimension(d)));
  return worst;
}

template <typename F>
double over_families(const RunConfig& cfg, F&& f) {
  return over_dims(cfg, [&](const Dimension& dim) {
    double worst = 0.0;
    for (const CoherentFamilyFinite& fam : families(dim, cfg)) worst = std::max(worst, f(fam));
    return worst;
  });
}

Task single(EntrySpec spec, std::function<Outcome(const RunConfig&)> f) {
  return {{std::move(spec)}, [f = std::move(f)](const RunConfig& cfg) { return std::vector<Outcome>{f(cfg)}; }};
}

Task simple(std::string name, std::string identity, double tol, std::vector<std::string> ops,
            std::function<double(const RunConfig&)> f) {
  return single({std::move(name), std::move(identity), tol, std::move(ops)},
                [f = std::move(f)](const RunConfig& cfg) { return Outcome{f(cfg), {}}; });
}

std::vector<Task> theta_tasks() {
  std::vector<Task> t;
  t.push_back(simple("theta.identities", "period pi, evenness, quasi-periodicity, direct vs transformed sum", 1e-11,
                     {"theta3"}, [](const RunConfig& c) { return theta_identity_residual(c.theta, c.seed); }));
  t.push_back(simple("theta.derivative", "u-derivative against a Cauchy contour integral", 1e-9, {"theta3_du"},
                     [](const RunConfig& c) { return theta_derivative_residual(c.theta, c.seed + 1); }));
  t.push_back(simple("theta.modular", "Jacobi imaginary transformation tau -> -1/tau", 1e-11, {"jacobi_residual"},
                     [](const RunConfig& c) { return theta_modular_residual(c.theta, c.seed + 2); }));
  return t;
}

std::vector<Task> finite_tasks() {
  std::vector<Task> t;
  t.push_back(simple("finite.clock_shift", "X^d = Z^d = 1, X^b Z^a = Z^a X^b omega(-ab), D = Z^a X^b omega(-ab/2)",
                     1e-11, {"omega", "displacement"},
                     [](const RunConfig& c) { return over_dims(c, clock_shift_residual); }));
  t.push_back(simple("finite.displaced_fourier", "D F D^dagger equals both single-product forms; F unitary, F^4 = 1",
                     1e-11, {"fourier_op", "displaced_fourier"},
                     [](const RunConfig& c) { return over_dims(c, displaced_fourier_residual); }));
  t.push_back(simple("finite.parity_from_displacements", "P(g, e) = (1/d) sum omega(b g - a e) D(a, b) = D(2g, 2e) P(0, 0)",
                     1e-11, {"displaced_parity"},
                     [](const RunConfig& c) { return over_dims(c, displaced_parity_residual); }));
  t.push_back(simple("finite.displacement_frame", "(1/d) sum_{a,b} D|f><f|D^dagger = 1", 1e-11, {"displacement"},
                     [](const RunConfig& c) {
                       return over_dims(c, [&](const Dimension& dim) {
                         return std::max(displacement_frame_residual(random_state(dim, c.seed + 3)),
                                         displacement_frame_residual(FiducialFinite::discrete_gaussian(dim).state()));
                       });
                     }));
  t.push_back(simple("finite.fourier_basis", "F|X;n> = |P;n>, momentum coefficients are F^dagger g, Parseval", 1e-11,
                     {"momentum_coeffs", "fourier_op"}, [](const RunConfig& c) {
                       return over_dims(c, [&](const Dimension& dim) { return fourier_basis_residual(dim, c.seed + 4); });
                     }));
  return t;
}

std::vector<Task> torus_tasks() {
  std::vector<Task> t;
  t.push_back(simple("torus.orthogonality", "cell integral of theta_n(z) theta_m(z*) is delta_nm", 1e-7, {},
                     [](const RunConfig& c) {
                       return over_dims(c, [&](const Dimension& dim) {
                         return max_abs_diff(orthogonality_table(dim, c.torus_quadrature, c.theta),
                                             CMatrix::Identity(dim.d(), dim.d()));
                       });
                     }));
  t.push_back(simple("torus.scalar_product", "cell integral of G1(z) G2(z*) equals sum_m g1_m g2_m", 1e-7,
                     {"torus_rep", "scalar_product_analytic"}, [](const RunConfig& c) {
                       return over_dims(c, [&](const Dimension& dim) {
                         double worst = 0.0;
                         for (std::uint64_t s = 0; s < 3; ++s) {
                           const FiniteState g1 = random_state(dim, c.seed + 10 + 2 * s);
                           const FiniteState g2 = random_state(dim, c.seed + 11 + 2 * s);
                           const Complex exact = (g1.amplitudes().array() * g2.amplitudes().array()).sum();
                           const Complex quad =
                               scalar_product_analytic(torus_rep(g1, c.theta), torus_rep(g2, c.theta), c.torus_quadrature);
                           worst = std::max(worst, std::abs(quad - exact));
                         }
                         return worst;
                       });
                     }));
  t.push_back(simple("torus.coefficients", "position and momentum coefficients recovered from G by quadrature", 1e-7,
                     {"coefficients_from_torus"}, [](const RunConfig& c) {
                       return over_dims(c, [&](const Dimension& dim) {
                         const FiniteState g = random_state(dim, c.seed + 20);
                         const TorusFunction rep = torus_rep(g, c.theta);
                         return std::max(
                             max_abs_diff(coefficients_from_torus(rep, c.torus_quadrature).amplitudes(), g.amplitudes()),
                             max_abs_diff(coefficients_from_torus(rep, c.torus_quadrature, CoefficientBasis::momentum)
                                              .amplitudes(),
                                          momentum_coeffs(g).amplitudes()));
                       });
                     }));
  Task zeros;
  zeros.entries = {
      {"torus.zero_count", "G has exactly d zeros per cell (20 random states per d)", 0.5, {"find_zeros"}},
      {"torus.zero_sum", "sum of the zeros matches the lattice constraint", 1e-6, {"find_zeros"}},
      {"torus.reconstruction", "1 - fidelity of the state rebuilt from its zeros", 1e-7, {"state_from_zeros"}},
  };
  zeros.run = [](const RunConfig& c) {
    ZeroSweep worst;
    for (int d : c.dims) {
      const ZeroSweep s = torus_zero_sweep(Dimension(d), 20, c.seed + 100 * static_cast<std::uint64_t>(d),
                                           c.torus_quadrature, c.theta);
      worst.count = std::max(worst.count, s.count);
      worst.zero_sum = std::max(worst.zero_sum, s.zero_sum);
      worst.reconstruction = std::max(worst.reconstruction, s.reconstruction);
    }
    return std::vector<Outcome>{{worst.count, {}}, {worst.zero_sum, {}}, {worst.reconstruction, {}}};
  };
  t.push_back(std::move(zeros));
  return t;
}

std::vector<Task> coherent_tasks() {
  std::vector<Task> t;
  t.push_back(simple("coherent.evaluation", "displaced-state and shifted-fiducial forms of the coherent functions",
                     1e-8, {"coherent_eval"},
                     [](const RunConfig& c) { return over_families(c, coherent_evaluation_residual); }));
  t.push_back(simple("coherent.fourier_relations", "two-dimensional Fourier and reflection relations between members",
                     1e-8, {"coherent_fourier_relation_residual"},
                     [](const RunConfig& c) { return over_families(c, coherent_fourier_residual); }));
  t.push_back(simple("coherent.kernel", "(1/d) sum over the family equals the theta-sum kernel", 1e-8, {"kernel"},
                     [](const RunConfig& c) { return over_families(c, coherent_kernel_residual); }));
  t.push_back(simple("coherent.kernel_fiducial_independence", "family sums agree for the two default fiducials", 1e-8,
                     {"kernel"}, [](const RunConfig& c) {
                       return over_dims(c, [&](const Dimension& dim) {
                         const auto fams = families(dim, c);
                         const Complex z(0.3, -0.2), w(1.1, 0.5);
                         return std::abs(coherent_kernel_sum(fams[0], z, w) - coherent_kernel_sum(fams[1], z, w));
                       });
                     }));
  t.push_back(simple("coherent.reproduce", "cell integral against the kernel reproduces G", 1e-6,
                     {"reproduce", "torus_rep"}, [](const RunConfig& c) {
                       return over_dims(c, [&](const Dimension& dim) {
                         const TorusFunction g = torus_rep(random_state(dim, c.seed + 30), c.theta);
                         double worst = 0.0;
                         for (Complex z : {Complex(0.7, 0.4), Complex(-0.3, 1.1), Complex(1.9, -0.6)}) {
                           worst = std::max(worst, std::abs(reproduce(g, z, c.torus_quadrature) - g(z)));
                         }
                         return worst;
                       });
                     }));
  t.push_back(simple("coherent.expansions", "G rebuilt from coherent and parity coefficients; parity from coherent table",
                     1e-8, {"coherent_coeffs", "parity_coeffs"}, [](const RunConfig& c) {
                       return over_families(c, [&](const CoherentFamilyFinite& f) {
                         return coherent_expansion_residual(f, c.seed + 31);
                       });
                     }));
  t.push_back(simple("coherent.analysis", "coefficients recovered from G by cell quadrature", 1e-6,
                     {"coherent_coeffs", "parity_coeffs"}, [](const RunConfig& c) {
                       return over_families(c, [&](const CoherentFamilyFinite& f) {
                         return coherent_analysis_residual(f, c.seed + 32, c.torus_quadrature);
                       });
                     }));
  t.push_back(simple("coherent.marginals", "sums over one label collapse to a single theta function", 1e-8,
                     {"marginals"}, [](const RunConfig& c) { return over_families(c, coherent_marginal_residual); }));
  t.push_back(simple("coherent.fourier_fiducial", "family of F|f> against rotated coherent functions at iz", 1e-8,
                     {"fourier_fiducial_eval"},
                     [](const RunConfig& c) { return over_families(c, fourier_fiducial_sweep_residual); }));
  return t;
}

std::vector<Task> circle_tasks() {
  std::vector<Task> t;
  t.push_back(simple("circle.group_law", "D(a,K) D(b,M) = D(a+b,K+M) exp[i(Kb-Ma)/2]; unitarity; adjoint", 1e-8,
                     {"circle_displace"},
                     [](const RunConfig& c) { return circle_group_law_residual(c.n_max, c.seed + 40); }));
  t.push_back(simple("circle.period", "shift of a by 2pi costs (-1)^K; U(a,K)^2 = 1; even and odd K forms", 1e-8,
                     {"circle_displace", "displaced_parity_circle", "circle_parity"},
                     [](const RunConfig& c) { return circle_period_residual(c.n_max, c.seed + 41); }));
  t.push_back(simple("circle.parity", "<M|U0|N> = delta_{M,-N} = average of <M|D(a,2K)|N>", 1e-8, {"circle_parity"},
                     [](const RunConfig& c) { return circle_parity_residual(c.n_max, circle_k_max(c)); }));
  t.push_back(simple("circle.parity_fourier", "U(a,K) as a Fourier transform of D(b,K+2M)", 1e-8,
                     {"displaced_parity_circle"},
                     [](const RunConfig& c) { return circle_parity_fourier_residual(c.n_max, circle_k_max(c)); }));
  t.push_back(simple("circle.resolution", "(1/2pi) sum_K int da |a,K><a,K| = 1", 1e-8, {"resolution_identity_circle"},
                     [](const RunConfig& c) {
                       double worst = 0.0;
                       for (const FiducialCircle& r : circle_fiducials(c)) {
                         worst = std::max(worst, resolution_identity_circle(r, circle_k_max(c), 64));
                       }
                       return worst;
                     }));
  t.push_back(simple("circle.resolution_stride", "stride-2 resolutions with a balanced fiducial, both residues", 1e-8,
                     {"resolution_identity_circle"}, [](const RunConfig& c) {
                       const FiducialCircle s =
                           FiducialCircle::user(balance_stride(random_circle_state(c.n_max, c.seed + 42), 2));
                       return std::max(resolution_identity_circle_stride(s, 2, 0, circle_k_max(c), 64),
                                       resolution_identity_circle_stride(s, 2, 1, circle_k_max(c), 64));
                     }));
  t.push_back(simple("circle.overlap", "coherent overlaps from coefficients against the x-integral; |overlap| <= 1",
                     1e-9, {"coherent_overlap_circle"}, [](const RunConfig& c) {
                       double worst = circle_overlap_residual(FiducialCircle::gaussian_momenta(), c.seed + 43);
                       return std::max(worst, circle_overlap_residual(FiducialCircle::seeded_random(6, c.seed), c.seed + 44));
                     }));
  return t;
}

std::vector<Task> strip_tasks() {
  std::vector<Task> t;
  t.push_back(simple("strip.representation", "closed-form sum against the x-integral; 2pi periodicity", 1e-9,
                     {"strip_rep"}, [](const RunConfig& c) {
                       return strip_representation_residual(random_circle_state(c.n_max, c.seed + 50), c.theta);
                     }));
  t.push_back(simple("strip.scalar_product", "strip integral of Q1 Q2^* equals <q2|q1>", 1e-6,
                     {"strip_scalar_product"}, [](const RunConfig& c) {
                       const CircleState q1 = random_circle_state(c.n_max, c.seed + 51);
                       const CircleState q2 = random_circle_state(c.n_max, c.seed + 52);
                       const Complex quad =
                           strip_scalar_product(strip_rep(q1, c.theta), strip_rep(q2, c.theta), c.strip_quadrature);
                       const StripFunction g = strip_rep(FiducialCircle::gaussian_momenta().state(), c.theta);
                       return std::max(std::abs(quad - inner(q2, q1)),
                                       std::abs(strip_scalar_product(g, g, c.strip_quadrature) - 1.0));
                     }));
  t.push_back(simple("strip.inversion", "q(x) recovered from Q by the strip integral", 1e-6, {"strip_invert"},
                     [](const RunConfig& c) {
                       const CircleState q = random_circle_state(c.n_max, c.seed + 53);
                       const StripFunction Q = strip_rep(q, c.theta);
                       double worst = 0.0;
                       for (double x : circle_grid(7)) {
                         worst = std::max(worst, std::abs(strip_invert(Q, x, c.strip_quadrature) - q.wavefunction(x)));
                       }
                       return worst;
                     }));
  t.push_back(simple("strip.fourier", "two-dimensional Fourier relation between coherent functions", 1e-7,
                     {"strip_coherent_fourier_residual"}, [](const RunConfig& c) {
                       double worst = 0.0;
                       for (const FiducialCircle& r : circle_fiducials(c)) worst = std::max(worst, strip_fourier_residual(r));
                       return worst;
                     }));
  t.push_back(simple("strip.shift_form", "coherent functions from the displaced state and from the shifted fiducial",
                     1e-9, {"strip_coherent_eval"}, [](const RunConfig& c) {
                       double worst = 0.0;
                       for (const FiducialCircle& r : circle_fiducials(c)) {
                         worst = std::max(worst, strip_shift_form_residual(r, c.seed + 54));
                       }
                       return worst;
                     }));
  t.push_back(simple("strip.zeros", "zero count and |Q| at the zeros; D(a,K) moves zeros by a - iK", 1e-8,
                     {"strip_zeros"}, [](const RunConfig& c) { return strip_zero_residual(c.n_max, c.seed + 55); }));
  t.push_back(simple("strip.kernel", "2pi theta3((w* - z)/2; i/pi) against the x-integral; K(-z,-w*) = K(z,w*)", 1e-9,
                     {"kernel_c"}, [](const RunConfig& c) { return strip_kernel_residual(c.theta); }));
  t.push_back(simple("strip.kernel_resolution", "(1/4pi^2) sum_K int da d(z) d(w)^* equals the kernel, both fiducials",
                     1e-7, {"kernel_c", "strip_coherent_eval"}, [](const RunConfig& c) {
                       const Complex z(0.3, 0.1), w(1.2, -0.4);
                       double worst = 0.0;
                       for (const FiducialCircle& r : circle_fiducials(c)) {
                         worst = std::max(worst, kernel_resolution_residual(r, z, w, 40, 96));
                       }
                       return worst;
                     }));
  t.push_back(simple("strip.reproduce", "strip integral against the kernel reproduces Q", 1e-6, {"strip_reproduce"},
                     [](const RunConfig& c) {
                       return strip_reproduce_residual(random_circle_state(c.n_max, c.seed + 56), c.strip_quadrature,
                                                       c.seed + 57);
                     }));
  t.push_back(simple("strip.expansions", "Q rebuilt from coherent and parity coefficients; analysis by quadrature",
                     1e-6, {"strip_coherent_coeffs"}, [](const RunConfig& c) {
                       const CircleState q = random_circle_state(c.n_max, c.seed + 58);
                       double worst = 0.0;
                       for (const FiducialCircle& r : circle_fiducials(c)) {
                         worst = std::max(worst, strip_expansion_residual(q, r, circle_k_max(c), c.strip_quadrature));
                       }
                       return worst;
                     }));
  t.push_back(simple("strip.marginals", "sum over K and integral over a of the coherent functions", 1e-8,
                     {"strip_marginals"}, [](const RunConfig& c) {
                       double worst = 0.0;
                       for (const FiducialCircle& r : circle_fiducials(c)) worst = std::max(worst, strip_marginal_residual(r));
                       return worst;
                     }));
  return t;
}

std::vector<Task> phase_tasks() {
  std::vector<Task> t;
  t.push_back(simple("phase.weyl_finite", "Weyl table from coherent coefficients against <g|D|g>", 1e-9,
                     {"weyl_finite", "weyl_finite_from_coherent"}, [](const RunConfig& c) {
                       return over_dims(c, [&](const Dimension& dim) {
                         const FiniteState g = random_state(dim, c.seed + 60);
                         const WeylTableFinite direct = weyl_finite(g);
                         double worst = std::abs(direct(0, 0) - 1.0);
                         for (const CoherentFamilyFinite& f : families(dim, c)) {
                           worst = std::max(worst, max_abs_diff(weyl_finite_from_coherent(g, f.fiducial()).values, direct.values));
                         }
                         return worst;
                       });
                     }));
  t.push_back(simple("phase.wigner_finite", "Wigner table from coherent coefficients against <g|P|g>", 1e-9,
                     {"wigner_finite", "wigner_finite_from_coherent"}, [](const RunConfig& c) {
                       return over_dims(c, [&](const Dimension& dim) {
                         const FiniteState g = random_state(dim, c.seed + 61);
                         const WignerTableFinite direct = wigner_finite(g);
                         double worst = 0.0;
                         for (const CoherentFamilyFinite& f : families(dim, c)) {
                           worst = std::max(worst, max_abs_diff(wigner_finite_from_coherent(g, f.fiducial()).values, direct.values));
                         }
                         return worst;
                       });
                     }));
  t.push_back(simple("phase.fourier_link_finite", "Wigner table is the symplectic transform of the Weyl table; real",
                     1e-10, {"weyl_finite", "wigner_finite"}, [](const RunConfig& c) {
                       return over_dims(c, [&](const Dimension& dim) {
                         const FiniteState g = random_state(dim, c.seed + 62);
                         const WignerTableFinite direct = wigner_finite(g);
                         return std::max(max_abs_diff(wigner_from_weyl(weyl_finite(g)).values, direct.values),
                                         direct.max_imag());
                       });
                     }));
  t.push_back(simple("phase.weyl_circle", "circle Weyl function from coherent coefficients, two fiducials", 1e-5,
                     {"weyl_circle", "weyl_circle_from_coeffs"}, [](const RunConfig& c) {
                       const FiducialCircle g = FiducialCircle::gaussian_momenta();
                       const FiducialCircle r = FiducialCircle::seeded_random(6, c.seed);
                       double worst = 0.0;
                       for (int n : {std::max(1, c.n_max - 2), c.n_max}) {
                         const CircleState q = random_circle_state(n, c.seed + 63 + n);
                         for (const PhaseLabelCircle p : {PhaseLabelCircle(0.5, 2), PhaseLabelCircle(3.7, -1)}) {
                           const Complex exact = weyl_circle(q, p);
                           worst = std::max(worst, std::abs(weyl_circle_from_coeffs(q, g, p, 3 * n, 48) - exact));
                           worst = std::max(worst, std::abs(weyl_circle_from_coeffs(q, r, p, 3 * n, 48) - exact));
                         }
                       }
                       return worst;
                     }));
  t.push_back(simple("phase.wigner_circle", "circle Wigner function from coherent coefficients", 1e-5,
                     {"wigner_circle", "wigner_circle_from_coeffs"}, [](const RunConfig& c) {
                       const FiducialCircle g = FiducialCircle::gaussian_momenta();
                       double worst = 0.0;
                       for (int n : {std::max(1, c.n_max - 2), c.n_max}) {
                         const CircleState q = random_circle_state(n, c.seed + 70 + n);
                         for (const PhaseLabelCircle p : {PhaseLabelCircle(1.0, 1), PhaseLabelCircle(4.2, -2)}) {
                           worst = std::max(worst, std::abs(wigner_circle_from_coeffs(q, g, p, 20, 48, 48) - wigner_circle(q, p)));
                         }
                       }
                       return worst;
                     }));
  t.push_back(simple("phase.wigner_weyl_link_circle", "circle Wigner function as a transform of the Weyl function",
                     1e-6, {"wigner_circle", "weyl_circle"}, [](const RunConfig& c) {
                       const CircleState q = random_circle_state(c.n_max, c.seed + 80);
                       return std::max(wigner_weyl_link_residual_circle(q, PhaseLabelCircle(0.9, 1), circle_k_max(c), 48),
                                       wigner_weyl_link_residual_circle(q, PhaseLabelCircle(2.5, -2), circle_k_max(c), 48));
                     }));
  t.push_back(single({"phase.wigner_convergence", "coefficient-route Wigner error halves as k_max doubles (ratio)", 0.5,
                      {"wigner_circle_from_coeffs"}},
                     [](const RunConfig& c) {
                       const ConvergenceSweep s =
                           wigner_convergence_sweep(random_circle_state(std::max(1, c.n_max - 2), c.seed + 81),
                                                    FiducialCircle::gaussian_momenta(), PhaseLabelCircle(1.0, 1));
                       std::ostringstream detail;
                       detail << std::setprecision(3);
                       for (std::size_t j = 0; j < s.k_max.size(); ++j) {
                         detail << (j ? "; " : "") << "k_max " << s.k_max[j] << ": " << s.error[j];
                       }
                       return Outcome{s.worst_ratio, detail.str()};
                     }));
  return t;
}

std::vector<Task> io_tasks() {
  std::vector<Task> t;
  t.push_back(simple("io.export_grid", "torus grid row count; |Q| = 2pi on the strip for |N = 0>", 1e-12,
                     {"export_grid"}, [](const RunConfig& c) {
                       const auto dir = std::filesystem::temp_directory_path();
                       const std::string tag = std::to_string(c.seed) + "_" +
                                               std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
                       const auto state = dir / ("thetaphase_verify_" + tag + ".json");
                       const auto csv = dir / ("thetaphase_verify_" + tag + ".csv");
                       double worst = 0.0;
                       const auto rows = [&] {
                         std::istringstream in(read_text_file(csv));
                         std::vector<std::string> out;
                         for (std::string line; std::getline(in, line);) out.push_back(line);
                         return out;
                       };
                       write_text_file(state, to_json(momentum_state(Dimension(3), 0)).dump());
                       export_grid(GridKind::torus, state, "64x64", csv, c.theta);
                       worst = std::abs(static_cast<double>(rows().size()) - 4097.0);
                       write_text_file(state, to_json(CircleState::momentum(0, 0)).dump());
                       export_grid(GridKind::strip, state, "16x9", csv, c.theta);
                       const auto lines = rows();
                       for (std::size_t k = 1; k < lines.size(); ++k) {
                         const double g_abs = std::stod(lines[k].substr(lines[k].rfind(',') + 1));
                         worst = std::max(worst, std::abs(g_abs - 2.0 * kPi));
                       }
                       std::filesystem::remove(state);
                       std::filesystem::remove(csv);
                       return worst;
                     }));
  return t;
}

std::vector<Task> all_tasks() {
  std::vector<Task> all;
  for (auto make : {theta_tasks, finite_tasks, torus_tasks, coherent_tasks, circle_tasks, strip_tasks, phase_tasks,
                    io_tasks}) {
    for (Task& t : make()) all.push_back(std::move(t));
  }
  return all;
}

bool selected(const std::string& name, const std::vector<std::string>& filters) {
  if (filters.empty()) return true;
  return std::any_of(filters.begin(), filters.end(),
                     [&](const std::string& f) { return name == f || name.rfind(f + ".", 0) == 0; });
}

std::vector<VerifyEntry> execute(const Task& task, const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Outcome> outcomes;
  std::string error;
  try {
    outcomes = task.run(cfg);
    if (outcomes.size() != task.entries.size()) throw std::logic_error("task produced the wrong number of outcomes");
  } catch (const std::exception& e) {
    error = e.what();
    outcomes.assign(task.entries.size(), Outcome{std::numeric_limits<double>::infinity(), {}});
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::vector<VerifyEntry> out;
  for (std::size_t k = 0; k < task.entries.size(); ++k) {
    const EntrySpec& spec = task.entries[k];
    VerifyEntry e;
    e.name = spec.name;
    e.identity = spec.identity;
    e.ops = spec.ops;
    e.residual = outcomes[k].residual;
    e.detail = outcomes[k].detail;
    e.error = error;
    e.tolerance = cfg.tolerance_for(spec.name, spec.tolerance);
    // NaN compares false, so it fails as it should
    e.passed = error.empty() && e.residual < e.tolerance;
    e.runtime_ms = ms;
    out.push_back(std::move(e));
  }
  return out;
}

std::set<std::string> known_tolerance_keys() {
  std::set<std::string> keys{"all"};
  for (const std::string& n : verify_entry_names()) {
    keys.insert(n);
    keys.insert(group_of(n));
  }
  return keys;
}

[[noreturn]] void config_error(const std::string& source, const std::string& what) {
  throw ConfigError(source + ": " + what);
}

double as_real(const toml::node& node, const std::string& source, const std::string& key) {
  if (node.is_number()) return node.value<double>().value();
  config_error(source, "'" + key + "' must be a number");
}

int as_int(const toml::node& node, const std::string& source, const std::string& key) {
  if (!node.is_integer()) config_error(source, "'" + key + "' must be an integer");
  const auto v = node.value<std::int64_t>().value();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    config_error(source, "'" + key + "' is out of range");
  }
  return static_cast<int>(v);
}

const toml::table& as_table(const toml::node& node, const std::string& source, const std::string& key) {
  if (!node.is_table()) config_error(source, "'" + key + "' must be a table");
  return *node.as_table();
}

}  // namespace

void RunConfig::validate() const {
  for (const auto& [key, tol] : tolerances) {
    if (std::isnan(tol) || tol < 0.0) throw ConfigError("tolerance '" + key + "' must be >= 0");
  }
  if (torus_quadrature.n_real < 2 || torus_quadrature.n_imag < 2) throw ConfigError("torus quadrature needs >= 2 points per axis");
  if (strip_quadrature.n_real < 2 || strip_quadrature.n_imag < 2) throw ConfigError("strip quadrature needs >= 2 points per axis");
  try {
    theta.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (dims.empty()) throw ConfigError("dims must not be empty");
  for (int d : dims) {
    if (d < 3 || d % 2 == 0) throw ConfigError("dims: " + std::to_string(d) + " is not an odd integer >= 3");
  }
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
}

double RunConfig::tolerance_for(const std::string& entry, double fallback) const {
  for (const std::string& key : {entry, group_of(entry), std::string("all")}) {
    if (auto it = tolerances.find(key); it != tolerances.end()) return it->second;
  }
  return fallback;
}

OutputFormat parse_output_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw ConfigError("format must be 'csv' or 'json', got '" + name + "'");
}

RunConfig parse_run_config(const std::string& toml_text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(toml_text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << e.description() << " (line " << e.source().begin.line << ", column " << e.source().begin.column << ")";
    config_error(source, msg.str());
  }

  RunConfig cfg;
    for (const auto& [k, node] : root) {
    const std::string key(k.str());
    if (key == "seed") {
      if (!node.is_integer() || node.value<std::int64_t>().value() < 0) config_error(source, "'seed' must be a non-negative integer");
      cfg.seed = static_cast<std::uint64_t>(node.value<std::int64_t>().value());
    } else if (key == "n_max") {
      cfg.n_max = as_int(node, source, key);
    } else if (key == "format") {
      const auto v = node.value<std::string>();
      if (!v) config_error(source, "'format' must be a string");
      cfg.format = parse_output_format(*v);
    } else if (key == "parallel") {
      if (!node.is_boolean()) config_error(source, "'parallel' must be a boolean");
      cfg.parallel = node.value<bool>().value();
    } else if (key == "dims") {
      if (!node.is_array()) config_error(source, "'dims' must be an array of integers");
      cfg.dims.clear();
      for (const toml::node& d : *node.as_array()) cfg.dims.push_back(as_int(d, source, "dims"));
    } else if (key == "tolerances") {
      for (const auto& [tk, tn] : as_table(node, source, key)) {
        const std::string name(tk.str());
        if (!is_tolerance_key(name)) config_error(source, "unknown tolerance key '" + name + "'");
        cfg.tolerances[name] = as_real(tn, source, "tolerances." + name);
      }
    } else if (key == "quadrature") {
      for (const auto& [qk, qn] : as_table(node, source, key)) {
        const std::string name(qk.str());
        const int v = as_int(qn, source, "quadrature." + name);
        if (name == "torus") {
          cfg.torus_quadrature = {v, v};
        } else if (name == "torus_real") {
          cfg.torus_quadrature.n_real = v;
        } else if (name == "torus_imag") {
          cfg.torus_quadrature.n_imag = v;
        } else if (name == "strip_real") {
          cfg.strip_quadrature.n_real = v;
        } else if (name == "strip_imag") {
          cfg.strip_quadrature.n_imag = v;
        } else {
          config_error(source, "unknown quadrature key '" + name + "'");
        }
      }
    } else if (key == "theta") {
      for (const auto& [tk, tn] : as_table(node, source, key)) {
        const std::string name(tk.str());
        if (name == "eps") {
          cfg.theta.eps = as_real(tn, source, "theta.eps");
        } else if (name == "max_terms") {
          cfg.theta.max_terms = as_int(tn, source, "theta.max_terms");
        } else if (name == "transform_threshold") {
          cfg.theta.transform_threshold = as_real(tn, source, "theta.transform_threshold");
        } else {
          config_error(source, "unknown theta key '" + name + "'");
        }
      }
    } else {
      config_error(source, "unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_run_config(text, path.string());
}

RunConfig run_config_from_environment() {
  const char* path = std::getenv("THETA_PHASE_CONFIG");
  if (path == nullptr || *path == '\0') return {};
  return load_run_config(path);
}

bool VerifyReport::passed() const {
  return !entries.empty() && std::all_of(entries.begin(), entries.end(), [](const VerifyEntry& e) { return e.passed; });
}

nlohmann::json VerifyReport::to_json(bool with_timing) const {
  nlohmann::json list = nlohmann::json::array();
  double total_ms = 0.0;
  for (const VerifyEntry& e : entries) {
    nlohmann::json j{{"name", e.name},           {"identity", e.identity}, {"residual", e.residual},
                     {"tolerance", e.tolerance}, {"passed", e.passed},     {"ops", e.ops}};
    if (!std::isfinite(e.residual)) j["residual"] = nullptr;
    if (!e.detail.empty()) j["detail"] = e.detail;
    if (!e.error.empty()) j["error"] = e.error;
    if (with_timing) j["runtime_ms"] = e.runtime_ms;
    total_ms += e.runtime_ms;
    list.push_back(std::move(j));
  }
  nlohmann::json out{{"passed", passed()}, {"seed", seed}, {"entries", std::move(list)}};
  if (with_timing) out["runtime_ms"] = total_ms;
  return out;
}

std::string VerifyReport::to_csv(bool with_timing) const {
  std::ostringstream out;
  out << "name,residual,tolerance,passed" << (with_timing ? ",runtime_ms" : "") << '\n' << std::setprecision(17);
  for (const VerifyEntry& e : entries) {
    out << e.name << ',' << e.residual << ',' << e.tolerance << ',' << (e.passed ? "true" : "false");
    if (with_timing) out << ',' << e.runtime_ms;
    out << '\n';
  }
  return out.str();
}

std::string VerifyReport::render(OutputFormat format, bool with_timing) const {
  return format == OutputFormat::json ? to_json(with_timing).dump(2) + "\n" : to_csv(with_timing);
}

std::vector<std::string> verify_entry_names() {
  std::vector<std::string> out;
  for (const Task& t : all_tasks()) {
    for (const EntrySpec& e : t.entries) out.push_back(e.name);
  }
  return out;
}

double default_tolerance(const std::string& entry) {
  for (const Task& t : all_tasks()) {
    for (const EntrySpec& e : t.entries) {
      if (e.name == entry) return e.tolerance;
    }
  }
  throw InvalidArgument("unknown verify entry '" + entry + "'");
}

bool is_tolerance_key(const std::string& key) { return known_tolerance_keys().count(key) > 0; }

VerifyReport run_verify(const RunConfig& cfg, const std::vector<std::string>& filters) {
  cfg.validate();
  std::vector<Task> tasks;
  for (Task& t : all_tasks()) {
    const bool any = std::any_of(t.entries.begin(), t.entries.end(), [&](const EntrySpec& e) { return selected(e.name, filters); });
    if (any) tasks.push_back(std::move(t));
  }

  std::vector<std::vector<VerifyEntry>> results(tasks.size());
  if (cfg.parallel) {
    std::vector<std::future<std::vector<VerifyEntry>>> futures;
    for (const Task& t : tasks) futures.push_back(std::async(std::launch::async, [&t, &cfg] { return execute(t, cfg); }));
    for (std::size_t k = 0; k < futures.size(); ++k) results[k] = futures[k].get();
  } else {
    for (std::size_t k = 0; k < tasks.size(); ++k) results[k] = execute(tasks[k], cfg);
  }

  VerifyReport report;
  report.seed = cfg.seed;
  for (auto& group : results) {
    for (VerifyEntry& e : group) {
      if (selected(e.name, filters)) report.entries.push_back(std::move(e));
    }
  }
  return report;
}

}  // namespace thetaphase
