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

// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "thetaphase/verify.hpp"

namespace tp = thetaphase;

namespace {

struct Bound {
  std::string entry;
  double limit;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Bound> bounds;
  std::optional<double> max_seconds;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool run_criterion(const Criterion& c) {
  std::vector<std::string> names;
  for (const Bound& b : c.bounds) names.push_back(b.entry);

  const auto t0 = std::chrono::steady_clock::now();
  const tp::VerifyReport report = tp::run_verify(tp::RunConfig{}, names);
  const double elapsed = seconds_since(t0);

  bool ok = report.entries.size() == c.bounds.size();
  std::ostringstream notes;
  for (const Bound& b : c.bounds) {
    const tp::VerifyEntry* e = nullptr;
    for (const tp::VerifyEntry& candidate : report.entries) {
      if (candidate.name == b.entry) e = &candidate;
    }
    if (e == nullptr) {
      ok = false;
      notes << "; " << b.entry << " missing";
      continue;
    }
    const bool within = e->error.empty() && e->residual < b.limit;
    ok = ok && within;
    notes << "; " << e->name << " " << fmt(e->residual) << (within ? " < " : " >= ") << fmt(b.limit);
    if (!e->detail.empty()) notes << " (" << e->detail << ")";
    if (!e->error.empty()) notes << " error: " << e->error;
  }
  notes << "; " << fmt(elapsed) << " s";
  if (c.max_seconds) {
    const bool fast = elapsed < *c.max_seconds;
    ok = ok && fast;
    notes << (fast ? " < " : " >= ") << fmt(*c.max_seconds) << " s";
  }
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << notes.str() << std::endl;
  return ok;
}

// Two full runs with the default configuration must pass and agree byte for byte.
bool run_end_to_end() {
  const tp::RunConfig cfg;
  const auto t0 = std::chrono::steady_clock::now();
  const tp::VerifyReport first = tp::run_verify(cfg);
  const double elapsed = seconds_since(t0);
  const tp::VerifyReport second = tp::run_verify(cfg);

  const std::string a = first.render(cfg.format);
  const std::string b = second.render(cfg.format);
  int failed = 0;
  std::string failed_names;
  for (const tp::VerifyEntry& e : first.entries) {
    if (!e.passed) {
      ++failed;
      failed_names += " " + e.name;
    }
  }
  const bool identical = a == b;
  const bool fast = elapsed < 120.0;
  const bool ok = first.passed() && identical && fast;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion 10: default verify run; "
            << first.entries.size() - failed << "/" << first.entries.size() << " entries passed"
            << (failed ? " (failed:" + failed_names + ")" : "") << "; rerun "
            << (identical ? "byte-identical" : "differs") << "; " << fmt(elapsed) << " s"
            << (fast ? " < " : " >= ") << "120 s" << std::endl;
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1,
       "theta periodicity, quasi-periodicity, evenness and modular transform",
       {{"theta.identities", 1e-11}, {"theta.modular", 1e-11}},
       1.0},
      {2,
       "operator algebra for d in {3, 5, 7}",
       {{"finite.clock_shift", 1e-11},
        {"finite.displaced_fourier", 1e-11},
        {"finite.parity_from_displacements", 1e-11},
        {"finite.displacement_frame", 1e-11}},
       1.0},
      {3,
       "torus orthogonality and scalar product on a 96x96 rule",
       {{"torus.orthogonality", 1e-7}, {"torus.scalar_product", 1e-7}},
       10.0},
      {4,
       "torus zeros: count, zero-sum constraint, reconstruction from zeros",
       {{"torus.zero_count", 0.5}, {"torus.zero_sum", 1e-6}, {"torus.reconstruction", 1e-7}},
       60.0},
      {5,
       "finite coherent families, both default fiducials",
       {{"coherent.evaluation", 1e-8},
        {"coherent.fourier_relations", 1e-8},
        {"coherent.kernel", 1e-8},
        {"coherent.kernel_fiducial_independence", 1e-8},
        {"coherent.reproduce", 1e-6},
        {"coherent.expansions", 1e-8},
        {"coherent.analysis", 1e-6},
        {"coherent.marginals", 1e-8}},
       std::nullopt},
      {6, "Fourier-transformed fiducial, full label sweep", {{"coherent.fourier_fiducial", 1e-8}}, std::nullopt},
      {7,
       "circle group law, period, parity, parity Fourier form, resolutions incl. stride 2",
       {{"circle.group_law", 1e-8},
        {"circle.period", 1e-8},
        {"circle.parity", 1e-8},
        {"circle.parity_fourier", 1e-8},
        {"circle.resolution", 1e-8},
        {"circle.resolution_stride", 1e-8}},
       20.0},
      {8,
       "strip coherent functions, kernel, reproduction, zeros, marginals",
       {{"strip.shift_form", 1e-9},
        {"strip.kernel", 1e-9},
        {"strip.reproduce", 1e-6},
        {"strip.zeros", 1e-8},
        {"strip.marginals", 1e-8}},
       std::nullopt},
      {9,
       "Weyl and Wigner cross-validation, finite and circle, with k_max sweep",
       {{"phase.weyl_finite", 1e-9},
        {"phase.wigner_finite", 1e-9},
        {"phase.weyl_circle", 1e-5},
        {"phase.wigner_circle", 1e-5},
        {"phase.wigner_convergence", 1.0}},
       std::nullopt},
  };

  bool all = true;
  for (const Criterion& c : criteria) all = run_criterion(c) && all;
  all = run_end_to_end() && all;
  return all ? 0 : 1;
}
