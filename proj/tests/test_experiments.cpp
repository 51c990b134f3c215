// Copyright 2026 The Holonomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <cmath>
#include <numbers>

#include "holonomy/experiments.hpp"
#include "holonomy/sampling.hpp"

using namespace holonomy;
using namespace holonomy::experiments;
using linalg::ComplexMatrix;

namespace {

constexpr double kPi = std::numbers::pi;

model::DriveConfig drive(double gamma, bool rwa, double f0 = 1.0, double f1 = 1.0) {
  return {.f0e = f0, .f1e = f1, .gamma = gamma, .rwa = rwa};
}

// Midpoint quadrature of |<psi|U|psi>|^2 over the sphere in (cos theta, phi).
double sphere_average_overlap(const ComplexMatrix& u) {
  const int n = 400;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = -1.0 + (i + 0.5) * 2.0 / n;
    const double theta = std::acos(z);
    for (int j = 0; j < n; ++j) {
      const double phi = (j + 0.5) * 2.0 * kPi / n;
      const Complex a = std::cos(theta / 2);
      const Complex b = std::polar(std::sin(theta / 2), phi);
      const Complex ua = u(0, 0) * a + u(0, 1) * b;
      const Complex ub = u(1, 0) * a + u(1, 1) * b;
      sum += std::norm(std::conj(a) * ua + std::conj(b) * ub);
    }
  }
  return sum / (n * n);
}

void check_stats(const FidelityStats& s) {
  CHECK(s.min <= s.mean);
  CHECK(s.mean <= s.max);
  CHECK(s.mean_infidelity() >= -1e-9);
  CHECK(s.mean_infidelity() <= 1.0);
}

}  // namespace

TEST_CASE("gate fidelity") {
  const auto plus = sampling::bloch_to_state({1, 0, 0});
  const auto s = gates::embed_qubit_unitary(gates::ideal_unitary(gates::catalog("S")), 4);
  const auto target = linalg::apply(s, plus);
  CHECK(std::abs(gate_fidelity(linalg::outer(target, target), s, plus) - 1.0) < 1e-15);
  CHECK(std::abs(gate_fidelity(linalg::outer(plus, plus), s, plus) - 0.5) < 1e-15);

  ComplexMatrix mixed(4, 4);
  mixed(0, 0) = 0.5;
  mixed(1, 1) = 0.5;
  for (const char* name : {"X", "H", "Z", "S"}) {
    auto u = gates::embed_qubit_unitary(gates::ideal_unitary(gates::catalog(name)), 4);
    for (const auto& p : sampling::fibonacci_nodes(5).points) {
      CHECK(std::abs(gate_fidelity(mixed, u, sampling::bloch_to_state(p)) - 0.5) < 1e-15);
    }
  }
  // global phase of the target does not matter
  auto phased = Complex(0, 1) * s;
  CHECK(std::abs(gate_fidelity(linalg::outer(target, target), phased, plus) - 1.0) < 1e-15);
}

TEST_CASE("fidelity statistics") {
  std::vector<double> f{0.9, 0.95, 1.0};
  auto s = FidelityStats::from_samples(f);
  CHECK(s.min == 0.9);
  CHECK(s.max == 1.0);
  CHECK(s.mean == doctest::Approx(0.95));
  CHECK(s.n_states == 3);
  CHECK(s.max_infidelity() == doctest::Approx(0.1));
  CHECK_THROWS_AS(FidelityStats::from_samples({}), std::invalid_argument);
}

TEST_CASE("ideal holonomic gates") {
  ExperimentOptions opts;
  for (const char* name : {"X", "H", "Z", "S"}) {
    auto s = average_fidelity(gates::catalog(name), drive(0.0, true), 0.2, opts);
    CHECK(s.n_states == 100);
    CHECK(s.mean >= 1.0 - 1e-6);
    check_stats(s);
  }
  opts.n_states = 1;
  auto one = average_fidelity(gates::catalog("H"), drive(1e-3, false), 0.2, opts);
  CHECK(one.min == one.mean);
  CHECK(one.mean == one.max);
}

TEST_CASE("basis propagation matches one trajectory per state") {
  ExperimentOptions basis;
  basis.n_states = 30;
  ExperimentOptions each = basis;
  each.propagation = InputPropagation::kPerState;
  for (const char* name : {"X", "S"}) {
    auto g = gates::catalog(name);
    const auto d = drive(2e-3, false, 1.0, 1.7);
    auto a = average_fidelity(g, d, 0.3, basis);
    auto b = average_fidelity(g, d, 0.3, each);
    CHECK(std::abs(a.mean - b.mean) < 1e-8);
    CHECK(std::abs(a.min - b.min) < 1e-8);
    CHECK(std::abs(a.max - b.max) < 1e-8);
  }
}

TEST_CASE("strong decay freezes the state") {
  // gamma >> beta: the bright component is Zeno-blocked and the gate acts as the identity.
  ExperimentOptions opts;
  auto s = average_fidelity(gates::catalog("S"), drive(50.0, false), 0.01, opts);
  CHECK(std::abs(s.mean_infidelity() - 1.0 / 3.0) < 0.01);
}

TEST_CASE("asymptotic infidelity") {
  const model::LoopParams loop{1.0, 0.3};
  CHECK(std::abs(asymptotic_infidelity(gates::double_loop("I", loop, loop), 100)) < 1e-14);

  for (const char* name : {"S", "X", "H", "Z"}) {
    auto g = gates::catalog(name);
    const double oracle = 1.0 - sphere_average_overlap(gates::ideal_unitary(g));
    CHECK(std::abs(asymptotic_infidelity(g, 1000) - oracle) < 0.01);
  }
  CHECK(std::abs(asymptotic_infidelity(gates::catalog("S"), 1000) - 1.0 / 3.0) < 0.01);
  CHECK(std::abs(asymptotic_infidelity(gates::catalog("X"), 1000) - 2.0 / 3.0) < 0.01);
  CHECK_THROWS_AS(asymptotic_infidelity(gates::catalog("X"), 0), std::invalid_argument);
}

TEST_CASE("grids") {
  auto l = linspace(1.0, 2.0, 5);
  CHECK(l.back() == 2.0);
  CHECK(l[2] == 1.5);
  auto g = logspace(1e-2, 1.0, 3);
  CHECK(g.front() == 1e-2);
  CHECK(std::abs(g[1] - 0.1) < 1e-15);
  CHECK(g.back() == 1.0);
  CHECK(is_log_spaced(logspace(0.1, 10, 7)));
  CHECK_FALSE(is_log_spaced(linspace(0.1, 10, 7)));
  CHECK(logspace(0.5, 0.5, 1).size() == 1);

  SweepResult r;
  r.x = {1, 2, 2};
  r.full.resize(3);
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}

TEST_CASE("beta sweep") {
  ExperimentOptions opts;
  auto gate = gates::catalog("S");
  const std::vector<double> betas = logspace(1e-2, 1.0, 20);
  auto r = sweep_beta(gate, {1e-4, 1e-3}, betas, opts);
  r.validate();
  REQUIRE(r.full.size() == 40);
  REQUIRE(r.rwa.size() == 40);
  for (const auto& s : r.full) check_stats(s);
  for (const auto& s : r.rwa) check_stats(s);

  // RWA and full model overlap for long pulses.
  const auto& lo_full = r.full[r.index(0, 1)];
  const auto& lo_rwa = r.rwa[r.index(0, 1)];
  CHECK(std::abs(lo_full.mean_infidelity() - lo_rwa.mean_infidelity()) <= 0.1 * lo_rwa.mean_infidelity());

  // interior minimum at gamma/f_i = 1e-3
  double best = 1.0;
  for (std::size_t i = 1; i + 1 < betas.size(); ++i) best = std::min(best, r.full[r.index(i, 1)].mean_infidelity());
  CHECK(best < r.full[r.index(0, 1)].mean_infidelity());
  CHECK(best < r.full[r.index(betas.size() - 1, 1)].mean_infidelity());

  // short pulses: decay no longer matters
  const double a = r.full[r.index(betas.size() - 1, 0)].mean_infidelity();
  const double b = r.full[r.index(betas.size() - 1, 1)].mean_infidelity();
  CHECK(std::abs(a - b) <= 0.05 * std::max(a, b));

  // the reference column is the same computation with rwa = true
  auto direct = average_fidelity(gate, drive(1e-3, true), betas[7], opts);
  CHECK(std::abs(direct.mean - r.rwa[r.index(7, 1)].mean) <= 1e-6);

  CHECK_THROWS_AS(sweep_beta(gate, {}, betas, opts), std::invalid_argument);
  CHECK_THROWS_AS(sweep_beta(gate, {1e-3}, {0.2, 0.1}, opts), std::invalid_argument);
}

TEST_CASE("self-convergence under a tighter tolerance") {
  ExperimentOptions opts;
  ExperimentOptions tight = opts;
  tight.integrator.rel_tol = opts.integrator.rel_tol / 2;
  auto gate = gates::catalog("S");
  for (double beta : {0.05, 0.23, 1.0}) {
    const double a = average_fidelity(gate, drive(1e-3, false), beta, opts).mean_infidelity();
    const double b = average_fidelity(gate, drive(1e-3, false), beta, tight).mean_infidelity();
    CHECK(std::abs(a - b) < 0.1 * a);
  }
}

TEST_CASE("beta optimum") {
  auto toy = find_beta_opt([](double b) { return (b - 0.12) * (b - 0.12); }, 0.03, 0.3, 28);
  CHECK(std::abs(toy.beta - 0.12) < 1e-12);
  auto flat = find_beta_opt([](double) { return 1.0; }, 0.03, 0.3, 10);
  CHECK(flat.beta == 0.03);
  CHECK_THROWS_AS(find_beta_opt([](double b) { return b; }, 0.3, 0.03, 10), std::invalid_argument);
  CHECK_THROWS_AS(find_beta_opt([](double b) { return b; }, 0.03, 0.3, 1), std::invalid_argument);

  ExperimentOptions opts;
  auto gate = gates::catalog("S");
  auto strong = find_beta_opt(gate, 1e-3, 0.03, 0.3, 100, opts);
  auto weak = find_beta_opt(gate, 1e-4, 0.03, 0.3, 100, opts);
  CHECK(strong.beta > weak.beta);
  for (double edge : {0.03, 0.3}) {
    CHECK(strong.infidelity <= average_fidelity(gate, drive(1e-3, false), edge, opts).mean_infidelity());
  }
}

TEST_CASE("frequency grid") {
  ExperimentOptions opts;
  opts.n_states = 1000;
  const std::vector<double> f{3.0, 6.0, 9.0};
  auto x = frequency_grid(gates::catalog("X"), f, f, 0.02, opts);
  REQUIRE(x.grid.full.size() == 9);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::abs(x.grid.full[x.grid.index(i, j)].mean - x.grid.full[x.grid.index(j, i)].mean) <= 1e-6);
    }
    CHECK(x.ridge[i].f1e == x.ridge[i].f0e);
  }

  auto z = frequency_grid(gates::catalog("Z"), f, f, 0.02, ExperimentOptions{});
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 1; i < 3; ++i) {
      CHECK(std::abs(z.grid.full[z.grid.index(i, j)].mean - z.grid.full[z.grid.index(0, j)].mean) <= 1e-9);
    }
  }
}

TEST_CASE("frequency ratio sweep") {
  ExperimentOptions opts;
  opts.dt_over_beta = 20.0;
  auto x = frequency_ratio_sweep(gates::catalog("X"), {0.9, 1.0, 1.1}, 10.0, 1e-3, opts);
  CHECK(x.full[1].mean_infidelity() < x.full[0].mean_infidelity());
  CHECK(x.full[1].mean_infidelity() < x.full[2].mean_infidelity());

  auto z = frequency_ratio_sweep(gates::catalog("Z"), logspace(0.1, 10.0, 10), 10.0, 1e-3, opts);
  for (std::size_t i = 1; i < z.full.size(); ++i) {
    CHECK(z.full[i].mean_infidelity() <= z.full[i - 1].mean_infidelity());
  }

  auto single = frequency_ratio_sweep(gates::catalog("X"), {1.0}, 10.0, 1e-3, opts);
  CHECK(single.full.size() == 1);
  CHECK(single.series() == 1);
}

TEST_CASE("controlled-Z") {
  ExperimentOptions opts;
  auto cz = gates::catalog("CZ");
  auto ideal = average_fidelity(cz, drive(0.0, true), 0.2, opts);
  CHECK(ideal.n_states == 4);
  CHECK(ideal.min >= 1.0 - 1e-6);
  CHECK(std::abs(asymptotic_infidelity(cz, 4) - 0.75) < 1e-14);
}
