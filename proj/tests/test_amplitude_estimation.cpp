// Copyright 2026 The qvar developers
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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qvar/amplitude_estimation.hpp"
#include "qvar/rng.hpp"
#include "qvar/simulator.hpp"

using namespace qv;

namespace {

Circuit random_prep(Rng& rng, int n) {
  std::vector<double> amps(std::size_t{1} << n);
  for (double& a : amps) a = rng.uniform(-1.0, 1.0);
  Circuit c(n);
  c.add(amplitude_encode(amps));
  return c;
}

/// DFT matrix column check: QFT|j> must equal (1/sqrt(N)) sum_k w^{jk} |k>.
void require_qft_convention(int s) {
  std::vector<int> qubits(static_cast<std::size_t>(s));
  for (int k = 0; k < s; ++k) qubits[static_cast<std::size_t>(k)] = k;
  const Circuit qft = qft_circuit(qubits, s);
  const std::size_t dim = std::size_t{1} << s;
  for (std::size_t j = 0; j < dim; ++j) {
    StateVector in = StateVector::zero(s);
    in.amplitudes[0] = 0.0;
    in.amplitudes[j] = 1.0;
    const StateVector out = run_circuit(qft, std::move(in));
    for (std::size_t k = 0; k < dim; ++k) {
      const double angle = 2.0 * kPi * static_cast<double>(j * k) / static_cast<double>(dim);
      const std::complex<double> want{std::cos(angle) / std::sqrt(static_cast<double>(dim)),
                                      std::sin(angle) / std::sqrt(static_cast<double>(dim))};
      REQUIRE(std::abs(out.amplitudes[k] - want) < 1e-12);
    }
  }
}

}  // namespace

TEST_CASE("qft circuit implements the DFT with qubit 0 as the LSB") {
  require_qft_convention(2);
  require_qft_convention(3);
}

TEST_CASE("grover operator rotates by 2 theta") {
  SECTION("one application on the single-qubit uniform preparation") {
    Circuit h(1);
    h.add(Gate::h(0));
    const GoodState good{{{0, true}}};
    const Circuit q = grover_operator(h, good);
    StateVector s = run_circuit(h);
    s = run_circuit(q, std::move(s));
    // theta = pi/4; sin^2(3 pi/4) = 1/2.
    REQUIRE(good_state_probability(s, good) == Catch::Approx(0.5).margin(1e-12));
  }
  SECTION("an unreachable good state stays unreachable") {
    Circuit id(2);
    id.add(Gate::x(1));
    const GoodState good{{{0, true}, {1, false}}};  // amplitude zero
    const Circuit q = grover_operator(id, good);
    StateVector s = run_circuit(id);
    for (int k = 0; k < 3; ++k) s = run_circuit(q, std::move(s));
    REQUIRE(good_state_probability(s, good) == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("powers follow sin^2((2k+1) theta) on random preparations") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(2));
      const Circuit prep = random_prep(rng, n);
      const GoodState good{{{0, true}, {1, false}}};
      const double a = exact_amplitude(prep, good).a_hat;
      const double theta = std::asin(std::sqrt(a));
      const Circuit q = grover_operator(prep, good);
      StateVector s = run_circuit(prep);
      for (int k = 1; k <= 8; ++k) {
        s = run_circuit(q, std::move(s));
        const double want = std::pow(std::sin((2 * k + 1) * theta), 2);
        REQUIRE(good_state_probability(s, good) == Catch::Approx(want).margin(1e-9));
      }
    }
  }
}

TEST_CASE("the analytic canonical readout equals the full phase-estimation circuit") {
  Rng rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    const Circuit prep = random_prep(rng, 2);
    const GoodState good{{{0, true}}};
    const double a = exact_amplitude(prep, good).a_hat;
    for (int s = 3; s <= 4; ++s) {
      const Circuit pe = phase_estimation_circuit(prep, good, s);
      REQUIRE(pe.num_qubits == prep.num_qubits + s);
      const StateVector state = run_circuit(pe);
      const std::vector<double> analytic = canonical_ae_distribution(a, s);
      double total = 0.0;
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << s); ++y) {
        std::vector<BitConstraint> cons;
        for (int k = 0; k < s; ++k) {
          cons.push_back({prep.num_qubits + k, ((y >> k) & 1) != 0});
        }
        const double circuit_prob = marginal_probability(state, cons);
        REQUIRE(circuit_prob == Catch::Approx(analytic[y]).margin(1e-12));
        total += analytic[y];
      }
      REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
    }
  }
}

TEST_CASE("canonical amplitude estimation") {
  const GoodState good{{{0, true}}};
  SECTION("a = 0 reads exactly zero") {
    Circuit id(1);  // |0>, good state |1> unreachable
    const AmplitudeEstimate est = canonical_ae(id, good, 4, 0, 0);
    REQUIRE(est.a_hat == 0.0);
  }
  SECTION("a = 1/2 with s = 3 is exactly representable") {
    Circuit h(1);
    h.add(Gate::h(0));
    const std::vector<double> dist = canonical_ae_distribution(0.5, 3);
    REQUIRE(dist[2] == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(dist[6] == Catch::Approx(0.5).margin(1e-12));
    const AmplitudeEstimate est = canonical_ae(h, good, 3, 0, 0);
    REQUIRE(est.a_hat == Catch::Approx(0.5).margin(1e-15));
    REQUIRE(est.oracle_calls == 8);
  }
  SECTION("a = 1 reads exactly one") {
    Circuit x(1);
    x.add(Gate::x(0));
    const AmplitudeEstimate est = canonical_ae(x, good, 4, 0, 0);
    REQUIRE(est.a_hat == Catch::Approx(1.0).margin(1e-15));
  }
  SECTION("sampled mode is deterministic per seed and near the exact mode") {
    Rng rng(29);
    const Circuit prep = random_prep(rng, 2);
    const AmplitudeEstimate a1 = canonical_ae(prep, good, 5, 64, 123);
    const AmplitudeEstimate a2 = canonical_ae(prep, good, 5, 64, 123);
    REQUIRE(a1.a_hat == a2.a_hat);
  }
  SECTION("median exact-readout error shrinks as s grows") {
    std::vector<double> medians;
    for (int s = 3; s <= 6; ++s) {
      Rng rng(31);
      std::vector<double> errors;
      for (int trial = 0; trial < 20; ++trial) {
        const Circuit prep = random_prep(rng, 2);
        const double a = exact_amplitude(prep, good).a_hat;
        errors.push_back(std::abs(canonical_ae(prep, good, s, 0, 0).a_hat - a));
      }
      std::sort(errors.begin(), errors.end());
      medians.push_back(0.5 * (errors[9] + errors[10]));
    }
    for (std::size_t k = 1; k < medians.size(); ++k) {
      REQUIRE(medians[k] <= medians[k - 1] + 1e-15);
    }
  }
  SECTION("s < 1 is rejected") {
    Circuit h(1);
    h.add(Gate::h(0));
    REQUIRE_THROWS_AS(canonical_ae(h, good, 0, 0, 0), std::invalid_argument);
  }
}

TEST_CASE("maximum-likelihood amplitude estimation") {
  const GoodState good{{{0, true}}};
  SECTION("a = 0 gives exactly zero for any schedule") {
    Circuit id(1);
    const AmplitudeEstimate est = mlae(id, good, std::vector<int>{0, 1, 3}, 0, 0);
    REQUIRE(est.a_hat == 0.0);
  }
  SECTION("a = 1 with schedule {0} gives exactly one") {
    Circuit x(1);
    x.add(Gate::x(0));
    const AmplitudeEstimate est = mlae(x, good, std::vector<int>{0}, 32, 5);
    REQUIRE(est.a_hat == 1.0);
  }
  SECTION("exact-probability likelihood localizes a = 0.3 within 1e-3") {
    const std::vector<double> v{std::sqrt(0.7), std::sqrt(0.3)};
    Circuit prep(1);
    prep.add(amplitude_encode(v));
    const AmplitudeEstimate est = mlae(prep, good, default_mlae_schedule(), 0, 0);
    REQUIRE(std::abs(est.a_hat - 0.3) < 1e-3);
    REQUIRE(est.oracle_calls == 35);  // sum of (2m+1) over {0,1,2,4,8}
  }
  SECTION("sampled mode is deterministic per seed") {
    Rng rng(43);
    const Circuit prep = random_prep(rng, 2);
    const AmplitudeEstimate a1 = mlae(prep, good, default_mlae_schedule(), 64, 9);
    const AmplitudeEstimate a2 = mlae(prep, good, default_mlae_schedule(), 64, 9);
    REQUIRE(a1.a_hat == a2.a_hat);
    REQUIRE(a1.oracle_calls == 35 * 64);
  }
  SECTION("an empty schedule is rejected") {
    Circuit h(1);
    h.add(Gate::h(0));
    REQUIRE_THROWS_AS(mlae(h, good, std::vector<int>{}, 0, 0), std::invalid_argument);
  }
  SECTION("beats the canonical readout at matched oracle budget") {
    const GoodState g{{{0, true}}};
    Rng rng(47);
    std::vector<double> canonical_err;
    std::vector<double> mlae_err;
    std::uint64_t mlae_calls = 0;
    std::uint64_t canonical_calls = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const Circuit prep = random_prep(rng, 2);
      const double a = exact_amplitude(prep, g).a_hat;
      const AmplitudeEstimate ce = canonical_ae(prep, g, 6, 0, 0);
      const AmplitudeEstimate me = mlae(prep, g, default_mlae_schedule(), 0, 0);
      canonical_err.push_back(std::abs(ce.a_hat - a));
      mlae_err.push_back(std::abs(me.a_hat - a));
      canonical_calls = ce.oracle_calls;
      mlae_calls = me.oracle_calls;
    }
    REQUIRE(mlae_calls <= canonical_calls);
    std::sort(canonical_err.begin(), canonical_err.end());
    std::sort(mlae_err.begin(), mlae_err.end());
    REQUIRE(0.5 * (mlae_err[9] + mlae_err[10]) <= 0.5 * (canonical_err[9] + canonical_err[10]));
  }
}

TEST_CASE("exact amplitude readout") {
  SECTION("H gives 1/2") {
    Circuit h(1);
    h.add(Gate::h(0));
    REQUIRE(exact_amplitude(h, GoodState{{{0, true}}}).a_hat == Catch::Approx(0.5));
  }
  SECTION("StatePrep([3,4]) puts 0.64 on |1>") {
    Circuit prep(1);
    prep.add(amplitude_encode(std::vector<double>{3.0, 4.0}));
    REQUIRE(exact_amplitude(prep, GoodState{{{0, true}}}).a_hat ==
            Catch::Approx(0.64).margin(1e-12));
  }
  SECTION("a full constraint recovers the squared amplitude") {
    Rng rng(53);
    const Circuit prep = random_prep(rng, 3);
    const StateVector s = run_circuit(prep);
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.dim(); ++i) {
      if (std::norm(s.amplitudes[i]) > std::norm(s.amplitudes[best])) best = i;
    }
    GoodState good;
    for (int q = 0; q < 3; ++q) good.constraints.push_back({q, ((best >> q) & 1) != 0});
    REQUIRE(exact_amplitude(prep, good).a_hat ==
            Catch::Approx(std::norm(s.amplitudes[best])).margin(1e-12));
  }
}

TEST_CASE("estimates always land in [0, 1]") {
  Rng rng(59);
  const GoodState good{{{0, true}}};
  for (int trial = 0; trial < 5; ++trial) {
    const Circuit prep = random_prep(rng, 2);
    for (const auto method : {EstimationMethod::Exact, EstimationMethod::Canonical,
                              EstimationMethod::Mlae}) {
      EstimatorConfig cfg;
      cfg.method = method;
      cfg.s = 4;
      cfg.shots = trial % 2 == 0 ? 0 : 32;
      cfg.seed = rng.next_u64();
      const AmplitudeEstimate est = estimate_amplitude(prep, good, cfg);
      REQUIRE(est.a_hat >= 0.0);
      REQUIRE(est.a_hat <= 1.0);
    }
  }
}
