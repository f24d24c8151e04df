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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "qvar/circuit.hpp"
#include "qvar/rng.hpp"
#include "qvar/simulator.hpp"
#include "qvar/state_vector.hpp"

namespace qv {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// The basis-state configurations whose total probability is being estimated.
struct GoodState {
  std::vector<BitConstraint> constraints;

  void validate(int num_qubits) const {
    if (constraints.empty()) throw std::invalid_argument("GoodState: no constraints");
    std::uint64_t seen = 0;
    for (const BitConstraint& c : constraints) {
      if (c.qubit < 0 || c.qubit >= num_qubits) {
        throw std::invalid_argument("GoodState: constraint qubit out of range");
      }
      const std::uint64_t bit = std::uint64_t{1} << c.qubit;
      if (seen & bit) throw std::invalid_argument("GoodState: duplicate constraint qubit");
      seen |= bit;
    }
  }

  std::vector<Control> as_controls() const {
    std::vector<Control> out;
    out.reserve(constraints.size());
    for (const BitConstraint& c : constraints) out.push_back({c.qubit, c.value});
    return out;
  }
};

enum class EstimationMethod { Exact, Canonical, Mlae };

inline const char* method_name(EstimationMethod m) {
  switch (m) {
    case EstimationMethod::Exact: return "exact";
    case EstimationMethod::Canonical: return "canonical";
    case EstimationMethod::Mlae: return "mlae";
  }
  return "unknown";
}

struct AmplitudeEstimate {
  double a_hat = 0.0;
  EstimationMethod method = EstimationMethod::Exact;
  int s = 0;                   // canonical only
  std::vector<int> schedule;   // mlae only
  std::uint64_t shots = 0;
  std::uint64_t oracle_calls = 0;
};

/// Shared knobs for the estimators. `shots` means measurement draws for the
/// canonical method and shots per schedule round for MLAE; 0 selects the
/// exact-distribution readout (canonical) or the exact-probability likelihood
/// (MLAE), which separates algorithmic error from sampling noise.
struct EstimatorConfig {
  EstimationMethod method = EstimationMethod::Exact;
  int s = 6;
  std::uint64_t shots = 0;
  std::vector<int> schedule;  // MLAE only; empty selects the default below
  std::uint64_t seed = 0;
};

inline const std::vector<int>& default_mlae_schedule() {
  static const std::vector<int> schedule{0, 1, 2, 4, 8};
  return schedule;
}

/// Grover-power schedule used when an MLAE run is parameterized by a qubit
/// budget s instead of an explicit schedule: s rounds with powers
/// {0, 1, 2, ..., 2^(s-2)}.
inline std::vector<int> mlae_schedule_for(int s) {
  if (s < 1) throw std::invalid_argument("mlae_schedule_for: s must be >= 1");
  std::vector<int> schedule{0};
  for (int j = 0; j + 2 <= s; ++j) schedule.push_back(1 << j);
  return schedule;
}

/// The Grover operator Q = -A S0 A^dagger S_good. On the two-dimensional
/// subspace spanned by the good and bad components of A|0>, Q rotates by
/// 2*theta_a with sin^2(theta_a) = a, so the good-state probability of
/// Q^k A|0> is sin^2((2k+1) theta_a).
inline Circuit grover_operator(const Circuit& a_circuit, const GoodState& good) {
  good.validate(a_circuit.num_qubits);
  Circuit q(a_circuit.num_qubits);
  q.registers = a_circuit.registers;
  q.add(Gate::phase_flip(good.as_controls()));  // sign flip on good states
  q.append(adjoint(a_circuit));
  std::vector<Control> zeros;
  zeros.reserve(static_cast<std::size_t>(a_circuit.num_qubits));
  for (int qubit = 0; qubit < a_circuit.num_qubits; ++qubit) zeros.push_back({qubit, false});
  q.add(Gate::phase_flip(std::move(zeros)));  // sign flip on |0...0>
  q.append(a_circuit);
  q.add(Gate::phase_flip({}));  // global -1, so eigenphases are exactly +/-2 theta
  return q;
}

/// Quantum Fourier transform over the given qubits (qubits[0] carries the
/// least significant bit of the transformed value).
inline Circuit qft_circuit(std::span<const int> qubits, int num_qubits) {
  Circuit c(num_qubits);
  const int s = static_cast<int>(qubits.size());
  for (int i = s - 1; i >= 0; --i) {
    c.add(Gate::h(qubits[static_cast<std::size_t>(i)]));
    for (int j = i - 1; j >= 0; --j) {
      const double angle = kPi / static_cast<double>(std::uint64_t{1} << (i - j));
      c.add(Gate::phase(angle, {{qubits[static_cast<std::size_t>(j)], true},
                                {qubits[static_cast<std::size_t>(i)], true}}));
    }
  }
  for (int k = 0; k < s / 2; ++k) {
    c.add(Gate::swap(qubits[static_cast<std::size_t>(k)],
                     qubits[static_cast<std::size_t>(s - 1 - k)]));
  }
  return c;
}

/// The full textbook phase-estimation circuit for canonical AE: s phase
/// qubits appended after A's qubits, controlled Grover powers, inverse QFT.
/// Exercised directly in tests; the estimator below reads the same outcome
/// distribution through the exact two-dimensional reduction instead, which
/// keeps large instances tractable.
inline Circuit phase_estimation_circuit(const Circuit& a_circuit, const GoodState& good, int s) {
  if (s < 1) throw std::invalid_argument("phase_estimation_circuit: s must be >= 1");
  const Circuit q = grover_operator(a_circuit, good);
  Circuit pe(a_circuit.num_qubits + s);
  pe.registers = a_circuit.registers;
  pe.add_register("phase", {a_circuit.num_qubits, s});
  pe.append(a_circuit);
  std::vector<int> phase_qubits;
  for (int k = 0; k < s; ++k) {
    const int pq = a_circuit.num_qubits + k;
    phase_qubits.push_back(pq);
    pe.add(Gate::h(pq));
    pe.append(controlled(repeated(q, 1 << k), pq));
  }
  pe.append(adjoint(qft_circuit(phase_qubits, pe.num_qubits)));
  return pe;
}

namespace detail {

/// Phase-estimation kernel: probability mass that a register of size T reads
/// y when the true phase fraction is delta away from y/T. Periodic in delta
/// with period 1; equals 1 at delta = 0.
inline double pe_kernel(double delta, std::uint64_t t_size) {
  const double r = delta - std::round(delta);
  const double denom = std::sin(kPi * r);
  if (denom == 0.0) return 1.0;
  const double num = std::sin(kPi * static_cast<double>(t_size) * r);
  const double ratio = num / (static_cast<double>(t_size) * denom);
  return ratio * ratio;
}

inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace detail

/// Exact outcome distribution of canonical AE with s readout qubits over a
/// preparation whose true good-state probability is `a`. A|0> splits evenly
/// between the two rotation eigenvectors of Q (eigenphases +/- 2 theta), so
/// the register measures a half/half mixture of the two phase-estimation
/// kernels. This equals the distribution of the explicit circuit exactly (a
/// property pinned by tests).
inline std::vector<double> canonical_ae_distribution(double a, int s) {
  if (s < 1) throw std::invalid_argument("canonical_ae_distribution: s must be >= 1");
  const std::uint64_t t_size = std::uint64_t{1} << s;
  const double theta = std::asin(std::sqrt(detail::clamp01(a)));
  const double phi = theta / kPi;
  std::vector<double> prob(t_size);
  for (std::uint64_t y = 0; y < t_size; ++y) {
    const double frac = static_cast<double>(y) / static_cast<double>(t_size);
    prob[y] = 0.5 * (detail::pe_kernel(phi - frac, t_size) +
                     detail::pe_kernel(phi + frac, t_size));
  }
  return prob;
}

inline double good_state_probability(const StateVector& state, const GoodState& good) {
  return marginal_probability(state, good.constraints);
}

/// Test oracle and "shots = infinity" readout: the exact good-state marginal
/// of A|0>, bypassing amplitude estimation entirely.
inline AmplitudeEstimate exact_amplitude(const Circuit& a_circuit, const GoodState& good) {
  good.validate(a_circuit.num_qubits);
  const StateVector state = run_circuit(a_circuit);
  AmplitudeEstimate est;
  est.a_hat = detail::clamp01(good_state_probability(state, good));
  est.method = EstimationMethod::Exact;
  est.oracle_calls = 1;
  return est;
}

/// Canonical (phase estimation) amplitude estimation. With shots = 0 the
/// reported outcome y is the mode of the exact distribution; with shots > 0
/// it is the modal value of `shots` sampled measurements. The estimate is
/// a_hat = sin^2(pi y / 2^s) either way.
inline AmplitudeEstimate canonical_ae(const Circuit& a_circuit, const GoodState& good, int s,
                                      std::uint64_t shots, std::uint64_t seed) {
  if (s < 1) throw std::invalid_argument("canonical_ae: s must be >= 1");
  const AmplitudeEstimate exact = exact_amplitude(a_circuit, good);
  const std::vector<double> prob = canonical_ae_distribution(exact.a_hat, s);
  const std::uint64_t t_size = prob.size();

  std::uint64_t y = 0;
  if (shots == 0) {
    y = static_cast<std::uint64_t>(
        std::max_element(prob.begin(), prob.end()) - prob.begin());
  } else {
    std::vector<double> cdf(prob.size());
    double acc = 0.0;
    for (std::size_t v = 0; v < prob.size(); ++v) {
      acc += prob[v];
      cdf[v] = acc;
    }
    cdf.back() = std::max(cdf.back(), 1.0);
    std::vector<std::uint64_t> counts(prob.size(), 0);
    Rng rng(seed);
    for (std::uint64_t k = 0; k < shots; ++k) {
      const double u = rng.uniform();
      const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
      ++counts[std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()),
                                     counts.size() - 1)];
    }
    y = static_cast<std::uint64_t>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
  }

  const double angle = kPi * static_cast<double>(y) / static_cast<double>(t_size);
  const double sin_val = std::sin(angle);
  AmplitudeEstimate est;
  est.a_hat = detail::clamp01(sin_val * sin_val);
  est.method = EstimationMethod::Canonical;
  est.s = s;
  est.shots = shots;
  est.oracle_calls = t_size;  // 2^s - 1 Grover applications plus one preparation
  return est;
}

namespace detail {

/// Log-likelihood of MLAE round data at rotation angle theta. `hits` may be
/// fractional (exact-probability mode).
inline double mlae_log_likelihood(double theta, std::span<const int> schedule,
                                  std::span<const double> hits, double rounds_weight) {
  double total = 0.0;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const double amplified = (2.0 * schedule[k] + 1.0) * theta;
    const double sin_sq = std::sin(amplified) * std::sin(amplified);
    const double cos_sq = 1.0 - sin_sq;
    constexpr double kFloor = 1e-300;
    total += hits[k] * std::log(std::max(sin_sq, kFloor)) +
             (rounds_weight - hits[k]) * std::log(std::max(cos_sq, kFloor));
  }
  return total;
}

}  // namespace detail

/// Maximum-likelihood amplitude estimation over a schedule of Grover powers.
/// Round k observes the good-state outcome of Q^{m_k} A|0>, Binomial with
/// success probability sin^2((2 m_k + 1) theta). The likelihood over
/// theta in [0, pi/2] is maximized on a dense grid refined by golden-section
/// search. shots_per_round = 0 scores the exact probabilities instead of
/// sampled counts.
inline AmplitudeEstimate mlae(const Circuit& a_circuit, const GoodState& good,
                              std::span<const int> schedule, std::uint64_t shots_per_round,
                              std::uint64_t seed) {
  if (schedule.empty()) throw std::invalid_argument("mlae: empty schedule");
  for (int m : schedule) {
    if (m < 0) throw std::invalid_argument("mlae: schedule entries must be >= 0");
  }
  const AmplitudeEstimate exact = exact_amplitude(a_circuit, good);
  const double theta_true = std::asin(std::sqrt(exact.a_hat));

  const double weight = shots_per_round == 0 ? 1.0 : static_cast<double>(shots_per_round);
  std::vector<double> hits(schedule.size());
  Rng rng(seed);
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const double amplified = (2.0 * schedule[k] + 1.0) * theta_true;
    const double p = detail::clamp01(std::sin(amplified) * std::sin(amplified));
    if (shots_per_round == 0) {
      hits[k] = p;
    } else {
      std::uint64_t h = 0;
      for (std::uint64_t shot = 0; shot < shots_per_round; ++shot) {
        if (rng.uniform() < p) ++h;
      }
      hits[k] = static_cast<double>(h);
    }
  }

  AmplitudeEstimate est;
  est.method = EstimationMethod::Mlae;
  est.schedule.assign(schedule.begin(), schedule.end());
  est.shots = shots_per_round;
  est.oracle_calls = 0;
  for (int m : schedule) {
    est.oracle_calls += (2 * static_cast<std::uint64_t>(m) + 1) *
                        std::max<std::uint64_t>(shots_per_round, 1);
  }

  // Boundary cases have a closed-form maximizer: all-miss data peaks at
  // theta = 0 and all-hit data at theta = pi/2 (every 2m+1 is odd).
  bool all_zero = true;
  bool all_full = true;
  for (double h : hits) {
    if (h != 0.0) all_zero = false;
    if (h != weight) all_full = false;
  }
  if (all_zero) {
    est.a_hat = 0.0;
    return est;
  }
  if (all_full) {
    est.a_hat = 1.0;
    return est;
  }

  constexpr double kEps = 1e-9;  // keeps the logs finite at the boundary
  const double lo = kEps;
  const double hi = kPi / 2 - kEps;
  constexpr int kGridPoints = 4096;
  int best = 0;
  double best_ll = -std::numeric_limits<double>::infinity();
  std::vector<double> grid(kGridPoints);
  for (int g = 0; g < kGridPoints; ++g) {
    grid[static_cast<std::size_t>(g)] =
        lo + (hi - lo) * static_cast<double>(g) / (kGridPoints - 1);
    const double ll = detail::mlae_log_likelihood(grid[static_cast<std::size_t>(g)], schedule,
                                                  hits, weight);
    if (ll > best_ll) {
      best_ll = ll;
      best = g;
    }
  }
  double a = grid[static_cast<std::size_t>(std::max(best - 1, 0))];
  double b = grid[static_cast<std::size_t>(std::min(best + 1, kGridPoints - 1))];
  constexpr double kGolden = 0.61803398874989484820458683436564;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = detail::mlae_log_likelihood(x1, schedule, hits, weight);
  double f2 = detail::mlae_log_likelihood(x2, schedule, hits, weight);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = detail::mlae_log_likelihood(x2, schedule, hits, weight);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = detail::mlae_log_likelihood(x1, schedule, hits, weight);
    }
  }
  const double theta_hat = 0.5 * (a + b);
  est.a_hat = detail::clamp01(std::sin(theta_hat) * std::sin(theta_hat));
  return est;
}

/// Dispatch on EstimatorConfig; the common entry point used by the variance
/// and outlier pipelines.
inline AmplitudeEstimate estimate_amplitude(const Circuit& a_circuit, const GoodState& good,
                                            const EstimatorConfig& config) {
  switch (config.method) {
    case EstimationMethod::Exact:
      return exact_amplitude(a_circuit, good);
    case EstimationMethod::Canonical:
      return canonical_ae(a_circuit, good, config.s, config.shots, config.seed);
    case EstimationMethod::Mlae: {
      const std::vector<int>& schedule =
          config.schedule.empty() ? default_mlae_schedule() : config.schedule;
      return mlae(a_circuit, good, schedule, config.shots, config.seed);
    }
  }
  throw std::invalid_argument("estimate_amplitude: unknown method");
}

}  // namespace qv
