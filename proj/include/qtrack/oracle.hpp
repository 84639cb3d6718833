#pragma once

#include <cstdint>
#include <vector>

#include "qtrack/channel.hpp"

namespace qtrack {

// SplitMix64 (Steele, Lea, Flood 2014). Sub-streams for sample i are seeded
// with mix(seed, i), so every sample is a pure function of (seed, index) and
// results do not depend on thread count or iteration order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]
  double uniform() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

  // standard normal via Box-Muller
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = 2.0 * M_PI * uniform();
    cached_ = r * std::sin(phi);
    have_cached_ = true;
    return r * std::cos(phi);
  }

  static std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
    return mix.next();
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

struct OracleConfig {
  std::uint64_t seed = 1;
  int n_samples = 1000;
  int n_climb_iters = 40;   // coordinate sweeps per restart
  double climb_step = 1.0;  // initial bracket half-width multiplier
};

struct OracleResult {
  double best_value;
  QuantumChannel best_channel;
  double closed_form;     // fidelity reported by solve()
  double gap;             // closed_form - best_value
  double best_sampled;    // best over random channels alone
  double best_climbed;    // best over hill climbing alone
};

// Haar-style random channel: an 8x2 complex Gaussian matrix orthonormalized
// into an isometry from the qubit into qubit (x) 4-dim environment, with the
// environment traced out.
QuantumChannel random_cptp(SplitMix64& rng);

// Figure of merit of one random channel per sample index; element i depends
// only on (seed, i). OpenMP-parallel with a serial reference for testing.
std::vector<double> oracle_sample_values(const ValidatedProblem& p, std::uint64_t seed,
                                         int n_samples);
std::vector<double> oracle_sample_values_serial(const ValidatedProblem& p,
                                                std::uint64_t seed, int n_samples);

// Best of random sampling plus 20 hill-climb restarts over the extreme-map
// family (rotation angles, mu2, mu3 with mu1 = mu2 mu3 and the extremal s1).
OracleResult oracle_max(const ValidatedProblem& p, const OracleConfig& cfg);

}  // namespace qtrack
