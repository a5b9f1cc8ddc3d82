#pragma once

#include <cstdint>

#include "qkdwcp/detection.hpp"
#include "qkdwcp/source.hpp"

namespace qkdwcp {

struct RoundTally {
  std::uint64_t sent = 0;
  std::uint64_t detected = 0;
  std::uint64_t sifted = 0;
  std::uint64_t double_clicks = 0;
  std::uint64_t errors_x = 0;
  std::uint64_t sifted_x = 0;
  std::uint64_t errors_y = 0;
  std::uint64_t sifted_y = 0;

  bool operator==(const RoundTally&) const = default;
};

enum class EveStrategy { None, UkdInterceptResend };

enum class DoubleClickPolicy { RandomBit, FixedZero, FixedOne };

// RNG identity: round i uses an independent std::mt19937_64 seeded with
// splitmix64(seed ^ (i+1) * 0x9e3779b97f4a7c15). Parallel evaluation over
// rounds therefore reproduces the serial tally exactly.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t round_index);

/// Monte Carlo BB84: source -> optional Eve -> lossy channel -> threshold
/// detectors -> sifting. Deterministic given the seed.
RoundTally run_protocol(std::uint64_t n_rounds, const SourceVariant& source,
                        const ChannelParams& chan, const DetectorParams& det,
                        EveStrategy eve, std::uint64_t seed,
                        DoubleClickPolicy policy = DoubleClickPolicy::RandomBit);

struct ErrorEstimate {
  double delta_x, se_x;
  double delta_y, se_y;
  double q_hat, se_q;
};

/// Sample proportions with binomial standard errors. Throws on empty strata.
ErrorEstimate estimate_error_rates(const RoundTally& tally);

// Bloch vector of a single-qubit state family, |r| <= 1.
struct BlochState {
  double x = 0.0, y = 0.0, z = 0.0;
};

struct BlochBoundResult {
  bool ok;
  double lhs;      // (1-2 gamma_x)^2 + (1-2 gamma_z)^2
  double epsilon;  // statistical slack 5 sqrt(log n / n)
  double gamma_x, gamma_z;
};

/// I.i.d. Monte Carlo check of the Bloch-sphere bound: samples 2n qubits,
/// measures n in x and n in z, verifies lhs <= 1 + epsilon.
BlochBoundResult bloch_bound_check(std::uint64_t n, const BlochState& state,
                                   std::uint64_t seed);

}  // namespace qkdwcp
