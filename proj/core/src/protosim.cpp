#include "qkdwcp/protosim.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qkdwcp/attack.hpp"
#include "qkdwcp/qmath.hpp"

namespace qkdwcp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct ArmMeans {
  double m0, m1;
};

// Mean photon numbers at the two detector arms for a given Bob basis,
// before channel/detector thinning. Misalignment leaks a fraction e_align
// of each arm's intensity into the other arm.
ArmMeans arm_means(const TwoModeState& s, int bob_basis, double c_scale,
                   double e_align) {
  const Complex i{0.0, 1.0};
  const Complex r = c_scale * s.ref;
  const Complex g = c_scale * s.sig;
  Complex a0, a1;
  if (bob_basis == 0) {  // x basis
    a0 = (r + g) / std::sqrt(2.0);
    a1 = (r - g) / std::sqrt(2.0);
  } else {  // y basis
    a0 = (r - i * g) / std::sqrt(2.0);
    a1 = (r + i * g) / std::sqrt(2.0);
  }
  const double m0 = std::norm(a0);
  const double m1 = std::norm(a1);
  return {(1.0 - e_align) * m0 + e_align * m1,
          e_align * m0 + (1.0 - e_align) * m1};
}

int thinned_count(std::mt19937_64& rng, double mean, double keep_prob) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<int> pois(mean);
  const int n = pois(rng);
  if (n == 0) return 0;
  std::binomial_distribution<int> bin(n, keep_prob);
  return bin(rng);
}

int resolve_double_click(std::mt19937_64& rng, DoubleClickPolicy policy) {
  switch (policy) {
    case DoubleClickPolicy::FixedZero: return 0;
    case DoubleClickPolicy::FixedOne: return 1;
    case DoubleClickPolicy::RandomBit: break;
  }
  return static_cast<int>(rng() & 1u);
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t round_index) {
  return splitmix64(seed ^ ((round_index + 1) * 0x9e3779b97f4a7c15ULL));
}

RoundTally run_protocol(std::uint64_t n_rounds, const SourceVariant& source,
                        const ChannelParams& chan, const DetectorParams& det,
                        EveStrategy eve, std::uint64_t seed,
                        DoubleClickPolicy policy) {
  if (n_rounds < 1) throw std::invalid_argument("run_protocol: n_rounds < 1");
  const SignalSet set = make_signal_set(source);
  const double t = chan.transmission();

  // bright reference: Bob's asymmetric splitter passes a fraction c of the
  // signal and matches the attenuated reference to it
  double c_scale = 1.0;
  if (source.kind == SourceKind::BrightRef) {
    const double a = std::abs(source.alpha);
    const double b = std::abs(source.beta);
    c_scale = std::sqrt(b * b / (a * a + b * b));
  }
  // for BrightRef, the interferometer sees equal-strength pulses c*alpha;
  // model that by scaling the unmodulated-reference signal set
  const SignalSet eff_set =
      source.kind == SourceKind::BrightRef
          ? make_signal_set(SourceVariant::unmodulated(source.alpha))
          : set;

  const double mu = 2.0 * std::norm(source.alpha);
  double p_conclusive[2] = {0.0, 0.0};
  if (eve == EveStrategy::UkdInterceptResend) {
    p_conclusive[0] = conclusive_prob(0, mu);
    p_conclusive[1] = conclusive_prob(1, mu);
  }

  RoundTally tally;
  tally.sent = n_rounds;
  for (std::uint64_t round = 0; round < n_rounds; ++round) {
    std::mt19937_64 rng(substream_seed(seed, round));
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    const int alice_basis = static_cast<int>(rng() & 1u);
    const int alice_bit = static_cast<int>(rng() & 1u);
    const int bob_basis = static_cast<int>(rng() & 1u);
    const auto label = static_cast<SignalLabel>(2 * alice_basis + alice_bit);

    int sig0 = 0, sig1 = 0;  // signal-caused detections per arm
    if (eve == EveStrategy::UkdInterceptResend) {
      // Eve at Bob's doorstep: conclusive -> lossless single-photon resend,
      // inconclusive -> vacuum
      if (uni(rng) < p_conclusive[alice_bit]) {
        const Eigen::Vector2cd r = resend_state(alice_bit);
        // Bob basis 0 measures Z, basis 1 measures X on the resent qubit
        double p_outcome1;
        if (bob_basis == 0) {
          p_outcome1 = std::norm(r(1));
        } else {
          const double inv_s2 = 1.0 / std::sqrt(2.0);
          p_outcome1 = std::norm(inv_s2 * r(0) - inv_s2 * r(1));
        }
        const int arm = uni(rng) < p_outcome1 ? 1 : 0;
        if (uni(rng) < det.xi) (arm == 0 ? sig0 : sig1) = 1;
      }
    } else {
      const ArmMeans m = arm_means(eff_set.state(label), bob_basis, c_scale,
                                   det.e_align);
      sig0 = thinned_count(rng, m.m0, t * det.xi);
      sig1 = thinned_count(rng, m.m1, t * det.xi);
    }

    const bool click0 = sig0 > 0 || uni(rng) < det.d0;
    const bool click1 = sig1 > 0 || uni(rng) < det.d1;
    if (!click0 && !click1) continue;

    ++tally.detected;
    int bob_bit;
    if (click0 && click1) {
      ++tally.double_clicks;
      bob_bit = resolve_double_click(rng, policy);
    } else {
      bob_bit = click1 ? 1 : 0;
    }

    if (bob_basis != alice_basis) continue;
    ++tally.sifted;
    const bool error = bob_bit != alice_bit;
    if (alice_basis == 0) {
      ++tally.sifted_x;
      if (error) ++tally.errors_x;
    } else {
      ++tally.sifted_y;
      if (error) ++tally.errors_y;
    }
  }
  return tally;
}

ErrorEstimate estimate_error_rates(const RoundTally& tally) {
  if (tally.sifted_x == 0 || tally.sifted_y == 0) {
    throw std::invalid_argument("estimate_error_rates: empty basis stratum");
  }
  const auto proportion = [](std::uint64_t k, std::uint64_t n) {
    const double p = static_cast<double>(k) / static_cast<double>(n);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return std::pair<double, double>(p, se);
  };
  const auto [dx, sx] = proportion(tally.errors_x, tally.sifted_x);
  const auto [dy, sy] = proportion(tally.errors_y, tally.sifted_y);
  const auto [q, sq] = proportion(tally.detected, tally.sent);
  return {dx, sx, dy, sy, q, sq};
}

BlochBoundResult bloch_bound_check(std::uint64_t n, const BlochState& state,
                                   std::uint64_t seed) {
  if (n < 1000) throw std::invalid_argument("bloch_bound_check: n < 1000");
  const double r2 = state.x * state.x + state.y * state.y + state.z * state.z;
  if (r2 > 1.0 + tol::structural) {
    throw std::invalid_argument("bloch_bound_check: Bloch vector outside sphere");
  }
  std::mt19937_64 rng(splitmix64(seed));
  std::binomial_distribution<std::uint64_t> bx(n, (1.0 - state.x) / 2.0);
  std::binomial_distribution<std::uint64_t> bz(n, (1.0 - state.z) / 2.0);
  const double gx = static_cast<double>(bx(rng)) / static_cast<double>(n);
  const double gz = static_cast<double>(bz(rng)) / static_cast<double>(n);
  const double lhs =
      (1.0 - 2.0 * gx) * (1.0 - 2.0 * gx) + (1.0 - 2.0 * gz) * (1.0 - 2.0 * gz);
  const double eps =
      5.0 * std::sqrt(std::log(static_cast<double>(n)) / static_cast<double>(n));
  return {lhs <= 1.0 + eps, lhs, eps, gx, gz};
}

}  // namespace qkdwcp
