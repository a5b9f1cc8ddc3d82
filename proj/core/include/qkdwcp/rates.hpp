#pragma once

#include <iosfwd>
#include <vector>

#include "qkdwcp/detection.hpp"

namespace qkdwcp {

struct RateInputs {
  double Q;            // detection probability per pulse
  double e;            // observed bit error rate
  double delta_prime;  // loss-amplified coin imbalance
  double f_ec = 1.22;  // error-correction inefficiency f(e)
  double epsilon = 0.0;
};

struct RatePoint {
  double distance_km;
  double mu;
  double Q;
  double e;
  double delta_prime;
  double e_ph;
  double G;  // key bits per pulse, clamped at 0
  bool secure;
};

enum class RateSource { Nonrandom, Random, Bright };

struct PhaseError {
  double value;    // unclamped bound
  bool saturated;  // true when value > 1/2
  double clamped() const { return saturated ? 0.5 : value; }
};

/// Closed-form phase-error bound
/// delta + 4 D'(1-D')(1-2 delta) + 4(1-2 D') sqrt(D'(1-D') delta(1-delta)) + eps.
PhaseError phase_error_closed(double delta, double delta_prime, double epsilon);

/// Independent implementation: bisects the equality
/// 1 - 2 D' = sqrt(delta delta') + sqrt((1-delta)(1-delta')) for the largest
/// admissible delta', saturating at 1/2. Agrees with the closed form.
double phase_error_numeric(double delta, double delta_prime);

/// Asymptotic sifted-key rate 1 - H(delta_x) - H(delta_y').
double rate_R(double delta_x, double delta_y, double delta_prime);

struct Gain {
  double G;
  double e_ph;  // phase-error rate used (e_1 for the random-phase formula)
  bool secure;
};

/// Key bits per pulse for the nonrandom-phase source,
/// G = Q/2 (1 - f(e) H(e) - H(e_ph)).
Gain gain_nonrandom(const RateInputs& in);

/// Key bits per pulse for the phase-randomized source (no decoy states),
/// G = 1/2 (Q1 (1 - H(e1)) - Q f(e) H(e)) with the multiphoton fraction
/// pessimistically tagged.
Gain gain_random(double Q, double e, double mu, double f_ec);

struct MuOpt {
  double mu;
  double G;
  bool secure;
};

/// Single (distance, mu) evaluation for a source kind.
RatePoint evaluate_point(RateSource kind, double distance_km, double mu,
                         const SystemParams& params);

/// Deterministic log-grid + golden-section maximization of G over
/// mu in [1e-6, 1].
MuOpt optimize_mu(RateSource kind, double distance_km, const SystemParams& params);

/// One optimized RatePoint per distance in [d_min, d_max] with the given step.
std::vector<RatePoint> sweep_distance(RateSource kind, double d_min, double d_max,
                                      double step, const SystemParams& params);

struct MaxDistance {
  double distance_km;
  bool capped;  // hit the 500 km numeric cap
};

/// Largest distance with positive optimized gain, bisected to 0.1 km.
MaxDistance max_secure_distance(RateSource kind, const SystemParams& params);

/// CSV rows "distance_km,mu,Q,e,delta_prime,e_ph,G", 10 significant digits,
/// header included.
void write_rate_csv(std::ostream& out, const std::vector<RatePoint>& points);

}  // namespace qkdwcp
