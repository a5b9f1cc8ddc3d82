#pragma once

#include <array>

#include "qkdwcp/qmath.hpp"

namespace qkdwcp {

enum class SourceKind { UnmodulatedRef, ModulatedRef, BrightRef };

// Two-mode coherent BB84 source. The key bit lives in the relative phase of
// the reference and signal pulses; `beta` is the reference amplitude for the
// bright-reference variant and equals `alpha` otherwise.
struct SourceVariant {
  SourceKind kind = SourceKind::UnmodulatedRef;
  Complex alpha{0.0, 0.0};
  Complex beta{0.0, 0.0};

  static SourceVariant unmodulated(Complex alpha) {
    return {SourceKind::UnmodulatedRef, alpha, alpha};
  }
  static SourceVariant modulated(Complex alpha) {
    return {SourceKind::ModulatedRef, alpha, alpha};
  }
  static SourceVariant bright(Complex alpha, Complex beta);
};

enum class SignalLabel { Zero_X = 0, One_X = 1, Zero_Y = 2, One_Y = 3 };

struct TwoModeState {
  Complex ref;
  Complex sig;
};

struct SignalSet {
  SourceVariant variant;
  std::array<TwoModeState, 4> states;  // indexed by SignalLabel

  const TwoModeState& state(SignalLabel l) const {
    return states[static_cast<std::size_t>(l)];
  }
};

/// The four two-mode signal amplitudes for a source variant.
SignalSet make_signal_set(const SourceVariant& variant);

/// Overlap <Psi_y|Psi_x> = exp(-mu/2)(cos(mu/2) + sin(mu/2)) of the two
/// basis purifications.
double purification_overlap(double mu);

/// Quantum-coin imbalance Delta = (1 - purification_overlap(mu)) / 2.
double coin_imbalance(double mu);

/// Probability of emitting two or more photons, 1 - exp(-mu)(1+mu).
double multiphoton_prob(double mu);

struct Clamped {
  double value;
  bool clamped;  // true when the raw ratio exceeded 1/2
};

/// Loss-amplified imbalance Delta' = Delta / detection_fraction, saturated
/// at 1/2. Throws on detection_fraction <= 0.
Clamped effective_imbalance(double delta, double detection_fraction);

}  // namespace qkdwcp
