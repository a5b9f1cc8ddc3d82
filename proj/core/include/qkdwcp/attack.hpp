#pragma once

#include <Eigen/Dense>

namespace qkdwcp {

// Unambiguous key discrimination against the phase-modulated-reference
// signal set, in the qutrit basis {vac, 0_Z, 1_Z}. Signal vectors are
// subnormalized: the missing weight is the rejected multiphoton component,
// so all probabilities below are unconditional per emitted pulse.
struct UkdSignals {
  Eigen::Vector3cd s0z, s0x, s1z, s1x;
};

/// The four truncated signal vectors e^{-mu/2}(1, ...) with
/// alpha = sqrt(mu/2) real positive.
UkdSignals ukd_signals(double mu);

struct ConclusiveVectors {
  Eigen::Vector3cd v0perp;  // orthogonal to both bit-0 signals
  Eigen::Vector3cd v1perp;  // orthogonal to both bit-1 signals
};

ConclusiveVectors conclusive_vectors(double mu);

struct UkdPovm {
  Eigen::Matrix3cd E0;   // announces key bit 0 (built from |1perp>)
  Eigen::Matrix3cd E1;   // announces key bit 1 (built from |0perp>)
  Eigen::Matrix3cd Edk;  // inconclusive
};

/// The three-outcome POVM E0 = |1perp><1perp|/2, E1 = |0perp><0perp|/2,
/// Edk = I - E0 - E1. Throws if Edk fails the PSD check (implementation
/// bug guard).
UkdPovm ukd_povm(double mu);

/// Closed-form conclusive probability per emitted pulse for the given key
/// bit. Matches tr(E_b |signal><signal|) on the subnormalized vectors.
double conclusive_prob(int key_bit, double mu);

/// Lower bound (0.146) mu e^{-mu} [1 + (0.854) mu]^{-1} on either
/// conclusive probability.
double conclusive_prob_lower_bound(double mu);

/// Qubit state Eve resends on a conclusive outcome: the normalized uniform
/// superposition of the two signals compatible with the key bit, in the
/// {0_Z, 1_Z} basis.
Eigen::Vector2cd resend_state(int key_bit);

/// Bit error rate of the intercept/resend attack, computed from first
/// principles (projecting the resend state onto the wrong outcome in each
/// basis); equals 1/2 - 1/(2 sqrt(2)).
double resend_error_rate();

/// Largest mu for which the phase-randomized comparison protocol is
/// provably secure against this attack: root of
/// (1/(2 delta)) mu e^{mu} [1 + (1-delta) mu] = 0.086 with
/// delta = resend_error_rate(); approximately 0.0240.
double secure_mu_threshold();

}  // namespace qkdwcp
