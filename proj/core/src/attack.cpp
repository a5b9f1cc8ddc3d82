#include "qkdwcp/attack.hpp"

#include <cmath>
#include <stdexcept>

#include "qkdwcp/qmath.hpp"

namespace qkdwcp {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

UkdSignals ukd_signals(double mu) {
  if (mu < 0.0) throw std::domain_error("ukd_signals: mu < 0");
  const double a = std::sqrt(mu / 2.0);
  const double w = std::exp(-mu / 2.0);
  UkdSignals s;
  s.s0z << w, w * std::sqrt(2.0) * a, 0.0;
  s.s0x << w, w * a, w * a;
  s.s1z << w, 0.0, w * std::sqrt(2.0) * a;
  s.s1x << w, w * a, -w * a;
  return s;
}

ConclusiveVectors conclusive_vectors(double mu) {
  if (mu < 0.0) throw std::domain_error("conclusive_vectors: mu < 0");
  const double a = std::sqrt(mu / 2.0);
  ConclusiveVectors v;
  v.v0perp << -std::sqrt(2.0) * a - a, 1.0 + kInvSqrt2, kInvSqrt2;
  v.v1perp << -a, 1.0 + kInvSqrt2, kInvSqrt2;
  v.v0perp.normalize();
  v.v1perp.normalize();
  return v;
}

UkdPovm ukd_povm(double mu) {
  const ConclusiveVectors v = conclusive_vectors(mu);
  UkdPovm p;
  p.E0 = 0.5 * v.v1perp * v.v1perp.adjoint();
  p.E1 = 0.5 * v.v0perp * v.v0perp.adjoint();
  p.Edk = Eigen::Matrix3cd::Identity() - p.E0 - p.E1;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(p.Edk, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < tol::psd_floor) {
    throw std::logic_error("ukd_povm: Edk not positive semidefinite");
  }
  return p;
}

double conclusive_prob(int key_bit, double mu) {
  if (key_bit != 0 && key_bit != 1) {
    throw std::domain_error("conclusive_prob: key bit must be 0 or 1");
  }
  if (mu < 0.0) throw std::domain_error("conclusive_prob: mu < 0");
  const double c = 0.5 - 0.5 * kInvSqrt2;
  // The announcing element E_b projects onto the vector orthogonal to the
  // opposite bit's signals, so the denominator carries that vector's
  // normalization: minus for bit 0, plus for bit 1.
  const double denom =
      key_bit == 0 ? 1.0 + (0.5 - 0.5 * kInvSqrt2) * mu
                   : 1.0 + (0.5 + 0.5 * kInvSqrt2) * mu;
  return c * mu * std::exp(-mu) / denom;
}

double conclusive_prob_lower_bound(double mu) {
  const double c = 0.5 - 0.5 * kInvSqrt2;
  return c * mu * std::exp(-mu) / (1.0 + (1.0 - c) * mu);
}

Eigen::Vector2cd resend_state(int key_bit) {
  if (key_bit != 0 && key_bit != 1) {
    throw std::domain_error("resend_state: key bit must be 0 or 1");
  }
  // Uniform superposition of |b_Z> and |b_X> with the overall phase of the
  // X-basis component chosen so the two terms interfere constructively
  // (<1_Z|1_X> is negative, so the bit-1 component enters with a minus sign).
  Eigen::Vector2cd z = key_bit == 0 ? Eigen::Vector2cd(1.0, 0.0)
                                    : Eigen::Vector2cd(0.0, 1.0);
  Eigen::Vector2cd x = key_bit == 0
                           ? Eigen::Vector2cd(kInvSqrt2, kInvSqrt2)
                           : Eigen::Vector2cd(-kInvSqrt2, kInvSqrt2);
  Eigen::Vector2cd r = z + x;
  r.normalize();
  return r;
}

double resend_error_rate() {
  double total = 0.0;
  for (int bit : {0, 1}) {
    const Eigen::Vector2cd r = resend_state(bit);
    // wrong outcome in the Z basis
    const Eigen::Vector2cd wrong_z =
        bit == 0 ? Eigen::Vector2cd(0.0, 1.0) : Eigen::Vector2cd(1.0, 0.0);
    // wrong outcome in the X basis
    const Eigen::Vector2cd wrong_x =
        bit == 0 ? Eigen::Vector2cd(kInvSqrt2, -kInvSqrt2)
                 : Eigen::Vector2cd(kInvSqrt2, kInvSqrt2);
    total += 0.5 * (std::norm(wrong_z.dot(r)) + std::norm(wrong_x.dot(r)));
  }
  return total / 2.0;
}

double secure_mu_threshold() {
  const double delta = resend_error_rate();
  const double coeff = 0.5 / delta;  // p_M bound mu^2/2 over p_C lower bound
  const auto lhs = [&](double mu) {
    return coeff * mu * std::exp(mu) * (1.0 + (1.0 - delta) * mu);
  };
  const double budget = 0.086;  // two-way distillation margin 2*(0.189-0.146)
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (lhs(mid) < budget ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qkdwcp
