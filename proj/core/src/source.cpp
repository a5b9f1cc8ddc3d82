#include "qkdwcp/source.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdwcp {

SourceVariant SourceVariant::bright(Complex alpha, Complex beta) {
  if (std::abs(beta) < std::abs(alpha)) {
    throw std::invalid_argument("bright source requires |beta| >= |alpha|");
  }
  return {SourceKind::BrightRef, alpha, beta};
}

SignalSet make_signal_set(const SourceVariant& variant) {
  const Complex a = variant.alpha;
  const Complex i{0.0, 1.0};
  SignalSet set{variant, {}};
  switch (variant.kind) {
    case SourceKind::UnmodulatedRef:
      set.states = {{{a, a}, {a, -a}, {a, i * a}, {a, -i * a}}};
      break;
    case SourceKind::BrightRef: {
      const Complex b = variant.beta;
      set.states = {{{b, a}, {b, -a}, {b, i * a}, {b, -i * a}}};
      break;
    }
    case SourceKind::ModulatedRef: {
      const Complex e_m = std::exp(-i * (M_PI / 4.0));
      const Complex e_p = std::exp(i * (M_PI / 4.0));
      set.states = {{{a, a}, {-i * a, i * a}, {e_m * a, e_p * a}, {e_p * a, e_m * a}}};
      break;
    }
  }
  return set;
}

double purification_overlap(double mu) {
  if (mu < 0.0) throw std::domain_error("purification_overlap: mu < 0");
  return std::exp(-mu / 2.0) * (std::cos(mu / 2.0) + std::sin(mu / 2.0));
}

double coin_imbalance(double mu) {
  return 0.5 * (1.0 - purification_overlap(mu));
}

double multiphoton_prob(double mu) {
  if (mu < 0.0) throw std::domain_error("multiphoton_prob: mu < 0");
  // -expm1 keeps precision for small mu
  const double p = -std::expm1(-mu) - mu * std::exp(-mu);
  return std::max(p, 0.0);
}

Clamped effective_imbalance(double delta, double detection_fraction) {
  if (delta < 0.0) throw std::domain_error("effective_imbalance: delta < 0");
  if (detection_fraction <= 0.0 || detection_fraction > 1.0) {
    throw std::domain_error("effective_imbalance: detection fraction outside (0,1]");
  }
  const double raw = delta / detection_fraction;
  if (raw > 0.5) return {0.5, true};
  return {raw, false};
}

}  // namespace qkdwcp
