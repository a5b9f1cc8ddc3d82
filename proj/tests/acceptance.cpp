// End-to-end acceptance checks. Each criterion prints exactly one
// "PASS"/"FAIL" line; the exit code is the number of failures.

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "qkdwcp/attack.hpp"
#include "qkdwcp/postproc.hpp"
#include "qkdwcp/protosim.hpp"
#include "qkdwcp/qmath.hpp"
#include "qkdwcp/rates.hpp"
#include "qkdwcp/source.hpp"
#include "test_util.hpp"

using namespace qkdwcp;

namespace {

int failures = 0;

void report(const char* name, bool ok) {
  std::printf("%s: %s\n", ok ? "PASS" : "FAIL", name);
  if (!ok) ++failures;
}

// 1. Zero-error security threshold: the coin imbalance at which the
//    asymptotic rate with delta = 0 vanishes, and the implied mu/eta limit.
void criterion_zero_error_threshold() {
  double lo = 0.0, hi = 0.4999;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rate_R(0.0, 0.0, mid) > 0.0 ? lo : hi) = mid;
  }
  const double dp_star = 0.5 * (lo + hi);
  // small-mu leading order: Delta' = mu / (8 eta), so mu/eta = 8 Delta'
  const double mu_over_eta = 8.0 * dp_star;
  const bool ok = std::abs(dp_star - 0.1464) <= 0.001 &&
                  std::abs(mu_over_eta - 1.16) <= 0.02;
  report("zero-error threshold: Delta' = 0.1464, mu/eta = 1.16", ok);
}

// 2. The bisection and closed-form phase-error bounds agree on a dense grid.
void criterion_bound_equivalence() {
  bool ok = true;
  for (int i = 0; i <= 25; ++i) {
    const double delta = 0.5 * i / 25.0;
    for (int j = 0; j < 15; ++j) {
      const double dp = 0.49 * j / 14.0;
      const double closed = phase_error_closed(delta, dp, 0.0).clamped();
      if (std::abs(closed - phase_error_numeric(delta, dp)) > 1e-9) ok = false;
    }
  }
  report("phase-error bound: numeric matches closed form on 26x15 grid", ok);
}

// 3. Unambiguous-key-discrimination attack suite.
void criterion_attack_suite() {
  bool ok = true;
  for (double mu = 0.001; mu <= 0.5; mu += 0.005) {
    const UkdPovm povm = ukd_povm(mu);  // throws if Edk is not PSD
    const Eigen::Matrix3cd sum = povm.E0 + povm.E1 + povm.Edk;
    if ((sum - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
      ok = false;
    }
    const UkdSignals s = ukd_signals(mu);
    const double p0 = (s.s0z.adjoint() * povm.E0 * s.s0z)(0).real();
    const double p1 = (s.s1x.adjoint() * povm.E1 * s.s1x)(0).real();
    if (std::abs(p0 - conclusive_prob(0, mu)) > 1e-12) ok = false;
    if (std::abs(p1 - conclusive_prob(1, mu)) > 1e-12) ok = false;
  }
  if (std::abs(resend_error_rate() - (0.5 - 0.5 / std::sqrt(2.0))) > 1e-12) {
    ok = false;
  }
  if (std::abs(secure_mu_threshold() - 0.0240) > 0.0005) ok = false;
  report("intercept/resend attack: POVM, probabilities, error, mu threshold", ok);
}

// 4. Monte Carlo protocol runs reproduce the analytic detection and error
//    rates, with and without the attack.
void criterion_monte_carlo() {
  bool ok = true;
  const DetectorParams det{8.5e-7, 8.5e-7, 0.045, 0.033};
  const ChannelParams chan{0.21, 15.0};
  const double mu = 0.1;
  {
    const SourceVariant src = SourceVariant::unmodulated(std::sqrt(mu / 2.0));
    const RoundTally t =
        run_protocol(1000000, src, chan, det, EveStrategy::None, 20260823);
    const ErrorEstimate est = estimate_error_rates(t);
    const double q = detection_prob_Q(mu, chan, det);
    const double e = intrinsic_error_rate(mu, chan, det);
    if (std::abs(est.q_hat - q) > 4.0 * est.se_q) ok = false;
    if (std::abs(est.delta_x - e) > 4.0 * est.se_x) ok = false;
    if (std::abs(est.delta_y - e) > 4.0 * est.se_y) ok = false;
  }
  {
    const DetectorParams clean{0.0, 0.0, 0.045, 0.0};
    const SourceVariant src = SourceVariant::modulated(std::sqrt(mu / 2.0));
    const RoundTally t = run_protocol(1000000, src, chan, clean,
                                      EveStrategy::UkdInterceptResend, 8191);
    const ErrorEstimate est = estimate_error_rates(t);
    const double pc = 0.5 * (conclusive_prob(0, mu) + conclusive_prob(1, mu));
    if (std::abs(est.q_hat - clean.xi * pc) > 3.0 * est.se_q) ok = false;
    if (std::abs(est.delta_x - resend_error_rate()) > 3.0 * est.se_x) ok = false;
    if (std::abs(est.delta_y - resend_error_rate()) > 3.0 * est.se_y) ok = false;
  }
  report("Monte Carlo: tallies match analytics (no Eve and intercept/resend)", ok);
}

// 5. Qualitative rate-vs-distance shape with the default parameter set.
void criterion_rate_curves() {
  const SystemParams params = gys_like_defaults();
  const MaxDistance d_non = max_secure_distance(RateSource::Nonrandom, params);
  const MaxDistance d_rand = max_secure_distance(RateSource::Random, params);
  bool ok = !d_non.capped && !d_rand.capped && d_non.distance_km > 0.0;
  const double ratio = d_rand.distance_km / d_non.distance_km;
  if (std::abs(ratio - 3.0) > 0.5) ok = false;

  for (RateSource kind : {RateSource::Nonrandom, RateSource::Random}) {
    const double d_max =
        kind == RateSource::Nonrandom ? d_non.distance_km : d_rand.distance_km;
    double prev = 1.0;
    for (double d = 0.0; d <= d_max; d += d_max / 20.0) {
      const MuOpt opt = optimize_mu(kind, d, params);
      if (opt.G > prev + 1e-12) ok = false;  // monotone decay
      prev = opt.G;
      if (kind == RateSource::Nonrandom && opt.secure) {
        const double eta =
            ChannelParams{params.loss_db_per_km, d}.transmission() *
            params.det.xi;
        if (opt.mu >= 1.2 * eta) ok = false;
      }
    }
    // sharp cutoff: no key just past the maximum distance
    if (optimize_mu(kind, d_max + 1.0, params).G > 0.0) ok = false;
  }
  report("rate curves: distance ratio 3.0 +- 0.5, monotone, mu_opt < 1.2 eta", ok);
}

// 6. Small-mu series of the coin imbalance and the purification overlap.
void criterion_small_mu_series() {
  double c_delta = 0.0, c_overlap = 0.0;
  for (double mu : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
    const double mu3 = mu * mu * mu;
    c_delta = std::max(c_delta, std::abs(coin_imbalance(mu) - mu * mu / 8.0) / mu3);
    c_overlap = std::max(
        c_overlap,
        std::abs(purification_overlap(mu) - (1.0 - mu * mu / 4.0)) / mu3);
  }
  report("small-mu series: Delta = mu^2/8 and overlap = 1 - mu^2/4 + O(mu^3)",
         c_delta <= 0.1 && c_overlap <= 0.1);
}

// 7. Privacy-amplification matrix algebra on random instances.
void criterion_privacy_amplification() {
  bool ok = true;
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 63;
    const std::size_t k = 1 + rng() % (n - 1);
    const auto [g, h] = sample_pa_matrices(n, k, 5000 + trial);
    if (g.rank() != k || h.rank() != n - k) ok = false;
    if (!(g.transposed() * h).is_zero()) ok = false;
    std::vector<std::uint8_t> v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = rng() & 1u;
      w[i] = rng() & 1u;
    }
    std::vector<std::uint8_t> vw(n);
    for (std::size_t i = 0; i < n; ++i) vw[i] = v[i] ^ w[i];
    const auto kv = extract_key(v, g);
    const auto kw = extract_key(w, g);
    const auto kvw = extract_key(vw, g);
    for (std::size_t i = 0; i < k; ++i) {
      if (kvw[i] != (kv[i] ^ kw[i])) ok = false;
    }
  }
  report("privacy amplification: ranks, orthogonality, linear extraction", ok);
}

// 8. Distinguishability inequalities on random states and measurements.
void criterion_inequalities() {
  bool ok = true;
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 3);
    const Cmat rho = qkdwcp::testing::random_density(dim, rng);
    const Cmat sigma = qkdwcp::testing::random_density(dim, rng);
    const double f = fidelity(rho, sigma);
    if (trace_distance(rho, sigma) > std::sqrt(1.0 - f) + 1e-9) ok = false;
    const auto povm =
        qkdwcp::testing::random_povm(dim, 2 + static_cast<int>(rng() % 3), rng);
    if (std::sqrt(f) > statistical_overlap(rho, sigma, povm) + 1e-9) ok = false;
  }
  report("inequalities: trace distance vs fidelity, fidelity vs overlap", ok);
}

}  // namespace

int main() {
  criterion_zero_error_threshold();
  criterion_bound_equivalence();
  criterion_attack_suite();
  criterion_monte_carlo();
  criterion_rate_curves();
  criterion_small_mu_series();
  criterion_privacy_amplification();
  criterion_inequalities();
  return failures;
}
