#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace qkdwcp {

// Threshold-detector pair. Both detectors share the efficiency xi; e_align
// models interferometer misalignment (a fraction e_align of the signal
// intensity leaks into the wrong output arm).
struct DetectorParams {
  double d0 = 0.0;       // dark-count probability, detector 0, per gate
  double d1 = 0.0;       // dark-count probability, detector 1, per gate
  double xi = 1.0;       // quantum efficiency
  double e_align = 0.0;  // misalignment error probability
};

struct ChannelParams {
  double loss_db_per_km = 0.0;
  double distance_km = 0.0;

  double transmission() const;
};

/// Probability that neither detector clicks on an n-photon signal,
/// (1-d0)(1-d1)(1-xi)^n. Basis independent by construction.
double prob_inconclusive_n(int n, const DetectorParams& det);

/// Inconclusive probability for a coherent signal of mean photon number mu,
/// (1-d0)(1-d1) exp(-xi mu).
double prob_inconclusive_coherent(double mu, const DetectorParams& det);

struct BrightCoupling {
  double c2;      // c^2 = beta^2 / (alpha^2 + beta^2)
  double mu_eff;  // detected mean photon number 2 c^2 |alpha|^2
};

/// Double Mach-Zehnder coupling factor for a bright reference pulse.
BrightCoupling bright_ref_coupling(double alpha_sig, double beta_ref);

struct BrightRefAmps {
  double alpha_sig;
  double beta_ref;
};

/// Detection probability Q = 1 - (1-d0)(1-d1) exp(-xi t mu_eff).
/// For the bright-reference variant, `mu` is the signal-pulse mean photon
/// number mu_S and mu_eff = 2 c^2 mu_S.
double detection_prob_Q(double mu, const ChannelParams& chan,
                        const DetectorParams& det,
                        const std::optional<BrightRefAmps>& bright = {});

/// Intrinsic bit error rate e = (e_align S + D/2) / Q with S the
/// signal-click probability and D the dark-count contribution. This is a
/// model choice; the underlying hardware error decomposition is not pinned
/// by the security analysis.
double intrinsic_error_rate(double mu, const ChannelParams& chan,
                            const DetectorParams& det,
                            const std::optional<BrightRefAmps>& bright = {});

// Shared parameter set for the CLI and the simulator.
struct SystemParams {
  double loss_db_per_km = 0.21;
  DetectorParams det{8.5e-7, 8.5e-7, 0.045, 0.033};
  double f_ec = 1.22;          // error-correction inefficiency f(e)
  double bright_ratio = 10.0;  // beta^2 / alpha^2 for bright-reference sweeps
};

/// The editable "gys-like" defaults used for qualitative comparisons.
SystemParams gys_like_defaults();

/// Flat key=value parameter file (keys: loss_db_per_km, xi, d0, d1,
/// e_align, f_ec, bright_ratio). Unknown keys are rejected; '#' starts a
/// comment. Missing keys keep their defaults.
SystemParams parse_params(std::istream& in);
SystemParams parse_params_file(const std::string& path);

}  // namespace qkdwcp
