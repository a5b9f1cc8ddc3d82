// Command-line front end: rate sweeps, attack analytics, Monte Carlo runs,
// and privacy-amplification matrix generation. Machine-readable CSV goes to
// the output file (or stdout), human-readable text to stderr.

#include <cmath>
#include <fstream>
#include <iostream>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkdwcp/attack.hpp"
#include "qkdwcp/detection.hpp"
#include "qkdwcp/postproc.hpp"
#include "qkdwcp/protosim.hpp"
#include "qkdwcp/rates.hpp"
#include "qkdwcp/source.hpp"

namespace {

using namespace qkdwcp;

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

RateSource parse_source(const std::string& s) {
  if (s == "nonrandom") return RateSource::Nonrandom;
  if (s == "random") return RateSource::Random;
  if (s == "bright") return RateSource::Bright;
  throw CLI::ValidationError("--source must be nonrandom, random or bright");
}

int cmd_sweep(const SystemParams& params, const std::vector<std::string>& sources,
              double d_min, double d_max, double step, const std::string& out_path) {
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  out.imbue(std::locale::classic());
  out.precision(10);
  out << "source,distance_km,mu,Q,e,delta_prime,e_ph,G\n";
  for (const std::string& name : sources) {
    const RateSource kind = parse_source(name);
    const auto points = sweep_distance(kind, d_min, d_max, step, params);
    double prev_g = -1.0;
    bool first = true;
    for (const RatePoint& p : points) {
      out << name << ',' << p.distance_km << ',' << p.mu << ',' << p.Q << ','
          << p.e << ',' << p.delta_prime << ',' << p.e_ph << ',' << p.G << '\n';
      if (!first && p.G > prev_g && prev_g >= 0.0) {
        std::cerr << "warning: " << name << " gain not monotone at "
                  << p.distance_km << " km\n";
      }
      prev_g = p.G;
      first = false;
    }
    const MaxDistance md = max_secure_distance(kind, params);
    std::cerr << name << ": max secure distance " << md.distance_km << " km"
              << (md.capped ? " (numeric cap)" : "") << "\n";
  }
  return 0;
}

int cmd_attack(double mu) {
  if (mu < 0.0) {
    std::cerr << "error: mu must be nonnegative\n";
    return 1;
  }
  const UkdPovm povm = ukd_povm(mu);
  const UkdSignals sig = ukd_signals(mu);

  bool audit_ok = true;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(povm.Edk,
                                                     Eigen::EigenvaluesOnly);
  const Eigen::Matrix3cd completeness = povm.E0 + povm.E1 + povm.Edk;
  const double completeness_err =
      (completeness - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
  if (completeness_err > 1e-12 || es.eigenvalues().minCoeff() < -1e-10) {
    audit_ok = false;
  }
  // conclusive probabilities: closed form vs matrix path
  for (int bit : {0, 1}) {
    const Eigen::Vector3cd& s = bit == 0 ? sig.s0z : sig.s1z;
    const Eigen::Matrix3cd& e = bit == 0 ? povm.E0 : povm.E1;
    const double matrix_p = (s.adjoint() * e * s)(0).real();
    if (std::abs(matrix_p - conclusive_prob(bit, mu)) > 1e-12) audit_ok = false;
  }

  std::cout.precision(10);
  std::cout << "mu                    " << mu << "\n"
            << "p_conclusive(bit=0)   " << conclusive_prob(0, mu) << "\n"
            << "p_conclusive(bit=1)   " << conclusive_prob(1, mu) << "\n"
            << "p_conclusive lower    " << conclusive_prob_lower_bound(mu) << "\n"
            << "resend error rate     " << resend_error_rate() << "\n"
            << "secure mu threshold   " << secure_mu_threshold() << "\n"
            << "E_DK min eigenvalue   " << es.eigenvalues().minCoeff() << "\n"
            << "completeness residual " << completeness_err << "\n"
            << "audit                 " << (audit_ok ? "pass" : "FAIL") << "\n";
  return audit_ok ? 0 : 1;
}

int cmd_simulate(const SystemParams& params, const std::string& source_name,
                 double mu, double distance, std::uint64_t rounds,
                 std::uint64_t seed, bool eve, const std::string& out_path) {
  const double alpha_mag = std::sqrt(mu / 2.0);
  SourceVariant source;
  if (source_name == "nonrandom" || source_name == "random") {
    source = SourceVariant::unmodulated(alpha_mag);
  } else if (source_name == "modulated") {
    source = SourceVariant::modulated(alpha_mag);
  } else if (source_name == "bright") {
    source = SourceVariant::bright(alpha_mag,
                                   alpha_mag * std::sqrt(params.bright_ratio));
  } else {
    std::cerr << "error: unknown source '" << source_name << "'\n";
    return 1;
  }
  const ChannelParams chan{params.loss_db_per_km, distance};
  const EveStrategy strategy =
      eve ? EveStrategy::UkdInterceptResend : EveStrategy::None;
  if (eve && source.kind != SourceKind::ModulatedRef) {
    std::cerr << "error: the intercept/resend attack targets the modulated "
                 "source (--source modulated)\n";
    return 1;
  }

  const RoundTally t =
      run_protocol(rounds, source, chan, params.det, strategy, seed);
  const ErrorEstimate est = estimate_error_rates(t);

  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  out.imbue(std::locale::classic());
  out << "sent,detected,sifted,double_clicks,errors_x,sifted_x,errors_y,sifted_y\n"
      << t.sent << ',' << t.detected << ',' << t.sifted << ',' << t.double_clicks
      << ',' << t.errors_x << ',' << t.sifted_x << ',' << t.errors_y << ','
      << t.sifted_y << '\n';

  double max_z = 0.0;
  const auto report_z = [&max_z](const char* what, double observed,
                                 double expected, double se) {
    const double z = se > 0.0 ? (observed - expected) / se : 0.0;
    max_z = std::max(max_z, std::abs(z));
    std::cerr << what << ": observed " << observed << ", expected " << expected
              << ", z = " << z << "\n";
  };
  if (!eve) {
    std::optional<BrightRefAmps> bright;
    double mu_param = mu;
    if (source.kind == SourceKind::BrightRef) {
      mu_param = mu / 2.0;  // signal-pulse mean photon number
      bright = BrightRefAmps{alpha_mag, alpha_mag * std::sqrt(params.bright_ratio)};
    }
    const double q = detection_prob_Q(mu_param, chan, params.det, bright);
    const double e = intrinsic_error_rate(mu_param, chan, params.det, bright);
    report_z("Q", est.q_hat, q, est.se_q);
    report_z("delta_x", est.delta_x, e, est.se_x);
    report_z("delta_y", est.delta_y, e, est.se_y);
  } else {
    const double pc = 0.5 * (conclusive_prob(0, mu) + conclusive_prob(1, mu));
    const double q_exp = 1.0 - (1.0 - params.det.xi * pc) *
                                   (1.0 - params.det.d0) * (1.0 - params.det.d1);
    report_z("detected fraction", est.q_hat, q_exp, est.se_q);
    report_z("delta_x", est.delta_x, resend_error_rate(), est.se_x);
    report_z("delta_y", est.delta_y, resend_error_rate(), est.se_y);
  }
  std::cerr << "max |z| = " << max_z << "\n";
  return max_z > 5.0 ? 1 : 0;
}

int cmd_pa(std::size_t n, std::size_t k, std::uint64_t seed,
           const std::string& out_path) {
  const auto [g, h] = sample_pa_matrices(n, k, seed);
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  g.serialize(out);
  h.serialize(out);
  const bool ok = g.rank() == k && h.rank() == n - k &&
                  (g.transposed() * h).is_zero();
  std::cerr << "G: " << n << "x" << k << " rank " << g.rank() << ", H: " << n
            << "x" << (n - k) << " rank " << h.rank() << ", G^T H "
            << (ok ? "= 0" : "!= 0 (FAIL)") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secret-key rates, attack analytics and Monte Carlo simulation "
               "for BB84 with weak coherent-state signals"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "Parameter file (key=value: loss_db_per_km, xi, d0, d1, "
                 "e_align, f_ec, bright_ratio)")
      ->check(CLI::ExistingFile);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Rate-vs-distance sweep (CSV)");
  std::vector<std::string> sweep_sources{"nonrandom", "random"};
  std::vector<double> sweep_range{0.0, 60.0, 1.0};
  std::string sweep_out;
  sweep->add_option("--source", sweep_sources,
                    "Source kinds: nonrandom, random, bright");
  sweep->add_option("--distance", sweep_range, "min max step (km)")
      ->expected(3);
  sweep->add_option("--out", sweep_out, "Output CSV path (default stdout)");

  // attack
  auto* attack = app.add_subcommand("attack", "Unambiguous-key-discrimination report");
  double attack_mu = 0.02;
  attack->add_option("--mu", attack_mu, "Mean photon number");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo protocol run");
  std::string sim_source = "nonrandom";
  double sim_mu = 0.1, sim_distance = 20.0;
  std::uint64_t sim_rounds = 1000000, sim_seed = 1;
  bool sim_eve = false;
  std::string sim_out;
  sim->add_option("--source", sim_source, "nonrandom, modulated or bright");
  sim->add_option("--mu", sim_mu, "Mean photon number")->check(CLI::NonNegativeNumber);
  sim->add_option("--distance", sim_distance, "Distance (km)");
  sim->add_option("--rounds", sim_rounds, "Number of rounds (>= 10^4)")
      ->check(CLI::Range(std::uint64_t{10000}, std::uint64_t{1} << 40));
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_flag("--eve", sim_eve, "Enable the UKD intercept/resend attack");
  sim->add_option("--out", sim_out, "Output CSV path (default stdout)");

  // pa
  auto* pa = app.add_subcommand("pa", "Privacy-amplification matrix pair");
  std::size_t pa_n = 64, pa_k = 32;
  std::uint64_t pa_seed = 1;
  std::string pa_out;
  pa->add_option("--n", pa_n, "Sifted key length")->required();
  pa->add_option("--k", pa_k, "Final key length")->required();
  pa->add_option("--seed", pa_seed, "RNG seed");
  pa->add_option("--out", pa_out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    SystemParams params = gys_like_defaults();
    if (!config_path.empty()) params = parse_params_file(config_path);

    if (sweep->parsed()) {
      return cmd_sweep(params, sweep_sources, sweep_range[0], sweep_range[1],
                       sweep_range[2], sweep_out);
    }
    if (attack->parsed()) return cmd_attack(attack_mu);
    if (sim->parsed()) {
      return cmd_simulate(params, sim_source, sim_mu, sim_distance, sim_rounds,
                          sim_seed, sim_eve, sim_out);
    }
    if (pa->parsed()) return cmd_pa(pa_n, pa_k, pa_seed, pa_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
