#include "qkdwcp/detection.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qkdwcp {

double ChannelParams::transmission() const {
  return std::pow(10.0, -loss_db_per_km * distance_km / 10.0);
}

double prob_inconclusive_n(int n, const DetectorParams& det) {
  if (n < 0) throw std::domain_error("prob_inconclusive_n: n < 0");
  return (1.0 - det.d0) * (1.0 - det.d1) * std::pow(1.0 - det.xi, n);
}

double prob_inconclusive_coherent(double mu, const DetectorParams& det) {
  if (mu < 0.0) throw std::domain_error("prob_inconclusive_coherent: mu < 0");
  return (1.0 - det.d0) * (1.0 - det.d1) * std::exp(-det.xi * mu);
}

BrightCoupling bright_ref_coupling(double alpha_sig, double beta_ref) {
  if (alpha_sig <= 0.0 || beta_ref < alpha_sig) {
    throw std::invalid_argument("bright_ref_coupling: requires beta >= alpha > 0");
  }
  const double a2 = alpha_sig * alpha_sig;
  const double b2 = beta_ref * beta_ref;
  const double c2 = b2 / (a2 + b2);
  return {c2, 2.0 * c2 * a2};
}

namespace {

double effective_mean(double mu, const std::optional<BrightRefAmps>& bright) {
  if (!bright) return mu;
  const double c2 = bright_ref_coupling(bright->alpha_sig, bright->beta_ref).c2;
  return 2.0 * c2 * mu;  // mu is the signal-pulse mean photon number mu_S
}

}  // namespace

double detection_prob_Q(double mu, const ChannelParams& chan,
                        const DetectorParams& det,
                        const std::optional<BrightRefAmps>& bright) {
  if (mu < 0.0) throw std::domain_error("detection_prob_Q: mu < 0");
  const double mu_eff = effective_mean(mu, bright);
  return 1.0 - (1.0 - det.d0) * (1.0 - det.d1) *
                   std::exp(-det.xi * chan.transmission() * mu_eff);
}

double intrinsic_error_rate(double mu, const ChannelParams& chan,
                            const DetectorParams& det,
                            const std::optional<BrightRefAmps>& bright) {
  const double mu_eff = effective_mean(mu, bright);
  const double q = detection_prob_Q(mu, chan, det, bright);
  if (q <= 0.0) throw std::domain_error("intrinsic_error_rate: Q = 0");
  const double s = -std::expm1(-det.xi * chan.transmission() * mu_eff);
  const double d = q - s * (1.0 - det.d0) * (1.0 - det.d1);
  const double e = (det.e_align * s + 0.5 * d) / q;
  return std::clamp(e, 0.0, 0.5);
}

SystemParams gys_like_defaults() { return SystemParams{}; }

SystemParams parse_params(std::istream& in) {
  SystemParams p = gys_like_defaults();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("parameter file line " + std::to_string(lineno) +
                               ": expected key=value");
    }
    std::string key = line.substr(first, eq - first);
    key.erase(key.find_last_not_of(" \t") + 1);
    double value = 0.0;
    try {
      value = std::stod(line.substr(eq + 1));
    } catch (const std::exception&) {
      throw std::runtime_error("parameter file line " + std::to_string(lineno) +
                               ": bad numeric value");
    }
    if (key == "loss_db_per_km") p.loss_db_per_km = value;
    else if (key == "xi") p.det.xi = value;
    else if (key == "d0") p.det.d0 = value;
    else if (key == "d1") p.det.d1 = value;
    else if (key == "e_align") p.det.e_align = value;
    else if (key == "f_ec") p.f_ec = value;
    else if (key == "bright_ratio") p.bright_ratio = value;
    else throw std::runtime_error("parameter file: unknown key '" + key + "'");
  }
  if (p.loss_db_per_km < 0 || p.det.xi <= 0 || p.det.xi > 1 || p.det.d0 < 0 ||
      p.det.d0 >= 1 || p.det.d1 < 0 || p.det.d1 >= 1 || p.det.e_align < 0 ||
      p.det.e_align > 0.5 || p.f_ec < 1 || p.bright_ratio < 1) {
    throw std::runtime_error("parameter file: value out of range");
  }
  return p;
}

SystemParams parse_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameter file: " + path);
  return parse_params(in);
}

}  // namespace qkdwcp
