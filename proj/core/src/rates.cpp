#include "qkdwcp/rates.hpp"

#include <algorithm>
#include <cmath>
#include <locale>
#include <ostream>
#include <stdexcept>

#include "qkdwcp/qmath.hpp"
#include "qkdwcp/source.hpp"

namespace qkdwcp {

PhaseError phase_error_closed(double delta, double delta_prime, double epsilon) {
  if (delta < 0.0 || delta > 0.5 || delta_prime < 0.0 || delta_prime > 0.5) {
    throw std::domain_error("phase_error_closed: rates outside [0, 1/2]");
  }
  const double d = delta;
  const double dp = delta_prime;
  const double v = d + 4.0 * dp * (1.0 - dp) * (1.0 - 2.0 * d) +
                   4.0 * (1.0 - 2.0 * dp) *
                       std::sqrt(dp * (1.0 - dp) * d * (1.0 - d)) +
                   epsilon;
  return {v, v > 0.5};
}

double phase_error_numeric(double delta, double delta_prime) {
  if (delta < 0.0 || delta > 0.5 || delta_prime < 0.0 || delta_prime >= 0.5) {
    throw std::domain_error("phase_error_numeric: rates out of range");
  }
  // Substituting delta = sin^2(a) and dyp = sin^2(b) turns the overlap
  // equation sqrt(delta dyp) + sqrt((1-delta)(1-dyp)) = 1 - 2 dp into
  // cos(b - a) = 1 - 2 dp, i.e. sin^2((b - a)/2) = dp. Bisecting that form
  // is exact even where the original left-hand side is quadratically flat.
  const double a = std::asin(std::sqrt(delta));
  const auto excess = [&](double b) {
    const double s = std::sin(0.5 * (b - a));
    return delta_prime - s * s;  // positive below the root, decreasing in b
  };
  double lo = a, hi = a + M_PI;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) >= 0.0 ? lo : hi) = mid;
  }
  const double b = 0.5 * (lo + hi);
  if (b >= M_PI / 2.0) return 0.5;  // root lies past dyp = 1: saturate
  const double s = std::sin(b);
  return std::min(s * s, 0.5);
}

double rate_R(double delta_x, double delta_y, double delta_prime) {
  const PhaseError dyp = phase_error_closed(delta_y, delta_prime, 0.0);
  return 1.0 - binary_entropy(delta_x) - binary_entropy(dyp.clamped());
}

Gain gain_nonrandom(const RateInputs& in) {
  const PhaseError eph = phase_error_closed(in.e, in.delta_prime, in.epsilon);
  const double g = 0.5 * in.Q *
                   (1.0 - in.f_ec * binary_entropy(in.e) -
                    binary_entropy(eph.clamped()));
  return {std::max(g, 0.0), eph.clamped(), g > 0.0};
}

Gain gain_random(double Q, double e, double mu, double f_ec) {
  const double dp = multiphoton_prob(mu) / Q;
  if (dp >= 1.0) return {0.0, 0.5, false};
  const double e1 = std::min(e / (1.0 - dp), 0.5);
  const double q1 = Q * (1.0 - dp);
  const double g =
      0.5 * (q1 * (1.0 - binary_entropy(e1)) - Q * f_ec * binary_entropy(e));
  return {std::max(g, 0.0), e1, g > 0.0};
}

RatePoint evaluate_point(RateSource kind, double distance_km, double mu,
                         const SystemParams& params) {
  const ChannelParams chan{params.loss_db_per_km, distance_km};
  std::optional<BrightRefAmps> bright;
  if (kind == RateSource::Bright) {
    const double alpha = std::sqrt(mu);  // mu is mu_S = |alpha|^2
    bright = BrightRefAmps{alpha, alpha * std::sqrt(params.bright_ratio)};
  }
  const double q = detection_prob_Q(mu, chan, params.det, bright);
  const double e = intrinsic_error_rate(mu, chan, params.det, bright);

  RatePoint pt{distance_km, mu, q, e, 0.0, 0.0, 0.0, false};
  switch (kind) {
    case RateSource::Nonrandom:
    case RateSource::Bright: {
      // bright reference: coin computed at total mean 2 mu_S
      const double coin_mu = kind == RateSource::Bright ? 2.0 * mu : mu;
      pt.delta_prime = effective_imbalance(coin_imbalance(coin_mu), q).value;
      const Gain g = gain_nonrandom({q, e, pt.delta_prime, params.f_ec, 0.0});
      pt.e_ph = g.e_ph;
      pt.G = g.G;
      pt.secure = g.secure;
      break;
    }
    case RateSource::Random: {
      pt.delta_prime = std::min(multiphoton_prob(mu) / q, 1.0);
      const Gain g = gain_random(q, e, mu, params.f_ec);
      pt.e_ph = g.e_ph;
      pt.G = g.G;
      pt.secure = g.secure;
      break;
    }
  }
  return pt;
}

namespace {

double gain_at(RateSource kind, double distance_km, double mu,
               const SystemParams& params) {
  return evaluate_point(kind, distance_km, mu, params).G;
}

}  // namespace

MuOpt optimize_mu(RateSource kind, double distance_km, const SystemParams& params) {
  constexpr int kGridPoints = 200;
  constexpr double kMuMin = 1e-6;
  constexpr double kMuMax = 1.0;

  double best_mu = 0.0, best_g = 0.0;
  int best_i = -1;
  std::vector<double> grid(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    const double f = static_cast<double>(i) / (kGridPoints - 1);
    grid[i] = kMuMin * std::pow(kMuMax / kMuMin, f);
    const double g = gain_at(kind, distance_km, grid[i], params);
    if (g > best_g) {
      best_g = g;
      best_mu = grid[i];
      best_i = i;
    }
  }
  if (best_i < 0) return {0.0, 0.0, false};

  // golden-section refinement on the bracketing grid interval
  double a = grid[std::max(best_i - 1, 0)];
  double b = grid[std::min(best_i + 1, kGridPoints - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double g1 = gain_at(kind, distance_km, x1, params);
  double g2 = gain_at(kind, distance_km, x2, params);
  for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + inv_phi * (b - a);
      g2 = gain_at(kind, distance_km, x2, params);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - inv_phi * (b - a);
      g1 = gain_at(kind, distance_km, x1, params);
    }
  }
  const double mu = 0.5 * (a + b);
  const double g = gain_at(kind, distance_km, mu, params);
  if (g >= best_g) return {mu, g, true};
  return {best_mu, best_g, true};
}

std::vector<RatePoint> sweep_distance(RateSource kind, double d_min, double d_max,
                                      double step, const SystemParams& params) {
  if (d_min > d_max || step <= 0.0) {
    throw std::invalid_argument("sweep_distance: invalid range");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((d_max - d_min) / step + 1e-9)) + 1;
  std::vector<RatePoint> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double d = d_min + static_cast<double>(i) * step;
    const MuOpt opt = optimize_mu(kind, d, params);
    points.push_back(evaluate_point(kind, d, std::max(opt.mu, 1e-6), params));
  }
  return points;
}

MaxDistance max_secure_distance(RateSource kind, const SystemParams& params) {
  constexpr double kCap = 500.0;
  if (optimize_mu(kind, 0.0, params).G <= 0.0) return {0.0, false};
  if (optimize_mu(kind, kCap, params).G > 0.0) return {kCap, true};
  double lo = 0.0, hi = kCap;
  while (hi - lo > 0.1) {
    const double mid = 0.5 * (lo + hi);
    (optimize_mu(kind, mid, params).G > 0.0 ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), false};
}

void write_rate_csv(std::ostream& out, const std::vector<RatePoint>& points) {
  out.imbue(std::locale::classic());
  out.precision(10);
  out << "distance_km,mu,Q,e,delta_prime,e_ph,G\n";
  for (const RatePoint& p : points) {
    out << p.distance_km << ',' << p.mu << ',' << p.Q << ',' << p.e << ','
        << p.delta_prime << ',' << p.e_ph << ',' << p.G << '\n';
  }
}

}  // namespace qkdwcp
