#include "qkdwcp/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkdwcp {

namespace {

void check_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument(std::string(what) + ": non-finite amplitude");
  }
}

void check_state(const Cmat& rho, const char* what) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix not square");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol::structural) {
    throw std::invalid_argument(std::string(what) + ": matrix not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 ||
      std::abs(rho.trace().imag()) > tol::structural) {
    throw std::invalid_argument(std::string(what) + ": trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<Cmat> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < tol::psd_floor) {
    throw std::invalid_argument(std::string(what) + ": not positive semidefinite");
  }
}

}  // namespace

Complex coherent_overlap(Complex alpha, Complex beta) {
  check_finite(alpha, "coherent_overlap(alpha)");
  check_finite(beta, "coherent_overlap(beta)");
  const double a2 = std::norm(alpha);
  const double b2 = std::norm(beta);
  return std::exp(Complex(-(a2 + b2) / 2.0, 0.0) + std::conj(beta) * alpha);
}

double binary_entropy(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::domain_error("binary_entropy: argument outside [0,1]");
  }
  if (delta == 0.0 || delta == 1.0) return 0.0;
  return -delta * std::log2(delta) - (1.0 - delta) * std::log2(1.0 - delta);
}

Cmat matrix_sqrt_psd(const Cmat& m) {
  Eigen::SelfAdjointEigenSolver<Cmat> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    ev[i] = ev[i] < tol::eig_clamp ? 0.0 : std::sqrt(ev[i]);
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const Cmat& rho, const Cmat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  check_state(rho, "fidelity(rho)");
  check_state(sigma, "fidelity(sigma)");
  const Cmat sr = matrix_sqrt_psd(rho);
  Cmat inner = sr * sigma * sr;
  inner = (inner + inner.adjoint().eval()) / 2.0;  // symmetrize roundoff
  const double root = matrix_sqrt_psd(inner).trace().real();
  return std::clamp(root * root, 0.0, 1.0);
}

double trace_distance(const Cmat& rho, const Cmat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  check_state(rho, "trace_distance(rho)");
  check_state(sigma, "trace_distance(sigma)");
  Eigen::SelfAdjointEigenSolver<Cmat> es(rho - sigma, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double statistical_overlap(const Cmat& rho_x, const Cmat& rho_y,
                           const std::vector<Cmat>& povm) {
  if (povm.empty()) {
    throw std::invalid_argument("statistical_overlap: empty POVM");
  }
  const Eigen::Index d = rho_x.rows();
  Cmat sum = Cmat::Zero(d, d);
  for (const Cmat& e : povm) {
    if (e.rows() != d || e.cols() != d) {
      throw std::invalid_argument("statistical_overlap: POVM dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Cmat> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < tol::psd_floor) {
      throw std::invalid_argument("statistical_overlap: POVM element not PSD");
    }
    sum += e;
  }
  if ((sum - Cmat::Identity(d, d)).cwiseAbs().maxCoeff() > tol::structural) {
    throw std::invalid_argument("statistical_overlap: POVM does not sum to identity");
  }
  double overlap = 0.0;
  for (const Cmat& e : povm) {
    const double px = std::max(0.0, (rho_x * e).trace().real());
    const double py = std::max(0.0, (rho_y * e).trace().real());
    overlap += std::sqrt(px * py);
  }
  return overlap;
}

}  // namespace qkdwcp
