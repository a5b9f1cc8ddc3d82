#pragma once

#include <random>
#include <vector>

#include "qkdwcp/qmath.hpp"

namespace qkdwcp::testing {

inline Eigen::VectorXcd random_pure_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
  psi.normalize();
  return psi;
}

inline Cmat random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Cmat b(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) b(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Cmat rho = b * b.adjoint();
  rho /= rho.trace();
  return rho;
}

// Random POVM: conjugate random PSD matrices by the inverse square root of
// their sum, so completeness holds exactly up to roundoff.
inline std::vector<Cmat> random_povm(int dim, int elements, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Cmat> parts;
  Cmat sum = Cmat::Zero(dim, dim);
  for (int k = 0; k < elements; ++k) {
    Cmat b(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) b(i, j) = Complex(gauss(rng), gauss(rng));
    }
    parts.push_back(b * b.adjoint());
    sum += parts.back();
  }
  Eigen::SelfAdjointEigenSolver<Cmat> es(sum);
  const Cmat inv_sqrt = es.eigenvectors() *
                        es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                        es.eigenvectors().adjoint();
  for (Cmat& e : parts) e = inv_sqrt * e * inv_sqrt;
  return parts;
}

}  // namespace qkdwcp::testing
