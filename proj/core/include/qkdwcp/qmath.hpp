#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qkdwcp {

using Complex = std::complex<double>;
using Cmat = Eigen::MatrixXcd;

// Tolerance table used throughout the library.
namespace tol {
inline constexpr double scalar = 1e-12;      // closed-form scalar identities
inline constexpr double structural = 1e-10;  // trace / completeness checks
inline constexpr double psd_floor = -1e-10;  // smallest admissible eigenvalue of a PSD input
inline constexpr double eig_clamp = 1e-12;   // roundoff clamp in matrix square roots
}  // namespace tol

/// Overlap of two single-mode coherent states,
/// <beta|alpha> = exp(-(|a|^2+|b|^2)/2 + conj(b)*a).
Complex coherent_overlap(Complex alpha, Complex beta);

/// Binary Shannon entropy H(d) = -d log2 d - (1-d) log2(1-d), with
/// H(0) = H(1) = 0. Throws std::domain_error outside [0,1].
double binary_entropy(double delta);

/// Principal square root of a Hermitian PSD matrix; eigenvalues below
/// tol::eig_clamp are clamped to zero.
Cmat matrix_sqrt_psd(const Cmat& m);

/// Uhlmann fidelity F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2,
/// clamped to [0,1]. Inputs must be unit-trace PSD matrices of equal
/// dimension.
double fidelity(const Cmat& rho, const Cmat& sigma);

/// Trace distance (1/2)||rho - sigma||_tr.
double trace_distance(const Cmat& rho, const Cmat& sigma);

/// Statistical overlap sum_a sqrt(tr(rho_x E_a) tr(rho_y E_a)) of the
/// outcome distributions of a POVM on two states. The POVM elements must
/// be PSD and sum to the identity within tol::structural.
double statistical_overlap(const Cmat& rho_x, const Cmat& rho_y,
                           const std::vector<Cmat>& povm);

}  // namespace qkdwcp
