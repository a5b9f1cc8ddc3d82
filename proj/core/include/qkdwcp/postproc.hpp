#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace qkdwcp {

// Dense binary matrix with 64-bit packed rows.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool v);

  Gf2Matrix transposed() const;
  Gf2Matrix operator*(const Gf2Matrix& rhs) const;
  bool operator==(const Gf2Matrix& rhs) const = default;
  bool is_zero() const;

  /// Rank by Gaussian elimination on a copy.
  std::size_t rank() const;

  /// Basis of the null space {v : M v = 0}, one basis vector per column of
  /// the returned (cols x nullity) matrix.
  Gf2Matrix null_space_basis() const;

  /// "rows cols" header line, then one hex-packed line per row (row bit j
  /// is bit (j mod 4) of hex digit j/4, low bit first).
  void serialize(std::ostream& out) const;
  static Gf2Matrix deserialize(std::istream& in);

 private:
  std::size_t rows_ = 0, cols_ = 0, words_per_row_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Privacy-amplification pair: H uniform among full-rank n x (n-k) binary
/// matrices (rejection sampling), G a uniformly chosen full-rank basis of
/// the null space of H^T, so rank(G) = k, rank(H) = n-k and G^T H = 0.
std::pair<Gf2Matrix, Gf2Matrix> sample_pa_matrices(std::size_t n, std::size_t k,
                                                   std::uint64_t seed);

/// Final key kappa = v G over GF(2); v has n bits, the result k bits.
std::vector<std::uint8_t> extract_key(const std::vector<std::uint8_t>& v,
                                      const Gf2Matrix& g);

/// Key length k = n - ceil(n (H(delta_y') + 2 epsilon)), floored at 0.
std::size_t pa_output_length(std::size_t n, double delta_y_prime, double epsilon);

}  // namespace qkdwcp
