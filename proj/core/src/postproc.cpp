#include "qkdwcp/postproc.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "qkdwcp/qmath.hpp"

namespace qkdwcp {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64),
      words_(rows * words_per_row_, 0) {}

bool Gf2Matrix::get(std::size_t r, std::size_t c) const {
  return (words_[r * words_per_row_ + c / 64] >> (c % 64)) & 1u;
}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool v) {
  std::uint64_t& w = words_[r * words_per_row_ + c / 64];
  const std::uint64_t mask = 1ULL << (c % 64);
  w = v ? (w | mask) : (w & ~mask);
}

Gf2Matrix Gf2Matrix::transposed() const {
  Gf2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r, true);
    }
  }
  return t;
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("Gf2Matrix: dim mismatch");
  Gf2Matrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      for (std::size_t w = 0; w < rhs.words_per_row_; ++w) {
        out.words_[r * out.words_per_row_ + w] ^=
            rhs.words_[k * rhs.words_per_row_ + w];
      }
    }
  }
  return out;
}

bool Gf2Matrix::is_zero() const {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

namespace {

// Row-echelon elimination; returns pivot column per eliminated row.
std::vector<std::size_t> eliminate(std::vector<std::vector<std::uint8_t>>& m,
                                   std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && !m[pivot][col]) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != row && m[r][col]) {
        for (std::size_t c = col; c < cols; ++c) m[r][c] ^= m[row][c];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<std::uint8_t>> to_dense(const Gf2Matrix& m) {
  std::vector<std::vector<std::uint8_t>> d(m.rows(),
                                           std::vector<std::uint8_t>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) d[r][c] = m.get(r, c);
  }
  return d;
}

}  // namespace

std::size_t Gf2Matrix::rank() const {
  auto d = to_dense(*this);
  return eliminate(d, cols_).size();
}

Gf2Matrix Gf2Matrix::null_space_basis() const {
  auto d = to_dense(*this);
  const std::vector<std::size_t> pivots = eliminate(d, cols_);
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t p : pivots) is_pivot[p] = true;

  const std::size_t nullity = cols_ - pivots.size();
  Gf2Matrix basis(cols_, nullity);
  std::size_t out_col = 0;
  for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
    if (is_pivot[free_col]) continue;
    basis.set(free_col, out_col, true);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (d[i][free_col]) basis.set(pivots[i], out_col, true);
    }
    ++out_col;
  }
  return basis;
}

void Gf2Matrix::serialize(std::ostream& out) const {
  out << rows_ << ' ' << cols_ << '\n';
  const char* hex = "0123456789abcdef";
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; c += 4) {
      unsigned nibble = 0;
      for (std::size_t b = 0; b < 4 && c + b < cols_; ++b) {
        if (get(r, c + b)) nibble |= 1u << b;
      }
      out << hex[nibble];
    }
    out << '\n';
  }
}

Gf2Matrix Gf2Matrix::deserialize(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) {
    throw std::runtime_error("Gf2Matrix: bad header line");
  }
  Gf2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::string line;
    if (!(in >> line) || line.size() != (cols + 3) / 4) {
      throw std::runtime_error("Gf2Matrix: bad hex row");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const char ch = line[c / 4];
      const unsigned nibble =
          ch >= '0' && ch <= '9' ? ch - '0'
          : ch >= 'a' && ch <= 'f' ? ch - 'a' + 10
                                   : throw std::runtime_error("Gf2Matrix: bad hex digit");
      m.set(r, c, (nibble >> (c % 4)) & 1u);
    }
  }
  return m;
}

std::pair<Gf2Matrix, Gf2Matrix> sample_pa_matrices(std::size_t n, std::size_t k,
                                                   std::uint64_t seed) {
  if (k == 0 || k >= n) throw std::invalid_argument("sample_pa_matrices: need 0 < k < n");
  if (n > 4096) throw std::invalid_argument("sample_pa_matrices: n > 4096 unsupported");
  std::mt19937_64 rng(seed);
  const auto random_full_rank = [&rng](std::size_t r, std::size_t c) {
    // full-rank probability over GF(2) exceeds 0.28, so rejection terminates
    // quickly
    while (true) {
      Gf2Matrix m(r, c);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() & 1u);
      }
      if (m.rank() == std::min(r, c)) return m;
    }
  };

  const Gf2Matrix h = random_full_rank(n, n - k);
  const Gf2Matrix basis = h.transposed().null_space_basis();  // n x k
  const Gf2Matrix mix = random_full_rank(k, k);
  return {basis * mix, h};
}

std::vector<std::uint8_t> extract_key(const std::vector<std::uint8_t>& v,
                                      const Gf2Matrix& g) {
  if (v.size() != g.rows()) throw std::invalid_argument("extract_key: dim mismatch");
  std::vector<std::uint8_t> key(g.cols(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] & 1u)) continue;
    for (std::size_t j = 0; j < g.cols(); ++j) key[j] ^= g.get(i, j);
  }
  return key;
}

std::size_t pa_output_length(std::size_t n, double delta_y_prime, double epsilon) {
  if (epsilon < 0.0) throw std::domain_error("pa_output_length: epsilon < 0");
  const double cost = static_cast<double>(n) *
                      (binary_entropy(delta_y_prime) + 2.0 * epsilon);
  const auto sacrificed = static_cast<std::size_t>(std::ceil(cost));
  return sacrificed >= n ? 0 : n - sacrificed;
}

}  // namespace qkdwcp
