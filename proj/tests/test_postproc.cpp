#include <doctest.h>

#include <random>
#include <sstream>
#include <vector>

#include "qkdwcp/postproc.hpp"

using namespace qkdwcp;

namespace {

Gf2Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Gf2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng() & 1u);
  }
  return m;
}

std::vector<std::uint8_t> random_bits(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng() & 1u);
  return v;
}

std::vector<std::uint8_t> xor_bits(const std::vector<std::uint8_t>& a,
                                   const std::vector<std::uint8_t>& b) {
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

}  // namespace

TEST_CASE("Gf2Matrix basics") {
  Gf2Matrix m(3, 70);  // spans two 64-bit words per row
  CHECK(m.is_zero());
  m.set(1, 0, true);
  m.set(1, 69, true);
  CHECK(m.get(1, 0));
  CHECK(m.get(1, 69));
  CHECK_FALSE(m.get(1, 68));
  CHECK_FALSE(m.is_zero());
  m.set(1, 0, false);
  CHECK_FALSE(m.get(1, 0));

  const Gf2Matrix t = m.transposed();
  CHECK(t.rows() == 70);
  CHECK(t.cols() == 3);
  CHECK(t.get(69, 1));
  CHECK(t.transposed() == m);
}

TEST_CASE("Gf2Matrix multiplication and rank") {
  std::mt19937_64 rng(41);
  SUBCASE("identity is neutral") {
    Gf2Matrix id(5, 5);
    for (std::size_t i = 0; i < 5; ++i) id.set(i, i, true);
    const Gf2Matrix a = random_matrix(5, 5, rng);
    CHECK(id * a == a);
    CHECK(a * id == a);
    CHECK(id.rank() == 5);
  }
  SUBCASE("rank bounds and null space dimension") {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t rows = 2 + rng() % 20;
      const std::size_t cols = 2 + rng() % 20;
      const Gf2Matrix a = random_matrix(rows, cols, rng);
      const std::size_t r = a.rank();
      CHECK(r <= std::min(rows, cols));
      CHECK(r == a.transposed().rank());
      const Gf2Matrix ns = a.null_space_basis();
      CHECK(ns.rows() == cols);
      CHECK(ns.cols() == cols - r);
      CHECK((a * ns).is_zero());
      CHECK(ns.rank() == cols - r);
    }
  }
  SUBCASE("associativity on random triples") {
    for (int trial = 0; trial < 10; ++trial) {
      const Gf2Matrix a = random_matrix(6, 9, rng);
      const Gf2Matrix b = random_matrix(9, 4, rng);
      const Gf2Matrix c = random_matrix(4, 7, rng);
      CHECK((a * b) * c == a * (b * c));
    }
  }
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t rows = 1 + rng() % 40;
    const std::size_t cols = 1 + rng() % 90;
    const Gf2Matrix m = random_matrix(rows, cols, rng);
    std::stringstream buf;
    m.serialize(buf);
    const Gf2Matrix back = Gf2Matrix::deserialize(buf);
    CHECK(back == m);
  }
  SUBCASE("two matrices share a stream") {
    const Gf2Matrix a = random_matrix(5, 12, rng);
    const Gf2Matrix b = random_matrix(7, 3, rng);
    std::stringstream buf;
    a.serialize(buf);
    b.serialize(buf);
    CHECK(Gf2Matrix::deserialize(buf) == a);
    CHECK(Gf2Matrix::deserialize(buf) == b);
  }
  SUBCASE("corrupt header rejected") {
    std::istringstream bad("not a header\n");
    CHECK_THROWS(Gf2Matrix::deserialize(bad));
  }
}

TEST_CASE("privacy-amplification pairs: 100 random instances") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 63;  // n in [2, 64]
    const std::size_t k = 1 + rng() % (n - 1);
    CAPTURE(n);
    CAPTURE(k);
    const auto [g, h] = sample_pa_matrices(n, k, 1000 + trial);
    REQUIRE(g.rows() == n);
    REQUIRE(g.cols() == k);
    REQUIRE(h.rows() == n);
    REQUIRE(h.cols() == n - k);
    CHECK(g.rank() == k);
    CHECK(h.rank() == n - k);
    CHECK((g.transposed() * h).is_zero());
    // column space of G is exactly the null space of H^T: containment plus
    // matching dimensions
    CHECK((h.transposed() * g).is_zero());
  }
}

TEST_CASE("privacy-amplification edge cases") {
  SUBCASE("n = 2, k = 1") {
    const auto [g, h] = sample_pa_matrices(2, 1, 7);
    CHECK(g.rank() == 1);
    CHECK(h.rank() == 1);
    CHECK((g.transposed() * h).is_zero());
  }
  SUBCASE("k = n - 1") {
    const auto [g, h] = sample_pa_matrices(16, 15, 7);
    CHECK(g.rank() == 15);
    CHECK(h.rank() == 1);
    CHECK((g.transposed() * h).is_zero());
  }
  SUBCASE("deterministic in the seed") {
    const auto [g1, h1] = sample_pa_matrices(32, 16, 5);
    const auto [g2, h2] = sample_pa_matrices(32, 16, 5);
    CHECK(g1 == g2);
    CHECK(h1 == h2);
  }
  SUBCASE("invalid shapes rejected") {
    CHECK_THROWS(sample_pa_matrices(8, 8, 1));
    CHECK_THROWS(sample_pa_matrices(8, 9, 1));
    CHECK_THROWS(sample_pa_matrices(0, 0, 1));
  }
}

TEST_CASE("key extraction") {
  std::mt19937_64 rng(53);
  const auto [g, h] = sample_pa_matrices(24, 10, 3);
  SUBCASE("zero in, zero out") {
    const std::vector<std::uint8_t> zero(24, 0);
    const auto key = extract_key(zero, g);
    REQUIRE(key.size() == 10);
    for (auto b : key) CHECK(b == 0);
  }
  SUBCASE("linearity on random pairs") {
    for (int trial = 0; trial < 50; ++trial) {
      const auto v = random_bits(24, rng);
      const auto w = random_bits(24, rng);
      CHECK(extract_key(xor_bits(v, w), g) ==
            xor_bits(extract_key(v, g), extract_key(w, g)));
    }
  }
  SUBCASE("length mismatch rejected") {
    CHECK_THROWS(extract_key(std::vector<std::uint8_t>(23, 0), g));
  }
}

TEST_CASE("output-length rule") {
  CHECK(pa_output_length(1000, 0.0, 0.0) == 1000);
  CHECK(pa_output_length(1000, 0.5, 0.0) == 0);
  CHECK(pa_output_length(10000, 0.11, 0.01) == 4800);
  SUBCASE("floored at zero") {
    CHECK(pa_output_length(100, 0.5, 0.25) == 0);
  }
  SUBCASE("monotone in delta") {
    std::size_t prev = 10000;
    for (double d = 0.0; d <= 0.5; d += 0.01) {
      const std::size_t k = pa_output_length(10000, d, 0.0);
      CHECK(k <= prev);
      prev = k;
    }
  }
}
