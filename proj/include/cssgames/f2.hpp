#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Dense linear algebra over F2. Bit i of an integer index encodes variable
// x_i (little-endian); every module in this project shares that convention.

namespace cssgames::f2 {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t len) : len_(len), w_((len + 63) / 64, 0) {}

  static BitVector from_string(std::string_view s);
  // Lowest `len` bits of `index`, bit i -> position i.
  static BitVector from_index(std::uint64_t index, std::size_t len);

  std::size_t size() const { return len_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  BitVector& operator^=(const BitVector& o);
  BitVector& operator&=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) { a ^= b; return a; }
  friend BitVector operator&(BitVector a, const BitVector& b) { a &= b; return a; }

  bool dot(const BitVector& o) const;  // parity of the AND
  std::size_t weight() const;
  bool any() const;
  bool is_zero() const { return !any(); }
  std::uint64_t to_index() const;  // requires len <= 64
  std::string str() const;

  bool operator==(const BitVector& o) const { return len_ == o.len_ && w_ == o.w_; }
  bool operator!=(const BitVector& o) const { return !(*this == o); }
  bool operator<(const BitVector& o) const;

  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> w_;
  friend class BitMatrix;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64), w_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<std::string>& rows);
  // Text format: first line "rows cols", then one 0/1 string per row.
  static BitMatrix parse_text(std::string_view text);
  std::string to_text() const;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (w_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t m = std::uint64_t(1) << (c & 63);
    std::uint64_t& word = w_[r * stride_ + (c >> 6)];
    if (v) word |= m; else word &= ~m;
  }

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  void xor_row(std::size_t dst, std::size_t src);  // row dst ^= row src
  void swap_rows(std::size_t a, std::size_t b);

  BitMatrix transposed() const;
  BitMatrix mul(const BitMatrix& o) const;        // this * o
  BitVector mul_vec(const BitVector& v) const;    // this * v^T, length rows
  BitVector vec_mul(const BitVector& v) const;    // v * this, length cols

  bool is_zero() const;
  bool is_symmetric() const;
  bool has_zero_diagonal() const;
  bool operator==(const BitMatrix& o) const;

 private:
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::uint64_t> w_;
};

struct RowReduction {
  BitMatrix rref;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

// Deterministic elimination: leftmost nonzero column, first available row.
RowReduction row_reduce(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

// Basis of {v : m v^T = 0}; size == cols - rank.
std::vector<BitVector> kernel_basis(const BitMatrix& m);

struct AffineSolution {
  BitVector particular;
  std::vector<BitVector> kernel;
};

// Solves m x^T = rhs; absent result signals an inconsistent system.
std::optional<AffineSolution> solve_affine(const BitMatrix& m, const BitVector& rhs);

// All 2^rank distinct row-space elements, each exactly once, in a fixed order.
std::vector<BitVector> row_span(const BitMatrix& m, std::size_t cap = std::size_t(1) << 20);

bool in_row_space(const BitMatrix& m, const BitVector& v);

}  // namespace cssgames::f2
