#include "cssgames/f2.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace cssgames::f2 {

BitVector BitVector::from_string(std::string_view s) {
  BitVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') v.set(i, true);
    else if (s[i] != '0') throw std::invalid_argument("bit string must contain only 0/1");
  }
  return v;
}

BitVector BitVector::from_index(std::uint64_t index, std::size_t len) {
  BitVector v(len);
  if (len > 0) {
    v.w_[0] = len >= 64 ? index : (index & ((std::uint64_t(1) << len) - 1));
  }
  return v;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (len_ != o.len_) throw std::invalid_argument("BitVector length mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& o) {
  if (len_ != o.len_) throw std::invalid_argument("BitVector length mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

bool BitVector::dot(const BitVector& o) const {
  if (len_ != o.len_) throw std::invalid_argument("BitVector length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
  return std::popcount(acc) & 1;
}

std::size_t BitVector::weight() const {
  std::size_t n = 0;
  for (auto w : w_) n += std::popcount(w);
  return n;
}

bool BitVector::any() const {
  for (auto w : w_) if (w) return true;
  return false;
}

std::uint64_t BitVector::to_index() const {
  if (len_ > 64) throw std::length_error("BitVector too long for index");
  return w_.empty() ? 0 : w_[0];
}

std::string BitVector::str() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) if (get(i)) s[i] = '1';
  return s;
}

bool BitVector::operator<(const BitVector& o) const {
  if (len_ != o.len_) return len_ < o.len_;
  for (std::size_t i = w_.size(); i-- > 0;) {
    if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
  }
  return false;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) return BitMatrix(0, 0);
  BitMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c) {
      if (rows[r][c] == '1') m.set(r, c, true);
      else if (rows[r][c] != '0') throw std::invalid_argument("bit string must contain only 0/1");
    }
  }
  return m;
}

BitMatrix BitMatrix::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw std::invalid_argument("matrix header must be 'rows cols'");
  std::vector<std::string> lines;
  std::string line;
  while (lines.size() < rows && in >> line) lines.push_back(line);
  if (lines.size() != rows) throw std::invalid_argument("matrix body shorter than header");
  for (auto& l : lines)
    if (l.size() != cols) throw std::invalid_argument("matrix row width mismatch");
  BitMatrix m = from_rows(lines);
  if (rows == 0) m = BitMatrix(0, cols);
  return m;
}

std::string BitMatrix::to_text() const {
  std::ostringstream out;
  out << rows_ << ' ' << cols_ << '\n';
  for (std::size_t r = 0; r < rows_; ++r) out << row(r).str() << '\n';
  return out.str();
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  for (std::size_t i = 0; i < stride_; ++i) v.w_[i] = w_[r * stride_ + i];
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  for (std::size_t i = 0; i < stride_; ++i) w_[r * stride_ + i] = v.words()[i];
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
  for (std::size_t i = 0; i < stride_; ++i) w_[dst * stride_ + i] ^= w_[src * stride_ + i];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < stride_; ++i)
    std::swap(w_[a * stride_ + i], w_[b * stride_ + i]);
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

BitMatrix BitMatrix::mul(const BitMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  BitMatrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      for (std::size_t i = 0; i < o.stride_; ++i)
        out.w_[r * out.stride_ + i] ^= o.w_[k * o.stride_ + i];
    }
  }
  return out;
}

BitVector BitMatrix::mul_vec(const BitVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  BitVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.set(r, row(r).dot(v));
  return out;
}

BitVector BitMatrix::vec_mul(const BitVector& v) const {
  if (v.size() != rows_) throw std::invalid_argument("vector length mismatch");
  BitVector out(cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (v.get(r)) out ^= row(r);
  return out;
}

bool BitMatrix::is_zero() const {
  for (auto w : w_) if (w) return false;
  return true;
}

bool BitMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if (get(r, c) != get(c, r)) return false;
  return true;
}

bool BitMatrix::has_zero_diagonal() const {
  for (std::size_t r = 0; r < std::min(rows_, cols_); ++r)
    if (get(r, r)) return false;
  return true;
}

bool BitMatrix::operator==(const BitMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
}

RowReduction row_reduce(const BitMatrix& m) {
  RowReduction out{m, {}, 0};
  BitMatrix& a = out.rref;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && !a.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    a.swap_rows(r, pivot);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && a.get(i, c)) a.xor_row(i, r);
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

std::size_t rank(const BitMatrix& m) { return row_reduce(m).rank; }

std::vector<BitVector> kernel_basis(const BitMatrix& m) {
  RowReduction rr = row_reduce(m);
  std::vector<BitVector> basis;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivot_cols) is_pivot[c] = true;
  for (std::size_t free_c = 0; free_c < m.cols(); ++free_c) {
    if (is_pivot[free_c]) continue;
    BitVector v(m.cols());
    v.set(free_c, true);
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
      if (rr.rref.get(i, free_c)) v.set(rr.pivot_cols[i], true);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSolution> solve_affine(const BitMatrix& m, const BitVector& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("rhs length must equal rows");
  BitMatrix a = m;
  BitVector b = rhs;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && !a.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    a.swap_rows(r, pivot);
    bool br = b.get(r), bp = b.get(pivot);
    b.set(r, bp); b.set(pivot, br);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r && a.get(i, c)) {
        a.xor_row(i, r);
        b.set(i, b.get(i) ^ b.get(r));
      }
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.rows(); ++i)
    if (b.get(i)) return std::nullopt;

  AffineSolution sol;
  sol.particular = BitVector(m.cols());
  for (std::size_t i = 0; i < pivot_cols.size(); ++i)
    sol.particular.set(pivot_cols[i], b.get(i));

  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free_c = 0; free_c < m.cols(); ++free_c) {
    if (is_pivot[free_c]) continue;
    BitVector v(m.cols());
    v.set(free_c, true);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
      if (a.get(i, free_c)) v.set(pivot_cols[i], true);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

std::vector<BitVector> row_span(const BitMatrix& m, std::size_t cap) {
  RowReduction rr = row_reduce(m);
  if (rr.rank >= 63 || (std::size_t(1) << rr.rank) > cap)
    throw std::length_error("row space too large to enumerate");
  std::size_t count = std::size_t(1) << rr.rank;
  std::vector<BitVector> out;
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    BitVector v(m.cols());
    for (std::size_t i = 0; i < rr.rank; ++i)
      if ((mask >> i) & 1) v ^= rr.rref.row(i);
    out.push_back(std::move(v));
  }
  return out;
}

bool in_row_space(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("vector length mismatch");
  // v in rowspace(m) iff solving x m = v is consistent, i.e. m^T x^T = v^T.
  return solve_affine(m.transposed(), v).has_value();
}

}  // namespace cssgames::f2
