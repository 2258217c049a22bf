#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cssgames/f2.hpp"

// Boolean functions as packed truth tables. Table index i holds f at the
// point whose variable j equals bit j of i.

namespace cssgames::boolfn {

class BooleanFunction {
 public:
  BooleanFunction() = default;
  explicit BooleanFunction(int nvars);
  static BooleanFunction constant(int nvars, bool value);
  template <typename F>
  static BooleanFunction from_lambda(int nvars, F&& f) {
    BooleanFunction g(nvars);
    for (std::uint64_t x = 0; x < g.table_size(); ++x) g.set(x, f(x));
    return g;
  }
  // File format: line 1 "d", line 2 a 2^d-character 0/1 string.
  static BooleanFunction parse_text(std::string_view text);
  std::string to_text() const;

  int nvars() const { return nvars_; }
  std::uint64_t table_size() const { return std::uint64_t(1) << nvars_; }
  bool value(std::uint64_t x) const { return (w_[x >> 6] >> (x & 63)) & 1u; }
  void set(std::uint64_t x, bool v) {
    std::uint64_t m = std::uint64_t(1) << (x & 63);
    if (v) w_[x >> 6] |= m; else w_[x >> 6] &= ~m;
  }

  BooleanFunction& operator^=(const BooleanFunction& o);
  friend BooleanFunction operator^(BooleanFunction a, const BooleanFunction& b) {
    a ^= b;
    return a;
  }
  bool operator==(const BooleanFunction& o) const {
    return nvars_ == o.nvars_ && w_ == o.w_;
  }

  std::uint64_t weight() const;

 private:
  int nvars_ = 0;
  std::vector<std::uint64_t> w_{0};
};

struct AnfPolynomial {
  int nvars = 0;
  std::vector<std::uint32_t> monomials;  // variable-index subsets as bitmasks, sorted

  int degree() const;
  bool evaluate(std::uint64_t x) const;
  BooleanFunction to_function() const;
  bool operator==(const AnfPolynomial& o) const {
    return nvars == o.nvars && monomials == o.monomials;
  }
};

struct WalshSpectrum {
  int nvars = 0;
  std::vector<std::int64_t> coeffs;

  std::int64_t max_abs() const;
  // Parseval: sum of squared coefficients equals 2^(2d).
  bool parseval_holds() const;
};

// Moebius transform of the truth table.
AnfPolynomial anf_from_table(const BooleanFunction& f);

// Fast Walsh-Hadamard transform of (-1)^f; coeffs[y] = sum_x (-1)^(<x,y> ^ f(x)).
WalshSpectrum walsh_transform(const BooleanFunction& f, int cap_nvars = 28);

// 2^(d-1) - max|W|/2; the Hamming distance to the nearest affine function.
std::int64_t nonlinearity(const BooleanFunction& f);

bool is_bent(const BooleanFunction& f);

// sum_x (-1)^(c(x) ^ f(x)) = 2^d - 2 dist(c, f).
std::int64_t generalized_walsh(const BooleanFunction& f, const BooleanFunction& c);

// g(x) = f(xT ^ b); T must be invertible.
BooleanFunction apply_affine_substitution(const BooleanFunction& f,
                                          const f2::BitMatrix& t,
                                          const f2::BitVector& b);

// Minimum Hamming distance to any function of algebraic degree <= 2,
// by looping over all 2^(d(d-1)/2) homogeneous quadratic parts with one
// FWHT each. cap_quadratic_parts guards the loop size.
std::int64_t nonquadraticity(const BooleanFunction& f,
                             std::uint64_t cap_quadratic_parts = std::uint64_t(1) << 24,
                             int threads = 1);

}  // namespace cssgames::boolfn
