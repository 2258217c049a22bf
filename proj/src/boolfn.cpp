#include "cssgames/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cssgames::boolfn {

BooleanFunction::BooleanFunction(int nvars) : nvars_(nvars) {
  if (nvars < 0 || nvars > 40) throw std::invalid_argument("nvars out of range");
  std::uint64_t words = nvars_ >= 6 ? (std::uint64_t(1) << (nvars_ - 6)) : 1;
  w_.assign(words, 0);
}

BooleanFunction BooleanFunction::constant(int nvars, bool value) {
  BooleanFunction f(nvars);
  if (value) {
    for (auto& w : f.w_) w = ~std::uint64_t(0);
    if (nvars < 6) f.w_[0] &= (std::uint64_t(1) << (std::uint64_t(1) << nvars)) - 1;
  }
  return f;
}

BooleanFunction BooleanFunction::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  int d = -1;
  std::string table;
  if (!(in >> d >> table)) throw std::invalid_argument("truth table needs 'd' then the table");
  if (d < 0 || d > 28) throw std::invalid_argument("truth table arity out of range");
  if (table.size() != (std::size_t(1) << d))
    throw std::invalid_argument("truth table length must be 2^d");
  BooleanFunction f(d);
  for (std::uint64_t x = 0; x < f.table_size(); ++x) {
    if (table[x] == '1') f.set(x, true);
    else if (table[x] != '0') throw std::invalid_argument("truth table must be 0/1");
  }
  return f;
}

std::string BooleanFunction::to_text() const {
  std::string table(table_size(), '0');
  for (std::uint64_t x = 0; x < table_size(); ++x)
    if (value(x)) table[x] = '1';
  std::ostringstream out;
  out << nvars_ << '\n' << table << '\n';
  return out.str();
}

BooleanFunction& BooleanFunction::operator^=(const BooleanFunction& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("arity mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

std::uint64_t BooleanFunction::weight() const {
  std::uint64_t n = 0;
  for (auto w : w_) n += std::popcount(w);
  return n;
}

int AnfPolynomial::degree() const {
  int d = 0;
  for (auto m : monomials) d = std::max(d, std::popcount(m));
  return d;
}

bool AnfPolynomial::evaluate(std::uint64_t x) const {
  bool acc = false;
  for (auto m : monomials)
    if ((x & m) == m) acc = !acc;
  return acc;
}

BooleanFunction AnfPolynomial::to_function() const {
  return BooleanFunction::from_lambda(nvars, [&](std::uint64_t x) { return evaluate(x); });
}

std::int64_t WalshSpectrum::max_abs() const {
  std::int64_t m = 0;
  for (auto c : coeffs) m = std::max(m, c < 0 ? -c : c);
  return m;
}

bool WalshSpectrum::parseval_holds() const {
  unsigned __int128 sum = 0;
  for (auto c : coeffs) sum += (unsigned __int128)(c * c);
  return sum == ((unsigned __int128)1 << (2 * nvars));
}

AnfPolynomial anf_from_table(const BooleanFunction& f) {
  int d = f.nvars();
  std::vector<std::uint8_t> a(std::size_t(1) << d);
  for (std::uint64_t x = 0; x < f.table_size(); ++x) a[x] = f.value(x);
  // Butterfly Moebius transform: a[S] becomes XOR of f over subsets of S.
  for (int k = 0; k < d; ++k) {
    std::uint64_t half = std::uint64_t(1) << k;
    for (std::uint64_t x = 0; x < f.table_size(); ++x)
      if (x & half) a[x] ^= a[x ^ half];
  }
  AnfPolynomial p;
  p.nvars = d;
  for (std::uint64_t m = 0; m < f.table_size(); ++m)
    if (a[m]) p.monomials.push_back(std::uint32_t(m));
  return p;
}

WalshSpectrum walsh_transform(const BooleanFunction& f, int cap_nvars) {
  int d = f.nvars();
  if (d > cap_nvars) throw std::length_error("arity above the Walsh transform cap");
  WalshSpectrum s;
  s.nvars = d;
  s.coeffs.resize(std::size_t(1) << d);
  for (std::uint64_t x = 0; x < f.table_size(); ++x)
    s.coeffs[x] = f.value(x) ? -1 : 1;
  for (int k = 0; k < d; ++k) {
    std::uint64_t half = std::uint64_t(1) << k;
    for (std::uint64_t base = 0; base < f.table_size(); base += half << 1) {
      for (std::uint64_t i = base; i < base + half; ++i) {
        std::int64_t a = s.coeffs[i], b = s.coeffs[i + half];
        s.coeffs[i] = a + b;
        s.coeffs[i + half] = a - b;
      }
    }
  }
  return s;
}

std::int64_t nonlinearity(const BooleanFunction& f) {
  WalshSpectrum s = walsh_transform(f);
  return (std::int64_t(1) << (f.nvars() - 1)) - s.max_abs() / 2;
}

bool is_bent(const BooleanFunction& f) {
  if (f.nvars() % 2 != 0) return false;
  WalshSpectrum s = walsh_transform(f);
  std::int64_t flat = std::int64_t(1) << (f.nvars() / 2);
  for (auto c : s.coeffs)
    if (c != flat && c != -flat) return false;
  return true;
}

std::int64_t generalized_walsh(const BooleanFunction& f, const BooleanFunction& c) {
  if (f.nvars() != c.nvars()) throw std::invalid_argument("arity mismatch");
  std::uint64_t dist = (f ^ c).weight();
  return std::int64_t(f.table_size()) - 2 * std::int64_t(dist);
}

BooleanFunction apply_affine_substitution(const BooleanFunction& f,
                                          const f2::BitMatrix& t,
                                          const f2::BitVector& b) {
  int d = f.nvars();
  if (t.rows() != std::size_t(d) || t.cols() != std::size_t(d) || b.size() != std::size_t(d))
    throw std::invalid_argument("transform shape mismatch");
  if (f2::rank(t) != std::size_t(d))
    throw std::invalid_argument("substitution matrix must be invertible");
  // Row i of T as an index mask, so that xT = XOR of rows with x_i = 1.
  std::vector<std::uint64_t> row_mask(d);
  for (int i = 0; i < d; ++i) row_mask[i] = t.row(i).to_index();
  std::uint64_t shift = b.to_index();
  BooleanFunction g(d);
  for (std::uint64_t x = 0; x < f.table_size(); ++x) {
    std::uint64_t y = shift;
    std::uint64_t rest = x;
    while (rest) {
      int i = std::countr_zero(rest);
      rest &= rest - 1;
      y ^= row_mask[i];
    }
    g.set(x, f.value(y));
  }
  return g;
}

namespace {

// Max |Walsh coefficient| of f ^ q over all homogeneous quadratic parts q in a
// mask subrange. Gray-code order flips one pair monomial per step.
std::int64_t max_over_quadratic_parts(const BooleanFunction& f,
                                      const std::vector<BooleanFunction>& pair_tables,
                                      std::uint64_t begin, std::uint64_t end) {
  BooleanFunction g = f;
  std::uint64_t gray = begin ^ (begin >> 1);
  for (int bit = 0; bit < int(pair_tables.size()); ++bit)
    if ((gray >> bit) & 1) g ^= pair_tables[bit];
  std::int64_t best = 0;
  for (std::uint64_t m = begin; m < end; ++m) {
    best = std::max(best, walsh_transform(g).max_abs());
    if (m + 1 < end) {
      std::uint64_t next_gray = (m + 1) ^ ((m + 1) >> 1);
      int bit = std::countr_zero(gray ^ next_gray);
      g ^= pair_tables[bit];
      gray = next_gray;
    }
  }
  return best;
}

}  // namespace

std::int64_t nonquadraticity(const BooleanFunction& f, std::uint64_t cap_quadratic_parts,
                             int threads) {
  int d = f.nvars();
  if (d == 0) return 0;
  int npairs = d * (d - 1) / 2;
  if (npairs >= 63 || (std::uint64_t(1) << npairs) > cap_quadratic_parts)
    throw std::length_error("too many quadratic parts; raise the cap to force it");
  std::vector<BooleanFunction> pair_tables;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      pair_tables.push_back(BooleanFunction::from_lambda(
          d, [&](std::uint64_t x) { return ((x >> i) & (x >> j)) & 1; }));

  std::uint64_t total = std::uint64_t(1) << npairs;
  std::int64_t best = 0;
  int nthreads = std::max(1, threads);
  if (nthreads == 1 || total < 1024) {
    best = max_over_quadratic_parts(f, pair_tables, 0, total);
  } else {
    std::vector<std::int64_t> results(nthreads, 0);
    std::vector<std::thread> pool;
    std::uint64_t chunk = (total + nthreads - 1) / nthreads;
    for (int tid = 0; tid < nthreads; ++tid) {
      std::uint64_t lo = tid * chunk, hi = std::min(total, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, tid, lo, hi] {
        results[tid] = max_over_quadratic_parts(f, pair_tables, lo, hi);
      });
    }
    for (auto& t : pool) t.join();
    for (auto r : results) best = std::max(best, r);
  }
  return (std::int64_t(1) << (d - 1)) - best / 2;
}

}  // namespace cssgames::boolfn
