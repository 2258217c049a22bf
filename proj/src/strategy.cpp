#include "cssgames/strategy.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace cssgames::strategy {

using boolfn::BooleanFunction;
using cssgame::CssCode;
using cssgame::GameSpec;
using f2::BitMatrix;
using f2::BitVector;

std::vector<BitMatrix> bilinear_span_basis(const CssCode& code) {
  std::size_t n = code.hx.rows(), m = code.hz.rows();
  BitMatrix vecs(code.nqubits(), n * m);
  for (std::size_t q = 0; q < code.nqubits(); ++q)
    for (std::size_t a = 0; a < n; ++a)
      if (code.hx.get(a, q))
        for (std::size_t b = 0; b < m; ++b)
          if (code.hz.get(b, q)) vecs.set(q, a * m + b, true);
  f2::RowReduction rr = f2::row_reduce(vecs);
  std::vector<BitMatrix> basis;
  for (std::size_t r = 0; r < rr.rank; ++r) {
    BitMatrix u(n, m);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < m; ++b)
        u.set(a, b, rr.rref.get(r, a * m + b));
    basis.push_back(std::move(u));
  }
  return basis;
}

namespace {

// Table of <x uxz, z> over the d = n + m parameter bits.
BooleanFunction bilinear_table(const BitMatrix& uxz) {
  int n = int(uxz.rows()), m = int(uxz.cols());
  std::vector<std::uint64_t> row_image(n);
  for (int a = 0; a < n; ++a) row_image[a] = uxz.row(a).to_index();
  BooleanFunction f(n + m);
  for (std::uint64_t q = 0; q < f.table_size(); ++q) {
    std::uint64_t x = q & ((std::uint64_t(1) << n) - 1);
    std::uint64_t z = q >> n;
    std::uint64_t img = 0;
    std::uint64_t rest = x;
    while (rest) {
      int i = std::countr_zero(rest);
      rest &= rest - 1;
      img ^= row_image[i];
    }
    f.set(q, std::popcount(img & z) & 1);
  }
  return f;
}

struct SpanSearchResult {
  std::int64_t best_abs = -1;
  std::uint64_t best_mask = 0;  // combination of span basis elements
  std::uint64_t best_y = 0;
  bool best_negative = false;
};

// Max |W_{f ^ q}| over the span combinations, ties broken on the smallest
// (mask, y) pair for reproducibility.
SpanSearchResult search_span(const BooleanFunction& f,
                             const std::vector<BooleanFunction>& basis_tables) {
  SpanSearchResult out;
  std::size_t s = basis_tables.size();
  BooleanFunction g = f;
  std::uint64_t gray = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << s); ++mask) {
    std::uint64_t want = mask ^ (mask >> 1);
    std::uint64_t delta = gray ^ want;
    while (delta) {
      int bit = std::countr_zero(delta);
      delta &= delta - 1;
      g ^= basis_tables[bit];
    }
    gray = want;
    boolfn::WalshSpectrum w = boolfn::walsh_transform(g);
    for (std::uint64_t y = 0; y < w.coeffs.size(); ++y) {
      std::int64_t c = w.coeffs[y];
      std::int64_t a = c < 0 ? -c : c;
      if (a > out.best_abs ||
          (a == out.best_abs && std::make_pair(want, y) < std::make_pair(out.best_mask, out.best_y))) {
        out.best_abs = a;
        out.best_mask = want;
        out.best_y = y;
        out.best_negative = c < 0;
      }
    }
  }
  return out;
}

OmegaReport exact_from_span(const CssCode& code, const BooleanFunction& target,
                            std::uint64_t budget) {
  std::size_t n = code.hx.rows(), m = code.hz.rows();
  if (int(n + m) != target.nvars()) throw std::invalid_argument("target arity mismatch");
  std::vector<BitMatrix> basis = bilinear_span_basis(code);
  int d = target.nvars();
  if (basis.size() >= 40 ||
      (std::uint64_t(1) << basis.size()) > budget / (target.table_size() * std::max(d, 1)))
    throw std::length_error("span enumeration above budget; use bounds instead");

  std::vector<BooleanFunction> tables;
  tables.reserve(basis.size());
  for (const auto& u : basis) tables.push_back(bilinear_table(u));

  SpanSearchResult r = search_span(target, tables);

  OmegaReport rep;
  std::int64_t total = std::int64_t(target.table_size());
  rep.omega = Fraction::of((total + r.best_abs) / 2, total);
  rep.method = OmegaMethod::Exact;
  ClassicalStrategy best;
  best.u0 = r.best_negative;
  best.ux = BitVector::from_index(r.best_y & ((std::uint64_t(1) << n) - 1), n);
  best.uz = BitVector::from_index(r.best_y >> n, m);
  best.uxz = BitMatrix(n, m);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if ((r.best_mask >> k) & 1)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < m; ++b)
          if (basis[k].get(a, b)) best.uxz.set(a, b, !best.uxz.get(a, b));
  rep.best = std::move(best);
  return rep;
}

OmegaReport exact_from_nonlinearity(const GameSpec& game, bool x_side_fixed) {
  BooleanFunction f = game.target_function();
  boolfn::WalshSpectrum w = boolfn::walsh_transform(f);
  std::int64_t best = -1;
  std::uint64_t best_y = 0;
  bool neg = false;
  for (std::uint64_t y = 0; y < w.coeffs.size(); ++y) {
    std::int64_t a = w.coeffs[y] < 0 ? -w.coeffs[y] : w.coeffs[y];
    if (a > best) {
      best = a;
      best_y = y;
      neg = w.coeffs[y] < 0;
    }
  }
  OmegaReport rep;
  std::int64_t total = std::int64_t(f.table_size());
  rep.omega = Fraction::of((total + best) / 2, total);
  rep.method = OmegaMethod::NonlinearityOnly;
  ClassicalStrategy s;
  s.u0 = neg;
  std::size_t n = game.code.hx.rows(), m = game.code.hz.rows();
  if (x_side_fixed) {
    s.ux = BitVector(0);
    s.uz = BitVector::from_index(best_y, m);
  } else {
    s.ux = BitVector::from_index(best_y, n);
    s.uz = BitVector(0);
  }
  s.uxz = BitMatrix(s.ux.size(), s.uz.size());
  rep.best = std::move(s);
  return rep;
}

}  // namespace

OmegaReport omega_exact_for_target(const CssCode& code, const BooleanFunction& target,
                                   std::uint64_t budget) {
  return exact_from_span(code, target, budget);
}

OmegaReport omega_exact(const GameSpec& game, std::uint64_t budget) {
  if (game.x_full_image && game.z_full_image)
    return exact_from_span(game.code, game.target_function(), budget);
  if (game.x_count == 1 && game.z_full_image) return exact_from_nonlinearity(game, true);
  if (game.z_count == 1 && game.x_full_image) return exact_from_nonlinearity(game, false);
  // Fixed lists break the image structure behind the span formula; play the
  // strategies out directly.
  OmegaReport rep;
  rep.omega = omega_bruteforce_oracle(game);
  rep.method = OmegaMethod::Oracle;
  return rep;
}

OmegaReport omega_fixed_x(const GameSpec& game) {
  if (game.x_count != 1 || !game.z_full_image)
    throw std::invalid_argument("omega_fixed_x needs |I_X| = 1 and unrestricted z inputs");
  return exact_from_nonlinearity(game, true);
}

Fraction omega_bruteforce_oracle(const GameSpec& game) {
  std::size_t nplayers = game.code.nqubits();
  if (nplayers > 4) throw std::length_error("brute-force oracle capped at 4 players");
  if (game.nqueries() > 256) throw std::length_error("brute-force oracle capped at 256 queries");

  std::size_t nq = game.nqueries();
  std::size_t words = (nq + 63) / 64;
  // Per player and per 4-bit answer table, the answers across all queries.
  std::vector<std::array<std::vector<std::uint64_t>, 16>> answers(nplayers);
  std::vector<std::uint64_t> target_mask(words, 0);
  for (std::size_t i = 0; i < nplayers; ++i)
    for (int t = 0; t < 16; ++t) answers[i][t].assign(words, 0);

  for (std::size_t zi = 0; zi < game.z_count; ++zi) {
    for (std::size_t xi = 0; xi < game.x_count; ++xi) {
      std::size_t q = game.query_id(xi, zi);
      if (game.target(xi, zi)) target_mask[q >> 6] |= std::uint64_t(1) << (q & 63);
      for (std::size_t i = 0; i < nplayers; ++i) {
        int question = int(game.query_a(xi).get(i)) + 2 * int(game.query_b(zi).get(i));
        for (int t = 0; t < 16; ++t)
          if ((t >> question) & 1) answers[i][t][q >> 6] |= std::uint64_t(1) << (q & 63);
      }
    }
  }

  std::uint64_t tail_mask = (nq % 64) ? ((std::uint64_t(1) << (nq % 64)) - 1) : ~std::uint64_t(0);
  std::int64_t best = 0;
  std::uint64_t ncombos = 1;
  for (std::size_t i = 0; i < nplayers; ++i) ncombos *= 16;
  std::vector<std::uint64_t> acc(words);
  for (std::uint64_t combo = 0; combo < ncombos; ++combo) {
    std::fill(acc.begin(), acc.end(), 0);
    std::uint64_t c = combo;
    for (std::size_t i = 0; i < nplayers; ++i) {
      const auto& a = answers[i][c & 15];
      c >>= 4;
      for (std::size_t w = 0; w < words; ++w) acc[w] ^= a[w];
    }
    std::int64_t wins = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t agree = ~(acc[w] ^ target_mask[w]);
      if (w + 1 == words) agree &= tail_mask;
      wins += std::popcount(agree);
    }
    best = std::max(best, wins);
  }
  return Fraction::of(best, std::int64_t(nq));
}

OmegaBounds omega_bounds_of(const GameSpec& game) {
  if (!game.has_bit_parametrization())
    throw std::invalid_argument("bounds need a power-of-two query space");
  BooleanFunction f = game.target_function();
  int n = game.xbits, m = game.zbits;
  std::int64_t total = std::int64_t(f.table_size());

  std::int64_t affine_best = boolfn::walsh_transform(f).max_abs();

  // Triangle inequality over the x slices.
  std::int64_t slice_sum = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) {
    BooleanFunction fx(m);
    for (std::uint64_t z = 0; z < (std::uint64_t(1) << m); ++z)
      fx.set(z, f.value(x | (z << n)));
    slice_sum += boolfn::walsh_transform(fx).max_abs();
  }

  OmegaBounds b;
  b.lower = Fraction::of((total + affine_best) / 2, total);
  b.upper = Fraction::of((total + slice_sum) / 2, total);
  return b;
}

Fraction strategy_success_fraction(const GameSpec& game, const ClassicalStrategy& strat) {
  if (!game.has_bit_parametrization())
    throw std::invalid_argument("strategy evaluation needs a bit parametrization");
  int n = game.xbits, m = game.zbits;
  if (strat.ux.size() != std::size_t(n) || strat.uz.size() != std::size_t(m) ||
      strat.uxz.rows() != std::size_t(n) || strat.uxz.cols() != std::size_t(m))
    throw std::invalid_argument("strategy shape mismatch");
  std::int64_t wins = 0;
  for (std::uint64_t q = 0; q < game.nqueries(); ++q) {
    std::uint64_t xi = q & ((std::uint64_t(1) << n) - 1);
    std::uint64_t zi = q >> n;
    BitVector x = BitVector::from_index(xi, n), z = BitVector::from_index(zi, m);
    bool c = strat.u0 ^ strat.ux.dot(x) ^ strat.uz.dot(z) ^ strat.uxz.vec_mul(x).dot(z);
    if (c == (game.target_table[q] != 0)) ++wins;
  }
  return Fraction::of(wins, std::int64_t(game.nqueries()));
}

bool strategy_space_contains(const CssCode& code, const BooleanFunction& candidate) {
  std::size_t n = code.hx.rows(), m = code.hz.rows();
  if (candidate.nvars() != int(n + m)) throw std::invalid_argument("arity mismatch");
  if (candidate.nvars() > 16) throw std::length_error("membership test capped at 16 bits");
  std::vector<BitMatrix> span = bilinear_span_basis(code);
  std::size_t nbasis = 1 + n + m + span.size();
  std::size_t cols = candidate.table_size();
  BitMatrix rows(nbasis, cols);
  std::size_t r = 0;
  for (std::size_t q = 0; q < cols; ++q) rows.set(r, q, true);
  ++r;
  for (std::size_t i = 0; i < n + m; ++i, ++r)
    for (std::size_t q = 0; q < cols; ++q) rows.set(r, q, (q >> i) & 1);
  for (const auto& u : span) {
    BooleanFunction t = bilinear_table(u);
    for (std::size_t q = 0; q < cols; ++q) rows.set(r, q, t.value(q));
    ++r;
  }
  BitVector v(cols);
  for (std::size_t q = 0; q < cols; ++q) v.set(q, candidate.value(q));
  return f2::in_row_space(rows, v);
}

}  // namespace cssgames::strategy
