#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <random>
#include <set>

#include "cssgames/strategy.hpp"
#include "oracles.hpp"

using namespace cssgames::strategy;
using namespace cssgames::cssgame;
using cssgames::boolfn::BooleanFunction;
using cssgames::f2::BitMatrix;
using cssgames::f2::BitVector;

namespace {

GameSpec ghz_game(std::size_t n) { return build_xor_game(ghz_code(n), InputSets::unrestricted()); }

GameSpec ghz_fixed_game(std::size_t n) {
  BitVector ones(n);
  for (std::size_t i = 0; i < n; ++i) ones.set(i, true);
  return build_xor_game(ghz_code(n), InputSets::fixed_x(ones));
}

// Count of cyclic bitstrings with no two adjacent ones: Tr([[1,1],[1,0]]^n).
std::int64_t lucas_count(int n) {
  std::int64_t count = 0;
  for (std::uint64_t z = 0; z < (std::uint64_t(1) << n); ++z) {
    std::uint64_t rot = ((z >> 1) | (z << (n - 1))) & ((std::uint64_t(1) << n) - 1);
    if ((z & rot) == 0) ++count;
  }
  return count;
}

BitMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  BitMatrix m(n, n);
  do {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, rng() & 1);
  } while (cssgames::f2::rank(m) != n);
  return m;
}

// Random CSS code: random full-rank hx, then hz spanned by the kernel.
CssCode random_css_code(std::mt19937_64& rng, std::size_t nqubits) {
  while (true) {
    std::size_t rx = 1 + rng() % (nqubits - 1);
    BitMatrix hx(rx, nqubits);
    for (std::size_t i = 0; i < rx; ++i)
      for (std::size_t j = 0; j < nqubits; ++j) hx.set(i, j, rng() & 1);
    if (cssgames::f2::rank(hx) != rx) continue;
    auto ker = cssgames::f2::kernel_basis(hx);
    if (ker.empty()) continue;
    std::size_t rz = 1 + rng() % ker.size();
    BitMatrix hz(rz, nqubits);
    for (std::size_t i = 0; i < rz; ++i) hz.set_row(i, ker[i]);
    if (cssgames::f2::rank(hz) != rz) continue;
    return CssCode(std::move(hx), std::move(hz));
  }
}

}  // namespace

TEST_CASE("fraction formatting") {
  CHECK(Fraction::of(3, 4).str() == "3/4");
  CHECK(Fraction::of(8, 8).str() == "1");
  CHECK(Fraction::of(6, 8) == Fraction::of(3, 4));
}

TEST_CASE("bilinear span examples") {
  auto ghz3 = bilinear_span_basis(ghz_code(3));
  // Oracle: distinct bilinear tables over all diagonal patterns.
  std::set<std::string> distinct;
  CssCode code = ghz_code(3);
  for (std::uint64_t lam = 0; lam < 8; ++lam) {
    std::string table;
    for (std::uint64_t x = 0; x < 2; ++x)
      for (std::uint64_t z = 0; z < 4; ++z) {
        int acc = 0;
        BitVector xv = BitVector::from_index(x, 1), zv = BitVector::from_index(z, 2);
        BitVector a = code.hx.vec_mul(xv), b = code.hz.vec_mul(zv);
        for (std::size_t i = 0; i < 3; ++i)
          if ((lam >> i) & 1) acc ^= int(a.get(i)) & int(b.get(i));
        table.push_back(acc ? '1' : '0');
      }
    distinct.insert(table);
  }
  CHECK(distinct.size() == 4);  // dimension 2
  CHECK(ghz3.size() == 2);

  CssCode two(BitMatrix::from_rows({"11"}), BitMatrix::from_rows({"11"}));
  CHECK(bilinear_span_basis(two).size() == 1);

  for (const CssCode& c : {ghz_code(4), cluster1d_code(4), toric_square_code(2)})
    CHECK(bilinear_span_basis(c).size() <=
          std::min(c.nqubits(), c.hx.rows() * c.hz.rows()));
}

TEST_CASE("omega for GHZ games") {
  CHECK(omega_exact(ghz_fixed_game(3)).omega == Fraction::of(3, 4));
  CHECK(omega_fixed_x(ghz_fixed_game(3)).omega == Fraction::of(3, 4));

  // Eq-61-style closed form, n = N-1: 1/2 (1 + 2^-floor(n/2)).
  for (std::size_t N = 3; N <= 8; ++N) {
    int n = int(N) - 1;
    std::int64_t den = std::int64_t(2) << (n / 2);
    Fraction expect = Fraction::of(den / 2 + 1, den);
    CHECK(omega_exact(ghz_fixed_game(N)).omega == expect);
  }

  // Unrestricted GHZ: (3 + 2^-floor(n/2)) / 4.
  for (std::size_t N = 3; N <= 6; ++N) {
    int n = int(N) - 1;
    std::int64_t p = std::int64_t(1) << (n / 2);
    Fraction expect = Fraction::of(3 * p + 1, 4 * p);
    CHECK(omega_exact(ghz_game(N)).omega == expect);
  }

  // Affine target: fixing a = 0 makes the game trivially winnable.
  GameSpec trivial = build_xor_game(ghz_code(3), InputSets::fixed_x(BitVector(3)));
  CHECK(omega_fixed_x(trivial).omega == Fraction::of(1, 1));

  CHECK_THROWS_AS(omega_fixed_x(ghz_game(3)), std::invalid_argument);
}

TEST_CASE("omega for the cluster game") {
  GameSpec c4 = build_xor_game(cluster1d_code(4), InputSets::unrestricted());
  OmegaReport r = omega_exact(c4);
  CHECK(r.omega == Fraction::of(7, 8));
  REQUIRE(r.best.has_value());
  CHECK(strategy_success_fraction(c4, *r.best) == r.omega);
}

TEST_CASE("oracle equivalence") {
  for (std::size_t N : {std::size_t(3), std::size_t(4)}) {
    GameSpec g = ghz_game(N);
    CHECK(omega_exact(g).omega == omega_bruteforce_oracle(g));
  }
  GameSpec c4 = build_xor_game(cluster1d_code(4), InputSets::unrestricted());
  CHECK(omega_exact(c4).omega == omega_bruteforce_oracle(c4));

  // Both players of the 2-qubit code receive the full (x, z) pair, so one
  // of them can answer xz outright; the game is classically winnable.
  CssCode two(BitMatrix::from_rows({"11"}), BitMatrix::from_rows({"11"}));
  GameSpec g2 = build_xor_game(two, InputSets::unrestricted());
  CHECK(omega_bruteforce_oracle(g2) == Fraction::of(1, 1));
  CHECK(omega_exact(g2).omega == omega_bruteforce_oracle(g2));

  CHECK(omega_bruteforce_oracle(ghz_fixed_game(3)) == Fraction::of(3, 4));
  CHECK_THROWS_AS(omega_bruteforce_oracle(ghz_game(5)), std::length_error);
}

TEST_CASE("reported strategies achieve the reported omega") {
  for (std::size_t N : {std::size_t(3), std::size_t(4), std::size_t(5)}) {
    GameSpec g = ghz_game(N);
    OmegaReport r = omega_exact(g);
    REQUIRE(r.best.has_value());
    CHECK(strategy_success_fraction(g, *r.best) == r.omega);
  }
}

TEST_CASE("bounds sandwich the exact value") {
  for (const CssCode& code : {ghz_code(3), ghz_code(4), cluster1d_code(4), cluster1d_code(6)}) {
    GameSpec g = build_xor_game(code, InputSets::unrestricted());
    OmegaBounds b = omega_bounds_of(g);
    Fraction omega = omega_exact(g).omega;
    CHECK(b.lower <= omega);
    CHECK(omega <= b.upper);
    CHECK(Fraction::of(1, 2) <= omega);
    CHECK(omega <= Fraction::of(1, 1));
  }

  // Bent fixed-x target: both bounds collapse onto 1/2 (1 + 2^(-d/2)).
  GameSpec bent = ghz_fixed_game(5);  // d = 4, bent target
  OmegaBounds b = omega_bounds_of(bent);
  CHECK(b.lower == Fraction::of(5, 8));
  CHECK(b.upper == Fraction::of(5, 8));
}

TEST_CASE("cluster slice bound matches the fence-configuration count") {
  // Sum over x slices of max_y |W| equals 2^(N/2) times the count of cyclic
  // no-adjacent-ones strings; its growth rate is sqrt(2 phi) = 1.7989.
  // Equality needs every slice to obey the Z-removal bound, which requires
  // even rings, i.e. N divisible by four; odd rings push the sum higher.
  for (std::size_t N : {std::size_t(4), std::size_t(8)}) {
    GameSpec g = build_xor_game(cluster1d_code(N), InputSets::unrestricted());
    OmegaBounds b = omega_bounds_of(g);
    int n = int(N) / 2;
    std::int64_t total = std::int64_t(1) << N;
    std::int64_t slice_sum = 2 * b.upper.num * (total / b.upper.den) - total;
    CHECK(slice_sum == (std::int64_t(1) << n) * lucas_count(n));
  }
  GameSpec g6 = build_xor_game(cluster1d_code(6), InputSets::unrestricted());
  OmegaBounds b6 = omega_bounds_of(g6);
  std::int64_t slice_sum6 = 2 * b6.upper.num * (64 / b6.upper.den) - 64;
  CHECK(slice_sum6 > (std::int64_t(1) << 3) * lucas_count(3));
}

TEST_CASE("omega invariant under generator basis change") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 10; ++iter) {
    CssCode code = random_css_code(rng, 3 + rng() % 4);
    GameSpec g = build_xor_game(code, InputSets::unrestricted());
    Fraction omega = omega_exact(g).omega;

    BitMatrix a = random_invertible(rng, code.hx.rows());
    BitMatrix b = random_invertible(rng, code.hz.rows());
    CssCode changed(a.mul(code.hx), b.mul(code.hz));
    GameSpec g2 = build_xor_game(changed, InputSets::unrestricted());
    CHECK(omega_exact(g2).omega == omega);
  }
}

TEST_CASE("omega invariant under clifford dressing") {
  std::mt19937_64 rng(99);
  CssCode code = ghz_code(3);
  Fraction omega = omega_exact(build_xor_game(code, InputSets::unrestricted())).omega;
  for (int iter = 0; iter < 20; ++iter) {
    std::vector<CliffordLabel> gates(3);
    for (auto& gl : gates) {
      gl.v = VLabel(rng() % 6);
      gl.p = PauliLabel(rng() % 4);
    }
    DressResult dressed = clifford_dress(code, gates);
    CHECK(strategy_space_contains(code, dressed.shift));
    CHECK(omega_exact_for_target(code, dressed.dressed_target).omega == omega);
  }
}

TEST_CASE("nonquadraticity upper-bounds omega for the GHZ(5) game") {
  GameSpec g = ghz_game(5);
  BooleanFunction f = g.target_function();
  std::int64_t chi = cssgames::boolfn::nonquadraticity(f);
  Fraction bound = Fraction::of(std::int64_t(f.table_size()) - chi, std::int64_t(f.table_size()));
  CHECK(omega_exact(g).omega <= bound);
}
