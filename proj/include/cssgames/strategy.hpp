#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cssgames/cssgame.hpp"
#include "cssgames/rational.hpp"

namespace cssgames::strategy {

using cssgames::Fraction;

struct ClassicalStrategy {
  bool u0 = false;
  f2::BitVector ux, uz;   // over the x / z parameter bits
  f2::BitMatrix uxz;      // n x m, constrained to the bilinear span
};

enum class OmegaMethod { Exact, NonlinearityOnly, Oracle, Bounds };

struct OmegaBounds {
  Fraction lower, upper;
};

struct OmegaReport {
  Fraction omega;
  OmegaMethod method = OmegaMethod::Exact;
  std::optional<ClassicalStrategy> best;
  std::optional<OmegaBounds> bounds;
};

// Row-reduced basis of span{hx diag(lambda) hz^T}, the reachable bilinear
// parts of deterministic strategies.
std::vector<f2::BitMatrix> bilinear_span_basis(const cssgame::CssCode& code);

// Optimal classical success fraction. Full-image games enumerate the
// bilinear span with one FWHT per element; a single fixed input reduces to
// the nonlinearity of the restricted target; other fixed lists fall back to
// the brute-force oracle.
OmegaReport omega_exact(const cssgame::GameSpec& game,
                        std::uint64_t budget = std::uint64_t(1) << 32);

// omega for |I_X| = 1 via the nonlinearity of the restricted target.
OmegaReport omega_fixed_x(const cssgame::GameSpec& game);

// Direct play of all 16^N deterministic strategy tuples; N <= 4 players.
Fraction omega_bruteforce_oracle(const cssgame::GameSpec& game);

// Lower bound from the best affine strategy, upper bound from the
// per-x-slice triangle inequality.
OmegaBounds omega_bounds_of(const cssgame::GameSpec& game);

// omega of an arbitrary target over the code's unrestricted strategy space
// (used for Clifford-dressed targets).
OmegaReport omega_exact_for_target(const cssgame::CssCode& code,
                                   const boolfn::BooleanFunction& target,
                                   std::uint64_t budget = std::uint64_t(1) << 32);

// Success fraction of an explicit strategy against a game with a bit
// parametrization.
Fraction strategy_success_fraction(const cssgame::GameSpec& game,
                                   const ClassicalStrategy& strat);

// Membership of a function of the (x, z) parameters in the span of
// deterministic classical strategies of the unrestricted game.
bool strategy_space_contains(const cssgame::CssCode& code,
                             const boolfn::BooleanFunction& candidate);

}  // namespace cssgames::strategy
