#pragma once

#include <cstdint>
#include <vector>

#include "cssgames/boolfn.hpp"
#include "cssgames/cssgame.hpp"

namespace cssgames::statmech {

// Small integer transfer matrix; powers and traces stay exact.
struct TransferMatrix {
  std::size_t dim = 0;
  std::vector<std::int64_t> entries;  // row-major

  std::int64_t at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  TransferMatrix mul(const TransferMatrix& o) const;
  std::int64_t trace() const;
  TransferMatrix power(unsigned k) const;
};

// 4-dimensional transfer matrix of the cyclic CCZ chain, entries derived
// from the gate's sign rule on pairs of adjacent bits.
TransferMatrix ccz_transfer_matrix();

// Characteristic polynomial coefficients, leading first (Faddeev-LeVerrier).
std::vector<std::int64_t> char_poly(const TransferMatrix& t);

// GHZ Walsh coefficient at y = x from the 2x2 H / Z transfer product.
std::int64_t ghz_walsh_via_transfer(int n, std::uint64_t x);

// W_C(0,0) = sum_w (-1)^(xor_i w_i w_{i+1} w_{i+2}) on the ring.
std::int64_t cluster_w00(int n);             // transfer route, even n <= 40
std::int64_t cluster_w00_bruteforce(int n);  // direct sum, n <= 24

double cluster_lambda_closed_form();  // cube-root expression, about 1.7693
double cluster_lambda_root();         // dominant root of y^3 - 2y - 2

struct ClusterUpperRate {
  double phi = 0.0;   // leading eigenvalue of [[1,1],[1,0]]
  double rate = 0.0;  // sqrt(2 phi), about 1.7989
};
ClusterUpperRate cluster_upper_rate();

// Tr([[1,1],[1,0]]^n) by integer matrix power; equals the number of cyclic
// bitstrings without adjacent ones.
std::int64_t fibonacci_trace(int n);

// Exhaustive check that removing Z insertions never increases the cluster
// overlap: W(0) >= W(y) for all y. ell <= 12.
bool z_removal_check(int ell, bool periodic);

struct LoopPartition {
  double z = 0.0;  // sum over domain-wall configs of t^(Nv - l) n^(#loops)
  std::size_t nvertices = 0;
  std::size_t nplayers = 0;  // edges of the honeycomb lattice
  double rate_per_vertex = 0.0;
  double rate_per_player = 0.0;  // of the full bound 2^(1 + Nv/2) Z
};

// Nonintersecting loop model on the honeycomb torus by domain-wall
// enumeration over face spins.
LoopPartition loop_partition(std::size_t lx, std::size_t ly, double t, double n);

double digamma(double x);

struct DigammaCheck {
  double lhs_quadrature = 0.0;   // integral I(0)
  double rhs_closed_form = 0.0;  // ln(27/4)
  double rhs_digamma = 0.0;      // psi(1/4)+psi(3/4)-psi(1/6)-psi(5/6)
  double i1_quadrature = 0.0;    // I(1)
  double i1_digamma = 0.0;       // the digamma combination at a = 1
};
DigammaCheck digamma_identity_check();

// Ground states of the plaquette Ising constraints on the even sublattice
// of the L x L torus: 2^nullity of the odd-to-even incidence matrix.
std::int64_t plaquette_ising_count(std::size_t ell);             // via kernel
std::int64_t plaquette_ising_count_exhaustive(std::size_t ell);  // ell <= 4

// Fixed-input toric target on the L x L torus: xor over lattice edges of
// z_v z_v' (doubled edges cancel).
boolfn::BooleanFunction restricted_toric_target(std::size_t ell);

}  // namespace cssgames::statmech
