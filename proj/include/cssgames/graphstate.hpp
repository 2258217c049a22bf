#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cssgames/boolfn.hpp"
#include "cssgames/f2.hpp"
#include "cssgames/rational.hpp"

namespace cssgames::graphstate {

struct Graph {
  f2::BitMatrix adjacency;  // symmetric, zero diagonal

  Graph() = default;
  explicit Graph(f2::BitMatrix a);
  std::size_t order() const { return adjacency.rows(); }
  bool edge(std::size_t i, std::size_t j) const { return adjacency.get(i, j); }
  void toggle_edge(std::size_t i, std::size_t j);

  // f_G(z) = xor over edges of z_i z_j.
  boolfn::BooleanFunction function() const;
};

Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph grid_torus_graph(std::size_t ell);  // ell x ell periodic grid

struct Hypergraph {
  int nvertices = 0;
  std::vector<std::uint32_t> edges;  // vertex subsets as bitmasks, any order >= 1

  static Hypergraph from_anf(const boolfn::AnfPolynomial& p);
};

// Quadratic part of f as a graph; linear and constant parts are dropped.
Graph polar_form(const boolfn::BooleanFunction& f);

struct XSymmetries {
  std::vector<f2::BitVector> basis;  // kernel of the adjacency matrix
  std::vector<bool> signs;           // tau_a for each basis element
  std::size_t count() const { return basis.size(); }
};

// X-type stabilizer subgroup of the graph state, with exact signs.
XSymmetries x_symmetry_count(const Graph& g);

struct SymmetryWalsh {
  std::size_t n = 0, n_x = 0;
  std::uint64_t support_count = 0;  // 2^(n - n_x)
  std::int64_t magnitude = 0;       // 2^((n + n_x) / 2)
  f2::BitVector support_particular;
  std::vector<f2::BitVector> support_basis;
  // (y, W(y)) for every nonzero coefficient.
  std::vector<std::pair<std::uint64_t, std::int64_t>> signed_support;

  std::vector<std::int64_t> full_spectrum() const;  // n <= 24
};

// Walsh spectrum of f_G from the X symmetries: one directly summed anchor
// coefficient, the rest propagated through stabilizer relations.
SymmetryWalsh walsh_from_symmetries(const Graph& g);

struct StandardFormResult {
  f2::BitMatrix reduced;    // B' = A B A^T, antidiagonal 2x2 blocks then zeros
  f2::BitMatrix transform;  // invertible A
  std::size_t rank = 0;     // rank of B, always even
};

// Symmetric congruence reduction by row swaps and row additions.
StandardFormResult standard_form(const f2::BitMatrix& b);

struct Gate {
  enum class Kind { CX, LocalZ };
  Kind kind = Kind::CX;
  int control = 0;  // LocalZ uses control as its site
  int target = 0;
};

// CX circuit (with local Z fixups) turning |C_G> into rank/2 disjoint-edge
// pairs and isolated |+> vertices.
std::vector<Gate> bell_extraction_circuit(const Graph& g);

// Edge-toggle action of one CX on a graph: control's edges flip across the
// target's neighborhood.
void apply_cx_to_graph(Graph& g, int control, int target);

// Graph left after replaying the circuit's CX gates.
Graph replay_circuit(const Graph& g, const std::vector<Gate>& gates);

// 2^-d W_f[c] as an exact fraction, cross-checked against the inner product
// of the two hypergraph-state amplitude vectors.
Fraction hypergraph_overlap(const boolfn::BooleanFunction& f, const boolfn::BooleanFunction& c);

}  // namespace cssgames::graphstate
