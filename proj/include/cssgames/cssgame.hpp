#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cssgames/boolfn.hpp"
#include "cssgames/f2.hpp"

namespace cssgames::cssgame {

// CSS code given by X- and Z-type parity-check matrices over F2 with
// hx hz^T = 0. Rows need not be independent; game construction requires
// full rank, the redundant toric parametrization does not.
struct CssCode {
  f2::BitMatrix hx, hz;

  CssCode(f2::BitMatrix hx_in, f2::BitMatrix hz_in);
  std::size_t nqubits() const { return hx.cols(); }
  bool full_rank() const;

  // Two matrix blocks in f2 text format separated by a blank line, hx first.
  static CssCode parse_text(std::string_view text);
  std::string to_text() const;
};

CssCode ghz_code(std::size_t nqubits);
CssCode cluster1d_code(std::size_t nqubits);  // periodic, nqubits even >= 4

// Torus cellulation with qubits on edges; vertex stars carry Z checks and
// face boundaries X checks.
struct ToricLattice {
  std::size_t nvertices = 0, nedges = 0, nfaces = 0;
  std::vector<std::array<int, 2>> edge_vertices;  // endpoints of each edge
  std::vector<std::array<int, 2>> edge_faces;     // the two faces along each edge
  std::vector<std::vector<int>> vertex_edges;
  std::vector<std::vector<int>> face_edges;
  // Cyclic boundary walk per face: (edge, vertex reached after that edge).
  std::vector<std::vector<std::pair<int, int>>> face_walks;
};

ToricLattice square_torus(std::size_t ell);              // ell x ell, ell even >= 2
ToricLattice honeycomb_torus(std::size_t lx, std::size_t ly);

// full_rank drops the last vertex and last plaquette check to remove the
// product redundancies; pass false to keep the full redundant sets.
CssCode toric_code(const ToricLattice& lat, bool full_rank = true);
CssCode toric_square_code(std::size_t ell, bool full_rank = true);
CssCode toric_honeycomb_code(std::size_t lx, std::size_t ly, bool full_rank = true);

struct InputSets {
  // Empty optional means the full image of the corresponding check matrix.
  std::optional<std::vector<f2::BitVector>> x_list, z_list;

  static InputSets unrestricted() { return {}; }
  static InputSets fixed_x(f2::BitVector a0) {
    InputSets s;
    s.x_list = {std::move(a0)};
    return s;
  }
  static InputSets fixed_z(f2::BitVector b0) {
    InputSets s;
    s.z_list = {std::move(b0)};
    return s;
  }
};

enum class GameMode { Xor, Submeasurement };

// One submeasurement win condition: the parity of outcomes on `support`
// must equal `parity`.
struct SubConstraint {
  f2::BitVector support;  // qubit subset
  bool parity = false;
};

struct GameSpec {
  CssCode code;
  GameMode mode = GameMode::Xor;
  std::size_t x_count = 0, z_count = 0;      // number of inputs per side
  int xbits = -1, zbits = -1;                // parameter bits, -1 when not a power of two
  std::vector<f2::BitVector> x_inputs, z_inputs;  // the a / b vectors, in order
  bool x_full_image = false, z_full_image = false;
  std::vector<std::uint8_t> target_table;    // indexed by query_id
  std::optional<boolfn::AnfPolynomial> target_anf;  // unrestricted games only
  std::vector<std::vector<SubConstraint>> constraints;  // per query, sub mode

  std::size_t nqueries() const { return x_count * z_count; }
  std::size_t query_id(std::size_t xi, std::size_t zi) const { return xi + x_count * zi; }
  const f2::BitVector& query_a(std::size_t xi) const { return x_inputs[xi]; }
  const f2::BitVector& query_b(std::size_t zi) const { return z_inputs[zi]; }
  bool target(std::size_t xi, std::size_t zi) const {
    return target_table[query_id(xi, zi)] != 0;
  }
  bool has_bit_parametrization() const { return xbits >= 0 && zbits >= 0; }
  int d() const { return xbits + zbits; }
  // Target as a packed Boolean function of the d parameter bits.
  boolfn::BooleanFunction target_function() const;
};

// Target parity (1/2) sum_i a_i b_i mod 2 for one query of any commuting code.
bool xor_target(const CssCode& code, const f2::BitVector& a, const f2::BitVector& b);

// ANF of the unrestricted target straight from the check matrices: degree-2
// and degree-3 coefficients from overlaps of generator supports. Variable
// order: x parameters first, then z parameters.
boolfn::AnfPolynomial target_anf_coefficients(const CssCode& code);

GameSpec build_xor_game(const CssCode& code, const InputSets& inputs);
GameSpec build_submeasurement_game(const CssCode& code, const InputSets& inputs,
                                   std::size_t span_cap = std::size_t(1) << 20);

// Independent generating subset of a constraint list; winning all returned
// constraints is equivalent to winning the full list.
std::vector<SubConstraint> reduce_constraints(const std::vector<SubConstraint>& all,
                                              std::size_t nqubits);

// Dual of the medial graph: one site per check (x sites first, then z sites),
// one edge per lattice-face corner, one quadrilateral per lattice edge.
struct DualMedialGraph {
  std::size_t nfaces = 0, nvertices = 0;  // of the underlying lattice
  std::size_t nsites() const { return nfaces + nvertices; }
  std::vector<std::pair<int, int>> edges;       // mod-2 reduced corner pairs
  std::vector<std::array<int, 4>> quads;        // (p, v, p', v') per lattice edge
};

DualMedialGraph dual_medial_graph(const ToricLattice& lat);

// Toric target via the dual medial graph: CCZ on every site triple of every
// quad, CZ on every edge. Matches the redundant-parametrization target.
boolfn::BooleanFunction dual_medial_target(const DualMedialGraph& dm);

// Single-qubit Clifford dressing labels: C = V P with V a coset
// representative and P a Pauli.
enum class PauliLabel { I, X, Y, Z };
enum class VLabel { I, H, S, HS, SH, HSH };
struct CliffordLabel {
  VLabel v = VLabel::I;
  PauliLabel p = PauliLabel::I;
};

struct DressResult {
  boolfn::BooleanFunction dressed_target;  // g = f ^ shift
  boolfn::BooleanFunction shift;           // lies in the classical strategy space
};

// Target computed by the Pauli strategy on the dressed codeword U|psi>,
// U = prod_i C_i, for the unrestricted game.
DressResult clifford_dress(const CssCode& code, const std::vector<CliffordLabel>& gates);

}  // namespace cssgames::cssgame
