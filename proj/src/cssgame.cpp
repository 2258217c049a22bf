#include "cssgames/cssgame.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cssgames::cssgame {

using f2::BitMatrix;
using f2::BitVector;

CssCode::CssCode(BitMatrix hx_in, BitMatrix hz_in) : hx(std::move(hx_in)), hz(std::move(hz_in)) {
  if (hx.cols() != hz.cols())
    throw std::invalid_argument("hx and hz must act on the same qubits");
  for (std::size_t r = 0; r < hx.rows(); ++r) {
    BitVector xrow = hx.row(r);
    for (std::size_t s = 0; s < hz.rows(); ++s)
      if (xrow.dot(hz.row(s)))
        throw std::invalid_argument("check matrices do not commute: hx hz^T != 0");
  }
}

bool CssCode::full_rank() const {
  return f2::rank(hx) == hx.rows() && f2::rank(hz) == hz.rows();
}

CssCode CssCode::parse_text(std::string_view text) {
  std::string s(text);
  std::size_t split = s.find("\n\n");
  if (split == std::string::npos)
    throw std::invalid_argument("code file needs two matrix blocks separated by a blank line");
  return CssCode(BitMatrix::parse_text(s.substr(0, split)),
                 BitMatrix::parse_text(s.substr(split + 2)));
}

std::string CssCode::to_text() const {
  return hx.to_text() + "\n" + hz.to_text();
}

CssCode ghz_code(std::size_t n) {
  if (n < 2) throw std::invalid_argument("GHZ code needs at least 2 qubits");
  BitMatrix hx(1, n);
  for (std::size_t i = 0; i < n; ++i) hx.set(0, i, true);
  BitMatrix hz(n - 1, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    hz.set(i, i, true);
    hz.set(i, i + 1, true);
  }
  return CssCode(std::move(hx), std::move(hz));
}

CssCode cluster1d_code(std::size_t n) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("periodic cluster code needs even size >= 4");
  // Z checks centered on even sites, X checks on odd sites (Hadamard picture
  // of the canonical Z X Z stabilizers).
  BitMatrix hz(n / 2, n), hx(n / 2, n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    hz.set(k, (2 * k + n - 1) % n, true);
    hz.set(k, 2 * k, true);
    hz.set(k, (2 * k + 1) % n, true);
    hx.set(k, 2 * k, true);
    hx.set(k, (2 * k + 1) % n, true);
    hx.set(k, (2 * k + 2) % n, true);
  }
  return CssCode(std::move(hx), std::move(hz));
}

ToricLattice square_torus(std::size_t ell) {
  if (ell < 2 || ell % 2 != 0)
    throw std::invalid_argument("square torus needs even side >= 2");
  std::size_t l = ell;
  ToricLattice lat;
  lat.nvertices = l * l;
  lat.nfaces = l * l;
  lat.nedges = 2 * l * l;
  auto vid = [l](std::size_t r, std::size_t c) { return int((r % l) * l + (c % l)); };
  auto fid = vid;
  auto h = [l](std::size_t r, std::size_t c) { return int((r % l) * l + (c % l)); };
  auto v = [l](std::size_t r, std::size_t c) { return int(l * l + (r % l) * l + (c % l)); };

  lat.edge_vertices.resize(lat.nedges);
  lat.edge_faces.resize(lat.nedges);
  lat.vertex_edges.resize(lat.nvertices);
  lat.face_edges.resize(lat.nfaces);
  lat.face_walks.resize(lat.nfaces);
  for (std::size_t r = 0; r < l; ++r) {
    for (std::size_t c = 0; c < l; ++c) {
      lat.edge_vertices[h(r, c)] = {vid(r, c), vid(r, c + 1)};
      lat.edge_vertices[v(r, c)] = {vid(r, c), vid(r + 1, c)};
      // h(r,c) is the top edge of face (r,c) and the bottom edge of face
      // (r-1,c); v(r,c) is the left edge of (r,c) and the right edge of (r,c-1).
      lat.edge_faces[h(r, c)] = {fid(r, c), fid(r + l - 1, c)};
      lat.edge_faces[v(r, c)] = {fid(r, c), fid(r, c + l - 1)};

      lat.vertex_edges[vid(r, c)] = {h(r, c), h(r, c + l - 1), v(r, c), v(r + l - 1, c)};
      lat.face_edges[fid(r, c)] = {h(r, c), v(r, c + 1), h(r + 1, c), v(r, c)};
      lat.face_walks[fid(r, c)] = {{h(r, c), vid(r, c + 1)},
                                   {v(r, c + 1), vid(r + 1, c + 1)},
                                   {h(r + 1, c), vid(r + 1, c)},
                                   {v(r, c), vid(r, c)}};
    }
  }
  return lat;
}

ToricLattice honeycomb_torus(std::size_t lx, std::size_t ly) {
  if (lx < 2 || ly < 2) throw std::invalid_argument("honeycomb torus needs lx, ly >= 2");
  ToricLattice lat;
  lat.nfaces = lx * ly;
  lat.nvertices = 2 * lx * ly;  // triangles of the dual triangular lattice
  lat.nedges = 3 * lx * ly;
  auto f = [lx, ly](std::size_t i, std::size_t j) { return int((i % lx) * ly + (j % ly)); };
  auto up = f;
  auto dn = [lx, ly, f](std::size_t i, std::size_t j) { return int(lx * ly) + f(i, j); };
  auto e = [lx, ly, f](int t, std::size_t i, std::size_t j) {
    (void)ly;
    return t * int(lx * ly) + f(i, j);
  };

  lat.edge_vertices.resize(lat.nedges);
  lat.edge_faces.resize(lat.nedges);
  lat.vertex_edges.resize(lat.nvertices);
  lat.face_edges.resize(lat.nfaces);
  lat.face_walks.resize(lat.nfaces);
  for (std::size_t i = 0; i < lx; ++i) {
    for (std::size_t j = 0; j < ly; ++j) {
      // Edge t joins faces f(i,j)-f(i+1,j) (t=0), f(i,j)-f(i,j+1) (t=1),
      // f(i+1,j)-f(i,j+1) (t=2) of the dual triangular lattice.
      lat.edge_faces[e(0, i, j)] = {f(i, j), f(i + 1, j)};
      lat.edge_faces[e(1, i, j)] = {f(i, j), f(i, j + 1)};
      lat.edge_faces[e(2, i, j)] = {f(i + 1, j), f(i, j + 1)};
      lat.edge_vertices[e(0, i, j)] = {up(i, j), dn(i, j + ly - 1)};
      lat.edge_vertices[e(1, i, j)] = {up(i, j), dn(i + lx - 1, j)};
      lat.edge_vertices[e(2, i, j)] = {up(i, j), dn(i, j)};

      lat.vertex_edges[up(i, j)] = {e(0, i, j), e(1, i, j), e(2, i, j)};
      lat.vertex_edges[dn(i, j)] = {e(2, i, j), e(1, i + 1, j), e(0, i, j + 1)};

      lat.face_walks[f(i, j)] = {
          {e(1, i, j), dn(i + lx - 1, j)},
          {e(2, i + lx - 1, j), up(i + lx - 1, j)},
          {e(0, i + lx - 1, j), dn(i + lx - 1, j + ly - 1)},
          {e(1, i, j + ly - 1), up(i, j + ly - 1)},
          {e(2, i, j + ly - 1), dn(i, j + ly - 1)},
          {e(0, i, j), up(i, j)},
      };
      for (auto& [edge, vert] : lat.face_walks[f(i, j)]) {
        (void)vert;
        lat.face_edges[f(i, j)].push_back(edge);
      }
    }
  }
  return lat;
}

CssCode toric_code(const ToricLattice& lat, bool full_rank) {
  std::size_t nz = lat.nvertices - (full_rank ? 1 : 0);
  std::size_t nx = lat.nfaces - (full_rank ? 1 : 0);
  BitMatrix hz(nz, lat.nedges), hx(nx, lat.nedges);
  for (std::size_t v = 0; v < nz; ++v)
    for (int edge : lat.vertex_edges[v]) hz.set(v, edge, !hz.get(v, edge));
  for (std::size_t p = 0; p < nx; ++p)
    for (int edge : lat.face_edges[p]) hx.set(p, edge, !hx.get(p, edge));
  return CssCode(std::move(hx), std::move(hz));
}

CssCode toric_square_code(std::size_t ell, bool full_rank) {
  return toric_code(square_torus(ell), full_rank);
}

CssCode toric_honeycomb_code(std::size_t lx, std::size_t ly, bool full_rank) {
  return toric_code(honeycomb_torus(lx, ly), full_rank);
}

bool xor_target(const CssCode& code, const BitVector& a, const BitVector& b) {
  if (a.size() != code.nqubits() || b.size() != code.nqubits())
    throw std::invalid_argument("query length mismatch");
  std::size_t overlap = (a & b).weight();
  if (overlap % 2 != 0)
    throw std::logic_error("query violates commutation; sum a_i b_i must be even");
  return (overlap / 2) % 2 != 0;
}

boolfn::AnfPolynomial target_anf_coefficients(const CssCode& code) {
  std::size_t n = code.hx.rows(), m = code.hz.rows();
  if (n + m > 24) throw std::length_error("too many generators for an ANF table");
  boolfn::AnfPolynomial p;
  p.nvars = int(n + m);
  std::vector<std::uint32_t> monos;
  auto xvar = [](std::size_t a) { return std::uint32_t(1) << a; };
  auto zvar = [n](std::size_t b) { return std::uint32_t(1) << (n + b); };

  // Degree 2: wt(hx_a & hz_b) / 2 taken mod 2.
  for (std::size_t a = 0; a < n; ++a) {
    BitVector ra = code.hx.row(a);
    for (std::size_t b = 0; b < m; ++b)
      if (((ra & code.hz.row(b)).weight() / 2) % 2 != 0) monos.push_back(xvar(a) | zvar(b));
  }
  // Degree 3 needs at least one generator of each type.
  for (std::size_t a = 0; a < n; ++a) {
    BitVector ra = code.hx.row(a);
    for (std::size_t a2 = a + 1; a2 < n; ++a2) {
      BitVector rr = ra & code.hx.row(a2);
      for (std::size_t b = 0; b < m; ++b)
        if ((rr & code.hz.row(b)).weight() % 2 != 0)
          monos.push_back(xvar(a) | xvar(a2) | zvar(b));
    }
    for (std::size_t b = 0; b < m; ++b) {
      BitVector rb = ra & code.hz.row(b);
      for (std::size_t b2 = b + 1; b2 < m; ++b2)
        if ((rb & code.hz.row(b2)).weight() % 2 != 0)
          monos.push_back(xvar(a) | zvar(b) | zvar(b2));
    }
  }
  std::sort(monos.begin(), monos.end());
  p.monomials = std::move(monos);
  return p;
}

namespace {

int log2_exact(std::size_t n) {
  int b = 0;
  while ((std::size_t(1) << b) < n) ++b;
  return (std::size_t(1) << b) == n ? b : -1;
}

std::vector<BitVector> side_inputs(const BitMatrix& h,
                                   const std::optional<std::vector<BitVector>>& list,
                                   const char* side) {
  if (list) {
    if (list->empty()) throw std::invalid_argument(std::string(side) + " input set is empty");
    for (const auto& v : *list)
      if (!f2::in_row_space(h, v))
        throw std::invalid_argument(std::string(side) + " input outside the image of the checks");
    return *list;
  }
  if (h.rows() > 20) throw std::length_error("too many generators to enumerate inputs");
  std::vector<BitVector> out;
  out.reserve(std::size_t(1) << h.rows());
  for (std::size_t i = 0; i < (std::size_t(1) << h.rows()); ++i)
    out.push_back(h.vec_mul(BitVector::from_index(i, h.rows())));
  return out;
}

BitVector bv_or(const BitVector& a, const BitVector& b) {
  BitVector r = a ^ b;
  r ^= a & b;
  return r;
}

}  // namespace

boolfn::BooleanFunction GameSpec::target_function() const {
  if (!has_bit_parametrization())
    throw std::invalid_argument("game has no power-of-two parametrization");
  boolfn::BooleanFunction f(d());
  for (std::size_t q = 0; q < nqueries(); ++q) f.set(q, target_table[q] != 0);
  return f;
}

GameSpec build_xor_game(const CssCode& code, const InputSets& inputs) {
  if (code.hx.rows() == 0 || code.hz.rows() == 0)
    throw std::invalid_argument("both check matrices need at least one generator");
  if (!code.full_rank())
    throw std::invalid_argument("game construction requires full-rank check matrices");

  GameSpec g{code};
  g.mode = GameMode::Xor;
  g.x_inputs = side_inputs(code.hx, inputs.x_list, "x");
  g.z_inputs = side_inputs(code.hz, inputs.z_list, "z");
  g.x_count = g.x_inputs.size();
  g.z_count = g.z_inputs.size();
  g.x_full_image = !inputs.x_list.has_value();
  g.z_full_image = !inputs.z_list.has_value();
  g.xbits = log2_exact(g.x_count);
  g.zbits = log2_exact(g.z_count);
  if (g.nqueries() > (std::size_t(1) << 24)) throw std::length_error("query space too large");

  g.target_table.resize(g.nqueries());
  for (std::size_t zi = 0; zi < g.z_count; ++zi)
    for (std::size_t xi = 0; xi < g.x_count; ++xi)
      g.target_table[g.query_id(xi, zi)] = xor_target(code, g.x_inputs[xi], g.z_inputs[zi]);

  if (g.x_full_image && g.z_full_image) {
    g.target_anf = target_anf_coefficients(code);
    if (g.d() <= 16) {
      for (std::size_t q = 0; q < g.nqueries(); ++q)
        if (g.target_anf->evaluate(q) != (g.target_table[q] != 0))
          throw std::logic_error("target cross-check failed: ANF route disagrees");
    }
  }
  if (g.has_bit_parametrization() && g.d() <= 16) {
    if (boolfn::anf_from_table(g.target_function()).degree() > 3)
      throw std::logic_error("XOR-game target must have algebraic degree <= 3");
  }
  return g;
}

std::vector<SubConstraint> reduce_constraints(const std::vector<SubConstraint>& all,
                                              std::size_t nqubits) {
  std::vector<std::pair<BitVector, bool>> basis;  // reduced (support, parity) rows
  std::vector<SubConstraint> out;
  for (const auto& c : all) {
    BitVector v = c.support;
    bool p = c.parity;
    bool progress = true;
    while (progress && v.any()) {
      progress = false;
      std::size_t lead = 0;
      while (!v.get(lead)) ++lead;
      for (auto& [bv, bp] : basis) {
        std::size_t blead = 0;
        while (blead < nqubits && !bv.get(blead)) ++blead;
        if (blead == lead) {
          v ^= bv;
          p ^= bp;
          progress = true;
          break;
        }
      }
    }
    if (!v.any()) {
      if (p) throw std::logic_error("inconsistent submeasurement constraint system");
      continue;
    }
    basis.emplace_back(v, p);
    out.push_back(c);
  }
  return out;
}

GameSpec build_submeasurement_game(const CssCode& code, const InputSets& inputs,
                                   std::size_t span_cap) {
  GameSpec g = build_xor_game(code, inputs);
  g.mode = GameMode::Submeasurement;

  std::vector<BitVector> xspan = f2::row_span(code.hx, span_cap);
  std::vector<BitVector> zspan = f2::row_span(code.hz, span_cap);
  if (xspan.size() * zspan.size() > span_cap)
    throw std::length_error("stabilizer span above the substring enumeration cap");

  g.constraints.resize(g.nqueries());
  for (std::size_t zi = 0; zi < g.z_count; ++zi) {
    for (std::size_t xi = 0; xi < g.x_count; ++xi) {
      const BitVector& a = g.x_inputs[xi];
      const BitVector& b = g.z_inputs[zi];
      auto& list = g.constraints[g.query_id(xi, zi)];
      for (const auto& alpha : xspan) {
        for (const auto& beta : zspan) {
          BitVector support = bv_or(alpha, beta);
          if (!support.any()) continue;  // trivial substring
          // A substring matches the query iff a and b restrict to alpha,
          // beta on its support.
          if ((a & support) != alpha || (b & support) != beta) continue;
          bool parity = ((alpha & beta).weight() / 2) % 2 != 0;
          list.push_back(SubConstraint{support, parity});
        }
      }
    }
  }
  return g;
}

DualMedialGraph dual_medial_graph(const ToricLattice& lat) {
  DualMedialGraph dm;
  dm.nfaces = lat.nfaces;
  dm.nvertices = lat.nvertices;

  std::map<std::pair<int, int>, int> corner_count;
  for (std::size_t p = 0; p < lat.nfaces; ++p)
    for (const auto& [edge, vert] : lat.face_walks[p]) {
      (void)edge;
      corner_count[{int(p), int(dm.nfaces) + vert}] += 1;
    }
  for (const auto& [e, cnt] : corner_count)
    if (cnt % 2 != 0) dm.edges.push_back(e);

  dm.quads.reserve(lat.nedges);
  for (std::size_t e = 0; e < lat.nedges; ++e)
    dm.quads.push_back({lat.edge_faces[e][0], int(dm.nfaces) + lat.edge_vertices[e][0],
                        lat.edge_faces[e][1], int(dm.nfaces) + lat.edge_vertices[e][1]});
  return dm;
}

boolfn::BooleanFunction dual_medial_target(const DualMedialGraph& dm) {
  if (dm.nsites() > 20) throw std::length_error("dual medial graph too large for a table");
  boolfn::AnfPolynomial p;
  p.nvars = int(dm.nsites());
  std::map<std::uint32_t, int> monos;
  for (const auto& q : dm.quads) {
    for (int skip = 0; skip < 4; ++skip) {
      std::uint32_t m = 0;
      for (int k = 0; k < 4; ++k)
        if (k != skip) m |= std::uint32_t(1) << q[k];
      monos[m] += 1;
    }
  }
  for (const auto& [a, b] : dm.edges)
    monos[(std::uint32_t(1) << a) | (std::uint32_t(1) << b)] += 1;
  for (const auto& [m, cnt] : monos)
    if (cnt % 2 != 0) p.monomials.push_back(m);
  return p.to_function();
}

namespace {

struct VAction {
  // Row-vector symplectic action s -> s C and the sign lambda(s), indexed by
  // s0 + 2 s1 with s = (x part, z part).
  std::array<std::array<bool, 2>, 2> c;
  std::array<bool, 4> lambda;
};

VAction make_vaction(bool c00, bool c01, bool c10, bool c11, bool lambda_y) {
  VAction v;
  v.c[0] = {c00, c01};
  v.c[1] = {c10, c11};
  v.lambda = {false, false, false, lambda_y};
  return v;
}

VAction v_identity() { return make_vaction(true, false, false, true, false); }
VAction v_hadamard() { return make_vaction(false, true, true, false, true); }
VAction v_phase() { return make_vaction(true, true, false, true, true); }

std::pair<bool, bool> apply_c(const VAction& v, bool s0, bool s1) {
  bool t0 = (s0 && v.c[0][0]) ^ (s1 && v.c[1][0]);
  bool t1 = (s0 && v.c[0][1]) ^ (s1 && v.c[1][1]);
  return {t0, t1};
}

// Conjugation by (outer after inner).
VAction compose(const VAction& outer, const VAction& inner) {
  VAction r;
  for (int row = 0; row < 2; ++row) {
    auto [t0, t1] = apply_c(outer, inner.c[row][0], inner.c[row][1]);
    r.c[row] = {t0, t1};
  }
  for (int s = 0; s < 4; ++s) {
    bool s0 = s & 1, s1 = (s >> 1) & 1;
    auto [m0, m1] = apply_c(inner, s0, s1);
    r.lambda[s] = inner.lambda[s] ^ outer.lambda[int(m0) + 2 * int(m1)];
  }
  return r;
}

VAction v_action(VLabel v) {
  switch (v) {
    case VLabel::I: return v_identity();
    case VLabel::H: return v_hadamard();
    case VLabel::S: return v_phase();
    case VLabel::HS: return compose(v_hadamard(), v_phase());
    case VLabel::SH: return compose(v_phase(), v_hadamard());
    case VLabel::HSH: return compose(compose(v_hadamard(), v_phase()), v_hadamard());
  }
  throw std::invalid_argument("unknown V label");
}

std::pair<bool, bool> pauli_bits(PauliLabel p) {
  switch (p) {
    case PauliLabel::I: return {false, false};
    case PauliLabel::X: return {true, false};
    case PauliLabel::Y: return {true, true};
    case PauliLabel::Z: return {false, true};
  }
  throw std::invalid_argument("unknown Pauli label");
}

}  // namespace

DressResult clifford_dress(const CssCode& code, const std::vector<CliffordLabel>& gates) {
  if (gates.size() != code.nqubits())
    throw std::invalid_argument("need one Clifford label per qubit");
  std::size_t n = code.hx.rows(), m = code.hz.rows();
  if (n + m > 20) throw std::length_error("dressed target table too large");

  std::vector<VAction> acts;
  acts.reserve(gates.size());
  for (const auto& gl : gates) acts.push_back(v_action(gl.v));

  GameSpec base = build_xor_game(code, InputSets::unrestricted());
  DressResult out;
  out.shift = boolfn::BooleanFunction(int(n + m));
  out.dressed_target = boolfn::BooleanFunction(int(n + m));
  for (std::size_t q = 0; q < base.nqueries(); ++q) {
    std::size_t xi = q & ((std::size_t(1) << n) - 1);
    std::size_t zi = q >> n;
    const BitVector& a = base.query_a(xi);
    const BitVector& b = base.query_b(zi);
    bool shift = false;
    for (std::size_t i = 0; i < code.nqubits(); ++i) {
      bool s0 = a.get(i), s1 = b.get(i);
      auto [u0, u1] = pauli_bits(gates[i].p);
      shift ^= (u0 && s1) ^ (s0 && u1);                // Pauli part, symplectic form
      shift ^= acts[i].lambda[int(s0) + 2 * int(s1)];  // V part
    }
    out.shift.set(q, shift);
    out.dressed_target.set(q, (base.target_table[q] != 0) ^ shift);
  }
  return out;
}

}  // namespace cssgames::cssgame
