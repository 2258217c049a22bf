#include "cssgames/graphstate.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace cssgames::graphstate {

using boolfn::AnfPolynomial;
using boolfn::BooleanFunction;
using f2::BitMatrix;
using f2::BitVector;

Graph::Graph(BitMatrix a) : adjacency(std::move(a)) {
  if (!adjacency.is_symmetric() || !adjacency.has_zero_diagonal())
    throw std::invalid_argument("adjacency must be symmetric with zero diagonal");
}

void Graph::toggle_edge(std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("no self loops");
  adjacency.set(i, j, !adjacency.get(i, j));
  adjacency.set(j, i, !adjacency.get(j, i));
}

BooleanFunction Graph::function() const {
  std::size_t n = order();
  if (n > 24) throw std::length_error("graph too large for a truth table");
  std::vector<std::uint64_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = adjacency.row(i).to_index();
  return BooleanFunction::from_lambda(int(n), [&](std::uint64_t z) {
    int acc = 0;
    std::uint64_t rest = z;
    while (rest) {
      int i = std::countr_zero(rest);
      rest &= rest - 1;
      // Count each edge once: partner indices above i only.
      acc ^= std::popcount(rows[i] & z & ~((std::uint64_t(2) << i) - 1)) & 1;
    }
    return acc;
  });
}

Graph path_graph(std::size_t n) {
  BitMatrix a(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a.set(i, i + 1, true);
    a.set(i + 1, i, true);
  }
  return Graph(std::move(a));
}

Graph complete_graph(std::size_t n) {
  BitMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) a.set(i, j, true);
  return Graph(std::move(a));
}

Graph grid_torus_graph(std::size_t ell) {
  std::size_t n = ell * ell;
  BitMatrix a(n, n);
  auto id = [ell](std::size_t r, std::size_t c) { return (r % ell) * ell + (c % ell); };
  for (std::size_t r = 0; r < ell; ++r)
    for (std::size_t c = 0; c < ell; ++c) {
      for (auto [nr, nc] : {std::pair{r + 1, c}, std::pair{r, c + 1}}) {
        std::size_t u = id(r, c), v = id(nr, nc);
        if (u == v) continue;
        a.set(u, v, !a.get(u, v));
        a.set(v, u, !a.get(v, u));
      }
    }
  return Graph(std::move(a));
}

Hypergraph Hypergraph::from_anf(const AnfPolynomial& p) {
  Hypergraph h;
  h.nvertices = p.nvars;
  for (auto m : p.monomials)
    if (m != 0) h.edges.push_back(m);
  return h;
}

Graph polar_form(const BooleanFunction& f) {
  AnfPolynomial p = boolfn::anf_from_table(f);
  if (p.degree() > 2) throw std::invalid_argument("polar form needs degree <= 2");
  BitMatrix a(f.nvars(), f.nvars());
  for (auto m : p.monomials) {
    if (std::popcount(m) != 2) continue;
    int i = std::countr_zero(m);
    int j = std::countr_zero(std::uint32_t(m & (m - 1)));
    a.set(i, j, true);
    a.set(j, i, true);
  }
  return Graph(std::move(a));
}

namespace {

// Sign of prod_{i in mask} S_i, S_i = X_i Z^{row_i}, written as
// (-1)^tau X^mask Z^(mask A).
bool product_sign(const std::vector<std::uint64_t>& rows, std::uint64_t mask) {
  bool tau = false;
  std::uint64_t zacc = 0;
  std::uint64_t rest = mask;
  while (rest) {
    int i = std::countr_zero(rest);
    rest &= rest - 1;
    tau ^= (zacc >> i) & 1;  // X_i moves past the accumulated Z's
    zacc ^= rows[i];
  }
  return tau;
}

}  // namespace

XSymmetries x_symmetry_count(const Graph& g) {
  XSymmetries out;
  out.basis = f2::kernel_basis(g.adjacency);
  std::size_t n = g.order();
  std::vector<std::uint64_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = g.adjacency.row(i).to_index();
  for (const auto& a : out.basis) out.signs.push_back(product_sign(rows, a.to_index()));
  return out;
}

SymmetryWalsh walsh_from_symmetries(const Graph& g) {
  std::size_t n = g.order();
  if (n > 24) throw std::length_error("graph too large");
  XSymmetries sym = x_symmetry_count(g);
  SymmetryWalsh out;
  out.n = n;
  out.n_x = sym.count();
  out.support_count = std::uint64_t(1) << (n - out.n_x);
  if ((n + out.n_x) % 2 != 0)
    throw std::logic_error("n + n_x must be even for a symmetric zero-diagonal form");
  out.magnitude = std::int64_t(1) << ((n + out.n_x) / 2);

  // Support: y with <a, y> = tau_a for every X symmetry.
  BitMatrix rows(out.n_x, n);
  BitVector rhs(out.n_x);
  for (std::size_t k = 0; k < out.n_x; ++k) {
    rows.set_row(k, sym.basis[k]);
    rhs.set(k, sym.signs[k]);
  }
  auto sol = f2::solve_affine(rows, rhs);
  if (!sol) throw std::logic_error("X-symmetry sign system must be consistent");
  out.support_particular = sol->particular;
  out.support_basis = sol->kernel;

  // Anchor coefficient by direct summation.
  BooleanFunction f = g.function();
  std::uint64_t y0 = out.support_particular.to_index();
  std::int64_t w0 = 0;
  for (std::uint64_t z = 0; z < f.table_size(); ++z)
    w0 += ((std::popcount(z & y0) & 1) ^ int(f.value(z))) ? -1 : 1;
  if (w0 != out.magnitude && w0 != -out.magnitude)
    throw std::logic_error("anchor coefficient must sit on the support");

  // Propagate signs with W(y0 ^ aA) = (-1)^(tau_a ^ <a, y0 ^ aA>) W(y0),
  // a running over a complement of the kernel.
  std::vector<std::uint64_t> adj_rows(n);
  for (std::size_t i = 0; i < n; ++i) adj_rows[i] = g.adjacency.row(i).to_index();
  auto pivot_rows = f2::row_reduce(g.adjacency.transposed()).pivot_cols;
  out.signed_support.reserve(out.support_count);
  for (std::uint64_t mask = 0; mask < out.support_count; ++mask) {
    std::uint64_t a = 0;
    for (std::size_t k = 0; k < pivot_rows.size(); ++k)
      if ((mask >> k) & 1) a |= std::uint64_t(1) << pivot_rows[k];
    std::uint64_t b = 0;
    std::uint64_t rest = a;
    while (rest) {
      int i = std::countr_zero(rest);
      rest &= rest - 1;
      b ^= adj_rows[i];
    }
    bool tau = product_sign(adj_rows, a);
    std::uint64_t y = y0 ^ b;
    bool flip = tau ^ (std::popcount(a & y) & 1);
    out.signed_support.emplace_back(y, flip ? -w0 : w0);
  }
  return out;
}

std::vector<std::int64_t> SymmetryWalsh::full_spectrum() const {
  std::vector<std::int64_t> w(std::size_t(1) << n, 0);
  for (auto [y, c] : signed_support) w[y] = c;
  return w;
}

namespace {

void conj_swap(BitMatrix& b, BitMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  b.swap_rows(i, j);
  for (std::size_t r = 0; r < b.rows(); ++r) {
    bool bi = b.get(r, i), bj = b.get(r, j);
    b.set(r, i, bj);
    b.set(r, j, bi);
  }
  a.swap_rows(i, j);
}

// row/col dst += row/col src; mirrored on the transform.
void conj_add(BitMatrix& b, BitMatrix& a, std::size_t dst, std::size_t src) {
  b.xor_row(dst, src);
  for (std::size_t r = 0; r < b.rows(); ++r)
    if (b.get(r, src)) b.set(r, dst, !b.get(r, dst));
  a.xor_row(dst, src);
}

}  // namespace

StandardFormResult standard_form(const BitMatrix& input) {
  if (!input.is_symmetric() || !input.has_zero_diagonal())
    throw std::invalid_argument("standard form needs a symmetric zero-diagonal matrix");
  std::size_t n = input.rows();
  StandardFormResult out{input, BitMatrix::identity(n), 0};
  if (n == 0) return out;
  BitMatrix& b = out.reduced;
  BitMatrix& a = out.transform;

  std::size_t j = 0, e = n - 1;
  while (j < e) {
    std::size_t k = n;
    for (std::size_t i = 0; i < n; ++i)
      if (b.get(i, j)) {
        k = i;
        break;
      }
    if (k == n) {
      // Empty row and column: park it at the end. Swapping with an equally
      // empty end slot would do nothing, so only shrink in that case.
      bool end_empty = true;
      for (std::size_t i = 0; i < n; ++i)
        if (b.get(i, e)) end_empty = false;
      if (!end_empty) conj_swap(b, a, j, e);
      --e;
      continue;
    }
    std::size_t p = j + 1;
    conj_swap(b, a, k, p);
    for (std::size_t r = p + 1; r <= e; ++r)
      if (b.get(r, j)) conj_add(b, a, r, p);
    for (std::size_t c = j + 1; c <= e; ++c)
      if (b.get(p, c)) conj_add(b, a, c, j);
    j += 2;
    out.rank += 2;
  }
  return out;
}

void apply_cx_to_graph(Graph& g, int control, int target) {
  std::size_t n = g.order();
  BitVector nbrs = g.adjacency.row(target);
  for (std::size_t k = 0; k < n; ++k)
    if (nbrs.get(k) && int(k) != control) g.toggle_edge(control, k);
}

std::vector<Gate> bell_extraction_circuit(const Graph& input) {
  Graph g = input;
  std::size_t n = g.order();
  std::vector<Gate> gates;
  std::vector<bool> done(n, false);
  auto emit_cx = [&](int control, int target) {
    if (g.edge(control, target)) {
      // Toggling against the target's neighborhood would add a linear term;
      // the local Z removes it.
      gates.push_back(Gate{Gate::Kind::CX, control, target});
      gates.push_back(Gate{Gate::Kind::LocalZ, control, control});
    } else {
      gates.push_back(Gate{Gate::Kind::CX, control, target});
    }
    apply_cx_to_graph(g, control, target);
  };

  for (std::size_t j = 0; j < n; ++j) {
    if (done[j]) continue;
    std::size_t k = n;
    for (std::size_t c = 0; c < n; ++c)
      if (g.edge(j, c)) {
        k = c;
        break;
      }
    if (k == n) continue;  // isolated vertex
    // Detach j from everything except k, then k from everything except j.
    for (std::size_t r = 0; r < n; ++r)
      if (r != j && r != k && g.edge(j, r)) emit_cx(int(r), int(k));
    for (std::size_t c = 0; c < n; ++c)
      if (c != j && c != k && g.edge(k, c)) emit_cx(int(c), int(j));
    done[j] = done[k] = true;
  }
  return gates;
}

Graph replay_circuit(const Graph& g, const std::vector<Gate>& gates) {
  Graph out = g;
  for (const auto& gate : gates)
    if (gate.kind == Gate::Kind::CX) apply_cx_to_graph(out, gate.control, gate.target);
  return out;
}

Fraction hypergraph_overlap(const BooleanFunction& f, const BooleanFunction& c) {
  if (f.nvars() != c.nvars()) throw std::invalid_argument("arity mismatch");
  int d = f.nvars();
  if (d > 16) throw std::length_error("overlap capped at 16 variables");
  if (boolfn::anf_from_table(f).degree() > 3)
    throw std::invalid_argument("f must have degree <= 3");
  if (boolfn::anf_from_table(c).degree() > 2)
    throw std::invalid_argument("c must have degree <= 2");

  std::int64_t w = boolfn::generalized_walsh(f, c);

  // Same number from the state amplitudes <G[c] | G[f]>.
  double scale = std::pow(2.0, -d);
  double inner = 0.0;
  for (std::uint64_t z = 0; z < f.table_size(); ++z)
    inner += (c.value(z) ? -1.0 : 1.0) * (f.value(z) ? -1.0 : 1.0) * scale;
  if (std::abs(inner - double(w) * scale) > 1e-9)
    throw std::logic_error("hypergraph overlap cross-check failed");

  return Fraction::of(w, std::int64_t(f.table_size()));
}

}  // namespace cssgames::graphstate
