#include "cssgames/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace cssgames::quantum {

using cssgame::CssCode;
using cssgame::GameSpec;
using cssgame::SubConstraint;
using f2::BitVector;

namespace {

constexpr double kImagTol = 1e-10;

int parity64(std::uint64_t v) { return std::popcount(v) & 1; }

}  // namespace

StateVector::StateVector(int nqubits, int cap) : n_(nqubits) {
  if (nqubits < 1 || nqubits > cap) throw std::length_error("qubit count outside the cap");
  a_.assign(std::uint64_t(1) << n_, cplx(0.0, 0.0));
  a_[0] = 1.0;
}

void StateVector::apply_single(int q, const std::array<cplx, 4>& m) {
  std::uint64_t bit = std::uint64_t(1) << q;
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if (i & bit) continue;
    cplx a0 = a_[i], a1 = a_[i | bit];
    a_[i] = m[0] * a0 + m[1] * a1;
    a_[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply_h(int q) {
  const double s = 1.0 / std::sqrt(2.0);
  apply_single(q, {s, s, s, -s});
}

void StateVector::apply_cx(int control, int target) {
  std::uint64_t cb = std::uint64_t(1) << control, tb = std::uint64_t(1) << target;
  for (std::uint64_t i = 0; i < dim(); ++i)
    if ((i & cb) && !(i & tb)) std::swap(a_[i], a_[i | tb]);
}

void StateVector::apply_cz(int a, int b) {
  std::uint64_t ab = std::uint64_t(1) << a, bb = std::uint64_t(1) << b;
  for (std::uint64_t i = 0; i < dim(); ++i)
    if ((i & ab) && (i & bb)) a_[i] = -a_[i];
}

void StateVector::apply_z(int q) {
  std::uint64_t bit = std::uint64_t(1) << q;
  for (std::uint64_t i = 0; i < dim(); ++i)
    if (i & bit) a_[i] = -a_[i];
}

void StateVector::apply_multi_cz(std::uint64_t mask) {
  for (std::uint64_t i = 0; i < dim(); ++i)
    if ((i & mask) == mask) a_[i] = -a_[i];
}

void StateVector::apply_pauli_xz(std::uint64_t xmask, std::uint64_t zmask) {
  if (xmask == 0) {
    for (std::uint64_t i = 0; i < dim(); ++i)
      if (parity64(i & zmask)) a_[i] = -a_[i];
    return;
  }
  std::uint64_t low = xmask & (~xmask + 1);
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if (i & low) continue;
    std::uint64_t j = i ^ xmask;
    cplx ai = a_[i], aj = a_[j];
    // X^a Z^b |z> = (-1)^(<b,z>) |z^a>.
    a_[j] = (parity64(i & zmask) ? -1.0 : 1.0) * ai;
    a_[i] = (parity64(j & zmask) ? -1.0 : 1.0) * aj;
  }
}

cplx StateVector::expectation_pauli(std::uint64_t xmask, std::uint64_t zmask) const {
  cplx acc = 0.0;
  for (std::uint64_t z = 0; z < dim(); ++z) {
    cplx term = std::conj(a_[z ^ xmask]) * a_[z];
    acc += parity64(z & zmask) ? -term : term;
  }
  cplx phase = 1.0;
  switch (std::popcount(xmask & zmask) % 4) {
    case 0: phase = 1.0; break;
    case 1: phase = cplx(0.0, 1.0); break;
    case 2: phase = -1.0; break;
    case 3: phase = cplx(0.0, -1.0); break;
  }
  return phase * acc;
}

cplx StateVector::inner(const StateVector& o) const {
  if (n_ != o.n_) throw std::invalid_argument("qubit count mismatch");
  cplx acc = 0.0;
  for (std::uint64_t i = 0; i < dim(); ++i) acc += std::conj(a_[i]) * o.a_[i];
  return acc;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : a_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::normalize() {
  double nn = norm();
  if (nn < 1e-14) throw std::runtime_error("cannot normalize a null vector");
  for (auto& a : a_) a /= nn;
}

void StateVector::project_stabilizer(std::uint64_t xmask, std::uint64_t zmask, bool sign) {
  StateVector tmp = *this;
  tmp.apply_pauli_xz(xmask, zmask);
  double s = sign ? -0.5 : 0.5;
  for (std::uint64_t i = 0; i < dim(); ++i) a_[i] = 0.5 * a_[i] + s * tmp.a_[i];
}

StateVector plus_state(int n) {
  StateVector psi(n);
  double amp = std::pow(2.0, -0.5 * n);
  for (std::uint64_t i = 0; i < psi.dim(); ++i) psi.amp(i) = amp;
  return psi;
}

StateVector ghz_state(int n) {
  StateVector psi(n);
  psi.amp(0) = 1.0 / std::sqrt(2.0);
  psi.amp(psi.dim() - 1) = 1.0 / std::sqrt(2.0);
  return psi;
}

StateVector graph_state(const graphstate::Graph& g) {
  StateVector psi = plus_state(int(g.order()));
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = i + 1; j < g.order(); ++j)
      if (g.edge(i, j)) psi.apply_cz(int(i), int(j));
  return psi;
}

StateVector hypergraph_state(const boolfn::BooleanFunction& f) {
  StateVector psi(f.nvars());
  double amp = std::pow(2.0, -0.5 * f.nvars());
  for (std::uint64_t z = 0; z < psi.dim(); ++z) psi.amp(z) = f.value(z) ? -amp : amp;
  return psi;
}

StateVector css_codeword(const CssCode& code) {
  StateVector psi = plus_state(int(code.nqubits()));
  for (std::size_t r = 0; r < code.hx.rows(); ++r)
    psi.project_stabilizer(code.hx.row(r).to_index(), 0);
  for (std::size_t r = 0; r < code.hz.rows(); ++r)
    psi.project_stabilizer(0, code.hz.row(r).to_index());
  if (psi.norm() < 1e-12) throw std::runtime_error("empty codespace projection");
  psi.normalize();
  return psi;
}

StateVector deformed_state(const StateVector& base, double theta) {
  StateVector psi = base;
  // e^(theta Z) then e^(2 i theta Y), both real matrices in this basis.
  double c = std::cos(2 * theta), s = std::sin(2 * theta);
  std::array<cplx, 4> rot = {c, s, -s, c};
  std::array<cplx, 4> stretch = {std::exp(theta), 0.0, 0.0, std::exp(-theta)};
  for (int q = 0; q < psi.nqubits(); ++q) {
    psi.apply_single(q, rot);
    psi.apply_single(q, stretch);
  }
  psi.normalize();
  return psi;
}

namespace {

struct PauliMasks {
  std::uint64_t x = 0, z = 0;
};

PauliMasks masks_on(const std::vector<Pauli>& paulis, std::uint64_t site_mask) {
  PauliMasks m;
  for (std::size_t i = 0; i < paulis.size(); ++i) {
    if (!((site_mask >> i) & 1)) continue;
    switch (paulis[i]) {
      case Pauli::I: break;
      case Pauli::X: m.x |= std::uint64_t(1) << i; break;
      case Pauli::Y: m.x |= std::uint64_t(1) << i; m.z |= std::uint64_t(1) << i; break;
      case Pauli::Z: m.z |= std::uint64_t(1) << i; break;
    }
  }
  return m;
}

double real_expectation(const StateVector& psi, const PauliMasks& m) {
  cplx e = psi.expectation_pauli(m.x, m.z);
  if (std::abs(e.imag()) > kImagTol)
    throw std::logic_error("expectation of a Hermitian Pauli product came out complex");
  return e.real();
}

}  // namespace

double outcome_parity_prob(const StateVector& psi, const std::vector<Pauli>& paulis,
                           const BitVector& support, bool parity) {
  if (int(paulis.size()) != psi.nqubits() || support.size() != paulis.size())
    throw std::invalid_argument("per-site Pauli list must cover every qubit");
  if (!support.any()) throw std::invalid_argument("support must be nonempty");
  PauliMasks m = masks_on(paulis, support.to_index());
  double e = real_expectation(psi, m);
  return 0.5 * (1.0 + (parity ? -1.0 : 1.0) * e);
}

double multi_constraint_prob(const StateVector& psi, const std::vector<Pauli>& paulis,
                             const std::vector<SubConstraint>& constraints) {
  if (int(paulis.size()) != psi.nqubits())
    throw std::invalid_argument("per-site Pauli list must cover every qubit");
  if (constraints.size() > 20) throw std::length_error("constraint count capped at 20");
  if (constraints.empty()) return 1.0;
  std::size_t nc = constraints.size();
  std::vector<std::uint64_t> supports(nc);
  for (std::size_t c = 0; c < nc; ++c) supports[c] = constraints[c].support.to_index();

  double acc = 0.0;
  for (std::uint64_t r = 0; r < (std::uint64_t(1) << nc); ++r) {
    std::uint64_t site_mask = 0;
    bool fsum = false;
    for (std::size_t c = 0; c < nc; ++c)
      if ((r >> c) & 1) {
        site_mask ^= supports[c];
        fsum ^= constraints[c].parity;
      }
    PauliMasks m = masks_on(paulis, site_mask);
    acc += (fsum ? -1.0 : 1.0) * real_expectation(psi, m);
  }
  return acc / double(std::uint64_t(1) << nc);
}

std::vector<Pauli> query_paulis(const GameSpec& game, std::size_t xi, std::size_t zi) {
  std::vector<Pauli> out(game.code.nqubits(), Pauli::I);
  const BitVector& a = game.query_a(xi);
  const BitVector& b = game.query_b(zi);
  for (std::size_t q = 0; q < out.size(); ++q) {
    bool xa = a.get(q), zb = b.get(q);
    out[q] = xa ? (zb ? Pauli::Y : Pauli::X) : (zb ? Pauli::Z : Pauli::I);
  }
  return out;
}

double pauli_strategy_score(const StateVector& psi, const GameSpec& game) {
  if (psi.nqubits() != int(game.code.nqubits()))
    throw std::invalid_argument("state size does not match the code");
  double acc = 0.0;
  for (std::size_t zi = 0; zi < game.z_count; ++zi) {
    for (std::size_t xi = 0; xi < game.x_count; ++xi) {
      std::vector<Pauli> paulis = query_paulis(game, xi, zi);
      if (game.mode == cssgame::GameMode::Xor) {
        BitVector a = game.query_a(xi), b = game.query_b(zi);
        BitVector support = (a ^ b) ^ (a & b);
        if (!support.any()) {
          acc += game.target(xi, zi) ? 0.0 : 1.0;
        } else {
          acc += outcome_parity_prob(psi, paulis, support, game.target(xi, zi));
        }
      } else {
        auto gens = cssgame::reduce_constraints(game.constraints[game.query_id(xi, zi)],
                                                game.code.nqubits());
        acc += multi_constraint_prob(psi, paulis, gens);
      }
    }
  }
  return acc / double(game.nqueries());
}

double merp_strategy_score(const GameSpec& game) {
  StateVector ghz = ghz_state(int(game.code.nqubits()));
  double acc = 0.0;
  BitVector all(game.code.nqubits());
  for (std::size_t q = 0; q < game.code.nqubits(); ++q) all.set(q, true);
  for (std::size_t zi = 0; zi < game.z_count; ++zi) {
    for (std::size_t xi = 0; xi < game.x_count; ++xi) {
      const BitVector& a = game.query_a(xi);
      const BitVector& b = game.query_b(zi);
      std::vector<Pauli> paulis(game.code.nqubits());
      for (std::size_t q = 0; q < game.code.nqubits(); ++q)
        paulis[q] = (a.get(q) && b.get(q)) ? Pauli::Y : Pauli::X;
      if (game.mode == cssgame::GameMode::Xor) {
        acc += outcome_parity_prob(ghz, paulis, all, game.target(xi, zi));
      } else {
        auto gens = cssgame::reduce_constraints(game.constraints[game.query_id(xi, zi)],
                                                game.code.nqubits());
        acc += multi_constraint_prob(ghz, paulis, gens);
      }
    }
  }
  return acc / double(game.nqueries());
}

double codespace_projector_expectation(const StateVector& psi, const CssCode& code) {
  StateVector proj = psi;
  for (std::size_t r = 0; r < code.hx.rows(); ++r)
    proj.project_stabilizer(code.hx.row(r).to_index(), 0);
  for (std::size_t r = 0; r < code.hz.rows(); ++r)
    proj.project_stabilizer(0, code.hz.row(r).to_index());
  cplx e = psi.inner(proj);
  if (std::abs(e.imag()) > kImagTol)
    throw std::logic_error("projector expectation came out complex");
  return e.real();
}

namespace {

std::array<cplx, 4> pauli_matrix(Pauli p) {
  switch (p) {
    case Pauli::I: return {1.0, 0.0, 0.0, 1.0};
    case Pauli::X: return {0.0, 1.0, 1.0, 0.0};
    case Pauli::Y: return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0};
    case Pauli::Z: return {1.0, 0.0, 0.0, -1.0};
  }
  throw std::invalid_argument("unknown Pauli");
}

// Projector (I + (-1)^s O) / 2 applied on one site.
void apply_site_projector(StateVector& psi, int site, Pauli p, bool s) {
  auto m = pauli_matrix(p);
  double sgn = s ? -0.5 : 0.5;
  std::array<cplx, 4> proj = {0.5 + sgn * m[0], sgn * m[1], sgn * m[2], 0.5 + sgn * m[3]};
  psi.apply_single(site, proj);
}

}  // namespace

void EmpiricalModel::validate(double norm_tol, double marg_tol) const {
  for (std::size_t c = 0; c < scenario.contexts.size(); ++c) {
    double sum = 0.0;
    for (double p : tables[c]) {
      if (p < -norm_tol) throw std::logic_error("negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > norm_tol) throw std::logic_error("context table must sum to 1");
  }
  // Marginals over shared observables must agree pairwise.
  for (std::size_t c1 = 0; c1 < scenario.contexts.size(); ++c1) {
    for (std::size_t c2 = c1 + 1; c2 < scenario.contexts.size(); ++c2) {
      std::vector<int> shared;
      for (int o : scenario.contexts[c1])
        if (std::find(scenario.contexts[c2].begin(), scenario.contexts[c2].end(), o) !=
            scenario.contexts[c2].end())
          shared.push_back(o);
      if (shared.empty()) continue;
      auto marginal = [&](std::size_t c) {
        const auto& ctx = scenario.contexts[c];
        std::vector<double> out(std::size_t(1) << shared.size(), 0.0);
        for (std::size_t o = 0; o < tables[c].size(); ++o) {
          std::size_t key = 0;
          for (std::size_t s = 0; s < shared.size(); ++s) {
            auto pos = std::find(ctx.begin(), ctx.end(), shared[s]) - ctx.begin();
            key |= ((o >> pos) & 1) << s;
          }
          out[key] += tables[c][o];
        }
        return out;
      };
      auto m1 = marginal(c1), m2 = marginal(c2);
      for (std::size_t k = 0; k < m1.size(); ++k)
        if (std::abs(m1[k] - m2[k]) > marg_tol)
          throw std::logic_error("incompatible marginals across contexts");
    }
  }
}

EmpiricalModel empirical_model(const StateVector& psi, const MeasurementScenario& scenario) {
  EmpiricalModel e;
  e.scenario = scenario;
  for (const auto& ctx : scenario.contexts) {
    // Observables of one context must sit on disjoint sites.
    std::uint64_t seen = 0;
    for (int o : ctx) {
      std::uint64_t bit = std::uint64_t(1) << scenario.observables[o].site;
      if (seen & bit) throw std::invalid_argument("context observables must not share sites");
      seen |= bit;
    }
    std::vector<double> table(std::size_t(1) << ctx.size(), 0.0);
    for (std::size_t outcome = 0; outcome < table.size(); ++outcome) {
      StateVector proj = psi;
      for (std::size_t k = 0; k < ctx.size(); ++k) {
        const Observable& ob = scenario.observables[ctx[k]];
        apply_site_projector(proj, ob.site, ob.p, (outcome >> k) & 1);
      }
      double nn = proj.norm();
      table[outcome] = nn * nn;
    }
    e.tables.push_back(std::move(table));
  }
  return e;
}

namespace {

struct EdgeOps {
  std::array<cplx, 4> a, b, c;  // per-edge operators for questions 01, 10, 11
};

EdgeOps assignment_ops(SelfTestAssignment kind) {
  EdgeOps ops;
  switch (kind) {
    case SelfTestAssignment::Honest:
      ops.a = pauli_matrix(Pauli::Z);
      ops.b = pauli_matrix(Pauli::X);
      ops.c = pauli_matrix(Pauli::Y);
      break;
    case SelfTestAssignment::MerpGhz:
      ops.a = pauli_matrix(Pauli::X);
      ops.b = pauli_matrix(Pauli::X);
      ops.c = pauli_matrix(Pauli::Y);
      break;
    case SelfTestAssignment::Identity:
      ops.a = pauli_matrix(Pauli::I);
      ops.b = pauli_matrix(Pauli::I);
      ops.c = pauli_matrix(Pauli::I);
      break;
  }
  return ops;
}

double region_expectation(const StateVector& psi, const EdgeOps& ops,
                          const std::vector<int>& a_sites, const std::vector<int>& b_sites,
                          const std::vector<int>& c_sites) {
  StateVector out = psi;
  for (int s : a_sites) out.apply_single(s, ops.a);
  for (int s : b_sites) out.apply_single(s, ops.b);
  for (int s : c_sites) out.apply_single(s, ops.c);
  cplx e = psi.inner(out);
  if (std::abs(e.imag()) > kImagTol) throw std::logic_error("region expectation came out complex");
  return e.real();
}

}  // namespace

SelfTestReport toric_selftest_constraints(std::size_t ell, SelfTestAssignment assignment) {
  if (ell != 2) throw std::invalid_argument("self test implemented for the 2x2 torus");
  EdgeOps ops = assignment_ops(assignment);
  StateVector psi = assignment == SelfTestAssignment::MerpGhz
                        ? ghz_state(8)
                        : css_codeword(cssgame::toric_square_code(2));

  auto h = [](int r, int c) { return (r % 2) * 2 + (c % 2); };
  auto v = [](int r, int c) { return 4 + (r % 2) * 2 + (c % 2); };

  // Plaquette p(0,0) with its three corner embeddings; see the star and
  // boundary conventions of square_torus.
  std::vector<int> boundary = {h(0, 0), h(1, 0), v(0, 0), v(0, 1)};

  SelfTestReport rep;
  auto add = [&](const std::string& name, double e, double req) {
    rep.checks.push_back(SelfTestCheck{name, e, req, std::abs(e - req) < 1e-10});
  };

  // S12: vertex (0,1); C on the shared pair {h(0,0), v(0,1)}.
  add("S12",
      region_expectation(psi, ops, {h(0, 1), v(1, 1)}, {h(1, 0), v(0, 0)}, {h(0, 0), v(0, 1)}),
      -1.0);
  // S23: vertex (1,1); C on {h(1,0), v(0,1)}.
  add("S23",
      region_expectation(psi, ops, {h(1, 1), v(1, 1)}, {h(0, 0), v(0, 0)}, {h(1, 0), v(0, 1)}),
      -1.0);
  // S31: the two-vertex strip; C on {h(0,0), h(1,0)}.
  add("S31",
      region_expectation(psi, ops, {h(0, 1), h(1, 1)}, {v(0, 0), v(0, 1)}, {h(0, 0), h(1, 0)}),
      -1.0);
  add("S0", region_expectation(psi, ops, {}, boundary, {}), 1.0);

  // Anticommutators on the state, for every edge.
  double worst = 0.0;
  for (int e = 0; e < 8; ++e) {
    for (auto [first, second] : {std::pair{ops.b, ops.c}, std::pair{ops.a, ops.c}}) {
      StateVector bc = psi;
      bc.apply_single(e, second);
      bc.apply_single(e, first);
      StateVector cb = psi;
      cb.apply_single(e, first);
      cb.apply_single(e, second);
      double nn = 0.0;
      for (std::uint64_t i = 0; i < bc.dim(); ++i) nn += std::norm(bc.amp(i) + cb.amp(i));
      worst = std::max(worst, std::sqrt(nn));
    }
  }
  rep.max_anticommutator_norm = worst;

  rep.all_pass = worst < 1e-10;
  for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

}  // namespace cssgames::quantum
