#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <random>

#include "cssgames/quantum.hpp"
#include "cssgames/strategy.hpp"
#include "oracles.hpp"

using namespace cssgames::quantum;
using namespace cssgames::cssgame;
using cssgames::boolfn::BooleanFunction;
using cssgames::f2::BitVector;

namespace {

StateVector random_state(std::mt19937_64& rng, int n) {
  StateVector psi(n);
  std::normal_distribution<double> gauss;
  for (std::uint64_t i = 0; i < psi.dim(); ++i) psi.amp(i) = cplx(gauss(rng), gauss(rng));
  psi.normalize();
  return psi;
}

std::vector<Pauli> random_paulis(std::mt19937_64& rng, int n) {
  std::vector<Pauli> out(n);
  for (auto& p : out) p = Pauli(1 + rng() % 3);
  return out;
}

// Born-rule oracle: sum the probabilities of all outcome strings that meet
// every constraint, using per-site projectors only.
double born_oracle(const StateVector& psi, const std::vector<Pauli>& paulis,
                   const std::vector<SubConstraint>& constraints) {
  int n = psi.nqubits();
  double total = 0.0;
  for (std::uint64_t s = 0; s < (std::uint64_t(1) << n); ++s) {
    bool ok = true;
    for (const auto& c : constraints) {
      int parity = std::popcount(s & c.support.to_index()) & 1;
      if (parity != int(c.parity)) ok = false;
    }
    if (!ok) continue;
    StateVector proj = psi;
    for (int q = 0; q < n; ++q) {
      std::array<cplx, 4> m;
      double sign = ((s >> q) & 1) ? -0.5 : 0.5;
      switch (paulis[q]) {
        case Pauli::X: m = {0.5, sign, sign, 0.5}; break;
        case Pauli::Y: m = {0.5, cplx(0, -sign), cplx(0, sign), 0.5}; break;
        case Pauli::Z: m = {0.5 + sign, 0, 0, 0.5 - sign}; break;
        default: m = {1, 0, 0, 1}; break;
      }
      proj.apply_single(q, m);
    }
    total += proj.norm() * proj.norm();
  }
  return total;
}

MeasurementScenario ghz3_scenario() {
  MeasurementScenario sc;
  for (int site = 0; site < 3; ++site) {
    sc.observables.push_back({site, Pauli::X});
    sc.observables.push_back({site, Pauli::Y});
  }
  auto x = [](int site) { return 2 * site; };
  auto y = [](int site) { return 2 * site + 1; };
  sc.contexts = {{x(0), x(1), x(2)}, {x(0), y(1), y(2)}, {y(0), x(1), y(2)}, {y(0), y(1), x(2)}};
  return sc;
}

}  // namespace

TEST_CASE("state constructors") {
  StateVector ghz2 = ghz_state(2);
  CHECK(std::abs(ghz2.amp(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(ghz2.amp(3) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(ghz2.amp(1)) == 0.0);

  StateVector p2 = graph_state(cssgames::graphstate::path_graph(2));
  for (std::uint64_t i = 0; i < 4; ++i)
    CHECK(std::abs(p2.amp(i) - (i == 3 ? -0.5 : 0.5)) < 1e-15);

  // The codeword projection of the GHZ checks is the GHZ state.
  for (int n : {2, 3, 5}) {
    StateVector cw = css_codeword(ghz_code(n));
    StateVector direct = ghz_state(n);
    CHECK(std::abs(std::abs(cw.inner(direct)) - 1.0) < 1e-12);
  }

  StateVector base = ghz_state(3);
  StateVector same = deformed_state(base, 0.0);
  CHECK(std::abs(std::abs(base.inner(same)) - 1.0) < 1e-12);
  StateVector bent = deformed_state(base, 0.3);
  CHECK(std::abs(bent.norm() - 1.0) < 1e-12);
}

TEST_CASE("outcome parity probabilities") {
  StateVector ghz3 = ghz_state(3);
  BitVector full = BitVector::from_string("111");
  CHECK(outcome_parity_prob(ghz3, {Pauli::X, Pauli::X, Pauli::X}, full, false) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(outcome_parity_prob(ghz3, {Pauli::X, Pauli::Y, Pauli::Y}, full, true) ==
        doctest::Approx(1.0).epsilon(1e-12));

  StateVector plus = plus_state(1);
  CHECK(outcome_parity_prob(plus, {Pauli::Z}, BitVector::from_string("1"), false) ==
        doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS(outcome_parity_prob(plus, {Pauli::Z}, BitVector::from_string("0"), false));
}

TEST_CASE("multi constraint probability") {
  std::mt19937_64 rng(4242);

  // A single constraint reduces to the parity formula.
  for (int iter = 0; iter < 10; ++iter) {
    StateVector psi = random_state(rng, 3);
    auto paulis = random_paulis(rng, 3);
    SubConstraint c{BitVector::from_index(1 + rng() % 7, 3), bool(rng() & 1)};
    CHECK(multi_constraint_prob(psi, paulis, {c}) ==
          doctest::Approx(outcome_parity_prob(psi, paulis, c.support, c.parity))
              .epsilon(1e-12));
  }

  // Disjoint ZZ constraints on the GHZ state are simultaneously certain.
  StateVector ghz4 = ghz_state(4);
  std::vector<Pauli> zzzz(4, Pauli::Z);
  std::vector<SubConstraint> cs = {{BitVector::from_string("1100"), false},
                                   {BitVector::from_string("0011"), false}};
  CHECK(multi_constraint_prob(ghz4, zzzz, cs) == doctest::Approx(1.0).epsilon(1e-12));

  // Overlapping random constraints against the Born-rule oracle.
  for (int iter = 0; iter < 50; ++iter) {
    int n = 2 + int(rng() % 3);
    StateVector psi = random_state(rng, n);
    auto paulis = random_paulis(rng, n);
    std::vector<SubConstraint> two;
    two.push_back({BitVector::from_index(1 + rng() % ((1u << n) - 1), n), bool(rng() & 1)});
    two.push_back({BitVector::from_index(1 + rng() % ((1u << n) - 1), n), bool(rng() & 1)});
    CHECK(multi_constraint_prob(psi, paulis, two) ==
          doctest::Approx(born_oracle(psi, paulis, two)).epsilon(1e-9));
  }
}

TEST_CASE("constraint reduction leaves probabilities unchanged") {
  GameSpec g = build_submeasurement_game(ghz_code(4), InputSets::unrestricted());
  StateVector noise = deformed_state(css_codeword(ghz_code(4)), 0.2);
  for (std::size_t zi = 0; zi < g.z_count; ++zi)
    for (std::size_t xi = 0; xi < g.x_count; ++xi) {
      const auto& all = g.constraints[g.query_id(xi, zi)];
      if (all.empty() || all.size() > 12) continue;
      auto gens = reduce_constraints(all, 4);
      auto paulis = query_paulis(g, xi, zi);
      CHECK(multi_constraint_prob(noise, paulis, all) ==
            doctest::Approx(multi_constraint_prob(noise, paulis, gens)).epsilon(1e-9));
    }
}

TEST_CASE("pauli strategy scores") {
  GameSpec ghz3 = build_xor_game(ghz_code(3), InputSets::unrestricted());
  CHECK(pauli_strategy_score(css_codeword(ghz_code(3)), ghz3) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // The product state surrogate sits at 1/2 (1 + 2^-(N-1)).
  CHECK(pauli_strategy_score(plus_state(3), ghz3) == doctest::Approx(0.625).epsilon(1e-12));

  // Score equals 1/2 (1 + <Pi_0>) for arbitrary states.
  std::mt19937_64 rng(7);
  for (const CssCode& code : {ghz_code(3), cluster1d_code(4)}) {
    GameSpec game = build_xor_game(code, InputSets::unrestricted());
    for (int iter = 0; iter < 10; ++iter) {
      StateVector psi = random_state(rng, int(code.nqubits()));
      double lhs = pauli_strategy_score(psi, game);
      double rhs = 0.5 * (1.0 + codespace_projector_expectation(psi, code));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("merp strategy scores") {
  CHECK(merp_strategy_score(build_xor_game(ghz_code(3), InputSets::unrestricted())) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(merp_strategy_score(build_xor_game(toric_square_code(2), InputSets::unrestricted())) ==
        doctest::Approx(1.0).epsilon(1e-12));

  double sub = merp_strategy_score(
      build_submeasurement_game(toric_square_code(2), InputSets::unrestricted()));
  CHECK(sub < 1.0 - 1e-3);
}

TEST_CASE("honest submeasurement play is perfect") {
  for (const CssCode& code : {ghz_code(4), toric_square_code(2)}) {
    GameSpec g = build_submeasurement_game(code, InputSets::unrestricted());
    CHECK(pauli_strategy_score(css_codeword(code), g) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("empirical model reproduces the GHZ table") {
  EmpiricalModel e = empirical_model(ghz_state(3), ghz3_scenario());
  e.validate();
  for (std::size_t ctx = 0; ctx < 4; ++ctx) {
    for (std::size_t o = 0; o < 8; ++o) {
      int par = std::popcount(o) & 1;
      double expect = (ctx == 0 ? par == 0 : par == 1) ? 0.25 : 0.0;
      CHECK(e.tables[ctx][o] == doctest::Approx(expect).epsilon(1e-12));
    }
  }

  // Product state: a point mass on 000 for the XXX context.
  MeasurementScenario xs;
  xs.observables = {{0, Pauli::X}, {1, Pauli::X}, {2, Pauli::X}};
  xs.contexts = {{0, 1, 2}};
  EmpiricalModel p = empirical_model(plus_state(3), xs);
  CHECK(p.tables[0][0] == doctest::Approx(1.0).epsilon(1e-12));

  EmpiricalModel d = empirical_model(deformed_state(ghz_state(3), 0.3), ghz3_scenario());
  d.validate();
}

TEST_CASE("hypergraph stabilizers fix the state") {
  std::mt19937_64 rng(606);
  for (int iter = 0; iter < 20; ++iter) {
    int n = 2 + int(rng() % 7);
    // Random ANF with monomials of degree 1..3.
    cssgames::boolfn::AnfPolynomial p;
    p.nvars = n;
    std::set<std::uint32_t> monos;
    for (int k = 0; k < n; ++k) {
      std::uint32_t m = std::uint32_t(rng() & ((1u << n) - 1));
      while (std::popcount(m) > 3) m &= m - 1;
      if (m) monos.insert(m);
    }
    p.monomials.assign(monos.begin(), monos.end());
    BooleanFunction f = p.to_function();
    StateVector psi = hypergraph_state(f);

    for (int i = 0; i < n; ++i) {
      StateVector s = psi;
      bool negate = false;
      for (auto m : p.monomials) {
        if (!((m >> i) & 1)) continue;
        std::uint32_t rest = m & ~(1u << i);
        if (rest == 0) negate = !negate;
        else s.apply_multi_cz(rest);
      }
      if (negate)
        for (std::uint64_t k = 0; k < s.dim(); ++k) s.amp(k) = -s.amp(k);
      // X_i after the controlled phases.
      s.apply_pauli_xz(std::uint64_t(1) << i, 0);
      CHECK(std::abs(psi.inner(s) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("bell extraction circuit acts correctly on states") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 20; ++iter) {
    std::size_t n = 2 + rng() % 7;
    cssgames::f2::BitMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        bool e = rng() & 1;
        a.set(i, j, e);
        a.set(j, i, e);
      }
    cssgames::graphstate::Graph g(a);
    auto gates = cssgames::graphstate::bell_extraction_circuit(g);

    StateVector psi = graph_state(g);
    for (const auto& gate : gates) {
      if (gate.kind == cssgames::graphstate::Gate::Kind::CX)
        psi.apply_cx(gate.control, gate.target);
      else
        psi.apply_z(gate.control);
    }
    StateVector want = graph_state(cssgames::graphstate::replay_circuit(g, gates));
    CHECK(std::abs(psi.inner(want) - 1.0) < 1e-10);
  }

  // A single pair is one Hadamard away from the Bell state.
  StateVector pair = graph_state(cssgames::graphstate::path_graph(2));
  pair.apply_h(1);
  StateVector bell(2);
  bell.amp(0) = 1.0 / std::sqrt(2.0);
  bell.amp(3) = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(pair.inner(bell) - 1.0) < 1e-12);
}

TEST_CASE("toric self test") {
  SelfTestReport honest = toric_selftest_constraints(2, SelfTestAssignment::Honest);
  CHECK(honest.all_pass);
  CHECK(honest.max_anticommutator_norm < 1e-10);
  for (const auto& c : honest.checks) CHECK(c.pass);

  SelfTestReport merp = toric_selftest_constraints(2, SelfTestAssignment::MerpGhz);
  bool some_fail = false;
  for (const auto& c : merp.checks) some_fail = some_fail || !c.pass;
  CHECK(some_fail);

  SelfTestReport id = toric_selftest_constraints(2, SelfTestAssignment::Identity);
  CHECK(!id.checks[0].pass);  // S12 expectation is +1, not -1
  CHECK(id.checks[3].pass);   // S0 is trivially satisfied
}

TEST_CASE("deformed pauli score stays within [1/2(1+<Pi0>) checks] and hits 1 at 0") {
  GameSpec ghz3 = build_xor_game(ghz_code(3), InputSets::unrestricted());
  StateVector cw = css_codeword(ghz_code(3));
  double prev = 2.0;
  for (double theta : {0.0, 0.1, 0.2, 0.4}) {
    double score = pauli_strategy_score(deformed_state(cw, theta), ghz3);
    CHECK(score <= 1.0 + 1e-12);
    if (theta == 0.0) CHECK(score == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(score <= prev + 1e-9);  // deformation only degrades the codeword
    prev = score;
  }
}
