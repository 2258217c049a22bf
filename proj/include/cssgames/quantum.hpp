#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cssgames/cssgame.hpp"
#include "cssgames/graphstate.hpp"

namespace cssgames::quantum {

using cplx = std::complex<double>;

enum class Pauli { I, X, Y, Z };

// Dense little-endian statevector: bit q of an amplitude index is qubit q.
class StateVector {
 public:
  explicit StateVector(int nqubits, int cap = 22);

  int nqubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t(1) << n_; }
  const std::vector<cplx>& amps() const { return a_; }
  cplx& amp(std::uint64_t i) { return a_[i]; }
  const cplx& amp(std::uint64_t i) const { return a_[i]; }

  void apply_single(int q, const std::array<cplx, 4>& m);  // row-major 2x2
  void apply_h(int q);
  void apply_cx(int control, int target);
  void apply_cz(int a, int b);
  void apply_z(int q);
  void apply_multi_cz(std::uint64_t mask);  // sign flip when all mask bits set
  void apply_pauli_xz(std::uint64_t xmask, std::uint64_t zmask);  // X^a Z^b

  // <psi| i^(wt(a&b)) X^a Z^b |psi>.
  cplx expectation_pauli(std::uint64_t xmask, std::uint64_t zmask) const;
  cplx inner(const StateVector& o) const;  // <this|o>
  double norm() const;
  void normalize();
  // psi <- (psi + (-1)^sign X^a Z^b psi) / 2.
  void project_stabilizer(std::uint64_t xmask, std::uint64_t zmask, bool sign = false);

 private:
  int n_;
  std::vector<cplx> a_;
};

StateVector plus_state(int n);
StateVector ghz_state(int n);
StateVector graph_state(const graphstate::Graph& g);
// Amplitudes (-1)^f(z) / 2^(d/2); equals the gated C^k Z construction.
StateVector hypergraph_state(const boolfn::BooleanFunction& f);
// Normalized projection of |+...+> onto the codespace.
StateVector css_codeword(const cssgame::CssCode& code);
// A(theta) = e^(theta Z) e^(2 i theta Y) on every site, then renormalized.
StateVector deformed_state(const StateVector& base, double theta);

// Pr(parity of outcomes on `support` equals `parity`) when measuring the
// given single-site Paulis.
double outcome_parity_prob(const StateVector& psi, const std::vector<Pauli>& paulis,
                           const f2::BitVector& support, bool parity);

// Joint probability that every constraint's outcome parity is met; the
// general overlapping-constraint expression, 2^|C| terms.
double multi_constraint_prob(const StateVector& psi, const std::vector<Pauli>& paulis,
                             const std::vector<cssgame::SubConstraint>& constraints);

std::vector<Pauli> query_paulis(const cssgame::GameSpec& game, std::size_t xi, std::size_t zi);

// Average win probability of the honest single-site Pauli strategy over
// uniform queries (XOR or submeasurement mode of the game).
double pauli_strategy_score(const StateVector& psi, const cssgame::GameSpec& game);

// GHZ-resource strategy: measure X when a_i b_i = 0 and Y otherwise.
double merp_strategy_score(const cssgame::GameSpec& game);

double codespace_projector_expectation(const StateVector& psi, const cssgame::CssCode& code);

struct Observable {
  int site = 0;
  Pauli p = Pauli::X;
  friend bool operator==(const Observable& a, const Observable& b) {
    return a.site == b.site && a.p == b.p;
  }
  friend bool operator<(const Observable& a, const Observable& b) {
    return a.site != b.site ? a.site < b.site : int(a.p) < int(b.p);
  }
};

struct MeasurementScenario {
  std::vector<Observable> observables;      // the set X
  std::vector<std::vector<int>> contexts;   // index lists into observables
};

struct EmpiricalModel {
  MeasurementScenario scenario;
  std::vector<std::vector<double>> tables;  // per context, 2^|C| outcome probs

  // Normalization within norm_tol, marginal compatibility within marg_tol.
  void validate(double norm_tol = 1e-12, double marg_tol = 1e-9) const;
};

EmpiricalModel empirical_model(const StateVector& psi, const MeasurementScenario& scenario);

enum class SelfTestAssignment { Honest, MerpGhz, Identity };

struct SelfTestCheck {
  std::string name;
  double expectation = 0.0;
  double required = 0.0;
  bool pass = false;
};

struct SelfTestReport {
  std::vector<SelfTestCheck> checks;
  double max_anticommutator_norm = 0.0;  // over {B_e,C_e} and {A_e,C_e}
  bool all_pass = false;
};

// Numerical check of the rigidity constraint operators on the 2x2 torus.
SelfTestReport toric_selftest_constraints(std::size_t ell, SelfTestAssignment assignment);

}  // namespace cssgames::quantum
