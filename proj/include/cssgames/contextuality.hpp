#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cssgames/quantum.hpp"
#include "cssgames/rational.hpp"
#include "cssgames/strategy.hpp"

namespace cssgames::contextuality {

// Weight over global value assignments (as integers over the observable
// list) certifying the noncontextual part.
struct NcfResult {
  double ncf = 0.0;
  double cf = 1.0;
  std::vector<std::pair<std::uint64_t, double>> witness;
  bool exact = false;
  Fraction ncf_exact{0, 1};
};

// Noncontextual fraction by linear programming: maximize the total weight
// of value assignments whose context marginals stay below the tables.
NcfResult ncf(const quantum::EmpiricalModel& e, int max_observables = 20);

// Same LP with exact rational pivoting.
struct RationalModel {
  quantum::MeasurementScenario scenario;
  std::vector<std::vector<Fraction>> tables;
};
NcfResult ncf_rational(const RationalModel& e, int max_observables = 20);

// 1 - (1 - omega) NCF(e), the quantum-performance ceiling.
double prop4_bound(double omega, double ncf_value);

// One context per query; X collects the nonidentity single-site Paulis.
quantum::MeasurementScenario scenario_from_game(const cssgame::GameSpec& game);

struct SweepPoint {
  double theta = 0.0;
  double pauli_score = 0.0;
  double ncf = 0.0;
  double bound = 0.0;
};

// Deformation sweep of the codeword against the NCF bound (XOR games).
std::vector<SweepPoint> deformation_sweep(const cssgame::GameSpec& game, double theta_max,
                                          int steps);

}  // namespace cssgames::contextuality
