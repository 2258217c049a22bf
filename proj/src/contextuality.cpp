#include "cssgames/contextuality.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cssgames::contextuality {

using cssgame::GameSpec;
using quantum::EmpiricalModel;
using quantum::MeasurementScenario;

namespace {

template <typename T>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool negative(double v) { return v < -1e-9; }
  static bool positive(double v) { return v > 1e-9; }
  static double from_int(int v) { return double(v); }
};

template <>
struct ScalarOps<Fraction> {
  static Fraction zero() { return Fraction{0, 1}; }
  static Fraction one() { return Fraction{1, 1}; }
  static bool negative(const Fraction& v) { return v.num < 0; }
  static bool positive(const Fraction& v) { return v.num > 0; }
  static Fraction from_int(int v) { return Fraction{v, 1}; }
};

// Dense simplex for maximize c x, A x <= b, x >= 0 with b >= 0 (the slack
// basis is feasible). Dantzig pricing with a Bland fallback against cycling;
// rationals use Bland throughout.
template <typename T>
struct Simplex {
  std::size_t nvars, nrows;
  std::vector<std::vector<T>> tab;  // nrows+1 rows by nvars+nrows+1 cols
  std::vector<std::size_t> basis;

  Simplex(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
          const std::vector<T>& c)
      : nvars(c.size()), nrows(b.size()) {
    tab.assign(nrows + 1, std::vector<T>(nvars + nrows + 1, ScalarOps<T>::zero()));
    basis.resize(nrows);
    for (std::size_t i = 0; i < nrows; ++i) {
      for (std::size_t j = 0; j < nvars; ++j) tab[i][j] = a[i][j];
      tab[i][nvars + i] = ScalarOps<T>::one();
      tab[i].back() = b[i];
      basis[i] = nvars + i;
    }
    for (std::size_t j = 0; j < nvars; ++j) tab[nrows][j] = -c[j];
  }

  void pivot(std::size_t row, std::size_t col) {
    T inv = ScalarOps<T>::one() / tab[row][col];
    for (auto& v : tab[row]) v = v * inv;
    for (std::size_t i = 0; i <= nrows; ++i) {
      if (i == row) continue;
      T factor = tab[i][col];
      if (factor == ScalarOps<T>::zero()) continue;
      for (std::size_t j = 0; j < tab[i].size(); ++j)
        tab[i][j] = tab[i][j] - factor * tab[row][j];
    }
    basis[row] = col;
  }

  T solve(bool bland_always) {
    std::size_t iterations = 0;
    std::size_t bland_after = 2000 + 40 * (nrows + nvars);
    while (true) {
      bool bland = bland_always || iterations > bland_after;
      std::size_t col = SIZE_MAX;
      if (bland) {
        for (std::size_t j = 0; j + 1 < tab[nrows].size(); ++j)
          if (ScalarOps<T>::negative(tab[nrows][j])) {
            col = j;
            break;
          }
      } else {
        T best = ScalarOps<T>::zero();
        for (std::size_t j = 0; j + 1 < tab[nrows].size(); ++j)
          if (tab[nrows][j] < best) {
            best = tab[nrows][j];
            col = j;
          }
        if (col != SIZE_MAX && !ScalarOps<T>::negative(tab[nrows][col])) col = SIZE_MAX;
      }
      if (col == SIZE_MAX) break;

      std::size_t row = SIZE_MAX;
      for (std::size_t i = 0; i < nrows; ++i) {
        if (!ScalarOps<T>::positive(tab[i][col])) continue;
        if (row == SIZE_MAX) {
          row = i;
          continue;
        }
        T lhs = tab[i].back() * tab[row][col];
        T rhs = tab[row].back() * tab[i][col];
        if (lhs < rhs || (lhs == rhs && basis[i] < basis[row])) row = i;
      }
      if (row == SIZE_MAX) throw std::runtime_error("LP unbounded");
      pivot(row, col);
      ++iterations;
      if (iterations > 2000000) throw std::runtime_error("LP iteration limit hit");
    }
    return tab[nrows].back();
  }

  std::vector<T> solution() const {
    std::vector<T> x(nvars, ScalarOps<T>::zero());
    for (std::size_t i = 0; i < nrows; ++i)
      if (basis[i] < nvars) x[basis[i]] = tab[i].back();
    return x;
  }
};

// Outcome of assignment g restricted to one context.
std::size_t restrict_assignment(std::uint64_t g, const std::vector<int>& ctx) {
  std::size_t o = 0;
  for (std::size_t k = 0; k < ctx.size(); ++k) o |= ((g >> ctx[k]) & 1) << k;
  return o;
}

struct LpShape {
  std::size_t nassign = 0;
  std::vector<std::pair<std::size_t, std::size_t>> rows;  // (context, outcome)
};

LpShape lp_shape(const MeasurementScenario& sc, int max_observables) {
  if (sc.observables.size() > std::size_t(max_observables))
    throw std::length_error("too many observables for the assignment LP");
  LpShape s;
  s.nassign = std::size_t(1) << sc.observables.size();
  for (std::size_t c = 0; c < sc.contexts.size(); ++c)
    for (std::size_t o = 0; o < (std::size_t(1) << sc.contexts[c].size()); ++o)
      s.rows.emplace_back(c, o);
  if (s.nassign * s.rows.size() > (std::size_t(1) << 28))
    throw std::length_error("assignment LP too large");
  return s;
}

template <typename T>
std::vector<std::vector<T>> lp_matrix(const MeasurementScenario& sc, const LpShape& shape) {
  std::vector<std::vector<T>> a(shape.rows.size(),
                                std::vector<T>(shape.nassign, ScalarOps<T>::zero()));
  for (std::uint64_t g = 0; g < shape.nassign; ++g) {
    for (std::size_t r = 0; r < shape.rows.size(); ++r) {
      auto [c, o] = shape.rows[r];
      if (restrict_assignment(g, sc.contexts[c]) == o) a[r][g] = ScalarOps<T>::one();
    }
  }
  return a;
}

}  // namespace

NcfResult ncf(const EmpiricalModel& e, int max_observables) {
  e.validate();
  LpShape shape = lp_shape(e.scenario, max_observables);
  auto a = lp_matrix<double>(e.scenario, shape);
  std::vector<double> b(shape.rows.size());
  for (std::size_t r = 0; r < shape.rows.size(); ++r) {
    auto [c, o] = shape.rows[r];
    b[r] = std::max(0.0, e.tables[c][o]);
  }
  std::vector<double> c(shape.nassign, 1.0);

  Simplex<double> lp(a, b, c);
  double value = lp.solve(false);
  auto x = lp.solution();

  // Re-verify feasibility of the witness.
  for (std::size_t r = 0; r < shape.rows.size(); ++r) {
    double sum = 0.0;
    for (std::size_t g = 0; g < shape.nassign; ++g)
      if (a[r][g] > 0.5) sum += x[g];
    if (sum > b[r] + 1e-9) throw std::logic_error("LP witness violates a constraint");
  }

  NcfResult out;
  out.ncf = std::min(1.0, std::max(0.0, value));
  out.cf = 1.0 - out.ncf;
  for (std::uint64_t g = 0; g < shape.nassign; ++g)
    if (x[g] > 1e-12) out.witness.emplace_back(g, x[g]);
  return out;
}

NcfResult ncf_rational(const RationalModel& e, int max_observables) {
  LpShape shape = lp_shape(e.scenario, max_observables);
  auto a = lp_matrix<Fraction>(e.scenario, shape);
  std::vector<Fraction> b(shape.rows.size());
  for (std::size_t r = 0; r < shape.rows.size(); ++r) {
    auto [c, o] = shape.rows[r];
    Fraction v = e.tables[c][o];
    if (v.num < 0) throw std::invalid_argument("negative probability entry");
    b[r] = v;
  }
  std::vector<Fraction> c(shape.nassign, Fraction{1, 1});

  Simplex<Fraction> lp(a, b, c);
  Fraction value = lp.solve(true);
  auto x = lp.solution();
  for (std::size_t r = 0; r < shape.rows.size(); ++r) {
    Fraction sum{0, 1};
    for (std::size_t g = 0; g < shape.nassign; ++g)
      if (a[r][g].num != 0) sum = sum + x[g];
    if (b[r] < sum) throw std::logic_error("LP witness violates a constraint");
  }

  NcfResult out;
  out.exact = true;
  out.ncf_exact = value;
  out.ncf = value.to_double();
  out.cf = 1.0 - out.ncf;
  for (std::uint64_t g = 0; g < shape.nassign; ++g)
    if (x[g].num != 0) out.witness.emplace_back(g, x[g].to_double());
  return out;
}

double prop4_bound(double omega, double ncf_value) {
  if (omega < 0.5 - 1e-12 || omega > 1.0 + 1e-12)
    throw std::domain_error("omega must lie in [1/2, 1]");
  if (ncf_value < -1e-12 || ncf_value > 1.0 + 1e-12)
    throw std::domain_error("ncf must lie in [0, 1]");
  return 1.0 - (1.0 - omega) * ncf_value;
}

MeasurementScenario scenario_from_game(const GameSpec& game) {
  if (game.mode != cssgame::GameMode::Xor)
    throw std::invalid_argument("scenario extraction is defined for XOR games");
  MeasurementScenario sc;
  std::set<quantum::Observable> seen;
  for (std::size_t zi = 0; zi < game.z_count; ++zi)
    for (std::size_t xi = 0; xi < game.x_count; ++xi) {
      auto paulis = quantum::query_paulis(game, xi, zi);
      for (std::size_t q = 0; q < paulis.size(); ++q)
        if (paulis[q] != quantum::Pauli::I) seen.insert({int(q), paulis[q]});
    }
  sc.observables.assign(seen.begin(), seen.end());  // sorted by (site, label)

  auto find_obs = [&](int site, quantum::Pauli p) {
    quantum::Observable key{site, p};
    return int(std::lower_bound(sc.observables.begin(), sc.observables.end(), key) -
               sc.observables.begin());
  };
  for (std::size_t zi = 0; zi < game.z_count; ++zi)
    for (std::size_t xi = 0; xi < game.x_count; ++xi) {
      std::vector<int> ctx;
      auto paulis = quantum::query_paulis(game, xi, zi);
      for (std::size_t q = 0; q < paulis.size(); ++q)
        if (paulis[q] != quantum::Pauli::I) ctx.push_back(find_obs(int(q), paulis[q]));
      sc.contexts.push_back(std::move(ctx));
    }
  return sc;
}

std::vector<SweepPoint> deformation_sweep(const GameSpec& game, double theta_max, int steps) {
  if (steps < 1) throw std::invalid_argument("sweep needs at least one step");
  MeasurementScenario sc = scenario_from_game(game);
  double omega = strategy::omega_exact(game).omega.to_double();
  quantum::StateVector codeword = quantum::css_codeword(game.code);

  std::vector<SweepPoint> out;
  for (int k = 0; k < steps; ++k) {
    double theta = steps == 1 ? 0.0 : theta_max * double(k) / double(steps - 1);
    quantum::StateVector psi = quantum::deformed_state(codeword, theta);
    EmpiricalModel e = quantum::empirical_model(psi, sc);
    SweepPoint pt;
    pt.theta = theta;
    pt.pauli_score = quantum::pauli_strategy_score(psi, game);
    pt.ncf = ncf(e).ncf;
    pt.bound = prop4_bound(omega, pt.ncf);
    out.push_back(pt);
  }
  return out;
}

}  // namespace cssgames::contextuality
