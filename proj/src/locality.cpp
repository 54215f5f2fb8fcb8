#include "rgb/locality.hpp"

#include <algorithm>
#include <set>

namespace rgb {

namespace {

StrategyTable routing_box(int k, int (*pick_x)(int, int), int (*pick_y)(int, int)) {
  if (k < 1) throw std::invalid_argument("box alphabet size must be >= 1");
  return StrategyTable::from_function(BoxShape::uniform(k), [&](int a, int b, int x, int y) {
    return (x == pick_x(a, b) && y == pick_y(a, b)) ? 1 : 0;
  });
}

int first(int a, int) { return a; }
int second(int, int b) { return b; }

}  // namespace

StrategyTable id_box(int k) { return routing_box(k, first, second); }
StrategyTable r_sig_box(int k) { return routing_box(k, first, first); }
StrategyTable l_sig_box(int k) { return routing_box(k, second, second); }
StrategyTable sig_box(int k) { return routing_box(k, second, first); }

StrategyTable pr_box() {
  return StrategyTable::from_function(BoxShape::uniform(2), [](int a, int b, int x, int y) {
    return ((x ^ y) == (a & b)) ? Rat(1, 2) : Rat(0);
  });
}

// ---------------------------------------------------------------------------
// No-signalling constraints on the winning family.

void LinearSystem::validate() const {
  for (const auto* rows : {&equations, &inequalities})
    for (const auto& r : *rows)
      if (r.coeffs.size() != variables.size()) {
        throw std::invalid_argument("row '" + r.label + "' has " + std::to_string(r.coeffs.size()) + " coefficients");
      }
}

namespace {

constexpr std::size_t kNumVars = 15;

std::size_t var_p(int u) { return static_cast<std::size_t>(u); }

std::size_t var_pair(int u, int v, bool q) {
  const auto& pairs = ordered_pairs();
  const auto it = std::find(pairs.begin(), pairs.end(), std::pair<int, int>{mod3(u), mod3(v)});
  return (q ? 9 : 3) + static_cast<std::size_t>(it - pairs.begin());
}

std::string name(std::size_t var) { return WinningFamilyParams::variable_names()[var]; }

LinearRow row(std::initializer_list<std::pair<std::size_t, long>> terms, long constant, std::string label) {
  LinearRow r{std::vector<Rat>(kNumVars, Rat(0)), Rat(constant), std::move(label)};
  for (auto [var, c] : terms) r.coeffs[var] += Rat(c);
  return r;
}

}  // namespace

LinearSystem build_ns_constraints() {
  LinearSystem sys;
  const auto& names = WinningFamilyParams::variable_names();
  sys.variables.assign(names.begin(), names.end());

  for (int u = 0; u < 3; ++u) {
    const std::size_t pu = var_p(u);
    const std::size_t p_next = var_pair(u, u + 1, false);
    const std::size_t p_prev = var_pair(u, u - 1, false);
    // Alice: P(x=u+1|a=u,b) = p_u = 1 - p_{u,u+1} = p_{u,u-1}.
    sys.equations.push_back(row({{pu, 1}, {p_next, 1}}, -1, name(pu) + " = 1 - " + name(p_next)));
    sys.equations.push_back(row({{pu, 1}, {p_prev, -1}}, 0, name(pu) + " = " + name(p_prev)));
  }
  for (int u = 0; u < 3; ++u) {
    const std::size_t pu = var_p(u);
    const std::size_t q_from_next = var_pair(u + 1, u, true);
    const std::size_t q_from_prev = var_pair(u - 1, u, true);
    // Bob: P(y=u+1|a,b=u) = 1 - p_u = 1 - q_{u+1,u} = q_{u-1,u}.
    sys.equations.push_back(row({{pu, -1}, {q_from_next, 1}}, 0, "1 - " + name(pu) + " = 1 - " + name(q_from_next)));
    sys.equations.push_back(row({{pu, -1}, {q_from_prev, -1}}, 1, "1 - " + name(pu) + " = " + name(q_from_prev)));
  }

  for (std::size_t v = 0; v < kNumVars; ++v) {
    sys.inequalities.push_back(row({{v, 1}}, 0, name(v) + " >= 0"));
    sys.inequalities.push_back(row({{v, -1}}, 1, name(v) + " <= 1"));
  }
  for (auto [u, v] : ordered_pairs()) {
    const std::size_t pv = var_pair(u, v, false);
    const std::size_t qv = var_pair(u, v, true);
    sys.inequalities.push_back(row({{pv, -1}, {qv, -1}}, 1, "P(" + std::to_string(v) + "," + std::to_string(u) + "|" +
                                                                std::to_string(u) + "," + std::to_string(v) +
                                                                ") = 1 - " + name(pv) + " - " + name(qv) + " >= 0"));
  }
  sys.validate();
  return sys;
}

std::vector<int> reduce_row_echelon(std::vector<std::vector<Rat>>& m, std::size_t num_vars) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < num_vars && r < m.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.size() && m[pivot][c] == Rat(0)) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[r], m[pivot]);
    const Rat lead = m[r][c];
    for (auto& e : m[r]) e /= lead;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == Rat(0)) continue;
      const Rat f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

namespace {

// Solution set of the equations as affine maps of the free variables:
// value(var) = offset[var] + sum_f basis[var][f] * free_f.
struct AffineSolution {
  std::vector<std::size_t> free_vars;
  std::vector<Rat> offset;
  std::vector<std::vector<Rat>> basis;
};

AffineSolution eliminate(const std::vector<LinearRow>& equations, std::size_t n, std::size_t* rank) {
  // Augmented rows [coeffs | -constant] for coeffs . v = -constant.
  std::vector<std::vector<Rat>> m;
  for (const auto& e : equations) {
    auto r = e.coeffs;
    r.push_back(-e.constant);
    m.push_back(std::move(r));
  }
  const auto pivots = reduce_row_echelon(m, n);
  for (std::size_t i = pivots.size(); i < m.size(); ++i) {
    if (m[i][n] != Rat(0)) throw std::logic_error("no-signalling system is inconsistent");
  }
  *rank = pivots.size();

  AffineSolution sol;
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  for (std::size_t v = 0; v < n; ++v)
    if (!is_pivot[v]) sol.free_vars.push_back(v);

  const std::size_t k = sol.free_vars.size();
  sol.offset.assign(n, Rat(0));
  sol.basis.assign(n, std::vector<Rat>(k, Rat(0)));
  for (std::size_t f = 0; f < k; ++f) sol.basis[sol.free_vars[f]][f] = Rat(1);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const auto pv = static_cast<std::size_t>(pivots[i]);
    sol.offset[pv] = m[i][n];
    for (std::size_t f = 0; f < k; ++f) sol.basis[pv][f] = -m[i][sol.free_vars[f]];
  }
  return sol;
}

// Inequality row restricted to the solution set: [coeff per free var..., constant].
std::vector<Rat> restrict_row(const LinearRow& r, const AffineSolution& sol) {
  const std::size_t k = sol.free_vars.size();
  std::vector<Rat> out(k + 1, Rat(0));
  out[k] = r.constant;
  for (std::size_t v = 0; v < r.coeffs.size(); ++v) {
    if (r.coeffs[v] == Rat(0)) continue;
    out[k] += r.coeffs[v] * sol.offset[v];
    for (std::size_t f = 0; f < k; ++f) out[f] += r.coeffs[v] * sol.basis[v][f];
  }
  return out;
}

bool all_zero(const std::vector<Rat>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == Rat(0); });
}

}  // namespace

NsSolveTrace solve_ns_unique_traced() {
  const LinearSystem sys = build_ns_constraints();
  const std::size_t n = sys.variables.size();
  std::vector<LinearRow> equations = sys.equations;

  NsSolveTrace trace;
  std::size_t rank = 0;
  AffineSolution sol = eliminate(equations, n, &rank);
  trace.rank_after_equalities = rank;
  for (auto v : sol.free_vars) trace.free_after_equalities.push_back(sys.variables[v]);

  std::set<std::size_t> promoted;
  for (;;) {
    std::vector<std::vector<Rat>> restricted;
    for (const auto& ineq : sys.inequalities) {
      auto r = restrict_row(ineq, sol);
      const bool constant_only = std::all_of(r.begin(), r.end() - 1, [](const Rat& x) { return x == Rat(0); });
      if (constant_only && r.back() < Rat(0)) {
        throw std::logic_error("no-signalling system is infeasible at '" + ineq.label + "'");
      }
      restricted.push_back(std::move(r));
    }

    bool changed = false;
    for (std::size_t i = 0; i < restricted.size(); ++i) {
      if (promoted.count(i) || all_zero(restricted[i])) continue;
      for (std::size_t j = i + 1; j < restricted.size(); ++j) {
        std::vector<Rat> sum(restricted[i].size(), Rat(0));
        for (std::size_t t = 0; t < sum.size(); ++t) sum[t] = restricted[i][t] + restricted[j][t];
        if (!all_zero(sum)) continue;
        // g >= 0 and -g >= 0 on the solution set, so g = 0.
        for (std::size_t idx : {i, j}) {
          if (promoted.insert(idx).second) {
            equations.push_back(sys.inequalities[idx]);
            trace.forced_zero.push_back(sys.inequalities[idx].label);
          }
        }
        changed = true;
      }
    }
    if (!changed) break;
    sol = eliminate(equations, n, &rank);
  }

  if (!sol.free_vars.empty()) {
    std::string names;
    for (auto v : sol.free_vars) names += " " + sys.variables[v];
    throw std::logic_error("no-signalling solution is not unique; free:" + names);
  }
  for (const auto& ineq : sys.inequalities) {
    if (restrict_row(ineq, sol).back() < Rat(0)) throw std::logic_error("unique point violates '" + ineq.label + "'");
  }
  trace.params = WinningFamilyParams::from_vector(sol.offset);
  trace.params.validate();
  return trace;
}

WinningFamilyParams solve_ns_unique() { return solve_ns_unique_traced().params; }

}  // namespace rgb
