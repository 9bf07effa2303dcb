#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace oracle {

std::vector<int> spins_from_bits(std::uint64_t bits, std::size_t n) {
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i & 1) ? 1 : -1;
  return s;
}

hoim::SpinState to_state(const std::vector<int>& spins) {
  std::vector<hoim::Spin> v(spins.begin(), spins.end());
  return hoim::SpinState(std::move(v));
}

double poly_energy(const std::vector<hoim::Term>& terms, const std::vector<int>& spins) {
  double e = 0.0;
  for (const auto& t : terms) {
    int p = 1;
    for (auto i : t.spins) p *= spins[i];
    e -= t.weight * p;
  }
  return e;
}

std::vector<hoim::Term> random_terms(Rng& rng, std::size_t n, std::size_t m, std::size_t max_order, bool integer) {
  std::uniform_int_distribution<std::size_t> order(1, std::min(max_order, n));
  std::uniform_int_distribution<int> iw(-3, 2);
  std::uniform_real_distribution<double> rw(-2.0, 2.0);
  std::vector<hoim::SpinIndex> pool(n);
  std::vector<hoim::Term> terms;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<hoim::SpinIndex>(i);
    std::shuffle(pool.begin(), pool.end(), rng);
    hoim::Term t;
    t.spins.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(order(rng)));
    if (integer) {
      int w = iw(rng);
      t.weight = w >= 0 ? w + 1 : w;
    } else {
      t.weight = rw(rng);
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

std::vector<int> random_spins(Rng& rng, std::size_t n) {
  std::vector<int> s(n);
  for (auto& v : s) v = (rng() & 1) ? 1 : -1;
  return s;
}

std::size_t count_satisfied(const hoim::CnfFormula& cnf, const std::vector<int>& spins) {
  std::size_t count = 0;
  for (const auto& clause : cnf.clauses) {
    bool taut = false;
    for (auto a : clause)
      for (auto b : clause) taut = taut || a == -b;
    if (taut) continue;
    bool sat = false;
    for (auto l : clause) {
      const bool value = spins[std::abs(l) - 1] > 0;
      sat = sat || (l > 0 ? value : !value);
    }
    count += sat;
  }
  return count;
}

hoim::CnfFormula random_cnf(Rng& rng, std::size_t n, std::size_t m, std::size_t k) {
  hoim::CnfFormula cnf;
  cnf.num_vars = n;
  std::vector<int> vars(n);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t i = 0; i < n; ++i) vars[i] = static_cast<int>(i) + 1;
    std::shuffle(vars.begin(), vars.end(), rng);
    std::vector<hoim::Literal> clause;
    for (std::size_t j = 0; j < k; ++j) clause.push_back((rng() & 1) ? vars[j] : -vars[j]);
    std::sort(clause.begin(), clause.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
    cnf.clauses.push_back(clause);
  }
  return cnf;
}

hoim::WeightedGraph random_graph(Rng& rng, std::size_t n, double p, bool unit_weights) {
  std::bernoulli_distribution edge(p);
  std::uniform_int_distribution<int> w(-2, 2);
  std::vector<hoim::WeightedEdge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!edge(rng)) continue;
      int weight = 1;
      if (!unit_weights) {
        weight = w(rng);
        if (weight == 0) weight = 3;
      }
      edges.push_back({static_cast<hoim::SpinIndex>(u), static_cast<hoim::SpinIndex>(v), double(weight)});
    }
  }
  return hoim::make_graph(n, std::move(edges));
}

double cut_direct(const hoim::WeightedGraph& graph, const std::vector<int>& spins) {
  double cut = 0.0;
  for (const auto& e : graph.edges) {
    if (spins[e.u] != spins[e.v]) cut += e.weight;
  }
  return cut;
}

namespace {

struct Dpll {
  const hoim::CnfFormula& cnf;
  std::vector<std::vector<std::size_t>> occurs;  // clause ids per variable
  std::vector<int> value;                        // 0 unassigned, +1 / -1
  std::vector<std::size_t> trail;

  explicit Dpll(const hoim::CnfFormula& f) : cnf(f), occurs(f.num_vars + 1), value(f.num_vars + 1, 0) {
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
      for (auto l : f.clauses[c]) occurs[std::abs(l)].push_back(c);
    }
  }

  int literal_value(hoim::Literal l) const {
    const int v = value[std::abs(l)];
    return l > 0 ? v : -v;
  }

  // Returns false on conflict.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : cnf.clauses) {
        int open = 0;
        hoim::Literal last = 0;
        bool sat = false;
        for (auto l : clause) {
          const int v = literal_value(l);
          if (v > 0) {
            sat = true;
            break;
          }
          if (v == 0) {
            ++open;
            last = l;
          }
        }
        if (sat) continue;
        if (open == 0) return false;
        if (open == 1) {
          value[std::abs(last)] = last > 0 ? 1 : -1;
          trail.push_back(std::abs(last));
          changed = true;
        }
      }
    }
    return true;
  }

  std::size_t pick() const {
    // Most occurrences in clauses not yet satisfied with the fewest open literals.
    std::vector<double> score(cnf.num_vars + 1, 0.0);
    for (const auto& clause : cnf.clauses) {
      int open = 0;
      bool sat = false;
      for (auto l : clause) {
        const int v = literal_value(l);
        sat = sat || v > 0;
        open += v == 0;
      }
      if (sat) continue;
      for (auto l : clause) {
        if (literal_value(l) == 0) score[std::abs(l)] += 1.0 / (1 << std::min(open, 20));
      }
    }
    std::size_t best = 0;
    for (std::size_t v = 1; v <= cnf.num_vars; ++v) {
      if (value[v] == 0 && (best == 0 || score[v] > score[best])) best = v;
    }
    return best;
  }

  bool solve() {
    if (!propagate()) return false;
    const std::size_t v = pick();
    if (v == 0) return true;
    for (int choice : {1, -1}) {
      const std::size_t mark = trail.size();
      value[v] = choice;
      trail.push_back(v);
      if (solve()) return true;
      while (trail.size() > mark) {
        value[trail.back()] = 0;
        trail.pop_back();
      }
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> dpll(const hoim::CnfFormula& cnf) {
  Dpll solver(cnf);
  if (!solver.solve()) return std::nullopt;
  std::vector<int> model(cnf.num_vars);
  for (std::size_t v = 1; v <= cnf.num_vars; ++v) model[v - 1] = solver.value[v] >= 0 ? 1 : -1;
  return model;
}

hoim::CnfFormula satisfiable_ksat(std::uint64_t seed, std::size_t n, std::size_t m, std::size_t k) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto cnf = random_cnf(rng, n, m, k);
    if (auto model = dpll(cnf)) {
      if (count_satisfied(cnf, *model) != m) throw std::logic_error("dpll model does not satisfy the formula");
      return cnf;
    }
  }
  throw std::runtime_error("no satisfiable instance found");
}

}  // namespace oracle
