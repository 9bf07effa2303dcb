#include "hoim/quadratize.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace hoim {

QuboSystem make_qubo(std::size_t num_spins, std::size_t num_original, std::vector<PairCoupling> pairwise,
                     std::vector<LinearBias> linear) {
  if (num_original > num_spins) throw std::invalid_argument("more original spins than spins");
  std::map<std::pair<SpinIndex, SpinIndex>, double> pairs;
  for (const auto& c : pairwise) {
    if (c.i == c.j) throw std::invalid_argument("pairwise entry on a single spin");
    if (c.i >= num_spins || c.j >= num_spins) throw std::invalid_argument("pairwise entry out of range");
    pairs[{std::min(c.i, c.j), std::max(c.i, c.j)}] += c.q;
  }
  std::map<SpinIndex, double> biases;
  for (const auto& b : linear) {
    if (b.i >= num_spins) throw std::invalid_argument("linear entry out of range");
    biases[b.i] += b.h;
  }
  QuboSystem qubo;
  qubo.num_spins = num_spins;
  qubo.num_original = num_original;
  for (const auto& [key, q] : pairs) {
    if (q != 0.0) qubo.pairwise.push_back({key.first, key.second, q});
  }
  for (const auto& [i, h] : biases) {
    if (h != 0.0) qubo.linear.push_back({i, h});
  }
  return qubo;
}

double qubo_objective(const QuboSystem& qubo, const SpinState& spins) {
  if (spins.size() != qubo.num_spins) throw std::invalid_argument("spin count does not match the QUBO");
  double h = 0.0;
  for (const auto& c : qubo.pairwise) h += c.q * spins[c.i] * spins[c.j];
  for (const auto& b : qubo.linear) h += b.h * spins[b.i];
  return h;
}

QuboSystem quadratize_cnf3(const CnfFormula& cnf) {
  std::vector<PairCoupling> pairs;
  std::vector<LinearBias> linear;
  std::vector<std::string> warnings;
  std::size_t aux = cnf.num_vars;
  for (std::size_t k = 0; k < cnf.clauses.size(); ++k) {
    const auto& clause = cnf.clauses[k];
    if (is_tautology(clause)) {
      warnings.push_back("dropped tautological clause " + std::to_string(k + 1));
      continue;
    }
    if (clause.size() != 3) {
      throw std::invalid_argument("clause " + std::to_string(k + 1) + " has " + std::to_string(clause.size()) +
                                  " literals; only 3-literal clauses can be quadratized");
    }
    const auto a = static_cast<SpinIndex>(aux++);
    SpinIndex v[3];
    double sigma[3];
    for (int i = 0; i < 3; ++i) {
      v[i] = static_cast<SpinIndex>(std::abs(clause[i]) - 1);
      sigma[i] = clause[i] > 0 ? 1.0 : -1.0;
    }
    for (int i = 0; i < 3; ++i) {
      linear.push_back({v[i], sigma[i]});
      pairs.push_back({a, v[i], sigma[i]});
      for (int j = i + 1; j < 3; ++j) pairs.push_back({v[i], v[j], -sigma[i] * sigma[j]});
    }
    linear.push_back({a, -1.0});
  }
  QuboSystem qubo = make_qubo(aux, cnf.num_vars, std::move(pairs), std::move(linear));
  qubo.warnings = std::move(warnings);
  return qubo;
}

QuboSystem quadratize_3r3x(const PlantedInstance& instance) {
  const std::size_t n = instance.num_vars();
  std::vector<PairCoupling> pairs;
  std::vector<LinearBias> linear;
  for (std::size_t k = 0; k < instance.equations.size(); ++k) {
    const auto& eq = instance.equations[k];
    const auto a = static_cast<SpinIndex>(n + k);
    const double sigma[3] = {instance.rhs_bits[k] ? -1.0 : 1.0, 1.0, 1.0};
    for (int i = 0; i < 3; ++i) {
      linear.push_back({eq[i], sigma[i]});
      pairs.push_back({a, eq[i], 2.0 * sigma[i]});
      for (int j = i + 1; j < 3; ++j) pairs.push_back({eq[i], eq[j], -sigma[i] * sigma[j]});
    }
    linear.push_back({a, -2.0});
  }
  return make_qubo(n + instance.equations.size(), n, std::move(pairs), std::move(linear));
}

double cnf3_qubo_optimum(std::size_t satisfied, std::size_t clauses) {
  return 4.0 * static_cast<double>(satisfied) - 2.0 * static_cast<double>(clauses);
}

double xorsat_qubo_optimum(std::size_t satisfied, std::size_t equations) {
  return 2.0 * static_cast<double>(equations) + 2.0 * static_cast<double>(satisfied);
}

std::string qubo_to_json(const QuboSystem& qubo) {
  nlohmann::json doc;
  doc["num_spins"] = qubo.num_spins;
  doc["num_original"] = qubo.num_original;
  doc["linear"] = nlohmann::json::array();
  for (const auto& b : qubo.linear) doc["linear"].push_back({b.i, b.h});
  doc["pairwise"] = nlohmann::json::array();
  for (const auto& c : qubo.pairwise) doc["pairwise"].push_back({c.i, c.j, c.q});
  return doc.dump(1) + "\n";
}

QuboSystem qubo_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    const auto n = doc.at("num_spins").get<std::size_t>();
    const auto original = doc.value("num_original", n);
    std::vector<LinearBias> linear;
    for (const auto& e : doc.at("linear")) linear.push_back({e.at(0).get<SpinIndex>(), e.at(1).get<double>()});
    std::vector<PairCoupling> pairs;
    for (const auto& e : doc.at("pairwise")) {
      pairs.push_back({e.at(0).get<SpinIndex>(), e.at(1).get<SpinIndex>(), e.at(2).get<double>()});
    }
    return make_qubo(n, original, std::move(pairs), std::move(linear));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad QUBO JSON: ") + e.what());
  }
}

}  // namespace hoim
