#include "hoim/cnf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hoim {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void finish_clause(CnfFormula& cnf, std::vector<Literal>& clause, std::size_t line) {
  if (clause.empty()) throw std::invalid_argument("empty clause at line " + std::to_string(line));
  std::sort(clause.begin(), clause.end(), [](Literal a, Literal b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  cnf.clauses.push_back(std::move(clause));
  clause.clear();
}

}  // namespace

bool is_tautology(const std::vector<Literal>& clause) {
  for (std::size_t a = 0; a < clause.size(); ++a) {
    for (std::size_t b = a + 1; b < clause.size(); ++b) {
      if (clause[a] == -clause[b]) return true;
    }
  }
  return false;
}

CnfFormula parse_dimacs_cnf(std::string_view text) {
  CnfFormula cnf;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<Literal> clause;
  std::size_t line_no = 0;

  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const char lead = line[first];
    if (lead == 'c') continue;
    if (lead == '%') break;
    if (lead == 'p') {
      if (have_header) throw std::invalid_argument("second header at line " + std::to_string(line_no));
      std::istringstream header(line.substr(first));
      std::string p, format;
      long long vars = -1, count = -1;
      if (!(header >> p >> format >> vars >> count) || format != "cnf" || vars < 0 || count < 0) {
        throw std::invalid_argument("malformed header: " + line);
      }
      std::string extra;
      if (header >> extra) throw std::invalid_argument("malformed header: " + line);
      cnf.num_vars = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(count);
      have_header = true;
      continue;
    }
    if (!have_header) throw std::invalid_argument("clause before header at line " + std::to_string(line_no));

    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      char* end = nullptr;
      const long long value = std::strtoll(token.c_str(), &end, 10);
      if (end == token.c_str() || *end != '\0') {
        throw std::invalid_argument("bad literal '" + token + "' at line " + std::to_string(line_no));
      }
      if (value == 0) {
        finish_clause(cnf, clause, line_no);
        continue;
      }
      if (static_cast<std::size_t>(std::llabs(value)) > cnf.num_vars) {
        throw std::invalid_argument("literal " + token + " out of range at line " + std::to_string(line_no));
      }
      clause.push_back(static_cast<Literal>(value));
    }
  }
  if (!have_header) throw std::invalid_argument("missing 'p cnf' header");
  if (!clause.empty()) {
    cnf.warnings.push_back("last clause is not terminated by 0");
    finish_clause(cnf, clause, line_no);
  }
  if (cnf.clauses.size() != declared_clauses) {
    cnf.warnings.push_back("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                           std::to_string(cnf.clauses.size()));
  }
  for (std::size_t k = 0; k < cnf.clauses.size(); ++k) {
    if (is_tautology(cnf.clauses[k])) cnf.warnings.push_back("clause " + std::to_string(k + 1) + " is a tautology");
  }
  return cnf;
}

CnfFormula read_dimacs_cnf(const std::string& path) { return parse_dimacs_cnf(read_file(path)); }

std::string write_dimacs_cnf(const CnfFormula& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (Literal l : clause) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

std::optional<std::size_t> SatEncoding::uniform_length() const {
  if (length_histogram.size() != 1) return std::nullopt;
  return length_histogram.begin()->first;
}

double SatEncoding::energy_at(std::size_t satisfied) const {
  if (satisfied > num_clauses) throw std::invalid_argument("more satisfied clauses than clauses");
  if (satisfied == num_clauses) return -static_cast<double>(num_clauses);
  const auto p = uniform_length();
  if (!p) throw std::invalid_argument("partial SAT targets need a uniform clause length");
  const double full = std::ldexp(1.0, static_cast<int>(*p));
  return (full - 1.0) * static_cast<double>(num_clauses) - full * static_cast<double>(satisfied);
}

std::size_t SatEncoding::satisfied_at(double energy) const {
  const auto p = uniform_length();
  if (!p) throw std::invalid_argument("energy decoding needs a uniform clause length");
  const double full = std::ldexp(1.0, static_cast<int>(*p));
  return static_cast<std::size_t>(std::llround(((full - 1.0) * static_cast<double>(num_clauses) - energy) / full));
}

SatEncoding cnf_to_ising(const CnfFormula& cnf, std::size_t max_clause_length) {
  SatEncoding enc;
  enc.num_vars = cnf.num_vars;
  std::vector<Term> terms;
  for (std::size_t k = 0; k < cnf.clauses.size(); ++k) {
    const auto& clause = cnf.clauses[k];
    if (is_tautology(clause)) {
      enc.warnings.push_back("dropped tautological clause " + std::to_string(k + 1));
      continue;
    }
    const std::size_t p = clause.size();
    if (p > max_clause_length) {
      throw std::invalid_argument("clause " + std::to_string(k + 1) + " has " + std::to_string(p) +
                                  " literals, limit is " + std::to_string(max_clause_length));
    }
    ++enc.num_clauses;
    ++enc.length_histogram[p];
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << p); ++mask) {
      Term term;
      int sign = 1;
      for (std::size_t i = 0; i < p; ++i) {
        if (!(mask >> i & 1)) continue;
        term.spins.push_back(static_cast<SpinIndex>(std::abs(clause[i]) - 1));
        if (clause[i] < 0) sign = -sign;
      }
      if (term.spins.size() % 2 == 0) sign = -sign;
      term.weight = sign;
      terms.push_back(std::move(term));
    }
  }
  if (cnf.num_vars > 0) enc.system = build_clause_system(terms, cnf.num_vars);
  return enc;
}

std::size_t satisfied_count(const CnfFormula& cnf, const SpinState& spins) {
  if (spins.size() != cnf.num_vars) throw std::invalid_argument("spin count does not match the formula");
  std::size_t count = 0;
  for (const auto& clause : cnf.clauses) {
    if (is_tautology(clause)) continue;
    for (Literal l : clause) {
      const Spin s = spins[static_cast<std::size_t>(std::abs(l) - 1)];
      if ((l > 0) == (s > 0)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

std::size_t countable_clauses(const CnfFormula& cnf) {
  return static_cast<std::size_t>(std::count_if(cnf.clauses.begin(), cnf.clauses.end(),
                                                [](const auto& c) { return !is_tautology(c); }));
}

CnfFormula random_ksat(std::size_t num_vars, std::size_t num_clauses, std::size_t k, NoiseSource& noise) {
  if (k == 0 || k > num_vars) throw std::invalid_argument("clause length must be in [1, num_vars]");
  CnfFormula cnf;
  cnf.num_vars = num_vars;
  std::vector<Literal> clause;
  for (std::size_t m = 0; m < num_clauses; ++m) {
    clause.clear();
    while (clause.size() < k) {
      const auto v = static_cast<Literal>(noise.below(num_vars) + 1);
      if (std::any_of(clause.begin(), clause.end(), [&](Literal l) { return std::abs(l) == v; })) continue;
      clause.push_back((noise.next() >> 63) ? v : -v);
    }
    std::sort(clause.begin(), clause.end(), [](Literal a, Literal b) { return std::abs(a) < std::abs(b); });
    cnf.clauses.push_back(clause);
  }
  return cnf;
}

}  // namespace hoim
