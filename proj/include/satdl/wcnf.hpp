#pragma once

// Partial weighted MaxSAT formulas and the classic DIMACS WCNF text format.
//
// Clauses hold nonzero signed integers: +v means variable v, -v its negation,
// variables are numbered from 1. A formula keeps hard clauses (must hold) and
// weighted soft clauses; the top weight marks hard clauses in WCNF files and
// always equals 1 + (sum of soft weights).

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "satdl/errors.hpp"

namespace satdl {

using Lit = int;
using Clause = std::vector<Lit>;

struct SoftClause {
  Clause clause;
  std::int64_t weight = 1;

  bool operator==(const SoftClause&) const = default;
};

struct WcnfFormula {
  int variable_count = 0;
  std::vector<Clause> hard;
  std::vector<SoftClause> soft;

  std::int64_t soft_weight_sum() const {
    std::int64_t s = 0;
    for (const auto& sc : soft) s += sc.weight;
    return s;
  }

  // Hard-clause marker weight, strictly above any achievable soft cost.
  std::int64_t top_weight() const { return soft_weight_sum() + 1; }

  std::size_t clause_count() const { return hard.size() + soft.size(); }

  // Total number of literal occurrences; the size measure used for the
  // encoding growth checks.
  std::int64_t literal_count() const {
    std::int64_t n = 0;
    for (const auto& c : hard) n += static_cast<std::int64_t>(c.size());
    for (const auto& sc : soft) n += static_cast<std::int64_t>(sc.clause.size());
    return n;
  }

  bool operator==(const WcnfFormula&) const = default;
};

// Sorts by variable, removes duplicate literals. Returns false when the
// clause is a tautology (contains x and -x) and should be dropped.
inline bool normalize_clause(Clause& c) {
  std::sort(c.begin(), c.end(), [](Lit a, Lit b) {
    int va = std::abs(a), vb = std::abs(b);
    return va != vb ? va < vb : a < b;
  });
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] == -c[i - 1]) return false;
  return true;
}

// --- assignment utilities -------------------------------------------------
//
// Assignments are indexed by variable id; index 0 is unused.

inline bool clause_satisfied(const Clause& c, const std::vector<bool>& assignment) {
  for (Lit l : c) {
    int v = std::abs(l);
    bool val = v < static_cast<int>(assignment.size()) && assignment[v];
    if ((l > 0) == val) return true;
  }
  return false;
}

inline bool hard_satisfied(const WcnfFormula& f, const std::vector<bool>& assignment) {
  for (const auto& c : f.hard)
    if (!clause_satisfied(c, assignment)) return false;
  return true;
}

// Sum of the weights of falsified soft clauses.
inline std::int64_t evaluate_cost(const WcnfFormula& f, const std::vector<bool>& assignment) {
  std::int64_t cost = 0;
  for (const auto& sc : f.soft)
    if (!clause_satisfied(sc.clause, assignment)) cost += sc.weight;
  return cost;
}

// --- DIMACS WCNF ------------------------------------------------------------

// Classic format: "p wcnf <vars> <clauses> <top>", then one clause per line,
// weight first (top for hard clauses), literals, terminating "0". Output is
// byte-stable for identical formulas: hard clauses first, then soft, both in
// stored order.
inline void write_wcnf(const WcnfFormula& f, std::ostream& out) {
  const std::int64_t top = f.top_weight();
  out << "p wcnf " << f.variable_count << ' ' << f.clause_count() << ' ' << top << '\n';
  for (const auto& c : f.hard) {
    out << top;
    for (Lit l : c) out << ' ' << l;
    out << " 0\n";
  }
  for (const auto& sc : f.soft) {
    out << sc.weight;
    for (Lit l : sc.clause) out << ' ' << l;
    out << " 0\n";
  }
}

inline std::string write_wcnf_string(const WcnfFormula& f) {
  std::ostringstream os;
  write_wcnf(f, os);
  return os.str();
}

inline WcnfFormula parse_wcnf(std::istream& in) {
  WcnfFormula f;
  std::int64_t top = -1;
  long declared_clauses = -1;
  bool saw_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == 'c') continue;
    std::istringstream ls(line.substr(start));
    if (line[start] == 'p') {
      std::string p, fmt;
      if (!(ls >> p >> fmt >> f.variable_count >> declared_clauses >> top) || fmt != "wcnf")
        throw WcnfParseError("line " + std::to_string(lineno) + ": malformed wcnf header");
      saw_header = true;
      continue;
    }
    if (!saw_header)
      throw WcnfParseError("line " + std::to_string(lineno) + ": clause before wcnf header");
    std::int64_t weight;
    if (!(ls >> weight) || weight <= 0)
      throw WcnfParseError("line " + std::to_string(lineno) + ": missing or non-positive clause weight");
    Clause c;
    Lit l;
    bool terminated = false;
    while (ls >> l) {
      if (l == 0) {
        terminated = true;
        break;
      }
      if (std::abs(l) > f.variable_count)
        throw WcnfParseError("line " + std::to_string(lineno) + ": literal " + std::to_string(l) +
                             " exceeds declared variable count");
      c.push_back(l);
    }
    if (!terminated)
      throw WcnfParseError("line " + std::to_string(lineno) + ": clause not terminated by 0");
    if (weight >= top)
      f.hard.push_back(std::move(c));
    else
      f.soft.push_back(SoftClause{std::move(c), weight});
  }
  if (!saw_header) throw WcnfParseError("no wcnf header found");
  return f;
}

inline WcnfFormula parse_wcnf_string(const std::string& text) {
  std::istringstream is(text);
  return parse_wcnf(is);
}

}  // namespace satdl
