#pragma once

// Exact partial weighted MaxSAT solving.
//
// The builtin strategy is a linear SAT-to-UNSAT descent: every soft clause
// gets a fresh relaxation literal, a weighted sequential counter tracks the
// relaxed weight sum, and the current best cost is tightened through
// assumption literals on the counter outputs until the bound becomes
// unsatisfiable. The external path writes a WCNF file, runs a child process
// and parses MaxSAT-evaluation style output, verifying the reported model
// before trusting it.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "satdl/errors.hpp"
#include "satdl/sat.hpp"
#include "satdl/wcnf.hpp"

namespace satdl {

enum class SolveStatus { optimum, unsatisfiable_hard, timeout };

struct OptResult {
  SolveStatus status = SolveStatus::unsatisfiable_hard;
  // Sum of falsified soft weights. For status == timeout this is the best
  // known upper bound, or -1 when no model was found at all.
  std::int64_t cost = -1;
  // Truth value per variable id (index 0 unused); empty when no model exists.
  std::vector<bool> assignment;
};

inline OptResult solve_builtin(const WcnfFormula& f,
                               std::chrono::milliseconds budget = std::chrono::milliseconds{0}) {
  CdclSolver sat;
  sat.ensure_vars(f.variable_count);
  if (budget.count() > 0)
    sat.set_deadline(std::chrono::steady_clock::now() + budget);

  for (const auto& c : f.hard) {
    if (!sat.add_clause(c)) return OptResult{SolveStatus::unsatisfiable_hard, -1, {}};
  }

  auto first = sat.solve();
  if (first == CdclSolver::Result::unsat) return OptResult{SolveStatus::unsatisfiable_hard, -1, {}};
  if (first == CdclSolver::Result::unknown) return OptResult{SolveStatus::timeout, -1, {}};

  OptResult res;
  res.assignment = sat.model(f.variable_count);
  res.cost = evaluate_cost(f, res.assignment);
  res.status = SolveStatus::optimum;
  if (f.soft.empty() || res.cost == 0) return res;

  // Relax softs: clause_k or r_k. An empty soft clause is falsified no
  // matter what, so its weight is a constant floor on the cost.
  std::int64_t base_cost = 0;
  std::vector<std::pair<Lit, std::int64_t>> relaxers;
  for (const auto& sc : f.soft) {
    if (sc.clause.empty()) {
      base_cost += sc.weight;
      continue;
    }
    Lit r = sat.new_var();
    Clause relaxed = sc.clause;
    relaxed.push_back(r);
    sat.add_clause(relaxed);
    relaxers.emplace_back(r, sc.weight);
  }
  if (res.cost == base_cost) return res;

  // Weighted sequential counter, one-sided: whenever the relaxed weight sum
  // reaches b, output[b] is forced true. Each layer carries ordering clauses
  // (sum >= b implies sum >= b-1) so clamped carries still cover every level
  // below them. Width only needs to reach the first model's relaxed cost,
  // since bounds move strictly downward from there.
  const std::int64_t width = res.cost - base_cost;
  std::vector<Lit> prev(static_cast<std::size_t>(width) + 1, 0);  // 0 = constant false
  for (const auto& [r, w] : relaxers) {
    std::vector<Lit> cur(static_cast<std::size_t>(width) + 1, 0);
    for (std::int64_t b = 1; b <= width; ++b) cur[b] = sat.new_var();
    for (std::int64_t b = 2; b <= width; ++b) sat.add_clause({-cur[b], cur[b - 1]});
    for (std::int64_t b = 1; b <= width; ++b)
      if (prev[b]) sat.add_clause({-prev[b], cur[b]});
    sat.add_clause({-r, cur[std::min(w, width)]});
    for (std::int64_t b = 1; b <= width; ++b)
      if (prev[b]) sat.add_clause({-prev[b], -r, cur[std::min(b + w, width)]});
    prev = std::move(cur);
  }

  while (res.cost > base_cost) {
    Lit bound = prev[res.cost - base_cost];
    auto ans = sat.solve({-bound});
    if (ans == CdclSolver::Result::unsat) break;  // res.cost is optimal
    if (ans == CdclSolver::Result::unknown) {
      res.status = SolveStatus::timeout;
      break;
    }
    auto better = sat.model(f.variable_count);
    std::int64_t cost = evaluate_cost(f, better);
    if (cost >= res.cost)
      throw Error("internal: linear descent failed to improve the incumbent");
    res.cost = cost;
    res.assignment = std::move(better);
  }
  return res;
}

// --- external solver bridge -------------------------------------------------

namespace detail {

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

inline std::string run_and_capture(const std::string& cmdline) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmdline.c_str(), "r"), pclose);
  if (!pipe) throw ExternalLaunchError("failed to launch: " + cmdline);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    char tmpl[] = "/tmp/satdl-XXXXXX";
    int fd = mkstemp(tmpl);
    if (fd < 0) throw ExternalLaunchError("cannot create temporary WCNF file");
    path = tmpl;
    FILE* fp = fdopen(fd, "w");
    fwrite(contents.data(), 1, contents.size(), fp);
    fclose(fp);
  }
  ~TempFile() { std::remove(path.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
};

}  // namespace detail

// Parses MaxSAT-evaluation style solver output ("s ...", "o ...", "v ..."
// lines) against a formula. Exposed separately so the parsing and
// verification logic can be tested without child processes.
inline OptResult parse_external_output(const WcnfFormula& f, const std::string& text) {
  std::string status;
  std::int64_t reported_cost = -1;
  bool saw_cost = false;
  std::vector<std::string> value_tokens;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("s ", 0) == 0) {
      status = line.substr(2);
    } else if (line.rfind("o ", 0) == 0) {
      try {
        reported_cost = std::stoll(line.substr(2));  // last o-line wins
        saw_cost = true;
      } catch (const std::exception&) {
        throw ExternalOutputError("unparsable cost line: " + line);
      }
    } else if (line.rfind("v", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
      std::istringstream ls(line.substr(1));
      std::string tok;
      while (ls >> tok) value_tokens.push_back(tok);
    }
  }

  if (status.find("UNSATISFIABLE") != std::string::npos)
    return OptResult{SolveStatus::unsatisfiable_hard, -1, {}};
  if (status.find("OPTIMUM FOUND") == std::string::npos)
    throw ExternalOutputError(status.empty() ? "no status line in solver output"
                                             : "unexpected solver status: " + status);
  if (!saw_cost) throw ExternalOutputError("optimum reported without a cost line");
  if (value_tokens.empty()) throw ExternalOutputError("optimum reported without a value line");

  // Two dialects: signed DIMACS literals, or the newer 0/1 string where the
  // k-th character is the value of variable k. Any token with a sign or a
  // digit beyond 1 means signed; otherwise a long token (or enough bits to
  // cover the variables) means the 0/1 string form.
  bool all_binary_tokens = true;
  bool has_long_token = false;
  std::size_t total_bits = 0;
  for (const auto& t : value_tokens) {
    if (t.find_first_not_of("01") != std::string::npos) all_binary_tokens = false;
    if (t.size() > 1) has_long_token = true;
    total_bits += t.size();
  }
  const bool binary_dialect =
      all_binary_tokens &&
      (has_long_token || total_bits >= static_cast<std::size_t>(f.variable_count));

  std::vector<bool> assignment(static_cast<std::size_t>(f.variable_count) + 1, false);
  if (binary_dialect) {
    std::string bits;
    for (const auto& t : value_tokens) bits += t;
    if (bits.find_first_not_of("01") != std::string::npos)
      throw ExternalOutputError("mixed value-line dialects in solver output");
    for (std::size_t k = 0; k < bits.size() && k < static_cast<std::size_t>(f.variable_count); ++k)
      assignment[k + 1] = bits[k] == '1';
  } else {
    for (const auto& t : value_tokens) {
      long l;
      try {
        l = std::stol(t);
      } catch (const std::exception&) {
        throw ExternalOutputError("unparsable value token: " + t);
      }
      if (l == 0) continue;
      long v = std::labs(l);
      if (v > f.variable_count) continue;  // solver-internal auxiliaries
      assignment[static_cast<std::size_t>(v)] = l > 0;
    }
  }

  if (!hard_satisfied(f, assignment))
    throw ExternalVerificationError("solver model violates a hard clause");
  std::int64_t actual = evaluate_cost(f, assignment);
  if (actual != reported_cost)
    throw ExternalVerificationError("solver reported cost " + std::to_string(reported_cost) +
                                    " but its model costs " + std::to_string(actual));
  return OptResult{SolveStatus::optimum, actual, std::move(assignment)};
}

// Runs `command` with the WCNF path appended as the final argument. The exit
// status is ignored; the printed stream decides the outcome.
inline OptResult solve_external(const WcnfFormula& f, const std::vector<std::string>& command) {
  if (command.empty()) throw ExternalLaunchError("empty external solver command");
  detail::TempFile tmp(write_wcnf_string(f));
  std::string cmdline;
  for (const auto& a : command) {
    if (!cmdline.empty()) cmdline += ' ';
    cmdline += detail::shell_quote(a);
  }
  cmdline += ' ' + detail::shell_quote(tmp.path) + " 2>/dev/null";
  std::string out = detail::run_and_capture(cmdline);
  if (out.empty())
    throw ExternalLaunchError("external solver produced no output (crashed or not found): " +
                              cmdline);
  return parse_external_output(f, out);
}

// --- solver handles ----------------------------------------------------------

// Behavioral contract shared by the builtin and external routes: one call,
// one formula, an exact answer. Instances are single-thread confined; use
// one per concurrent job.
class MaxSatSolver {
 public:
  virtual ~MaxSatSolver() = default;
  virtual OptResult solve(const WcnfFormula& f) const = 0;
};

class BuiltinSolver final : public MaxSatSolver {
 public:
  explicit BuiltinSolver(std::chrono::milliseconds budget = std::chrono::milliseconds{0})
      : budget_(budget) {}
  OptResult solve(const WcnfFormula& f) const override { return solve_builtin(f, budget_); }

 private:
  std::chrono::milliseconds budget_;
};

class ExternalSolver final : public MaxSatSolver {
 public:
  explicit ExternalSolver(std::vector<std::string> command) : command_(std::move(command)) {}
  OptResult solve(const WcnfFormula& f) const override { return solve_external(f, command_); }

 private:
  std::vector<std::string> command_;
};

}  // namespace satdl
