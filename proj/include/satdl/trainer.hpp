#pragma once

// Training orchestration.
//
// Perfect training solves the encoding at a growing node budget until it
// becomes satisfiable; the first satisfiable budget already yields the
// global minimum because any smaller list embeds into a larger budget
// through unused nodes. Sparse training needs a single solve at a sound
// bound: a list of n nodes costs at least n*Lambda while the all-default
// baseline costs at most M, so nodes beyond ceil(M/Lambda)+1 can never pay
// off. Separated training builds one-vs-rest segments per class, in a fixed
// permutation or greedily by per-class cost.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "satdl/dataset.hpp"
#include "satdl/encode.hpp"
#include "satdl/errors.hpp"
#include "satdl/maxsat.hpp"
#include "satdl/metrics.hpp"
#include "satdl/model.hpp"

namespace satdl {

struct NSchedule {
  int initial_n = 3;
  int step = 5;
  int max_n = 60;

  static NSchedule defaults(int class_count) { return NSchedule{class_count + 1, 5, 60}; }
};

enum class OrderingKind {
  integrated,  // one solve over all classes
  count_asc,
  count_desc,
  acc_asc,
  acc_desc,
  cost_asc,
  cost_desc,
  greedy,
  explicit_order,
};

struct OrderingStrategy {
  OrderingKind kind = OrderingKind::integrated;
  std::vector<int> permutation;  // for explicit_order
};

struct ClassReport {
  int class_id = 0;
  Rational accuracy{1};           // 1 - misclassified / class instances
  std::int64_t cost = 0;          // used nodes + ceil(misclassified / Lambda)
  std::int64_t used_nodes = 0;
  std::int64_t misclassified = 0;
};

struct SeparatedOptions {
  EncodeMode mode = EncodeMode::perfect;
  std::optional<SparseConfig> sparse;
  NSchedule schedule;
};

namespace detail {

inline std::vector<int> present_classes(const BinDataset& ds) {
  auto hist = ds.class_histogram();
  std::vector<int> out;
  for (std::size_t c = 0; c < hist.size(); ++c)
    if (hist[c] > 0) out.push_back(static_cast<int>(c));
  return out;
}

inline bool all_nodes_unused(const std::vector<bool>& assignment, const VariableLayout& lay) {
  for (int j = 1; j <= lay.nodes; ++j)
    if (!assignment[static_cast<std::size_t>(lay.u(j))]) return false;
  return true;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace detail

// --- perfect training ------------------------------------------------------------

// Returns a minimum-literal-size perfect decision list. The budget schedule
// only affects running time, never the result, as long as max_n is not hit.
inline DecisionList train_perfect(const BinDataset& ds, const NSchedule& schedule,
                                  const MaxSatSolver& solver) {
  auto conflicts = check_consistency(ds);
  if (!conflicts.empty())
    throw InconsistentDataError("training data has label-inconsistent duplicates; "
                                "no perfect list exists for any node budget");
  int n = std::max(2, schedule.initial_n);
  for (;; n += schedule.step) {
    if (n > schedule.max_n)
      throw ResourceLimitError("node budget schedule exhausted without a perfect model (last N=" +
                                   std::to_string(std::min(n, schedule.max_n)) + ")",
                               std::min(n, schedule.max_n));
    auto [formula, lay] = encode_perfect(ds, n);
    OptResult res = solver.solve(formula);
    if (res.status == SolveStatus::timeout)
      throw SolveTimeoutError("solver budget exceeded at N=" + std::to_string(n));
    if (res.status == SolveStatus::unsatisfiable_hard) continue;
    return decode(res.assignment, lay, ds);
  }
}

// --- sparse training --------------------------------------------------------------

struct SparseResult {
  DecisionList list;         // may have zero rules when the empty list is optimal
  std::int64_t cost = 0;     // solver cost: errors + Lambda * used nodes
  std::int64_t offset = 0;   // the constant N * Lambda term, reported separately
  int encoded_nodes = 0;
  bool optimal = true;
};

inline SparseResult train_sparse(const BinDataset& ds, const SparseConfig& cfg,
                                 std::optional<int> n_override, const MaxSatSolver& solver) {
  const auto m = static_cast<std::int64_t>(ds.size());
  int n = n_override ? *n_override
                     : static_cast<int>(detail::ceil_div(m, cfg.big_lambda)) + 1;
  auto [formula, lay] = encode_sparse(ds, n, cfg);
  OptResult res = solver.solve(formula);
  if (res.status == SolveStatus::unsatisfiable_hard)
    throw EncodeError("internal: sparse encoding should always be satisfiable");
  if (res.status == SolveStatus::timeout && res.cost < 0)
    throw SolveTimeoutError("solver budget exceeded before any sparse model was found");

  SparseResult out;
  out.cost = res.cost;
  out.offset = cfg.big_lambda * n;
  out.encoded_nodes = n;
  out.optimal = res.status == SolveStatus::optimum;
  out.list.feature_count = ds.feature_count;
  out.list.class_count = ds.class_count;
  out.list.feature_names = ds.feature_names;
  out.list.class_names = ds.class_names;

  if (!detail::all_nodes_unused(res.assignment, lay)) {
    out.list = decode(res.assignment, lay, ds);
    return out;
  }
  // The all-unused model ties with some one-rule list whenever a class
  // reaches Lambda instances; prefer a decodable list when one matches the
  // optimum, otherwise the empty list genuinely wins and is returned bare.
  WcnfFormula pinned = formula;
  pinned.hard.push_back({-lay.u(1)});
  OptResult alt = solver.solve(pinned);
  if (alt.status == SolveStatus::optimum && alt.cost == res.cost)
    out.list = decode(alt.assignment, lay, ds);
  return out;
}

// --- separated (per-class) training -------------------------------------------------

namespace detail {

struct Segment {
  std::vector<Rule> rules;  // consequents already remapped to the target class
  std::int64_t used_nodes = 0;
  std::int64_t misclassified = 0;  // target instances left uncovered (sparse only)
  std::int64_t positives = 0;
};

// One-vs-rest solve for `target` over the instances listed in `remaining`.
// Perfect mode walks the node schedule; sparse mode solves once at its
// per-class sound bound ceil(positives / Lambda) + 1.
inline Segment solve_class_segment(const BinDataset& ds, const std::vector<int>& remaining,
                                   int target, const SeparatedOptions& opt,
                                   const MaxSatSolver& solver) {
  BinDataset sub;
  sub.feature_count = ds.feature_count;
  sub.feature_names = ds.feature_names;
  sub.class_count = 2;
  sub.class_names = {"rest", ds.class_names[static_cast<std::size_t>(target)]};
  for (int i : remaining) {
    Instance e = ds.instances[static_cast<std::size_t>(i)];
    e.class_id = e.class_id == target ? 1 : 0;
    sub.instances.push_back(std::move(e));
  }
  Segment seg;
  for (const auto& e : sub.instances) seg.positives += e.class_id == 1;
  if (seg.positives == 0) return seg;

  EncodeOptions eopt;
  eopt.mode = opt.mode;
  eopt.sparse = opt.sparse;
  eopt.one_vs_rest = true;

  auto finish = [&](const OptResult& res, const VariableLayout& lay) {
    if (opt.mode == EncodeMode::sparse)
      for (int i = 1; i <= lay.instances; ++i)
        if (sub.instances[static_cast<std::size_t>(i - 1)].class_id == 1 &&
            res.assignment[static_cast<std::size_t>(lay.m(i))])
          ++seg.misclassified;
    if (all_nodes_unused(res.assignment, lay)) return;
    DecisionList part = decode(res.assignment, lay, sub);
    seg.used_nodes = model_size(part);
    for (auto& r : part.rules) {
      if (r.class_id != 1)
        throw Error("internal: one-vs-rest segment predicted the rest class");
      r.class_id = target;
      seg.rules.push_back(std::move(r));
    }
  };

  if (opt.mode == EncodeMode::perfect) {
    for (int n = std::max(2, opt.schedule.initial_n); n <= opt.schedule.max_n;
         n += opt.schedule.step) {
      auto [formula, lay] = encode_list(sub, n, eopt);
      OptResult res = solver.solve(formula);
      if (res.status == SolveStatus::timeout)
        throw SolveTimeoutError("solver budget exceeded in class sub-problem");
      if (res.status == SolveStatus::unsatisfiable_hard) continue;
      finish(res, lay);
      return seg;
    }
    throw ClassTrainError("no perfect representation of class '" +
                              ds.class_names[static_cast<std::size_t>(target)] +
                              "' within the node schedule",
                          target);
  }

  int n = static_cast<int>(ceil_div(seg.positives, opt.sparse->big_lambda)) + 1;
  auto [formula, lay] = encode_list(sub, n, eopt);
  OptResult res = solver.solve(formula);
  if (res.status != SolveStatus::optimum)
    throw ClassTrainError("sparse sub-problem for class '" +
                              ds.class_names[static_cast<std::size_t>(target)] + "' did not solve",
                          target);
  finish(res, lay);
  return seg;
}

inline ClassReport report_for(const Segment& seg, int cls, const SeparatedOptions& opt) {
  ClassReport rep;
  rep.class_id = cls;
  rep.used_nodes = seg.used_nodes;
  rep.misclassified = seg.misclassified;
  rep.accuracy = seg.positives == 0
                     ? Rational(1)
                     : Rational(seg.positives - seg.misclassified, seg.positives);
  std::int64_t lambda = opt.sparse ? opt.sparse->big_lambda : 1;
  rep.cost = seg.used_nodes + (seg.misclassified == 0 ? 0 : ceil_div(seg.misclassified, lambda));
  return rep;
}

// Instances of `remaining` matched by the segment's rules (first-match order).
inline std::vector<int> matched_by(const std::vector<Rule>& rules, const BinDataset& ds,
                                   const std::vector<int>& remaining) {
  std::vector<int> out;
  for (int i : remaining) {
    const auto& bits = ds.instances[static_cast<std::size_t>(i)].features;
    for (const auto& r : rules) {
      if (rule_matches(r, bits)) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

inline void remove_matched(std::vector<int>& remaining, const std::vector<int>& matched) {
  std::vector<int> keep;
  keep.reserve(remaining.size() - matched.size());
  std::size_t mi = 0;
  for (int i : remaining) {
    if (mi < matched.size() && matched[mi] == i)
      ++mi;
    else
      keep.push_back(i);
  }
  remaining = std::move(keep);
}

}  // namespace detail

// Trains one class after another in `sigma` order, each on the instances the
// earlier segments left unclassified. Non-final segments cannot contain
// default rules (they would swallow the later classes; the encodings forbid
// capturing foreign instances), the final segment always ends with one.
inline DecisionList train_separated_fixed(const BinDataset& ds, const std::vector<int>& sigma,
                                          const SeparatedOptions& opt,
                                          const MaxSatSolver& solver) {
  auto present = detail::present_classes(ds);
  auto sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != present)
    throw EncodeError("class order must list every present class exactly once");

  DecisionList out;
  out.feature_count = ds.feature_count;
  out.class_count = ds.class_count;
  out.feature_names = ds.feature_names;
  out.class_names = ds.class_names;

  std::vector<int> remaining(ds.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  for (std::size_t pos = 0; pos < sigma.size(); ++pos) {
    const bool final_class = pos + 1 == sigma.size();
    auto seg = detail::solve_class_segment(ds, remaining, sigma[pos], opt, solver);
    for (const auto& r : seg.rules)
      if (!final_class && r.antecedent.empty())
        throw Error("internal: default rule decoded in a non-final segment");
    auto matched = detail::matched_by(seg.rules, ds, remaining);
    out.rules.insert(out.rules.end(), seg.rules.begin(), seg.rules.end());
    detail::remove_matched(remaining, matched);
  }
  if (out.rules.empty() || !out.rules.back().antecedent.empty())
    out.rules.push_back(Rule{{}, sigma.back()});
  return out;
}

// Count orderings need no solving; accuracy and cost orderings first train
// every class independently on the full data and sort by the resulting
// report. Ties always break toward the smaller class id.
inline std::vector<int> order_classes(const BinDataset& ds, const OrderingStrategy& strategy,
                                      const SeparatedOptions& opt, const MaxSatSolver& solver) {
  auto present = detail::present_classes(ds);
  auto hist = ds.class_histogram();

  switch (strategy.kind) {
    case OrderingKind::count_asc:
    case OrderingKind::count_desc: {
      bool asc = strategy.kind == OrderingKind::count_asc;
      std::sort(present.begin(), present.end(), [&](int a, int b) {
        auto ca = hist[static_cast<std::size_t>(a)], cb = hist[static_cast<std::size_t>(b)];
        if (ca != cb) return asc ? ca < cb : ca > cb;
        return a < b;
      });
      return present;
    }
    case OrderingKind::acc_asc:
    case OrderingKind::acc_desc:
    case OrderingKind::cost_asc:
    case OrderingKind::cost_desc: {
      std::vector<int> everything(ds.size());
      std::iota(everything.begin(), everything.end(), 0);
      std::vector<ClassReport> reports;
      for (int c : present)
        reports.push_back(
            detail::report_for(detail::solve_class_segment(ds, everything, c, opt, solver), c, opt));
      bool by_cost = strategy.kind == OrderingKind::cost_asc ||
                     strategy.kind == OrderingKind::cost_desc;
      bool asc = strategy.kind == OrderingKind::acc_asc ||
                 strategy.kind == OrderingKind::cost_asc;
      std::sort(reports.begin(), reports.end(), [&](const ClassReport& a, const ClassReport& b) {
        if (by_cost && a.cost != b.cost) return asc ? a.cost < b.cost : a.cost > b.cost;
        if (!by_cost && a.accuracy != b.accuracy)
          return asc ? a.accuracy < b.accuracy : a.accuracy > b.accuracy;
        return a.class_id < b.class_id;
      });
      std::vector<int> out;
      for (const auto& r : reports) out.push_back(r.class_id);
      return out;
    }
    default:
      throw EncodeError("order_classes expects a count, accuracy or cost ordering");
  }
}

// Greedy separation: each round trains every unfixed class on the remaining
// instances, fixes the one with the lowest report cost (ties: higher
// accuracy, then smaller class id), and repeats until every class is fixed
// or nothing remains. The final segment gets the default rule.
inline DecisionList train_separated_greedy(const BinDataset& ds, const SeparatedOptions& opt,
                                           const MaxSatSolver& solver) {
  auto unfixed = detail::present_classes(ds);
  DecisionList out;
  out.feature_count = ds.feature_count;
  out.class_count = ds.class_count;
  out.feature_names = ds.feature_names;
  out.class_names = ds.class_names;

  std::vector<int> remaining(ds.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  int last_fixed = unfixed.empty() ? 0 : unfixed.back();
  while (!unfixed.empty() && !remaining.empty()) {
    std::optional<detail::Segment> best_seg;
    std::optional<ClassReport> best_rep;
    for (int c : unfixed) {
      auto seg = detail::solve_class_segment(ds, remaining, c, opt, solver);
      auto rep = detail::report_for(seg, c, opt);
      bool better = !best_rep || rep.cost < best_rep->cost ||
                    (rep.cost == best_rep->cost && rep.accuracy > best_rep->accuracy) ||
                    (rep.cost == best_rep->cost && rep.accuracy == best_rep->accuracy &&
                     rep.class_id < best_rep->class_id);
      if (better) {
        best_seg = std::move(seg);
        best_rep = rep;
      }
    }
    int chosen = best_rep->class_id;
    last_fixed = chosen;
    auto matched = detail::matched_by(best_seg->rules, ds, remaining);
    out.rules.insert(out.rules.end(), best_seg->rules.begin(), best_seg->rules.end());
    detail::remove_matched(remaining, matched);
    unfixed.erase(std::remove(unfixed.begin(), unfixed.end(), chosen), unfixed.end());
  }
  if (out.rules.empty() || !out.rules.back().antecedent.empty())
    out.rules.push_back(Rule{{}, last_fixed});
  return out;
}

}  // namespace satdl
