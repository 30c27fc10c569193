#pragma once

// Model quality measures: accuracy, literal size, the sparse objective
// breakdown, and per-instance explanation size for decision lists and
// decision sets. Explanation sizes are exact rationals (they are averages of
// small integers); callers render them as decimals.

#include <cstdint>
#include <map>
#include <vector>

#include "satdl/dataset.hpp"
#include "satdl/errors.hpp"
#include "satdl/model.hpp"
#include "satdl/rational.hpp"

namespace satdl {

// Literal size: one per antecedent literal plus one per rule (the predicted
// class counts as a literal).
inline std::int64_t model_size(const DecisionList& dl) {
  std::int64_t s = static_cast<std::int64_t>(dl.rules.size());
  for (const auto& r : dl.rules) s += static_cast<std::int64_t>(r.antecedent.size());
  return s;
}

inline std::int64_t model_size(const DecisionSet& dset) {
  std::int64_t s = static_cast<std::int64_t>(dset.rules.size());
  for (const auto& r : dset.rules) s += static_cast<std::int64_t>(r.antecedent.size());
  return s;
}

inline std::int64_t rule_size(const Rule& r) {
  return static_cast<std::int64_t>(r.antecedent.size()) + 1;
}

// --- accuracy ----------------------------------------------------------------

inline Rational accuracy(const DecisionList& dl, const BinDataset& ds) {
  if (ds.instances.empty()) throw MetricsError("accuracy of an empty dataset is undefined");
  std::int64_t correct = 0;
  for (const auto& e : ds.instances) {
    auto p = predict(dl, e.features);
    if (p && p->class_id == e.class_id) ++correct;
  }
  return Rational(correct, static_cast<std::int64_t>(ds.instances.size()));
}

// A decision set classifies an instance correctly only when at least one
// rule fires and every firing rule names the true class.
inline Rational accuracy(const DecisionSet& dset, const BinDataset& ds) {
  if (ds.instances.empty()) throw MetricsError("accuracy of an empty dataset is undefined");
  std::int64_t correct = 0;
  for (const auto& e : ds.instances) {
    auto firing = firing_rules(dset, e.features);
    bool ok = !firing.empty();
    for (int r : firing) ok = ok && dset.rules[static_cast<std::size_t>(r)].class_id == e.class_id;
    if (ok) ++correct;
  }
  return Rational(correct, static_cast<std::int64_t>(ds.instances.size()));
}

// --- explanation size ----------------------------------------------------------

// Decision list: explaining a prediction means showing why every earlier
// rule did not fire and why the firing one did, so the size is the sum of
// all antecedent literals up to and including the firing rule, plus one for
// the predicted class. With no firing rule the whole model is the
// explanation.
inline Rational explain_dl(const DecisionList& dl, const std::vector<std::uint8_t>& bits) {
  auto p = predict(dl, bits);
  if (!p) return Rational(model_size(dl));
  std::int64_t literals = 0;
  for (int r = 0; r <= p->rule_index; ++r)
    literals += static_cast<std::int64_t>(dl.rules[static_cast<std::size_t>(r)].antecedent.size());
  return Rational(literals + 1);
}

// Decision set: any firing rule explains the prediction, so agreement costs
// the average firing-rule size. When firing rules disagree, each predicted
// class needs its average shown, so the sizes add up. With no firing rule
// the whole set is the explanation.
inline Rational explain_ds(const DecisionSet& dset, const std::vector<std::uint8_t>& bits) {
  auto firing = firing_rules(dset, bits);
  if (firing.empty()) return Rational(model_size(dset));
  std::map<int, std::pair<std::int64_t, std::int64_t>> by_class;  // class -> (size sum, count)
  for (int r : firing) {
    const auto& rule = dset.rules[static_cast<std::size_t>(r)];
    auto& [sum, count] = by_class[rule.class_id];
    sum += rule_size(rule);
    ++count;
  }
  Rational total(0);
  for (const auto& [cls, sc] : by_class) total += Rational(sc.first, sc.second);
  return total;
}

struct ExplanationReport {
  std::vector<Rational> per_instance;
  std::vector<bool> unclassified;
  Rational average{0};
};

inline ExplanationReport explain_report(const DecisionList& dl, const BinDataset& ds) {
  if (ds.instances.empty()) throw MetricsError("explanation report of an empty dataset");
  ExplanationReport rep;
  Rational sum(0);
  for (const auto& e : ds.instances) {
    rep.per_instance.push_back(explain_dl(dl, e.features));
    rep.unclassified.push_back(!predict(dl, e.features).has_value());
    sum += rep.per_instance.back();
  }
  rep.average = sum / static_cast<std::int64_t>(ds.instances.size());
  return rep;
}

// --- sparse objective ------------------------------------------------------------

struct SparseObjective {
  std::int64_t errors = 0;        // misclassified plus unclassified instances
  std::int64_t lambda_nodes = 0;  // Lambda * used nodes
  std::int64_t offset = 0;        // the constant N * Lambda term
  std::int64_t total = 0;         // errors + lambda_nodes + offset

  // The part a MaxSAT solve of the sparse encoding actually minimizes.
  std::int64_t solver_cost() const { return errors + lambda_nodes; }
};

// Recomputes the sparse objective of a list by simulation. Every rule
// literal is a node and every consequent a leaf node, so the node count is
// exactly the literal size of the list.
inline SparseObjective sparse_objective(const DecisionList& dl, const BinDataset& ds,
                                        std::int64_t big_lambda, int encoded_nodes) {
  SparseObjective obj;
  for (const auto& e : ds.instances) {
    auto p = predict(dl, e.features);
    if (!p || p->class_id != e.class_id) ++obj.errors;
  }
  obj.lambda_nodes = big_lambda * model_size(dl);
  obj.offset = big_lambda * encoded_nodes;
  obj.total = obj.errors + obj.lambda_nodes + obj.offset;
  return obj;
}

}  // namespace satdl
