#pragma once

// Compilation of (dataset, node budget, mode) into partial weighted MaxSAT.
//
// A candidate decision list is a path of N nodes; each node either selects a
// literal on a feature, selects a class pseudo-feature (ending a rule), or is
// unused. Per node j and instance i the model tracks whether i is still
// unclassified at j and whether i is valid (agrees with the rule built so
// far). Binary problems use a single class pseudo-feature whose truth value
// t_j carries the predicted class; with three or more classes every class is
// its own pseudo-feature and leaves only accept true examples of it.
//
// Variable numbering is fixed and documented (s, t, v, n, u, m, then
// auxiliaries, each block in index order) so identical inputs produce
// byte-identical WCNF files. Biconditional constraints are clausified as
// full equivalences through fresh auxiliary variables; the comparison of a
// node's truth value with an instance bit is inlined as a plain literal on
// t_j, which keeps the auxiliary count at O(M*N) instead of O(M*N*K).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "satdl/dataset.hpp"
#include "satdl/errors.hpp"
#include "satdl/rational.hpp"
#include "satdl/wcnf.hpp"

namespace satdl {

// --- variable layout -----------------------------------------------------------

struct VariableLayout {
  int nodes = 0;           // N
  int instances = 0;       // M
  int features = 0;        // K
  int class_features = 0;  // C: 1 for binary problems, class count otherwise
  bool sparse = false;

  // 1-based indices throughout: j in [1..N], r in [1..K+C], i in [1..M].
  int s(int j, int r) const { return (j - 1) * (features + class_features) + r; }
  int t(int j) const { return nodes * (features + class_features) + j; }
  int v(int i, int j) const { return t(nodes) + (i - 1) * nodes + j; }
  int n(int i, int j) const { return v(instances, nodes) + (i - 1) * nodes + j; }
  int u(int j) const { return n(instances, nodes) + j; }
  int m(int i) const { return u(nodes) + i; }

  int primary_count() const {
    return u(nodes) + (sparse ? instances : 0);
  }
  int first_aux_id() const { return primary_count() + 1; }

  // Human-readable symbol for a variable id, used by the sidecar map files.
  std::string describe(int id) const {
    int kc = features + class_features;
    if (id <= nodes * kc) {
      int j = (id - 1) / kc + 1, r = (id - 1) % kc + 1;
      std::ostringstream os;
      os << "s(" << j << "," << r << ")";
      if (r > features) os << " class" << (r - features);
      return os.str();
    }
    if (id <= t(nodes)) return "t(" + std::to_string(id - t(0)) + ")";
    if (id <= v(instances, nodes)) {
      int off = id - t(nodes) - 1;
      return "v(" + std::to_string(off / nodes + 1) + "," + std::to_string(off % nodes + 1) + ")";
    }
    if (id <= n(instances, nodes)) {
      int off = id - v(instances, nodes) - 1;
      return "n(" + std::to_string(off / nodes + 1) + "," + std::to_string(off % nodes + 1) + ")";
    }
    if (id <= u(nodes)) return "u(" + std::to_string(id - u(0)) + ")";
    if (sparse && id <= primary_count()) return "m(" + std::to_string(id - u(nodes)) + ")";
    return "aux";
  }
};

inline VariableLayout layout_vars(int nodes, int instances, int features, int class_features,
                                  bool sparse) {
  if (nodes < 1 || instances < 1 || features < 1 || class_features < 1)
    throw EncodeError("variable layout needs positive dimensions");
  std::int64_t total = static_cast<std::int64_t>(nodes) * (features + class_features) +
                       nodes + 2ll * instances * nodes + nodes +
                       (sparse ? instances : 0);
  if (total > std::numeric_limits<int>::max() / 4)
    throw EncodeError("variable id space overflow for this problem size");
  return VariableLayout{nodes, instances, features, class_features, sparse};
}

// --- sparse regularization -------------------------------------------------------

struct SparseConfig {
  Rational lambda{1, 2};        // per-node cost in misclassification units
  std::int64_t big_lambda = 1;  // ceil(lambda * M)

  static SparseConfig from_lambda(const Rational& lambda, int instance_count) {
    if (lambda <= Rational(0) || lambda > Rational(1))
      throw EncodeError("lambda must lie in (0, 1]");
    SparseConfig cfg;
    cfg.lambda = lambda;
    cfg.big_lambda = ceil_rational(lambda * instance_count);
    if (cfg.big_lambda < 1) cfg.big_lambda = 1;
    return cfg;
  }
};

// --- clause construction ----------------------------------------------------------

// Collects hard and soft clauses with structural-hash memoization of reified
// gates, duplicate-clause suppression and tautology dropping. Fresh
// auxiliary variables are numbered from `first_free_var` in creation order,
// which keeps the output deterministic.
class ClauseBuilder {
 public:
  explicit ClauseBuilder(int first_free_var) : next_var_(first_free_var) {}

  int fresh() { return next_var_++; }
  int variable_count() const { return next_var_ - 1; }

  void hard(Clause c) {
    if (!normalize_clause(c)) return;
    if (seen_hard_.insert(c).second) hard_.push_back(std::move(c));
  }

  void soft(Clause c, std::int64_t weight) {
    if (!normalize_clause(c)) return;
    soft_.push_back(SoftClause{std::move(c), weight});
  }

  Lit constant_true() {
    if (!const_true_) {
      const_true_ = fresh();
      hard({*const_true_});
    }
    return *const_true_;
  }

  // Fresh (memoized) x with x <-> AND(lits); single literals collapse to
  // themselves and an empty conjunction is the constant true.
  Lit reify_and(std::vector<Lit> lits) { return reify(true, std::move(lits)); }

  // Fresh (memoized) x with x <-> OR(lits); empty disjunction is false.
  Lit reify_or(std::vector<Lit> lits) { return reify(false, std::move(lits)); }

  void equivalence(Lit a, Lit b) {
    hard({-a, b});
    hard({a, -b});
  }

  // Exactly one of `lits` is true: pairwise encoding up to 6 literals
  // (no auxiliaries), sequential ladder beyond that (|lits|-1 auxiliaries).
  void exactly_one(const std::vector<Lit>& lits) {
    if (lits.empty()) throw EncodeError("exactly_one of no literals");
    hard(Clause(lits.begin(), lits.end()));  // at least one
    if (lits.size() <= 6) {
      for (std::size_t a = 0; a < lits.size(); ++a)
        for (std::size_t b = a + 1; b < lits.size(); ++b) hard({-lits[a], -lits[b]});
      return;
    }
    // Sinz ladder: aux_i is set once some literal among the first i is true.
    const std::size_t n = lits.size();
    std::vector<Lit> aux(n - 1);
    for (auto& a : aux) a = fresh();
    for (std::size_t i = 0; i + 1 < n; ++i) hard({-lits[i], aux[i]});
    for (std::size_t i = 1; i + 1 < n; ++i) hard({-aux[i - 1], aux[i]});
    for (std::size_t i = 1; i < n; ++i) hard({-lits[i], -aux[i - 1]});
  }

  WcnfFormula take() {
    WcnfFormula f;
    f.variable_count = variable_count();
    f.hard = std::move(hard_);
    f.soft = std::move(soft_);
    return f;
  }

 private:
  Lit reify(bool conj, std::vector<Lit> lits) {
    if (const_true_) {
      Lit t = *const_true_;
      Lit absorbing = conj ? -t : t;   // false kills an AND, true an OR
      Lit identity = conj ? t : -t;
      if (std::find(lits.begin(), lits.end(), absorbing) != lits.end()) return absorbing;
      lits.erase(std::remove(lits.begin(), lits.end(), identity), lits.end());
    }
    std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) {
      int va = std::abs(a), vb = std::abs(b);
      return va != vb ? va < vb : a < b;
    });
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 1; i < lits.size(); ++i)
      if (lits[i] == -lits[i - 1]) return conj ? -constant_true() : constant_true();
    if (lits.empty()) return conj ? constant_true() : -constant_true();
    if (lits.size() == 1) return lits[0];

    auto key = std::make_pair(conj, lits);
    auto it = gate_memo_.find(key);
    if (it != gate_memo_.end()) return it->second;
    Lit x = fresh();
    if (conj) {
      Clause back{x};
      for (Lit l : lits) {
        hard({-x, l});
        back.push_back(-l);
      }
      hard(std::move(back));
    } else {
      Clause fwd{-x};
      for (Lit l : lits) {
        hard({x, -l});
        fwd.push_back(l);
      }
      hard(std::move(fwd));
    }
    gate_memo_.emplace(std::move(key), x);
    return x;
  }

  int next_var_;
  std::optional<Lit> const_true_;
  std::vector<Clause> hard_;
  std::vector<SoftClause> soft_;
  std::set<Clause> seen_hard_;
  std::map<std::pair<bool, std::vector<Lit>>, Lit> gate_memo_;
};

// --- list encodings -----------------------------------------------------------------

enum class EncodeMode { perfect, sparse };

struct EncodeOptions {
  EncodeMode mode = EncodeMode::perfect;
  std::optional<SparseConfig> sparse;
  // One-vs-rest sub-problem for the separated trainers: the dataset must be
  // binary with class 1 as the target. Leaves are pinned to predict the
  // target, foreign instances must never be valid at a leaf, and only target
  // instances participate in the coverage (and misclassification) machinery.
  bool one_vs_rest = false;
};

inline std::pair<WcnfFormula, VariableLayout> encode_list(const BinDataset& ds, int nodes,
                                                          const EncodeOptions& opt) {
  const int m = static_cast<int>(ds.size());
  const int k = ds.feature_count;
  const bool sparse = opt.mode == EncodeMode::sparse;
  if (sparse && !opt.sparse) throw EncodeError("sparse encoding needs a SparseConfig");
  if (opt.one_vs_rest && ds.class_count != 2)
    throw EncodeError("one-vs-rest encoding expects a binary dataset");
  if (m < 1) throw EncodeError("empty dataset");
  if (nodes < (sparse ? 1 : 2))
    throw EncodeError(sparse ? "sparse encoding needs at least 1 node"
                             : "a perfect list needs at least 2 nodes (a literal and a leaf)");

  const bool multiclass = ds.class_count >= 3;
  const int c_count = multiclass ? ds.class_count : 1;
  VariableLayout lay = layout_vars(nodes, m, k, c_count, sparse);
  ClauseBuilder b(lay.first_aux_id());

  // Which instances the coverage / misclassification machinery ranges over.
  auto covered = [&](int i0) {
    return !opt.one_vs_rest || ds.instances[static_cast<std::size_t>(i0)].class_id == 1;
  };

  // Every node selects a feature, a class pseudo-feature, or is unused.
  for (int j = 1; j <= nodes; ++j) {
    std::vector<Lit> choices{lay.u(j)};
    for (int r = 1; r <= k + c_count; ++r) choices.push_back(lay.s(j, r));
    b.exactly_one(choices);
  }

  // Unused nodes form a suffix.
  for (int j = 1; j < nodes; ++j) b.hard({-lay.u(j), lay.u(j + 1)});

  // The last used node is a leaf.
  for (int j = 1; j < nodes; ++j) {
    Clause c{-lay.u(j + 1), lay.u(j)};
    for (int cc = 1; cc <= c_count; ++cc) c.push_back(lay.s(j, k + cc));
    b.hard(std::move(c));
  }
  {
    Clause c{lay.u(nodes)};
    for (int cc = 1; cc <= c_count; ++cc) c.push_back(lay.s(nodes, k + cc));
    b.hard(std::move(c));
  }

  // Multi-class leaves only accept true examples of their class; one-vs-rest
  // sub-problems pin their single class feature the same way.
  if (multiclass || opt.one_vs_rest)
    for (int j = 1; j <= nodes; ++j)
      for (int cc = 1; cc <= c_count; ++cc) b.hard({-lay.s(j, k + cc), lay.t(j)});

  // Everything starts unclassified and valid at node 1.
  for (int i = 1; i <= m; ++i) {
    b.hard({lay.n(i, 1)});
    b.hard({lay.v(i, 1)});
  }

  // leaf_j: node j selects some class pseudo-feature.
  std::vector<Lit> leaf(static_cast<std::size_t>(nodes) + 1);
  for (int j = 1; j <= nodes; ++j) {
    std::vector<Lit> cls;
    for (int cc = 1; cc <= c_count; ++cc) cls.push_back(lay.s(j, k + cc));
    leaf[static_cast<std::size_t>(j)] = b.reify_or(std::move(cls));
  }

  for (int i = 1; i <= m; ++i) {
    const auto& bits = ds.instances[static_cast<std::size_t>(i - 1)].features;
    for (int j = 1; j < nodes; ++j) {
      // Still unclassified after node j: unclassified before it, and node j
      // did not finish a rule the instance was valid at.
      Lit missed = b.reify_or({-leaf[static_cast<std::size_t>(j)], -lay.v(i, j)});
      b.equivalence(lay.n(i, j + 1), b.reify_and({lay.n(i, j), missed}));

      // Valid at node j+1: a rule just ended and the instance is still
      // unclassified, or it was valid and agrees with node j's literal. The
      // agreement test splits by the instance bit, so the truth value enters
      // as a plain literal on t_j.
      std::vector<Lit> agree_true, agree_false;
      for (int r = 1; r <= k; ++r)
        (bits[static_cast<std::size_t>(r - 1)] ? agree_true : agree_false)
            .push_back(lay.s(j, r));
      Lit match = b.reify_or({b.reify_and({lay.t(j), b.reify_or(std::move(agree_true))}),
                              b.reify_and({-lay.t(j), b.reify_or(std::move(agree_false))})});
      Lit fresh_rule = b.reify_and({leaf[static_cast<std::size_t>(j)], lay.n(i, j + 1)});
      Lit carried = b.reify_and({lay.v(i, j), match});
      b.equivalence(lay.v(i, j + 1), b.reify_or({fresh_rule, carried}));
    }
  }

  // Class agreement at leaves.
  for (int i = 1; i <= m; ++i) {
    int ci = ds.instances[static_cast<std::size_t>(i - 1)].class_id;
    for (int j = 1; j <= nodes; ++j) {
      if (opt.one_vs_rest) {
        // Leaves predict the target class only; foreign instances must not
        // be valid at any leaf (their agreement stays hard even in sparse
        // mode), target instances agree by construction.
        if (ci != 1) b.hard({-lay.s(j, k + 1), -lay.v(i, j)});
      } else if (!multiclass) {
        Lit tlit = ci == 1 ? lay.t(j) : -lay.t(j);
        Clause c{-lay.s(j, k + 1), -lay.v(i, j), tlit};
        if (sparse) c.push_back(lay.m(i));
        b.hard(std::move(c));
      } else {
        for (int cc = 1; cc <= c_count; ++cc) {
          if (cc - 1 == ci) continue;
          Clause c{-lay.s(j, k + cc), -lay.v(i, j)};
          if (sparse) c.push_back(lay.m(i));
          b.hard(std::move(c));
        }
      }
    }
  }

  // Coverage: each (target) instance is valid at some leaf, or in sparse
  // mode is flagged misclassified.
  for (int i = 1; i <= m; ++i) {
    if (!covered(i - 1)) continue;
    Clause c;
    if (sparse) c.push_back(lay.m(i));
    for (int j = 1; j <= nodes; ++j)
      c.push_back(b.reify_and({leaf[static_cast<std::size_t>(j)], lay.v(i, j)}));
    b.hard(std::move(c));
  }

  // Objective. The paper's additive N*Lambda term is a constant shift and is
  // reported by the trainer instead of being encoded.
  if (sparse) {
    for (int i = 1; i <= m; ++i)
      if (covered(i - 1)) b.soft({-lay.m(i)}, 1);
    for (int j = 1; j <= nodes; ++j) b.soft({lay.u(j)}, opt.sparse->big_lambda);
  } else {
    for (int j = 1; j <= nodes; ++j) b.soft({lay.u(j)}, 1);
  }

  return {b.take(), lay};
}

// Perfect decision list model: hard constraints demand that every training
// instance is classified correctly, soft clauses reward unused nodes.
// Refuses datasets where identical feature vectors carry different labels.
inline std::pair<WcnfFormula, VariableLayout> encode_perfect(const BinDataset& ds, int nodes) {
  auto conflicts = check_consistency(ds);
  if (!conflicts.empty()) {
    std::ostringstream os;
    os << "dataset admits no perfect model; conflicting duplicate groups:";
    for (const auto& g : conflicts) {
      os << " {";
      for (std::size_t i = 0; i < g.instances.size(); ++i)
        os << (i ? "," : "") << g.instances[i];
      os << "}";
    }
    throw InconsistentDataError(os.str());
  }
  return encode_list(ds, nodes, EncodeOptions{EncodeMode::perfect, std::nullopt, false});
}

// Sparse decision list model: misclassification flags m_i replace the hard
// agreement/coverage constraints; the solver cost is
// (#misclassified) + Lambda * (#used nodes).
inline std::pair<WcnfFormula, VariableLayout> encode_sparse(const BinDataset& ds, int nodes,
                                                            const SparseConfig& cfg) {
  return encode_list(ds, nodes, EncodeOptions{EncodeMode::sparse, cfg, false});
}

// Writes the "variable id -> model symbol" sidecar used when handing WCNF
// files to external solvers.
inline void write_variable_map(const VariableLayout& lay, int total_vars, std::ostream& out) {
  for (int id = 1; id <= total_vars; ++id) out << id << ' ' << lay.describe(id) << '\n';
}

}  // namespace satdl
