#pragma once

// Incremental CDCL SAT backend.
//
// A deliberately small conflict-driven solver: two-watched-literal
// propagation, first-UIP clause learning, VSIDS-style activities with phase
// saving, and Luby restarts. Clauses may be added between solve calls and
// solving accepts assumption literals, which is what the MaxSAT linear
// search needs. Completeness matters here, raw speed does not; the formulas
// this project produces are desk-scale.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

#include "satdl/errors.hpp"
#include "satdl/wcnf.hpp"

namespace satdl {

class CdclSolver {
 public:
  enum class Result { sat, unsat, unknown };

  int num_vars() const { return static_cast<int>(assigns_.size()); }

  int new_var() {
    assigns_.push_back(kUnknown);
    level_.push_back(0);
    reason_.push_back(-1);
    activity_.push_back(0.0);
    polarity_.push_back(0);
    seen_.push_back(0);
    heap_pos_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    int v = num_vars() - 1;
    heap_insert(v);
    return v + 1;  // external ids are 1-based
  }

  void ensure_vars(int n) {
    while (num_vars() < n) new_var();
  }

  // Adds a clause of external (signed, 1-based) literals. Returns false if
  // the solver is now known unsatisfiable. Must be called at decision level
  // zero, i.e. between solve calls.
  bool add_clause(const Clause& external) {
    if (!ok_) return false;
    Clause c = external;
    if (!normalize_clause(c)) return true;  // tautology
    std::vector<int> lits;
    lits.reserve(c.size());
    for (Lit l : c) {
      int v = std::abs(l);
      ensure_vars(v);
      int il = to_internal(l);
      int val = lit_value(il);
      if (val == 1) return true;    // satisfied at level 0
      if (val == 0) continue;       // permanently false, drop
      lits.push_back(il);
    }
    if (lits.empty()) {
      ok_ = false;
      return false;
    }
    if (lits.size() == 1) {
      enqueue(lits[0], -1);
      if (propagate() != -1) ok_ = false;
      return ok_;
    }
    attach_clause(std::move(lits));
    return true;
  }

  void set_deadline(std::optional<std::chrono::steady_clock::time_point> d) { deadline_ = d; }

  std::uint64_t conflict_count() const { return conflicts_; }

  Result solve(const std::vector<Lit>& assumptions = {}) {
    if (!ok_) return Result::unsat;
    cancel_until(0);
    if (propagate() != -1) {
      ok_ = false;
      return Result::unsat;
    }
    std::vector<int> assumps;
    assumps.reserve(assumptions.size());
    for (Lit l : assumptions) {
      ensure_vars(std::abs(l));
      assumps.push_back(to_internal(l));
    }

    std::uint64_t conflicts_since_restart = 0;
    std::uint64_t restart_limit = kRestartBase * luby(restarts_ + 1);
    Result out = Result::unknown;
    for (;;) {
      int confl = propagate();
      if (confl != -1) {
        ++conflicts_;
        ++conflicts_since_restart;
        if (decision_level() == 0) {
          ok_ = false;
          out = Result::unsat;
          break;
        }
        std::vector<int> learnt;
        int bt_level = analyze(confl, learnt);
        cancel_until(bt_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          int ci = attach_clause(std::move(learnt));
          enqueue(clauses_[ci][0], ci);
        }
        decay_activities();
        if ((conflicts_ & 255) == 0 && past_deadline()) {
          out = Result::unknown;
          break;
        }
        if (conflicts_since_restart >= restart_limit) {
          ++restarts_;
          conflicts_since_restart = 0;
          restart_limit = kRestartBase * luby(restarts_ + 1);
          cancel_until(0);
        }
        continue;
      }

      if (decision_level() < static_cast<int>(assumps.size())) {
        int p = assumps[decision_level()];
        int val = lit_value(p);
        if (val == 1) {
          new_decision_level();  // placeholder level, keeps the index advancing
          continue;
        }
        if (val == 0) {
          out = Result::unsat;  // conflicts with earlier assumptions / implied units
          break;
        }
        new_decision_level();
        enqueue(p, -1);
        continue;
      }

      int v = pick_branch_var();
      if (v == -1) {
        save_model();
        out = Result::sat;
        break;
      }
      if (past_deadline()) {
        out = Result::unknown;
        break;
      }
      new_decision_level();
      enqueue(polarity_[v] ? 2 * v : 2 * v + 1, -1);
    }
    cancel_until(0);
    return out;
  }

  // Valid after solve() returned sat.
  bool model_value(int var) const { return model_[var - 1]; }

  std::vector<bool> model(int up_to_var) const {
    std::vector<bool> out(static_cast<std::size_t>(up_to_var) + 1, false);
    for (int v = 1; v <= up_to_var && v <= static_cast<int>(model_.size()); ++v)
      out[v] = model_[v - 1];
    return out;
  }

 private:
  static constexpr std::int8_t kUnknown = -1;
  static constexpr std::uint64_t kRestartBase = 100;

  // internal literal: 2*v for var v positive, 2*v+1 negated (v is 0-based)
  static int to_internal(Lit l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }
  static int neg(int il) { return il ^ 1; }
  static int var_of(int il) { return il >> 1; }

  int lit_value(int il) const {
    std::int8_t a = assigns_[var_of(il)];
    if (a == kUnknown) return -1;
    return a ^ (il & 1);
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }

  void enqueue(int il, int reason) {
    int v = var_of(il);
    assigns_[v] = static_cast<std::int8_t>((il & 1) ? 0 : 1);
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(il);
  }

  // A clause sits in the watch lists of its first two literals; those lists
  // are visited when the watched literal becomes false.
  int attach_clause(std::vector<int>&& lits) {
    int ci = static_cast<int>(clauses_.size());
    clauses_.push_back(std::move(lits));
    watches_[clauses_[ci][0]].push_back(ci);
    watches_[clauses_[ci][1]].push_back(ci);
    return ci;
  }

  // Returns the index of a conflicting clause, or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      int p = trail_[qhead_++];
      int fp = neg(p);
      auto& ws = watches_[fp];
      std::size_t i = 0, keep = 0;
      while (i < ws.size()) {
        int ci = ws[i];
        auto& c = clauses_[ci];
        if (c[0] == fp) std::swap(c[0], c[1]);
        if (lit_value(c[0]) == 1) {
          ws[keep++] = ws[i++];
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (lit_value(c[k]) != 0) {
            std::swap(c[1], c[k]);
            watches_[c[1]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) {
          ++i;  // watch moved elsewhere, drop from this list
          continue;
        }
        ws[keep++] = ws[i++];
        if (lit_value(c[0]) == 0) {
          while (i < ws.size()) ws[keep++] = ws[i++];
          ws.resize(keep);
          return ci;
        }
        enqueue(c[0], ci);
      }
      ws.resize(keep);
    }
    return -1;
  }

  // First-UIP conflict analysis; fills `learnt` with the asserting literal
  // first and returns the backtrack level.
  int analyze(int confl, std::vector<int>& learnt) {
    learnt.clear();
    learnt.push_back(-1);  // slot for the asserting literal
    int path = 0;
    int p = -1;
    int index = static_cast<int>(trail_.size()) - 1;
    std::vector<int> to_clear;
    do {
      const auto& c = clauses_[confl];
      for (std::size_t j = (p == -1 ? 0 : 1); j < c.size(); ++j) {
        int q = c[j];
        int v = var_of(q);
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          to_clear.push_back(v);
          bump_activity(v);
          if (level_[v] >= decision_level())
            ++path;
          else
            learnt.push_back(q);
        }
      }
      while (!seen_[var_of(trail_[index])]) --index;
      p = trail_[index--];
      int v = var_of(p);
      confl = reason_[v];
      seen_[v] = 0;
      --path;
    } while (path > 0);
    learnt[0] = neg(p);

    int bt = 0;
    if (learnt.size() > 1) {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i)
        if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) max_i = i;
      std::swap(learnt[1], learnt[max_i]);
      bt = level_[var_of(learnt[1])];
    }
    for (int v : to_clear) seen_[v] = 0;
    return bt;
  }

  void cancel_until(int target_level) {
    if (decision_level() <= target_level) return;
    int down_to = trail_lim_[target_level];
    for (int i = static_cast<int>(trail_.size()) - 1; i >= down_to; --i) {
      int v = var_of(trail_[i]);
      polarity_[v] = static_cast<char>(assigns_[v]);
      assigns_[v] = kUnknown;
      reason_[v] = -1;
      heap_insert(v);
    }
    trail_.resize(down_to);
    trail_lim_.resize(target_level);
    qhead_ = trail_.size();
  }

  int pick_branch_var() {
    while (!heap_.empty()) {
      int v = heap_top_pop();
      if (assigns_[v] == kUnknown) return v;
    }
    return -1;
  }

  void save_model() {
    model_.assign(assigns_.size(), 0);
    for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = (assigns_[v] == 1);
    // Every stored clause, learnt ones included, must hold in a real model.
    for (const auto& c : clauses_) {
      bool sat = false;
      for (int il : c) sat = sat || lit_value(il) == 1;
      if (!sat) throw Error("internal: model does not satisfy a stored clause");
    }
  }

  bool past_deadline() const {
    return deadline_ && std::chrono::steady_clock::now() > *deadline_;
  }

  // --- VSIDS ---------------------------------------------------------------

  void bump_activity(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    heap_update(v);
  }

  void decay_activities() { var_inc_ /= 0.95; }

  static std::uint64_t luby(std::uint64_t i) {
    // sequence 1,1,2,1,1,2,4,...
    std::uint64_t k = 1;
    while ((1ull << (k + 1)) <= i + 1) ++k;
    for (;;) {
      if ((1ull << k) == i + 1) return 1ull << (k - 1);
      i -= (1ull << k) - 1;
      k = 1;
      while ((1ull << (k + 1)) <= i + 1) ++k;
    }
  }

  // --- activity-ordered max-heap --------------------------------------------

  bool heap_less(int a, int b) const { return activity_[a] > activity_[b]; }

  void heap_insert(int v) {
    if (heap_pos_[v] != -1) return;
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_pos_[v]);
  }

  void heap_update(int v) {
    if (heap_pos_[v] != -1) heap_up(heap_pos_[v]);
  }

  int heap_top_pop() {
    int v = heap_[0];
    heap_pos_[v] = -1;
    int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      heap_pos_[last] = 0;
      heap_down(0);
    }
    return v;
  }

  void heap_up(int i) {
    int v = heap_[i];
    while (i > 0) {
      int parent = (i - 1) / 2;
      if (!heap_less(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }

  void heap_down(int i) {
    int v = heap_[i];
    int n = static_cast<int>(heap_.size());
    for (;;) {
      int child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
      if (!heap_less(heap_[child], v)) break;
      heap_[i] = heap_[child];
      heap_pos_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }

  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;  // indexed by internal literal
  std::vector<std::int8_t> assigns_;       // per var: -1 unknown, 0 false, 1 true
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<char> seen_;
  std::vector<char> polarity_;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<char> model_;
  bool ok_ = true;
  std::uint64_t conflicts_ = 0;
  std::uint64_t restarts_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace satdl
