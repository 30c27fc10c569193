#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <set>

#include "oracle.hpp"
#include "satdl/encode.hpp"
#include "satdl/maxsat.hpp"
#include "satdl/metrics.hpp"
#include "satdl/model.hpp"
#include "satdl/sat.hpp"
#include "testutil.hpp"

using namespace satdl;

namespace {

// 3 classes, 6 items, 3 features: f0 selects class 0, else f1 selects
// class 1, else class 2.
BinDataset tiny_multiclass() {
  BinDataset ds;
  ds.feature_count = 3;
  ds.class_count = 3;
  ds.feature_names = {"f0", "f1", "f2"};
  ds.class_names = {"c0", "c1", "c2"};
  const std::vector<std::vector<std::uint8_t>> rows = {{1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                                       {0, 1, 1}, {0, 0, 1}, {0, 0, 0}};
  const std::vector<int> classes = {0, 0, 1, 1, 2, 2};
  for (std::size_t i = 0; i < rows.size(); ++i)
    ds.instances.push_back(Instance{rows[i], classes[i]});
  return ds;
}

std::set<Clause> clause_set(const WcnfFormula& f) { return {f.hard.begin(), f.hard.end()}; }

}  // namespace

TEST_CASE("layout allocates s,t,v,n,u,m blocks contiguously") {
  auto lay = layout_vars(1, 1, 1, 1, false);
  REQUIRE(lay.primary_count() == 6);
  REQUIRE(lay.s(1, 1) == 1);
  REQUIRE(lay.s(1, 2) == 2);
  REQUIRE(lay.t(1) == 3);
  REQUIRE(lay.v(1, 1) == 4);
  REQUIRE(lay.n(1, 1) == 5);
  REQUIRE(lay.u(1) == 6);
  REQUIRE(lay.first_aux_id() == 7);

  auto big = layout_vars(7, 8, 5, 1, false);
  REQUIRE(big.primary_count() == 7 * 6 + 7 + 56 + 56 + 7);
  REQUIRE(big.primary_count() == 168);

  auto sparse = layout_vars(7, 8, 5, 1, true);
  REQUIRE(sparse.primary_count() == 176);
  REQUIRE(sparse.m(1) == 169);

  SECTION("identical inputs give identical maps") {
    auto again = layout_vars(7, 8, 5, 1, false);
    for (int j = 1; j <= 7; ++j) REQUIRE(again.u(j) == big.u(j));
  }
  SECTION("all ids distinct and contiguous") {
    std::set<int> ids;
    for (int j = 1; j <= 7; ++j) {
      for (int r = 1; r <= 6; ++r) ids.insert(big.s(j, r));
      ids.insert(big.t(j));
      ids.insert(big.u(j));
    }
    for (int i = 1; i <= 8; ++i)
      for (int j = 1; j <= 7; ++j) {
        ids.insert(big.v(i, j));
        ids.insert(big.n(i, j));
      }
    REQUIRE(ids.size() == 168);
    REQUIRE(*ids.begin() == 1);
    REQUIRE(*ids.rbegin() == 168);
  }
  SECTION("oversized requests are rejected") {
    REQUIRE_THROWS_AS(layout_vars(100000, 100000, 100, 1, false), EncodeError);
  }
}

TEST_CASE("exactly_one: singleton and pairwise forms") {
  {
    ClauseBuilder b(2);
    b.exactly_one({1});
    auto f = b.take();
    REQUIRE(f.hard == std::vector<Clause>{{1}});
  }
  {
    ClauseBuilder b(3);
    b.exactly_one({1, 2});
    auto f = b.take();
    REQUIRE(clause_set(f) == std::set<Clause>{{1, 2}, {-1, -2}});
  }
  {
    ClauseBuilder b(7);
    b.exactly_one({1, 2, 3, 4, 5, 6});
    auto f = b.take();
    REQUIRE(f.variable_count == 6);  // pairwise: no auxiliaries
    REQUIRE(f.hard.size() == 6 * 5 / 2 + 1);
  }
  {
    ClauseBuilder b(1);
    REQUIRE_THROWS_AS(b.exactly_one({}), EncodeError);
  }
}

TEST_CASE("exactly_one over 10 literals admits exactly the one-hot assignments") {
  ClauseBuilder b(11);
  std::vector<Lit> lits;
  for (int v = 1; v <= 10; ++v) lits.push_back(v);
  b.exactly_one(lits);
  auto f = b.take();
  REQUIRE(f.variable_count > 10);  // ladder auxiliaries
  for (std::uint32_t mask = 0; mask < 1024; ++mask) {
    CdclSolver sat;
    sat.ensure_vars(f.variable_count);
    for (const auto& c : f.hard) sat.add_clause(c);
    std::vector<Lit> fix;
    for (int v = 1; v <= 10; ++v) fix.push_back((mask >> (v - 1)) & 1 ? v : -v);
    bool satisfiable = sat.solve(fix) == CdclSolver::Result::sat;
    REQUIRE(satisfiable == (std::popcount(mask) == 1));
  }
}

TEST_CASE("reify collapses unary input and emits textbook clauses for a pair") {
  ClauseBuilder b(3);
  REQUIRE(b.reify_and({1}) == 1);
  REQUIRE(b.reify_or({-2}) == -2);
  REQUIRE(b.take().hard.empty());

  ClauseBuilder b2(3);
  Lit x = b2.reify_and({1, 2});
  REQUIRE(x == 3);
  auto f = b2.take();
  REQUIRE(clause_set(f) == std::set<Clause>{{1, -3}, {2, -3}, {-1, -2, 3}});

  // Same gate again: memoized, no new clauses.
  ClauseBuilder b3(3);
  REQUIRE(b3.reify_and({1, 2}) == b3.reify_and({2, 1}));
  REQUIRE(b3.take().hard.size() == 3);
}

TEST_CASE("nested reification preserves the model count of or(and(a,b),c)") {
  ClauseBuilder b(4);
  Lit root = b.reify_or({b.reify_and({1, 2}), 3});
  b.hard({root});
  auto f = b.take();
  auto models = oracle::enumerate_hard_models(f, 3, 100);
  REQUIRE(models.size() == 5);  // (a and b) or c has 5 models over {a,b,c}
}

TEST_CASE("the displayed 7-node solution satisfies the perfect hard clauses") {
  auto ds = testutil::example1();
  auto [f, lay] = encode_perfect(ds, 7);

  CdclSolver sat;
  sat.ensure_vars(f.variable_count);
  bool ok = true;
  for (const auto& c : f.hard) ok = ok && sat.add_clause(c);
  REQUIRE(ok);
  auto assumps = testutil::node_assumptions(lay, testutil::example1_seven_node_solution());
  REQUIRE(sat.solve(assumps) == CdclSolver::Result::sat);

  // All nodes used, so the soft objective u_1..u_7 is fully falsified.
  auto model = sat.model(f.variable_count);
  REQUIRE(evaluate_cost(f, model) == 7);

  // Decoding the admitted model gives the four displayed rules.
  auto dl = decode(model, lay, ds);
  REQUIRE(dl == testutil::example1_paper_list());
}

TEST_CASE("a single instance needs just one leaf at N=2") {
  BinDataset ds;
  ds.feature_count = 1;
  ds.class_count = 2;
  ds.feature_names = {"f"};
  ds.class_names = {"no", "yes"};
  ds.instances = {Instance{{1}, 0}};
  auto [f, lay] = encode_perfect(ds, 2);
  auto res = solve_builtin(f);
  REQUIRE(res.status == SolveStatus::optimum);
  REQUIRE(res.cost == 1);  // one of two unused-node rewards is forfeited
  auto dl = decode(res.assignment, lay, ds);
  REQUIRE(dl.rules.size() == 1);
  REQUIRE(dl.rules[0].antecedent.empty());
  REQUIRE(dl.rules[0].class_id == 0);
}

TEST_CASE("encode_perfect refuses inconsistent data and tiny node budgets") {
  auto ds = testutil::example1();
  REQUIRE_THROWS_AS(encode_perfect(ds, 1), EncodeError);
  auto bad = ds;
  auto dup = bad.instances[0];
  dup.class_id = 0;
  bad.instances.push_back(dup);
  REQUIRE_THROWS_AS(encode_perfect(bad, 7), InconsistentDataError);
  REQUIRE_THROWS_WITH(encode_perfect(bad, 7), Catch::Matchers::ContainsSubstring("{0,8}"));
  // The same data is legal in sparse mode.
  REQUIRE_NOTHROW(encode_sparse(bad, 3, SparseConfig::from_lambda(Rational(1, 2), 9)));
}

TEST_CASE("every hard model of the perfect encoding decodes to a perfect list") {
  auto ds = testutil::example1();
  auto [f, lay] = encode_perfect(ds, 6);
  auto models = oracle::enumerate_hard_models(f, lay.primary_count(), 400);
  REQUIRE_FALSE(models.empty());
  for (const auto& a : models) {
    auto dl = decode(a, lay, ds);
    REQUIRE(validate_perfect(dl, ds).empty());
    REQUIRE(model_size(dl) == 6);  // N=6 is the true minimum, every node is used

    // Exactly-one discipline at every node.
    for (int j = 1; j <= lay.nodes; ++j) {
      int selected = a[static_cast<std::size_t>(lay.u(j))] ? 1 : 0;
      for (int r = 1; r <= lay.features + lay.class_features; ++r)
        selected += a[static_cast<std::size_t>(lay.s(j, r))] ? 1 : 0;
      REQUIRE(selected == 1);
    }
    // Unused nodes form a suffix and the last used node is a leaf.
    for (int j = 1; j < lay.nodes; ++j)
      if (a[static_cast<std::size_t>(lay.u(j))])
        REQUIRE(a[static_cast<std::size_t>(lay.u(j + 1))]);
    int last_used = 0;
    for (int j = 1; j <= lay.nodes; ++j)
      if (!a[static_cast<std::size_t>(lay.u(j))]) last_used = j;
    REQUIRE(last_used > 0);
    bool leaf = false;
    for (int c = 1; c <= lay.class_features; ++c)
      leaf = leaf || a[static_cast<std::size_t>(lay.s(last_used, lay.features + c))];
    REQUIRE(leaf);
  }
}

TEST_CASE("v/n variables in every model equal their simulated values") {
  auto ds = testutil::example1();
  auto [f, lay] = encode_perfect(ds, 6);
  auto models = oracle::enumerate_hard_models(f, lay.primary_count(), 200);
  REQUIRE_FALSE(models.empty());
  for (const auto& a : models) {
    auto tr = oracle::replay_trace(a, lay, ds);
    for (int i = 1; i <= lay.instances; ++i)
      for (int j = 1; j <= lay.nodes; ++j) {
        REQUIRE(a[static_cast<std::size_t>(lay.v(i, j))] == tr.valid[i][j]);
        REQUIRE(a[static_cast<std::size_t>(lay.n(i, j))] == tr.unclassified[i][j]);
      }
  }
}

TEST_CASE("multi-class leaves always carry a true truth value") {
  auto ds = tiny_multiclass();
  auto [f, lay] = encode_perfect(ds, 6);
  REQUIRE(lay.class_features == 3);
  auto models = oracle::enumerate_hard_models(f, lay.primary_count(), 150);
  REQUIRE_FALSE(models.empty());
  for (const auto& a : models) {
    for (int j = 1; j <= lay.nodes; ++j)
      for (int c = 1; c <= lay.class_features; ++c)
        if (a[static_cast<std::size_t>(lay.s(j, lay.features + c))])
          REQUIRE(a[static_cast<std::size_t>(lay.t(j))]);
    auto dl = decode(a, lay, ds);
    REQUIRE(validate_perfect(dl, ds).empty());
  }
}

TEST_CASE("sparse optimum on the example data at lambda 1/2 costs 8") {
  auto ds = testutil::example1();
  auto cfg = SparseConfig::from_lambda(Rational(1, 2), static_cast<int>(ds.size()));
  REQUIRE(cfg.big_lambda == 4);
  auto [f, lay] = encode_sparse(ds, 3, cfg);
  auto res = solve_builtin(f);
  REQUIRE(res.status == SolveStatus::optimum);
  REQUIRE(res.cost == oracle::min_sparse_cost(ds, 3, 4));
  REQUIRE(res.cost == 8);
}

TEST_CASE("sparse misclassification flags match the decoded list exactly") {
  auto ds = testutil::example1();
  auto cfg = SparseConfig::from_lambda(Rational(1, 2), static_cast<int>(ds.size()));
  auto [f, lay] = encode_sparse(ds, 3, cfg);
  // Pin node 1 used so the optimum stays decodable as a rule list.
  f.hard.push_back({-lay.u(1)});
  auto res = solve_builtin(f);
  REQUIRE(res.status == SolveStatus::optimum);
  REQUIRE(res.cost == 8);
  auto dl = decode(res.assignment, lay, ds);
  std::int64_t flagged = 0;
  for (int i = 1; i <= lay.instances; ++i)
    flagged += res.assignment[static_cast<std::size_t>(lay.m(i))];
  std::int64_t actual_errors = 0;
  for (const auto& e : ds.instances) {
    auto p = predict(dl, e.features);
    if (!p || p->class_id != e.class_id) ++actual_errors;
  }
  REQUIRE(flagged == actual_errors);
}

TEST_CASE("a perfect list stays feasible for sparse mode at unit node cost") {
  auto ds = testutil::example1();
  SparseConfig cfg;
  cfg.lambda = Rational(1, 8);
  cfg.big_lambda = 1;
  auto [f, lay] = encode_sparse(ds, 7, cfg);
  auto res = solve_builtin(f);
  REQUIRE(res.status == SolveStatus::optimum);
  REQUIRE(res.cost <= oracle::min_perfect_list_nodes(ds));
}

TEST_CASE("conflicting duplicates force at least one sparse error") {
  BinDataset ds;
  ds.feature_count = 1;
  ds.class_count = 2;
  ds.feature_names = {"f"};
  ds.class_names = {"a", "b"};
  ds.instances = {Instance{{1}, 0}, Instance{{1}, 1}};
  SparseConfig cfg;
  cfg.lambda = Rational(1, 2);
  cfg.big_lambda = 1;
  for (int n = 1; n <= 4; ++n) {
    auto [f, lay] = encode_sparse(ds, n, cfg);
    auto res = solve_builtin(f);
    REQUIRE(res.status == SolveStatus::optimum);
    std::int64_t flagged = 0;
    for (int i = 1; i <= lay.instances; ++i)
      flagged += res.assignment[static_cast<std::size_t>(lay.m(i))];
    REQUIRE(flagged >= 1);
  }
}

TEST_CASE("encoding size stays within 2.5x when any one dimension doubles") {
  auto base = testutil::example1();

  auto doubled_rows = base;
  for (const auto& e : base.instances) doubled_rows.instances.push_back(e);

  auto doubled_features = base;
  doubled_features.feature_count = 10;
  for (int f0 = 0; f0 < 5; ++f0)
    doubled_features.feature_names.push_back(base.feature_names[static_cast<std::size_t>(f0)] +
                                             "2");
  for (auto& e : doubled_features.instances) {
    auto copy = e.features;
    e.features.insert(e.features.end(), copy.begin(), copy.end());
  }

  auto lits = [](const BinDataset& ds, int n) {
    EncodeOptions opt;  // plain perfect encoding, consistency irrelevant here
    return encode_list(ds, n, opt).first.literal_count();
  };
  const auto base_lits = lits(base, 5);
  REQUIRE(static_cast<double>(lits(base, 10)) <= 2.5 * static_cast<double>(base_lits));
  REQUIRE(static_cast<double>(lits(doubled_rows, 5)) <= 2.5 * static_cast<double>(base_lits));
  REQUIRE(static_cast<double>(lits(doubled_features, 5)) <= 2.5 * static_cast<double>(base_lits));
}

TEST_CASE("identical encode calls give byte-identical WCNF output") {
  auto ds = testutil::example1();
  auto a = write_wcnf_string(encode_perfect(ds, 7).first);
  auto b = write_wcnf_string(encode_perfect(ds, 7).first);
  REQUIRE(a == b);
  REQUIRE_FALSE(a.empty());
}
