#include <catch2/catch_amalgamated.hpp>

#include "satdl/model.hpp"
#include "testutil.hpp"

using namespace satdl;

namespace {

// Primary-variable assignment (s, t, u only) for decode tests.
std::vector<bool> assignment_from_nodes(const VariableLayout& lay,
                                        const std::vector<testutil::Node>& nodes) {
  std::vector<bool> a(static_cast<std::size_t>(lay.primary_count()) + 1, false);
  for (int j = 1; j <= lay.nodes; ++j) {
    const auto& nd = nodes[static_cast<std::size_t>(j - 1)];
    if (nd.r == 0) {
      a[static_cast<std::size_t>(lay.u(j))] = true;
      continue;
    }
    a[static_cast<std::size_t>(lay.s(j, nd.r))] = true;
    a[static_cast<std::size_t>(lay.t(j))] = nd.t;
  }
  return a;
}

}  // namespace

TEST_CASE("decode reads the displayed 7-node solution into four rules") {
  auto ds = testutil::example1();
  auto lay = layout_vars(7, 8, 5, 1, false);
  auto a = assignment_from_nodes(lay, testutil::example1_seven_node_solution());
  REQUIRE(decode(a, lay, ds) == testutil::example1_paper_list());
}

TEST_CASE("decode handles a default-only model and trailing unused nodes") {
  auto ds = testutil::example1();
  auto lay = layout_vars(3, 8, 5, 1, false);
  auto a = assignment_from_nodes(lay, {{6, false}, {0, false}, {0, false}});
  auto dl = decode(a, lay, ds);
  REQUIRE(dl.rules.size() == 1);
  REQUIRE(dl.rules[0].antecedent.empty());
  REQUIRE(dl.rules[0].class_id == 0);
}

TEST_CASE("decode rejects degenerate assignments with the node named") {
  auto ds = testutil::example1();
  auto lay = layout_vars(3, 8, 5, 1, false);
  // Everything unused.
  auto empty = assignment_from_nodes(lay, {{0, false}, {0, false}, {0, false}});
  REQUIRE_THROWS_WITH(decode(empty, lay, ds), Catch::Matchers::ContainsSubstring("empty model"));
  // Node 2 used but selecting nothing.
  auto unselected = assignment_from_nodes(lay, {{6, true}, {0, false}, {0, false}});
  unselected[static_cast<std::size_t>(lay.u(2))] = false;
  REQUIRE_THROWS_WITH(decode(unselected, lay, ds), Catch::Matchers::ContainsSubstring("node 2"));
  // Final used node is a feature, not a leaf.
  auto dangling = assignment_from_nodes(lay, {{6, true}, {1, true}, {0, false}});
  REQUIRE_THROWS_WITH(decode(dangling, lay, ds),
                      Catch::Matchers::ContainsSubstring("not a leaf"));
  // Two selections on one node.
  auto doubled = assignment_from_nodes(lay, {{6, true}, {0, false}, {0, false}});
  doubled[static_cast<std::size_t>(lay.s(1, 1))] = true;
  REQUIRE_THROWS_WITH(decode(doubled, lay, ds),
                      Catch::Matchers::ContainsSubstring("more than one"));
}

TEST_CASE("predict fires the first matching rule") {
  auto dl = testutil::example1_paper_list();
  auto ds = testutil::example1();
  auto p1 = predict(dl, ds.instances[0].features);  // item 1: A=1
  REQUIRE(p1);
  REQUIRE(p1->class_id == 1);
  REQUIRE(p1->rule_index == 0);
  auto p3 = predict(dl, ds.instances[2].features);  // item 3: A=0, B=1
  REQUIRE(p3);
  REQUIRE(p3->class_id == 0);
  REQUIRE(p3->rule_index == 1);
  auto p7 = predict(dl, ds.instances[6].features);  // item 7 falls to the default
  REQUIRE(p7);
  REQUIRE(p7->rule_index == 3);
  REQUIRE(p7->class_id == 0);
}

TEST_CASE("predict abstains without a default and checks widths") {
  auto dl = testutil::example1_paper_list();
  dl.rules.pop_back();  // drop the default
  auto ds = testutil::example1();
  REQUIRE_FALSE(predict(dl, ds.instances[6].features).has_value());
  REQUIRE_THROWS_AS(predict(dl, {1, 0}), Error);
}

TEST_CASE("rule order matters on overlapping antecedents") {
  auto dl = testutil::example1_paper_list();
  auto ds = testutil::example1();
  auto swapped = dl;
  std::swap(swapped.rules[0], swapped.rules[1]);
  // Item 2 has A=1 and B=1: the original list says H, the swapped one ~H.
  REQUIRE(predict(dl, ds.instances[1].features)->class_id == 1);
  REQUIRE(predict(swapped, ds.instances[1].features)->class_id == 0);
}

TEST_CASE("validate_perfect accepts the known lists and counts flips") {
  auto ds = testutil::example1();
  REQUIRE(validate_perfect(testutil::example1_paper_list(), ds).empty());
  REQUIRE(validate_perfect(testutil::example1_minimal_list(), ds).empty());
  REQUIRE(validate_perfect(testutil::example1_separated_list(), ds).empty());

  // Flipping the minimal list's default misclassifies the four items that
  // reach it (items 3, 4, 7, 8 of the table).
  auto flipped = testutil::example1_minimal_list();
  flipped.rules.back().class_id = 1;
  auto violations = validate_perfect(flipped, ds);
  REQUIRE(violations.size() == 4);
  std::vector<int> where;
  for (const auto& v : violations) where.push_back(v.instance);
  REQUIRE(where == std::vector<int>{2, 3, 6, 7});

  // The four-rule list sends only items 7 and 8 to its default.
  auto flipped4 = testutil::example1_paper_list();
  flipped4.rules.back().class_id = 1;
  REQUIRE(validate_perfect(flipped4, ds).size() == 2);
}

TEST_CASE("validate_perfect is vacuous on an empty dataset") {
  auto ds = testutil::example1();
  ds.instances.clear();
  REQUIRE(validate_perfect(testutil::example1_paper_list(), ds).empty());
}

TEST_CASE("unreachable rules behind an early default are flagged") {
  auto dl = testutil::example1_paper_list();
  std::swap(dl.rules[1], dl.rules[3]);  // default now at index 1
  REQUIRE(unreachable_rules(dl) == std::vector<int>{2, 3});
  REQUIRE(unreachable_rules(testutil::example1_paper_list()).empty());
}

TEST_CASE("serialize/deserialize is the identity on the example lists") {
  for (auto dl : {testutil::example1_paper_list(), testutil::example1_minimal_list()}) {
    auto text = serialize_model(dl);
    REQUIRE(deserialize_model(text) == dl);
  }
}

TEST_CASE("model documents are validated on load") {
  auto dl = testutil::example1_paper_list();
  auto text = serialize_model(dl);

  auto bad_feature = text;
  auto pos = bad_feature.rfind("\"A\"");  // the rule's reference, not the name table
  bad_feature.replace(pos, 3, "\"Z\"");
  REQUIRE_THROWS_WITH(deserialize_model(bad_feature),
                      Catch::Matchers::ContainsSubstring("unknown feature 'Z'"));

  REQUIRE_THROWS_AS(deserialize_model("{\"version\": 99}"), ModelIoError);
  REQUIRE_THROWS_AS(deserialize_model("not json"), ModelIoError);
  REQUIRE_THROWS_WITH(
      deserialize_model("{\"version\":1,\"feature_names\":[\"A\"],\"class_names\":[\"x\",\"y\"],"
                        "\"rules\":[]}"),
      Catch::Matchers::ContainsSubstring("empty model"));
  REQUIRE_THROWS_AS(serialize_model(DecisionList{}), ModelIoError);
}

TEST_CASE("text rendering follows the cascade style") {
  auto text = render_text(testutil::example1_paper_list());
  REQUIRE(text ==
          "if A then H\n"
          "else if B then ~H\n"
          "else if C then H\n"
          "else ~H\n");
  auto neg = render_text(testutil::example1_minimal_list());
  REQUIRE(neg ==
          "if A then H\n"
          "else if not B and C then H\n"
          "else ~H\n");
}
