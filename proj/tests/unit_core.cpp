/// @file unit_core.cpp
/// Values, rationals, and the property-graph model.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "pathq/graph.hpp"
#include "pathq/value.hpp"

using namespace pathq;

TEST_CASE("rational arithmetic is exact and normalized") {
  Rat a(1, 3), b(1, 6);
  CHECK((a + b) == Rat(1, 2));
  CHECK((a - b) == Rat(1, 6));
  CHECK((a * b) == Rat(1, 18));
  CHECK((a / b) == Rat(2));
  CHECK(Rat(4, 8).num() == 1);
  CHECK(Rat(4, 8).den() == 2);
  CHECK(Rat(-3, -9) == Rat(1, 3));
  CHECK(Rat(3, -9).num() == -1);
  CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("rational floor and ceil round toward the right side") {
  CHECK(Rat(7, 2).floor() == 3);
  CHECK(Rat(7, 2).ceil() == 4);
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(Rat(-7, 2).ceil() == -3);
  CHECK(Rat(6).floor() == 6);
  CHECK(Rat(6).ceil() == 6);
}

TEST_CASE("value equality is per-tag and false across tags") {
  CHECK(Value::integer(5) == Value::integer(5));
  CHECK_FALSE(Value::integer(5) == Value::text("5"));
  CHECK_FALSE(Value::integer(540) == Value::time(540));
  CHECK_FALSE(Value::boolean(true) == Value::integer(1));
  CHECK(Value::time(540) == Value::time(540));
  CHECK(Value::rational(Rat(1, 2)) == Value::rational(Rat(2, 4)));
}

TEST_CASE("numeric values unify through as_rat") {
  CHECK(Value::integer(90).as_rat() == Rat(90));
  CHECK(Value::time(540).as_rat() == Rat(540));
  CHECK(Value::rational(Rat(3, 2)).as_rat() == Rat(3, 2));
  CHECK_FALSE(Value::text("x").is_numeric());
  CHECK_THROWS(Value::text("x").as_rat());
}

TEST_CASE("time values reject negatives") {
  CHECK_THROWS(Value::time(-1));
  CHECK(Value::time(0).as_rat() == Rat(0));
}

static PropertyGraph fig() { return fixtures::travel_graph(); }

TEST_CASE("get_property returns stored values") {
  auto g = fig();
  CHECK(g.get_property("e7", "price") == Value::integer(300));
  CHECK(g.get_property("n4", "code") == Value::text("BCN"));
}

TEST_CASE("absent property differs from unknown element") {
  auto g = fig();
  CHECK_FALSE(g.get_property("e7", "gate").has_value());
  CHECK_THROWS_WITH(g.get_property("e99", "price"), "unknown element e99");
}

TEST_CASE("elements_by_label is exact on label text") {
  auto g = fig();
  CHECK(g.elements_by_label("TrainSt") == std::set<ElemId>{"n5", "n6"});
  CHECK(g.elements_by_label("Airport") ==
        std::set<ElemId>{"n1", "n2", "n3", "n4", "n5"});
  CHECK(g.elements_by_label("Harbor").empty());
  CHECK(g.elements_by_label("Flight") ==
        std::set<ElemId>{"e2", "e3", "e4", "e5", "e6", "e7", "e8"});
}

TEST_CASE("elements_by_label agrees with a full scan of labels()") {
  auto g = fig();
  for (const auto& lbl : {"Airport", "TrainSt", "Flight", "byTrain"}) {
    std::set<ElemId> scan;
    for (auto& n : g.node_ids())
      if (g.labels(n).count(lbl)) scan.insert(n);
    for (auto& e : g.edge_ids())
      if (g.labels(e).count(lbl)) scan.insert(e);
    CHECK(g.elements_by_label(lbl) == scan);
  }
}

TEST_CASE("validate_path enforces chaining and endpoints") {
  auto g = fig();
  CHECK(g.validate_path({"n5", {"e6", "e7"}, "n1"}));
  CHECK(g.validate_path({"n4", {"e7"}, "n1"}));
  CHECK_FALSE(g.validate_path({"n5", {"e7"}, "n1"}));  // source mismatch
  CHECK_FALSE(g.validate_path({"n5", {"e6", "e7"}, "n2"}));
  CHECK_FALSE(g.validate_path({"n5", {"e7", "e6"}, "n1"}));  // broken chain
  CHECK_FALSE(g.validate_path({"n5", {}, "n5"}));            // nonempty only
  CHECK_THROWS_WITH(g.validate_path({"n5", {"e42"}, "n1"}),
                    "unknown edge e42 in path");
}

TEST_CASE("out_edges filters by label and sorts") {
  auto g = fig();
  CHECK(g.out_edges("n5", Label("Flight")) ==
        std::vector<ElemId>{"e5", "e6"});
  CHECK(g.out_edges("n1", Label("Flight")).empty());
  CHECK(g.out_edges("n6", std::nullopt) == std::vector<ElemId>{"e1"});
  CHECK_THROWS(g.out_edges("n42", std::nullopt));
  // containment in the label class, src agreement
  for (auto& e : g.out_edges("n5", Label("Flight"))) {
    CHECK(g.elements_by_label("Flight").count(e) == 1);
    CHECK(g.src(e) == "n5");
  }
}

TEST_CASE("construction rejects malformed graphs") {
  using NS = PropertyGraph::NodeSpec;
  using ES = PropertyGraph::EdgeSpec;
  CHECK_THROWS_WITH(PropertyGraph({{"a", {}, {}}, {"a", {}, {}}}, {}),
                    "duplicate node id a");
  CHECK_THROWS_WITH(
      PropertyGraph({NS{"a", {}, {}}}, {ES{"a", "a", "a", {}, {}}}),
      "edge id a collides with a node id");
  CHECK_THROWS_WITH(
      PropertyGraph({NS{"a", {}, {}}}, {ES{"e", "b", "a", {}, {}}}),
      "edge e has dangling src b");
}

TEST_CASE("path token is canonical") {
  GraphPath p{"n5", {"e6", "e7"}, "n1"};
  CHECK(p.token() == "(n5;e6,e7)");
}
