/// @file unit_propdef.cpp
/// Property definitions: unfoldings, template instantiation, path grounding.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "pathq/propdef.hpp"
#include "pathq/store.hpp"

using namespace pathq;

static ConstraintStore load(const PropertyGraph& g, const GraphPath& p) {
  auto def = travel_def();
  ConstraintStore cs;
  mark_integer_props(cs, def, p.token());
  // suffix keys need the integer marks too
  for (size_t i = 1; i < p.edges.size(); ++i) {
    GraphPath suf{g.src(p.edges[i]),
                  {p.edges.begin() + i, p.edges.end()}, p.target};
    mark_integer_props(cs, def, suf.token());
  }
  cs.add(constr_path(def, g, p));
  return cs;
}

TEST_CASE("unfold Flight+ over its own symbol gives the simplified pair") {
  PathPattern pat{"x", "p", rx_plus(rx_sym("Flight")), "x'"};
  auto us = unfold_pattern(pat, {"Flight"});
  REQUIRE(us.size() == 2);
  CHECK_FALSE(us[0].step);
  CHECK(us[1].step);
  CHECK_FALSE(us[0].edge_type.has_value());  // untyped: the simplified form
  CHECK_FALSE(us[1].edge_type.has_value());
  CHECK(remainder_equiv(us[1].rem, rx_plus(rx_sym("Flight"))));
  CHECK(us[0].y != us[1].y);  // fresh per unfolding
}

TEST_CASE("unfold Flight+ over a larger alphabet gives typed unfoldings") {
  PathPattern pat{"x", "p", rx_plus(rx_sym("Flight")), "x'"};
  auto us = unfold_pattern(pat, {"Flight", "byTrain"});
  REQUIRE(us.size() == 2);
  CHECK(us[0].edge_type == Label("Flight"));
  CHECK(us[1].edge_type == Label("Flight"));
  CHECK(us[1].step);
  CHECK(remainder_equiv(us[1].rem, rx_plus(rx_sym("Flight"))));
}

TEST_CASE("unfold the two-branch union yields the four patterns") {
  PathPattern pat{
      "x", "p",
      rx_union(rx_plus(rx_sym("Flight")), rx_plus(rx_sym("byTrain"))), "x'"};
  auto us = unfold_pattern(pat, {"Flight", "byTrain"});
  REQUIRE(us.size() == 4);
  int edges = 0, steps = 0;
  std::set<std::string> types;
  for (auto& u : us) {
    (u.step ? steps : edges)++;
    REQUIRE(u.edge_type.has_value());
    types.insert(*u.edge_type);
    if (u.step && *u.edge_type == "Flight")
      CHECK(remainder_equiv(u.rem, rx_plus(rx_sym("Flight"))));
  }
  CHECK(edges == 2);
  CHECK(steps == 2);
  CHECK(types == std::set<std::string>{"Flight", "byTrain"});
}

TEST_CASE("unfold a single symbol yields one edge unfolding") {
  PathPattern pat{"x", "p", rx_sym("a"), "x'"};
  auto us = unfold_pattern(pat, {"a", "b"});
  REQUIRE(us.size() == 1);
  CHECK_FALSE(us[0].step);
  CHECK(us[0].edge_type == Label("a"));
}

TEST_CASE("unfold rejects the uninhabited pattern") {
  PathPattern pat{"x", "p", rx_empty(), "x'"};
  CHECK_THROWS_WITH(unfold_pattern(pat, {"a"}), "uninhabited pattern");
}

TEST_CASE("constr_pu renames the reserved variables onto the unfolding") {
  auto def = travel_def();
  PathPattern pat{"x1", "p1", rx_plus(rx_sym("Flight")), "x2"};
  auto us = unfold_pattern(pat, {"Flight", "byTrain"});
  Filter base = constr_pu(pat, us[0], def);
  REQUIRE(base.size() == 3);
  std::set<std::string> rendered;
  for (auto& a : base) rendered.insert(atom_str(a));
  CHECK(rendered.count("?p1.length == 1"));
  CHECK(rendered.count("?p1.cost == ?" + us[0].y + ".price"));
  CHECK(rendered.count("?p1.start == ?" + us[0].y + ".dep"));
  Filter step = constr_pu(pat, us[1], def);
  CHECK(step.size() == 6);
  bool gap = false;
  for (auto& a : step)
    if (atom_str(a) ==
        "?" + us[1].p2 + ".start > (?" + us[1].y + ".arr+90)")
      gap = true;
  CHECK(gap);
}

TEST_CASE("constr_pu on an empty delta is empty") {
  PropertyDef d;
  d.name = "empty";
  PathPattern pat{"x", "p", rx_sym("a"), "x'"};
  auto us = unfold_pattern(pat, {"a"});
  CHECK(constr_pu(pat, us[0], d).empty());
}

TEST_CASE("constr_path grounds the single-edge path") {
  auto g = fixtures::travel_graph();
  GraphPath pi{"n4", {"e7"}, "n1"};
  auto cs = load(g, pi);
  CHECK(cs.consistent());
  CHECK(cs.entailed("(n4;e7).length") == Value::integer(1));
  CHECK(cs.entailed("(n4;e7).cost") == Value::integer(300));
  CHECK(cs.entailed("(n4;e7).start") == Value::integer(1020));
}

TEST_CASE("constr_path grounds the two-edge path with the gap check") {
  auto g = fixtures::travel_graph();
  GraphPath pi{"n5", {"e6", "e7"}, "n1"};
  auto cs = load(g, pi);
  CHECK(cs.consistent());  // 1020 > 900 + 90 holds
  CHECK(cs.entailed("(n5;e6,e7).length") == Value::integer(2));
  CHECK(cs.entailed("(n5;e6,e7).cost") == Value::integer(950));
  CHECK(cs.entailed("(n5;e6,e7).start") == Value::integer(540));
}

TEST_CASE("constr_path refutes a too-tight connection") {
  auto g = fixtures::travel_graph();
  GraphPath pi{"n5", {"e5", "e3"}, "n2"};  // e3 departs 720 < 690 + 90
  auto cs = load(g, pi);
  CHECK_FALSE(cs.consistent());
}

TEST_CASE("constr_path rejects ill-formed paths") {
  auto g = fixtures::travel_graph();
  CHECK_THROWS(constr_path(travel_def(), g, {"n5", {"e7"}, "n1"}));
}

TEST_CASE("cardinality: |base| + (k-1)*|step|") {
  auto g = fixtures::travel_graph();
  auto def = travel_def();
  size_t b = def.base.size(), s = def.step.size();
  CHECK(constr_path(def, g, {"n4", {"e7"}, "n1"}).size() == b);
  CHECK(constr_path(def, g, {"n5", {"e6", "e7"}, "n1"}).size() == b + s);
  CHECK(constr_path(def, g, {"n5", {"e5", "e3", "e2"}, "n1"}).size() ==
        b + 2 * s);
}

TEST_CASE("suffix decomposition: tail grounding is shared") {
  auto g = fixtures::travel_graph();
  auto def = travel_def();
  GraphPath pi{"n5", {"e5", "e3", "e2"}, "n1"};
  auto whole = constr_path(def, g, pi);
  GraphPath tail{"n3", {"e3", "e2"}, "n1"};
  auto suffix = constr_path(def, g, tail);
  std::set<std::string> ws;
  for (auto& a : whole) ws.insert(atom_str(a));
  // membership: every suffix atom appears verbatim in the whole set
  for (auto& a : suffix) CHECK(ws.count(atom_str(a)) == 1);
  // the head contributes exactly the remaining step atoms
  CHECK(whole.size() - suffix.size() == def.step.size());
}

TEST_CASE("constr_path is deterministic") {
  auto g = fixtures::travel_graph();
  auto def = travel_def();
  GraphPath pi{"n5", {"e6", "e7"}, "n1"};
  auto a = constr_path(def, g, pi);
  auto b = constr_path(def, g, pi);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    CHECK(atom_str(a[i]) == atom_str(b[i]));
}

TEST_CASE("fresh renaming never collides across instances") {
  auto m1 = fresh_reserved(1);
  auto m2 = fresh_reserved(2);
  for (auto& [k, v] : m1) {
    CHECK(v != m2.at(k));
    CHECK(v.rfind("$", 0) == 0);
  }
}
