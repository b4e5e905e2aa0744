/// @file unit_engine.cpp
/// Operational semantics: rules, search, modes, and the logical oracle.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "pathq/engine.hpp"

using namespace pathq;

static Engine travel_engine(const PropertyGraph& g, const Query& q) {
  return Engine(g, q, fixtures::travel_defs());
}

TEST_CASE("initial state carries every clause and empty stores") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  auto st = e.initial_state();
  CHECK(st.remaining.size() == 3);
  CHECK(st.m.empty());
  CHECK(st.open.empty());
  CHECK(st.store.consistent());
}

TEST_CASE("rule R on a node clause honors labels and filters") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  auto st = e.initial_state();
  auto ok = e.apply_R(st, 0, "n6");
  REQUIRE(ok.has_value());
  CHECK(ok->store.consistent());
  CHECK(ok->m.at("x1").elem == "n6");
  CHECK_FALSE(ok->remaining.count(0));
  // n1 lacks the TrainSt label: structurally inapplicable
  CHECK_FALSE(e.apply_R(st, 0, "n1").has_value());
  // n5 carries the label and satisfies the filter
  CHECK(e.apply_R(st, 0, "n5").has_value());
}

TEST_CASE("rule R on an edge clause binds endpoints consistently") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  auto st = e.initial_state();
  auto s1 = e.apply_R(st, 0, "n6");
  REQUIRE(s1);
  auto s2 = e.apply_R(*s1, 1, "e1");
  REQUIRE(s2);
  CHECK(s2->m.at("y").elem == "e1");
  CHECK(s2->m.at("x2").elem == "n5");
  // e5 has src n5 which conflicts with x1 = n6
  CHECK_FALSE(e.apply_R(*s1, 1, "e5").has_value());
}

TEST_CASE("U2 then U1 close the e6e7 derivation") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  auto st = e.initial_state();
  st = *e.apply_R(st, 0, "n6");
  st = *e.apply_R(st, 1, "e1");
  auto mid = e.apply_U2(st, 2, "e6");
  REQUIRE(mid);
  CHECK(mid->store.consistent());
  REQUIRE(mid->open.size() == 1);
  CHECK(mid->open[0].edges == std::vector<ElemId>{"e6"});
  CHECK(mid->open[0].cur == "n4");
  auto fin = e.apply_U1(*mid, 2, "e7");
  REQUIRE(fin);
  CHECK(fin->store.consistent());
  CHECK(fin->m.at("p").path.token() == "(n5;e6,e7)");
  CHECK(fin->remaining.empty());
}

TEST_CASE("U2 with the tight e5-e3 continuation is refuted by the store") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  auto st = e.initial_state();
  st = *e.apply_R(st, 0, "n6");
  st = *e.apply_R(st, 1, "e1");
  auto s1 = e.apply_U2(st, 2, "e5");
  REQUIRE(s1);
  CHECK(s1->store.consistent());
  auto s2 = e.apply_U2(*s1, 2, "e3");
  REQUIRE(s2);  // structurally fine, logically refuted
  CHECK_FALSE(s2->store.consistent());
}

TEST_CASE("U rules reject edges that break the chain or the pattern") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  auto st = e.initial_state();
  st = *e.apply_R(st, 0, "n6");
  st = *e.apply_R(st, 1, "e1");
  CHECK_FALSE(e.apply_U1(st, 2, "e1").has_value());  // byTrain not in Flight+
  CHECK_FALSE(e.apply_U2(st, 2, "e7").has_value());  // src n4 != x2 = n5
}

TEST_CASE("solve finds exactly the golden answer on the travel query") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  SolveOptions opt;
  opt.depth_cap = 6;
  auto out = e.solve(opt);
  REQUIRE(out.size() == 1);
  const auto& m = out[0].m;
  CHECK(m.at("x1").elem == "n6");
  CHECK(m.at("x2").elem == "n5");
  CHECK(m.at("x3").elem == "n1");
  CHECK(m.at("y").elem == "e1");
  CHECK(m.at("p").path.token() == "(n5;e6,e7)");
}

TEST_CASE("solve agrees with the oracle on the travel query") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  SolveOptions opt;
  opt.depth_cap = 4;
  auto a = e.solve(opt);
  auto b = e.oracle_solve(4);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("the expensive e6e8 variant is excluded by the cost filter") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  SolveOptions opt;
  opt.depth_cap = 6;
  for (auto& ans : e.solve(opt))
    CHECK(ans.m.at("p").path.token() != "(n5;e6,e8)");
  // and indeed the assignment fails the re-check
  Substitution m{{"x1", bind_elem(VarKind::Node, "n6")},
                 {"x2", bind_elem(VarKind::Node, "n5")},
                 {"x3", bind_elem(VarKind::Node, "n1")},
                 {"y", bind_elem(VarKind::Edge, "e1")},
                 {"p", bind_path({"n5", {"e6", "e8"}, "n1"})}};
  CHECK_FALSE(e.check_answer(m));
}

TEST_CASE("check_answer accepts the golden assignment") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  Substitution m{{"x1", bind_elem(VarKind::Node, "n6")},
                 {"x2", bind_elem(VarKind::Node, "n5")},
                 {"x3", bind_elem(VarKind::Node, "n1")},
                 {"y", bind_elem(VarKind::Edge, "e1")},
                 {"p", bind_path({"n5", {"e6", "e7"}, "n1"})}};
  CHECK(e.check_answer(m));
}

TEST_CASE("oracle with bound 0 finds nothing through path clauses") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  CHECK(e.oracle_solve(0).empty());
}

TEST_CASE("depth cap truncates the search space") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  SolveOptions opt;
  opt.depth_cap = 1;  // golden answer needs two edges
  CHECK(e.solve(opt).empty());
}

TEST_CASE("answer limit stops the stream early") {
  auto g = fixtures::travel_graph();
  Query q;
  q.clauses.push_back(node_clause("x", std::nullopt, {}));
  Engine e(g, q, {});
  SolveOptions opt;
  opt.limit = 2;
  SolveStats st;
  auto out = e.solve(opt, &st);
  CHECK(out.size() == 2);
  CHECK(st.hit_limit);
}

TEST_CASE("simple mode forbids node revisits, trail mode edge revisits") {
  // a two-node cycle a <-> b lets "any" paths loop under the cap
  std::vector<PropertyGraph::NodeSpec> ns{{"a", {"N"}, {}}, {"b", {"N"}, {}}};
  std::vector<PropertyGraph::EdgeSpec> es{
      {"f", "a", "b", {"hop"}, {}},
      {"g", "b", "a", {"hop"}, {}},
  };
  PropertyGraph cyc(ns, es);
  PropertyDef trivial;
  trivial.name = "len";
  trivial.props = {{"length", true}};
  auto pp = t_prop_var("p", "length", VarKind::Path);
  auto qq = t_prop_var("p'", "length", VarKind::Path);
  trivial.base = {{Pred::Eq, pp, t_int(1)}};
  trivial.step = {{Pred::Eq, pp, t_add(t_int(1), qq)},
                  {Pred::Gt, qq, t_int(0)}};
  Query q;
  q.clauses.push_back(
      path_clause("x", "p", rx_plus(rx_sym("hop")), "z", "len", {}));
  Engine e(cyc, q, {{"len", trivial}});
  SolveOptions any;
  any.depth_cap = 4;
  SolveOptions simple = any;
  simple.mode = PathMode::Simple;
  SolveOptions trail = any;
  trail.mode = PathMode::Trail;
  auto na = e.solve(any).size();
  auto ns_ = e.solve(simple).size();
  auto nt = e.solve(trail).size();
  CHECK(na > nt);
  CHECK(nt > ns_);
  // simple: only the two single-edge paths
  CHECK(ns_ == 2);
  // trail: those plus the two full cycles f.g and g.f
  CHECK(nt == 4);
  for (auto& a : e.solve(simple)) {
    const auto& p = a.m.at("p").path;
    CHECK(p.edges.size() == 1);
  }
}

TEST_CASE("duplicate answers from distinct derivations collapse") {
  auto g = fixtures::travel_graph();
  Query q;
  q.clauses.push_back(node_clause("x", "Airport", {}));
  q.clauses.push_back(node_clause("x", "Airport", {}));
  Engine e(g, q, {});
  auto out = e.solve(SolveOptions{});
  CHECK(out.size() == 5);
}

TEST_CASE("timeout surfaces in the stats") {
  auto g = fixtures::travel_graph();
  auto q = fixtures::travel_query();
  Engine e = travel_engine(g, q);
  SolveOptions opt;
  opt.timeout_s = 0.0;  // expire immediately
  SolveStats st;
  e.solve(opt, &st);
  CHECK(st.timed_out);
}
