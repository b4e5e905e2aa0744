/// Shared test fixtures: the travel graph and its journey definition.
#pragma once

#include <string>

#include "pathq/engine.hpp"
#include "pathq/propdef.hpp"

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "tests/fixtures"
#endif

namespace fixtures {

inline std::string path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

/// The six-city travel graph used throughout: airports and train stations
/// in Barcelona, flights toward London. Same content as fig1.json.
inline pathq::PropertyGraph travel_graph() {
  using namespace pathq;
  auto T = [](const char* s) { return Value::text(s); };
  auto I = [](long long n) { return Value::integer(n); };
  std::vector<PropertyGraph::NodeSpec> ns{
      {"n1", {"Airport"}, {{"loc", T("London")}}},
      {"n2", {"Airport"}, {{"loc", T("Berlin")}}},
      {"n3", {"Airport"}, {{"loc", T("Paris")}}},
      {"n4", {"Airport"}, {{"code", T("BCN")}, {"loc", T("Barcelona")}}},
      {"n5", {"Airport", "TrainSt"}, {{"loc", T("Barcelona")}}},
      {"n6", {"TrainSt"}, {{"loc", T("Barcelona")}}},
  };
  std::vector<PropertyGraph::EdgeSpec> es{
      {"e1", "n6", "n5", {"byTrain"}, {}},
      {"e2", "n2", "n1", {"Flight"},
       {{"id", T("AA010")}, {"price", I(120)}, {"dep", I(600)}, {"arr", I(705)}}},
      {"e3", "n3", "n2", {"Flight"},
       {{"id", T("AA002")}, {"price", I(200)}, {"dep", I(720)}, {"arr", I(810)}}},
      {"e4", "n3", "n4", {"Flight"},
       {{"id", T("AA003")}, {"price", I(180)}, {"dep", I(700)}, {"arr", I(805)}}},
      {"e5", "n5", "n3", {"Flight"},
       {{"id", T("AA001")}, {"price", I(150)}, {"dep", I(600)}, {"arr", I(690)}}},
      {"e6", "n5", "n4", {"Flight"},
       {{"id", T("IB100")}, {"price", I(650)}, {"dep", I(540)}, {"arr", I(900)}}},
      {"e7", "n4", "n1", {"Flight"},
       {{"id", T("AA004")}, {"price", I(300)}, {"dep", I(1020)}, {"arr", I(1260)}}},
      {"e8", "n4", "n1", {"Flight"},
       {{"id", T("IB200")}, {"price", I(400)}, {"dep", I(1050)}, {"arr", I(1290)}}},
  };
  return PropertyGraph(ns, es);
}

/// The three-clause reachability query over the travel graph.
inline pathq::Query travel_query() {
  using namespace pathq;
  Query q;
  q.clauses.push_back(node_clause(
      "x1", "TrainSt",
      {{Pred::Eq, t_prop_var("x1", "loc", VarKind::Node),
        t_lit(Value::text("Barcelona"))}}));
  q.clauses.push_back(edge_clause("x1", "y", "x2", "byTrain"));
  q.clauses.push_back(path_clause(
      "x2", "p", rx_plus(rx_sym("Flight")), "x3", "journey",
      {{Pred::Lt, t_prop_var("p", "cost", VarKind::Path), t_int(1000)},
       {Pred::Eq, t_prop_var("x3", "loc", VarKind::Node),
        t_lit(Value::text("London"))}}));
  return q;
}

inline std::map<std::string, pathq::PropertyDef> travel_defs() {
  return {{"journey", pathq::travel_def()}};
}

}  // namespace fixtures
