/// @file graph_io.hpp
/// JSON serialization: property graphs and automata.
///
/// Graph document: {"nodes": [{"id","labels","props"}...],
///                  "edges": [{"id","src","tgt","labels","props"}...]}.
/// Property values: integers (times are absolute minutes), strings, bools.
/// Non-integer numbers are rejected.
///
/// Automaton document: state counts per partition, q0, finals, tau0 (null
/// for the unassigned register sentinel), word/data transitions; conditions
/// in prefix notation, e.g. ["and", ["regeq", 1], ["not", ["eq", 3]]].

#pragma once

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "pathq/graph.hpp"
#include "pathq/rdpa.hpp"

namespace pathq {

namespace io_detail {

inline Value value_from_json(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_integer()) return Value::integer(j.get<long long>());
  if (j.is_number())
    throw error(where + ": non-integer number (times are integer minutes)");
  if (j.is_string()) return Value::text(j.get<std::string>());
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  throw error(where + ": unsupported property value");
}

inline nlohmann::json value_to_json(const Value& v) {
  switch (v.tag()) {
    case ValueTag::Int: return v.as_int();
    case ValueTag::Time: return v.as_rat().num();
    case ValueTag::Text: return v.as_text();
    case ValueTag::Bool: return v.as_bool();
    case ValueTag::Rational: return v.str();
  }
  return nullptr;
}

inline std::map<PropKey, Value> props_from_json(const nlohmann::json& j,
                                                const std::string& where) {
  std::map<PropKey, Value> out;
  for (auto& [k, v] : j.items()) out.emplace(k, value_from_json(v, where + "." + k));
  return out;
}

}  // namespace io_detail

inline PropertyGraph graph_from_json(const nlohmann::json& j) {
  using namespace io_detail;
  std::vector<PropertyGraph::NodeSpec> ns;
  std::vector<PropertyGraph::EdgeSpec> es;
  for (auto& n : j.value("nodes", nlohmann::json::array())) {
    PropertyGraph::NodeSpec s;
    s.id = n.at("id").get<std::string>();
    for (auto& l : n.value("labels", nlohmann::json::array()))
      s.labels.insert(l.get<std::string>());
    s.props = props_from_json(n.value("props", nlohmann::json::object()), s.id);
    ns.push_back(std::move(s));
  }
  for (auto& e : j.value("edges", nlohmann::json::array())) {
    PropertyGraph::EdgeSpec s;
    s.id = e.at("id").get<std::string>();
    s.src = e.at("src").get<std::string>();
    s.tgt = e.at("tgt").get<std::string>();
    for (auto& l : e.value("labels", nlohmann::json::array()))
      s.labels.insert(l.get<std::string>());
    s.props = props_from_json(e.value("props", nlohmann::json::object()), s.id);
    es.push_back(std::move(s));
  }
  return PropertyGraph(ns, es);  // structural validation happens here
}

inline nlohmann::json graph_to_json(const PropertyGraph& g) {
  using namespace io_detail;
  nlohmann::json j{{"nodes", nlohmann::json::array()},
                   {"edges", nlohmann::json::array()}};
  for (auto& id : g.node_ids()) {
    nlohmann::json n{{"id", id}, {"labels", g.labels(id)},
                     {"props", nlohmann::json::object()}};
    for (auto& [k, v] : g.props(id)) n["props"][k] = value_to_json(v);
    j["nodes"].push_back(std::move(n));
  }
  for (auto& id : g.edge_ids()) {
    nlohmann::json e{{"id", id}, {"src", g.src(id)}, {"tgt", g.tgt(id)},
                     {"labels", g.labels(id)}, {"props", nlohmann::json::object()}};
    for (auto& [k, v] : g.props(id)) e["props"][k] = value_to_json(v);
    j["edges"].push_back(std::move(e));
  }
  return j;
}

inline PropertyGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return graph_from_json(j);
}

inline void save_graph(const PropertyGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot write " + path);
  out << graph_to_json(g).dump(2) << "\n";
}

// ---- automata -------------------------------------------------------------

inline RdpaCond cond_from_json(const nlohmann::json& j) {
  if (j.is_string() && j.get<std::string>() == "true") return rc_true();
  if (!j.is_array() || j.empty()) throw error("malformed condition");
  std::string op = j.at(0).get<std::string>();
  if (op == "regeq") return rc_regeq(j.at(1).get<int>());
  if (op == "regne") return rc_regne(j.at(1).get<int>());
  if (op == "eq") return rc_eq(j.at(1).get<long long>());
  if (op == "ne") return rc_ne(j.at(1).get<long long>());
  if (op == "not") return rc_not(cond_from_json(j.at(1)));
  if (op == "and" || op == "or") {
    RdpaCond c;
    c.kind = op == "and" ? RdpaCond::And : RdpaCond::Or;
    for (size_t i = 1; i < j.size(); ++i) c.kids.push_back(cond_from_json(j.at(i)));
    return c;
  }
  throw error("unknown condition operator: " + op);
}

inline nlohmann::json cond_to_json(const RdpaCond& c) {
  using nlohmann::json;
  switch (c.kind) {
    case RdpaCond::True: return "true";
    case RdpaCond::RegEq: return json::array({"regeq", c.reg});
    case RdpaCond::RegNe: return json::array({"regne", c.reg});
    case RdpaCond::ConstEq: return json::array({"eq", c.val});
    case RdpaCond::ConstNe: return json::array({"ne", c.val});
    case RdpaCond::Not: return json::array({"not", cond_to_json(c.kids[0])});
    case RdpaCond::And:
    case RdpaCond::Or: {
      json a = json::array({c.kind == RdpaCond::And ? "and" : "or"});
      for (auto& k : c.kids) a.push_back(cond_to_json(k));
      return a;
    }
  }
  return nullptr;
}

inline Rdpa rdpa_from_json(const nlohmann::json& j) {
  Rdpa a;
  a.n_data = j.at("data_states").get<int>();
  a.n_word = j.at("word_states").get<int>();
  a.k = j.at("registers").get<int>();
  a.q0 = j.at("initial").get<int>();
  for (auto& v : j.at("tau0"))
    a.tau0.push_back(v.is_null() ? kBotReg : v.get<long long>());
  for (auto& f : j.at("finals")) a.finals.insert(f.get<int>());
  for (auto& t : j.value("word_transitions", nlohmann::json::array()))
    a.wtr.push_back({t.at("from").get<int>(), t.at("to").get<int>(),
                     t.at("sym").get<std::string>()});
  for (auto& t : j.value("data_transitions", nlohmann::json::array())) {
    Rdpa::DataTr d{t.at("from").get<int>(), t.at("to").get<int>(),
                   cond_from_json(t.at("cond")), {}};
    for (auto& r : t.value("store", nlohmann::json::array()))
      d.store.insert(r.get<int>());
    a.dtr.push_back(std::move(d));
  }
  a.validate();
  return a;
}

inline nlohmann::json rdpa_to_json(const Rdpa& a) {
  using nlohmann::json;
  json j{{"data_states", a.n_data}, {"word_states", a.n_word},
         {"registers", a.k},        {"initial", a.q0},
         {"finals", a.finals},      {"tau0", json::array()},
         {"word_transitions", json::array()},
         {"data_transitions", json::array()}};
  for (auto r : a.tau0)
    j["tau0"].push_back(r == kBotReg ? json(nullptr) : json(r));
  for (auto& t : a.wtr)
    j["word_transitions"].push_back({{"from", t.from}, {"sym", t.sym}, {"to", t.to}});
  for (auto& t : a.dtr)
    j["data_transitions"].push_back({{"from", t.from},
                                     {"cond", cond_to_json(t.cond)},
                                     {"store", t.store},
                                     {"to", t.to}});
  return j;
}

inline Rdpa load_rdpa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return rdpa_from_json(j);
}

}  // namespace pathq
