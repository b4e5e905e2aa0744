/// @file query.hpp
/// Conjunctive query AST: node, edge, and regular-path clauses, each with an
/// optional conjunctive filter.

#pragma once

#include <string>
#include <vector>

#include "pathq/constraints.hpp"
#include "pathq/regex.hpp"

namespace pathq {

enum class ClauseKind { Node, Edge, Path };

struct Clause {
  ClauseKind kind;
  std::string src;       // node variable (Node: the variable itself)
  std::string var;       // Edge: edge variable; Path: path variable
  std::string tgt;       // Edge/Path: target node variable
  std::optional<Label> label;  // Edge label restriction; Node label
  Regex pattern;         // Path only
  std::string def_name;  // Path only: which property definition governs var
  Filter where;
};

inline Clause node_clause(std::string v, std::optional<Label> label = {},
                          Filter where = {}) {
  Clause c;
  c.kind = ClauseKind::Node;
  c.src = std::move(v);
  c.label = std::move(label);
  c.where = std::move(where);
  return c;
}

inline Clause edge_clause(std::string src, std::string edge, std::string tgt,
                          std::optional<Label> label = {}, Filter where = {}) {
  Clause c;
  c.kind = ClauseKind::Edge;
  c.src = std::move(src);
  c.var = std::move(edge);
  c.tgt = std::move(tgt);
  c.label = std::move(label);
  c.where = std::move(where);
  return c;
}

inline Clause path_clause(std::string src, std::string pvar, Regex pattern,
                          std::string tgt, std::string def_name,
                          Filter where = {}) {
  Clause c;
  c.kind = ClauseKind::Path;
  c.src = std::move(src);
  c.var = std::move(pvar);
  c.tgt = std::move(tgt);
  c.pattern = std::move(pattern);
  c.def_name = std::move(def_name);
  c.where = std::move(where);
  return c;
}

struct Query {
  std::vector<Clause> clauses;
};

inline std::string clause_str(const Clause& c) {
  std::string s;
  auto wh = [&] {
    if (c.where.empty()) return;
    s += " where ";
    for (size_t i = 0; i < c.where.size(); ++i) {
      if (i) s += " and ";
      s += atom_str(c.where[i]);
    }
  };
  switch (c.kind) {
    case ClauseKind::Node:
      s = "match (" + c.src + (c.label ? ":" + *c.label : "") + ")";
      break;
    case ClauseKind::Edge:
      s = "match (" + c.src + ")-[" + c.var +
          (c.label ? ":" + *c.label : "") + "]->(" + c.tgt + ")";
      break;
    case ClauseKind::Path:
      s = "match (" + c.src + ")=[" + c.var + ":" + regex_str(c.pattern) +
          (c.def_name.empty() ? "" : " with " + c.def_name) + "]=>(" + c.tgt +
          ")";
      break;
  }
  wh();
  return s + ";";
}

inline std::string query_str(const Query& q) {
  std::string s;
  for (auto& c : q.clauses) {
    if (!s.empty()) s += "\n";
    s += clause_str(c);
  }
  return s;
}

/// Variables of a clause in src, var, tgt order (present ones only).
inline std::vector<std::string> clause_vars(const Clause& c) {
  std::vector<std::string> v{c.src};
  if (c.kind != ClauseKind::Node) {
    v.push_back(c.var);
    v.push_back(c.tgt);
  }
  return v;
}

}  // namespace pathq
