/// @file constraints.hpp
/// Terms, atoms, conjunctive filters, and variable substitutions.
///
/// A term subject is either a variable (node/edge/path/value), a concrete
/// graph element, or a concrete path named by its canonical token. Unknowns
/// are addressed throughout by canonical string keys: "n5.loc" for element
/// properties, "(n5;e6,e7).cost" for path properties, "?x.loc" for variable
/// properties, "?z" for plain value variables.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pathq/graph.hpp"
#include "pathq/value.hpp"

namespace pathq {

enum class VarKind { Value, Node, Edge, Path };

inline const char* var_kind_name(VarKind k) {
  switch (k) {
    case VarKind::Value: return "value";
    case VarKind::Node: return "node";
    case VarKind::Edge: return "edge";
    case VarKind::Path: return "path";
  }
  return "?";
}

enum class TermKind { Lit, Var, Prop, Op };
enum class SubjectKind { Var, Element, Path };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermKind kind;
  Value lit;                 // Lit
  VarKind var_kind{};        // Var, and Prop with Var subject
  std::string name;          // Var: variable name; Prop: subject token; Op: "+","-","*"
  SubjectKind subject{};     // Prop
  PropKey prop;              // Prop
  std::vector<Term> args;    // Op
};

inline Term t_lit(Value v) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Lit;
  n->lit = std::move(v);
  return n;
}
inline Term t_int(long long v) { return t_lit(Value::integer(v)); }
inline Term t_var(std::string name, VarKind k = VarKind::Value) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Var;
  n->name = std::move(name);
  n->var_kind = k;
  return n;
}
inline Term t_prop_var(std::string var, PropKey key, VarKind k) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Prop;
  n->subject = SubjectKind::Var;
  n->name = std::move(var);
  n->var_kind = k;
  n->prop = std::move(key);
  return n;
}
inline Term t_prop_elem(ElemId elem, PropKey key) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Prop;
  n->subject = SubjectKind::Element;
  n->name = std::move(elem);
  n->prop = std::move(key);
  return n;
}
inline Term t_prop_path(const GraphPath& p, PropKey key) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Prop;
  n->subject = SubjectKind::Path;
  n->name = p.token();
  n->prop = std::move(key);
  return n;
}
inline Term t_prop_token(std::string token, PropKey key) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Prop;
  n->subject = SubjectKind::Path;
  n->name = std::move(token);
  n->prop = std::move(key);
  return n;
}
inline Term t_op(std::string op, std::vector<Term> args) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Op;
  n->name = std::move(op);
  n->args = std::move(args);
  return n;
}
inline Term t_add(Term a, Term b) { return t_op("+", {a, b}); }
inline Term t_sub(Term a, Term b) { return t_op("-", {a, b}); }
inline Term t_mul(Term a, Term b) { return t_op("*", {a, b}); }

enum class Pred { Eq, Ne, Lt, Le, Gt, Ge };

inline const char* pred_str(Pred p) {
  switch (p) {
    case Pred::Eq: return "==";
    case Pred::Ne: return "!=";
    case Pred::Lt: return "<";
    case Pred::Le: return "<=";
    case Pred::Gt: return ">";
    case Pred::Ge: return ">=";
  }
  return "?";
}

inline Pred negate_pred(Pred p) {
  switch (p) {
    case Pred::Eq: return Pred::Ne;
    case Pred::Ne: return Pred::Eq;
    case Pred::Lt: return Pred::Ge;
    case Pred::Le: return Pred::Gt;
    case Pred::Gt: return Pred::Le;
    case Pred::Ge: return Pred::Lt;
  }
  return p;
}

struct Atom {
  Pred pred;
  Term lhs;
  Term rhs;
};

/// A conjunction of atoms. Negation is normalized into the predicate at
/// construction time; disjunction is handled by search branching, never
/// inside a filter.
using Filter = std::vector<Atom>;

inline std::string term_str(const Term& t) {
  switch (t->kind) {
    case TermKind::Lit: return t->lit.str();
    case TermKind::Var: return "?" + t->name;
    case TermKind::Prop:
      return (t->subject == SubjectKind::Var ? "?" + t->name : t->name) + "." + t->prop;
    case TermKind::Op: {
      std::string s = "(";
      for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) s += t->name;
        s += term_str(t->args[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

inline std::string atom_str(const Atom& a) {
  return term_str(a.lhs) + " " + pred_str(a.pred) + " " + term_str(a.rhs);
}

/// The canonical constraint-store key denoted by a Var or grounded Prop term.
inline std::string term_key(const Term& t) {
  if (t->kind == TermKind::Var) return "?" + t->name;
  if (t->kind == TermKind::Prop)
    return (t->subject == SubjectKind::Var ? "?" + t->name : t->name) + "." + t->prop;
  throw error("term has no key: " + term_str(t));
}

/// What a variable can be bound to.
struct Binding {
  VarKind kind;
  ElemId elem;       // Node/Edge
  GraphPath path;    // Path
  Value value;       // Value
};

inline Binding bind_elem(VarKind k, ElemId id) {
  Binding b;
  b.kind = k;
  b.elem = std::move(id);
  return b;
}
inline Binding bind_path(GraphPath p) {
  Binding b;
  b.kind = VarKind::Path;
  b.path = std::move(p);
  return b;
}
inline Binding bind_value(Value v) {
  Binding b;
  b.kind = VarKind::Value;
  b.value = std::move(v);
  return b;
}

/// Kind-preserving map from variables to graph elements, paths, or values.
using Substitution = std::map<std::string, Binding>;

/// Textual replacement of bound variables. Property expressions over grounded
/// element subjects are resolved against the graph's property map when the
/// graph is given and the property is present; absent properties stay
/// symbolic as ground element keys.
inline Term apply_substitution(const Term& t, const Substitution& s,
                               const PropertyGraph* g = nullptr) {
  switch (t->kind) {
    case TermKind::Lit: return t;
    case TermKind::Var: {
      auto it = s.find(t->name);
      if (it == s.end()) return t;
      if (it->second.kind != t->var_kind)
        throw error("kind mismatch: " + t->name + " is a " +
                    var_kind_name(t->var_kind) + " variable bound to a " +
                    var_kind_name(it->second.kind));
      if (it->second.kind != VarKind::Value)
        throw error("non-value variable ?" + t->name + " used as a bare term");
      return t_lit(it->second.value);
    }
    case TermKind::Prop: {
      if (t->subject == SubjectKind::Var) {
        auto it = s.find(t->name);
        if (it == s.end()) break;
        const Binding& b = it->second;
        if (b.kind != t->var_kind)
          throw error("kind mismatch: " + t->name + " is a " +
                      var_kind_name(t->var_kind) + " variable bound to a " +
                      var_kind_name(b.kind));
        if (b.kind == VarKind::Path) return t_prop_token(b.path.token(), t->prop);
        if (b.kind == VarKind::Value)
          throw error("value variable ?" + t->name + " has no properties");
        if (g) {
          if (auto v = g->get_property(b.elem, t->prop)) return t_lit(*v);
        }
        return t_prop_elem(b.elem, t->prop);
      }
      if (t->subject == SubjectKind::Element && g) {
        if (auto v = g->get_property(t->name, t->prop)) return t_lit(*v);
      }
      break;
    }
    case TermKind::Op: {
      std::vector<Term> args;
      for (auto& a : t->args) args.push_back(apply_substitution(a, s, g));
      return t_op(t->name, std::move(args));
    }
  }
  return t;
}

inline Atom apply_substitution(const Atom& a, const Substitution& s,
                               const PropertyGraph* g = nullptr) {
  return Atom{a.pred, apply_substitution(a.lhs, s, g), apply_substitution(a.rhs, s, g)};
}

inline Filter apply_substitution(const Filter& f, const Substitution& s,
                                 const PropertyGraph* g = nullptr) {
  Filter out;
  out.reserve(f.size());
  for (auto& a : f) out.push_back(apply_substitution(a, s, g));
  return out;
}

}  // namespace pathq
