/// @file propdef.hpp
/// Constraint-defined path properties.
///
/// A definition names the properties of a path variable p and gives two
/// constraint templates over reserved variables:
///   base  (x -y-> x')           -- a single-edge path
///   step  (x -y-> x'' =p'=> x') -- one edge followed by a shorter path p'
/// Reserved names: nodes x, x', x''; edge y; paths p, p'.
///
/// From the templates we build:
///  - fresh renamings for use inside a derivation (variables get a "$<v><i>"
///    prefix the surface syntax cannot produce, so instances never collide);
///  - the full ground constraint set of a concrete path, by the usual
///    induction on its edge list.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "pathq/constraints.hpp"
#include "pathq/regex.hpp"
#include "pathq/store.hpp"

namespace pathq {

struct PropSpec {
  std::string name;
  bool integral = false;  // values range over integers (e.g. a hop count)
};

struct PropertyDef {
  std::string name;            // identifier of the definition itself
  std::vector<PropSpec> props;
  Filter base;                 // over x, y, x', p
  Filter step;                 // over x, y, x'', x', p, p'
};

/// Variable renaming (keeps kinds). Touches Var terms and Var-subject
/// property terms; map entries are old-name -> new-name.
inline Term rename_vars(const Term& t, const std::map<std::string, std::string>& m) {
  switch (t->kind) {
    case TermKind::Lit: return t;
    case TermKind::Var: {
      auto it = m.find(t->name);
      if (it == m.end()) return t;
      return t_var(it->second, t->var_kind);
    }
    case TermKind::Prop: {
      if (t->subject != SubjectKind::Var) return t;
      auto it = m.find(t->name);
      if (it == m.end()) return t;
      return t_prop_var(it->second, t->prop, t->var_kind);
    }
    case TermKind::Op: {
      std::vector<Term> args;
      for (auto& a : t->args) args.push_back(rename_vars(a, m));
      return t_op(t->name, std::move(args));
    }
  }
  return t;
}

inline Atom rename_vars(const Atom& a, const std::map<std::string, std::string>& m) {
  return Atom{a.pred, rename_vars(a.lhs, m), rename_vars(a.rhs, m)};
}

inline Filter rename_vars(const Filter& f, const std::map<std::string, std::string>& m) {
  Filter out;
  out.reserve(f.size());
  for (auto& a : f) out.push_back(rename_vars(a, m));
  return out;
}

inline std::string fresh_name(const std::string& base, int i) {
  return "$" + base + std::to_string(i);
}

/// Renaming of every reserved variable except the root path p, instance i.
inline std::map<std::string, std::string> fresh_reserved(int i) {
  std::map<std::string, std::string> m;
  for (const char* v : {"x", "x'", "x''", "y", "p'"}) m[v] = fresh_name(v, i);
  return m;
}

/// The base or step template with instance-i fresh variables; the root path
/// variable p is renamed to `root` (a query variable or an earlier fresh p').
inline Filter constr_pu(const PropertyDef& def, bool step, int i,
                        const std::string& root) {
  auto m = fresh_reserved(i);
  m["p"] = root;
  return rename_vars(step ? def.step : def.base, m);
}

/// Ground constraint set of a concrete path: base template on a single edge,
/// otherwise step template on the first edge plus the set of the suffix.
/// Element properties are resolved against the graph where present.
inline Filter constr_path(const PropertyDef& def, const PropertyGraph& g,
                          const GraphPath& path) {
  if (!g.validate_path(path))
    throw error("ill-formed path " + path.token());
  Substitution s;
  const ElemId& e = path.edges.front();
  s["x"] = bind_elem(VarKind::Node, path.source);
  s["y"] = bind_elem(VarKind::Edge, e);
  s["p"] = bind_path(path);
  if (path.edges.size() == 1) {
    s["x'"] = bind_elem(VarKind::Node, path.target);
    return apply_substitution(def.base, s, &g);
  }
  GraphPath suffix{g.tgt(e),
                   {path.edges.begin() + 1, path.edges.end()},
                   path.target};
  s["x''"] = bind_elem(VarKind::Node, suffix.source);
  s["x'"] = bind_elem(VarKind::Node, path.target);
  s["p'"] = bind_path(suffix);
  Filter out = apply_substitution(def.step, s, &g);
  Filter rest = constr_path(def, g, suffix);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

/// Register integral property keys of a path subject with a store.
/// `subject` is either "?var" or a concrete path token.
inline void mark_integer_props(ConstraintStore& st, const PropertyDef& def,
                               const std::string& subject) {
  for (auto& ps : def.props)
    if (ps.integral) st.mark_integer(subject + "." + ps.name);
}

/// A path pattern (x ⇒p:rx⇒ x'): the shape a path clause quantifies over.
struct PathPattern {
  std::string src;   // x
  std::string pvar;  // p
  Regex rx;
  std::string tgt;   // x'
};

/// One unfolding of a path pattern: either the single-edge form
/// (x -y-> x') or the step form (x -y-> x'' =p':rem=> x'), with fresh
/// variables y, x'', p' numbered by `index`.
struct Unfolding {
  bool step;
  std::optional<Label> edge_type;  // empty on the simplified (universal) form
  Regex rem;                       // step form only
  int index;
  std::string y, x3, p2;  // the fresh variables of this unfolding
};

/// All unfoldings of a pattern over an alphabet, with fresh variables
/// numbered from `first_index`. If the pattern is the full one-or-more
/// pattern over the alphabet, the two simplified untyped unfoldings result;
/// otherwise one single-edge unfolding per immediate-completion symbol and
/// one step unfolding per continuation symbol.
inline std::vector<Unfolding> unfold_pattern(const PathPattern& pat,
                                             const std::set<std::string>& alphabet,
                                             int first_index = 1) {
  std::vector<Unfolding> out;
  int i = first_index;
  auto mk = [&](bool step, std::optional<Label> et, Regex rem) {
    Unfolding u;
    u.step = step;
    u.edge_type = std::move(et);
    u.rem = std::move(rem);
    u.index = i;
    u.y = fresh_name("y", i);
    u.x3 = fresh_name("x''", i);
    u.p2 = fresh_name("p'", i);
    ++i;
    out.push_back(std::move(u));
  };
  if (is_universal_plus(pat.rx, alphabet)) {
    mk(false, std::nullopt, {});
    mk(true, std::nullopt, pat.rx);
    return out;
  }
  Decomposition d = decompose(pat.rx, alphabet);  // throws if uninhabited
  for (auto& a : d.s0) mk(false, a, {});
  for (auto& b : d.s1) mk(true, b, d.rem.at(b));
  return out;
}

/// ConstrPU: the matching delta template with the reserved variables renamed
/// onto the pattern's and unfolding's actual variables.
inline Filter constr_pu(const PathPattern& pat, const Unfolding& u,
                        const PropertyDef& def) {
  std::map<std::string, std::string> m{{"x", pat.src}, {"x'", pat.tgt},
                                       {"p", pat.pvar}, {"y", u.y}};
  if (u.step) {
    m["x''"] = u.x3;
    m["p'"] = u.p2;
  }
  return rename_vars(u.step ? def.step : def.base, m);
}

/// The running travel example: length, cost, start of a journey.
inline PropertyDef travel_def() {
  PropertyDef d;
  d.name = "journey";
  d.props = {{"length", true}, {"cost", false}, {"start", false}};
  auto pp = [](const char* k) { return t_prop_var("p", k, VarKind::Path); };
  auto pq = [](const char* k) { return t_prop_var("p'", k, VarKind::Path); };
  auto ey = [](const char* k) { return t_prop_var("y", k, VarKind::Edge); };
  d.base = {
      {Pred::Eq, pp("length"), t_int(1)},
      {Pred::Eq, pp("cost"), ey("price")},
      {Pred::Eq, pp("start"), ey("dep")},
  };
  d.step = {
      {Pred::Eq, pp("length"), t_add(t_int(1), pq("length"))},
      {Pred::Eq, pp("cost"), t_add(ey("price"), pq("cost"))},
      {Pred::Eq, pp("start"), ey("dep")},
      {Pred::Gt, pq("length"), t_int(0)},
      {Pred::Gt, pq("cost"), t_int(0)},
      {Pred::Gt, pq("start"), t_add(ey("arr"), t_int(90))},
  };
  return d;
}

}  // namespace pathq
