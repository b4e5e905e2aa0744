/// @file engine.hpp
/// Query evaluation.
///
/// Two evaluators over the same query AST:
///  - solve(): goal-directed search in the style of constraint logic
///    programming. A state is (remaining clauses, accumulated atoms,
///    partial solver, bindings, open path triples). Rules:
///      (R)  resolve a node or edge clause against one candidate element;
///      (U2) extend an open path by one edge using the step template and a
///           fresh suffix variable, keeping the pattern's remainder;
///      (U1) close an open path with a final edge using the base template.
///    Every rule application re-checks consistency, so refuted branches die
///    before the path is complete.
///  - oracle_solve(): enumerate complete assignments outright (paths by
///    bounded DFS, membership by derivatives), then test the ground
///    constraint set of each assignment. Slow but independent; used as the
///    reference semantics in tests.

#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pathq/graph.hpp"
#include "pathq/propdef.hpp"
#include "pathq/query.hpp"
#include "pathq/regex.hpp"
#include "pathq/store.hpp"

namespace pathq {

enum class PathMode { Any, Simple, Trail };

struct EngineState;

struct SolveOptions {
  PathMode mode = PathMode::Any;
  size_t depth_cap = 64;           // max edges per path (always enforced)
  std::optional<size_t> limit;     // stop after this many answers
  std::optional<double> timeout_s; // wall-clock budget
  bool trace = false;
  bool keep_states = false;        // retain the final state of each answer
  // debug hook: called on every consistent state reached (final or not)
  std::function<void(const EngineState&, bool is_final)> inspect;
};

struct SolveStats {
  size_t states_explored = 0;  // successful rule applications
  size_t pruned = 0;           // applications refuted by the solver
  bool timed_out = false;
  bool hit_limit = false;
  std::vector<std::string> trace;
  std::vector<EngineState> finals;  // filled when keep_states is set
};

/// An answer is the final binding of the query's variables.
struct Answer {
  Substitution m;

  std::string str() const {
    std::string s;
    for (auto& [v, b] : m) {
      if (!s.empty()) s += ", ";
      s += v + " -> ";
      switch (b.kind) {
        case VarKind::Node:
        case VarKind::Edge: s += b.elem; break;
        case VarKind::Path: s += b.path.token(); break;
        case VarKind::Value: s += b.value.str(); break;
      }
    }
    return "{" + s + "}";
  }
  bool operator==(const Answer& o) const { return str() == o.str(); }
  bool operator<(const Answer& o) const { return str() < o.str(); }
};

/// A path clause mid-expansion: edges consumed so far, pattern remainder,
/// and the fresh variable whose properties describe the unexplored suffix.
struct OpenTriple {
  size_t clause;                  // index into the query
  std::string root;               // the clause's path variable
  std::vector<ElemId> edges;
  Regex rem;
  ElemId cur;                     // node the next edge must leave from
  std::string cont;               // root, then the fresh p' of each step
  // fresh suffix variables and the edge offset where their path begins
  std::vector<std::pair<std::string, size_t>> suffix_vars;
};

struct EngineState {
  std::set<size_t> remaining;     // clause indices not yet resolved
  Filter psi;                     // all atoms emitted so far (pre-binding form)
  Substitution m;
  std::vector<OpenTriple> open;
  ConstraintStore store;
  int fresh = 0;
  std::map<std::string, std::string> path_defs;  // path var -> def name
  std::map<std::string, int> pu_count;           // root path var -> template instances
  std::map<std::string, int> pu_atoms;           // root path var -> template atoms emitted
};

class Engine {
 public:
  Engine(const PropertyGraph& g, const Query& q,
         std::map<std::string, PropertyDef> defs)
      : g_(g), q_(q), defs_(std::move(defs)), alphabet_(g.edge_alphabet()) {}

  const PropertyGraph& graph() const { return g_; }
  const Query& query() const { return q_; }

  EngineState initial_state() const {
    EngineState st;
    for (size_t i = 0; i < q_.clauses.size(); ++i) st.remaining.insert(i);
    return st;
  }

  // ---- individual rules (exposed for tests) -------------------------------

  /// (R) on a node or edge clause with one chosen element.
  std::optional<EngineState> apply_R(const EngineState& st, size_t ci,
                                     const ElemId& elem) const {
    const Clause& c = q_.clauses.at(ci);
    if (!st.remaining.count(ci) || c.kind == ClauseKind::Path) return {};
    EngineState nx = st;
    nx.remaining.erase(ci);
    if (c.kind == ClauseKind::Node) {
      if (!g_.has_node(elem)) return {};
      if (c.label && !has_label(elem, *c.label)) return {};
      if (!bind(nx, c.src, bind_elem(VarKind::Node, elem))) return {};
    } else {
      if (!g_.has_edge(elem)) return {};
      if (c.label && !has_label(elem, *c.label)) return {};
      if (!bind(nx, c.var, bind_elem(VarKind::Edge, elem))) return {};
      if (!bind(nx, c.src, bind_elem(VarKind::Node, g_.src(elem)))) return {};
      if (!bind(nx, c.tgt, bind_elem(VarKind::Node, g_.tgt(elem)))) return {};
    }
    emit(nx, c.where);
    reground(nx);  // may refute; callers observe store.consistent()
    return nx;
  }

  /// (U2) extend the (possibly not yet started) path of clause ci by `edge`,
  /// leaving a nonempty remainder.
  std::optional<EngineState> apply_U2(const EngineState& st, size_t ci,
                                      const ElemId& edge) const {
    return apply_U(st, ci, edge, /*closing=*/false);
  }

  /// (U1) close the path of clause ci with final `edge`.
  std::optional<EngineState> apply_U1(const EngineState& st, size_t ci,
                                      const ElemId& edge) const {
    return apply_U(st, ci, edge, /*closing=*/true);
  }

  // ---- search -------------------------------------------------------------

  std::vector<Answer> solve(const SolveOptions& opt, SolveStats* stats = nullptr) const {
    SolveStats local;
    SolveStats& s = stats ? *stats : local;
    s = SolveStats{};
    std::vector<Answer> out;
    std::set<std::string> seen;
    auto deadline = std::chrono::steady_clock::now();
    if (opt.timeout_s)
      deadline += std::chrono::microseconds(
          (long long)(*opt.timeout_s * 1e6));
    EngineState st = initial_state();
    bool ok = true;
    for (size_t i = 0; i < q_.clauses.size() && ok; ++i)
      ok = emit_passive(st, i);
    if (ok && reground(st)) dfs(st, opt, s, deadline, out, seen);
    return out;
  }

  /// Reference evaluator: enumerate full assignments and check the ground
  /// constraint set of each.
  std::vector<Answer> oracle_solve(size_t depth_cap = 8,
                                   PathMode mode = PathMode::Any) const {
    std::vector<Answer> out;
    Substitution m;
    oracle_rec(0, m, depth_cap, mode, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Ground constraint set of a complete assignment: all clause filters plus
  /// the property constraints of each bound path. Returns the loaded store.
  ConstraintStore ground_conditions(const Substitution& m) const {
    ConstraintStore cs;
    for (auto& c : q_.clauses) {
      if (c.kind == ClauseKind::Path) {
        const GraphPath& p = m.at(c.var).path;
        const PropertyDef& def = defs_.at(c.def_name);
        mark_integer_props(cs, def, p.token());
        cs.add(constr_path(def, g_, p));
      }
      cs.add(apply_substitution(c.where, m, &g_));
    }
    return cs;
  }

  /// Does a complete assignment satisfy structure, patterns, and constraints?
  bool check_answer(const Substitution& m, size_t depth_cap = 64) const {
    for (auto& c : q_.clauses) {
      switch (c.kind) {
        case ClauseKind::Node: {
          auto it = m.find(c.src);
          if (it == m.end() || it->second.kind != VarKind::Node) return false;
          if (!g_.has_node(it->second.elem)) return false;
          if (c.label && !has_label(it->second.elem, *c.label)) return false;
          break;
        }
        case ClauseKind::Edge: {
          auto it = m.find(c.var);
          if (it == m.end() || it->second.kind != VarKind::Edge) return false;
          const ElemId& e = it->second.elem;
          if (!g_.has_edge(e)) return false;
          if (c.label && !has_label(e, *c.label)) return false;
          if (m.at(c.src).elem != g_.src(e)) return false;
          if (m.at(c.tgt).elem != g_.tgt(e)) return false;
          break;
        }
        case ClauseKind::Path: {
          auto it = m.find(c.var);
          if (it == m.end() || it->second.kind != VarKind::Path) return false;
          const GraphPath& p = it->second.path;
          if (!g_.validate_path(p)) return false;
          if (p.edges.size() > depth_cap) return false;
          if (m.at(c.src).elem != p.source) return false;
          if (m.at(c.tgt).elem != p.target) return false;
          std::vector<Label> word;
          for (auto& e : p.edges) word.push_back(edge_label(e));
          if (!matches(c.pattern, word)) return false;
          break;
        }
      }
    }
    return ground_conditions(m).consistent();
  }

 private:
  const PropertyGraph& g_;
  const Query& q_;
  std::map<std::string, PropertyDef> defs_;
  std::set<Label> alphabet_;
  mutable std::map<std::string, Decomposition> decomp_cache_;

  bool has_label(const ElemId& e, const Label& l) const {
    return g_.labels(e).count(l) > 0;
  }

  Label edge_label(const ElemId& e) const {
    const auto& ls = g_.labels(e);
    if (ls.size() != 1)
      throw error("edge " + e + " must carry exactly one label");
    return *ls.begin();
  }

  const Decomposition& decompose_cached(const Regex& r) const {
    std::string key = regex_str(r);
    auto it = decomp_cache_.find(key);
    if (it != decomp_cache_.end()) return it->second;
    Decomposition d;
    if (is_universal_plus(r, alphabet_)) {
      // A+ unfolds into itself under every symbol; skip the general
      // construction.
      for (auto& a : alphabet_) {
        d.s0.insert(a);
        d.s1.insert(a);
        d.rem[a] = r;
      }
    } else {
      d = decompose(r, alphabet_);
    }
    return decomp_cache_.emplace(key, std::move(d)).first->second;
  }

  // ---- state plumbing -----------------------------------------------------

  bool bind(EngineState& st, const std::string& var, Binding b) const {
    auto it = st.m.find(var);
    if (it != st.m.end()) {
      // already bound: must agree
      const Binding& o = it->second;
      if (o.kind != b.kind) return false;
      switch (b.kind) {
        case VarKind::Node:
        case VarKind::Edge: return o.elem == b.elem;
        case VarKind::Path: return o.path == b.path;
        case VarKind::Value: return o.value == b.value;
      }
    }
    st.m.emplace(var, std::move(b));
    return true;
  }

  bool emit(EngineState& st, const Filter& f) const {
    st.psi.insert(st.psi.end(), f.begin(), f.end());
    return true;
  }

  /// Clause filters are asserted up front so the partial solver can prune
  /// before the clause itself is resolved.
  bool emit_passive(EngineState& st, size_t ci) const {
    const Clause& c = q_.clauses[ci];
    if (c.kind == ClauseKind::Path) {
      st.path_defs[c.var] = c.def_name;
      if (!defs_.count(c.def_name))
        throw error("unknown property definition: " + c.def_name);
    }
    return emit(st, c.where);
  }

  /// Rebuild the solver from the accumulated atoms under current bindings.
  bool reground(EngineState& st) const {
    ConstraintStore cs;
    for (auto& [v, def_name] : st.path_defs) {
      const PropertyDef& def = defs_.at(def_name);
      mark_integer_props(cs, def, "?" + v);
      auto it = st.m.find(v);
      if (it != st.m.end() && it->second.kind == VarKind::Path)
        mark_integer_props(cs, def, it->second.path.token());
    }
    for (auto& a : st.psi) {
      if (!cs.add(apply_substitution(a, st.m, &g_))) break;
    }
    st.store = std::move(cs);
    return st.store.consistent();
  }

  // ---- unfolding rules ----------------------------------------------------

  std::optional<EngineState> apply_U(const EngineState& st, size_t ci,
                                     const ElemId& edge, bool closing) const {
    const Clause& c = q_.clauses.at(ci);
    if (!st.remaining.count(ci) || c.kind != ClauseKind::Path) return {};
    if (!g_.has_edge(edge)) return {};
    EngineState nx = st;
    OpenTriple* tr = nullptr;
    for (auto& t : nx.open)
      if (t.clause == ci) tr = &t;
    if (!tr) {
      // starting the path: the source must already be a node
      auto it = nx.m.find(c.src);
      if (it == nx.m.end() || it->second.kind != VarKind::Node) return {};
      OpenTriple t;
      t.clause = ci;
      t.root = c.var;
      t.rem = c.pattern;
      t.cur = it->second.elem;
      t.cont = c.var;
      nx.open.push_back(std::move(t));
      tr = &nx.open.back();
    }
    if (g_.src(edge) != tr->cur) return {};
    Label lab = edge_label(edge);
    const Decomposition& d = decompose_cached(tr->rem);
    if (closing ? !d.s0.count(lab) : !d.s1.count(lab)) return {};
    if (!mode_ok(nx, *tr, edge)) return {};

    const PropertyDef& def = defs_.at(c.def_name);
    int i = ++nx.fresh;
    nx.pu_count[tr->root]++;
    Filter pu = constr_pu(def, /*step=*/!closing, i, tr->cont);
    nx.pu_atoms[tr->root] += (int)pu.size();
    // ground the reserved structure variables of this instance
    Substitution gs;
    gs[fresh_name("x", i)] = bind_elem(VarKind::Node, tr->cur);
    gs[fresh_name("y", i)] = bind_elem(VarKind::Edge, edge);
    if (!closing)
      gs[fresh_name("x''", i)] = bind_elem(VarKind::Node, g_.tgt(edge));
    pu = apply_substitution(pu, gs, &g_);
    // x' is the clause's target node variable in either case
    pu = rename_vars(pu, {{fresh_name("x'", i), c.tgt}});

    tr->edges.push_back(edge);
    if (closing) {
      GraphPath full{path_source(*tr), tr->edges, g_.tgt(edge)};
      if (!bind(nx, c.var, bind_path(full))) return {};
      if (!bind(nx, c.tgt, bind_elem(VarKind::Node, full.target))) return {};
      for (auto& [v, off] : tr->suffix_vars) {
        GraphPath suf{node_at(*tr, off),
                      {tr->edges.begin() + off, tr->edges.end()},
                      full.target};
        if (!bind(nx, v, bind_path(suf))) return {};
        nx.path_defs[v] = c.def_name;
      }
      nx.remaining.erase(ci);
      size_t slot = tr - nx.open.data();
      emit(nx, pu);
      nx.open.erase(nx.open.begin() + slot);
      reground(nx);
      return nx;
    }
    std::string pv = fresh_name("p'", i);
    pu = rename_vars(pu, {{fresh_name("p'", i), pv}});
    tr->suffix_vars.emplace_back(pv, tr->edges.size());
    tr->cont = pv;
    tr->cur = g_.tgt(edge);
    tr->rem = d.rem.at(lab);
    nx.path_defs[pv] = c.def_name;
    emit(nx, pu);
    reground(nx);
    return nx;
  }

  ElemId path_source(const OpenTriple& t) const { return g_.src(t.edges.front()); }

  ElemId node_at(const OpenTriple& t, size_t off) const {
    // node reached after consuming `off` edges
    if (off == 0) return path_source(t);
    return g_.tgt(t.edges[off - 1]);
  }

  bool mode_ok(const EngineState&, const OpenTriple& t, const ElemId& edge) const {
    if (t.edges.size() >= cur_opt_->depth_cap) return false;
    if (cur_opt_->mode == PathMode::Trail) {
      for (auto& e : t.edges)
        if (e == edge) return false;
    } else if (cur_opt_->mode == PathMode::Simple) {
      ElemId nxt = g_.tgt(edge);
      ElemId start = t.edges.empty() ? t.cur : path_source(t);
      if (nxt == start) return false;
      for (auto& e : t.edges)
        if (g_.tgt(e) == nxt) return false;
    }
    return true;
  }

  // options visible to rule helpers during a solve; manual rule application
  // uses permissive defaults
  mutable const SolveOptions* cur_opt_ = &default_opt_;
  static inline const SolveOptions default_opt_{};

  // ---- search -------------------------------------------------------------

  void dfs(const EngineState& st, const SolveOptions& opt, SolveStats& s,
           std::chrono::steady_clock::time_point deadline,
           std::vector<Answer>& out, std::set<std::string>& seen) const {
    if (s.timed_out || s.hit_limit) return;
    if (opt.timeout_s &&
        std::chrono::steady_clock::now() >= deadline) {
      s.timed_out = true;
      return;
    }
    cur_opt_ = &opt;
    if (st.remaining.empty()) {
      Answer a{project(st.m)};
      if (seen.insert(a.str()).second) {
        out.push_back(a);
        if (opt.keep_states) s.finals.push_back(st);
        if (opt.inspect) opt.inspect(st, true);
        if (opt.trace) s.trace.push_back("answer " + a.str());
        if (opt.limit && out.size() >= *opt.limit) s.hit_limit = true;
      }
      return;
    }
    // continue an open path first, otherwise the most-bound clause
    size_t ci = SIZE_MAX;
    for (auto& t : st.open)
      if (st.remaining.count(t.clause)) ci = t.clause;
    if (ci == SIZE_MAX) ci = pick_clause(st);
    const Clause& c = q_.clauses[ci];

    auto try_child = [&](const char* rule, std::optional<EngineState> nx) {
      if (!nx || !nx->store.consistent()) {
        s.pruned++;
        return;
      }
      s.states_explored++;
      if (opt.inspect) opt.inspect(*nx, false);
      if (opt.trace)
        s.trace.push_back(std::string(rule) + " " + clause_str(c));
      dfs(*nx, opt, s, deadline, out, seen);
      cur_opt_ = &opt;
    };

    if (c.kind != ClauseKind::Path) {
      for (auto& e : candidates_R(st, c))
        try_child("R", apply_R(st, ci, e));
      return;
    }
    // path clause: source must be bound before the clause can start
    const OpenTriple* tr = nullptr;
    for (auto& t : st.open)
      if (t.clause == ci) tr = &t;
    ElemId cur;
    if (tr) {
      cur = tr->cur;
    } else {
      auto it = st.m.find(c.src);
      if (it == st.m.end()) {
        // bind the source by enumerating nodes, then retry this clause
        for (auto& n : g_.node_ids()) {
          EngineState nx = st;
          if (!bind(nx, c.src, bind_elem(VarKind::Node, n))) continue;
          if (!reground(nx)) {
            s.pruned++;
            continue;
          }
          s.states_explored++;
          dfs(nx, opt, s, deadline, out, seen);
          cur_opt_ = &opt;
          if (s.timed_out || s.hit_limit) return;
        }
        return;
      }
      cur = it->second.elem;
    }
    for (auto& e : g_.out_edges(cur)) {
      try_child("U1", apply_U1(st, ci, e));
      if (s.timed_out || s.hit_limit) return;
      try_child("U2", apply_U2(st, ci, e));
      if (s.timed_out || s.hit_limit) return;
    }
  }

  size_t pick_clause(const EngineState& st) const {
    size_t best = *st.remaining.begin();
    int best_bound = -1;
    for (size_t ci : st.remaining) {
      int b = 0;
      for (auto& v : clause_vars(q_.clauses[ci]))
        if (st.m.count(v)) ++b;
      if (b > best_bound) {
        best_bound = b;
        best = ci;
      }
    }
    return best;
  }

  std::vector<ElemId> candidates_R(const EngineState& st, const Clause& c) const {
    std::vector<ElemId> out;
    if (c.kind == ClauseKind::Node) {
      auto it = st.m.find(c.src);
      if (it != st.m.end()) return {it->second.elem};
      if (c.label) {
        for (auto& id : g_.elements_by_label(*c.label))
          if (g_.has_node(id)) out.push_back(id);
        return out;
      }
      return g_.node_ids();
    }
    auto it = st.m.find(c.var);
    if (it != st.m.end()) return {it->second.elem};
    auto sit = st.m.find(c.src);
    if (sit != st.m.end()) return g_.out_edges(sit->second.elem, c.label);
    if (c.label) {
      for (auto& id : g_.elements_by_label(*c.label))
        if (g_.has_edge(id)) out.push_back(id);
      return out;
    }
    return g_.edge_ids();
  }

  /// Keep only the query's own variables in an answer.
  Substitution project(const Substitution& m) const {
    std::set<std::string> qv;
    for (auto& c : q_.clauses)
      for (auto& v : clause_vars(c)) qv.insert(v);
    Substitution out;
    for (auto& [v, b] : m)
      if (qv.count(v)) out.emplace(v, b);
    return out;
  }

  // ---- oracle -------------------------------------------------------------

  void oracle_rec(size_t ci, Substitution& m, size_t cap, PathMode mode,
                  std::vector<Answer>& out) const {
    if (ci == q_.clauses.size()) {
      if (ground_conditions(m).consistent()) out.push_back(Answer{project(m)});
      return;
    }
    const Clause& c = q_.clauses[ci];
    auto with = [&](std::vector<std::pair<std::string, Binding>> bs) {
      std::vector<std::string> added;
      for (auto& [v, b] : bs) {
        auto it = m.find(v);
        if (it != m.end()) {
          const Binding& o = it->second;
          bool same = o.kind == b.kind &&
                      (b.kind == VarKind::Path ? o.path == b.path
                                               : o.elem == b.elem);
          if (!same) {
            for (auto& a : added) m.erase(a);
            return false;
          }
        } else {
          m.emplace(v, b);
          added.push_back(v);
        }
      }
      oracle_rec(ci + 1, m, cap, mode, out);
      for (auto& a : added) m.erase(a);
      return true;
    };
    switch (c.kind) {
      case ClauseKind::Node:
        for (auto& n : g_.node_ids()) {
          if (c.label && !has_label(n, *c.label)) continue;
          with({{c.src, bind_elem(VarKind::Node, n)}});
        }
        break;
      case ClauseKind::Edge:
        for (auto& e : g_.edge_ids()) {
          if (c.label && !has_label(e, *c.label)) continue;
          with({{c.var, bind_elem(VarKind::Edge, e)},
                {c.src, bind_elem(VarKind::Node, g_.src(e))},
                {c.tgt, bind_elem(VarKind::Node, g_.tgt(e))}});
        }
        break;
      case ClauseKind::Path: {
        for (auto& n : g_.node_ids()) {
          std::vector<ElemId> edges;
          enum_paths(n, n, edges, c, cap, mode, m, out);
        }
        break;
      }
    }
  }

  void enum_paths(const ElemId& start, const ElemId& cur,
                  std::vector<ElemId>& edges, const Clause& c, size_t cap,
                  PathMode mode, Substitution& m,
                  std::vector<Answer>& out) const {
    if (!edges.empty()) {
      std::vector<Label> word;
      for (auto& e : edges) word.push_back(edge_label(e));
      if (matches(c.pattern, word)) {
        GraphPath p{start, edges, cur};
        Substitution saved = m;
        std::vector<std::pair<std::string, Binding>> bs = {
            {c.src, bind_elem(VarKind::Node, start)},
            {c.var, bind_path(p)},
            {c.tgt, bind_elem(VarKind::Node, cur)}};
        bool ok = true;
        std::vector<std::string> added;
        for (auto& [v, b] : bs) {
          auto it = m.find(v);
          if (it != m.end()) {
            const Binding& o = it->second;
            bool same = o.kind == b.kind &&
                        (b.kind == VarKind::Path ? o.path == b.path
                                                 : o.elem == b.elem);
            if (!same) ok = false;
          } else {
            m.emplace(v, b);
            added.push_back(v);
          }
          if (!ok) break;
        }
        if (ok) {
          size_t my_ci = 0;
          for (size_t i = 0; i < q_.clauses.size(); ++i)
            if (&q_.clauses[i] == &c) my_ci = i;
          oracle_rec(my_ci + 1, m, cap, mode, out);
        }
        for (auto& a : added) m.erase(a);
        m = saved;
      }
    }
    if (edges.size() >= cap) return;
    for (auto& e : g_.out_edges(cur)) {
      if (mode == PathMode::Trail &&
          std::find(edges.begin(), edges.end(), e) != edges.end())
        continue;
      if (mode == PathMode::Simple) {
        ElemId nxt = g_.tgt(e);
        bool rep = nxt == start;
        for (auto& pe : edges)
          if (g_.tgt(pe) == nxt) rep = true;
        if (rep) continue;
      }
      edges.push_back(e);
      enum_paths(start, g_.tgt(e), edges, c, cap, mode, m, out);
      edges.pop_back();
    }
  }
};

}  // namespace pathq
