/// @file rdpa.hpp
/// Register data path automata and their constraint-definition counterpart.
///
/// A data path alternates data symbols (small naturals) and word symbols
/// from a finite alphabet: d0 e1 d2 ... e_{n-1} dn. An RDPA alternates
/// between data states (read a datum, test a register condition, store into
/// some registers) and word states (read a symbol).
///
/// The same sequences can be recognized declaratively: a data-path property
/// definition consumes one position per unfolding step, its deltas are
/// top-level disjunctions, and recognition means some branch of the
/// resulting constraint set stays consistent together with a filter Phi.
/// translate() builds the definition simulating a given automaton: the
/// properties are the state and register contents at the start of each
/// suffix, and Phi pins the initial configuration.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pathq/propdef.hpp"
#include "pathq/store.hpp"

namespace pathq {

/// The unassigned-register sentinel: outside the naturals, unequal to every
/// datum.
inline constexpr long long kBotReg = -1;

/// Positions: data symbols as integer values, word symbols as text values.
struct DataPath {
  std::vector<Value> positions;

  size_t size() const { return positions.size(); }
};

/// Well-formedness: starts/ends with data, strict alternation, >= 3 positions.
inline void validate_data_path(const DataPath& w) {
  if (w.size() < 3 || w.size() % 2 == 0)
    throw error("data path needs an odd number of positions, at least 3");
  for (size_t i = 0; i < w.size(); ++i) {
    bool data_pos = i % 2 == 0;
    if (data_pos && w.positions[i].tag() != ValueTag::Int)
      throw error("position " + std::to_string(i) + " must be a datum");
    if (!data_pos && w.positions[i].tag() != ValueTag::Text)
      throw error("position " + std::to_string(i) + " must be a word symbol");
  }
}

struct RdpaCond {
  enum Kind { True, RegEq, RegNe, ConstEq, ConstNe, And, Or, Not } kind = True;
  int reg = 0;        // RegEq/RegNe, 1-based
  long long val = 0;  // ConstEq/ConstNe
  std::vector<RdpaCond> kids;
};

inline RdpaCond rc_true() { return {}; }
inline RdpaCond rc_regeq(int i) { return {RdpaCond::RegEq, i, 0, {}}; }
inline RdpaCond rc_regne(int i) { return {RdpaCond::RegNe, i, 0, {}}; }
inline RdpaCond rc_eq(long long v) { return {RdpaCond::ConstEq, 0, v, {}}; }
inline RdpaCond rc_ne(long long v) { return {RdpaCond::ConstNe, 0, v, {}}; }
inline RdpaCond rc_and(RdpaCond a, RdpaCond b) {
  return {RdpaCond::And, 0, 0, {std::move(a), std::move(b)}};
}
inline RdpaCond rc_or(RdpaCond a, RdpaCond b) {
  return {RdpaCond::Or, 0, 0, {std::move(a), std::move(b)}};
}
inline RdpaCond rc_not(RdpaCond a) { return {RdpaCond::Not, 0, 0, {std::move(a)}}; }

struct Rdpa {
  int n_data = 0;   // data states 0 .. n_data-1
  int n_word = 0;   // word states 0 .. n_word-1
  int k = 0;        // registers, indexed 1 .. k
  int q0 = 0;       // initial data state
  std::vector<long long> tau0;  // size k; kBotReg for unassigned
  std::set<int> finals;         // word states

  struct WordTr { int from, to; std::string sym; };  // word -> data
  struct DataTr {
    int from, to;  // data -> word
    RdpaCond cond;
    std::set<int> store;  // registers overwritten with the datum
  };
  std::vector<WordTr> wtr;
  std::vector<DataTr> dtr;

  void validate() const {
    if ((int)tau0.size() != k) throw error("tau0 must list all k registers");
    for (int f : finals)
      if (f < 0 || f >= n_word) throw error("final state out of range");
    if (q0 < 0 || q0 >= n_data) throw error("initial state out of range");
    for (auto& t : wtr)
      if (t.from < 0 || t.from >= n_word || t.to < 0 || t.to >= n_data)
        throw error("word transition out of range");
    for (auto& t : dtr) {
      if (t.from < 0 || t.from >= n_data || t.to < 0 || t.to >= n_word)
        throw error("data transition out of range");
      for (int r : t.store)
        if (r < 1 || r > k) throw error("register index out of range");
      check_cond(t.cond);
    }
  }

 private:
  void check_cond(const RdpaCond& c) const {
    if ((c.kind == RdpaCond::RegEq || c.kind == RdpaCond::RegNe) &&
        (c.reg < 1 || c.reg > k))
      throw error("condition register index out of range");
    for (auto& kid : c.kids) check_cond(kid);
  }
};

inline bool eval_cond(const RdpaCond& c, const std::vector<long long>& regs,
                      long long v) {
  switch (c.kind) {
    case RdpaCond::True: return true;
    case RdpaCond::RegEq: return regs[c.reg - 1] == v;
    case RdpaCond::RegNe: return regs[c.reg - 1] != v;
    case RdpaCond::ConstEq: return v == c.val;
    case RdpaCond::ConstNe: return v != c.val;
    case RdpaCond::And:
      for (auto& kid : c.kids)
        if (!eval_cond(kid, regs, v)) return false;
      return true;
    case RdpaCond::Or:
      for (auto& kid : c.kids)
        if (eval_cond(kid, regs, v)) return true;
      return false;
    case RdpaCond::Not: return !eval_cond(c.kids[0], regs, v);
  }
  return false;
}

/// Configuration semantics: nondeterministic run over the alternating input.
inline bool accepts(const Rdpa& a, const DataPath& w) {
  validate_data_path(w);
  a.validate();
  // state id space: data state i, word state j after a data read
  struct Cfg { size_t pos; int state; bool in_word; std::vector<long long> regs; };
  std::vector<Cfg> stack{{0, a.q0, false, a.tau0}};
  while (!stack.empty()) {
    Cfg c = std::move(stack.back());
    stack.pop_back();
    if (c.pos == w.size()) {
      if (c.in_word && a.finals.count(c.state)) return true;
      continue;
    }
    const Value& v = w.positions[c.pos];
    if (!c.in_word) {  // data state reads a datum
      long long d = v.as_int();
      for (auto& t : a.dtr) {
        if (t.from != c.state || !eval_cond(t.cond, c.regs, d)) continue;
        Cfg nx{c.pos + 1, t.to, true, c.regs};
        for (int r : t.store) nx.regs[r - 1] = d;
        stack.push_back(std::move(nx));
      }
    } else {  // word state reads a symbol
      const std::string& s = v.as_text();
      for (auto& t : a.wtr) {
        if (t.from != c.state || t.sym != s) continue;
        stack.push_back({c.pos + 1, t.to, false, c.regs});
      }
    }
  }
  return false;
}

/// Data-path property definition: deltas are top-level disjunctions of
/// conjunctions over the value variable x and the path variables p, p'.
/// Unfoldings are u1 = (x) and u2 = (x . p'): one position per step.
struct DataPathDef {
  std::string name;
  std::vector<PropSpec> props;
  std::vector<Filter> base;  // disjuncts over x, p
  std::vector<Filter> step;  // disjuncts over x, p, p'
};

namespace rdpa_detail {

/// Replace path-variable property subjects by suffix tokens and the value
/// variable x by a literal.
inline Term ground_term(const Term& t, const Value& x, const std::string& tp,
                        const std::string& tq) {
  switch (t->kind) {
    case TermKind::Lit: return t;
    case TermKind::Var:
      if (t->name == "x" && t->var_kind == VarKind::Value) return t_lit(x);
      return t;
    case TermKind::Prop:
      if (t->subject == SubjectKind::Var && t->var_kind == VarKind::Path) {
        if (t->name == "p") return t_prop_token(tp, t->prop);
        if (t->name == "p'") return t_prop_token(tq, t->prop);
      }
      return t;
    case TermKind::Op: {
      std::vector<Term> args;
      for (auto& a : t->args) args.push_back(ground_term(a, x, tp, tq));
      return t_op(t->name, std::move(args));
    }
  }
  return t;
}

inline Filter ground_branch(const Filter& f, const Value& x,
                            const std::string& tp, const std::string& tq) {
  Filter out;
  for (auto& a : f)
    out.push_back({a.pred, ground_term(a.lhs, x, tp, tq),
                   ground_term(a.rhs, x, tp, tq)});
  return out;
}

/// Token of the suffix starting at position i. The whole sequence uses the
/// key form of the filter variable w, so Phi's atoms land on the same keys.
inline std::string suffix_token(size_t i) {
  return i == 0 ? "?w" : "$w" + std::to_string(i);
}

inline void mark_ints(ConstraintStore& cs, const DataPathDef& def,
                      const std::string& tok) {
  cs.mark_integer(tok + ".state");
  for (auto& ps : def.props)
    if (ps.integral) cs.mark_integer(tok + "." + ps.name);
}

}  // namespace rdpa_detail

/// Sconstr branch sets: cross each surviving branch with each disjunct of
/// the step delta, position by position, discarding refuted branches
/// eagerly; the last position crosses with the base delta instead.
inline std::vector<ConstraintStore> data_constr(const DataPathDef& def,
                                                const DataPath& w) {
  using namespace rdpa_detail;
  if (w.size() == 0) throw error("empty data path");
  ConstraintStore seed;
  mark_ints(seed, def, suffix_token(0));
  std::vector<ConstraintStore> branches{seed};
  for (size_t i = 0; i < w.size(); ++i) {
    bool last = i + 1 == w.size();
    const auto& disjuncts = last ? def.base : def.step;
    std::vector<ConstraintStore> next;
    for (auto& b : branches) {
      for (auto& dj : disjuncts) {
        ConstraintStore nb = b;
        if (!last) mark_ints(nb, def, suffix_token(i + 1));
        if (nb.add(ground_branch(dj, w.positions[i], suffix_token(i),
                                 suffix_token(i + 1))))
          next.push_back(std::move(nb));
      }
    }
    branches = std::move(next);
    if (branches.empty()) break;
  }
  return branches;
}

/// Ground phi's atoms on the whole-sequence variable w (they already use ?w
/// keys via the variable form).
inline bool recognized(const DataPathDef& def, const Filter& phi,
                       const DataPath& w) {
  for (auto& b : data_constr(def, w)) {
    ConstraintStore cs = b;
    if (cs.add(phi)) return true;
  }
  return false;
}

namespace rdpa_detail {

/// DNF of a condition as atoms over x and the register properties of p.
/// Each inner vector is one conjunct list.
inline std::vector<Filter> cond_dnf(const RdpaCond& c, bool neg) {
  auto x = t_var("x");
  auto preg = [&](int i) {
    return t_prop_var("p", "r" + std::to_string(i), VarKind::Path);
  };
  switch (c.kind) {
    case RdpaCond::True:
      if (!neg) return {Filter{}};
      return {};  // empty disjunction == false
    case RdpaCond::RegEq:
      return {Filter{{neg ? Pred::Ne : Pred::Eq, x, preg(c.reg)}}};
    case RdpaCond::RegNe:
      return {Filter{{neg ? Pred::Eq : Pred::Ne, x, preg(c.reg)}}};
    case RdpaCond::ConstEq:
      return {Filter{{neg ? Pred::Ne : Pred::Eq, x, t_int(c.val)}}};
    case RdpaCond::ConstNe:
      return {Filter{{neg ? Pred::Eq : Pred::Ne, x, t_int(c.val)}}};
    case RdpaCond::And:
    case RdpaCond::Or: {
      bool conj = (c.kind == RdpaCond::And) != neg;  // de Morgan
      std::vector<std::vector<Filter>> kid_dnfs;
      for (auto& kid : c.kids) kid_dnfs.push_back(cond_dnf(kid, neg));
      if (conj) {
        // cross product of the kids' disjuncts
        std::vector<Filter> acc{Filter{}};
        for (auto& kd : kid_dnfs) {
          std::vector<Filter> nx;
          for (auto& a : acc)
            for (auto& b : kd) {
              Filter f = a;
              f.insert(f.end(), b.begin(), b.end());
              nx.push_back(std::move(f));
            }
          acc = std::move(nx);
        }
        return acc;
      }
      std::vector<Filter> acc;
      for (auto& kd : kid_dnfs)
        for (auto& b : kd) acc.push_back(b);
      return acc;
    }
    case RdpaCond::Not: return cond_dnf(c.kids[0], !neg);
  }
  return {};
}

}  // namespace rdpa_detail

/// Theorem-style translation: a definition whose properties are the
/// configuration (state, registers) at the start of each suffix, plus the
/// filter Phi pinning the initial configuration of the whole sequence.
/// State numbering: data state i -> i, word state j -> n_data + j.
inline std::pair<DataPathDef, Filter> translate(const Rdpa& a) {
  a.validate();
  DataPathDef def;
  def.name = "rdpa_sim";
  def.props.push_back({"state", true});
  for (int i = 1; i <= a.k; ++i)
    def.props.push_back({"r" + std::to_string(i), false});
  auto pst = t_prop_var("p", "state", VarKind::Path);
  auto qst = t_prop_var("p'", "state", VarKind::Path);
  auto preg = [](int i) {
    return t_prop_var("p", "r" + std::to_string(i), VarKind::Path);
  };
  auto qreg = [](int i) {
    return t_prop_var("p'", "r" + std::to_string(i), VarKind::Path);
  };
  auto x = t_var("x");
  int wbase = a.n_data;

  // step disjuncts: one per (transition, condition-DNF conjunct)
  for (auto& t : a.dtr) {
    for (auto& conj : rdpa_detail::cond_dnf(t.cond, false)) {
      Filter f{{Pred::Eq, pst, t_int(t.from)},
               {Pred::Eq, qst, t_int(wbase + t.to)}};
      f.insert(f.end(), conj.begin(), conj.end());
      for (int r = 1; r <= a.k; ++r)
        f.push_back(t.store.count(r) ? Atom{Pred::Eq, qreg(r), x}
                                     : Atom{Pred::Eq, qreg(r), preg(r)});
      def.step.push_back(std::move(f));
    }
  }
  for (auto& t : a.wtr) {
    Filter f{{Pred::Eq, pst, t_int(wbase + t.from)},
             {Pred::Eq, x, t_lit(Value::text(t.sym))},
             {Pred::Eq, qst, t_int(t.to)}};
    for (int r = 1; r <= a.k; ++r)
      f.push_back({Pred::Eq, qreg(r), preg(r)});
    def.step.push_back(std::move(f));
  }
  // base disjuncts: final data transitions only
  for (auto& t : a.dtr) {
    if (!a.finals.count(t.to)) continue;
    for (auto& conj : rdpa_detail::cond_dnf(t.cond, false)) {
      Filter f{{Pred::Eq, pst, t_int(t.from)}};
      f.insert(f.end(), conj.begin(), conj.end());
      def.base.push_back(std::move(f));
    }
  }

  Filter phi{{Pred::Eq, t_prop_var("w", "state", VarKind::Path), t_int(a.q0)}};
  for (int r = 1; r <= a.k; ++r)
    phi.push_back({Pred::Eq,
                   t_prop_var("w", "r" + std::to_string(r), VarKind::Path),
                   t_int(a.tau0[r - 1])});
  return {std::move(def), std::move(phi)};
}

/// The hand-built one-register automaton: store d0, accept d0 a d0-equal.
inline Rdpa a_eq() {
  Rdpa a;
  a.n_data = 2;
  a.n_word = 2;
  a.k = 1;
  a.q0 = 0;
  a.tau0 = {kBotReg};
  a.finals = {1};
  a.dtr.push_back({0, 0, rc_true(), {1}});   // store the first datum
  a.wtr.push_back({0, 1, "a"});
  a.dtr.push_back({1, 1, rc_regeq(1), {}});  // accept if equal to register 1
  a.wtr.push_back({1, 0, "a"});              // loop for longer sequences
  return a;
}

/// The counting definition an automaton cannot match: length counts data
/// positions (all forced to 0 except the last), last carries the final
/// datum; with Phi = {w.last == w.length} only 0 e 0 ... e d with
/// d = word-symbol count + 1 survive.
inline DataPathDef length_last_def() {
  DataPathDef d;
  d.name = "length_last";
  d.props = {{"length", true}, {"last", false}};
  auto plen = t_prop_var("p", "length", VarKind::Path);
  auto plast = t_prop_var("p", "last", VarKind::Path);
  auto qlen = t_prop_var("p'", "length", VarKind::Path);
  auto qlast = t_prop_var("p'", "last", VarKind::Path);
  auto x = t_var("x");
  d.base = {Filter{{Pred::Eq, plen, t_int(1)}, {Pred::Eq, plast, x}}};
  d.step = {
      // data position: must be 0, counts one
      Filter{{Pred::Eq, x, t_int(0)},
             {Pred::Eq, plen, t_add(t_int(1), qlen)},
             {Pred::Eq, plast, qlast},
             {Pred::Gt, qlen, t_int(0)}},
      // word position: transparent
      Filter{{Pred::Eq, x, t_lit(Value::text("e"))},
             {Pred::Eq, plen, qlen},
             {Pred::Eq, plast, qlast},
             {Pred::Gt, qlen, t_int(0)}},
  };
  return d;
}

inline Filter length_last_phi() {
  return {{Pred::Eq, t_prop_var("w", "last", VarKind::Path),
           t_prop_var("w", "length", VarKind::Path)}};
}

}  // namespace pathq
