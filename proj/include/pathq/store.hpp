/// @file store.hpp
/// Incremental partial constraint solver over canonical string keys.
///
/// The store keeps a set of atoms in a partially solved form and answers two
/// questions: is the set refuted yet, and is some unknown's value entailed.
/// "Consistent" means "not yet refuted" -- nonlinear or otherwise unhandled
/// atoms are suspended and retried as substitutions land, so a consistent
/// store may still be unsatisfiable in principle.
///
/// Machinery, in layers:
///  - ground atoms are evaluated outright (numeric via exact rationals,
///    text equality/order lexicographically);
///  - numeric atoms become linear forms; equalities go to a triangular
///    solved form (Gaussian elimination by key order), inequalities feed
///    interval propagation across the solved form and multi-key relations;
///  - keys marked integral get ceil/floor tightening, and a pinned interval
///    folds back into the solved form;
///  - disequalities become exclusion points (single key) or are rechecked
///    against the solved form (multi key);
///  - equality/disequality over text or boolean unknowns runs on a
///    union-find whose classes may carry one literal.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pathq/constraints.hpp"

namespace pathq {

/// Linear combination of keys plus a constant, all over exact rationals.
struct LinTerm {
  std::map<std::string, Rat> coef;
  Rat cst;

  bool is_const() const { return coef.empty(); }

  void add_key(const std::string& k, const Rat& c) {
    Rat nc = coef.count(k) ? coef[k] + c : c;
    if (nc == Rat(0))
      coef.erase(k);
    else
      coef[k] = nc;
  }
  LinTerm& operator+=(const LinTerm& o) {
    cst = cst + o.cst;
    for (auto& [k, c] : o.coef) add_key(k, c);
    return *this;
  }
  LinTerm& operator-=(const LinTerm& o) {
    cst = cst - o.cst;
    for (auto& [k, c] : o.coef) add_key(k, Rat(0) - c);
    return *this;
  }
  LinTerm& operator*=(const Rat& r) {
    cst = cst * r;
    if (r == Rat(0)) {
      coef.clear();
    } else {
      for (auto& [k, c] : coef) c = c * r;
    }
    return *this;
  }

  std::string str() const {
    std::string s;
    for (auto& [k, c] : coef) {
      if (!s.empty()) s += " + ";
      s += (c == Rat(1) ? "" : c.str() + "*") + k;
    }
    if (coef.empty() || !(cst == Rat(0)))
      s += (s.empty() ? "" : " + ") + cst.str();
    return s;
  }
};

/// Interval plus excluded points for a single key.
struct KeyBounds {
  std::optional<Rat> lo, hi;
  bool lo_strict = false, hi_strict = false;
  std::set<Rat> excl;
};

class ConstraintStore {
 public:
  void mark_integer(const std::string& key) {
    if (integer_keys_.insert(key).second) dirty_ = true;
  }
  bool is_integer(const std::string& key) const { return integer_keys_.count(key) > 0; }

  bool consistent() const { return consistent_; }

  /// Add one atom. Returns the consistency flag afterwards; adding to an
  /// already refuted store is a no-op.
  bool add(const Atom& a) {
    if (!consistent_) return false;
    std::string sig = atom_str(a);
    if (!seen_.insert(sig).second) return consistent_;  // idempotent
    atoms_.push_back(a);
    ingest(a);
    settle();
    return consistent_;
  }

  bool add(const Filter& f) {
    for (auto& a : f)
      if (!add(a)) return false;
    return consistent_;
  }

  /// The value of a key, if the atoms so far pin it down.
  std::optional<Value> entailed(const std::string& key) const {
    auto rep = uf_find(key);
    if (!rep.empty()) {
      auto it = class_lit_.find(rep);
      if (it != class_lit_.end()) return it->second;
    }
    LinTerm t;
    t.add_key(key, Rat(1));
    t = substituted(t);
    if (t.is_const()) return rat_value(t.cst, is_integer(key));
    if (t.coef.size() == 1) {
      auto& [k, c] = *t.coef.begin();
      auto bit = bounds_.find(k);
      if (bit != bounds_.end() && bit->second.lo && bit->second.hi &&
          *bit->second.lo == *bit->second.hi && !bit->second.lo_strict &&
          !bit->second.hi_strict)
        return rat_value(t.cst + c * *bit->second.lo, is_integer(key));
    }
    return std::nullopt;
  }

  /// Entailed numeric bounds for a key (after substitution), closed form.
  std::optional<Rat> lower_bound(const std::string& key) const {
    LinTerm t;
    t.add_key(key, Rat(1));
    t = substituted(t);
    if (t.is_const()) return t.cst;
    if (t.coef.size() != 1) return std::nullopt;
    auto& [k, c] = *t.coef.begin();
    auto it = bounds_.find(k);
    if (it == bounds_.end()) return std::nullopt;
    auto& b = it->second;
    if (c > Rat(0)) {
      if (!b.lo) return std::nullopt;
      return t.cst + c * *b.lo;
    }
    if (!b.hi) return std::nullopt;
    return t.cst + c * *b.hi;
  }
  std::optional<Rat> upper_bound(const std::string& key) const {
    LinTerm t;
    t.add_key(key, Rat(0) - Rat(1));
    t = substituted(t);
    auto neg = lower_bound_of(t);
    if (!neg) return std::nullopt;
    return Rat(0) - *neg;
  }

  /// Every atom ever added, in original form (for display and re-grounding).
  const std::vector<Atom>& atoms() const { return atoms_; }

  /// Human-readable solver state: solved form, intervals, leftovers.
  std::vector<std::string> residual() const {
    std::vector<std::string> out;
    if (!consistent_) {
      out.push_back("inconsistent");
      return out;
    }
    // fully determined keys are answered by entailed(), not reported here
    for (auto& [k, e] : solved_)
      if (!e.is_const()) out.push_back(k + " == " + e.str());
    for (auto& iq : ineqs_)
      out.push_back(iq.t.str() + (iq.strict ? " < 0" : " <= 0"));
    for (auto& [k, b] : bounds_) {
      // a pinned key is fully determined; entailed() answers it
      if (b.lo && b.hi && *b.lo == *b.hi && !b.lo_strict && !b.hi_strict)
        continue;
      std::string s = k + " in ";
      s += b.lo ? (b.lo_strict ? "(" : "[") + b.lo->str() : std::string("(-inf");
      s += ", ";
      s += b.hi ? b.hi->str() + (b.hi_strict ? ")" : "]") : std::string("+inf)");
      out.push_back(s);
      for (auto& x : b.excl) out.push_back(k + " != " + x.str());
    }
    for (auto& t : nes_) out.push_back(t.str() + " != 0");
    for (auto& [k, rep] : uf_parent_) {
      if (k == rep || k.rfind("lit:", 0) == 0) continue;
      out.push_back(k + " ~ " + rep);
    }
    for (auto& a : suspended_) out.push_back("suspended: " + atom_str(a));
    return out;
  }

  size_t suspended_count() const { return suspended_.size(); }

 private:
  struct Ineq {
    LinTerm t;  // t REL 0
    bool strict;
  };

  std::vector<Atom> atoms_;
  std::set<std::string> seen_;
  bool consistent_ = true;
  bool dirty_ = false;

  std::map<std::string, LinTerm> solved_;  // triangular: pivot -> expr
  std::vector<Ineq> ineqs_;                // multi-key relations
  std::map<std::string, KeyBounds> bounds_;
  std::vector<LinTerm> nes_;  // multi-key t != 0
  std::set<std::string> integer_keys_;
  std::vector<Atom> suspended_;

  // Union-find over non-numeric unknowns; literals are nodes "lit:<tag>:<repr>".
  std::map<std::string, std::string> uf_parent_;
  std::map<std::string, Value> class_lit_;
  std::vector<std::pair<std::string, std::string>> uf_diseq_;

  void refute() { consistent_ = false; }

  static std::optional<Value> rat_value(const Rat& r, bool integral) {
    if (r.den() == 1) return Value::integer(r.num());
    if (integral) return std::nullopt;
    return Value::rational(r);
  }

  // ---- term linearization -------------------------------------------------

  std::optional<LinTerm> linearize(const Term& t) const {
    switch (t->kind) {
      case TermKind::Lit:
        if (!t->lit.is_numeric()) return std::nullopt;
        return LinTerm{{}, t->lit.as_rat()};
      case TermKind::Var:
      case TermKind::Prop: {
        LinTerm lt;
        lt.add_key(term_key(t), Rat(1));
        return lt;
      }
      case TermKind::Op: {
        if (t->name == "+" || t->name == "-") {
          LinTerm acc;
          bool first = true;
          for (auto& a : t->args) {
            auto la = linearize(a);
            if (!la) return std::nullopt;
            if (first || t->name == "+")
              acc += *la;
            else
              acc -= *la;
            first = false;
          }
          return acc;
        }
        if (t->name == "*") {
          if (t->args.size() != 2) return std::nullopt;
          auto a = linearize(t->args[0]);
          auto b = linearize(t->args[1]);
          if (!a || !b) return std::nullopt;
          if (a->is_const()) {
            *b *= a->cst;
            return b;
          }
          if (b->is_const()) {
            *a *= b->cst;
            return a;
          }
          return std::nullopt;  // nonlinear
        }
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  static bool has_nonnumeric_lit(const Term& t) {
    if (t->kind == TermKind::Lit) return !t->lit.is_numeric();
    if (t->kind == TermKind::Op)
      for (auto& a : t->args)
        if (has_nonnumeric_lit(a)) return true;
    return false;
  }

  // ---- ingest one atom ----------------------------------------------------

  void ingest(const Atom& a) {
    // Ground atoms first: both sides literal.
    if (a.lhs->kind == TermKind::Lit && a.rhs->kind == TermKind::Lit &&
        eval_ground(a))
      return;

    // Atoms mentioning text/bool literals run on the union-find.
    if (has_nonnumeric_lit(a.lhs) || has_nonnumeric_lit(a.rhs)) {
      ingest_symbolic(a);
      return;
    }

    // A bare (dis)equality between unknowns has no sort yet: feed both the
    // union-find (text/bool reading) and the linear layer (numeric reading).
    bool bare =
        (a.lhs->kind == TermKind::Var || a.lhs->kind == TermKind::Prop) &&
        (a.rhs->kind == TermKind::Var || a.rhs->kind == TermKind::Prop);
    if (bare && (a.pred == Pred::Eq || a.pred == Pred::Ne)) {
      ingest_symbolic(a);
      if (!consistent_) return;
    }

    auto l = linearize(a.lhs);
    auto r = linearize(a.rhs);
    if (!l || !r) {
      suspended_.push_back(a);
      return;
    }
    LinTerm t = *l;
    t -= *r;
    ingest_linear(t, a.pred);
  }

  /// Fully ground comparison; returns true when handled.
  bool eval_ground(const Atom& a) {
    const Value& x = a.lhs->lit;
    const Value& y = a.rhs->lit;
    bool ok;
    if (x.is_numeric() && y.is_numeric()) {
      Rat l = x.as_rat(), r = y.as_rat();
      switch (a.pred) {
        case Pred::Eq: ok = l == r; break;
        case Pred::Ne: ok = !(l == r); break;
        case Pred::Lt: ok = l < r; break;
        case Pred::Le: ok = l <= r; break;
        case Pred::Gt: ok = r < l; break;
        case Pred::Ge: ok = r <= l; break;
      }
    } else if (x.tag() == ValueTag::Text && y.tag() == ValueTag::Text) {
      int c = x.as_text().compare(y.as_text());
      switch (a.pred) {
        case Pred::Eq: ok = c == 0; break;
        case Pred::Ne: ok = c != 0; break;
        case Pred::Lt: ok = c < 0; break;
        case Pred::Le: ok = c <= 0; break;
        case Pred::Gt: ok = c > 0; break;
        case Pred::Ge: ok = c >= 0; break;
      }
    } else {
      // Cross-tag (or boolean) comparisons: only equality is meaningful.
      if (a.pred == Pred::Eq)
        ok = x == y;
      else if (a.pred == Pred::Ne)
        ok = !(x == y);
      else {
        refute();
        return true;
      }
    }
    if (!ok) refute();
    return true;
  }

  // ---- union-find layer ---------------------------------------------------

  static std::string lit_node(const Value& v) {
    return "lit:" + std::to_string(int(v.tag())) + ":" + v.str();
  }

  std::string uf_find(const std::string& k) const {
    auto it = uf_parent_.find(k);
    if (it == uf_parent_.end()) return "";
    std::string cur = k;
    while (true) {
      auto p = uf_parent_.find(cur);
      if (p == uf_parent_.end() || p->second == cur) return cur;
      cur = p->second;
    }
  }

  std::string uf_make(const std::string& k, const Value* lit) {
    auto it = uf_parent_.find(k);
    if (it == uf_parent_.end()) {
      uf_parent_[k] = k;
      if (lit) class_lit_[k] = *lit;
      return k;
    }
    return uf_find(k);
  }

  void uf_union(const std::string& a, const std::string& b) {
    std::string ra = uf_find(a), rb = uf_find(b);
    if (ra == rb) return;
    auto la = class_lit_.find(ra);
    auto lb = class_lit_.find(rb);
    if (la != class_lit_.end() && lb != class_lit_.end() &&
        !(la->second == lb->second)) {
      refute();
      return;
    }
    uf_parent_[ra] = rb;
    if (la != class_lit_.end() && lb == class_lit_.end())
      class_lit_[rb] = la->second;
    // re-check stored disequalities
    for (auto& [x, y] : uf_diseq_)
      if (uf_find(x) == uf_find(y)) {
        refute();
        return;
      }
  }

  std::optional<std::string> symbolic_node(const Term& t) {
    if (t->kind == TermKind::Lit) return uf_make(lit_node(t->lit), &t->lit);
    if (t->kind == TermKind::Var || t->kind == TermKind::Prop)
      return uf_make(term_key(t), nullptr);
    return std::nullopt;
  }

  void ingest_symbolic(const Atom& a) {
    if (a.pred != Pred::Eq && a.pred != Pred::Ne) {
      suspended_.push_back(a);  // order over symbolic text: wait for grounding
      return;
    }
    auto na = symbolic_node(a.lhs);
    auto nb = symbolic_node(a.rhs);
    if (!na || !nb) {
      suspended_.push_back(a);
      return;
    }
    if (a.pred == Pred::Eq) {
      uf_union(*na, *nb);
    } else {
      if (uf_find(*na) == uf_find(*nb)) {
        refute();
        return;
      }
      uf_diseq_.emplace_back(*na, *nb);
    }
  }

  // ---- linear layer -------------------------------------------------------

  LinTerm substituted(LinTerm t) const {
    for (int round = 0; round < 64; ++round) {
      bool changed = false;
      for (auto it = t.coef.begin(); it != t.coef.end();) {
        auto s = solved_.find(it->first);
        if (s == solved_.end()) {
          ++it;
          continue;
        }
        Rat c = it->second;
        it = t.coef.erase(it);
        LinTerm e = s->second;
        e *= c;
        t += e;
        changed = true;
        break;  // iterator invalidated by +=; restart scan
      }
      if (!changed) return t;
    }
    return t;
  }

  std::optional<Rat> lower_bound_of(const LinTerm& t) const {
    // Greatest known lower bound of the linear form under current intervals.
    Rat acc = t.cst;
    for (auto& [k, c] : t.coef) {
      auto it = bounds_.find(k);
      if (it == bounds_.end()) return std::nullopt;
      auto& b = it->second;
      if (c > Rat(0)) {
        if (!b.lo) return std::nullopt;
        acc = acc + c * *b.lo;
      } else {
        if (!b.hi) return std::nullopt;
        acc = acc + c * *b.hi;
      }
    }
    return acc;
  }

  void ingest_linear(LinTerm t, Pred p) {
    t = substituted(t);
    switch (p) {
      case Pred::Eq: add_lin_eq(t); break;
      case Pred::Ne: add_lin_ne(t); break;
      case Pred::Lt: add_lin_le(t, true); break;
      case Pred::Le: add_lin_le(t, false); break;
      case Pred::Gt:
        t *= Rat(0) - Rat(1);
        add_lin_le(t, true);
        break;
      case Pred::Ge:
        t *= Rat(0) - Rat(1);
        add_lin_le(t, false);
        break;
    }
    dirty_ = true;
  }

  void add_lin_eq(LinTerm t) {
    if (t.is_const()) {
      if (!(t.cst == Rat(0))) refute();
      return;
    }
    // Pivot on the lexicographically first key. Keeps elimination stable.
    auto [pk, pc] = *t.coef.begin();
    t.coef.erase(t.coef.begin());
    LinTerm expr = t;
    expr *= Rat(0) - Rat(1) / pc;  // pivot = expr
    solved_[pk] = expr;
    // Substitute the new pivot out of every existing right-hand side.
    for (auto& [k, e] : solved_) {
      if (k == pk) continue;
      auto it = e.coef.find(pk);
      if (it == e.coef.end()) continue;
      Rat c = it->second;
      e.coef.erase(it);
      LinTerm add = expr;
      add *= c;
      e += add;
    }
    for (auto& iq : ineqs_) iq.t = substituted(iq.t);
    for (auto& ne : nes_) ne = substituted(ne);
    // The pivot's own interval and exclusions become constraints on expr.
    auto bit = bounds_.find(pk);
    if (bit != bounds_.end()) {
      KeyBounds kb = bit->second;
      bounds_.erase(bit);
      if (kb.lo) {
        LinTerm u = expr;  // lo REL expr  =>  lo - expr REL 0
        u *= Rat(0) - Rat(1);
        u.cst = u.cst + *kb.lo;
        add_lin_le(u, kb.lo_strict);
      }
      if (kb.hi) {
        LinTerm u = expr;  // expr - hi REL 0
        u.cst = u.cst - *kb.hi;
        add_lin_le(u, kb.hi_strict);
      }
      for (auto& x : kb.excl) {
        LinTerm u = expr;
        u.cst = u.cst - x;
        add_lin_ne(u);
      }
    }
  }

  void add_lin_ne(LinTerm t) {
    t = substituted(t);
    if (t.is_const()) {
      if (t.cst == Rat(0)) refute();
      return;
    }
    if (t.coef.size() == 1) {
      auto& [k, c] = *t.coef.begin();
      Rat point = (Rat(0) - t.cst) / c;
      bounds_[k].excl.insert(point);
      return;
    }
    nes_.push_back(t);
  }

  void add_lin_le(LinTerm t, bool strict) {
    if (t.is_const()) {
      bool ok = strict ? t.cst < Rat(0) : t.cst <= Rat(0);
      if (!ok) refute();
      return;
    }
    if (t.coef.size() == 1) {
      auto& [k, c] = *t.coef.begin();
      Rat bnd = (Rat(0) - t.cst) / c;
      if (c > Rat(0))
        tighten_hi(k, bnd, strict);
      else
        tighten_lo(k, bnd, strict);
      return;
    }
    ineqs_.push_back({t, strict});
  }

  bool tighten_lo(const std::string& k, Rat v, bool strict) {
    if (is_integer(k)) {
      v = strict ? Rat(v.floor() + 1) : Rat(v.ceil());
      strict = false;
    }
    auto& b = bounds_[k];
    bool ch = false;
    if (!b.lo || *b.lo < v || (*b.lo == v && strict && !b.lo_strict)) {
      b.lo = v;
      b.lo_strict = strict;
      ch = true;
    }
    check_interval(k);
    return ch;
  }
  bool tighten_hi(const std::string& k, Rat v, bool strict) {
    if (is_integer(k)) {
      v = strict ? Rat(v.ceil() - 1) : Rat(v.floor());
      strict = false;
    }
    auto& b = bounds_[k];
    bool ch = false;
    if (!b.hi || v < *b.hi || (*b.hi == v && strict && !b.hi_strict)) {
      b.hi = v;
      b.hi_strict = strict;
      ch = true;
    }
    check_interval(k);
    return ch;
  }

  void check_interval(const std::string& k) {
    auto& b = bounds_[k];
    if (b.lo && b.hi) {
      if (*b.hi < *b.lo) {
        refute();
        return;
      }
      if (*b.lo == *b.hi) {
        if (b.lo_strict || b.hi_strict || b.excl.count(*b.lo)) refute();
      }
    }
  }

  // ---- fixpoint -----------------------------------------------------------

  void settle() {
    if (!consistent_) return;
    for (int round = 0; round < 50 && consistent_; ++round) {
      bool changed = false;
      if (propagate_intervals()) changed = true;
      if (tighten_exclusions()) changed = true;
      if (fold_pinned()) changed = true;
      if (recheck_nes()) changed = true;
      if (retry_suspended()) changed = true;
      dirty_ = false;
      if (!changed) break;
    }
  }

  /// Interval propagation across multi-key inequalities and solved
  /// equalities (each equality read as two inequalities).
  bool propagate_intervals() {
    bool changed = false;
    auto relax = [&](const LinTerm& t, bool strict) {
      // t REL 0: for each key derive its implied bound from the others.
      for (auto& [k, c] : t.coef) {
        Rat rest = t.cst;
        bool rest_strict = strict, ok = true;
        for (auto& [k2, c2] : t.coef) {
          if (k2 == k) continue;
          auto it = bounds_.find(k2);
          if (it == bounds_.end()) {
            ok = false;
            break;
          }
          auto& b = it->second;
          if (c2 > Rat(0)) {  // need lower bound of c2*k2
            if (!b.lo) {
              ok = false;
              break;
            }
            rest = rest + c2 * *b.lo;
            rest_strict = rest_strict || b.lo_strict;
          } else {
            if (!b.hi) {
              ok = false;
              break;
            }
            rest = rest + c2 * *b.hi;
            rest_strict = rest_strict || b.hi_strict;
          }
        }
        if (!ok) continue;
        Rat bnd = (Rat(0) - rest) / c;
        if (c > Rat(0)) {
          if (tighten_hi(k, bnd, rest_strict)) changed = true;
        } else {
          if (tighten_lo(k, bnd, rest_strict)) changed = true;
        }
        if (!consistent_) return;
      }
    };
    for (auto& iq : ineqs_) {
      relax(iq.t, iq.strict);
      if (!consistent_) return changed;
    }
    for (auto& [pk, e] : solved_) {
      LinTerm t = e;
      t.add_key(pk, Rat(0) - Rat(1));  // expr - pivot == 0
      relax(t, false);
      if (!consistent_) return changed;
      LinTerm u = t;
      u *= Rat(0) - Rat(1);
      relax(u, false);
      if (!consistent_) return changed;
    }
    return changed;
  }

  /// An exclusion point sitting on a closed bound pushes the bound inward
  /// (by a whole unit for integer keys, to a strict bound otherwise).
  bool tighten_exclusions() {
    bool changed = false;
    for (auto& [k, b] : bounds_) {
      if (b.excl.empty()) continue;
      if (b.lo && !b.lo_strict && b.excl.count(*b.lo)) {
        if (is_integer(k))
          b.lo = *b.lo + Rat(1);
        else
          b.lo_strict = true;
        changed = true;
        check_interval(k);
        if (!consistent_) return true;
      }
      if (b.hi && !b.hi_strict && b.excl.count(*b.hi)) {
        if (is_integer(k))
          b.hi = *b.hi - Rat(1);
        else
          b.hi_strict = true;
        changed = true;
        check_interval(k);
        if (!consistent_) return true;
      }
    }
    return changed;
  }

  /// A key pinned by its interval joins the solved form.
  bool fold_pinned() {
    for (auto& [k, b] : bounds_) {
      if (!b.lo || !b.hi || !(*b.lo == *b.hi) || b.lo_strict || b.hi_strict)
        continue;
      if (solved_.count(k)) continue;
      LinTerm t;
      t.add_key(k, Rat(1));
      t.cst = Rat(0) - *b.lo;
      add_lin_eq(substituted(t));
      return consistent_;
    }
    return false;
  }

  bool recheck_nes() {
    bool changed = false;
    std::vector<LinTerm> keep;
    for (auto& ne : nes_) {
      LinTerm t = substituted(ne);
      if (t.is_const()) {
        if (t.cst == Rat(0)) {
          refute();
          return true;
        }
        changed = true;
      } else if (t.coef.size() == 1) {
        add_lin_ne(t);
        changed = true;
      } else {
        keep.push_back(t);
      }
    }
    nes_ = std::move(keep);
    return changed;
  }

  bool retry_suspended() {
    if (suspended_.empty()) return false;
    bool changed = false;
    std::vector<Atom> keep;
    for (auto& a : suspended_) {
      Atom g{a.pred, resolve(a.lhs), resolve(a.rhs)};
      bool still_stuck;
      if (g.lhs->kind == TermKind::Lit && g.rhs->kind == TermKind::Lit) {
        eval_ground(g);
        still_stuck = false;
      } else if (linearize(g.lhs) && linearize(g.rhs) &&
                 !has_nonnumeric_lit(g.lhs) && !has_nonnumeric_lit(g.rhs)) {
        LinTerm t = *linearize(g.lhs);
        t -= *linearize(g.rhs);
        ingest_linear(t, g.pred);
        still_stuck = false;
      } else {
        keep.push_back(a);
        still_stuck = true;
      }
      if (!still_stuck) changed = true;
      if (!consistent_) return true;
    }
    suspended_ = std::move(keep);
    return changed;
  }

  /// Replace entailed unknowns by their literals inside a term.
  Term resolve(const Term& t) const {
    switch (t->kind) {
      case TermKind::Lit: return t;
      case TermKind::Var:
      case TermKind::Prop: {
        if (auto v = entailed(term_key(t))) return t_lit(*v);
        return t;
      }
      case TermKind::Op: {
        std::vector<Term> args;
        for (auto& a : t->args) args.push_back(resolve(a));
        return t_op(t->name, std::move(args));
      }
    }
    return t;
  }
};

}  // namespace pathq
