/// @file regex.hpp
/// Regular expressions over the edge-label alphabet with epsilon-excluded
/// language semantics, Brzozowski derivatives, disjunctive decomposition,
/// and derivative-automaton equivalence.
///
/// The surface grammar has no empty word and no empty language; both appear
/// internally as derivative results. The denoted language of a surface regex
/// is the standard one minus the empty word.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pathq/value.hpp"

namespace pathq {

enum class RegexKind { Empty, Eps, Symbol, Star, Plus, Union, Concat };

struct RegexNode;
using Regex = std::shared_ptr<const RegexNode>;

struct RegexNode {
  RegexKind kind;
  std::string symbol;         // Symbol
  std::vector<Regex> kids;    // Star/Plus: 1, Union/Concat: >= 2 (flattened)
};

namespace regex_detail {

inline int cmp(const Regex& a, const Regex& b);

inline int cmp_vec(const std::vector<Regex>& a, const std::vector<Regex>& b) {
  for (size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (int c = cmp(a[i], b[i])) return c;
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

inline int cmp(const Regex& a, const Regex& b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->kind == RegexKind::Symbol)
    return a->symbol < b->symbol ? -1 : (a->symbol > b->symbol ? 1 : 0);
  return cmp_vec(a->kids, b->kids);
}

}  // namespace regex_detail

inline bool regex_same(const Regex& a, const Regex& b) { return regex_detail::cmp(a, b) == 0; }

inline Regex rx_empty() {
  static Regex e = std::make_shared<RegexNode>(RegexNode{RegexKind::Empty, "", {}});
  return e;
}
inline Regex rx_eps() {
  static Regex e = std::make_shared<RegexNode>(RegexNode{RegexKind::Eps, "", {}});
  return e;
}
inline Regex rx_sym(std::string s) {
  return std::make_shared<RegexNode>(RegexNode{RegexKind::Symbol, std::move(s), {}});
}

inline Regex rx_star(Regex a) {
  if (a->kind == RegexKind::Empty || a->kind == RegexKind::Eps) return rx_eps();
  if (a->kind == RegexKind::Star) return a;
  if (a->kind == RegexKind::Plus) return rx_star(a->kids[0]);
  return std::make_shared<RegexNode>(RegexNode{RegexKind::Star, "", {std::move(a)}});
}

inline Regex rx_plus(Regex a) {
  if (a->kind == RegexKind::Empty) return rx_empty();
  if (a->kind == RegexKind::Eps) return rx_eps();
  if (a->kind == RegexKind::Plus || a->kind == RegexKind::Star) return a;
  return std::make_shared<RegexNode>(RegexNode{RegexKind::Plus, "", {std::move(a)}});
}

/// Union with similarity normalization: flatten, drop empty branches, sort,
/// dedupe. Keeps the derivative-state space finite.
inline Regex rx_union(std::vector<Regex> parts) {
  std::vector<Regex> flat;
  for (auto& p : parts) {
    if (p->kind == RegexKind::Empty) continue;
    if (p->kind == RegexKind::Union)
      flat.insert(flat.end(), p->kids.begin(), p->kids.end());
    else
      flat.push_back(p);
  }
  std::sort(flat.begin(), flat.end(),
            [](const Regex& a, const Regex& b) { return regex_detail::cmp(a, b) < 0; });
  flat.erase(std::unique(flat.begin(), flat.end(),
                         [](const Regex& a, const Regex& b) { return regex_same(a, b); }),
             flat.end());
  if (flat.empty()) return rx_empty();
  if (flat.size() == 1) return flat[0];
  return std::make_shared<RegexNode>(RegexNode{RegexKind::Union, "", std::move(flat)});
}
inline Regex rx_union(Regex a, Regex b) { return rx_union(std::vector<Regex>{a, b}); }

inline Regex rx_concat(std::vector<Regex> parts) {
  std::vector<Regex> flat;
  for (auto& p : parts) {
    if (p->kind == RegexKind::Empty) return rx_empty();
    if (p->kind == RegexKind::Eps) continue;
    if (p->kind == RegexKind::Concat)
      flat.insert(flat.end(), p->kids.begin(), p->kids.end());
    else
      flat.push_back(p);
  }
  if (flat.empty()) return rx_eps();
  if (flat.size() == 1) return flat[0];
  return std::make_shared<RegexNode>(RegexNode{RegexKind::Concat, "", std::move(flat)});
}
inline Regex rx_concat(Regex a, Regex b) { return rx_concat(std::vector<Regex>{a, b}); }

/// True iff the standard language of r contains the empty word.
inline bool nullable(const Regex& r) {
  switch (r->kind) {
    case RegexKind::Empty: return false;
    case RegexKind::Eps: return true;
    case RegexKind::Symbol: return false;
    case RegexKind::Star: return true;
    case RegexKind::Plus: return nullable(r->kids[0]);
    case RegexKind::Union:
      for (auto& k : r->kids)
        if (nullable(k)) return true;
      return false;
    case RegexKind::Concat:
      for (auto& k : r->kids)
        if (!nullable(k)) return false;
      return true;
  }
  return false;
}

/// Brzozowski derivative by one symbol (standard semantics).
inline Regex derivative(const Regex& r, const std::string& a) {
  switch (r->kind) {
    case RegexKind::Empty:
    case RegexKind::Eps:
      return rx_empty();
    case RegexKind::Symbol:
      return r->symbol == a ? rx_eps() : rx_empty();
    case RegexKind::Star:
      return rx_concat(derivative(r->kids[0], a), r);
    case RegexKind::Plus:
      return rx_concat(derivative(r->kids[0], a), rx_star(r->kids[0]));
    case RegexKind::Union: {
      std::vector<Regex> parts;
      for (auto& k : r->kids) parts.push_back(derivative(k, a));
      return rx_union(std::move(parts));
    }
    case RegexKind::Concat: {
      // d(r1 r2...) = d(r1) r2... | [nullable r1] d(r2...)
      std::vector<Regex> tail(r->kids.begin() + 1, r->kids.end());
      Regex rest = rx_concat(tail);
      Regex first = rx_concat(derivative(r->kids[0], a), rest);
      if (nullable(r->kids[0])) return rx_union(first, derivative(rest, a));
      return first;
    }
  }
  return rx_empty();
}

inline void collect_symbols(const Regex& r, std::set<std::string>& out) {
  if (r->kind == RegexKind::Symbol) out.insert(r->symbol);
  for (auto& k : r->kids) collect_symbols(k, out);
}
inline std::set<std::string> symbols_of(const Regex& r) {
  std::set<std::string> out;
  collect_symbols(r, out);
  return out;
}

/// Membership for nonempty words. With |word| >= 1 epsilon exclusion cannot
/// bite, so this is plain derivative membership.
inline bool matches(const Regex& r, const std::vector<std::string>& word) {
  if (word.empty()) throw error("matches requires a nonempty word");
  Regex cur = r;
  for (auto& a : word) cur = derivative(cur, a);
  return nullable(cur);
}

/// Derivative automaton over a fixed alphabet; acceptance of the start state
/// is forced false (epsilon exclusion).
struct DerivAutomaton {
  std::vector<Regex> states;           // state 0 is the start
  std::vector<bool> accepting;         // epsilon-excluded at state 0
  std::vector<std::vector<int>> next;  // [state][symbol index]
  std::vector<std::string> alphabet;
};

inline DerivAutomaton build_automaton(const Regex& r, const std::set<std::string>& alphabet) {
  DerivAutomaton a;
  a.alphabet.assign(alphabet.begin(), alphabet.end());
  // State 0 is a dedicated start whose acceptance is forced false; derivative
  // states never merge with it, or a self-derivative regex would lose its
  // accepting copy.
  auto find_state = [&](const Regex& q) -> int {
    for (size_t i = 1; i < a.states.size(); ++i)
      if (regex_same(a.states[i], q)) return static_cast<int>(i);
    a.states.push_back(q);
    a.accepting.push_back(false);
    a.next.emplace_back(a.alphabet.size(), -1);
    return static_cast<int>(a.states.size()) - 1;
  };
  a.states.push_back(r);
  a.accepting.push_back(false);
  a.next.emplace_back(a.alphabet.size(), -1);
  for (size_t s = 0; s < a.states.size(); ++s) {
    a.accepting[s] = s == 0 ? false : nullable(a.states[s]);
    for (size_t i = 0; i < a.alphabet.size(); ++i) {
      Regex d = derivative(a.states[s], a.alphabet[i]);
      a.next[s][i] = find_state(d);
    }
  }
  return a;
}

/// Language equivalence of two automata over the same alphabet order
/// (Hopcroft-Karp style union-find bisimulation).
inline bool automata_equivalent(const DerivAutomaton& a, const DerivAutomaton& b) {
  // Pair states as (side, index); side 0 = a, side 1 = b.
  auto key = [&](int side, int s) { return side * 1000000 + s; };
  std::map<int, int> parent;
  std::function<int(int)> find = [&](int x) -> int {
    auto it = parent.find(x);
    if (it == parent.end()) { parent[x] = x; return x; }
    if (it->second == x) return x;
    return parent[x] = find(it->second);
  };
  std::vector<std::pair<int, int>> work{{key(0, 0), key(1, 0)}};
  auto accepting = [&](int k) {
    return k >= 1000000 ? b.accepting[k - 1000000] : a.accepting[k];
  };
  auto step = [&](int k, size_t i) {
    return k >= 1000000 ? key(1, b.next[k - 1000000][i]) : key(0, a.next[k][i]);
  };
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    int rx = find(x), ry = find(y);
    if (rx == ry) continue;
    if (accepting(x) != accepting(y)) return false;
    parent[rx] = ry;
    for (size_t i = 0; i < a.alphabet.size(); ++i) work.push_back({step(x, i), step(y, i)});
  }
  return true;
}

/// True iff the epsilon-excluded language of r is nonempty.
inline bool language_nonempty(const Regex& r, const std::set<std::string>& alphabet) {
  DerivAutomaton a = build_automaton(r, alphabet);
  // Any accepting state reachable from the start in >= 1 step.
  std::vector<bool> seen(a.states.size(), false);
  std::vector<int> stack;
  for (size_t i = 0; i < a.alphabet.size(); ++i) stack.push_back(a.next[0][i]);
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    if (seen[s]) continue;
    seen[s] = true;
    if (s != 0 && nullable(a.states[s])) return true;
    if (s == 0 && nullable(a.states[0])) return true;  // start revisited via >=1 step
    for (size_t i = 0; i < a.alphabet.size(); ++i) stack.push_back(a.next[s][i]);
  }
  return false;
}

/// True iff L(a) = L(b) under epsilon exclusion.
inline bool remainder_equiv(const Regex& a, const Regex& b) {
  std::set<std::string> alphabet = symbols_of(a);
  for (auto& s : symbols_of(b)) alphabet.insert(s);
  if (alphabet.empty()) return true;  // both denote the empty language
  return automata_equivalent(build_automaton(a, alphabet), build_automaton(b, alphabet));
}

/// The (S0, S1, rem) factorization L(alpha) = U{a in S0}{a} u U{b in S1} b.L(rem(b)).
struct Decomposition {
  std::set<std::string> s0;
  std::set<std::string> s1;
  std::map<std::string, Regex> rem;
};

inline Decomposition decompose(const Regex& alpha, const std::set<std::string>& alphabet) {
  for (auto& s : symbols_of(alpha))
    if (!alphabet.count(s)) throw error("regex symbol " + s + " outside alphabet");
  if (!language_nonempty(alpha, alphabet)) throw error("uninhabited pattern");
  Decomposition d;
  for (auto& a : alphabet) {
    Regex da = derivative(alpha, a);
    if (nullable(da)) d.s0.insert(a);
    // A derivative accepting only epsilon denotes the empty language here.
    if (language_nonempty(da, alphabet)) {
      d.s1.insert(a);
      d.rem[a] = da;
    }
  }
  return d;
}

/// True iff L(alpha) is all nonempty words over the alphabet.
inline bool is_universal_plus(const Regex& alpha, const std::set<std::string>& alphabet) {
  if (alphabet.empty()) return false;
  std::vector<Regex> syms;
  for (auto& a : alphabet) syms.push_back(rx_sym(a));
  Regex universal = rx_plus(rx_union(std::move(syms)));
  return automata_equivalent(build_automaton(alpha, alphabet),
                             build_automaton(universal, alphabet));
}

/// Round-trippable concrete syntax: `|` union, `.` concat, postfix `*`/`+`.
inline std::string regex_str(const Regex& r) {
  switch (r->kind) {
    case RegexKind::Empty: return "{}";
    case RegexKind::Eps: return "()";
    case RegexKind::Symbol: return r->symbol;
    case RegexKind::Star: return "(" + regex_str(r->kids[0]) + ")*";
    case RegexKind::Plus: return "(" + regex_str(r->kids[0]) + ")+";
    case RegexKind::Union: {
      std::string s;
      for (size_t i = 0; i < r->kids.size(); ++i) {
        if (i) s += "|";
        s += regex_str(r->kids[i]);
      }
      return "(" + s + ")";
    }
    case RegexKind::Concat: {
      std::string s;
      for (size_t i = 0; i < r->kids.size(); ++i) {
        if (i) s += ".";
        s += regex_str(r->kids[i]);
      }
      return "(" + s + ")";
    }
  }
  return "?";
}

}  // namespace pathq
