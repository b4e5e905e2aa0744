/// @file parse.hpp
/// Concrete syntax: tokenizer, regex / definition / query parsers, and the
/// matching printers (parse . print . parse is identity on the AST).
///
/// Definition files:
///   properties length:int, cost, start on p;
///   case edge: p.length == 1 and p.cost == y.price and p.start == y.dep;
///   case step: ... ;
/// Constraints range over the reserved names x, x', x'', y, p, p'.
///
/// Query files:
///   match (x1:TrainSt) where x1.loc == "Barcelona";
///   match (x1)-[y:byTrain]->(x2);
///   match (x2)=[p:Flight+ with journey]=>(x3) where p.cost < 1000;
/// Regex union is `|`; `+`/`*` are postfix repetition; `.` concatenates
/// (juxtaposition also works).

#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "pathq/propdef.hpp"
#include "pathq/query.hpp"

namespace pathq {

struct QueryDocument {
  Query query;
  std::map<std::string, std::string> def_refs;  // path var -> definition name
};

namespace parse_detail {

struct Token {
  std::string text;
  int line, col;
  bool is_id = false, is_int = false, is_str = false;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace((unsigned char)c)) {
      bump(c);
      ++i;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < src.size() && src[i] != '\n') ++i, ++col;
      continue;
    }
    Token t{"", line, col};
    if (std::isalpha((unsigned char)c) || c == '_') {
      while (i < src.size() &&
             (std::isalnum((unsigned char)src[i]) || src[i] == '_' ||
              src[i] == '\'')) {
        t.text += src[i];
        bump(src[i]);
        ++i;
      }
      t.is_id = true;
    } else if (std::isdigit((unsigned char)c)) {
      while (i < src.size() && std::isdigit((unsigned char)src[i])) {
        t.text += src[i];
        bump(src[i]);
        ++i;
      }
      t.is_int = true;
    } else if (c == '"') {
      bump(c);
      ++i;
      while (i < src.size() && src[i] != '"') {
        if (src[i] == '\n')
          throw error("line " + std::to_string(line) + ": unterminated string");
        t.text += src[i];
        bump(src[i]);
        ++i;
      }
      if (i == src.size())
        throw error("line " + std::to_string(line) + ": unterminated string");
      bump('"');
      ++i;
      t.is_str = true;
    } else {
      static const char* two[] = {"==", "!=", "<=", ">=", "->", "=>"};
      t.text = c;
      for (auto* d : two)
        if (i + 1 < src.size() && c == d[0] && src[i + 1] == d[1]) t.text = d;
      for (char ch : t.text) bump(ch), ++i;
    }
    out.push_back(std::move(t));
  }
  out.push_back({"<eof>", line, col});
  return out;
}

struct Parser {
  std::vector<Token> ts;
  size_t pos = 0;
  // variable kinds in scope (reserved names for defs, clause vars for queries)
  std::map<std::string, VarKind> vars;
  // properties allowed on path variables; empty => unrestricted
  std::set<std::string> path_props;

  explicit Parser(const std::string& src) : ts(lex(src)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = ts[pos < ts.size() ? pos : ts.size() - 1];
    throw error("line " + std::to_string(t.line) + ", col " +
                std::to_string(t.col) + ": " + msg + " (at '" + t.text + "')");
  }
  const Token& peek() const { return ts[pos]; }
  bool at(const std::string& s) const { return ts[pos].text == s && !ts[pos].is_str; }
  bool accept(const std::string& s) {
    if (!at(s)) return false;
    ++pos;
    return true;
  }
  void expect(const std::string& s) {
    if (!accept(s)) fail("expected '" + s + "'");
  }
  std::string ident() {
    if (!peek().is_id) fail("expected identifier");
    return ts[pos++].text;
  }

  // ---- expressions --------------------------------------------------------

  Term primary() {
    const Token& t = peek();
    if (t.is_int) {
      ++pos;
      return t_int(std::stoll(t.text));
    }
    if (t.is_str) {
      ++pos;
      return t_lit(Value::text(t.text));
    }
    if (accept("-")) {
      Term p = primary();
      return t_sub(t_int(0), p);
    }
    if (accept("(")) {
      Term e = add_expr();
      expect(")");
      return e;
    }
    if (t.is_id) {
      if (t.text == "true" || t.text == "false") {
        ++pos;
        return t_lit(Value::boolean(t.text == "true"));
      }
      std::string name = ident();
      auto it = vars.find(name);
      if (it == vars.end()) fail("unknown reserved variable '" + name + "'");
      if (accept(".")) {
        std::string key = ident();
        if (it->second == VarKind::Path && !path_props.empty() &&
            !path_props.count(key))
          fail("property '" + key + "' is not declared for path variables");
        return t_prop_var(name, key, it->second);
      }
      if (it->second != VarKind::Value)
        fail("variable '" + name + "' needs a property selector");
      return t_var(name);
    }
    fail("expected expression");
  }

  Term mul_expr() {
    Term t = primary();
    while (accept("*")) t = t_mul(t, primary());
    return t;
  }

  Term add_expr() {
    Term t = mul_expr();
    while (true) {
      if (accept("+"))
        t = t_add(t, mul_expr());
      else if (accept("-"))
        t = t_sub(t, mul_expr());
      else
        return t;
    }
  }

  Atom comparison() {
    bool neg = false;
    while (accept("not")) neg = !neg;
    Term l = add_expr();
    Pred p;
    if (accept("=="))
      p = Pred::Eq;
    else if (accept("!="))
      p = Pred::Ne;
    else if (accept("<="))
      p = Pred::Le;
    else if (accept(">="))
      p = Pred::Ge;
    else if (accept("<"))
      p = Pred::Lt;
    else if (accept(">"))
      p = Pred::Gt;
    else
      fail("expected comparison operator");
    Term r = add_expr();
    return Atom{neg ? negate_pred(p) : p, l, r};
  }

  /// Conjunction: atoms joined by `and` (or commas).
  Filter conjunction(const std::string& stop) {
    Filter f;
    if (at(stop)) return f;
    f.push_back(comparison());
    while (accept("and") || accept(",")) {
      if (at(stop)) break;
      f.push_back(comparison());
    }
    return f;
  }

  // ---- regex --------------------------------------------------------------

  std::set<std::string> rx_stop;  // ids that end a regex (e.g. "with")

  bool rx_sym_ahead() const {
    return peek().is_id && !rx_stop.count(peek().text);
  }

  Regex rx_primary() {
    if (accept("(")) {
      Regex r = rx_union();
      expect(")");
      return rx_post(r);
    }
    if (rx_sym_ahead()) return rx_post(rx_sym(ident()));
    fail("expected regex symbol");
  }
  Regex rx_post(Regex r) {
    while (true) {
      if (accept("*"))
        r = rx_star(r);
      else if (accept("+"))
        r = rx_plus(r);
      else
        return r;
    }
  }
  Regex rx_concat() {
    Regex r = rx_primary();
    while (rx_sym_ahead() || at("(") || accept("."))
      r = pathq::rx_concat(r, rx_primary());
    return r;
  }
  Regex rx_union() {
    Regex r = rx_concat();
    while (accept("|")) r = pathq::rx_union(r, rx_concat());
    return r;
  }
};

inline std::string print_term(const Term& t) {
  switch (t->kind) {
    case TermKind::Lit: return t->lit.str();
    case TermKind::Var: return t->name;
    case TermKind::Prop:
      return (t->subject == SubjectKind::Var ? t->name : t->name) + "." + t->prop;
    case TermKind::Op: {
      std::string s;
      for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) s += " " + t->name + " ";
        bool paren = t->args[i]->kind == TermKind::Op;
        s += paren ? "(" + print_term(t->args[i]) + ")" : print_term(t->args[i]);
      }
      return s;
    }
  }
  return "?";
}

inline std::string print_filter(const Filter& f) {
  std::string s;
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) s += " and ";
    s += print_term(f[i].lhs) + " " + pred_str(f[i].pred) + " " +
         print_term(f[i].rhs);
  }
  return s;
}

}  // namespace parse_detail

inline Regex parse_regex(const std::string& text) {
  parse_detail::Parser p(text);
  Regex r = p.rx_union();
  if (!p.at("<eof>")) p.fail("trailing input after regex");
  return r;
}

inline PropertyDef parse_defs(const std::string& text) {
  parse_detail::Parser p(text);
  PropertyDef def;
  def.name = "defs";
  p.expect("properties");
  while (true) {
    PropSpec ps;
    ps.name = p.ident();
    if (p.accept(":")) {
      std::string sort = p.ident();
      if (sort == "int")
        ps.integral = true;
      else
        p.fail("unknown property sort '" + sort + "'");
    }
    def.props.push_back(std::move(ps));
    if (!p.accept(",")) break;
  }
  p.expect("on");
  std::string pv = p.ident();
  if (pv != "p") p.fail("the defined path variable must be named p");
  p.expect(";");
  p.vars = {{"x", VarKind::Node},  {"x'", VarKind::Node}, {"x''", VarKind::Node},
            {"y", VarKind::Edge},  {"p", VarKind::Path},  {"p'", VarKind::Path}};
  for (auto& ps : def.props) p.path_props.insert(ps.name);
  for (int i = 0; i < 2; ++i) {
    p.expect("case");
    std::string which = p.ident();
    p.expect(":");
    Filter f = p.conjunction(";");
    p.expect(";");
    if (which == "edge")
      def.base = std::move(f);
    else if (which == "step")
      def.step = std::move(f);
    else
      p.fail("expected case 'edge' or 'step'");
  }
  if (!p.at("<eof>")) p.fail("trailing input after definitions");
  return def;
}

inline QueryDocument parse_query(const std::string& text) {
  parse_detail::Parser p(text);
  QueryDocument doc;
  auto declare = [&](const std::string& v, VarKind k) {
    auto it = p.vars.find(v);
    if (it != p.vars.end()) {
      if (it->second != k)
        p.fail("variable '" + v + "' already used as a " +
               var_kind_name(it->second) + " variable");
      return;
    }
    p.vars.emplace(v, k);
  };
  while (!p.at("<eof>")) {
    p.expect("match");
    p.expect("(");
    std::string src = p.ident();
    declare(src, VarKind::Node);
    std::optional<Label> src_label;
    if (p.accept(":")) src_label = p.ident();
    p.expect(")");
    Clause c;
    if (p.accept("-")) {  // edge clause (x)-[y:L]->(z)
      p.expect("[");
      std::string ev = p.ident();
      declare(ev, VarKind::Edge);
      std::optional<Label> el;
      if (p.accept(":")) el = p.ident();
      p.expect("]");
      p.expect("->");
      p.expect("(");
      std::string tgt = p.ident();
      declare(tgt, VarKind::Node);
      if (p.accept(":")) p.fail("labels belong on a node's own clause");
      p.expect(")");
      c = edge_clause(src, ev, tgt, el);
    } else if (p.accept("=")) {  // path clause (x)=[p:RX with D]=>(z)
      p.expect("[");
      std::string pv = p.ident();
      declare(pv, VarKind::Path);
      p.expect(":");
      p.rx_stop = {"with"};
      Regex rx = p.rx_union();
      p.rx_stop.clear();
      std::string dn;
      if (p.accept("with")) {
        dn = p.ident();
        doc.def_refs[pv] = dn;
      }
      p.expect("]");
      p.expect("=>");
      p.expect("(");
      std::string tgt = p.ident();
      declare(tgt, VarKind::Node);
      p.expect(")");
      c = path_clause(src, pv, rx, tgt, dn);
    } else {
      c = node_clause(src, src_label);
      src_label.reset();
    }
    if (src_label) p.fail("labels belong on a node's own clause");
    if (p.accept("where")) c.where = p.conjunction(";");
    p.expect(";");
    doc.query.clauses.push_back(std::move(c));
  }
  return doc;
}

// ---- printers -------------------------------------------------------------

inline std::string print_defs(const PropertyDef& def) {
  std::string s = "properties ";
  for (size_t i = 0; i < def.props.size(); ++i) {
    if (i) s += ", ";
    s += def.props[i].name + (def.props[i].integral ? ":int" : "");
  }
  s += " on p;\n";
  s += "case edge: " + parse_detail::print_filter(def.base) + ";\n";
  s += "case step: " + parse_detail::print_filter(def.step) + ";\n";
  return s;
}

inline std::string print_query(const QueryDocument& doc) {
  std::string s;
  for (auto& c : doc.query.clauses) {
    s += "match (" + c.src;
    if (c.kind == ClauseKind::Node && c.label) s += ":" + *c.label;
    s += ")";
    if (c.kind == ClauseKind::Edge) {
      s += "-[" + c.var + (c.label ? ":" + *c.label : "") + "]->(" + c.tgt + ")";
    } else if (c.kind == ClauseKind::Path) {
      s += "=[" + c.var + ":" + regex_str(c.pattern);
      auto it = doc.def_refs.find(c.var);
      if (it != doc.def_refs.end()) s += " with " + it->second;
      s += "]=>(" + c.tgt + ")";
    }
    if (!c.where.empty()) s += " where " + parse_detail::print_filter(c.where);
    s += ";\n";
  }
  return s;
}

}  // namespace pathq
