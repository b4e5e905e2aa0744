/// Command-line front end: query evaluation, benchmark harness, automaton
/// translation check, file validation.
///
/// Exit codes: 0 success, 1 validation/usage error, 2 timeout-truncated
/// output.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pathq/bench.hpp"
#include "pathq/engine.hpp"
#include "pathq/graph_io.hpp"
#include "pathq/parse.hpp"

#include <nlohmann/json.hpp>

using namespace pathq;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_query(const std::string& graph_path, const std::string& defs_path,
              const std::string& query_path, const std::string& mode,
              std::optional<size_t> limit, std::optional<double> timeout,
              size_t depth_cap, const std::string& format) {
  PropertyGraph g = load_graph(graph_path);
  PropertyDef def = parse_defs(slurp(defs_path));
  QueryDocument doc = parse_query(slurp(query_path));
  std::map<std::string, PropertyDef> defs{{def.name, def}};
  for (auto& c : doc.query.clauses) {
    if (c.kind != ClauseKind::Path) continue;
    auto it = doc.def_refs.find(c.var);
    std::string want = it == doc.def_refs.end() ? def.name : it->second;
    // one definition file per run: a referenced name aliases the loaded def
    defs.emplace(want, def);
    c.def_name = want;
  }
  SolveOptions opt;
  if (mode == "any")
    opt.mode = PathMode::Any;
  else if (mode == "simple")
    opt.mode = PathMode::Simple;
  else if (mode == "trail")
    opt.mode = PathMode::Trail;
  else
    throw error("mode must be any|simple|trail");
  opt.limit = limit;
  opt.timeout_s = timeout;
  opt.depth_cap = depth_cap;
  opt.keep_states = true;
  Engine eng(g, doc.query, defs);
  SolveStats st;
  auto ans = eng.solve(opt, &st);
  if (format == "json") {
    nlohmann::json out{{"answers", nlohmann::json::array()},
                       {"timed_out", st.timed_out}};
    for (size_t i = 0; i < ans.size(); ++i) {
      nlohmann::json a;
      for (auto& [v, b] : ans[i].m) {
        switch (b.kind) {
          case VarKind::Node:
          case VarKind::Edge: a[v] = b.elem; break;
          case VarKind::Path: a[v] = b.path.token(); break;
          case VarKind::Value: a[v] = b.value.str(); break;
        }
      }
      // entailed path properties (or residual constraints) per path variable
      if (i < st.finals.size()) {
        const EngineState& fs = st.finals[i];
        nlohmann::json props = nlohmann::json::object();
        for (auto& [v, b] : ans[i].m) {
          if (b.kind != VarKind::Path) continue;
          for (auto& ps : def.props) {
            auto val = fs.store.entailed(b.path.token() + "." + ps.name);
            if (val) props[v][ps.name] = val->str();
          }
        }
        if (!props.empty()) a["properties"] = props;
      }
      out["answers"].push_back(std::move(a));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto& a : ans) std::cout << a.str() << "\n";
    if (st.timed_out) std::cerr << "(timed out)\n";
  }
  return st.timed_out ? 2 : 0;
}

int cmd_bench(const BenchConfig& cfg, const std::string& out_path) {
  auto rows = run_bench(cfg);
  std::string csv = bench_csv(rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path);
    if (!out) throw error("cannot write " + out_path);
    out << csv;
  }
  for (auto& r : rows)
    if (r.timed_out) return 2;
  return 0;
}

int cmd_rdpa_check(const std::string& automaton_path, int max_len,
                   long long max_datum) {
  Rdpa a = automaton_path.empty() ? a_eq() : load_rdpa(automaton_path);
  auto [def, phi] = translate(a);
  std::set<std::string> sigma;
  for (auto& t : a.wtr) sigma.insert(t.sym);
  if (sigma.empty()) sigma.insert("a");
  size_t n = 0, bad = 0;
  std::vector<Value> cur;
  std::function<void()> rec = [&] {
    if (cur.size() >= 3 && cur.size() % 2 == 1) {
      DataPath w{cur};
      bool acc = accepts(a, w), rcg = recognized(def, phi, w);
      ++n;
      if (acc != rcg) {
        ++bad;
        std::cerr << "disagreement on:";
        for (auto& v : cur) std::cerr << " " << v.str();
        std::cerr << "\n";
      }
    }
    if ((int)cur.size() >= max_len) return;
    if (cur.size() % 2 == 0) {
      for (long long d = 0; d <= max_datum; ++d) {
        cur.push_back(Value::integer(d));
        rec();
        cur.pop_back();
      }
    } else {
      for (auto& s : sigma) {
        cur.push_back(Value::text(s));
        rec();
        cur.pop_back();
      }
    }
  };
  rec();
  std::cout << "checked " << n << " data paths, " << bad << " disagreements\n";
  return bad ? 1 : 0;
}

int cmd_validate(const std::string& graph_path, const std::string& defs_path,
                 const std::string& query_path) {
  if (!graph_path.empty()) load_graph(graph_path);
  if (!defs_path.empty()) parse_defs(slurp(defs_path));
  if (!query_path.empty()) parse_query(slurp(query_path));
  std::cout << "ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constraint-defined path properties over property graphs"};
  app.require_subcommand(1);

  auto* q = app.add_subcommand("query", "evaluate a query file against a graph");
  std::string graph_path, defs_path, query_path, mode = "any", format = "table";
  std::optional<size_t> limit;
  std::optional<double> timeout;
  size_t depth_cap = 64;
  q->add_option("--graph", graph_path)->required();
  q->add_option("--defs", defs_path)->required();
  q->add_option("--query", query_path)->required();
  q->add_option("--mode", mode, "any|simple|trail");
  q->add_option("--limit", limit);
  q->add_option("--timeout", timeout, "seconds");
  q->add_option("--depth-cap", depth_cap);
  q->add_option("--format", format, "json|table");

  auto* b = app.add_subcommand("bench", "random-instance timing harness");
  BenchConfig cfg;
  std::string out_path;
  b->add_option("--seed", cfg.seed);
  b->add_option("--nodes", cfg.nodes);
  b->add_option("--edges", cfg.edges, "instance edge counts, increasing")
      ->required();
  b->add_option("--queries", cfg.queries);
  b->add_option("--timeout", cfg.timeout_s);
  b->add_option("--variants", cfg.variants);
  b->add_option("--out", out_path);

  auto* r = app.add_subcommand("rdpa", "register data path automata");
  auto* rc = r->add_subcommand("check",
                               "compare automaton runs with the translated "
                               "definition on all short data paths");
  std::string automaton_path;
  int max_len = 7;
  long long max_datum = 3;
  rc->add_option("--automaton", automaton_path,
                 "automaton JSON (default: built-in equality automaton)");
  rc->add_option("--max-len", max_len, "max data-path positions");
  rc->add_option("--max-datum", max_datum);

  auto* v = app.add_subcommand("validate", "parse and validate input files");
  std::string vg, vd, vq;
  v->add_option("--graph", vg);
  v->add_option("--defs", vd);
  v->add_option("--query", vq);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*q) return cmd_query(graph_path, defs_path, query_path, mode, limit,
                             timeout, depth_cap, format);
    if (*b) {
      cfg.validate();
      return cmd_bench(cfg, out_path);
    }
    if (*rc) return cmd_rdpa_check(automaton_path, max_len, max_datum);
    if (*v) return cmd_validate(vg, vd, vq);
    if (*r) {
      std::cerr << "rdpa requires a subcommand (check)\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
