/// @file bench.hpp
/// Random flight-network generator and the timing harness.
///
/// Instances are nested: one edge stream per seed, each instance a prefix of
/// it, so instance k's edge set contains instance k-1's. Nodes are airports
/// City_0..City_{n-1}; edges are flights with price in [50,1000], dep in
/// [300,1380), arr = dep + [60,600] (absolute minutes, may pass midnight).
///
/// The harness runs a set of query variants over every instance in
/// simple-path mode and reports one CSV row per (variant, instance, query):
///   variant,instance,query_id,results,seconds,timed_out
/// with `*` in results/seconds on timed-out rows.

#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pathq/engine.hpp"

namespace pathq {

struct BenchConfig {
  int nodes = 100;
  std::vector<int> edges;  // strictly increasing edge counts
  unsigned long long seed = 42;
  int queries = 3;         // random (source, target) pairs
  double timeout_s = 60;
  std::vector<std::string> variants = {"none",        "L<3",
                                       "L<5",         "L<10",
                                       "L<3,C<10000", "L<5,C<10000",
                                       "L<10,C<10000", "gap>=120"};

  void validate() const {
    if (nodes < 2) throw error("need at least two nodes");
    long long cap = (long long)nodes * (nodes - 1);
    int prev = -1;
    for (int e : edges) {
      if (e <= prev) throw error("edge counts must be strictly increasing");
      if (e > cap) throw error("edge count exceeds simple-graph capacity");
      prev = e;
    }
  }
};

/// Deterministic nested instances for a config.
inline std::vector<PropertyGraph> generate_graph(const BenchConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::vector<PropertyGraph::NodeSpec> ns;
  for (int i = 0; i < cfg.nodes; ++i) {
    PropertyGraph::NodeSpec n;
    n.id = "a" + std::to_string(i);
    n.labels = {"Airport"};
    n.props = {{"loc", Value::text("City_" + std::to_string(i))}};
    ns.push_back(std::move(n));
  }
  int max_edges = cfg.edges.empty() ? 0 : cfg.edges.back();
  std::set<std::pair<int, int>> used;
  std::vector<PropertyGraph::EdgeSpec> es;
  std::uniform_int_distribution<int> node_d(0, cfg.nodes - 1);
  std::uniform_int_distribution<long long> price_d(50, 1000), dep_d(300, 1379),
      dur_d(60, 600);
  while ((int)es.size() < max_edges) {
    int s = node_d(rng), t = node_d(rng);
    if (s == t || !used.emplace(s, t).second) continue;
    PropertyGraph::EdgeSpec e;
    e.id = "f" + std::to_string(es.size());
    e.src = "a" + std::to_string(s);
    e.tgt = "a" + std::to_string(t);
    e.labels = {"Flight"};
    long long dep = dep_d(rng);
    e.props = {{"price", Value::integer(price_d(rng))},
               {"dep", Value::integer(dep)},
               {"arr", Value::integer(dep + dur_d(rng))}};
    es.push_back(std::move(e));
  }
  std::vector<PropertyGraph> out;
  for (int count : cfg.edges)
    out.emplace_back(ns, std::vector<PropertyGraph::EdgeSpec>(
                             es.begin(), es.begin() + count));
  if (cfg.edges.empty()) out.emplace_back(ns, es);
  return out;
}

namespace bench_detail {

inline PropertyDef variant_def(const std::string& v) {
  PropertyDef d;
  d.name = v;
  auto pp = [](const char* k) { return t_prop_var("p", k, VarKind::Path); };
  auto pq = [](const char* k) { return t_prop_var("p'", k, VarKind::Path); };
  auto ey = [](const char* k) { return t_prop_var("y", k, VarKind::Edge); };
  if (v == "none") return d;  // plain reachability, no properties
  bool cost = v.find("C<") != std::string::npos;
  bool gap = v.rfind("gap", 0) == 0;
  d.props.push_back({"length", true});
  d.base.push_back({Pred::Eq, pp("length"), t_int(1)});
  d.step.push_back({Pred::Eq, pp("length"), t_add(t_int(1), pq("length"))});
  d.step.push_back({Pred::Gt, pq("length"), t_int(0)});
  if (cost) {
    d.props.push_back({"cost", false});
    d.base.push_back({Pred::Eq, pp("cost"), ey("price")});
    d.step.push_back({Pred::Eq, pp("cost"), t_add(ey("price"), pq("cost"))});
  }
  if (gap) {
    d.props.push_back({"start", false});
    d.base.push_back({Pred::Eq, pp("start"), ey("dep")});
    d.step.push_back({Pred::Eq, pp("start"), ey("dep")});
    d.step.push_back({Pred::Ge, pq("start"), t_add(ey("arr"), t_int(120))});
  }
  return d;
}

inline Filter variant_filter(const std::string& v) {
  Filter f;
  auto plen = t_prop_var("p", "length", VarKind::Path);
  auto pcost = t_prop_var("p", "cost", VarKind::Path);
  if (v.find("L<3") != std::string::npos) f.push_back({Pred::Lt, plen, t_int(3)});
  if (v.find("L<5") != std::string::npos) f.push_back({Pred::Lt, plen, t_int(5)});
  if (v.find("L<10") != std::string::npos) f.push_back({Pred::Lt, plen, t_int(10)});
  if (v.find("C<10000") != std::string::npos)
    f.push_back({Pred::Lt, pcost, t_int(10000)});
  return f;
}

}  // namespace bench_detail

struct BenchRow {
  std::string variant;
  int instance_edges;
  int query_id;
  std::optional<size_t> results;  // empty on timeout
  std::optional<double> seconds;
  bool timed_out;
};

/// One engine run per (variant, instance, query) cell.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  auto graphs = generate_graph(cfg);
  // query endpoints drawn once so every variant/instance sees the same pairs
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<int> node_d(0, cfg.nodes - 1);
  std::vector<std::pair<int, int>> pairs;
  while ((int)pairs.size() < cfg.queries) {
    int s = node_d(rng), t = node_d(rng);
    if (s != t) pairs.emplace_back(s, t);
  }
  std::vector<BenchRow> rows;
  for (auto& variant : cfg.variants) {
    PropertyDef def = bench_detail::variant_def(variant);
    Filter filt = bench_detail::variant_filter(variant);
    for (size_t gi = 0; gi < graphs.size(); ++gi) {
      const PropertyGraph& g = graphs[gi];
      int inst = cfg.edges.empty() ? 0 : cfg.edges[gi];
      for (int qi = 0; qi < cfg.queries; ++qi) {
        auto [s, t] = pairs[qi];
        Query q;
        q.clauses.push_back(node_clause(
            "a", {},
            {{Pred::Eq, t_prop_var("a", "loc", VarKind::Node),
              t_lit(Value::text("City_" + std::to_string(s)))}}));
        q.clauses.push_back(node_clause(
            "b", {},
            {{Pred::Eq, t_prop_var("b", "loc", VarKind::Node),
              t_lit(Value::text("City_" + std::to_string(t)))}}));
        q.clauses.push_back(
            path_clause("a", "p", rx_plus(rx_sym("Flight")), "b", "d", filt));
        Engine eng(g, q, {{"d", def}});
        SolveOptions opt;
        opt.mode = PathMode::Simple;
        opt.timeout_s = cfg.timeout_s;
        SolveStats st;
        auto t0 = std::chrono::steady_clock::now();
        auto ans = eng.solve(opt, &st);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        BenchRow row{variant, inst, qi, {}, {}, st.timed_out};
        if (!st.timed_out) {
          row.results = ans.size();
          row.seconds = secs;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "variant,instance,query_id,results,seconds,timed_out\n";
  for (auto& r : rows) {
    out << r.variant << "," << r.instance_edges << "," << r.query_id << ",";
    if (r.timed_out)
      out << "*,*,true\n";
    else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", *r.seconds);
      out << *r.results << "," << buf << ",false\n";
    }
  }
  return out.str();
}

}  // namespace pathq
