/// @file graph.hpp
/// In-memory property graph: labeled multigraph with typed property maps,
/// plus paths over it.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pathq/value.hpp"

namespace pathq {

using ElemId = std::string;
using Label = std::string;
using PropKey = std::string;

/// (source node, nonempty edge sequence, target node).
struct GraphPath {
  ElemId source;
  std::vector<ElemId> edges;
  ElemId target;

  bool operator==(const GraphPath& o) const {
    return source == o.source && edges == o.edges && target == o.target;
  }
  bool operator<(const GraphPath& o) const {
    if (source != o.source) return source < o.source;
    if (edges != o.edges) return edges < o.edges;
    return target < o.target;
  }

  /// Canonical token naming this path, e.g. "(n5;e6,e7)". Stable across
  /// recomputation; used as a constraint-store key prefix.
  std::string token() const {
    std::string s = "(" + source + ";";
    for (size_t i = 0; i < edges.size(); ++i) {
      if (i) s += ",";
      s += edges[i];
    }
    return s + ")";
  }
};

/// Immutable after construction; safe for concurrent reads.
class PropertyGraph {
 public:
  struct NodeSpec {
    ElemId id;
    std::set<Label> labels;
    std::map<PropKey, Value> props;
  };
  struct EdgeSpec {
    ElemId id;
    ElemId src;
    ElemId tgt;
    std::set<Label> labels;
    std::map<PropKey, Value> props;
  };

  PropertyGraph() = default;
  PropertyGraph(std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges) {
    for (auto& n : nodes) {
      if (!nodes_.emplace(n.id, Node{std::move(n.labels), std::move(n.props)}).second)
        throw error("duplicate node id " + n.id);
    }
    for (auto& e : edges) {
      if (nodes_.count(e.id)) throw error("edge id " + e.id + " collides with a node id");
      if (!nodes_.count(e.src)) throw error("edge " + e.id + " has dangling src " + e.src);
      if (!nodes_.count(e.tgt)) throw error("edge " + e.id + " has dangling tgt " + e.tgt);
      if (!edges_.emplace(e.id, Edge{e.src, e.tgt, std::move(e.labels), std::move(e.props)}).second)
        throw error("duplicate edge id " + e.id);
    }
    for (auto& [id, e] : edges_) out_index_[e.src].push_back(id);
    for (auto& [n, v] : out_index_) std::sort(v.begin(), v.end());
  }

  bool has_node(const ElemId& id) const { return nodes_.count(id) != 0; }
  bool has_edge(const ElemId& id) const { return edges_.count(id) != 0; }
  bool has_element(const ElemId& id) const { return has_node(id) || has_edge(id); }

  size_t node_count() const { return nodes_.size(); }
  size_t edge_count() const { return edges_.size(); }

  std::vector<ElemId> node_ids() const {
    std::vector<ElemId> out;
    for (auto& [id, n] : nodes_) out.push_back(id);
    return out;
  }
  std::vector<ElemId> edge_ids() const {
    std::vector<ElemId> out;
    for (auto& [id, e] : edges_) out.push_back(id);
    return out;
  }

  const ElemId& src(const ElemId& edge) const { return edge_at(edge).src; }
  const ElemId& tgt(const ElemId& edge) const { return edge_at(edge).tgt; }

  const std::set<Label>& labels(const ElemId& elem) const {
    if (auto it = nodes_.find(elem); it != nodes_.end()) return it->second.labels;
    return edge_at(elem).labels;
  }

  /// The partial property map: absent key is a legal state, unknown element
  /// is an error.
  std::optional<Value> get_property(const ElemId& elem, const PropKey& key) const {
    const std::map<PropKey, Value>* props = nullptr;
    if (auto it = nodes_.find(elem); it != nodes_.end()) props = &it->second.props;
    else if (auto jt = edges_.find(elem); jt != edges_.end()) props = &jt->second.props;
    else throw error("unknown element " + elem);
    if (auto it = props->find(key); it != props->end()) return it->second;
    return std::nullopt;
  }

  const std::map<PropKey, Value>& props(const ElemId& elem) const {
    if (auto it = nodes_.find(elem); it != nodes_.end()) return it->second.props;
    return edge_at(elem).props;
  }

  /// Elements (nodes and edges) whose label set contains the given label.
  std::set<ElemId> elements_by_label(const Label& label) const {
    std::set<ElemId> out;
    for (auto& [id, n] : nodes_)
      if (n.labels.count(label)) out.insert(id);
    for (auto& [id, e] : edges_)
      if (e.labels.count(label)) out.insert(id);
    return out;
  }

  /// Outgoing edges of a node, optionally restricted to a label.
  std::vector<ElemId> out_edges(const ElemId& node, const std::optional<Label>& label = {}) const {
    if (!nodes_.count(node)) throw error("unknown node " + node);
    std::vector<ElemId> out;
    auto it = out_index_.find(node);
    if (it == out_index_.end()) return out;
    for (auto& e : it->second)
      if (!label || edges_.at(e).labels.count(*label)) out.push_back(e);
    return out;
  }

  /// All edge labels present in the graph.
  std::set<Label> edge_alphabet() const {
    std::set<Label> out;
    for (auto& [id, e] : edges_) out.insert(e.labels.begin(), e.labels.end());
    return out;
  }

  /// True iff the path invariants hold: chaining, matching endpoints,
  /// nonempty edge list. Unknown edge ids are an error.
  bool validate_path(const GraphPath& p) const {
    if (p.edges.empty()) return false;
    for (auto& e : p.edges)
      if (!edges_.count(e)) throw error("unknown edge " + e + " in path");
    if (src(p.edges.front()) != p.source) return false;
    if (tgt(p.edges.back()) != p.target) return false;
    for (size_t j = 1; j < p.edges.size(); ++j)
      if (src(p.edges[j]) != tgt(p.edges[j - 1])) return false;
    return true;
  }

 private:
  struct Node {
    std::set<Label> labels;
    std::map<PropKey, Value> props;
  };
  struct Edge {
    ElemId src;
    ElemId tgt;
    std::set<Label> labels;
    std::map<PropKey, Value> props;
  };
  const Edge& edge_at(const ElemId& id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw error("unknown edge " + id);
    return it->second;
  }

  std::map<ElemId, Node> nodes_;
  std::map<ElemId, Edge> edges_;
  std::map<ElemId, std::vector<ElemId>> out_index_;
};

}  // namespace pathq
