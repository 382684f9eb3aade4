#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netcomp/function.hpp"
#include "netcomp/rational.hpp"

namespace netcomp {

using NodeId = std::size_t;
using EdgeId = std::size_t;
// Bitmask over edge ids.
using EdgeSet = std::uint64_t;

struct Edge {
  NodeId tail = 0;  // the edge leaves this node
  NodeId head = 0;  // the edge enters this node
  bool operator==(const Edge&) const = default;
};

// Directed acyclic multigraph with ordered sources and a single receiver.
// Edge ids are positions in the edge list.
class Network {
 public:
  static constexpr std::size_t kMaxEdges = 63;

  // Validates acyclicity, reachability of the receiver and source rules.
  Network(std::vector<std::string> names, std::vector<Edge> edges, std::vector<NodeId> sources,
          NodeId receiver);

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t source_count() const { return sources_.size(); }

  const std::string& name(NodeId v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<NodeId>& sources() const { return sources_; }
  NodeId source(std::size_t i) const { return sources_[i]; }
  NodeId receiver() const { return receiver_; }

  const std::vector<EdgeId>& in_edges(NodeId v) const { return in_[v]; }
  const std::vector<EdgeId>& out_edges(NodeId v) const { return out_[v]; }
  // Position of v among the sources.
  std::optional<std::size_t> source_index(NodeId v) const;
  std::optional<NodeId> find_node(std::string_view name) const;

  // Deterministic topological order of nodes (smallest id first among ready nodes).
  const std::vector<NodeId>& topological_order() const { return topo_; }
  // Edges sorted by the topological position of their tail, ties by id.
  const std::vector<EdgeId>& edge_order() const { return edge_order_; }

  bool operator==(const Network& other) const {
    return names_ == other.names_ && edges_ == other.edges_ && sources_ == other.sources_ &&
           receiver_ == other.receiver_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<NodeId> sources_;
  NodeId receiver_;
  std::vector<std::vector<EdgeId>> in_, out_;
  std::vector<NodeId> topo_;
  std::vector<EdgeId> edge_order_;
};

// `node <name> [source|receiver]` lines, then `edge <tail> <head>` lines.
Network parse_network(std::string_view text);
Network load_network(const std::string& path);
std::string serialize_network(const Network& net);

// relay:<s>, line, direct, rbf (alias reverse-butterfly).
Network builtin_network(std::string_view name);
// A builtin name or a network file path.
Network resolve_network(const std::string& name_or_path);

struct Cut {
  EdgeSet edges = 0;
  SourceSet separated = 0;  // bit i: source i+1
  std::size_t size() const;
};

// Sources whose every path to the receiver meets `edges`.
SourceSet separated_sources(const Network& net, EdgeSet edges);

constexpr std::uint64_t kDefaultCutBudget = 1u << 20;

// Every cut, in ascending bitmask order.
std::vector<Cut> enumerate_cuts(const Network& net, std::uint64_t budget = kDefaultCutBudget);

struct FlowResult {
  std::size_t value = 0;
  // Edges of a minimum cut (saturated edges leaving the residual-reachable set).
  EdgeSet min_cut = 0;
};

// Unit-capacity maximum flow from a super-source joined to `sources` to the receiver.
FlowResult max_flow(const Network& net, SourceSet sources);

// min over nonempty source subsets S of maxflow(S) / |S|.
Rational routing_computing_capacity(const Network& net);
// min over cuts of |C| / |I_C| by enumeration.
Rational routing_capacity_by_cuts(const Network& net, std::uint64_t budget = kDefaultCutBudget);
// min over single sources of maxflow(source).
std::size_t min_cut_size(const Network& net);

struct FootprintBound {
  LogRatio value;  // |C| / log_|A| footprint
  Cut cut;
  std::uint64_t footprint = 0;
};

FootprintBound footprint_cut_bound(const Network& net, const TargetFunction& f,
                                   std::uint64_t budget = kDefaultCutBudget);

// One line of a bound report: `quantity relation value`, with its reason.
struct BoundStatement {
  std::string quantity;
  std::string relation;
  std::string value;
  double numeric = 0.0;
  std::string provenance;  // "exact rational" or "exact log"
  std::string reason;
};

struct BoundReport {
  Rational routing_capacity;
  std::size_t min_cut = 0;
  FootprintBound footprint;
  LogRatio min_cut_bound;     // log2|A| * min|C|
  LogRatio coding_gain_bound; // s * log2|A| * C_rout
  std::optional<std::size_t> linear_target_capacity;
  Classification classification;
  std::vector<BoundStatement> statements;
};

BoundReport bound_report(const Network& net, const TargetFunction& f,
                         std::uint64_t budget = kDefaultCutBudget);

std::string format_edge(const Network& net, EdgeId e);
std::string format_edge_set(const Network& net, EdgeSet edges);
std::string format_source_set(SourceSet s);

}  // namespace netcomp
