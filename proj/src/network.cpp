#include "netcomp/network.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <deque>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include "netcomp/error.hpp"

namespace netcomp {

Network::Network(std::vector<std::string> names, std::vector<Edge> edges,
                 std::vector<NodeId> sources, NodeId receiver)
    : names_(std::move(names)),
      edges_(std::move(edges)),
      sources_(std::move(sources)),
      receiver_(receiver) {
  const std::size_t n = names_.size();
  if (receiver_ >= n) throw InvalidArgument("receiver is not a node");
  if (sources_.empty()) throw InvalidArgument("network has no sources");
  if (sources_.size() > 31) throw InvalidArgument("at most 31 sources are supported");
  if (edges_.size() > kMaxEdges) throw InvalidArgument("at most 63 edges are supported");
  std::vector<bool> is_source(n, false);
  for (NodeId s : sources_) {
    if (s >= n) throw InvalidArgument("source is not a node");
    if (s == receiver_) throw InvalidArgument("receiver " + names_[s] + " is listed as a source");
    if (is_source[s]) throw InvalidArgument("source " + names_[s] + " is listed twice");
    is_source[s] = true;
  }
  in_.assign(n, {});
  out_.assign(n, {});
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.tail >= n || ed.head >= n) throw InvalidArgument("edge endpoint is not a node");
    if (ed.tail == receiver_)
      throw InvalidArgument("receiver has out-edge creating no-path-to-receiver violation (edge " +
                            names_[ed.tail] + " -> " + names_[ed.head] + ")");
    out_[ed.tail].push_back(e);
    in_[ed.head].push_back(e);
  }
  // Kahn's algorithm, smallest ready node first.
  std::vector<std::size_t> indegree(n);
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId v = 0; v < n; ++v) {
    indegree[v] = in_[v].size();
    if (indegree[v] == 0) ready.push(v);
  }
  while (!ready.empty()) {
    const NodeId v = ready.top();
    ready.pop();
    topo_.push_back(v);
    for (EdgeId e : out_[v])
      if (--indegree[edges_[e].head] == 0) ready.push(edges_[e].head);
  }
  if (topo_.size() != n) throw InvalidArgument("network contains a directed cycle");
  for (NodeId v = 0; v < n; ++v)
    if (in_[v].empty() && !is_source[v])
      throw InvalidArgument("node " + names_[v] + " has no in-edges but is not a source");
  // Every node must reach the receiver.
  std::vector<bool> reaches(n, false);
  reaches[receiver_] = true;
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it)
    for (EdgeId e : out_[*it])
      if (reaches[edges_[e].head]) reaches[*it] = true;
  for (NodeId v = 0; v < n; ++v)
    if (!reaches[v]) throw InvalidArgument("node " + names_[v] + " has no path to the receiver");

  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[topo_[i]] = i;
  edge_order_.resize(edges_.size());
  for (EdgeId e = 0; e < edges_.size(); ++e) edge_order_[e] = e;
  std::stable_sort(edge_order_.begin(), edge_order_.end(), [&](EdgeId a, EdgeId b) {
    return position[edges_[a].tail] < position[edges_[b].tail];
  });
}

std::optional<std::size_t> Network::source_index(NodeId v) const {
  auto it = std::find(sources_.begin(), sources_.end(), v);
  if (it == sources_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - sources_.begin());
}

std::optional<NodeId> Network::find_node(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

Network parse_network(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> names;
  std::vector<Edge> edges;
  std::vector<NodeId> sources;
  std::optional<NodeId> receiver;
  std::map<std::string, NodeId> ids;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("network line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks[0] == "node") {
      if (!edges.empty()) fail("node declarations must precede edges");
      if (toks.size() < 2 || toks.size() > 3) fail("expected 'node <name> [source|receiver]'");
      if (ids.count(toks[1])) fail("duplicate node " + toks[1]);
      const NodeId id = names.size();
      ids[toks[1]] = id;
      names.push_back(toks[1]);
      if (toks.size() == 3) {
        if (toks[2] == "source") {
          sources.push_back(id);
        } else if (toks[2] == "receiver") {
          if (receiver) fail("more than one receiver");
          receiver = id;
        } else {
          fail("unknown node role '" + toks[2] + "'");
        }
      }
    } else if (toks[0] == "edge") {
      if (toks.size() != 3) fail("expected 'edge <tail> <head>'");
      auto t = ids.find(toks[1]), h = ids.find(toks[2]);
      if (t == ids.end()) fail("unknown node " + toks[1]);
      if (h == ids.end()) fail("unknown node " + toks[2]);
      edges.push_back({t->second, h->second});
    } else {
      fail("unknown directive '" + toks[0] + "'");
    }
  }
  if (!receiver) throw ParseError("network has no receiver");
  if (sources.empty()) throw ParseError("network has no sources");
  return Network(std::move(names), std::move(edges), std::move(sources), *receiver);
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open network file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

std::string serialize_network(const Network& net) {
  std::ostringstream out;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    out << "node " << net.name(v);
    if (net.source_index(v)) out << " source";
    if (v == net.receiver()) out << " receiver";
    out << "\n";
  }
  for (const Edge& e : net.edges()) out << "edge " << net.name(e.tail) << " " << net.name(e.head) << "\n";
  return out.str();
}

Network builtin_network(std::string_view name) {
  if (name.starts_with("relay:")) {
    const std::string_view arg = name.substr(6);
    unsigned s = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), s);
    if (arg.empty() || ec != std::errc() || ptr != arg.data() + arg.size() || s < 1)
      throw ParseError("malformed relay network '" + std::string(name) + "'");
    std::vector<std::string> names;
    std::vector<NodeId> sources;
    std::vector<Edge> edges;
    for (unsigned i = 0; i < s; ++i) {
      names.push_back("s" + std::to_string(i + 1));
      sources.push_back(i);
      edges.push_back({i, s});
    }
    names.push_back("v");
    names.push_back("rho");
    edges.push_back({s, s + 1});
    return Network(std::move(names), std::move(edges), std::move(sources), s + 1);
  }
  if (name == "line") return Network({"s1", "s2", "rho"}, {{0, 1}, {1, 2}}, {0, 1}, 2);
  if (name == "direct") return Network({"s1", "s2", "rho"}, {{0, 2}, {1, 2}}, {0, 1}, 2);
  if (name == "rbf" || name == "reverse-butterfly") {
    // s1 s2 a b u w rho
    return Network({"s1", "s2", "a", "b", "u", "w", "rho"},
                   {{0, 2}, {0, 4}, {1, 3}, {1, 4}, {4, 5}, {5, 2}, {5, 3}, {2, 6}, {3, 6}},
                   {0, 1}, 6);
  }
  throw ParseError("unknown builtin network '" + std::string(name) + "'");
}

Network resolve_network(const std::string& name_or_path) {
  if (name_or_path.starts_with("relay:") || name_or_path == "line" || name_or_path == "direct" ||
      name_or_path == "rbf" || name_or_path == "reverse-butterfly")
    return builtin_network(name_or_path);
  return load_network(name_or_path);
}

std::size_t Cut::size() const { return static_cast<std::size_t>(std::popcount(edges)); }

SourceSet separated_sources(const Network& net, EdgeSet edges) {
  std::vector<bool> reaches(net.node_count(), false);
  reaches[net.receiver()] = true;
  const auto& topo = net.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it)
    for (EdgeId e : net.out_edges(*it))
      if (!((edges >> e) & 1) && reaches[net.edge(e).head]) {
        reaches[*it] = true;
        break;
      }
  SourceSet out = 0;
  for (std::size_t i = 0; i < net.source_count(); ++i)
    if (!reaches[net.source(i)]) out |= SourceSet{1} << i;
  return out;
}

std::vector<Cut> enumerate_cuts(const Network& net, std::uint64_t budget) {
  const std::size_t m = net.edge_count();
  if (m >= 64 || (std::uint64_t{1} << m) > budget)
    throw BudgetExceeded("cut enumeration over 2^" + std::to_string(m) + " edge subsets",
                         m >= 64 ? UINT64_MAX : std::uint64_t{1} << m, budget);
  std::vector<Cut> cuts;
  const EdgeSet end = EdgeSet{1} << m;
  for (EdgeSet c = 1; c < end; ++c)
    if (const SourceSet sep = separated_sources(net, c)) cuts.push_back({c, sep});
  return cuts;
}

FlowResult max_flow(const Network& net, SourceSet sources) {
  // Residual graph: node count + 1 (super-source), arcs in pairs.
  const std::size_t n = net.node_count() + 1;
  const std::size_t super = n - 1;
  struct Arc {
    std::size_t to;
    int cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<std::size_t>> adj(n);
  auto add_arc = [&](std::size_t u, std::size_t v, int cap) {
    adj[u].push_back(arcs.size());
    arcs.push_back({v, cap});
    adj[v].push_back(arcs.size());
    arcs.push_back({u, 0});
  };
  for (const Edge& e : net.edges()) add_arc(e.tail, e.head, 1);
  const int big = static_cast<int>(net.edge_count()) + 1;
  for (std::size_t i = 0; i < net.source_count(); ++i)
    if ((sources >> i) & 1) add_arc(super, net.source(i), big);

  FlowResult result;
  std::vector<std::size_t> parent_arc(n);
  std::vector<bool> seen(n);
  while (true) {
    std::fill(seen.begin(), seen.end(), false);
    std::deque<std::size_t> queue{super};
    seen[super] = true;
    while (!queue.empty() && !seen[net.receiver()]) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t a : adj[u])
        if (arcs[a].cap > 0 && !seen[arcs[a].to]) {
          seen[arcs[a].to] = true;
          parent_arc[arcs[a].to] = a;
          queue.push_back(arcs[a].to);
        }
    }
    if (!seen[net.receiver()]) break;
    for (std::size_t v = net.receiver(); v != super;) {
      const std::size_t a = parent_arc[v];
      arcs[a].cap -= 1;
      arcs[a ^ 1].cap += 1;
      v = arcs[a ^ 1].to;
    }
    ++result.value;
  }
  // `seen` now marks the residual-reachable side of a minimum cut.
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    if (seen[net.edge(e).tail] && !seen[net.edge(e).head]) result.min_cut |= EdgeSet{1} << e;
  return result;
}

Rational routing_computing_capacity(const Network& net) {
  std::optional<Rational> best;
  const SourceSet end = SourceSet{1} << net.source_count();
  for (SourceSet s = 1; s < end; ++s) {
    const Rational r(static_cast<std::int64_t>(max_flow(net, s).value), std::popcount(s));
    if (!best || r < *best) best = r;
  }
  return *best;
}

Rational routing_capacity_by_cuts(const Network& net, std::uint64_t budget) {
  std::optional<Rational> best;
  for (const Cut& c : enumerate_cuts(net, budget)) {
    const Rational r(static_cast<std::int64_t>(c.size()), std::popcount(c.separated));
    if (!best || r < *best) best = r;
  }
  if (!best) throw Error("internal: network has no cuts");
  return *best;
}

std::size_t min_cut_size(const Network& net) {
  std::size_t best = SIZE_MAX;
  for (std::size_t i = 0; i < net.source_count(); ++i)
    best = std::min(best, max_flow(net, SourceSet{1} << i).value);
  return best;
}

FootprintBound footprint_cut_bound(const Network& net, const TargetFunction& f,
                                   std::uint64_t budget) {
  if (f.arity() != net.source_count())
    throw InvalidArgument("target function arity " + std::to_string(f.arity()) +
                          " does not match the " + std::to_string(net.source_count()) +
                          " network sources");
  // Smallest cut per separated set, earliest bitmask among equals.
  std::map<SourceSet, Cut> smallest;
  for (const Cut& c : enumerate_cuts(net, budget)) {
    auto [it, inserted] = smallest.emplace(c.separated, c);
    if (!inserted && c.size() < it->second.size()) it->second = c;
  }
  std::optional<FootprintBound> best;
  for (const auto& [sep, cut] : smallest) {
    const std::uint64_t r = footprint_size(f, sep);
    FootprintBound b{LogRatio{Rational(static_cast<std::int64_t>(cut.size())), f.domain().size(), r},
                     cut, r};
    if (!best || compare(b.value, best->value).order < 0) best = b;
  }
  return *best;
}

namespace {

BoundStatement rational_statement(std::string quantity, std::string relation, const Rational& r,
                                  std::string reason) {
  return {std::move(quantity), std::move(relation), to_string(r), to_double(r), "exact rational",
          std::move(reason)};
}

BoundStatement log_statement(std::string quantity, std::string relation, const LogRatio& v,
                             std::string reason) {
  const bool exact = v.exact().has_value();
  return {std::move(quantity), std::move(relation), v.to_string(), v.value(),
          exact ? "exact rational" : "exact log", std::move(reason)};
}

}  // namespace

BoundReport bound_report(const Network& net, const TargetFunction& f, std::uint64_t budget) {
  BoundReport rep;
  const std::uint64_t q = f.domain().size();
  const auto s = static_cast<std::int64_t>(net.source_count());
  rep.routing_capacity = routing_computing_capacity(net);
  rep.min_cut = min_cut_size(net);
  rep.footprint = footprint_cut_bound(net, f, budget);
  rep.min_cut_bound = LogRatio{Rational(static_cast<std::int64_t>(rep.min_cut)), q, 2};
  rep.coding_gain_bound = LogRatio{rep.routing_capacity * Rational(s), q, 2};
  rep.classification = classify(f);
  const bool field = f.domain().is_field();
  const FunctionClass label = rep.classification.label;
  if (field && linear_coefficients(f)) rep.linear_target_capacity = rep.min_cut;

  auto& out = rep.statements;
  out.push_back(rational_statement(
      "C_rout", "=", rep.routing_capacity,
      "routing capacity is min over cuts of |C|/|I_C| and does not depend on the target function"));
  if (rep.linear_target_capacity) {
    const Rational c(static_cast<std::int64_t>(*rep.linear_target_capacity));
    out.push_back(rational_statement(
        "C_lin", "=", c, "linear target over a finite field: a transfer-matrix code reaches min|C|"));
    out.push_back(rational_statement(
        "C_cod", "=", c, "linear target over a finite field: min|C| is also a cut-set upper bound"));
    out.push_back(rational_statement("C_cod", "<=", rep.routing_capacity * Rational(s),
                                     "linear target: min|C| <= s * C_rout since |I_C| <= s"));
  } else {
    if (label == FunctionClass::Injective) {
      out.push_back(rational_statement("C_cod", "=", rep.routing_capacity,
                                       "injective target: the receiver must learn every message"));
    }
    if (field && !rep.classification.reduction && !rep.classification.unresolved) {
      out.push_back(rational_statement(
          "C_lin", "=", rep.routing_capacity,
          "alphabet is a finite field and the target is not reducible: linear codes gain nothing"));
    } else if (rep.classification.reduction) {
      out.push_back(rational_statement(
          "C_lin", ">=", rep.routing_capacity,
          "target is reducible (lambda = " + std::to_string(rep.classification.reduction->lambda) +
              "): linear codes may beat routing"));
    }
  }
  out.push_back(log_statement(
      "C_cod", "<=", rep.footprint.value,
      "cut-set bound |C| / log_|A| R over the cut " + format_edge_set(net, rep.footprint.cut.edges) +
          " separating " + format_source_set(rep.footprint.cut.separated) +
          " with footprint R = " + std::to_string(rep.footprint.footprint)));
  out.push_back(log_statement("C_cod", "<=", rep.min_cut_bound,
                              "each cut edge carries at most log2|A| bits per symbol: log2|A| * min|C|"));
  out.push_back(log_statement("C_cod", "<=", rep.coding_gain_bound,
                              "coding gain over routing is at most s * log2|A|"));
  return rep;
}

std::string format_edge(const Network& net, EdgeId e) {
  return "e" + std::to_string(e) + "(" + net.name(net.edge(e).tail) + "->" +
         net.name(net.edge(e).head) + ")";
}

std::string format_edge_set(const Network& net, EdgeSet edges) {
  std::string out = "{";
  bool first = true;
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    if ((edges >> e) & 1) {
      if (!first) out += ",";
      first = false;
      out += format_edge(net, e);
    }
  return out + "}";
}

std::string format_source_set(SourceSet s) {
  std::string out = "{";
  bool first = true;
  for (unsigned i = 0; i < 32; ++i)
    if ((s >> i) & 1) {
      if (!first) out += ",";
      first = false;
      out += std::to_string(i + 1);
    }
  return out + "}";
}

}  // namespace netcomp
