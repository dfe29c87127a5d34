#include "ddoslab/simcore/topology.hpp"

#include <deque>
#include <limits>
#include <stdexcept>

#include "ddoslab/error.hpp"

namespace ddoslab::sim {

namespace {

constexpr std::uint16_t kNoPort = std::numeric_limits<std::uint16_t>::max();

std::string module_name(NodeKind kind, std::uint32_t ordinal) {
  switch (kind) {
    case NodeKind::ue: return "net.ue[" + std::to_string(ordinal) + "]";
    case NodeKind::gnodeb: return "net.gnb";
    case NodeKind::background_cell: return "net.backgroundCell";
    case NodeKind::core: return "net.core";
    case NodeKind::router: return "net.router";
    case NodeKind::host: return "net.host[" + std::to_string(ordinal) + "]";
  }
  return "net.unknown";
}

}  // namespace

NodeId Topology::ue(std::uint32_t i) const {
  if (i >= n_ue_) throw std::out_of_range("UE ordinal out of range");
  return nodes_[i].id;
}

NodeId Topology::host(std::uint32_t i) const {
  if (i >= n_hosts_) throw std::out_of_range("host ordinal out of range");
  return nodes_[n_ue_ + 4 + i].id;
}

const Port& Topology::next_hop(NodeId at, NodeId toward) const {
  const std::uint16_t p = next_port_.at(static_cast<std::size_t>(at.index) * size() + toward.index);
  if (p == kNoPort) throw std::logic_error("no route from " + node(at).module + " to " + node(toward).module);
  return nodes_[at.index].ports[p];
}

std::vector<NodeId> Topology::route(NodeId src, NodeId dst) const {
  std::vector<NodeId> path{src};
  auto walk = [&](NodeId to) {
    NodeId at = path.back();
    while (at != to) {
      at = next_hop(at, to).peer;
      path.push_back(at);
    }
  };
  if (anchored_at_core(src, dst)) walk(core());
  walk(dst);
  return path;
}

std::string Topology::queue_module(NodeId owner, std::size_t port) const {
  return node(owner).module + ".ppp[" + std::to_string(port) + "].queue";
}

std::vector<std::vector<std::uint32_t>> Topology::adjacency() const {
  std::vector<std::vector<std::uint32_t>> adj(size());
  for (const Node& n : nodes_)
    for (const Port& p : n.ports) adj[n.id.index].push_back(p.peer.index);
  return adj;
}

Topology build_topology(const ScenarioConfig& config) {
  validate(config);

  Topology t;
  t.n_ue_ = config.n_ue;
  t.n_hosts_ = config.n_hosts;

  auto add_node = [&](NodeKind kind, std::uint32_t ordinal) {
    Node n;
    n.id = NodeId{static_cast<std::uint32_t>(t.nodes_.size()), kind};
    n.ordinal = ordinal;
    n.module = module_name(kind, ordinal);
    t.nodes_.push_back(std::move(n));
    return t.nodes_.back().id;
  };

  for (std::uint32_t i = 0; i < config.n_ue; ++i) add_node(NodeKind::ue, i);
  const NodeId gnb = add_node(NodeKind::gnodeb, 0);
  const NodeId bgcell = add_node(NodeKind::background_cell, 0);
  const NodeId core = add_node(NodeKind::core, 0);
  const NodeId router = add_node(NodeKind::router, 0);
  for (std::uint32_t i = 0; i < config.n_hosts; ++i) add_node(NodeKind::host, i);

  if (t.nodes_.size() >= kNoPort) throw ConfigError("topology too large");

  auto connect = [&](NodeId a, NodeId b, const LinkParams& p) {
    const auto link = static_cast<std::uint32_t>(t.links_.size());
    t.links_.push_back(Link{a, b, p.bandwidth_bps, p.prop_delay_s, p.queue_capacity_pkts});
    t.nodes_[a.index].ports.push_back(Port{link, 0, b});
    t.nodes_[b.index].ports.push_back(Port{link, 1, a});
  };

  for (std::uint32_t i = 0; i < config.n_ue; ++i) connect(t.nodes_[i].id, gnb, config.links.ue_gnb);
  connect(gnb, core, config.links.gnb_core);
  connect(bgcell, core, config.links.bgcell_core);
  connect(core, router, config.links.core_router);
  for (std::uint32_t i = 0; i < config.n_hosts; ++i)
    connect(t.nodes_[router.index + 1 + i].id, router, config.links.host_router);

  // Static routes: one BFS per destination. In a tree the BFS parent of a
  // node is its unique next hop toward the root.
  const std::size_t n = t.nodes_.size();
  t.next_port_.assign(n * n, kNoPort);
  std::vector<bool> seen(n);
  std::deque<std::uint32_t> frontier;
  for (std::uint32_t dst = 0; dst < n; ++dst) {
    std::fill(seen.begin(), seen.end(), false);
    seen[dst] = true;
    frontier.assign(1, dst);
    while (!frontier.empty()) {
      const std::uint32_t u = frontier.front();
      frontier.pop_front();
      const auto& ports = t.nodes_[u].ports;
      for (const Port& p : ports) {
        const std::uint32_t v = p.peer.index;
        if (seen[v]) continue;
        seen[v] = true;
        // v reaches dst through u: find v's port facing u.
        const auto& vports = t.nodes_[v].ports;
        for (std::uint16_t k = 0; k < vports.size(); ++k) {
          if (vports[k].peer.index == u) {
            t.next_port_[static_cast<std::size_t>(v) * n + dst] = k;
            break;
          }
        }
        frontier.push_back(v);
      }
    }
  }
  return t;
}

}  // namespace ddoslab::sim
