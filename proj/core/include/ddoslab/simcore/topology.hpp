#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddoslab/simcore/config.hpp"
#include "ddoslab/simcore/types.hpp"

namespace ddoslab::sim {

struct Link {
  NodeId a;
  NodeId b;
  double bandwidth_bps = 0.0;
  SimTime prop_delay_s = 0.0;
  std::uint32_t queue_capacity_pkts = 0;
};

/// One attachment of a node to a link. `direction` is 0 when the owning node
/// is the link's `a` end (so transmissions go a->b) and 1 otherwise.
struct Port {
  std::uint32_t link = 0;
  std::uint8_t direction = 0;
  NodeId peer;

  /// Index of the directional queue this port transmits into.
  std::uint32_t queue() const noexcept { return link * 2 + direction; }
};

struct Node {
  NodeId id;
  std::uint32_t ordinal = 0;  // index among nodes of the same kind
  std::string module;         // e.g. "net.ue[3]"
  std::vector<Port> ports;
};

/// Star-of-stars 5G topology: UEs hang off the gNodeB, the gNodeB and the
/// background cell off the core, the core off the router, hosts off the
/// router. Node indices run UEs first, then gNodeB, background cell, core,
/// router, hosts.
class Topology {
 public:
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Link>& links() const noexcept { return links_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(id.index); }

  std::uint32_t n_ue() const noexcept { return n_ue_; }
  std::uint32_t n_hosts() const noexcept { return n_hosts_; }
  NodeId ue(std::uint32_t i) const;
  NodeId host(std::uint32_t i) const;
  NodeId gnodeb() const noexcept { return nodes_[n_ue_].id; }
  NodeId background_cell() const noexcept { return nodes_[n_ue_ + 1].id; }
  NodeId core() const noexcept { return nodes_[n_ue_ + 2].id; }
  NodeId router() const noexcept { return nodes_[n_ue_ + 3].id; }

  /// Port on `at` that leads one hop closer to `toward` along the unique
  /// tree path. `at` must differ from `toward`.
  const Port& next_hop(NodeId at, NodeId toward) const;

  /// User-plane route from src to dst, endpoints included. Traffic between
  /// two UEs is anchored at the core instead of turning at the gNodeB.
  std::vector<NodeId> route(NodeId src, NodeId dst) const;
  static bool anchored_at_core(NodeId src, NodeId dst) noexcept {
    return src.kind == NodeKind::ue && dst.kind == NodeKind::ue;
  }

  /// Module path of the output queue behind a port, e.g. "net.gnb.ppp[4].queue".
  std::string queue_module(NodeId owner, std::size_t port) const;

  /// Node-to-node adjacency as index lists.
  std::vector<std::vector<std::uint32_t>> adjacency() const;

 private:
  friend Topology build_topology(const ScenarioConfig& config);

  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<std::uint16_t> next_port_;  // [at * size + toward]
  std::uint32_t n_ue_ = 0;
  std::uint32_t n_hosts_ = 0;
};

/// Validates `config` (ConfigError on n_ue < 2 or zero-capacity links) and
/// builds the topology with precomputed static routes.
Topology build_topology(const ScenarioConfig& config);

}  // namespace ddoslab::sim
