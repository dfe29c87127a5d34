#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ddoslab::sim {

/// Simulation time in seconds.
using SimTime = double;

enum class NodeKind : std::uint8_t { ue, gnodeb, background_cell, router, host, core };

std::string_view to_string(NodeKind kind) noexcept;

/// Global node identity. `index` is unique across the whole topology.
struct NodeId {
  std::uint32_t index = 0;
  NodeKind kind = NodeKind::ue;

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend auto operator<=>(const NodeId& a, const NodeId& b) { return a.index <=> b.index; }
};

enum class PacketKind : std::uint8_t { ping_request, ping_reply, flood, flood_reply };

std::string_view to_string(PacketKind kind) noexcept;

inline bool is_ping(PacketKind k) noexcept {
  return k == PacketKind::ping_request || k == PacketKind::ping_reply;
}

struct Packet {
  std::uint64_t id = 0;
  NodeId src;
  NodeId dst;
  std::uint32_t size_bytes = 0;
  SimTime created_at = 0.0;
  PacketKind kind = PacketKind::ping_request;
  /// For replies: creation time of the request being answered.
  SimTime request_created_at = 0.0;
};

enum class Scenario : std::uint8_t { normal, ddos };

std::string_view to_string(Scenario s) noexcept;
Scenario scenario_from_string(std::string_view s);

}  // namespace ddoslab::sim
