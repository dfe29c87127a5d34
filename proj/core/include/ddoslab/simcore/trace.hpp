#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ddoslab/simcore/types.hpp"

namespace ddoslab::sim {

enum class Outcome : std::uint8_t { in_flight, delivered, dropped };

std::string_view to_string(Outcome o) noexcept;

struct PacketRecord {
  std::uint64_t id = 0;
  PacketKind kind = PacketKind::ping_request;
  NodeId src;
  NodeId dst;
  std::uint32_t size_bytes = 0;
  SimTime sent_at = 0.0;
  std::optional<SimTime> delivered_at;
  Outcome outcome = Outcome::in_flight;
  std::uint16_t hops = 0;  // links traversed so far
};

/// Per-node counters under originator accounting: `sent`, `delivered`,
/// `dropped` and `in_flight` all count packets this node created, so
/// sent == delivered + dropped + in_flight. `received` counts packets
/// delivered to this node as their destination.
struct NodeCounters {
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t in_flight = 0;
  std::uint64_t received = 0;
};

/// Per link-direction queue statistics, sampled at every enqueue attempt.
struct QueueStats {
  std::uint64_t offered = 0;
  std::uint64_t dropped = 0;
  double occupancy_sum = 0.0;
  std::uint64_t max_occupancy = 0;

  double mean_occupancy() const noexcept {
    return offered == 0 ? 0.0 : occupancy_sum / static_cast<double>(offered);
  }
};

struct TraceTotals {
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t in_flight = 0;
};

/// Everything a run produced. Immutable once `run` returns.
struct TraceLog {
  std::vector<std::string> node_modules;  // indexed by NodeId::index
  std::vector<PacketRecord> packets;      // indexed by packet id
  std::vector<NodeCounters> nodes;
  std::vector<QueueStats> queues;  // indexed by Port::queue()
  std::uint64_t events_processed = 0;
  SimTime end_time = 0.0;

  std::uint64_t ping_delivered = 0;
  std::uint64_t ping_dropped = 0;
  std::uint64_t ping_rtt_count = 0;
  double ping_rtt_sum = 0.0;

  TraceTotals totals() const;
  /// Mean round-trip time over all ping replies that made it back; 0 if none.
  double mean_ping_rtt() const noexcept;
  /// delivered / (delivered + dropped) over ping packets; in-flight excluded.
  double ping_delivery_ratio() const noexcept;
};

/// One JSON object per packet, ordered by id.
void write_ndjson(const TraceLog& trace, std::ostream& out);

/// Hex SHA-256 of the NDJSON serialization.
std::string trace_digest(const TraceLog& trace);

}  // namespace ddoslab::sim
