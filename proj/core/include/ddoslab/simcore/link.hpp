#pragma once

#include <cstddef>
#include <deque>
#include <optional>

#include "ddoslab/simcore/topology.hpp"
#include "ddoslab/simcore/types.hpp"

namespace ddoslab::sim {

/// FIFO drop-tail queue for one direction of a link. Each accepted packet's
/// serialization finish time is fixed at enqueue; a packet counts toward
/// occupancy (waiting or in service) until that time has passed.
class LinkQueue {
 public:
  /// Packets still waiting or being serialized at `now`.
  std::size_t occupancy(SimTime now);

  /// Time the last accepted packet finishes serialization.
  SimTime drain_time() const noexcept { return departures_.empty() ? 0.0 : departures_.back(); }

  /// Appends a packet whose serialization ends at `finish` (>= drain_time()).
  void push(SimTime finish) { departures_.push_back(finish); }

 private:
  std::deque<SimTime> departures_;
};

struct LinkTransmit {
  std::optional<SimTime> arrival;  // empty when dropped
  std::size_t occupancy_before = 0;

  bool dropped() const noexcept { return !arrival.has_value(); }
};

/// Offers `packet` to the queue. If the queue holds fewer than
/// `link.queue_capacity_pkts` packets, the far-end arrival is
/// max(now, drain) + size*8/bandwidth + prop_delay; otherwise the packet is
/// dropped.
LinkTransmit link_transmit(const Link& link, LinkQueue& queue, const Packet& packet, SimTime now);

inline double serialization_delay(const Link& link, std::uint32_t size_bytes) {
  return static_cast<double>(size_bytes) * 8.0 / link.bandwidth_bps;
}

}  // namespace ddoslab::sim
