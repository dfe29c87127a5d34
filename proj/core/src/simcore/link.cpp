#include "ddoslab/simcore/link.hpp"

#include <algorithm>
#include <stdexcept>

namespace ddoslab::sim {

std::size_t LinkQueue::occupancy(SimTime now) {
  while (!departures_.empty() && departures_.front() <= now) departures_.pop_front();
  return departures_.size();
}

LinkTransmit link_transmit(const Link& link, LinkQueue& queue, const Packet& packet, SimTime now) {
  if (packet.size_bytes == 0) throw std::invalid_argument("packet size must be > 0");
  LinkTransmit out;
  out.occupancy_before = queue.occupancy(now);
  if (out.occupancy_before >= link.queue_capacity_pkts) return out;

  const SimTime start = std::max(now, queue.drain_time());
  const SimTime finish = start + serialization_delay(link, packet.size_bytes);
  queue.push(finish);
  out.arrival = finish + link.prop_delay_s;
  return out;
}

}  // namespace ddoslab::sim
