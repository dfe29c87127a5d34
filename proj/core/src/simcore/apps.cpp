#include "ddoslab/simcore/apps.hpp"

#include <cmath>

namespace ddoslab::sim {

std::pair<Packet, SimTime> ping_app_next(const PingAppState& state, SimTime now, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, state.n_ue - 2);
  std::uint32_t peer = pick(rng);
  if (peer >= state.self.index) ++peer;

  Packet p;
  p.src = state.self;
  p.dst = NodeId{peer, NodeKind::ue};
  p.size_bytes = state.size_bytes;
  p.created_at = now;
  p.kind = PacketKind::ping_request;
  return {p, now + state.interval_s};
}

std::pair<Packet, SimTime> flood_app_next(FloodAppState& state, SimTime now) {
  Packet p;
  p.src = state.self;
  p.dst = NodeId{state.next_target, NodeKind::ue};
  p.size_bytes = state.size_bytes;
  p.created_at = now;
  p.kind = PacketKind::flood;

  state.next_target = (state.next_target + 1) % state.n_ue;
  ++state.sent;
  return {p, state.start + static_cast<double>(state.sent) * state.interval_s};
}

std::uint64_t periodic_send_count(SimTime duration, double interval) {
  const double ratio = duration / interval;
  // 1e-9 relative slack absorbs representation error such as 0.3 / 0.1.
  return static_cast<std::uint64_t>(std::floor(ratio * (1.0 + 1e-9)));
}

}  // namespace ddoslab::sim
