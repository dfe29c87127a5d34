#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "ddoslab/simcore/types.hpp"

namespace ddoslab::sim {

using Rng = std::mt19937_64;

/// Periodic echo requests from one UE to a random other UE.
struct PingAppState {
  NodeId self;
  std::uint32_t n_ue = 0;  // UEs occupy node indices [0, n_ue)
  std::uint32_t size_bytes = 64;
  double interval_s = 1.0;
};

/// Flood source on a host: fixed-size datagrams to UEs in round-robin order.
struct FloodAppState {
  NodeId self;
  std::uint32_t n_ue = 0;
  std::uint32_t next_target = 0;  // UE ordinal of the next packet
  std::uint32_t size_bytes = 1000;
  double interval_s = 0.001;
  SimTime start = 0.0;
  std::uint64_t sent = 0;
};

/// Emits one PING_REQUEST to a uniformly drawn peer (never `self`) and
/// returns it with the next send time `now + interval_s`. The packet id is
/// left at 0 for the caller to assign.
std::pair<Packet, SimTime> ping_app_next(const PingAppState& state, SimTime now, Rng& rng);

/// Emits one FLOOD packet toward the current round-robin target and advances
/// the cursor. The next send time is `start + sent * interval_s`, i.e.
/// `now + interval_s` without accumulated rounding drift.
std::pair<Packet, SimTime> flood_app_next(FloodAppState& state, SimTime now);

/// Number of sends of a periodic app starting at t=0 inside [0, duration):
/// floor(duration / interval), robust to the inexact binary form of both.
std::uint64_t periodic_send_count(SimTime duration, double interval);

}  // namespace ddoslab::sim
