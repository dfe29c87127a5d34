#pragma once

#include <cstddef>

#include "ddoslab/simcore/config.hpp"
#include "ddoslab/simcore/topology.hpp"
#include "ddoslab/simcore/trace.hpp"

namespace ddoslab::sim {

/// Hooks invoked synchronously from the event loop. Default no-ops.
class SimObserver {
 public:
  virtual ~SimObserver() = default;

  virtual void on_start(const Topology& /*topology*/, const ScenarioConfig& /*config*/) {}
  /// A packet was offered to the output queue behind `port` of `owner`.
  /// `occupancy_before` is the queue length the packet found, `dropped`
  /// tells whether it was turned away.
  virtual void on_enqueue(NodeId /*owner*/, std::size_t /*port*/, std::size_t /*occupancy_before*/,
                          bool /*dropped*/, SimTime /*now*/) {}
  /// `packet` reached its destination at `now`.
  virtual void on_deliver(const Packet& /*packet*/, SimTime /*now*/) {}
};

/// Runs one scenario to completion. A pure function of `config` (including
/// its seed): equal configs give identical traces.
TraceLog run(const ScenarioConfig& config, SimObserver* observer = nullptr);

}  // namespace ddoslab::sim
