#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ddoslab/simcore/simulator.hpp"
#include "ddoslab/telemetry/stat_registry.hpp"

namespace ddoslab::telemetry {

int label_for(sim::Scenario scenario) noexcept;

/// Simulator observer that turns a run into result records:
///  - queueLength histogram per output queue, sampled at every enqueue
///    attempt with the occupancy the packet found, binned over [0, capacity);
///  - endToEndDelay histogram per receiving app (unit "s"), binned over [0, 1 s);
///  - per-node scalars pktSent / pktReceived / pktDropped, emitted only when
///    nonzero.
/// Records of one node (scalars first) are contiguous in the output.
class TelemetryCollector final : public sim::SimObserver {
 public:
  TelemetryCollector();
  TelemetryCollector(const TelemetryCollector&) = delete;
  TelemetryCollector& operator=(const TelemetryCollector&) = delete;

  void on_start(const sim::Topology& topology, const sim::ScenarioConfig& config) override;
  void on_enqueue(sim::NodeId owner, std::size_t port, std::size_t occupancy_before, bool dropped,
                  sim::SimTime now) override;
  void on_deliver(const sim::Packet& packet, sim::SimTime now) override;

  /// Adds the node counters from `trace` and finalizes with `label`.
  std::vector<StatRecord> finish(const sim::TraceLog& trace, int label) &&;

 private:
  std::int64_t rank_of(std::string_view module) const;

  StatRegistry registry_;
  std::vector<std::string> node_modules_;
  std::vector<std::vector<std::string>> queue_modules_;  // [node][port]
  std::vector<std::string> ping_modules_;
  std::vector<std::string> sink_modules_;
  std::unordered_map<std::string, std::int64_t> node_rank_;
};

/// Endpoint app module a delivered packet is accounted to.
std::string receiving_app_module(const std::string& node_module, sim::PacketKind kind);

struct RunResult {
  sim::TraceLog trace;
  std::vector<StatRecord> records;
};

/// Simulates `config` and returns both the trace and its labelled records.
RunResult simulate_and_collect(const sim::ScenarioConfig& config);

}  // namespace ddoslab::telemetry
