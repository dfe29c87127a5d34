#pragma once

#include <cstdint>
#include <string>

#include "ddoslab/simcore/types.hpp"

namespace ddoslab::sim {

struct LinkParams {
  double bandwidth_bps = 0.0;
  SimTime prop_delay_s = 0.0;
  std::uint32_t queue_capacity_pkts = 100;

  friend bool operator==(const LinkParams&, const LinkParams&) = default;
};

/// Per-class link parameters. The gNodeB<->core backhaul is the bottleneck:
/// the aggregate flood (3 x 8 Mbps) exceeds it.
struct LinkDefaults {
  LinkParams ue_gnb{20e6, 0.005, 100};
  LinkParams gnb_core{10e6, 0.002, 100};
  LinkParams bgcell_core{100e6, 0.002, 100};
  LinkParams core_router{50e6, 0.002, 100};
  LinkParams host_router{100e6, 0.001, 100};

  friend bool operator==(const LinkDefaults&, const LinkDefaults&) = default;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::normal;
  SimTime duration_s = 60.0;
  std::uint64_t seed = 1;
  std::uint32_t n_ue = 100;
  std::uint32_t n_hosts = 3;
  std::uint32_t flood_size_bytes = 1000;
  double flood_interval_s = 0.001;
  std::uint32_t ping_size_bytes = 64;
  double ping_interval_s = 1.0;
  LinkDefaults links;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws ConfigError on values no run can use (n_ue < 2, zero capacities, ...).
void validate(const ScenarioConfig& config);

/// JSON form mirrors the struct field names; `links` holds one object per
/// link class (ue_gnb, gnb_core, bgcell_core, core_router, host_router) with
/// bandwidth_bps, prop_delay_s and queue_capacity_pkts. Missing keys keep
/// the values already in `base`.
ScenarioConfig scenario_from_json(const std::string& json_text, ScenarioConfig base = {});
std::string scenario_to_json(const ScenarioConfig& config);

}  // namespace ddoslab::sim
