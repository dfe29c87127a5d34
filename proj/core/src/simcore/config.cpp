#include "ddoslab/simcore/config.hpp"

#include <cmath>
#include <json.hpp>

#include "ddoslab/error.hpp"

namespace ddoslab::sim {

namespace {

using nlohmann::json;

void check_link(const char* name, const LinkParams& p) {
  if (!(p.bandwidth_bps > 0.0) || !std::isfinite(p.bandwidth_bps))
    throw ConfigError(std::string("link ") + name + ": bandwidth_bps must be > 0");
  if (!(p.prop_delay_s >= 0.0) || !std::isfinite(p.prop_delay_s))
    throw ConfigError(std::string("link ") + name + ": prop_delay_s must be >= 0");
  if (p.queue_capacity_pkts == 0)
    throw ConfigError(std::string("link ") + name + ": queue_capacity_pkts must be > 0");
}

void read_link(const json& j, const char* key, LinkParams& p) {
  if (!j.contains(key)) return;
  const json& l = j.at(key);
  if (l.contains("bandwidth_bps")) p.bandwidth_bps = l.at("bandwidth_bps").get<double>();
  if (l.contains("prop_delay_s")) p.prop_delay_s = l.at("prop_delay_s").get<double>();
  if (l.contains("queue_capacity_pkts"))
    p.queue_capacity_pkts = l.at("queue_capacity_pkts").get<std::uint32_t>();
}

json write_link(const LinkParams& p) {
  return {{"bandwidth_bps", p.bandwidth_bps},
          {"prop_delay_s", p.prop_delay_s},
          {"queue_capacity_pkts", p.queue_capacity_pkts}};
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::string_view to_string(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::ue: return "UE";
    case NodeKind::gnodeb: return "GNODEB";
    case NodeKind::background_cell: return "BACKGROUND_CELL";
    case NodeKind::router: return "ROUTER";
    case NodeKind::host: return "HOST";
    case NodeKind::core: return "CORE";
  }
  return "?";
}

std::string_view to_string(PacketKind kind) noexcept {
  switch (kind) {
    case PacketKind::ping_request: return "PING_REQUEST";
    case PacketKind::ping_reply: return "PING_REPLY";
    case PacketKind::flood: return "FLOOD";
    case PacketKind::flood_reply: return "FLOOD_REPLY";
  }
  return "?";
}

std::string_view to_string(Scenario s) noexcept {
  return s == Scenario::ddos ? "ddos" : "normal";
}

Scenario scenario_from_string(std::string_view s) {
  if (s == "normal" || s == "NORMAL") return Scenario::normal;
  if (s == "ddos" || s == "DDOS") return Scenario::ddos;
  throw ConfigError("unknown scenario '" + std::string(s) + "' (expected normal|ddos)");
}

void validate(const ScenarioConfig& c) {
  if (!(c.duration_s > 0.0) || !std::isfinite(c.duration_s))
    throw ConfigError("duration_s must be > 0");
  if (c.n_ue < 2) throw ConfigError("n_ue must be >= 2 so every UE has a ping peer");
  if (c.ping_size_bytes == 0) throw ConfigError("ping_size_bytes must be > 0");
  if (c.flood_size_bytes == 0) throw ConfigError("flood_size_bytes must be > 0");
  if (!(c.ping_interval_s > 0.0)) throw ConfigError("ping_interval_s must be > 0");
  if (!(c.flood_interval_s > 0.0)) throw ConfigError("flood_interval_s must be > 0");
  check_link("ue_gnb", c.links.ue_gnb);
  check_link("gnb_core", c.links.gnb_core);
  check_link("bgcell_core", c.links.bgcell_core);
  check_link("core_router", c.links.core_router);
  check_link("host_router", c.links.host_router);
}

ScenarioConfig scenario_from_json(const std::string& json_text, ScenarioConfig c) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario config must be a JSON object");
  try {
    if (j.contains("scenario")) c.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    read_field(j, "duration_s", c.duration_s);
    read_field(j, "seed", c.seed);
    read_field(j, "n_ue", c.n_ue);
    read_field(j, "n_hosts", c.n_hosts);
    read_field(j, "flood_size_bytes", c.flood_size_bytes);
    read_field(j, "flood_interval_s", c.flood_interval_s);
    read_field(j, "ping_size_bytes", c.ping_size_bytes);
    read_field(j, "ping_interval_s", c.ping_interval_s);
    if (j.contains("links")) {
      const json& l = j.at("links");
      read_link(l, "ue_gnb", c.links.ue_gnb);
      read_link(l, "gnb_core", c.links.gnb_core);
      read_link(l, "bgcell_core", c.links.bgcell_core);
      read_link(l, "core_router", c.links.core_router);
      read_link(l, "host_router", c.links.host_router);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario config: ") + e.what());
  }
  return c;
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json j = {{"scenario", to_string(c.scenario)},
            {"duration_s", c.duration_s},
            {"seed", c.seed},
            {"n_ue", c.n_ue},
            {"n_hosts", c.n_hosts},
            {"flood_size_bytes", c.flood_size_bytes},
            {"flood_interval_s", c.flood_interval_s},
            {"ping_size_bytes", c.ping_size_bytes},
            {"ping_interval_s", c.ping_interval_s},
            {"links",
             {{"ue_gnb", write_link(c.links.ue_gnb)},
              {"gnb_core", write_link(c.links.gnb_core)},
              {"bgcell_core", write_link(c.links.bgcell_core)},
              {"core_router", write_link(c.links.core_router)},
              {"host_router", write_link(c.links.host_router)}}}};
  return j.dump(2);
}

}  // namespace ddoslab::sim
