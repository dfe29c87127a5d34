#include "ddoslab/telemetry/collector.hpp"

namespace ddoslab::telemetry {

namespace {

constexpr std::size_t kBins = 20;

}  // namespace

int label_for(sim::Scenario scenario) noexcept {
  return scenario == sim::Scenario::ddos ? kAttack : kBenign;
}

std::string receiving_app_module(const std::string& node_module, sim::PacketKind kind) {
  switch (kind) {
    case sim::PacketKind::ping_request:
    case sim::PacketKind::ping_reply: return node_module + ".pingApp";
    case sim::PacketKind::flood: return node_module + ".udpEcho";
    case sim::PacketKind::flood_reply: return node_module + ".floodApp";
  }
  return node_module;
}

TelemetryCollector::TelemetryCollector()
    : registry_([this](std::string_view module) { return rank_of(module); }) {
  registry_.set_bin_range("endToEndDelay", BinRange{0.0, 1.0, kBins});
  registry_.set_unit("endToEndDelay", "s");
}

std::int64_t TelemetryCollector::rank_of(std::string_view module) const {
  // "net.<node>[.<submodule>...]" -> rank of "net.<node>"
  const auto first = module.find('.');
  const auto second = first == std::string_view::npos ? first : module.find('.', first + 1);
  const std::string node(module.substr(0, second));
  auto it = node_rank_.find(node);
  return it == node_rank_.end() ? static_cast<std::int64_t>(node_rank_.size()) : it->second;
}

void TelemetryCollector::on_start(const sim::Topology& topology, const sim::ScenarioConfig&) {
  const auto& nodes = topology.nodes();
  node_modules_.clear();
  queue_modules_.assign(nodes.size(), {});
  ping_modules_.clear();
  sink_modules_.clear();
  for (const sim::Node& n : nodes) {
    node_modules_.push_back(n.module);
    node_rank_[n.module] = n.id.index;
    for (std::size_t p = 0; p < n.ports.size(); ++p) {
      std::string module = topology.queue_module(n.id, p);
      const auto capacity = topology.links()[n.ports[p].link].queue_capacity_pkts;
      registry_.set_bin_range(module, "queueLength", BinRange{0.0, static_cast<double>(capacity), kBins});
      queue_modules_[n.id.index].push_back(std::move(module));
    }
  }
}

void TelemetryCollector::on_enqueue(sim::NodeId owner, std::size_t port, std::size_t occupancy_before, bool,
                                    sim::SimTime) {
  registry_.record_sample(queue_modules_[owner.index][port], "queueLength",
                          static_cast<double>(occupancy_before));
}

void TelemetryCollector::on_deliver(const sim::Packet& packet, sim::SimTime now) {
  registry_.record_sample(receiving_app_module(node_modules_[packet.dst.index], packet.kind), "endToEndDelay",
                          now - packet.created_at);
}

std::vector<StatRecord> TelemetryCollector::finish(const sim::TraceLog& trace, int label) && {
  for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
    const sim::NodeCounters& c = trace.nodes[i];
    const std::string& module = trace.node_modules[i];
    if (c.sent != 0) registry_.record_scalar(module, "pktSent", static_cast<double>(c.sent));
    if (c.received != 0) registry_.record_scalar(module, "pktReceived", static_cast<double>(c.received));
    if (c.dropped != 0) registry_.record_scalar(module, "pktDropped", static_cast<double>(c.dropped));
  }
  return std::move(registry_).finalize(label);
}

RunResult simulate_and_collect(const sim::ScenarioConfig& config) {
  TelemetryCollector collector;
  RunResult out;
  out.trace = sim::run(config, &collector);
  out.records = std::move(collector).finish(out.trace, label_for(config.scenario));
  return out;
}

}  // namespace ddoslab::telemetry
