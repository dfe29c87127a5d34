#include "ddoslab/simcore/simulator.hpp"

#include <vector>

#include "ddoslab/simcore/apps.hpp"
#include "ddoslab/simcore/event_queue.hpp"
#include "ddoslab/simcore/link.hpp"

namespace ddoslab::sim {

namespace {

// Stream tags so per-UE generators never share a sequence.
constexpr std::uint64_t kOffsetStream = 0x6f6666736574ULL;
constexpr std::uint64_t kPeerStream = 0x70656572ULL;

Rng make_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

class Simulator {
 public:
  Simulator(const ScenarioConfig& config, SimObserver* observer)
      : config_(config), topo_(build_topology(config)), observer_(observer) {
    queues_.resize(topo_.links().size() * 2);
    trace_.queues.resize(queues_.size());
    trace_.nodes.resize(topo_.size());
    for (const Node& n : topo_.nodes()) trace_.node_modules.push_back(n.module);
  }

  TraceLog run() {
    if (observer_ != nullptr) observer_->on_start(topo_, config_);
    start_apps();
    while (!events_.empty() && events_.top().time < config_.duration_s) {
      const Event e = events_.pop();
      ++trace_.events_processed;
      if (e.kind == EventKind::app_send) {
        on_app_send(e.node);
      } else {
        on_arrival(e.packet, e.node);
      }
    }
    trace_.end_time = config_.duration_s;
    for (const PacketRecord& r : trace_.packets)
      if (r.outcome == Outcome::in_flight) ++trace_.nodes[r.src.index].in_flight;
    return std::move(trace_);
  }

 private:
  void start_apps() {
    const std::uint32_t n_ue = topo_.n_ue();
    pings_.resize(n_ue);
    peer_rngs_.reserve(n_ue);
    for (std::uint32_t i = 0; i < n_ue; ++i) {
      pings_[i] = PingAppState{topo_.ue(i), n_ue, config_.ping_size_bytes, config_.ping_interval_s};
      peer_rngs_.push_back(make_stream(config_.seed, kPeerStream, i));
      Rng offset_rng = make_stream(config_.seed, kOffsetStream, i);
      const SimTime first = std::uniform_real_distribution<double>(0.0, config_.ping_interval_s)(offset_rng);
      schedule_send(first, topo_.ue(i));
    }
    if (config_.scenario != Scenario::ddos) return;
    flood_sends_ = periodic_send_count(config_.duration_s, config_.flood_interval_s);
    floods_.resize(topo_.n_hosts());
    for (std::uint32_t h = 0; h < topo_.n_hosts(); ++h) {
      FloodAppState& f = floods_[h];
      f.self = topo_.host(h);
      f.n_ue = n_ue;
      // Spread the hosts' round-robin cursors over the UE range.
      f.next_target = static_cast<std::uint32_t>((static_cast<std::uint64_t>(h) * n_ue) / topo_.n_hosts());
      f.size_bytes = config_.flood_size_bytes;
      f.interval_s = config_.flood_interval_s;
      f.start = 0.0;
      if (flood_sends_ > 0) schedule_send(0.0, f.self);
    }
  }

  void schedule_send(SimTime t, NodeId node) {
    if (t < config_.duration_s) events_.schedule(Event{t, 0, EventKind::app_send, node.index, 0});
  }

  void on_app_send(std::uint32_t node_index) {
    const NodeId node = topo_.nodes()[node_index].id;
    const SimTime now = events_.now();
    if (node.kind == NodeKind::ue) {
      auto [packet, next] = ping_app_next(pings_[node.index], now, peer_rngs_[node.index]);
      originate(packet);
      schedule_send(next, node);
    } else {
      FloodAppState& f = floods_[topo_.node(node).ordinal];
      auto [packet, next] = flood_app_next(f, now);
      originate(packet);
      if (f.sent < flood_sends_) schedule_send(next, node);
    }
  }

  void originate(Packet packet) {
    packet.id = trace_.packets.size();
    PacketRecord r;
    r.id = packet.id;
    r.kind = packet.kind;
    r.src = packet.src;
    r.dst = packet.dst;
    r.size_bytes = packet.size_bytes;
    r.sent_at = packet.created_at;
    trace_.packets.push_back(r);
    packets_.push_back(packet);
    anchor_pending_.push_back(Topology::anchored_at_core(packet.src, packet.dst));
    ++trace_.nodes[packet.src.index].sent;
    forward(packet.id, packet.src);
  }

  void forward(std::uint64_t slot, NodeId at) {
    const Packet& p = packets_[slot];
    const NodeId target = anchor_pending_[slot] ? topo_.core() : p.dst;
    const Port& port = topo_.next_hop(at, target);
    const Link& link = topo_.links()[port.link];
    const SimTime now = events_.now();
    const LinkTransmit tx = link_transmit(link, queues_[port.queue()], p, now);

    QueueStats& qs = trace_.queues[port.queue()];
    ++qs.offered;
    qs.occupancy_sum += static_cast<double>(tx.occupancy_before);
    qs.max_occupancy = std::max<std::uint64_t>(qs.max_occupancy, tx.occupancy_before);
    if (observer_ != nullptr) {
      const auto& ports = topo_.node(at).ports;
      observer_->on_enqueue(at, static_cast<std::size_t>(&port - ports.data()), tx.occupancy_before,
                            tx.dropped(), now);
    }

    if (tx.dropped()) {
      ++qs.dropped;
      trace_.packets[slot].outcome = Outcome::dropped;
      ++trace_.nodes[p.src.index].dropped;
      if (is_ping(p.kind)) ++trace_.ping_dropped;
      return;
    }
    events_.schedule(Event{*tx.arrival, 0, EventKind::link_arrival, port.peer.index, slot});
  }

  void on_arrival(std::uint64_t slot, std::uint32_t node_index) {
    const NodeId at = topo_.nodes()[node_index].id;
    ++trace_.packets[slot].hops;
    if (anchor_pending_[slot] && at == topo_.core()) anchor_pending_[slot] = false;
    if (at == packets_[slot].dst && !anchor_pending_[slot]) {
      deliver(slot);
    } else {
      forward(slot, at);
    }
  }

  void deliver(std::uint64_t slot) {
    const SimTime now = events_.now();
    const Packet p = packets_[slot];
    PacketRecord& r = trace_.packets[slot];
    r.outcome = Outcome::delivered;
    r.delivered_at = now;
    ++trace_.nodes[p.src.index].delivered;
    ++trace_.nodes[p.dst.index].received;
    if (is_ping(p.kind)) ++trace_.ping_delivered;
    if (observer_ != nullptr) observer_->on_deliver(p, now);

    switch (p.kind) {
      case PacketKind::ping_request:
        originate(reply_to(p, PacketKind::ping_reply, now));
        break;
      case PacketKind::flood:
        originate(reply_to(p, PacketKind::flood_reply, now));
        break;
      case PacketKind::ping_reply:
        ++trace_.ping_rtt_count;
        trace_.ping_rtt_sum += now - p.request_created_at;
        break;
      case PacketKind::flood_reply:
        break;
    }
  }

  static Packet reply_to(const Packet& request, PacketKind kind, SimTime now) {
    Packet reply;
    reply.src = request.dst;
    reply.dst = request.src;
    reply.size_bytes = request.size_bytes;
    reply.created_at = now;
    reply.kind = kind;
    reply.request_created_at = request.created_at;
    return reply;
  }

  const ScenarioConfig config_;
  const Topology topo_;
  SimObserver* observer_;

  EventQueue events_;
  std::vector<LinkQueue> queues_;
  std::vector<Packet> packets_;
  std::vector<bool> anchor_pending_;
  std::vector<PingAppState> pings_;
  std::vector<Rng> peer_rngs_;
  std::vector<FloodAppState> floods_;
  std::uint64_t flood_sends_ = 0;
  TraceLog trace_;
};

}  // namespace

TraceLog run(const ScenarioConfig& config, SimObserver* observer) {
  Simulator sim(config, observer);
  return sim.run();
}

}  // namespace ddoslab::sim
