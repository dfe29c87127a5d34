#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "ddoslab/error.hpp"
#include "ddoslab/simcore/apps.hpp"
#include "ddoslab/simcore/config.hpp"
#include "ddoslab/simcore/event_queue.hpp"
#include "ddoslab/simcore/link.hpp"
#include "ddoslab/simcore/simulator.hpp"
#include "ddoslab/simcore/topology.hpp"
#include "ddoslab/simcore/trace.hpp"
#include "gen.hpp"

using namespace ddoslab;
using namespace ddoslab::sim;

namespace {

ScenarioConfig small(Scenario s, std::uint32_t n_ue, double duration, std::uint64_t seed) {
  ScenarioConfig c;
  c.scenario = s;
  c.n_ue = n_ue;
  c.duration_s = duration;
  c.seed = seed;
  return c;
}

}  // namespace

// ------------------------------------------------------------- event queue

TEST(EventQueue, EqualTimesPopInInsertionOrder) {
  EventQueue q;
  q.schedule({1.0, 0, EventKind::app_send, 10, 0});
  q.schedule({1.0, 0, EventKind::app_send, 20, 0});
  EXPECT_EQ(q.pop().node, 10u);
  EXPECT_EQ(q.pop().node, 20u);
}

TEST(EventQueue, EarlierTimePopsFirst) {
  EventQueue q;
  q.schedule({2.0, 0, EventKind::app_send, 2, 0});
  q.schedule({1.0, 0, EventKind::app_send, 1, 0});
  EXPECT_EQ(q.pop().time, 1.0);
  EXPECT_EQ(q.now(), 1.0);
  EXPECT_EQ(q.pop().time, 2.0);
}

TEST(EventQueue, RandomEventsMatchSortOracle) {
  testgen::Rng rng(42);
  EventQueue q;
  std::vector<std::pair<double, std::uint64_t>> oracle;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    // Coarse times force plenty of ties.
    const double t = std::floor(testgen::uniform(rng, 0.0, 500.0)) / 10.0;
    q.schedule({t, 0, EventKind::link_arrival, 0, i});
    oracle.emplace_back(t, i);
  }
  std::sort(oracle.begin(), oracle.end());
  for (const auto& [t, id] : oracle) {
    const Event e = q.pop();
    ASSERT_EQ(e.time, t);
    ASSERT_EQ(e.packet, id);
  }
  EXPECT_TRUE(q.empty());
}

TEST(EventQueue, RejectsEventsInThePast) {
  EventQueue q;
  q.schedule({2.0, 0, EventKind::app_send, 0, 0});
  q.pop();
  EXPECT_THROW(q.schedule({1.0, 0, EventKind::app_send, 0, 0}), std::invalid_argument);
  EXPECT_NO_THROW(q.schedule({2.0, 0, EventKind::app_send, 0, 0}));
}

// ---------------------------------------------------------------- topology

TEST(Topology, DefaultCountsGive107Nodes) {
  ScenarioConfig c;
  const Topology t = build_topology(c);
  EXPECT_EQ(t.size(), 107u);
  std::map<NodeKind, int> kinds;
  for (const auto& n : t.nodes()) ++kinds[n.id.kind];
  EXPECT_EQ(kinds[NodeKind::ue], 100);
  EXPECT_EQ(kinds[NodeKind::host], 3);
  EXPECT_EQ(kinds[NodeKind::gnodeb], 1);
  EXPECT_EQ(kinds[NodeKind::background_cell], 1);
  EXPECT_EQ(kinds[NodeKind::router], 1);
  EXPECT_EQ(kinds[NodeKind::core], 1);
}

TEST(Topology, MinimalTopologyWithoutHosts) {
  ScenarioConfig c;
  c.n_ue = 2;
  c.n_hosts = 0;
  const Topology t = build_topology(c);
  EXPECT_EQ(t.size(), 6u);
  EXPECT_EQ(t.n_hosts(), 0u);
  EXPECT_NO_THROW(run(small(Scenario::normal, 2, 3.0, 1)));
}

TEST(Topology, EveryPairHasUniqueShortestPath) {
  ScenarioConfig c;
  c.n_ue = 20;
  c.n_hosts = 3;
  const Topology t = build_topology(c);
  // UEs + hosts + gNodeB, backgroundCell, core, router
  ASSERT_EQ(t.size(), 20u + 3u + 4u);
  const auto adj = t.adjacency();
  // BFS from every node counting shortest paths.
  for (std::uint32_t s = 0; s < t.size(); ++s) {
    std::vector<int> dist(t.size(), -1);
    std::vector<std::uint64_t> paths(t.size(), 0);
    std::queue<std::uint32_t> q;
    dist[s] = 0;
    paths[s] = 1;
    q.push(s);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto v : adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
        if (dist[v] == dist[u] + 1) paths[v] += paths[u];
      }
    }
    for (std::uint32_t d = 0; d < t.size(); ++d) {
      ASSERT_GE(dist[d], 0) << s << " cannot reach " << d;
      ASSERT_EQ(paths[d], 1u) << s << " -> " << d;
    }
  }
}

TEST(Topology, UeTrafficIsAnchoredAtCore) {
  ScenarioConfig c;
  c.n_ue = 4;
  const Topology t = build_topology(c);
  const auto r = t.route(t.ue(0), t.ue(3));
  const std::vector<NodeId> want{t.ue(0), t.gnodeb(), t.core(), t.gnodeb(), t.ue(3)};
  EXPECT_EQ(r, want);
  const auto h = t.route(t.host(1), t.ue(2));
  const std::vector<NodeId> want_h{t.host(1), t.router(), t.core(), t.gnodeb(), t.ue(2)};
  EXPECT_EQ(h, want_h);
}

TEST(Topology, ModuleNames) {
  ScenarioConfig c;
  c.n_ue = 3;
  const Topology t = build_topology(c);
  EXPECT_EQ(t.node(t.ue(2)).module, "net.ue[2]");
  EXPECT_EQ(t.node(t.gnodeb()).module, "net.gnb");
  EXPECT_EQ(t.node(t.background_cell()).module, "net.backgroundCell");
  EXPECT_EQ(t.node(t.host(0)).module, "net.host[0]");
  EXPECT_EQ(t.queue_module(t.ue(1), 0), "net.ue[1].ppp[0].queue");
}

TEST(Topology, RejectsInvalidConfigs) {
  ScenarioConfig c;
  c.n_ue = 1;
  EXPECT_THROW(build_topology(c), ConfigError);
  ScenarioConfig z;
  z.links.core_router.queue_capacity_pkts = 0;
  EXPECT_THROW(build_topology(z), ConfigError);
  ScenarioConfig bw;
  bw.links.ue_gnb.bandwidth_bps = 0.0;
  EXPECT_THROW(build_topology(bw), ConfigError);
}

// -------------------------------------------------------------------- apps

TEST(PingApp, NextSendIsOneIntervalLater) {
  Rng rng(1);
  PingAppState s{NodeId{0, NodeKind::ue}, 100, 64, 1.0};
  auto [pkt, next] = ping_app_next(s, 0.0, rng);
  EXPECT_EQ(next, 1.0);
  EXPECT_EQ(pkt.kind, PacketKind::ping_request);
  EXPECT_EQ(pkt.size_bytes, 64u);
  EXPECT_EQ(pkt.created_at, 0.0);
}

TEST(PingApp, TwoUesAlwaysPingEachOther) {
  Rng rng(9);
  PingAppState s{NodeId{0, NodeKind::ue}, 2, 64, 1.0};
  for (int i = 0; i < 50; ++i) EXPECT_EQ(ping_app_next(s, i, rng).first.dst.index, 1u);
}

TEST(PingApp, PeerSequenceIsSeededAndNeverSelf) {
  auto peers = [](std::uint64_t seed) {
    Rng rng(seed);
    PingAppState s{NodeId{5, NodeKind::ue}, 20, 64, 1.0};
    std::vector<std::uint32_t> out;
    for (int i = 0; i < 100; ++i) out.push_back(ping_app_next(s, i, rng).first.dst.index);
    return out;
  };
  const auto a = peers(77), b = peers(77), c = peers(78);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (auto p : a) {
    EXPECT_NE(p, 5u);
    EXPECT_LT(p, 20u);
  }
}

TEST(FloodApp, OfferedLoadIsEightMbps) {
  FloodAppState s;
  EXPECT_DOUBLE_EQ(s.size_bytes * 8.0 / s.interval_s, 8.0e6);
  EXPECT_EQ(periodic_send_count(1.0, 0.001), 1000u);
  EXPECT_EQ(periodic_send_count(60.0, 0.001), 60000u);
}

TEST(FloodApp, RoundRobinCoversEveryUeEqually) {
  // 3 hosts x 1 s x 1000 sends = 3000 packets over 100 UEs.
  std::vector<int> hits(100, 0);
  for (std::uint32_t h = 0; h < 3; ++h) {
    FloodAppState s;
    s.self = NodeId{100 + h, NodeKind::host};
    s.n_ue = 100;
    s.next_target = h * 100 / 3;
    SimTime now = 0.0;
    for (std::uint64_t i = 0; i < periodic_send_count(1.0, s.interval_s); ++i) {
      auto [pkt, next] = flood_app_next(s, now);
      EXPECT_EQ(pkt.kind, PacketKind::flood);
      EXPECT_EQ(pkt.size_bytes, 1000u);
      ++hits[pkt.dst.index];
      now = next;
    }
    EXPECT_EQ(s.sent, 1000u);
  }
  for (int n : hits) EXPECT_EQ(n, 30);
}

// -------------------------------------------------------------------- link

TEST(Link, EmptyLinkArrivalIsSerializationPlusPropagation) {
  Link l{{0, NodeKind::host}, {1, NodeKind::router}, 10e6, 0.001, 100};
  LinkQueue q;
  Packet p;
  p.size_bytes = 1000;
  const auto r = link_transmit(l, q, p, 2.0);
  ASSERT_FALSE(r.dropped());
  EXPECT_NEAR(*r.arrival, 2.0 + 0.0008 + 0.001, 1e-12);
  EXPECT_EQ(r.occupancy_before, 0u);
}

TEST(Link, BackToBackPacketsQueueFifo) {
  Link l{{0, NodeKind::host}, {1, NodeKind::router}, 10e6, 0.001, 100};
  LinkQueue q;
  Packet p;
  p.size_bytes = 1000;
  const auto a = link_transmit(l, q, p, 0.0);
  Packet small_pkt;
  small_pkt.size_bytes = 64;
  const auto b = link_transmit(l, q, small_pkt, 0.0);
  EXPECT_NEAR(*b.arrival, *a.arrival + serialization_delay(l, 64), 1e-15);
  EXPECT_EQ(b.occupancy_before, 1u);
}

TEST(Link, FullQueueDrops) {
  Link l{{0, NodeKind::host}, {1, NodeKind::router}, 1e6, 0.0, 2};
  LinkQueue q;
  Packet p;
  p.size_bytes = 1000;
  EXPECT_FALSE(link_transmit(l, q, p, 0.0).dropped());
  EXPECT_FALSE(link_transmit(l, q, p, 0.0).dropped());
  const auto third = link_transmit(l, q, p, 0.0);
  EXPECT_TRUE(third.dropped());
  EXPECT_EQ(third.occupancy_before, 2u);
  // Once the first packet has been serialized there is room again.
  EXPECT_FALSE(link_transmit(l, q, p, 0.008).dropped());
}

TEST(Link, ZeroSizePacketRejected) {
  Link l{{0, NodeKind::host}, {1, NodeKind::router}, 1e6, 0.0, 2};
  LinkQueue q;
  Packet p;
  EXPECT_THROW(link_transmit(l, q, p, 0.0), std::invalid_argument);
}

// --------------------------------------------------------------- simulator

TEST(Simulator, RerunGivesIdenticalDigest) {
  const auto c = small(Scenario::normal, 20, 10.0, 7);
  EXPECT_EQ(trace_digest(run(c)), trace_digest(run(c)));
  auto other = c;
  other.seed = 8;
  EXPECT_NE(trace_digest(run(c)), trace_digest(run(other)));
}

TEST(Simulator, ConservationHoldsGloballyAndPerNode) {
  for (Scenario s : {Scenario::normal, Scenario::ddos}) {
    for (std::uint64_t seed : {1u, 2u}) {
      const TraceLog t = run(small(s, 20, 5.0, seed));
      const auto tot = t.totals();
      EXPECT_EQ(tot.sent, tot.delivered + tot.dropped + tot.in_flight);
      EXPECT_EQ(tot.sent, t.packets.size());
      for (const auto& n : t.nodes) EXPECT_EQ(n.sent, n.delivered + n.dropped + n.in_flight);
      std::uint64_t received = 0;
      for (const auto& n : t.nodes) received += n.received;
      EXPECT_EQ(received, tot.delivered);
    }
  }
}

TEST(Simulator, DeliveriesHappenAfterSends) {
  const TraceLog t = run(small(Scenario::ddos, 20, 3.0, 3));
  for (const auto& p : t.packets) {
    if (p.outcome == Outcome::delivered) {
      ASSERT_TRUE(p.delivered_at.has_value());
      EXPECT_GT(*p.delivered_at, p.sent_at);
      EXPECT_GT(p.hops, 0);
    } else {
      EXPECT_FALSE(p.delivered_at.has_value());
    }
  }
}

TEST(Simulator, NormalScenarioHasNoLoss) {
  const TraceLog t = run(small(Scenario::normal, 20, 60.0, 1));
  EXPECT_EQ(t.totals().dropped, 0u);
  EXPECT_EQ(t.ping_delivery_ratio(), 1.0);
  for (const auto& p : t.packets) EXPECT_TRUE(is_ping(p.kind));
}

TEST(Simulator, FloodSendsOneThousandPacketsPerHostPerSecond) {
  const TraceLog t = run(small(Scenario::ddos, 100, 1.0, 1));
  std::map<std::uint32_t, int> per_host;
  std::map<std::uint32_t, int> per_ue;
  for (const auto& p : t.packets) {
    if (p.kind != PacketKind::flood) continue;
    ++per_host[p.src.index];
    ++per_ue[p.dst.index];
  }
  ASSERT_EQ(per_host.size(), 3u);
  for (const auto& [h, n] : per_host) EXPECT_EQ(n, 1000);
  ASSERT_EQ(per_ue.size(), 100u);
  for (const auto& [u, n] : per_ue) EXPECT_EQ(n, 30);
}

TEST(Simulator, DdosDegradesPingTraffic) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    ScenarioConfig n;
    n.seed = seed;
    n.duration_s = 10.0;
    ScenarioConfig d = n;
    d.scenario = Scenario::ddos;
    const TraceLog tn = run(n), td = run(d);
    EXPECT_GT(td.totals().dropped, 0u);
    EXPECT_GT(td.mean_ping_rtt(), tn.mean_ping_rtt());
    EXPECT_LT(td.ping_delivery_ratio(), tn.ping_delivery_ratio());
  }
}

TEST(Simulator, ShorterFloodIntervalNeverReducesDrops) {
  std::uint64_t last = 0;
  for (double interval : {0.008, 0.004, 0.002, 0.001, 0.0005}) {
    auto c = small(Scenario::ddos, 20, 5.0, 4);
    c.flood_interval_s = interval;
    const auto drops = run(c).totals().dropped;
    EXPECT_GE(drops, last) << "interval " << interval;
    last = drops;
  }
  EXPECT_GT(last, 0u);
}

TEST(Simulator, NdjsonHasOneLinePerPacket) {
  const TraceLog t = run(small(Scenario::normal, 4, 5.0, 2));
  std::ostringstream out;
  write_ndjson(t, out);
  const std::string s = out.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')), t.packets.size());
  EXPECT_NE(s.find("\"status\""), std::string::npos);
  EXPECT_EQ(trace_digest(t).size(), 64u);
}

TEST(Simulator, PropagatesConfigErrors) {
  auto c = small(Scenario::normal, 1, 5.0, 1);
  EXPECT_THROW(run(c), ConfigError);
}

// ------------------------------------------------------------------ config

TEST(ScenarioConfigJson, RoundTrips) {
  ScenarioConfig c;
  c.scenario = Scenario::ddos;
  c.n_ue = 33;
  c.flood_interval_s = 0.0025;
  c.links.gnb_core.bandwidth_bps = 12.5e6;
  EXPECT_EQ(scenario_from_json(scenario_to_json(c)), c);
}

TEST(ScenarioConfigJson, MissingKeysKeepBase) {
  ScenarioConfig base;
  base.n_ue = 7;
  const auto c = scenario_from_json(R"({"duration_s": 3.5})", base);
  EXPECT_EQ(c.n_ue, 7u);
  EXPECT_EQ(c.duration_s, 3.5);
}

TEST(ScenarioConfigJson, RejectsGarbage) {
  EXPECT_THROW(scenario_from_json("{not json"), ConfigError);
  EXPECT_THROW(scenario_from_json(R"({"scenario": "storm"})"), std::exception);
}
