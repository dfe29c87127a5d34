#include "ddoslab/simcore/trace.hpp"

#include <ostream>

#include "ddoslab/util/digest.hpp"
#include "ddoslab/util/numfmt.hpp"

namespace ddoslab::sim {

namespace {

void append_record(std::string& line, const TraceLog& t, const PacketRecord& r) {
  line.clear();
  line += "{\"id\":";
  line += std::to_string(r.id);
  line += ",\"kind\":\"";
  line += to_string(r.kind);
  line += "\",\"src\":\"";
  line += t.node_modules[r.src.index];
  line += "\",\"dst\":\"";
  line += t.node_modules[r.dst.index];
  line += "\",\"size\":";
  line += std::to_string(r.size_bytes);
  line += ",\"sent_at\":";
  util::append_real(line, r.sent_at);
  line += ",\"status\":\"";
  line += to_string(r.outcome);
  line += "\",\"delivered_at\":";
  if (r.delivered_at) {
    util::append_real(line, *r.delivered_at);
  } else {
    line += "null";
  }
  line += ",\"hops\":";
  line += std::to_string(r.hops);
  line += "}\n";
}

}  // namespace

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::in_flight: return "IN_FLIGHT";
    case Outcome::delivered: return "DELIVERED";
    case Outcome::dropped: return "DROPPED";
  }
  return "?";
}

TraceTotals TraceLog::totals() const {
  TraceTotals t;
  for (const NodeCounters& n : nodes) {
    t.sent += n.sent;
    t.delivered += n.delivered;
    t.dropped += n.dropped;
    t.in_flight += n.in_flight;
  }
  return t;
}

double TraceLog::mean_ping_rtt() const noexcept {
  return ping_rtt_count == 0 ? 0.0 : ping_rtt_sum / static_cast<double>(ping_rtt_count);
}

double TraceLog::ping_delivery_ratio() const noexcept {
  const auto resolved = ping_delivered + ping_dropped;
  return resolved == 0 ? 0.0 : static_cast<double>(ping_delivered) / static_cast<double>(resolved);
}

void write_ndjson(const TraceLog& trace, std::ostream& out) {
  std::string line;
  for (const PacketRecord& r : trace.packets) {
    append_record(line, trace, r);
    out << line;
  }
}

std::string trace_digest(const TraceLog& trace) {
  util::Sha256 h;
  std::string line;
  for (const PacketRecord& r : trace.packets) {
    append_record(line, trace, r);
    h.update(line);
  }
  return h.hex_digest();
}

}  // namespace ddoslab::sim
