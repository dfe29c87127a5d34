#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "ddoslab/simcore/types.hpp"

namespace ddoslab::sim {

enum class EventKind : std::uint8_t { app_send, link_arrival };

struct Event {
  SimTime time = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::app_send;
  std::uint32_t node = 0;    // app owner, or the node a packet arrives at
  std::uint64_t packet = 0;  // slot in the simulator's packet table (link_arrival only)
};

/// Min-queue over (time, seq). `seq` is assigned on insertion, so events at
/// equal times pop in insertion order.
class EventQueue {
 public:
  /// Inserts an event; `event.seq` is overwritten. Throws std::invalid_argument
  /// if `event.time` lies before the current time.
  void schedule(Event event);

  /// Removes the earliest event and advances the clock to its time.
  Event pop();

  const Event& top() const { return heap_.top(); }
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  SimTime now() const noexcept { return now_; }
  std::uint64_t scheduled_total() const noexcept { return next_seq_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  SimTime now_ = 0.0;
  std::uint64_t next_seq_ = 0;
};

}  // namespace ddoslab::sim
