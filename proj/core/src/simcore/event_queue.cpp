#include "ddoslab/simcore/event_queue.hpp"

#include <stdexcept>
#include <string>

namespace ddoslab::sim {

void EventQueue::schedule(Event event) {
  if (!(event.time >= now_)) {
    throw std::invalid_argument("event scheduled in the past: t=" + std::to_string(event.time) +
                                " < now=" + std::to_string(now_));
  }
  event.seq = next_seq_++;
  heap_.push(event);
}

Event EventQueue::pop() {
  if (heap_.empty()) throw std::logic_error("pop from empty event queue");
  Event e = heap_.top();
  heap_.pop();
  now_ = e.time;
  return e;
}

}  // namespace ddoslab::sim
