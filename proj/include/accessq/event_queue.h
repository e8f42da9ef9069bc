// Copyright 2026 The accessq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ACCESSQ_EVENT_QUEUE_H_
#define ACCESSQ_EVENT_QUEUE_H_

#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "accessq/sim_time.h"

namespace accessq {

// Future event list. Entries pop in (time, rank, insertion order) order, so
// simultaneous events with equal rank fire FIFO. The queue owns the clock:
// popping an entry advances now() to its timestamp.
template <typename Event>
class EventQueue {
 public:
  struct Entry {
    SimTime time;
    int rank = 0;
    std::uint64_t seq = 0;
    Event event;
  };

  // Throws std::invalid_argument if `time` is earlier than now().
  void Schedule(SimTime time, Event event, int rank = 0) {
    if (time < now_) {
      throw std::invalid_argument("event scheduled in the past: " + time.ToString() +
                                  " < now " + now_.ToString());
    }
    heap_.push(Entry{time, rank, next_seq_++, std::move(event)});
  }

  std::optional<Entry> Pop() {
    if (heap_.empty()) return std::nullopt;
    Entry top = heap_.top();
    heap_.pop();
    now_ = top.time;
    return top;
  }

  const Entry* Peek() const { return heap_.empty() ? nullptr : &heap_.top(); }

  SimTime now() const { return now_; }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.time != b.time) return a.time > b.time;
      if (a.rank != b.rank) return a.rank > b.rank;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  SimTime now_ = SimTime::Zero();
  std::uint64_t next_seq_ = 0;
};

}  // namespace accessq

#endif  // ACCESSQ_EVENT_QUEUE_H_
