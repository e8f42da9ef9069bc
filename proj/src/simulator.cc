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

#include "accessq/simulator.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "accessq/event_queue.h"
#include "accessq/rng.h"

namespace accessq {

namespace {

// Arrivals sort before departures at equal timestamps.
constexpr int kArrivalRank = 0;
constexpr int kDepartureRank = 1;

struct Event {
  enum class Type : std::uint8_t { kArrival, kDeparture } type;
  std::uint32_t flow = 0;
  std::uint64_t index = 0;  // packet index within the flow's stream
};

struct FlowCursor {
  std::uint64_t next = 0;   // next packet to hand to the ingress link
  SimTime ingress_free;     // when the flow's r_in link finishes its last packet
  std::uint64_t key = 0;    // hash of the flow id, for the digest
};

class BottleneckRun {
 public:
  BottleneckRun(const LinkConfig& link, const BufferPolicy& buffer,
                std::span<const FlowStream> flows, SimWindow window, Rng queue_rng,
                SimOptions options)
      : link_(link),
        flows_(flows),
        window_(window),
        options_(options),
        queue_(MakeQueueDisc(buffer, std::move(queue_rng))),
        cursors_(flows.size()) {
    result_.flows.resize(flows.size());
    std::uint64_t record_base = 0;
    for (std::size_t f = 0; f < flows.size(); ++f) {
      auto& stats = result_.flows[f];
      stats.flow_id = flows[f].flow_id;
      cursors_[f].key = Fnv1a64(flows[f].flow_id);
      for (const auto& p : flows[f].packets) {
        if (Counted(p.created)) {
          ++stats.sent;
          stats.sent_bytes += p.size;
        }
      }
      record_base_.push_back(record_base);
      record_base += flows[f].packets.size();
    }
    if (options_.record_packets) {
      result_.packets.resize(record_base);
      for (std::uint32_t f = 0; f < flows.size(); ++f) {
        for (std::uint64_t i = 0; i < flows[f].packets.size(); ++i) {
          const auto& g = flows[f].packets[i];
          auto& rec = result_.packets[record_base_[f] + i];
          rec.flow = f;
          rec.id = i;
          rec.size = g.size;
          rec.traffic_class = g.traffic_class;
          rec.counted = Counted(g.created);
          rec.created = g.created;
        }
      }
    }
  }

  SimResult Run() {
    // Seed arrivals in flow-id order so ties never depend on the caller's order.
    std::vector<std::uint32_t> order(flows_.size());
    std::iota(order.begin(), order.end(), 0U);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return flows_[a].flow_id < flows_[b].flow_id;
    });
    for (std::uint32_t f : order) ScheduleNextArrival(f);

    while (const auto* next = events_.Peek()) {
      if (next->time >= window_.end) break;
      const auto entry = *events_.Pop();
      ++result_.events_processed;
      if (entry.event.type == Event::Type::kArrival) {
        OnArrival(entry.event.flow, entry.event.index);
      } else {
        OnDeparture();
      }
    }
    Finish();
    return std::move(result_);
  }

 private:
  bool Counted(SimTime created) const {
    return created >= window_.measure_from && created < window_.end;
  }

  PacketRecord* Record(std::uint32_t flow, std::uint64_t id) {
    return options_.record_packets ? &result_.packets[record_base_[flow] + id] : nullptr;
  }

  void Digest(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    result_.event_digest = Fnv1a64Mix(Fnv1a64Mix(Fnv1a64Mix(result_.event_digest, a), b), c);
  }

  void ScheduleNextArrival(std::uint32_t f) {
    auto& cursor = cursors_[f];
    const auto& packets = flows_[f].packets;
    if (cursor.next >= packets.size()) return;
    const GeneratedPacket& g = packets[cursor.next];
    if (g.created >= window_.end) return;
    // The last bit reaches the router one r_in serialization after the
    // flow's ingress link is free.
    const SimTime arrival = Max(g.created, cursor.ingress_free) + SerializationTime(g.size, link_.r_in);
    cursor.ingress_free = arrival;
    events_.Schedule(arrival, Event{Event::Type::kArrival, f, cursor.next}, kArrivalRank);
    ++cursor.next;
  }

  void OnArrival(std::uint32_t f, std::uint64_t index) {
    const SimTime now = events_.now();
    const GeneratedPacket& g = flows_[f].packets[index];
    Packet pkt{index, f, g.size, g.traffic_class, g.created, now, std::nullopt};
    if (auto* rec = Record(f, index)) rec->enqueued = now;

    std::uint64_t outcome = 0;
    if (!in_service_) {
      StartService(pkt);
    } else {
      const EnqueueResult r = queue_->Enqueue(pkt, now);
      if (r.drop) {
        outcome = 1 + static_cast<std::uint64_t>(*r.drop);
        if (Counted(g.created)) {
          auto& stats = result_.flows[f];
          ++stats.dropped;
          if (*r.drop == DropReason::kFull) {
            ++stats.dropped_full;
          } else {
            ++stats.dropped_early;
          }
        }
        if (auto* rec = Record(f, index)) rec->drop = r.drop;
      }
      if (queue_->occupancy() > queue_->policy().capacity) {
        throw std::logic_error("buffer occupancy exceeded its capacity");
      }
      result_.max_occupancy = std::max(result_.max_occupancy, queue_->occupancy());
    }
    Digest((now.nanos() << 1) | 0U, cursors_[f].key, (index << 2) | outcome);
    ScheduleNextArrival(f);
  }

  void StartService(const Packet& pkt) {
    const SimTime now = events_.now();
    in_service_ = pkt;
    if (auto* rec = Record(pkt.flow, pkt.id)) rec->service_start = now;
    events_.Schedule(now + SerializationTime(pkt.size, link_.r_out), Event{Event::Type::kDeparture},
                     kDepartureRank);
  }

  void OnDeparture() {
    const SimTime now = events_.now();
    Packet pkt = *in_service_;
    in_service_.reset();
    pkt.departed = now;
    if (Counted(pkt.created)) {
      auto& stats = result_.flows[pkt.flow];
      ++stats.delivered;
      stats.delay_samples.push_back((now - pkt.created).seconds());
    }
    if (auto* rec = Record(pkt.flow, pkt.id)) rec->departed = now;
    Digest((now.nanos() << 1) | 1U, cursors_[pkt.flow].key, pkt.id);
    if (auto next = queue_->Dequeue()) StartService(*next);
  }

  void Finish() {
    // Count what is still inside the system independently of the
    // delivered/dropped counters, then check conservation.
    if (in_service_ && Counted(in_service_->created)) ++result_.flows[in_service_->flow].in_flight;
    while (auto p = queue_->Dequeue()) {
      if (Counted(p->created)) ++result_.flows[p->flow].in_flight;
    }
    for (std::uint32_t f = 0; f < flows_.size(); ++f) {
      const auto& packets = flows_[f].packets;
      for (std::uint64_t i = cursors_[f].next; i < packets.size(); ++i) {
        if (Counted(packets[i].created)) ++result_.flows[f].in_flight;
      }
    }
    // Scheduled but unprocessed arrivals.
    while (auto e = events_.Pop()) {
      if (e->event.type != Event::Type::kArrival) continue;
      if (Counted(flows_[e->event.flow].packets[e->event.index].created)) {
        ++result_.flows[e->event.flow].in_flight;
      }
    }
    for (const auto& s : result_.flows) {
      if (!s.Conserves()) {
        throw ConservationError("flow " + s.flow_id + ": sent " + std::to_string(s.sent) +
                                " != delivered " + std::to_string(s.delivered) + " + dropped " +
                                std::to_string(s.dropped) + " + in flight " +
                                std::to_string(s.in_flight));
      }
    }
  }

  const LinkConfig link_;
  std::span<const FlowStream> flows_;
  const SimWindow window_;
  const SimOptions options_;
  std::unique_ptr<QueueDisc> queue_;
  std::vector<FlowCursor> cursors_;
  std::vector<std::uint64_t> record_base_;
  EventQueue<Event> events_;
  std::optional<Packet> in_service_;
  SimResult result_;
};

}  // namespace

void CheckLinkConfig(const LinkConfig& link) {
  if (!(link.r_in > 0.0) || !(link.r_out > 0.0)) {
    throw std::invalid_argument("link rates must be positive");
  }
}

SimResult Simulate(const LinkConfig& link, const BufferPolicy& buffer,
                   std::span<const FlowStream> flows, SimWindow window, Rng queue_rng,
                   SimOptions options) {
  CheckLinkConfig(link);
  for (const auto& flow : flows) {
    for (std::size_t i = 1; i < flow.packets.size(); ++i) {
      if (flow.packets[i].created < flow.packets[i - 1].created) {
        throw std::invalid_argument("flow " + flow.flow_id + " has decreasing creation times");
      }
    }
    for (const auto& p : flow.packets) {
      if (p.size == 0) throw std::invalid_argument("flow " + flow.flow_id + " has a 0-byte packet");
    }
  }
  return BottleneckRun(link, buffer, flows, window, std::move(queue_rng), options).Run();
}

std::uint64_t SimResult::TotalSent() const {
  std::uint64_t n = 0;
  for (const auto& f : flows) n += f.sent;
  return n;
}

std::uint64_t SimResult::TotalDropped() const {
  std::uint64_t n = 0;
  for (const auto& f : flows) n += f.dropped;
  return n;
}

std::uint64_t SimResult::TotalDelivered() const {
  std::uint64_t n = 0;
  for (const auto& f : flows) n += f.delivered;
  return n;
}

std::optional<double> SimResult::CombinedLoss() const {
  return LossRatio(TotalDropped(), TotalSent());
}

}  // namespace accessq
