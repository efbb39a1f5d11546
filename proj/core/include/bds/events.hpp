#pragma once

#include <cstdint>
#include <queue>
#include <vector>

namespace bds {

enum class EventKind { BurstArrival, SegmentEnd, SimulationEnd };

struct Event {
    double time = 0.0;
    std::uint64_t seq = 0; // issued at scheduling, breaks time ties
    EventKind kind = EventKind::SimulationEnd;
    std::uint32_t ue_id = 0;
};

// Min-heap ordered by (time, seq). seq is stamped at push, so events with
// equal timestamps pop in insertion order and the dequeue order is total.
class EventQueue {
public:
    std::uint64_t push(double time, EventKind kind, std::uint32_t ue_id) {
        Event ev{time, next_seq_++, kind, ue_id};
        heap_.push(ev);
        return ev.seq;
    }

    Event pop() {
        Event ev = heap_.top();
        heap_.pop();
        return ev;
    }

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

} // namespace bds
