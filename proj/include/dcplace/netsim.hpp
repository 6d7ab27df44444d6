// netsim.hpp - deterministic discrete-event kernel for node-local protocols
//
// A message sent from u to neighbour v arrives d(u,v) time units later.
// Handlers run one event at a time in (arrival_time, destination, sender,
// send order) order and only see their own node state and the incoming
// message, so anything a protocol computes is computable by the nodes
// themselves.

#ifndef DCPLACE_NETSIM_HPP
#define DCPLACE_NETSIM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dcplace/graph.hpp"

namespace dcplace {

// A handler addressed a node that is not its neighbour.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// The event cascade exceeded its budget.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

struct SimStats {
  std::uint64_t messages_sent = 0;
  std::uint64_t events_processed = 0;
  double final_time = 0.0;

  SimStats& operator+=(const SimStats& other) {
    messages_sent += other.messages_sent;
    events_processed += other.events_processed;
    final_time = std::max(final_time, other.final_time);
    return *this;
  }
};

template <class Payload>
struct Event {
  double arrival_time = 0.0;
  NodeId destination = 0;
  NodeId sender = 0;
  Payload payload{};
};

template <class Payload>
class Outbox {
 public:
  void send(NodeId to, Payload payload) { pending_.emplace_back(to, std::move(payload)); }

 private:
  template <class S, class P, class H>
  friend SimStats run_protocol(const Graph&, std::vector<S>&, std::vector<Event<P>>, H&&,
                               std::uint64_t);
  std::vector<std::pair<NodeId, Payload>> pending_;
};

namespace detail {

template <class Payload>
struct Queued {
  Event<Payload> event;
  std::uint64_t seq;
};

template <class Payload>
struct Later {
  bool operator()(const Queued<Payload>& a, const Queued<Payload>& b) const {
    return std::tie(a.event.arrival_time, a.event.destination, a.event.sender, a.seq) >
           std::tie(b.event.arrival_time, b.event.destination, b.event.sender, b.seq);
  }
};

}  // namespace detail

// Runs `handler(self, state, event, outbox)` until no messages remain.
// `states` holds one State per node and is updated in place. Initial events
// count as sent messages, so messages_sent == events_processed on return.
template <class State, class Payload, class Handler>
SimStats run_protocol(const Graph& graph, std::vector<State>& states,
                      std::vector<Event<Payload>> initial, Handler&& handler,
                      std::uint64_t event_budget) {
  if (states.size() != graph.node_count()) {
    throw ArgumentError("one protocol state per node is required");
  }
  std::priority_queue<detail::Queued<Payload>, std::vector<detail::Queued<Payload>>,
                      detail::Later<Payload>>
      queue;
  std::uint64_t seq = 0;
  SimStats stats;

  for (auto& ev : initial) {
    if (!std::isfinite(ev.arrival_time) || ev.arrival_time < 0.0) {
      throw ProtocolError("initial event has an invalid arrival time");
    }
    if (!graph.edge_distance(ev.sender, ev.destination)) {
      throw ProtocolError("initial event " + std::to_string(ev.sender) + "->" +
                          std::to_string(ev.destination) + " does not follow an edge");
    }
    queue.push({std::move(ev), seq++});
    ++stats.messages_sent;
  }

  Outbox<Payload> outbox;
  while (!queue.empty()) {
    if (stats.events_processed >= event_budget) {
      throw DivergenceError("event budget of " + std::to_string(event_budget) + " exhausted");
    }
    Event<Payload> ev = std::move(const_cast<detail::Queued<Payload>&>(queue.top()).event);
    queue.pop();
    ++stats.events_processed;
    stats.final_time = ev.arrival_time;

    outbox.pending_.clear();
    handler(ev.destination, states[ev.destination], std::as_const(ev), outbox);
    for (auto& [to, payload] : outbox.pending_) {
      const auto dist = graph.edge_distance(ev.destination, to);
      if (!dist) {
        throw ProtocolError("node " + std::to_string(ev.destination) + " sent to non-neighbour " +
                            std::to_string(to));
      }
      queue.push({Event<Payload>{ev.arrival_time + *dist, to, ev.destination, std::move(payload)},
                  seq++});
      ++stats.messages_sent;
    }
  }
  return stats;
}

// What one node learns from the generator broadcasts.
struct ArrivalRecord {
  double nearest_dist = kInfinity;   // min over sources of d(s, v)
  NodeId arrival_source = 0;         // nearest source whose message arrived first
  std::optional<NodeId> arrival_parent;  // neighbour that delivered it; none at a source
  std::vector<NodeId> tied_sources;  // every source at nearest_dist, ascending id
  // First-arrival neighbour toward tied_sources[i]; the node itself when it
  // is that source.
  std::vector<NodeId> tied_parents;
  // Neighbours on some shortest path toward a tied source, ascending.
  std::vector<NodeId> shortest_path_neighbors;
};

struct BroadcastResult {
  std::vector<ArrivalRecord> records;
  // dist_by_source[i][v] = d(sources[i], v) as learnt from first arrivals.
  std::vector<std::vector<double>> dist_by_source;
  SimStats stats;
};

// Every source floods a tagged message; each node forwards only the first
// arrival per tag. Throws UnreachableError if some node hears no source.
BroadcastResult first_arrival_broadcast(const Graph& graph, std::span<const NodeId> sources);

}  // namespace dcplace

#endif  // DCPLACE_NETSIM_HPP
