#include "dcplace/netsim.hpp"

#include <algorithm>
#include <limits>

namespace dcplace {

namespace {

struct FloodMessage {
  std::uint32_t tag = 0;  // index of the originating source
};

struct TagState {
  double first_time = kInfinity;
  std::uint64_t first_order = std::numeric_limits<std::uint64_t>::max();
  std::optional<NodeId> first_sender;
  std::vector<NodeId> equal_senders;  // every sender arriving at first_time
};

struct FloodState {
  std::vector<TagState> tags;
};

}  // namespace

BroadcastResult first_arrival_broadcast(const Graph& graph, std::span<const NodeId> sources) {
  if (sources.empty()) throw ArgumentError("broadcast needs at least one source");
  const std::size_t n = graph.node_count();
  const std::size_t k = sources.size();
  {
    std::vector<NodeId> sorted(sources.begin(), sources.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ArgumentError("broadcast sources must be distinct");
    }
    for (NodeId s : sorted) {
      if (!graph.valid(s)) throw ArgumentError("source " + std::to_string(s) + " out of range");
    }
  }

  std::vector<FloodState> states(n, FloodState{std::vector<TagState>(k)});
  std::vector<Event<FloodMessage>> initial;
  for (std::uint32_t i = 0; i < k; ++i) {
    const NodeId s = sources[i];
    states[s].tags[i].first_time = 0.0;
    states[s].tags[i].first_order = 0;
    for (const Neighbor& nb : graph.neighbors(s)) {
      initial.push_back({nb.dist, nb.id, s, FloodMessage{i}});
    }
  }

  std::uint64_t order = 0;
  auto handler = [&graph, &order](NodeId self, FloodState& state, const Event<FloodMessage>& ev,
                                  Outbox<FloodMessage>& out) {
    ++order;
    TagState& tag = state.tags[ev.payload.tag];
    if (tag.first_time == kInfinity) {
      tag.first_time = ev.arrival_time;
      tag.first_order = order;
      tag.first_sender = ev.sender;
      tag.equal_senders.push_back(ev.sender);
      for (const Neighbor& nb : graph.neighbors(self)) {
        if (nb.id != ev.sender) out.send(nb.id, ev.payload);
      }
    } else if (ev.arrival_time == tag.first_time) {
      tag.equal_senders.push_back(ev.sender);
    }
  };

  const std::uint64_t budget =
      std::max<std::uint64_t>(16, 10 * std::uint64_t(graph.edge_count()) * k);
  BroadcastResult result;
  result.stats = run_protocol(graph, states, std::move(initial), handler, budget);

  result.dist_by_source.assign(k, std::vector<double>(n, kInfinity));
  result.records.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    const auto& tags = states[v].tags;
    ArrivalRecord& rec = result.records[v];
    for (std::size_t i = 0; i < k; ++i) {
      result.dist_by_source[i][v] = tags[i].first_time;
      rec.nearest_dist = std::min(rec.nearest_dist, tags[i].first_time);
    }
    if (rec.nearest_dist == kInfinity) {
      throw UnreachableError("node " + std::to_string(v) + " received no broadcast");
    }
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < k; ++i) {
      if (tags[i].first_time == rec.nearest_dist) tied.push_back(i);
    }
    std::sort(tied.begin(), tied.end(),
              [&](std::size_t a, std::size_t b) { return sources[a] < sources[b]; });
    std::size_t earliest = tied.front();
    for (std::size_t i : tied) {
      rec.tied_sources.push_back(sources[i]);
      if (tags[i].first_sender) {
        rec.tied_parents.push_back(*tags[i].first_sender);
      } else {
        rec.tied_parents.push_back(v);
      }
      for (NodeId u : tags[i].equal_senders) rec.shortest_path_neighbors.push_back(u);
      if (tags[i].first_order < tags[earliest].first_order) earliest = i;
    }
    rec.arrival_source = sources[earliest];
    rec.arrival_parent = tags[earliest].first_sender;
    auto& spn = rec.shortest_path_neighbors;
    std::sort(spn.begin(), spn.end());
    spn.erase(std::unique(spn.begin(), spn.end()), spn.end());
  }
  return result;
}

}  // namespace dcplace
