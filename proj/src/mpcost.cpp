#include "dcplace/mpcost.hpp"

#include <string>

namespace dcplace {

namespace {

// Node-local arithmetic shared by the direct sweeps and the simulated
// protocol, so both produce identical bits.

struct UpMessage {
  double f;
  double g;
};

UpMessage up_message(double demand, std::span<const double> child_f,
                     std::span<const double> child_g, double parent_dist) {
  double f = demand;
  double g = 0.0;
  for (double x : child_f) f += x;
  for (double x : child_g) g += x;
  g += f * parent_dist;
  return {f, g};
}

double root_cost_of(double demand, double self_cost, std::span<const double> child_g) {
  double cost = demand * self_cost;
  for (double x : child_g) cost += x;
  return cost;
}

// Everything a node knows about masses around it: own demand, the mass
// arriving from the parent side and each child's upward mass.
double neighbour_mass(double demand, double mass_from_parent, std::span<const double> child_f) {
  double total = demand + mass_from_parent;
  for (double x : child_f) total += x;
  return total;
}

struct DownMessage {
  double f;
  double h;
};

DownMessage down_message(double cost_here, double mass_here, double child_f_up, double dist,
                         double demand, double self_cost) {
  const double f = mass_here - child_f_up;
  return {f, cost_here + f * dist - demand * self_cost};
}

double cost_from_parent(double h, double own_f_up, double dist, double demand, double self_cost) {
  return h - own_f_up * dist + demand * self_cost;
}

}  // namespace

UpwardResult upward_pass(const RootedRegionTree& tree) {
  const std::size_t n = tree.size();
  UpwardResult result{{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)}, 0.0};
  auto& f_up = result.messages.f_up;
  auto& g_up = result.messages.g_up;
  std::vector<double> child_f;
  std::vector<double> child_g;
  const auto order = tree.top_down();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    child_f.clear();
    child_g.clear();
    for (std::size_t c : tree.children(v)) {
      child_f.push_back(f_up[c]);
      child_g.push_back(g_up[c]);
    }
    if (tree.parent(v)) {
      const UpMessage m = up_message(tree.demand(v), child_f, child_g, tree.parent_dist(v));
      f_up[v] = m.f;
      g_up[v] = m.g;
    } else {
      result.root_cost = root_cost_of(tree.demand(v), tree.self_cost(v), child_g);
    }
  }
  return result;
}

CostTable downward_pass(const RootedRegionTree& tree, const UpwardMessages& up, double root_cost) {
  const std::size_t n = tree.size();
  if (up.f_up.size() != n || up.g_up.size() != n) {
    throw ArgumentError("upward messages do not belong to this tree");
  }
  CostTable table{std::vector<double>(n, 0.0)};
  std::vector<double> mass_from_parent(n, 0.0);
  std::vector<double> child_f;
  for (std::size_t v : tree.top_down()) {
    if (auto p = tree.parent(v)) {
      // h and f arrived from the parent; written into the child's slots below
      table.cost_at[v] = cost_from_parent(table.cost_at[v], up.f_up[v], tree.parent_dist(v),
                                          tree.demand(v), tree.self_cost(v));
    } else {
      table.cost_at[v] = root_cost;
    }
    child_f.clear();
    for (std::size_t c : tree.children(v)) child_f.push_back(up.f_up[c]);
    const double mass = neighbour_mass(tree.demand(v), mass_from_parent[v], child_f);
    for (std::size_t c : tree.children(v)) {
      const DownMessage m = down_message(table.cost_at[v], mass, up.f_up[c], tree.parent_dist(c),
                                         tree.demand(v), tree.self_cost(v));
      mass_from_parent[c] = m.f;
      table.cost_at[c] = m.h;
    }
  }
  return table;
}

std::size_t argmin_cost(const CostTable& table) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.cost_at.size(); ++i) {
    if (table.cost_at[i] < table.cost_at[best]) best = i;
  }
  return best;
}

TreeCenter tree_cost_center(const RootedRegionTree& tree) {
  const UpwardResult up = upward_pass(tree);
  CostTable table = downward_pass(tree, up.messages, up.root_cost);
  const NodeId center = tree.node(argmin_cost(table));
  return {center, std::move(table)};
}

namespace {

enum class Kind : std::uint8_t { kMass, kWeightedDist, kMassDown, kCostDown };

struct Scalar {
  Kind kind = Kind::kMass;
  double value = 0.0;
};

struct PassState {
  // upward
  std::vector<double> child_f;
  std::vector<double> child_g;
  std::size_t pending = 0;  // scalars still expected from children
  double f_up = 0.0;
  double root_cost = 0.0;
  // downward
  double mass_from_parent = 0.0;
  double h = 0.0;
  int down_received = 0;
  double cost = 0.0;
};

std::size_t child_slot(const RootedRegionTree& tree, std::size_t v, std::size_t child) {
  const auto kids = tree.children(v);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (kids[i] == child) return i;
  }
  throw ProtocolError("message from a node that is not a child");
}

// The tree itself as a netsim topology over local indices.
Graph tree_topology(const RootedRegionTree& tree) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (auto p = tree.parent(v)) {
      edges.push_back({static_cast<NodeId>(*p), static_cast<NodeId>(v), tree.parent_dist(v)});
    }
  }
  return Graph(tree.size(), edges);
}

}  // namespace

SimulatedPasses simulate_cost_passes(const RootedRegionTree& tree) {
  const std::size_t n = tree.size();
  const Graph topo = tree_topology(tree);
  const std::uint64_t budget = 4 * n + 4;

  std::vector<PassState> states(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t kids = tree.children(v).size();
    states[v].child_f.assign(kids, 0.0);
    states[v].child_g.assign(kids, 0.0);
    states[v].pending = 2 * kids;
  }

  auto send_up = [&tree](std::size_t v, PassState& st, auto&& emit) {
    if (auto p = tree.parent(v)) {
      const UpMessage m = up_message(tree.demand(v), st.child_f, st.child_g, tree.parent_dist(v));
      st.f_up = m.f;
      emit(*p, Scalar{Kind::kMass, m.f});
      emit(*p, Scalar{Kind::kWeightedDist, m.g});
    } else {
      st.root_cost = root_cost_of(tree.demand(v), tree.self_cost(v), st.child_g);
    }
  };

  SimulatedPasses out;

  // Upward: leaves start, a node reports once every child has reported.
  std::vector<Event<Scalar>> initial;
  for (std::size_t v = 0; v < n; ++v) {
    if (states[v].pending != 0) continue;
    send_up(v, states[v], [&](std::size_t to, Scalar s) {
      initial.push_back({tree.parent_dist(v), static_cast<NodeId>(to), static_cast<NodeId>(v), s});
    });
  }
  auto on_up = [&](NodeId self, PassState& st, const Event<Scalar>& ev, Outbox<Scalar>& outbox) {
    const std::size_t slot = child_slot(tree, self, ev.sender);
    if (ev.payload.kind == Kind::kMass) {
      st.child_f[slot] = ev.payload.value;
    } else if (ev.payload.kind == Kind::kWeightedDist) {
      st.child_g[slot] = ev.payload.value;
    } else {
      throw ProtocolError("downward message during the upward pass");
    }
    if (--st.pending == 0) {
      send_up(self, st, [&](std::size_t to, Scalar s) { outbox.send(static_cast<NodeId>(to), s); });
    }
  };
  out.upward_stats = run_protocol(topo, states, std::move(initial), on_up, budget);

  out.upward.messages.f_up.assign(n, 0.0);
  out.upward.messages.g_up.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    if (auto p = tree.parent(v)) {
      out.upward.messages.f_up[v] = states[v].f_up;
      out.upward.messages.g_up[v] = states[*p].child_g[child_slot(tree, *p, v)];
    }
  }
  out.upward.root_cost = states[tree.root()].root_cost;

  // Downward: the root starts, each node forwards once it has both scalars.
  auto send_down = [&tree](std::size_t v, const PassState& st, auto&& emit) {
    const double mass = neighbour_mass(tree.demand(v), st.mass_from_parent, st.child_f);
    const auto kids = tree.children(v);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const DownMessage m = down_message(st.cost, mass, st.child_f[i], tree.parent_dist(kids[i]),
                                         tree.demand(v), tree.self_cost(v));
      emit(kids[i], Scalar{Kind::kMassDown, m.f});
      emit(kids[i], Scalar{Kind::kCostDown, m.h});
    }
  };
  const std::size_t root = tree.root();
  states[root].cost = states[root].root_cost;
  initial.clear();
  send_down(root, states[root], [&](std::size_t to, Scalar s) {
    initial.push_back(
        {tree.parent_dist(to), static_cast<NodeId>(to), static_cast<NodeId>(root), s});
  });
  auto on_down = [&](NodeId self, PassState& st, const Event<Scalar>& ev, Outbox<Scalar>& outbox) {
    if (ev.payload.kind == Kind::kMassDown) {
      st.mass_from_parent = ev.payload.value;
    } else if (ev.payload.kind == Kind::kCostDown) {
      st.h = ev.payload.value;
    } else {
      throw ProtocolError("upward message during the downward pass");
    }
    if (++st.down_received == 2) {
      st.cost = cost_from_parent(st.h, st.f_up, tree.parent_dist(self), tree.demand(self),
                                 tree.self_cost(self));
      send_down(self, st, [&](std::size_t to, Scalar s) { outbox.send(static_cast<NodeId>(to), s); });
    }
  };
  out.downward_stats = run_protocol(topo, states, std::move(initial), on_down, budget);

  out.table.cost_at.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.table.cost_at[v] = states[v].cost;
  return out;
}

}  // namespace dcplace
