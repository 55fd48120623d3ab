#include "lipfree/transport.hpp"

#include <optional>

#include "lipfree/error.hpp"

namespace lipfree {

TransportSolution solve_transport(const TransportProblem& problem) {
  const std::size_t p = problem.supplies.size();
  const std::size_t q = problem.demands.size();
  Rational total_supply = 0, total_demand = 0;
  for (const auto& s : problem.supplies) {
    if (s < 0) throw Error(ErrorCode::ParseError, "negative supply");
    total_supply += s;
  }
  for (const auto& d : problem.demands) {
    if (d < 0) throw Error(ErrorCode::ParseError, "negative demand");
    total_demand += d;
  }
  if (total_supply != total_demand) throw Error(ErrorCode::ParseError, "unbalanced transport problem");
  if (problem.cost.size() != p) throw Error(ErrorCode::ParseError, "cost matrix height");
  for (const auto& row : problem.cost)
    if (row.size() != q) throw Error(ErrorCode::ParseError, "cost matrix width");

  std::vector<Rational> supply = problem.supplies;
  std::vector<Rational> demand = problem.demands;
  std::vector<std::vector<Rational>> flow(p, std::vector<Rational>(q));

  // Residual graph nodes: sources 0..p-1, sinks p..p+q-1. Forward arcs
  // source->sink are uncapacitated; backward arcs sink->source carry the
  // current flow at negated cost.
  const std::size_t nodes = p + q;
  Rational remaining = total_supply;
  while (remaining > 0) {
    std::vector<std::optional<Rational>> dist(nodes);
    std::vector<std::size_t> parent(nodes, nodes);
    for (std::size_t i = 0; i < p; ++i)
      if (supply[i] > 0) dist[i] = Rational(0);
    for (std::size_t round = 0; round < nodes; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < p; ++i) {
        if (!dist[i]) continue;
        for (std::size_t j = 0; j < q; ++j) {
          Rational through = *dist[i] + problem.cost[i][j];
          if (!dist[p + j] || through < *dist[p + j]) {
            dist[p + j] = std::move(through);
            parent[p + j] = i;
            changed = true;
          }
        }
      }
      for (std::size_t j = 0; j < q; ++j) {
        if (!dist[p + j]) continue;
        for (std::size_t i = 0; i < p; ++i) {
          if (flow[i][j] <= 0) continue;
          Rational through = *dist[p + j] - problem.cost[i][j];
          if (!dist[i] || through < *dist[i]) {
            dist[i] = std::move(through);
            parent[i] = p + j;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }

    std::size_t target = nodes;
    for (std::size_t j = 0; j < q; ++j) {
      if (demand[j] <= 0 || !dist[p + j]) continue;
      if (target == nodes || *dist[p + j] < *dist[target]) target = p + j;
    }
    if (target == nodes) throw Error(ErrorCode::ParseError, "transport problem has no augmenting path");

    // Walk back to the originating source, collecting the bottleneck.
    Rational amount = demand[target - p];
    std::size_t node = target;
    while (parent[node] != nodes) {
      std::size_t prev = parent[node];
      if (node < p) {  // backward arc prev(sink) -> node(source)
        if (flow[node][prev - p] < amount) amount = flow[node][prev - p];
      }
      node = prev;
    }
    if (supply[node] < amount) amount = supply[node];
    const std::size_t origin = node;

    node = target;
    while (parent[node] != nodes) {
      std::size_t prev = parent[node];
      if (node >= p) flow[prev][node - p] += amount;
      else flow[node][prev - p] -= amount;
      node = prev;
    }
    supply[origin] -= amount;
    demand[target - p] -= amount;
    remaining -= amount;
  }

  TransportSolution out;
  out.cost = 0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j)
      if (flow[i][j] != 0) out.cost += flow[i][j] * problem.cost[i][j];
  out.flow = std::move(flow);
  return out;
}

}  // namespace lipfree
