#pragma once

#include <vector>

#include "lipfree/rational.hpp"

namespace lipfree {

/// Balanced transportation problem: supplies[i] units leave source i,
/// demands[j] units reach sink j, unit cost cost[i][j]. Sum of supplies must
/// equal sum of demands.
struct TransportProblem {
  std::vector<Rational> supplies;
  std::vector<Rational> demands;
  std::vector<std::vector<Rational>> cost;
};

struct TransportSolution {
  Rational cost;
  std::vector<std::vector<Rational>> flow;
};

/// Exact minimum-cost transport by successive shortest augmenting paths
/// (Bellman-Ford on the residual graph). Costs may be any rationals.
TransportSolution solve_transport(const TransportProblem& problem);

}  // namespace lipfree
