#pragma once

// Reference implementations used only by the tests. Each one is deliberately
// naive and shares no code with the library's solvers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "lipfree/metric.hpp"

namespace oracle {

using lipfree::Rational;
using RMatrix = std::vector<std::vector<Rational>>;

// Solves the square system m x = rhs by Gauss-Jordan elimination; empty when
// singular.
inline std::optional<std::vector<Rational>> solve_square(RMatrix m, std::vector<Rational> rhs) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational factor = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
      rhs[row] -= factor * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

// max c.x over the bounded polytope {rows x <= rhs} by visiting every basic
// solution: each choice of n tight constraints. Exponential; n <= 4 only.
inline Rational lp_by_vertices(const std::vector<Rational>& c, const RMatrix& rows, const std::vector<Rational>& rhs) {
  const std::size_t n = c.size();
  if (n == 0) return 0;
  std::optional<Rational> best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t depth, std::size_t from) {
    if (depth == n) {
      RMatrix m;
      std::vector<Rational> b;
      for (std::size_t i : pick) {
        m.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
      const auto x = solve_square(m, b);
      if (!x) return;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < n; ++j) lhs += rows[i][j] * (*x)[j];
        if (lhs > rhs[i]) return;
      }
      Rational value = 0;
      for (std::size_t j = 0; j < n; ++j) value += c[j] * (*x)[j];
      if (!best || value > *best) best = value;
      return;
    }
    for (std::size_t i = from; i < rows.size(); ++i) {
      pick[depth] = i;
      choose(depth + 1, i + 1);
    }
  };
  choose(0, 0);
  return *best;
}

// Free-space norm of sum a_i delta_{p_i} straight from the definition:
// maximize sum a_i f(p_i) over f with f(0) = 0 and |f(p) - f(q)| <= dist(p, q)
// on the support plus the base point.
inline Rational free_norm_by_vertices(const lipfree::FreeElement& mu, const lipfree::FiniteMetricSpace& space) {
  const auto& terms = mu.terms();
  const std::size_t k = terms.size();
  std::vector<Rational> c;
  for (const auto& t : terms) c.push_back(t.coef);
  RMatrix rows;
  std::vector<Rational> rhs;
  for (std::size_t s = 0; s < k; ++s) {
    for (int sign : {1, -1}) {
      std::vector<Rational> row(k);
      row[s] = sign;
      rows.push_back(row);
      rhs.push_back(space(terms[s].point, 0));
    }
    for (std::size_t t = 0; t < k; ++t) {
      if (t == s) continue;
      std::vector<Rational> row(k);
      row[s] = 1;
      row[t] = -1;
      rows.push_back(row);
      rhs.push_back(space(terms[s].point, terms[t].point));
    }
  }
  return lp_by_vertices(c, rows, rhs);
}

// Transport cost when every supply and demand is a whole number of unit
// parcels: the optimum is an assignment of parcels, found over all
// permutations. Tiny instances only.
inline Rational transport_by_assignment(const std::vector<std::size_t>& supply_points,
                                        const std::vector<std::size_t>& demand_points,
                                        const lipfree::FiniteMetricSpace& space) {
  std::vector<std::size_t> order(demand_points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::optional<Rational> best;
  do {
    Rational cost = 0;
    for (std::size_t i = 0; i < order.size(); ++i) cost += space(supply_points[i], demand_points[order[i]]);
    if (!best || cost < *best) best = cost;
  } while (std::next_permutation(order.begin(), order.end()));
  return best.value_or(Rational(0));
}

inline bool triangle_holds(const lipfree::Matrix& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      for (std::size_t k = 0; k < d.size(); ++k)
        if (d[i][k] > d[i][j] + d[j][k]) return false;
  return true;
}

inline bool strong_triangle_holds(const lipfree::Matrix& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      for (std::size_t k = 0; k < d.size(); ++k)
        if (d[i][k] > std::max(d[i][j], d[j][k])) return false;
  return true;
}

// Leaf distances of a tree given by parent pointers: level of the deepest
// common ancestor, found by walking both leaves up to the root.
inline Rational lca_distance(const std::vector<int>& parent, const std::vector<std::size_t>& depth,
                             const std::vector<Rational>& levels, int a, int b) {
  while (a != b) {
    if (depth[a] >= depth[b]) a = parent[a];
    else b = parent[b];
  }
  return levels[depth[a]];
}

// Random metric: shortest paths over random positive rational edge weights,
// so the triangle inequality holds by construction.
inline lipfree::Matrix random_metric(std::mt19937_64& rng, std::size_t n, int max_num = 9, int max_den = 4) {
  lipfree::Matrix d(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational w(static_cast<long>(1 + rng() % max_num));
      w /= Rational(static_cast<long>(1 + rng() % max_den));
      d[i][j] = d[j][i] = w;
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline Rational random_rational(std::mt19937_64& rng, int max_abs_num = 6, int max_den = 5) {
  Rational q(static_cast<long>(rng() % (2 * max_abs_num + 1)) - max_abs_num);
  q /= Rational(static_cast<long>(1 + rng() % max_den));
  return q;
}

}  // namespace oracle
