#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lipfree/family.hpp"

namespace lipfree {

enum class FamilyId {
  Uniform,
  ConvergentLine,
  IntegerLine,
  GeometricLine,
  DendrogramUltrametric,
  Remark1,
  Remark2,
  Remark3,
  Remark4,
  Remark5,
  Remark6,
};

struct FamilyParams {
  Rational d = 1;             // Uniform
  std::uint64_t seed = 0;     // DendrogramUltrametric
  std::size_t depth = 4;      // DendrogramUltrametric
};

/// Catalog families. Remark families use rho(x_k, x_n) for k < n:
///   1: k + n - 1/k         2: 2 - 1/k          3: 2 - 1/k + 1/n
///   4: 2 - 1/k - 1/(2n)    5: 1 + 1/n          6: 1 + 1/(2k) + 1/n
/// Lines: ConvergentLine x_1 = 0, x_n = 1/(n-1); IntegerLine x_n = n;
/// GeometricLine x_n = 2^n.
MetricFamily make_family(FamilyId id, const FamilyParams& params = {});

/// Leaves of a rooted tree whose internal nodes carry a level distance that
/// strictly decreases with depth; leaf distance is the level of the lowest
/// common ancestor. Leaves are numbered 1..L in depth-first order.
struct DendrogramSpec {
  std::uint64_t seed = 0;
  std::size_t leaf_count = 0;
  std::vector<Rational> levels;  // levels[t] is the distance at depth t
};

class Dendrogram {
 public:
  /// Random interval-splitting tree: each node splits into 2 or 3 children
  /// at seeded cut points; nodes at the last level are stars.
  static Dendrogram random(const DendrogramSpec& spec);
  /// Every node has `branching` children; branching^levels.size() leaves.
  static Dendrogram balanced(std::size_t branching, std::vector<Rational> levels);

  std::size_t leaf_count() const noexcept { return paths_.size(); }
  const std::vector<Rational>& levels() const noexcept { return levels_; }
  /// 1-based leaves.
  Rational distance(std::size_t a, std::size_t b) const;

 private:
  Dendrogram(std::vector<Rational> levels, std::vector<std::vector<std::uint32_t>> paths);
  std::vector<Rational> levels_;
  std::vector<std::vector<std::uint32_t>> paths_;
};

/// Family over the leaves of `spec`'s random dendrogram. Throws EmptyLevels or
/// InvalidFamilyParameters (levels not strictly decreasing and positive).
MetricFamily dendrogram_ultrametric(const DendrogramSpec& spec, std::string id = {});
MetricFamily dendrogram_family(const Dendrogram& tree, std::string id);

/// Default spec behind FamilyId::DendrogramUltrametric: levels 2^-t for
/// t < depth and 2^(depth+2) leaves (capped at 4096).
DendrogramSpec default_dendrogram_spec(std::uint64_t seed, std::size_t depth);

/// Finite family backed by an explicit space (point i of the family is
/// point i-1 of the space).
MetricFamily family_from_space(const FiniteMetricSpace& space, std::string id);

struct FamilyInfo {
  std::string id;
  std::string params;
  std::string exercises;
};

std::vector<FamilyInfo> family_catalog();

}  // namespace lipfree
