#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lipfree/family.hpp"

namespace lipfree {

/// Points x_1, x_2, ... of a family (strictly increasing family indices) with
/// radii r_n such that the open balls U(x_n, r_n) are pairwise disjoint:
/// dist(x_m, x_n) >= r_m + r_n. Positions are 1-based; position n sits at
/// point n-1 of the plan's space, and x_1 is the base point. Points are
/// grouped in pairs (x_{2n}, x_{2n+1}), n = 1, 2, ...
struct EmbeddingPlan {
  MetricFamily family;
  std::vector<std::size_t> x_idx;
  std::vector<Rational> r;
  /// r_{2n} + r_{2n+1} = dist(x_{2n}, x_{2n+1}) for every complete pair.
  bool exact = false;
  /// Which construction produced the plan, e.g. "accumulation/strict".
  std::string construction;
  /// Set when the radii relied on finite-horizon limit estimates.
  bool approximate_limits = false;

  std::size_t size() const noexcept { return x_idx.size(); }
  std::size_t pair_count() const noexcept { return x_idx.empty() ? 0 : (x_idx.size() - 1) / 2; }
  Rational distance(std::size_t m, std::size_t n) const { return family.distance(x_idx[m - 1], x_idx[n - 1]); }
  /// First `count` plan points as a space (all points when count is 0).
  FiniteMetricSpace space(std::size_t count = 0) const;
  /// The first `count` points and radii.
  EmbeddingPlan prefix(std::size_t count) const;
};

/// Builds a plan from raw data, validating shape only (see check_plan).
EmbeddingPlan make_plan(MetricFamily family, std::vector<std::size_t> x_idx, std::vector<Rational> r,
                        std::string construction = "manual");

struct PlanReport {
  std::size_t points = 0;
  /// q_n = (r_{2n} + r_{2n+1}) / dist(x_{2n}, x_{2n+1}) for every complete pair.
  std::vector<Rational> q;
  bool exact = false;
};

/// Checks r_n >= 0 and dist(x_m, x_n) >= r_m + r_n over the first `count`
/// points (all when 0). Throws SeparationViolation(m, n), 1-based positions.
PlanReport check_plan(const EmbeddingPlan& plan, std::size_t count = 0);

/// Pair n belongs to block ((n - 1) mod K) + 1, so block k holds the pairs
/// k, k + K, k + 2K, ...
struct IndexPartition {
  std::size_t blocks = 1;
  std::size_t block_of(std::size_t pair) const { return (pair - 1) % blocks + 1; }
  std::vector<std::size_t> members(std::size_t block, std::size_t pair_count) const;
};

/// g_n(p) = max(r_n - dist(p, x_n), 0) for a family index p.
Rational bump_eval(const EmbeddingPlan& plan, std::size_t n, std::size_t p);

/// f_k(p) = sum over pairs n of block k of g_{2n}(p) - g_{2n+1}(p).
Rational f_k_eval(const EmbeddingPlan& plan, const IndexPartition& partition, std::size_t k, std::size_t p);

/// h(p) = sum_k a_k f_k(p), k = 1..a.size().
Rational lin_comb_eval(const EmbeddingPlan& plan, const IndexPartition& partition, const std::vector<Rational>& a,
                       std::size_t p);

/// Where functions are sampled when measuring Lipschitz constants: the plan
/// points only, or every family point up to the largest plan index.
enum class Probe { PlanPoints, AmbientPrefix };

std::vector<std::size_t> probe_points(const EmbeddingPlan& plan, std::size_t count, Probe probe);

struct LinftyReport {
  Rational lip;    // Lipschitz constant of h on the probe set
  Rational lower;  // max_k |a_k| * max q_n over the complete pairs of block k
  Rational upper;  // max_k |a_k|
};

/// Uses the first `count` plan points (all when 0). The partition has
/// a.size() blocks. Throws SeparationViolation if the plan is not admissible.
LinftyReport verify_linfty_isometry(const EmbeddingPlan& plan, const std::vector<Rational>& a, std::size_t count = 0,
                                    Probe probe = Probe::PlanPoints);

/// e_n = (delta_{x_{2n}} - delta_{x_{2n+1}}) / dist(x_{2n}, x_{2n+1}) in plan.space().
FreeElement l1_basis(const EmbeddingPlan& plan, std::size_t n);

enum class NormMethod { LinearProgram, Transport };

/// ||sum a_n e_n|| over the first a.size() pairs. Throws ExactnessRequired
/// unless check_plan reports an exact plan, SeparationViolation if it is
/// not admissible, IndexOutOfRange if a has more entries than pairs.
Rational verify_l1_isometry(const EmbeddingPlan& plan, const std::vector<Rational>& a,
                            NormMethod method = NormMethod::LinearProgram);

/// (f_1(p), ..., f_P(p)) with f_n = g_{2n} - g_{2n+1}, P = pair_count().
std::vector<Rational> projection_coeffs(const EmbeddingPlan& plan, std::size_t p);

struct ProjectionReport {
  bool fixes_basis = true;         // P(e_n) = e_n for every pair
  bool nonexpansive = true;        // sum_n |f_n(p) - f_n(q)| <= dist(p, q) on the probe set
  Rational worst_ratio;            // max of sum_n |f_n(p) - f_n(q)| / dist(p, q)
  std::size_t pairs_checked = 0;
  std::optional<std::pair<std::size_t, std::size_t>> violation;  // family indices
  bool passed() const { return fixes_basis && nonexpansive; }
};

/// Throws ExactnessRequired unless the plan is exact.
ProjectionReport verify_projection(const EmbeddingPlan& plan, std::size_t count = 0,
                                   Probe probe = Probe::AmbientPrefix);

}  // namespace lipfree
