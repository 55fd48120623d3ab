#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lipfree/plan.hpp"

namespace lipfree {

struct RadiiOptions {
  /// Largest family index any search may probe.
  std::size_t horizon = 10000;
  /// Return a shorter plan instead of throwing HorizonExhausted.
  bool partial = false;
};

/// All algorithms return plans on `count` points (fewer only with
/// options.partial) and pick the smallest admissible family index whenever
/// a choice exists. A final point without a partner gets radius 0.

/// x_n -> x_1. If dist(x_m, x_n) = dist(x_m, x_1) + dist(x_n, x_1) on the whole
/// prefix, r_n = dist(x_n, x_1). Otherwise pairs with a positive gap
///   delta_n = (dist(x_2n, x_1) + dist(x_2n+1, x_1) - dist(x_2n, x_2n+1)) / 2
/// are chosen greedily so that later points satisfy dist(x_m, x_1) <= delta_n / 2,
/// with r_1 = 0 and r_2n+i = dist(x_2n+i, x_1) - delta_n. Both outcomes are
/// exact. Throws NotConvergent for families that do not accumulate at x_1.
EmbeddingPlan radii_accumulation(const MetricFamily& family, std::size_t count, const RadiiOptions& options = {});

/// Bounded uniformly separated families with limits d_k = lim_n dist(x_k, x_n)
/// and d = lim_k d_k. Picks x_s so that d(1 - 1/2s) < d_{x_s} < d(1 + 1/2s)
/// and d(1 - 1/2m) < dist(x_m, x_s) < d(1 + 1/2m) for m < s, then sets
/// r_n = (d/2)(1 - 1/n). Without declared limits they are estimated at the
/// horizon; throws MetadataRequired if the estimates do not settle.
EmbeddingPlan radii_bounded_separated(const MetricFamily& family, std::size_t count,
                                      const RadiiOptions& options = {});

/// q_n is guaranteed to exceed this for plans from radii_bounded_separated:
/// (1 - 1/(4n) - 1/(2(2n+1))) / (1 + 1/(4n)).
Rational bounded_ratio_bound(std::size_t n);

/// Inductive choice x_1 = 1, r_1 = 1, then the smallest index with
/// dist(x_{n+1}, x_n) > n M_n, M_n = max_k dist(x_n, x_k) + r_k, and
/// r_{n+1} = dist(x_{n+1}, x_n) - M_n. Gives q_n > 1 - 1/(2n).
/// Throws HorizonExhausted when no index up to the horizon qualifies.
EmbeddingPlan radii_unbounded(const MetricFamily& family, std::size_t count, const RadiiOptions& options = {});

/// Uses the family's marked pairs, whose gaps delta grow without bound, and
/// keeps a pair once delta >= 2 dist(x_n, x_1) for every earlier point.
/// r_1 = 0, r_2n+i = dist(x_2n+i, x_1) - delta_n; exact by construction.
/// Throws MetadataRequired if the family marks no pairs.
EmbeddingPlan radii_unbounded_delta(const MetricFamily& family, std::size_t count,
                                    const RadiiOptions& options = {});

/// Ultrametric families. Unbounded ones use growing distances from x_1 as
/// gaps. Bounded ones are reduced to a sequence with non-decreasing rows
/// dist(x_k, x_n), n > k, and non-increasing limits d_k, then:
///   all distances equal d:      r_n = d/2
///   d_k constant, rows rising:  r_1 = 0, r_2n = r_2n+1 = dist(x_2n, x_2n+1)/2
///   d_k falling:                r_1 = 0, r_2n = dist(x_2n, x_2n+1) - d_2n+1/2,
///                               r_2n+1 = d_2n+1/2
/// after thinning to d <= d_{k+1} <= (3d + d_k)/4. Every outcome is exact.
/// Throws NotUltrametric with a witness triple from the scanned prefix.
EmbeddingPlan radii_ultrametric(const MetricFamily& family, std::size_t count, const RadiiOptions& options = {});

enum class RadiiCase { Auto, Accumulation, BoundedSeparated, Unbounded, UnboundedDelta, Ultrametric };

std::optional<RadiiCase> parse_radii_case(std::string_view name);
/// Auto resolves from the family traits.
RadiiCase resolve_case(const MetricFamily& family, RadiiCase requested);
EmbeddingPlan construct_plan(const MetricFamily& family, RadiiCase which, std::size_t count,
                             const RadiiOptions& options = {});

struct AdmissibilityResult {
  /// Largest tau with r_m + r_n <= dist(x_m, x_n) and
  /// r_2n + r_2n+1 >= tau dist(x_2n, x_2n+1); empty when no pair is complete.
  std::optional<Rational> tau;
  std::vector<Rational> r;
};

/// `ordering` lists the family indices x_1, ..., x_N (distinct).
AdmissibilityResult admissibility_lp(const MetricFamily& family, const std::vector<std::size_t>& ordering);

}  // namespace lipfree
