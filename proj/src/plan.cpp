#include "lipfree/plan.hpp"

#include <algorithm>
#include <string>

#include "lipfree/error.hpp"
#include "lipfree/norm.hpp"

namespace lipfree {

FiniteMetricSpace EmbeddingPlan::space(std::size_t count) const {
  if (count == 0 || count > x_idx.size()) count = x_idx.size();
  return restrict_family(family, std::span<const std::size_t>(x_idx.data(), count));
}

EmbeddingPlan EmbeddingPlan::prefix(std::size_t count) const {
  EmbeddingPlan out = *this;
  if (count < out.x_idx.size()) {
    out.x_idx.resize(count);
    out.r.resize(count);
  }
  return out;
}

EmbeddingPlan make_plan(MetricFamily family, std::vector<std::size_t> x_idx, std::vector<Rational> r,
                        std::string construction) {
  if (x_idx.size() != r.size())
    throw Error(ErrorCode::ParseError, "plan has " + std::to_string(x_idx.size()) + " points but " +
                                           std::to_string(r.size()) + " radii");
  for (std::size_t i = 0; i < x_idx.size(); ++i) {
    if (!family.contains(x_idx[i]))
      throw Error(ErrorCode::IndexOutOfRange, "family index " + std::to_string(x_idx[i]) + " out of range",
                  {x_idx[i]});
    if (i > 0 && x_idx[i] <= x_idx[i - 1])
      throw Error(ErrorCode::ParseError, "plan indices must be strictly increasing");
  }
  EmbeddingPlan plan{std::move(family), std::move(x_idx), std::move(r), false, std::move(construction), false};
  return plan;
}

PlanReport check_plan(const EmbeddingPlan& plan, std::size_t count) {
  if (count == 0 || count > plan.size()) count = plan.size();
  for (std::size_t n = 1; n <= count; ++n) {
    if (plan.r[n - 1] < 0)
      throw Error(ErrorCode::SeparationViolation, "negative radius r_" + std::to_string(n), {n, n});
  }
  for (std::size_t m = 1; m <= count; ++m) {
    for (std::size_t n = m + 1; n <= count; ++n) {
      const Rational rho = plan.distance(m, n);
      const Rational sum = plan.r[m - 1] + plan.r[n - 1];
      if (sum > rho)
        throw Error(ErrorCode::SeparationViolation,
                    "r_" + std::to_string(m) + " + r_" + std::to_string(n) + " = " + to_string(sum) +
                        " > " + to_string(rho),
                    {m, n});
    }
  }
  PlanReport report;
  report.points = count;
  report.exact = true;
  for (std::size_t n = 1; 2 * n + 1 <= count; ++n) {
    Rational q = (plan.r[2 * n - 1] + plan.r[2 * n]) / plan.distance(2 * n, 2 * n + 1);
    if (q != 1) report.exact = false;
    report.q.push_back(std::move(q));
  }
  return report;
}

std::vector<std::size_t> IndexPartition::members(std::size_t block, std::size_t pair_count) const {
  std::vector<std::size_t> out;
  for (std::size_t n = block; n <= pair_count; n += blocks) out.push_back(n);
  return out;
}

Rational bump_eval(const EmbeddingPlan& plan, std::size_t n, std::size_t p) {
  const Rational gap = plan.r[n - 1] - plan.family.distance(p, plan.x_idx[n - 1]);
  return gap > 0 ? gap : Rational(0);
}

Rational f_k_eval(const EmbeddingPlan& plan, const IndexPartition& partition, std::size_t k, std::size_t p) {
  Rational total = 0;
  for (std::size_t n : partition.members(k, plan.pair_count()))
    total += bump_eval(plan, 2 * n, p) - bump_eval(plan, 2 * n + 1, p);
  return total;
}

Rational lin_comb_eval(const EmbeddingPlan& plan, const IndexPartition& partition, const std::vector<Rational>& a,
                       std::size_t p) {
  Rational total = 0;
  for (std::size_t k = 1; k <= a.size(); ++k)
    if (a[k - 1] != 0) total += a[k - 1] * f_k_eval(plan, partition, k, p);
  return total;
}

std::vector<std::size_t> probe_points(const EmbeddingPlan& plan, std::size_t count, Probe probe) {
  if (count == 0 || count > plan.size()) count = plan.size();
  if (probe == Probe::PlanPoints) return {plan.x_idx.begin(), plan.x_idx.begin() + count};
  std::vector<std::size_t> out;
  for (std::size_t p = 1; count > 0 && p <= plan.x_idx[count - 1]; ++p) out.push_back(p);
  return out;
}

namespace {

// Lipschitz constant of `values` sampled at family indices `points`.
Rational sampled_lipschitz(const MetricFamily& family, const std::vector<std::size_t>& points,
                           const std::vector<Rational>& values) {
  Rational best = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (values[i] == values[j]) continue;
      Rational ratio = abs_value(values[i] - values[j]) / family.distance(points[i], points[j]);
      if (ratio > best) best = std::move(ratio);
    }
  }
  return best;
}

}  // namespace

LinftyReport verify_linfty_isometry(const EmbeddingPlan& plan, const std::vector<Rational>& a, std::size_t count,
                                    Probe probe) {
  const PlanReport report = check_plan(plan, count);
  const EmbeddingPlan used = plan.prefix(report.points);
  const IndexPartition partition{std::max<std::size_t>(a.size(), 1)};

  LinftyReport out;
  out.upper = 0;
  for (const auto& ak : a) out.upper = max_of(out.upper, abs_value(ak));
  out.lower = 0;
  for (std::size_t n = 1; n <= report.q.size(); ++n) {
    const std::size_t k = partition.block_of(n);
    if (k > a.size()) continue;
    out.lower = max_of(out.lower, abs_value(a[k - 1]) * report.q[n - 1]);
  }

  const auto points = probe_points(used, 0, probe);
  std::vector<Rational> values;
  values.reserve(points.size());
  for (std::size_t p : points) values.push_back(lin_comb_eval(used, partition, a, p));
  out.lip = sampled_lipschitz(plan.family, points, values);
  return out;
}

FreeElement l1_basis(const EmbeddingPlan& plan, std::size_t n) {
  if (n == 0 || n > plan.pair_count())
    throw Error(ErrorCode::IndexOutOfRange, "pair " + std::to_string(n) + " not in plan", {n});
  const Rational rho = plan.distance(2 * n, 2 * n + 1);
  return FreeElement({{2 * n - 1, 1 / rho}, {2 * n, -1 / rho}});
}

Rational verify_l1_isometry(const EmbeddingPlan& plan, const std::vector<Rational>& a, NormMethod method) {
  if (a.size() > plan.pair_count())
    throw Error(ErrorCode::IndexOutOfRange, std::to_string(a.size()) + " coefficients for " +
                                                std::to_string(plan.pair_count()) + " pairs");
  const std::size_t count = 2 * a.size() + 1;
  const PlanReport report = check_plan(plan, count);
  if (!report.exact)
    throw Error(ErrorCode::ExactnessRequired, "some pair has r_2n + r_2n+1 < dist(x_2n, x_2n+1)");
  FreeElement x;
  for (std::size_t n = 1; n <= a.size(); ++n) x = x + a[n - 1] * l1_basis(plan, n);
  const FiniteMetricSpace space = plan.space(count);
  return method == NormMethod::LinearProgram ? free_norm_lp(x, space).norm : free_norm_flow(x, space);
}

std::vector<Rational> projection_coeffs(const EmbeddingPlan& plan, std::size_t p) {
  std::vector<Rational> out;
  out.reserve(plan.pair_count());
  for (std::size_t n = 1; n <= plan.pair_count(); ++n)
    out.push_back(bump_eval(plan, 2 * n, p) - bump_eval(plan, 2 * n + 1, p));
  return out;
}

ProjectionReport verify_projection(const EmbeddingPlan& plan, std::size_t count, Probe probe) {
  const PlanReport report = check_plan(plan, count);
  if (!report.exact)
    throw Error(ErrorCode::ExactnessRequired, "projection needs r_2n + r_2n+1 = dist(x_2n, x_2n+1)");
  const EmbeddingPlan used = plan.prefix(report.points);
  const std::size_t pairs = used.pair_count();

  ProjectionReport out;
  out.worst_ratio = 0;
  // P(e_n) = sum_m (f_m(x_2n) - f_m(x_2n+1)) / dist(x_2n, x_2n+1) e_m must be e_n.
  for (std::size_t n = 1; n <= pairs; ++n) {
    const auto hi = projection_coeffs(used, used.x_idx[2 * n - 1]);
    const auto lo = projection_coeffs(used, used.x_idx[2 * n]);
    const Rational rho = used.distance(2 * n, 2 * n + 1);
    for (std::size_t m = 1; m <= pairs; ++m) {
      const Rational coef = (hi[m - 1] - lo[m - 1]) / rho;
      if (coef != (m == n ? 1 : 0)) out.fixes_basis = false;
    }
  }

  const auto points = probe_points(used, 0, probe);
  std::vector<std::vector<Rational>> coeffs;
  coeffs.reserve(points.size());
  for (std::size_t p : points) coeffs.push_back(projection_coeffs(used, p));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      Rational spread = 0;
      for (std::size_t n = 0; n < pairs; ++n)
        if (coeffs[i][n] != coeffs[j][n]) spread += abs_value(coeffs[i][n] - coeffs[j][n]);
      ++out.pairs_checked;
      if (spread == 0) continue;
      const Rational rho = used.family.distance(points[i], points[j]);
      Rational ratio = spread / rho;
      if (spread > rho && out.nonexpansive) {
        out.nonexpansive = false;
        out.violation = std::make_pair(points[i], points[j]);
      }
      if (ratio > out.worst_ratio) out.worst_ratio = std::move(ratio);
    }
  }
  return out;
}

}  // namespace lipfree
