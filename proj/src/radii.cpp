#include "lipfree/radii.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "lipfree/error.hpp"
#include "lipfree/simplex.hpp"

namespace lipfree {

namespace {

std::size_t search_limit(const MetricFamily& family, const RadiiOptions& options) {
  std::size_t limit = options.horizon;
  if (family.size()) limit = std::min(limit, *family.size());
  return limit;
}

struct PlanBuilder {
  std::vector<std::size_t> x;
  std::vector<Rational> r;

  std::size_t size() const { return x.size(); }
  std::size_t last() const { return x.back(); }
  void push(std::size_t index, Rational radius) {
    x.push_back(index);
    r.push_back(std::move(radius));
  }
};

EmbeddingPlan finish(const MetricFamily& family, PlanBuilder built, std::size_t count, const RadiiOptions& options,
                     std::string construction, bool exact) {
  if (built.size() < count && !options.partial)
    throw Error(ErrorCode::HorizonExhausted, construction + ": found " + std::to_string(built.size()) + " of " +
                                                 std::to_string(count) + " points up to index " +
                                                 std::to_string(search_limit(family, options)));
  EmbeddingPlan plan = make_plan(family, std::move(built.x), std::move(built.r), std::move(construction));
  plan.exact = exact;
  return plan;
}

Rational half(const Rational& value) { return value / 2; }

// Gap delta = (rho(p, 1) + rho(q, 1) - rho(p, q)) / 2 of a pair seen from x_1.
Rational gap(const MetricFamily& family, std::size_t base, std::size_t p, std::size_t q) {
  return half(family.distance(p, base) + family.distance(q, base) - family.distance(p, q));
}

}  // namespace

// ---------------------------------------------------------------------------

EmbeddingPlan radii_accumulation(const MetricFamily& family, std::size_t count, const RadiiOptions& options) {
  if (!family.traits().accumulates_at_base)
    throw Error(ErrorCode::NotConvergent, family.id() + " declares no sequence converging to x_1");
  const std::size_t limit = search_limit(family, options);
  const auto to_base = [&](std::size_t j) { return family.distance(j, 1); };

  bool additive = count <= limit;
  for (std::size_t m = 2; additive && m <= count; ++m)
    for (std::size_t n = m + 1; additive && n <= count; ++n)
      if (family.distance(m, n) != to_base(m) + to_base(n)) additive = false;
  if (additive) {
    PlanBuilder built;
    for (std::size_t j = 1; j <= count; ++j) built.push(j, to_base(j));
    return finish(family, std::move(built), count, options, "accumulation/additive", true);
  }

  PlanBuilder built;
  built.push(1, 0);
  std::optional<Rational> bound;  // later points must satisfy rho(x_m, x_1) <= bound
  const auto admissible = [&](std::size_t j) { return !bound || to_base(j) <= *bound; };
  std::size_t next = 2;
  while (built.size() < count) {
    std::size_t p = next;
    while (p <= limit && !admissible(p)) ++p;
    if (p > limit) break;
    if (built.size() + 1 == count) {
      built.push(p, 0);
      break;
    }
    std::size_t q = p + 1;
    while (q <= limit && !(admissible(q) && family.distance(p, q) < to_base(p) + to_base(q))) ++q;
    if (q > limit) {
      next = p + 1;
      continue;
    }
    const Rational delta = gap(family, 1, p, q);
    built.push(p, to_base(p) - delta);
    built.push(q, to_base(q) - delta);
    const Rational cap = half(delta);
    if (!bound || cap < *bound) bound = cap;
    next = q + 1;
  }
  return finish(family, std::move(built), count, options, "accumulation/strict", true);
}

// ---------------------------------------------------------------------------

namespace {

// Limits read off the tail: d_k = rho(x_k, x_H) when rho(x_k, x_{H-1}) agrees.
std::optional<Rational> settled_row(const MetricFamily& family, std::size_t k, std::size_t limit) {
  if (k + 1 >= limit) return std::nullopt;
  Rational tail = family.distance(k, limit);
  if (family.distance(k, limit - 1) != tail) return std::nullopt;
  return tail;
}

}  // namespace

Rational bounded_ratio_bound(std::size_t n) {
  const Rational inv4n = fraction(1, 4 * n);
  const Rational numerator = Rational(1) - inv4n - fraction(1, 2 * (2 * n + 1));
  return numerator / (1 + inv4n);
}

EmbeddingPlan radii_bounded_separated(const MetricFamily& family, std::size_t count, const RadiiOptions& options) {
  const std::size_t limit = search_limit(family, options);
  Rational d;
  std::function<std::optional<Rational>(std::size_t)> row_limit;
  bool approximate = false;
  if (family.limits()) {
    d = family.limits()->limit;
    approximate = family.limits()->approximate;
    row_limit = [f = family.limits()->row_limit](std::size_t k) { return std::optional<Rational>(f(k)); };
  } else {
    const auto a = limit >= 8 ? settled_row(family, limit / 4, limit) : std::nullopt;
    const auto b = limit >= 8 ? settled_row(family, limit / 2, limit) : std::nullopt;
    if (!a || !b || *a != *b)
      throw Error(ErrorCode::MetadataRequired,
                  family.id() + ": limits are not declared and the tail up to index " + std::to_string(limit) +
                      " does not settle");
    d = *a;
    approximate = true;
    row_limit = [&family, limit](std::size_t k) { return settled_row(family, k, limit); };
  }
  if (d <= 0) throw Error(ErrorCode::MetadataRequired, family.id() + ": limit distance must be positive");

  const auto low = [&](std::size_t m) -> Rational { return d * (Rational(1) - fraction(1, 2 * m)); };
  const auto high = [&](std::size_t m) -> Rational { return d * (Rational(1) + fraction(1, 2 * m)); };

  PlanBuilder built;
  std::size_t next = 1;
  while (built.size() < count) {
    const std::size_t s = built.size() + 1;
    std::size_t j = next;
    for (; j <= limit; ++j) {
      const auto dj = row_limit(j);
      if (!dj || !(low(s) < *dj && *dj < high(s))) continue;
      bool fits = true;
      for (std::size_t m = 1; fits && m < s; ++m) {
        const Rational rho = family.distance(built.x[m - 1], j);
        fits = low(m) < rho && rho < high(m);
      }
      if (fits) break;
    }
    if (j > limit) break;
    built.push(j, half(d) * (Rational(1) - fraction(1, s)));
    next = j + 1;
  }
  EmbeddingPlan plan = finish(family, std::move(built), count, options, "bounded-separated", false);
  plan.approximate_limits = approximate;
  return plan;
}

// ---------------------------------------------------------------------------

EmbeddingPlan radii_unbounded(const MetricFamily& family, std::size_t count, const RadiiOptions& options) {
  const std::size_t limit = search_limit(family, options);
  PlanBuilder built;
  built.push(1, 1);
  while (built.size() < count) {
    const std::size_t n = built.size();
    const std::size_t xn = built.last();
    Rational reach = 0;  // max_k rho(x_n, x_k) + r_k
    for (std::size_t k = 0; k < n; ++k) reach = max_of(reach, family.distance(xn, built.x[k]) + built.r[k]);
    const Rational threshold = reach * n;
    std::size_t j = xn + 1;
    while (j <= limit && family.distance(j, xn) <= threshold) ++j;
    if (j > limit) break;
    built.push(j, family.distance(j, xn) - reach);
  }
  EmbeddingPlan plan = finish(family, std::move(built), count, options, "unbounded", false);
  plan.exact = check_plan(plan).exact;
  return plan;
}

// ---------------------------------------------------------------------------

EmbeddingPlan radii_unbounded_delta(const MetricFamily& family, std::size_t count, const RadiiOptions& options) {
  const auto& pairing = family.delta_pairing();
  if (!pairing) throw Error(ErrorCode::MetadataRequired, family.id() + " marks no pairs with unbounded gaps");
  const std::size_t limit = search_limit(family, options);
  const auto to_base = [&](std::size_t j) { return family.distance(j, 1); };

  PlanBuilder built;
  built.push(1, 0);
  Rational farthest = 0;  // max rho(x_n, x_1) over chosen points
  for (std::size_t t = 1; t <= limit && built.size() < count; ++t) {
    auto [p, q] = pairing(t);
    if (p > q) std::swap(p, q);
    if (q > limit) break;
    if (p <= built.last() || p == q) continue;
    const Rational delta = gap(family, 1, p, q);
    if (delta < 2 * farthest) continue;
    if (built.size() + 1 == count) {
      built.push(p, 0);
      break;
    }
    built.push(p, to_base(p) - delta);
    built.push(q, to_base(q) - delta);
    farthest = max_of(farthest, max_of(to_base(p), to_base(q)));
  }
  return finish(family, std::move(built), count, options, "unbounded-delta", true);
}

// ---------------------------------------------------------------------------

namespace {

struct ChainLink {
  std::size_t index;
  std::optional<Rational> d;  // rho(x_k, x_n) for every later link n
};

// Candidates in `pool` grouped by their distance to x, groups in order of
// first appearance.
std::vector<std::pair<Rational, std::vector<std::size_t>>> equidistant_groups(const MetricFamily& family,
                                                                              std::size_t x,
                                                                              const std::vector<std::size_t>& pool) {
  std::vector<std::pair<Rational, std::vector<std::size_t>>> groups;
  for (std::size_t p : pool) {
    Rational rho = family.distance(x, p);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == rho; });
    if (it == groups.end()) groups.push_back({std::move(rho), {p}});
    else it->second.push_back(p);
  }
  return groups;
}

// Sequence with constant rows: each link sees every later link at the same
// distance. On infinite families (d known) each step keeps the largest group
// of equidistant candidates, ties to the group holding the smallest index,
// and the scan stops once enough links would survive thinning.
std::vector<ChainLink> greedy_chain(const MetricFamily& family, std::size_t start, std::size_t limit,
                                    const Rational& d, std::size_t wanted) {
  std::vector<std::size_t> pool;
  for (std::size_t j = start; j <= limit; ++j) pool.push_back(j);
  std::vector<ChainLink> chain;
  std::optional<Rational> last_kept;
  std::size_t kept = 0;
  while (!pool.empty()) {
    const std::size_t x = pool.front();
    pool.erase(pool.begin());
    if (pool.empty()) {
      chain.push_back({x, std::nullopt});
      break;
    }
    auto groups = equidistant_groups(family, x, pool);
    auto best = groups.begin();
    for (auto it = groups.begin(); it != groups.end(); ++it)
      if (it->second.size() > best->second.size()) best = it;
    chain.push_back({x, best->first});
    if (best->first >= d && (!last_kept || best->first <= (3 * d + *last_kept) / 4)) {
      last_kept = best->first;
      if (++kept > wanted) break;
    }
    pool = std::move(best->second);
  }
  return chain;
}

// Number of links kept by the thinning d <= d_{k+1} <= (3d + d_k)/4, where the
// final link (no successor) counts as d_k = d.
std::size_t thinned_length(const std::vector<ChainLink>& chain, const Rational& d) {
  std::size_t kept = 0;
  std::optional<Rational> last;
  for (const auto& link : chain) {
    const Rational dk = link.d.value_or(d);
    if (dk < d || (last && dk > (3 * d + *last) / 4)) continue;
    last = dk;
    ++kept;
  }
  return kept;
}

// Finite families: every branch of equidistant groups is explored and the
// chain whose thinning keeps the most links wins (ties: first found, which
// favours smaller indices). Each chain's limit d is its last distance.
struct ChainSearch {
  const MetricFamily& family;
  std::size_t wanted;
  std::vector<ChainLink> current, best;
  std::size_t best_score = 0;

  void explore(std::vector<std::size_t> pool) {
    const std::size_t x = pool.front();
    pool.erase(pool.begin());
    if (pool.empty()) {
      current.push_back({x, std::nullopt});
      const Rational d = current.size() > 1 ? *current[current.size() - 2].d : Rational(0);
      const std::size_t score = std::min(thinned_length(current, d), wanted);
      if (best.empty() || score > best_score) {
        best = current;
        best_score = score;
      }
      current.pop_back();
      return;
    }
    for (auto& [rho, group] : equidistant_groups(family, x, pool)) {
      if (best_score >= wanted) return;
      current.push_back({x, rho});
      explore(std::move(group));
      current.pop_back();
    }
  }
};

struct Candidate {
  PlanBuilder built;
  std::string construction;
};

// Thin a constant-row chain to d <= d_{k+1} <= (3d + d_k)/4 and assign radii.
Candidate plan_from_chain(const MetricFamily& family, const std::vector<ChainLink>& chain, const Rational& d,
                          std::size_t count) {
  std::vector<std::pair<std::size_t, Rational>> kept;  // (index, d_k)
  for (const auto& link : chain) {
    const Rational dk = link.d.value_or(d);
    if (dk < d) continue;
    if (!kept.empty() && dk > (3 * d + kept.back().second) / 4) continue;
    kept.emplace_back(link.index, dk);
    if (kept.size() == count) break;
  }
  Candidate out;
  if (kept.empty()) return out;
  const bool level = std::all_of(kept.begin(), kept.end(), [&](const auto& e) { return e.second == kept[0].second; });
  if (level) {
    for (const auto& [index, dk] : kept) out.built.push(index, half(dk));
    out.construction = "ultrametric/equidistant";
    return out;
  }
  out.construction = "ultrametric/decreasing-limits";
  out.built.push(kept[0].first, 0);
  for (std::size_t pos = 2; pos <= kept.size(); pos += 2) {
    if (pos == kept.size()) {
      out.built.push(kept[pos - 1].first, 0);
      break;
    }
    const std::size_t a = kept[pos - 1].first, b = kept[pos].first;
    const Rational half_next = half(kept[pos].second);
    out.built.push(a, family.distance(a, b) - half_next);
    out.built.push(b, half_next);
  }
  return out;
}

// rho(x_1, x_n) increasing: every limit d_k equals the supremum D.
Candidate rising_plan(const MetricFamily& family, std::size_t limit, const Rational& sup, std::size_t count) {
  Candidate out;
  out.construction = "ultrametric/rising-rows";
  std::vector<std::size_t> seq{1};
  Rational prev = 0;
  for (std::size_t j = 2; j <= limit && seq.size() < count; ++j) {
    const Rational v = family.distance(1, j);
    const bool ok = seq.size() == 1 ? v >= half(sup) : (v > prev && v >= half(sup) + half(prev));
    if (!ok) continue;
    seq.push_back(j);
    prev = v;
  }
  out.built.push(1, 0);
  for (std::size_t pos = 2; pos <= seq.size(); pos += 2) {
    if (pos == seq.size()) {
      out.built.push(seq[pos - 1], 0);
      break;
    }
    const Rational r = half(family.distance(seq[pos - 1], seq[pos]));
    out.built.push(seq[pos - 1], r);
    out.built.push(seq[pos], r);
  }
  return out;
}

EmbeddingPlan unbounded_ultrametric(const MetricFamily& family, std::size_t count, const RadiiOptions& options) {
  const std::size_t limit = search_limit(family, options);
  const auto v = [&](std::size_t j) { return family.distance(1, j); };
  PlanBuilder built;
  built.push(1, 0);
  Rational farthest = 0;
  std::size_t next = 2;
  while (built.size() < count) {
    std::size_t p = next;
    while (p <= limit && v(p) < 4 * farthest) ++p;
    if (p > limit) break;
    if (built.size() + 1 == count) {
      built.push(p, 0);
      break;
    }
    const Rational vp = v(p);
    std::size_t q = p + 1;
    while (q <= limit && v(q) <= vp) ++q;
    if (q > limit) break;
    // Ultrametric: rho(x_p, x_q) = v(q), so the gap is v(p)/2.
    built.push(p, half(vp));
    built.push(q, v(q) - half(vp));
    farthest = v(q);
    next = q + 1;
  }
  return finish(family, std::move(built), count, options, "ultrametric/unbounded", true);
}

}  // namespace

EmbeddingPlan radii_ultrametric(const MetricFamily& family, std::size_t count, const RadiiOptions& options) {
  const std::size_t limit = search_limit(family, options);
  const std::size_t scanned = std::min<std::size_t>(limit, 48);
  const auto check = is_ultrametric(truncate(family, scanned));
  if (!check.ultrametric) {
    const auto& w = *check.witness;
    throw Error(ErrorCode::NotUltrametric,
                family.id() + ": strong triangle inequality fails on x_" + std::to_string(w[0] + 1) + ", x_" +
                    std::to_string(w[1] + 1) + ", x_" + std::to_string(w[2] + 1),
                {w[0] + 1, w[1] + 1, w[2] + 1});
  }
  if (family.traits().unbounded) return unbounded_ultrametric(family, count, options);

  std::optional<Rational> known_d;
  if (family.limits()) known_d = family.limits()->limit;
  if (!known_d && !family.size())
    throw Error(ErrorCode::MetadataRequired, family.id() + ": infinite family without declared limits");

  std::vector<Candidate> candidates;
  const auto from_chain = [&](std::size_t start) {
    if (start > limit) return;
    std::vector<ChainLink> chain;
    Rational d;
    if (known_d) {
      d = *known_d;
      chain = greedy_chain(family, start, limit, d, count);
    } else {
      ChainSearch search{family, count, {}, {}, 0};
      std::vector<std::size_t> pool;
      for (std::size_t j = start; j <= limit; ++j) pool.push_back(j);
      search.explore(std::move(pool));
      chain = std::move(search.best);
      d = chain.size() > 1 ? *chain[chain.size() - 2].d : Rational(0);
    }
    candidates.push_back(plan_from_chain(family, chain, d, count));
  };
  from_chain(1);
  if (candidates.back().built.size() < count) {
    Rational sup = known_d.value_or(Rational(0));
    if (!known_d)
      for (std::size_t j = 2; j <= limit; ++j) sup = max_of(sup, family.distance(1, j));
    candidates.push_back(rising_plan(family, limit, sup, count));
    if (candidates.back().built.size() < count) from_chain(2);
  }

  auto best = candidates.begin();
  for (auto it = candidates.begin(); it != candidates.end(); ++it) {
    if (it->built.size() >= count) {
      best = it;
      break;
    }
    if (it->built.size() > best->built.size()) best = it;
  }
  return finish(family, std::move(best->built), count, options, best->construction, true);
}

// ---------------------------------------------------------------------------

std::optional<RadiiCase> parse_radii_case(std::string_view name) {
  static const std::map<std::string_view, RadiiCase> names = {
      {"auto", RadiiCase::Auto},           {"accum", RadiiCase::Accumulation},
      {"bounded", RadiiCase::BoundedSeparated}, {"unbounded", RadiiCase::Unbounded},
      {"udelta", RadiiCase::UnboundedDelta},  {"ultra", RadiiCase::Ultrametric},
  };
  const auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

RadiiCase resolve_case(const MetricFamily& family, RadiiCase requested) {
  if (requested != RadiiCase::Auto) return requested;
  const auto& traits = family.traits();
  if (traits.accumulates_at_base) return RadiiCase::Accumulation;
  if (traits.ultrametric) return RadiiCase::Ultrametric;
  if (traits.unbounded) return family.delta_pairing() ? RadiiCase::UnboundedDelta : RadiiCase::Unbounded;
  return RadiiCase::BoundedSeparated;
}

EmbeddingPlan construct_plan(const MetricFamily& family, RadiiCase which, std::size_t count,
                             const RadiiOptions& options) {
  switch (resolve_case(family, which)) {
    case RadiiCase::Accumulation: return radii_accumulation(family, count, options);
    case RadiiCase::BoundedSeparated: return radii_bounded_separated(family, count, options);
    case RadiiCase::Unbounded: return radii_unbounded(family, count, options);
    case RadiiCase::UnboundedDelta: return radii_unbounded_delta(family, count, options);
    case RadiiCase::Ultrametric:
    case RadiiCase::Auto: break;
  }
  return radii_ultrametric(family, count, options);
}

// ---------------------------------------------------------------------------

AdmissibilityResult admissibility_lp(const MetricFamily& family, const std::vector<std::size_t>& ordering) {
  const std::size_t n = ordering.size();
  std::set<std::size_t> seen;
  for (std::size_t idx : ordering) {
    if (!family.contains(idx))
      throw Error(ErrorCode::IndexOutOfRange, "family index " + std::to_string(idx) + " out of range", {idx});
    if (!seen.insert(idx).second)
      throw Error(ErrorCode::ParseError, "ordering repeats index " + std::to_string(idx), {idx});
  }
  AdmissibilityResult out;
  out.r.assign(n, Rational(0));
  if (n < 3) return out;

  // Variables r_1..r_N, then tau.
  LinearProgram lp;
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = 1;
  const auto rho = [&](std::size_t m, std::size_t k) { return family.distance(ordering[m - 1], ordering[k - 1]); };
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::size_t k = m + 1; k <= n; ++k) {
      std::vector<Rational> row(n + 1);
      row[m - 1] = 1;
      row[k - 1] = 1;
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(rho(m, k));
    }
  }
  for (std::size_t p = 1; 2 * p + 1 <= n; ++p) {
    std::vector<Rational> row(n + 1);
    row[2 * p - 1] = -1;
    row[2 * p] = -1;
    row[n] = rho(2 * p, 2 * p + 1);
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(0);
  }
  const auto sol = solve_lp(lp);
  out.tau = sol.value;
  out.r.assign(sol.x.begin(), sol.x.begin() + n);
  return out;
}

}  // namespace lipfree
