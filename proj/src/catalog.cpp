#include "lipfree/catalog.hpp"

#include <algorithm>
#include <random>

#include "lipfree/error.hpp"

namespace lipfree {

namespace {

Rational inv(std::size_t k) { return fraction(1, k); }

Rational pow2(std::size_t e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
  return Rational(p);
}

MetricFamily remark(int which) {
  FamilySpec spec;
  spec.id = "remark:" + std::to_string(which);
  spec.traits.uniformly_separated = true;
  switch (which) {
    case 1:
      spec.oracle = [](std::size_t k, std::size_t n) -> Rational { return Rational(k + n) - inv(k); };
      spec.traits.unbounded = true;
      spec.traits.uniformly_separated = false;
      break;
    case 2:
      spec.oracle = [](std::size_t k, std::size_t) -> Rational { return Rational(2) - inv(k); };
      spec.limits = LimitData{[](std::size_t k) -> Rational { return Rational(2) - inv(k); }, 2};
      break;
    case 3:
      spec.oracle = [](std::size_t k, std::size_t n) -> Rational { return Rational(2) - inv(k) + inv(n); };
      spec.limits = LimitData{[](std::size_t k) -> Rational { return Rational(2) - inv(k); }, 2};
      break;
    case 4:
      spec.oracle = [](std::size_t k, std::size_t n) -> Rational { return Rational(2) - inv(k) - inv(2 * n); };
      spec.limits = LimitData{[](std::size_t k) -> Rational { return Rational(2) - inv(k); }, 2};
      break;
    case 5:
      spec.oracle = [](std::size_t, std::size_t n) -> Rational { return Rational(1) + inv(n); };
      spec.limits = LimitData{[](std::size_t) { return Rational(1); }, 1};
      break;
    case 6:
      spec.oracle = [](std::size_t k, std::size_t n) -> Rational { return Rational(1) + inv(2 * k) + inv(n); };
      spec.limits = LimitData{[](std::size_t k) -> Rational { return Rational(1) + inv(2 * k); }, 1};
      break;
    default:
      throw Error(ErrorCode::InvalidFamilyParameters, "remark family index must be 1..6");
  }
  spec.traits.bounded = !spec.traits.unbounded;
  return MetricFamily(std::move(spec));
}

PairingOracle consecutive_pairs() {
  return [](std::size_t n) { return std::pair<std::size_t, std::size_t>{2 * n, 2 * n + 1}; };
}

void check_levels(const std::vector<Rational>& levels) {
  if (levels.empty()) throw Error(ErrorCode::EmptyLevels, "dendrogram needs at least one level");
  for (std::size_t t = 0; t < levels.size(); ++t) {
    if (levels[t] <= 0) throw Error(ErrorCode::InvalidFamilyParameters, "level distances must be positive");
    if (t > 0 && levels[t] >= levels[t - 1])
      throw Error(ErrorCode::InvalidFamilyParameters, "level distances must strictly decrease with depth");
  }
}

}  // namespace

MetricFamily make_family(FamilyId id, const FamilyParams& params) {
  FamilySpec spec;
  switch (id) {
    case FamilyId::Uniform: {
      if (params.d <= 0) throw Error(ErrorCode::InvalidFamilyParameters, "uniform distance must be positive");
      const Rational d = params.d;
      spec.id = "uniform:" + to_string(d);
      spec.oracle = [d](std::size_t, std::size_t) { return d; };
      spec.traits = {.bounded = true, .uniformly_separated = true, .ultrametric = true};
      spec.limits = LimitData{[d](std::size_t) { return d; }, d};
      return MetricFamily(std::move(spec));
    }
    case FamilyId::ConvergentLine:
      spec.id = "convline";
      // x_1 = 0 and x_n = 1/(n-1), so every pair i < j sits at |x_i - x_j|.
      spec.oracle = [](std::size_t i, std::size_t j) {
        if (i == 1) return inv(j - 1);
        return Rational(inv(i - 1) - inv(j - 1));
      };
      spec.traits = {.bounded = true, .accumulates_at_base = true};
      return MetricFamily(std::move(spec));
    case FamilyId::IntegerLine:
      spec.id = "intline";
      spec.oracle = [](std::size_t i, std::size_t j) -> Rational { return Rational(j - i); };
      spec.traits = {.unbounded = true, .uniformly_separated = true};
      spec.delta_pairing = consecutive_pairs();
      return MetricFamily(std::move(spec));
    case FamilyId::GeometricLine:
      spec.id = "geomline";
      spec.oracle = [](std::size_t i, std::size_t j) -> Rational { return Rational(pow2(j) - pow2(i)); };
      spec.traits = {.unbounded = true, .uniformly_separated = true};
      spec.delta_pairing = consecutive_pairs();
      return MetricFamily(std::move(spec));
    case FamilyId::DendrogramUltrametric:
      return dendrogram_ultrametric(default_dendrogram_spec(params.seed, params.depth),
                                    "dendro:" + std::to_string(params.seed) + ":" + std::to_string(params.depth));
    case FamilyId::Remark1: return remark(1);
    case FamilyId::Remark2: return remark(2);
    case FamilyId::Remark3: return remark(3);
    case FamilyId::Remark4: return remark(4);
    case FamilyId::Remark5: return remark(5);
    case FamilyId::Remark6: return remark(6);
  }
  throw Error(ErrorCode::InvalidFamilyParameters, "unknown family id");
}

Dendrogram::Dendrogram(std::vector<Rational> levels, std::vector<std::vector<std::uint32_t>> paths)
    : levels_(std::move(levels)), paths_(std::move(paths)) {}

Dendrogram Dendrogram::random(const DendrogramSpec& spec) {
  check_levels(spec.levels);
  if (spec.leaf_count < 1) throw Error(ErrorCode::InvalidFamilyParameters, "dendrogram needs a leaf");
  std::mt19937_64 rng(spec.seed);
  std::vector<std::vector<std::uint32_t>> paths(spec.leaf_count);
  const std::size_t last = spec.levels.size() - 1;

  // Node over leaves [lo, hi) at depth t; `path` is the child index trail.
  auto split = [&](auto&& self, std::size_t lo, std::size_t hi, std::size_t t,
                   std::vector<std::uint32_t>& path) -> void {
    const std::size_t size = hi - lo;
    if (size == 1) {
      paths[lo] = path;
      return;
    }
    if (t == last) {
      for (std::size_t i = lo; i < hi; ++i) {
        paths[i] = path;
        paths[i].push_back(static_cast<std::uint32_t>(i - lo));
      }
      return;
    }
    const std::size_t children = std::min<std::size_t>(size, 2 + rng() % 2);
    // Distinct cut points in (lo, hi), sorted.
    std::vector<std::size_t> cuts;
    while (cuts.size() + 1 < children) {
      std::size_t c = lo + 1 + rng() % (size - 1);
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), lo);
    cuts.push_back(hi);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      path.push_back(static_cast<std::uint32_t>(c));
      self(self, cuts[c], cuts[c + 1], t + 1, path);
      path.pop_back();
    }
  };
  std::vector<std::uint32_t> path;
  split(split, 0, spec.leaf_count, 0, path);
  return Dendrogram(spec.levels, std::move(paths));
}

Dendrogram Dendrogram::balanced(std::size_t branching, std::vector<Rational> levels) {
  check_levels(levels);
  if (branching < 2) throw Error(ErrorCode::InvalidFamilyParameters, "branching must be at least 2");
  std::size_t leaves = 1;
  for (std::size_t t = 0; t < levels.size(); ++t) leaves *= branching;
  std::vector<std::vector<std::uint32_t>> paths(leaves);
  for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
    std::vector<std::uint32_t> digits(levels.size());
    std::size_t rest = leaf;
    for (std::size_t t = levels.size(); t-- > 0;) {
      digits[t] = static_cast<std::uint32_t>(rest % branching);
      rest /= branching;
    }
    paths[leaf] = std::move(digits);
  }
  return Dendrogram(std::move(levels), std::move(paths));
}

Rational Dendrogram::distance(std::size_t a, std::size_t b) const {
  if (a == b) return 0;
  const auto& p = paths_.at(a - 1);
  const auto& q = paths_.at(b - 1);
  std::size_t common = 0;
  while (common < p.size() && common < q.size() && p[common] == q[common]) ++common;
  return levels_.at(common);
}

MetricFamily dendrogram_family(const Dendrogram& tree, std::string id) {
  FamilySpec spec;
  spec.id = std::move(id);
  auto shared = std::make_shared<const Dendrogram>(tree);
  spec.oracle = [shared](std::size_t i, std::size_t j) { return shared->distance(i, j); };
  spec.size = tree.leaf_count();
  spec.traits = {.bounded = true, .uniformly_separated = true, .ultrametric = true};
  return MetricFamily(std::move(spec));
}

MetricFamily dendrogram_ultrametric(const DendrogramSpec& spec, std::string id) {
  if (id.empty()) id = "dendrogram:" + std::to_string(spec.seed);
  return dendrogram_family(Dendrogram::random(spec), std::move(id));
}

DendrogramSpec default_dendrogram_spec(std::uint64_t seed, std::size_t depth) {
  if (depth < 1 || depth > 24) throw Error(ErrorCode::InvalidFamilyParameters, "dendrogram depth must be 1..24");
  DendrogramSpec spec;
  spec.seed = seed;
  spec.leaf_count = depth + 2 >= 12 ? 4096 : (std::size_t{1} << (depth + 2));
  for (std::size_t t = 0; t < depth; ++t) spec.levels.push_back(Rational(1) / pow2(t));
  return spec;
}

MetricFamily family_from_space(const FiniteMetricSpace& space, std::string id) {
  FamilySpec spec;
  spec.id = std::move(id);
  auto shared = std::make_shared<const FiniteMetricSpace>(space);
  spec.oracle = [shared](std::size_t i, std::size_t j) { return (*shared)(i - 1, j - 1); };
  spec.size = space.size();
  spec.traits.bounded = true;
  spec.traits.uniformly_separated = true;
  spec.traits.ultrametric = is_ultrametric(space).ultrametric;
  return MetricFamily(std::move(spec));
}

std::vector<FamilyInfo> family_catalog() {
  return {
      {"uniform", "uniform:<d>  (d > 0 rational)", "bounded separated radii; ultrametric case c; admissibility control"},
      {"convline", "convline", "accumulation point at the base (strict sub-case)"},
      {"intline", "intline", "unbounded radii; unbounded-gap pairing (2n, 2n+1)"},
      {"geomline", "geomline", "unbounded radii with fast growth; unbounded-gap pairing"},
      {"dendro", "dendro:<seed>:<depth>", "ultrametric radii (cases a, c) on finite random dendrograms"},
      {"remark", "remark:<1..6>", "admissibility probe; 2-6 bounded separated radii, 1 unbounded radii"},
      {"file", "file:<path.json>", "custom finite space; norms and ball sections"},
  };
}

}  // namespace lipfree
