#include "lipfree/family.hpp"

#include <string>

#include "lipfree/error.hpp"

namespace lipfree {

MetricFamily::MetricFamily(FamilySpec spec) : spec_(std::make_shared<const FamilySpec>(std::move(spec))) {
  if (!spec_->oracle) throw Error(ErrorCode::InvalidFamilyParameters, "family without a distance oracle");
}

Rational MetricFamily::distance(std::size_t i, std::size_t j) const {
  if (!contains(i)) throw Error(ErrorCode::IndexOutOfRange, id(), {i});
  if (!contains(j)) throw Error(ErrorCode::IndexOutOfRange, id(), {j});
  if (i == j) return 0;
  return i < j ? spec_->oracle(i, j) : spec_->oracle(j, i);
}

FiniteMetricSpace truncate(const MetricFamily& family, std::size_t count) {
  if (count < 1) throw Error(ErrorCode::InvalidFamilyParameters, "truncation needs at least one point");
  if (family.size() && count > *family.size())
    throw Error(ErrorCode::InvalidFamilyParameters,
                family.id() + " has only " + std::to_string(*family.size()) + " points");
  Matrix dist(count, std::vector<Rational>(count));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) dist[i][j] = dist[j][i] = family.distance(i + 1, j + 1);
  return validate_metric(dist);
}

FiniteMetricSpace restrict_family(const MetricFamily& family, std::span<const std::size_t> indices) {
  const std::size_t m = indices.size();
  std::vector<Rational> flat(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      if (indices[a] == indices[b]) throw Error(ErrorCode::DegeneratePair, "repeated family index", {indices[a]});
      flat[a * m + b] = flat[b * m + a] = family.distance(indices[a], indices[b]);
    }
  return assume_metric(m, std::move(flat));
}

}  // namespace lipfree
