#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "lipfree/metric.hpp"

namespace lipfree {

/// Distance between family points i < j (1-based).
using DistanceOracle = std::function<Rational(std::size_t, std::size_t)>;

/// n-th marked pair (1-based n) of family indices whose gap
/// rho(p,x1) + rho(q,x1) - rho(p,q) grows without bound.
using PairingOracle = std::function<std::pair<std::size_t, std::size_t>(std::size_t)>;

/// Closed-form limits d_k = lim_n rho(x_k, x_n) and d = lim_k d_k.
struct LimitData {
  std::function<Rational(std::size_t)> row_limit;
  Rational limit;
  /// Set when the values are finite-horizon estimates rather than declared.
  bool approximate = false;
};

struct FamilyTraits {
  bool bounded = false;
  bool unbounded = false;
  bool uniformly_separated = false;
  /// x_n -> x_1 (the base point) as n grows.
  bool accumulates_at_base = false;
  bool ultrametric = false;
};

struct FamilySpec {
  std::string id;
  DistanceOracle oracle;
  std::optional<std::size_t> size;  // empty for countably infinite families
  FamilyTraits traits;
  std::optional<LimitData> limits;
  PairingOracle delta_pairing;
};

/// A countable pointed metric space x_1, x_2, ... given by a distance oracle.
/// Cheap to copy; the description is shared and immutable.
class MetricFamily {
 public:
  explicit MetricFamily(FamilySpec spec);

  const std::string& id() const noexcept { return spec_->id; }
  std::optional<std::size_t> size() const noexcept { return spec_->size; }
  const FamilyTraits& traits() const noexcept { return spec_->traits; }
  const std::optional<LimitData>& limits() const noexcept { return spec_->limits; }
  const PairingOracle& delta_pairing() const noexcept { return spec_->delta_pairing; }

  /// 1-based; symmetric; zero on the diagonal.
  Rational distance(std::size_t i, std::size_t j) const;

  bool contains(std::size_t i) const noexcept { return i >= 1 && (!spec_->size || i <= *spec_->size); }

 private:
  std::shared_ptr<const FamilySpec> spec_;
};

/// Points x_1..x_N as a validated space; x_1 becomes the base point 0.
FiniteMetricSpace truncate(const MetricFamily& family, std::size_t count);

/// Space on the given family indices (in that order, first one is the base).
/// Skips the triangle scan: a family oracle is a metric by contract.
FiniteMetricSpace restrict_family(const MetricFamily& family, std::span<const std::size_t> indices);

}  // namespace lipfree
