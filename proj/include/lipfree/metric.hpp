#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lipfree/rational.hpp"

namespace lipfree {

using Matrix = std::vector<std::vector<Rational>>;

/// A validated pointed metric on points 0..n-1. Point 0 is the base point.
/// Only constructible through validate_metric() or derived from another
/// validated space, so every instance satisfies the metric axioms.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  const Rational& dist(std::size_t i, std::size_t j) const { return (*this)(i, j); }

  /// Induced subspace on `points` (indices into this space). points[0]
  /// becomes the new base point.
  FiniteMetricSpace subspace(std::span<const std::size_t> points) const;

  Matrix matrix() const;

  friend bool operator==(const FiniteMetricSpace&, const FiniteMetricSpace&) = default;

 private:
  friend FiniteMetricSpace validate_metric(const Matrix& dist);
  friend FiniteMetricSpace assume_metric(std::size_t n, std::vector<Rational> flat);
  FiniteMetricSpace(std::size_t n, std::vector<Rational> flat) : n_(n), dist_(std::move(flat)) {}

  std::size_t n_ = 0;
  std::vector<Rational> dist_;
};

/// Checks the metric axioms and returns the space, or throws Error with the
/// first violated axiom: NotSquare, NonzeroDiagonal(i), Asymmetric(i,j),
/// NegativeOrZeroOffDiagonal(i,j), TriangleViolation(i,j,k) meaning
/// dist[i][k] > dist[i][j] + dist[j][k]. Scan order is lexicographic.
FiniteMetricSpace validate_metric(const Matrix& dist);

/// Builds a space without the O(n^3) triangle scan. For generators whose
/// output is a metric by construction; callers own that guarantee.
FiniteMetricSpace assume_metric(std::size_t n, std::vector<Rational> flat);

struct UltrametricCheck {
  bool ultrametric = true;
  /// First (x, y, z) in scan order with dist(x,y) > max(dist(x,z), dist(z,y)).
  std::optional<std::array<std::size_t, 3>> witness;
};

UltrametricCheck is_ultrametric(const FiniteMetricSpace& space);

/// Finitely supported element sum a_i delta_{x_i} of the free space.
/// Normal form: support sorted by point, no zero coefficients, no base point
/// (delta_0 is the zero vector).
class FreeElement {
 public:
  struct Term {
    std::size_t point;
    Rational coef;
    friend bool operator==(const Term&, const Term&) = default;
  };

  FreeElement() = default;
  /// Accepts any term list; duplicates are summed, zeros and base terms dropped.
  explicit FreeElement(std::vector<Term> terms);

  static FreeElement delta(std::size_t point, const Rational& coef = 1);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(std::size_t point) const;
  std::size_t max_point() const;

  /// Throws IndexOutOfRange if some support point is not in `space`.
  void check_support(const FiniteMetricSpace& space) const;

  FreeElement operator+(const FreeElement& other) const;
  FreeElement operator-(const FreeElement& other) const;
  FreeElement operator*(const Rational& scalar) const;
  FreeElement operator/(const Rational& scalar) const;

  friend bool operator==(const FreeElement&, const FreeElement&) = default;

 private:
  std::vector<Term> terms_;
};

inline FreeElement operator*(const Rational& scalar, const FreeElement& e) { return e * scalar; }

/// Values of a function on every point of a space, with f(base) = 0.
class LipFunction {
 public:
  LipFunction() = default;
  /// Throws Error(ParseError) if values[0] != 0.
  explicit LipFunction(std::vector<Rational> values);

  static LipFunction zero(std::size_t n) { return LipFunction(std::vector<Rational>(n)); }

  const std::vector<Rational>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Rational& operator()(std::size_t i) const { return values_[i]; }

 private:
  std::vector<Rational> values_;
};

}  // namespace lipfree
