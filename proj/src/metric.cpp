#include "lipfree/metric.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "lipfree/error.hpp"

namespace lipfree {

FiniteMetricSpace validate_metric(const Matrix& dist) {
  const std::size_t n = dist.size();
  for (std::size_t i = 0; i < n; ++i)
    if (dist[i].size() != n)
      throw Error(ErrorCode::NotSquare, "row " + std::to_string(i) + " has " +
                                            std::to_string(dist[i].size()) + " entries, expected " +
                                            std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (dist[i][i] != 0) throw Error(ErrorCode::NonzeroDiagonal, to_string(dist[i][i]), {i});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist[i][j] != dist[j][i])
        throw Error(ErrorCode::Asymmetric, to_string(dist[i][j]) + " vs " + to_string(dist[j][i]),
                    {i, j});
      if (dist[i][j] <= 0)
        throw Error(ErrorCode::NegativeOrZeroOffDiagonal, to_string(dist[i][j]), {i, j});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (dist[i][k] > dist[i][j] + dist[j][k])
          throw Error(ErrorCode::TriangleViolation,
                      to_string(dist[i][k]) + " > " + to_string(dist[i][j]) + " + " +
                          to_string(dist[j][k]),
                      {i, j, k});
  std::vector<Rational> flat;
  flat.reserve(n * n);
  for (const auto& row : dist) flat.insert(flat.end(), row.begin(), row.end());
  return FiniteMetricSpace(n, std::move(flat));
}

FiniteMetricSpace assume_metric(std::size_t n, std::vector<Rational> flat) {
  return FiniteMetricSpace(n, std::move(flat));
}

FiniteMetricSpace FiniteMetricSpace::subspace(std::span<const std::size_t> points) const {
  const std::size_t m = points.size();
  for (std::size_t p : points)
    if (p >= n_) throw Error(ErrorCode::IndexOutOfRange, "subspace point", {p});
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (points[a] == points[b]) throw Error(ErrorCode::DegeneratePair, "repeated point", {points[a]});
  std::vector<Rational> flat(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) flat[a * m + b] = (*this)(points[a], points[b]);
  return FiniteMetricSpace(m, std::move(flat));
}

Matrix FiniteMetricSpace::matrix() const {
  Matrix out(n_, std::vector<Rational>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

UltrametricCheck is_ultrametric(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        if (space(x, y) > max_of(space(x, z), space(z, y)))
          return {false, std::array<std::size_t, 3>{x, y, z}};
      }
  return {};
}

FreeElement::FreeElement(std::vector<Term> terms) {
  std::map<std::size_t, Rational> merged;
  for (auto& t : terms) merged[t.point] += t.coef;
  for (auto& [point, coef] : merged)
    if (point != 0 && coef != 0) terms_.push_back({point, coef});
}

FreeElement FreeElement::delta(std::size_t point, const Rational& coef) {
  return FreeElement({{point, coef}});
}

Rational FreeElement::coefficient(std::size_t point) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), point,
                             [](const Term& t, std::size_t p) { return t.point < p; });
  return (it != terms_.end() && it->point == point) ? it->coef : Rational(0);
}

std::size_t FreeElement::max_point() const { return terms_.empty() ? 0 : terms_.back().point; }

void FreeElement::check_support(const FiniteMetricSpace& space) const {
  for (const auto& t : terms_)
    if (t.point >= space.size())
      throw Error(ErrorCode::IndexOutOfRange,
                  "support point outside a space of " + std::to_string(space.size()) + " points",
                  {t.point});
}

FreeElement FreeElement::operator+(const FreeElement& other) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return FreeElement(std::move(all));
}

FreeElement FreeElement::operator-(const FreeElement& other) const { return *this + other * Rational(-1); }

FreeElement FreeElement::operator*(const Rational& scalar) const {
  std::vector<Term> scaled = terms_;
  for (auto& t : scaled) t.coef *= scalar;
  return FreeElement(std::move(scaled));
}

FreeElement FreeElement::operator/(const Rational& scalar) const { return *this * Rational(1 / scalar); }

LipFunction::LipFunction(std::vector<Rational> values) : values_(std::move(values)) {
  if (!values_.empty() && values_[0] != 0)
    throw Error(ErrorCode::ParseError, "Lipschitz function must vanish at the base point");
}

}  // namespace lipfree
