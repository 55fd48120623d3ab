#include "lipfree/simplex.hpp"

#include <limits>
#include <string>

#include "lipfree/error.hpp"

namespace lipfree {

namespace {

constexpr std::size_t kDegenerateRunBeforeBland = 32;

}  // namespace

LinearProgramSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.rows.size();
  if (lp.rhs.size() != m) throw Error(ErrorCode::ParseError, "rhs size does not match row count");
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rows[i].size() != n) throw Error(ErrorCode::ParseError, "row " + std::to_string(i) + " has wrong width");
    if (lp.rhs[i] < 0) throw Error(ErrorCode::ParseError, "negative right-hand side in row " + std::to_string(i));
  }

  // Dictionary: x_B[i] = b[i] - sum_j a[i][j] x_N[j];  z = z0 + sum_j c[j] x_N[j].
  // Variables 0..n-1 are structural, n..n+m-1 are slacks.
  std::vector<std::vector<Rational>> a = lp.rows;
  std::vector<Rational> b = lp.rhs;
  std::vector<Rational> c = lp.objective;
  Rational z0 = 0;
  std::vector<std::size_t> basic(m), nonbasic(n);
  for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;
  for (std::size_t j = 0; j < n; ++j) nonbasic[j] = j;

  std::size_t pivots = 0;
  std::size_t degenerate_run = 0;
  bool bland = false;
  for (;;) {
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (c[j] <= 0) continue;
      if (enter == n) {
        enter = j;
      } else if (bland ? nonbasic[j] < nonbasic[enter] : c[j] > c[enter]) {
        enter = j;
      }
    }
    if (enter == n) break;

    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (a[i][enter] <= 0) continue;
      Rational ratio = b[i] / a[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basic[i] < basic[leave])) {
        leave = i;
        best_ratio = std::move(ratio);
      }
    }
    if (leave == m) throw Error(ErrorCode::Unbounded, "linear program is unbounded");

    degenerate_run = b[leave] == 0 ? degenerate_run + 1 : 0;
    if (degenerate_run > kDegenerateRunBeforeBland) bland = true;

    // Pivot: x_N[enter] enters, x_B[leave] leaves.
    const Rational pivot = a[leave][enter];
    auto& prow = a[leave];
    b[leave] /= pivot;
    for (std::size_t j = 0; j < n; ++j)
      if (j != enter) prow[j] /= pivot;
    prow[enter] = 1 / pivot;

    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const Rational factor = a[i][enter];
      if (factor == 0) continue;
      auto& row = a[i];
      b[i] -= factor * b[leave];
      for (std::size_t j = 0; j < n; ++j)
        if (j != enter && prow[j] != 0) row[j] -= factor * prow[j];
      row[enter] = -factor * prow[enter];
    }
    const Rational ce = c[enter];
    z0 += ce * b[leave];
    for (std::size_t j = 0; j < n; ++j)
      if (j != enter && prow[j] != 0) c[j] -= ce * prow[j];
    c[enter] = -ce * prow[enter];

    std::swap(basic[leave], nonbasic[enter]);
    ++pivots;
  }

  LinearProgramSolution out;
  out.value = z0;
  out.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basic[i] < n) out.x[basic[i]] = b[i];
  out.pivots = pivots;
  return out;
}

}  // namespace lipfree
