#pragma once

#include <vector>

#include "lipfree/rational.hpp"

namespace lipfree {

/// maximize objective . x  subject to  rows x <= rhs,  x >= 0,  with rhs >= 0
/// so that x = 0 is a feasible starting vertex.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
};

struct LinearProgramSolution {
  Rational value;
  std::vector<Rational> x;  // an optimal vertex
  std::size_t pivots = 0;
};

/// Exact dictionary simplex. Dantzig pricing, switching to Bland's rule after
/// a run of degenerate pivots, so it always terminates. Throws
/// Error(Unbounded) when the objective is unbounded and Error(ParseError) on
/// malformed input or a negative right-hand side.
LinearProgramSolution solve_lp(const LinearProgram& lp);

}  // namespace lipfree
