#pragma once

#include <span>
#include <string>
#include <vector>

#include "lipfree/metric.hpp"

namespace lipfree {

/// max over i != j of |f(i) - f(j)| / dist(i, j); 0 on spaces with one point.
Rational lipschitz_constant(std::span<const Rational> values, const FiniteMetricSpace& space);
Rational lip_norm(const LipFunction& f, const FiniteMetricSpace& space);

struct FreeNormResult {
  Rational norm;
  /// A 1-Lipschitz function on the whole space attaining the norm.
  LipFunction witness;
};

/// Norm in the free space as the linear program
///   max sum a_i f(x_i)  over  f(0) = 0, |f(i) - f(j)| <= dist(i, j).
/// Only the support and the base point enter the program; the optimal f is
/// then extended to every point by the McShane formula, which keeps it
/// 1-Lipschitz, so restricting the program loses nothing.
FreeNormResult free_norm_lp(const FreeElement& mu, const FiniteMetricSpace& space);

/// Same norm computed as a transport cost: the base point absorbs -sum a_i,
/// the positive part is shipped to the negative part at cost dist.
Rational free_norm_flow(const FreeElement& mu, const FiniteMetricSpace& space);

/// Closed form for ||a delta_x + b delta_y|| with dist(x,0) = dx0,
/// dist(y,0) = dy0, dist(x,y) = dxy:
///   ab >= 0:              dx0|a| + dy0|b|
///   ab <= 0, |b| <= |a|:  dx0|a| + (dxy - dx0)|b|
///   ab <= 0, |b| >= |a|:  (dxy - dy0)|a| + dy0|b|
/// Throws InvalidTriple unless the three distances are positive and satisfy
/// the triangle inequalities.
Rational two_point_norm(const Rational& a, const Rational& b, const Rational& dx0, const Rational& dy0,
                        const Rational& dxy);

/// The 3-point space {0, x, y} with the given distances (base first).
FiniteMetricSpace three_point_space(const Rational& dx0, const Rational& dy0, const Rational& dxy);

/// sum a_i f(x_i).
Rational pairing(const LipFunction& f, const FreeElement& mu);

struct PlanePoint {
  Rational u;
  Rational v;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// The planar set A = {|u| <= dx0, |v| <= dy0, |u - v| <= dxy}. The norm of
/// a delta_x + b delta_y is the maximum of |a u + b v| over A, hence over its
/// vertices, and the unit ball of span{delta_x, delta_y} is the polar of A.
struct BallSection {
  std::size_t x = 0;
  std::size_t y = 0;
  Rational dx0, dy0, dxy;
  std::vector<PlanePoint> vertices;   // counterclockwise from angle 0
  std::vector<PlanePoint> unit_ball;  // counterclockwise, in (a, b) coordinates

  /// max over vertices of |a u + b v|.
  Rational support(const Rational& a, const Rational& b) const;
};

/// Throws DegeneratePair if x == y or either point is the base point.
BallSection ball_section(const FiniteMetricSpace& space, std::size_t x, std::size_t y);
BallSection ball_section(const Rational& dx0, const Rational& dy0, const Rational& dxy);

/// 512x512 drawing of A (left) and the unit-ball section (right).
std::string ball_section_svg(const BallSection& section);
/// Lines "kind,index,u,v" with kind A or ball and exact coordinates.
std::string ball_section_csv(const BallSection& section);

struct NonrotundWitness {
  std::size_t x = 0;
  std::size_t y = 0;
  FreeElement u;  // delta_x / dist(x, 0)
  FreeElement v;  // delta_y / dist(y, 0)
  Rational norm_u, norm_v, norm_sum;
  bool holds() const { return u != v && norm_u == 1 && norm_v == 1 && norm_sum == 2; }
};

/// Two distinct unit vectors whose midpoint is also a unit vector, built on
/// the first two non-base points. Norms are computed by the linear program.
/// Throws TooFewPoints on spaces with fewer than 3 points.
NonrotundWitness nonrotund_witness(const FiniteMetricSpace& space);

}  // namespace lipfree
