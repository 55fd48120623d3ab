#include "lipfree/norm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "lipfree/error.hpp"
#include "lipfree/simplex.hpp"
#include "lipfree/transport.hpp"

namespace lipfree {

Rational lipschitz_constant(std::span<const Rational> values, const FiniteMetricSpace& space) {
  if (values.size() != space.size())
    throw Error(ErrorCode::IndexOutOfRange, "function has " + std::to_string(values.size()) +
                                                " values on a space of " + std::to_string(space.size()) + " points");
  Rational best = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      Rational ratio = abs_value(values[i] - values[j]) / space(i, j);
      if (ratio > best) best = std::move(ratio);
    }
  }
  return best;
}

Rational lip_norm(const LipFunction& f, const FiniteMetricSpace& space) {
  return lipschitz_constant(f.values(), space);
}

FreeNormResult free_norm_lp(const FreeElement& mu, const FiniteMetricSpace& space) {
  mu.check_support(space);
  const auto& terms = mu.terms();
  const std::size_t k = terms.size();

  // Shift u_s = f(s) + dist(s, 0) so that x = 0 is feasible and the box
  // |f(s)| <= dist(s, 0) becomes 0 <= u_s <= 2 dist(s, 0).
  LinearProgram lp;
  lp.objective.reserve(k);
  Rational offset = 0;
  for (const auto& t : terms) {
    lp.objective.push_back(t.coef);
    offset += t.coef * space(t.point, 0);
  }
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<Rational> row(k);
    row[s] = 1;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(2 * space(terms[s].point, 0));
  }
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = 0; t < k; ++t) {
      if (s == t) continue;
      const std::size_t p = terms[s].point, q = terms[t].point;
      std::vector<Rational> row(k);
      row[s] = 1;
      row[t] = -1;
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(space(p, q) + space(p, 0) - space(q, 0));
    }
  }
  const LinearProgramSolution sol = solve_lp(lp);

  // McShane extension from support + base: f(p) = min_s f(s) + dist(p, s).
  std::vector<Rational> anchor(k);
  for (std::size_t s = 0; s < k; ++s) anchor[s] = sol.x[s] - space(terms[s].point, 0);
  std::vector<Rational> values(space.size());
  for (std::size_t p = 1; p < space.size(); ++p) {
    Rational best = space(p, 0);
    for (std::size_t s = 0; s < k; ++s) {
      Rational candidate = anchor[s] + space(p, terms[s].point);
      if (candidate < best) best = std::move(candidate);
    }
    values[p] = std::move(best);
  }
  return {sol.value - offset, LipFunction(std::move(values))};
}

Rational free_norm_flow(const FreeElement& mu, const FiniteMetricSpace& space) {
  mu.check_support(space);
  std::vector<std::size_t> sources, sinks;
  TransportProblem problem;
  Rational base_coef = 0;
  for (const auto& t : mu.terms()) base_coef -= t.coef;
  auto place = [&](std::size_t point, const Rational& coef) {
    if (coef > 0) {
      sources.push_back(point);
      problem.supplies.push_back(coef);
    } else if (coef < 0) {
      sinks.push_back(point);
      problem.demands.push_back(-coef);
    }
  };
  place(0, base_coef);
  for (const auto& t : mu.terms()) place(t.point, t.coef);
  if (sources.empty()) return 0;
  problem.cost.assign(sources.size(), std::vector<Rational>(sinks.size()));
  for (std::size_t i = 0; i < sources.size(); ++i)
    for (std::size_t j = 0; j < sinks.size(); ++j) problem.cost[i][j] = space(sources[i], sinks[j]);
  return solve_transport(problem).cost;
}

namespace {

void check_triple(const Rational& dx0, const Rational& dy0, const Rational& dxy) {
  if (dx0 <= 0 || dy0 <= 0 || dxy <= 0)
    throw Error(ErrorCode::InvalidTriple, "distances must be positive");
  if (dxy > dx0 + dy0 || dx0 > dy0 + dxy || dy0 > dx0 + dxy)
    throw Error(ErrorCode::InvalidTriple, "distances " + to_string(dx0) + ", " + to_string(dy0) + ", " +
                                              to_string(dxy) + " violate the triangle inequality");
}

}  // namespace

Rational two_point_norm(const Rational& a, const Rational& b, const Rational& dx0, const Rational& dy0,
                        const Rational& dxy) {
  check_triple(dx0, dy0, dxy);
  const Rational abs_a = abs_value(a), abs_b = abs_value(b);
  if (sgn(a) * sgn(b) >= 0) return dx0 * abs_a + dy0 * abs_b;
  if (abs_b <= abs_a) return dx0 * abs_a + (dxy - dx0) * abs_b;
  return (dxy - dy0) * abs_a + dy0 * abs_b;
}

FiniteMetricSpace three_point_space(const Rational& dx0, const Rational& dy0, const Rational& dxy) {
  check_triple(dx0, dy0, dxy);
  return validate_metric({{0, dx0, dy0}, {dx0, 0, dxy}, {dy0, dxy, 0}});
}

Rational pairing(const LipFunction& f, const FreeElement& mu) {
  Rational total = 0;
  for (const auto& t : mu.terms()) {
    if (t.point >= f.size())
      throw Error(ErrorCode::IndexOutOfRange, "point " + std::to_string(t.point) + " outside function domain",
                  {t.point});
    total += t.coef * f(t.point);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Ball section

namespace {

struct HalfPlane {
  Rational a, b, c;  // a u + b v <= c
};

bool upper_half(const PlanePoint& p) { return p.v > 0 || (p.v == 0 && p.u > 0); }

// Angular order around the origin starting at angle 0; the origin is an
// interior point of both polygons.
bool counterclockwise_before(const PlanePoint& p, const PlanePoint& q) {
  const bool hp = upper_half(p), hq = upper_half(q);
  if (hp != hq) return hp;
  return p.u * q.v - p.v * q.u > 0;
}

}  // namespace

Rational BallSection::support(const Rational& a, const Rational& b) const {
  Rational best = 0;
  for (const auto& p : vertices) {
    Rational value = abs_value(a * p.u + b * p.v);
    if (value > best) best = std::move(value);
  }
  return best;
}

BallSection ball_section(const Rational& dx0, const Rational& dy0, const Rational& dxy) {
  check_triple(dx0, dy0, dxy);
  const std::vector<HalfPlane> planes = {
      {1, 0, dx0}, {-1, 0, dx0}, {0, 1, dy0}, {0, -1, dy0}, {1, -1, dxy}, {-1, 1, dxy},
  };

  BallSection out;
  out.dx0 = dx0;
  out.dy0 = dy0;
  out.dxy = dxy;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      const auto& p = planes[i];
      const auto& q = planes[j];
      const Rational det = p.a * q.b - p.b * q.a;
      if (det == 0) continue;
      PlanePoint w{(p.c * q.b - p.b * q.c) / det, (p.a * q.c - p.c * q.a) / det};
      const bool feasible = std::all_of(planes.begin(), planes.end(),
                                        [&](const HalfPlane& h) { return h.a * w.u + h.b * w.v <= h.c; });
      if (feasible && std::find(out.vertices.begin(), out.vertices.end(), w) == out.vertices.end())
        out.vertices.push_back(std::move(w));
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end(), counterclockwise_before);

  // Each edge of A lies on a line n.w = c with c > 0; its polar vertex is n/c.
  const std::size_t m = out.vertices.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = out.vertices[i];
    const auto& q = out.vertices[(i + 1) % m];
    const Rational nu = q.v - p.v, nv = p.u - q.u;
    const Rational c = nu * p.u + nv * p.v;
    out.unit_ball.push_back({nu / c, nv / c});
  }
  std::sort(out.unit_ball.begin(), out.unit_ball.end(), counterclockwise_before);
  return out;
}

BallSection ball_section(const FiniteMetricSpace& space, std::size_t x, std::size_t y) {
  if (x >= space.size() || y >= space.size())
    throw Error(ErrorCode::IndexOutOfRange, "point outside the space", {x, y});
  if (x == y) throw Error(ErrorCode::DegeneratePair, "x and y coincide", {x, y});
  if (x == 0 || y == 0) throw Error(ErrorCode::DegeneratePair, "the base point spans nothing", {x, y});
  BallSection out = ball_section(space(x, 0), space(y, 0), space(x, y));
  out.x = x;
  out.y = y;
  return out;
}

namespace {

constexpr double kCanvas = 512.0;
constexpr double kPanel = 256.0;
constexpr double kReach = 100.0;  // pixels from panel centre to the farthest vertex

std::string fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

double extent(const std::vector<PlanePoint>& points) {
  double r = 0;
  for (const auto& p : points) r = std::max({r, std::abs(p.u.get_d()), std::abs(p.v.get_d())});
  return r > 0 ? r : 1;
}

void draw_panel(std::ostringstream& svg, double left, const std::vector<PlanePoint>& points, const char* title,
                const char* axis_u, const char* axis_v, const char* fill, const char* stroke) {
  const double cx = left + kPanel / 2, cy = kCanvas / 2;
  const double scale = kReach / extent(points);
  svg << "  <g>\n";
  svg << "    <text x=\"" << fixed(cx) << "\" y=\"" << fixed(cy - kPanel / 2 + 24)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  svg << "    <line x1=\"" << fixed(left + 12) << "\" y1=\"" << fixed(cy) << "\" x2=\"" << fixed(left + kPanel - 12)
      << "\" y2=\"" << fixed(cy) << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
  svg << "    <line x1=\"" << fixed(cx) << "\" y1=\"" << fixed(cy - kPanel / 2 + 36) << "\" x2=\"" << fixed(cx)
      << "\" y2=\"" << fixed(cy + kPanel / 2 - 12) << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
  svg << "    <text x=\"" << fixed(left + kPanel - 14) << "\" y=\"" << fixed(cy - 6)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << axis_u << "</text>\n";
  svg << "    <text x=\"" << fixed(cx + 6) << "\" y=\"" << fixed(cy - kPanel / 2 + 48)
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << axis_v << "</text>\n";
  svg << "    <polygon points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) svg << ' ';
    svg << fixed(cx + scale * points[i].u.get_d()) << ',' << fixed(cy - scale * points[i].v.get_d());
  }
  svg << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n";
  for (const auto& p : points) {
    svg << "    <circle cx=\"" << fixed(cx + scale * p.u.get_d()) << "\" cy=\"" << fixed(cy - scale * p.v.get_d())
        << "\" r=\"3\" fill=\"" << stroke << "\"/>\n";
  }
  svg << "  </g>\n";
}

}  // namespace

std::string ball_section_svg(const BallSection& section) {
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"#ffffff\"/>\n";
  svg << "  <text x=\"256\" y=\"40\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << "d(x,0)=" << to_string(section.dx0) << "  d(y,0)=" << to_string(section.dy0)
      << "  d(x,y)=" << to_string(section.dxy) << "</text>\n";
  draw_panel(svg, 0, section.vertices, "set A", "u", "v", "#cfe2f3", "#1f4e79");
  draw_panel(svg, kPanel, section.unit_ball, "unit ball", "a", "b", "#f4cccc", "#990000");
  svg << "</svg>\n";
  return svg.str();
}

std::string ball_section_csv(const BallSection& section) {
  std::string out = "kind,index,u,v\n";
  auto emit = [&](const char* kind, const std::vector<PlanePoint>& points) {
    for (std::size_t i = 0; i < points.size(); ++i)
      out += std::string(kind) + ',' + std::to_string(i) + ',' + to_string(points[i].u) + ',' +
             to_string(points[i].v) + '\n';
  };
  emit("A", section.vertices);
  emit("ball", section.unit_ball);
  return out;
}

NonrotundWitness nonrotund_witness(const FiniteMetricSpace& space) {
  if (space.size() < 3)
    throw Error(ErrorCode::TooFewPoints, "need at least 3 points, got " + std::to_string(space.size()));
  NonrotundWitness w;
  w.x = 1;
  w.y = 2;
  w.u = FreeElement::delta(1) / space(1, 0);
  w.v = FreeElement::delta(2) / space(2, 0);
  w.norm_u = free_norm_lp(w.u, space).norm;
  w.norm_v = free_norm_lp(w.v, space).norm;
  w.norm_sum = free_norm_lp(w.u + w.v, space).norm;
  return w;
}

}  // namespace lipfree
