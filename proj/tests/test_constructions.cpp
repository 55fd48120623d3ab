#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lipfree/catalog.hpp"
#include "lipfree/norm.hpp"
#include "lipfree/radii.hpp"
#include "oracles.hpp"
#include "test_families.hpp"

using namespace lipfree;
using testing::code_of;
using testing::q;

namespace {

MetricFamily uniform() { return make_family(FamilyId::Uniform); }

std::vector<Rational> random_coeffs(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(oracle::random_rational(rng, 9, 7));
  return a;
}

Rational l1(const std::vector<Rational>& a) {
  Rational s = 0;
  for (const auto& x : a) s += abs_value(x);
  return s;
}

Rational max_abs(const std::vector<Rational>& a) {
  Rational m = 0;
  for (const auto& x : a) m = max_of(m, abs_value(x));
  return m;
}

std::vector<std::size_t> iota(std::size_t from, std::size_t to) {
  std::vector<std::size_t> out;
  for (std::size_t i = from; i <= to; ++i) out.push_back(i);
  return out;
}

std::vector<Rational> halves(std::size_t n) { return std::vector<Rational>(n, q("1/2")); }

}  // namespace

TEST_CASE("check_plan on uniform radii") {
  const auto plan = make_plan(uniform(), iota(1, 7), halves(7));
  const auto report = check_plan(plan);
  CHECK(report.points == 7);
  CHECK(report.q == std::vector<Rational>{1, 1, 1});
  CHECK(report.exact);
}

TEST_CASE("check_plan on an additive star with r_n = rho(x_n, x_1)") {
  const auto family = testfam::star();
  std::vector<Rational> r;
  for (std::size_t n = 1; n <= 9; ++n) r.push_back(family.distance(n, 1));
  const auto report = check_plan(make_plan(family, iota(1, 9), r));
  CHECK(report.exact);
  CHECK(report.q == std::vector<Rational>(4, 1));
}

TEST_CASE("check_plan reports the first separation violation") {
  try {
    check_plan(make_plan(uniform(), {1, 2, 3}, {1, 1, 0}));
    FAIL("expected SeparationViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SeparationViolation);
    CHECK(e.witness() == std::vector<std::size_t>{1, 2});
  }
  CHECK(code_of([] { check_plan(make_plan(uniform(), {1, 2}, {q("-1/2"), 0})); }) ==
        ErrorCode::SeparationViolation);
  // Only the requested prefix is checked.
  CHECK(check_plan(make_plan(uniform(), {1, 2, 3}, {q("1/2"), q("1/2"), 2}), 2).points == 2);
}

TEST_CASE("make_plan validates shape") {
  CHECK(code_of([] { make_plan(uniform(), {1, 2}, {0}); }) == ErrorCode::ParseError);
  CHECK(code_of([] { make_plan(uniform(), {2, 1}, {0, 0}); }) == ErrorCode::ParseError);
  CHECK(code_of([] { make_plan(uniform(), {0, 1}, {0, 0}); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("bumps") {
  const auto plan = make_plan(uniform(), iota(1, 5), halves(5));
  CHECK(bump_eval(plan, 3, 3) == q("1/2"));
  CHECK(bump_eval(plan, 3, 4) == 0);
  CHECK(bump_eval(plan, 3, 100) == 0);
  const auto line = make_plan(make_family(FamilyId::IntegerLine), {1, 5}, {0, 3});
  CHECK(bump_eval(line, 2, 5) == 3);
  CHECK(bump_eval(line, 2, 4) == 2);
  CHECK(bump_eval(line, 2, 7) == 1);
  CHECK(bump_eval(line, 2, 8) == 0);
  CHECK(bump_eval(line, 2, 1) == 0);
}

TEST_CASE("block functions and linear combinations") {
  const auto plan = make_plan(uniform(), {1, 2, 3, 4, 5, 6, 7}, {0, q("1/2"), q("1/2"), q("1/3"), q("2/3"), q("1/4"), q("3/4")});
  const IndexPartition two{2};
  CHECK(two.block_of(1) == 1);
  CHECK(two.block_of(2) == 2);
  CHECK(two.block_of(3) == 1);
  CHECK(two.members(1, 3) == std::vector<std::size_t>{1, 3});
  // x_2n sits at family index 2n here.
  CHECK(f_k_eval(plan, two, 1, 2) == q("1/2"));
  CHECK(f_k_eval(plan, two, 1, 3) == q("-1/2"));
  CHECK(f_k_eval(plan, two, 1, 6) == q("1/4"));
  CHECK(f_k_eval(plan, two, 2, 4) == q("1/3"));
  CHECK(f_k_eval(plan, two, 2, 2) == 0);
  const std::vector<Rational> a = {3, -2};
  CHECK(lin_comb_eval(plan, two, a, 4) == q("-2/3"));
  CHECK(lin_comb_eval(plan, two, a, 7) == q("-9/4"));
  CHECK(lin_comb_eval(plan, two, a, 1) == 0);
}

TEST_CASE("l-infinity check on an exact plan reaches max |a_k|") {
  const auto plan = construct_plan(uniform(), RadiiCase::Ultrametric, 13);
  const std::vector<Rational> a = {1, -2, 3};
  const auto report = verify_linfty_isometry(plan, a);
  CHECK(report.upper == 3);
  CHECK(report.lower == 3);
  CHECK(report.lip == 3);
  CHECK(verify_linfty_isometry(plan, a, 0, Probe::AmbientPrefix).lip == 3);
}

TEST_CASE("l-infinity check on the integer line is bracketed and grows with N") {
  const auto plan = radii_unbounded(make_family(FamilyId::IntegerLine), 7);
  Rational previous = 0;
  for (std::size_t count : {3u, 5u, 7u}) {
    const auto report = verify_linfty_isometry(plan, {1}, count);
    CHECK(report.lower <= report.lip);
    CHECK(report.lip <= report.upper);
    CHECK(report.lip >= previous);
    previous = report.lip;
  }
  CHECK(verify_linfty_isometry(plan, {1}).lip == q("7011/7423"));
}

TEST_CASE("l1 basis and exact isometry") {
  const auto plan = construct_plan(uniform(), RadiiCase::Ultrametric, 21);
  const auto e1 = l1_basis(plan, 1);
  CHECK(e1 == FreeElement::delta(1) - FreeElement::delta(2));
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_coeffs(rng, 1 + rng() % 10);
    CHECK(verify_l1_isometry(plan, a, NormMethod::LinearProgram) == l1(a));
    CHECK(verify_l1_isometry(plan, a, NormMethod::Transport) == l1(a));
  }
  CHECK(code_of([&] { verify_l1_isometry(plan, std::vector<Rational>(11, 1)); }) == ErrorCode::IndexOutOfRange);
  const auto inexact = radii_unbounded(make_family(FamilyId::IntegerLine), 5);
  CHECK(code_of([&] { verify_l1_isometry(inexact, {1}); }) == ErrorCode::ExactnessRequired);
}

TEST_CASE("projection on exact plans") {
  const auto plan = construct_plan(uniform(), RadiiCase::Ultrametric, 9);
  CHECK(projection_coeffs(plan, 2) == std::vector<Rational>{q("1/2"), 0, 0, 0});
  CHECK(projection_coeffs(plan, 3) == std::vector<Rational>{q("-1/2"), 0, 0, 0});
  const auto report = verify_projection(plan);
  CHECK(report.passed());
  CHECK(report.worst_ratio <= 1);
  CHECK(report.pairs_checked == 36);
  CHECK(verify_projection(radii_accumulation(make_family(FamilyId::ConvergentLine), 9)).passed());
  const auto inexact = radii_unbounded(make_family(FamilyId::IntegerLine), 5);
  CHECK(code_of([&] { verify_projection(inexact); }) == ErrorCode::ExactnessRequired);
}

TEST_CASE("overlapping bumps are rejected before any verification") {
  const auto plan = make_plan(make_family(FamilyId::IntegerLine), {1, 3, 5, 6, 8}, {0, 1, 1, 1, 2});
  CHECK(code_of([&] { check_plan(plan); }) == ErrorCode::SeparationViolation);
  CHECK(code_of([&] { verify_linfty_isometry(plan, {1}); }) == ErrorCode::SeparationViolation);
}

TEST_CASE("accumulation: additive star takes every point") {
  const auto plan = radii_accumulation(testfam::star(), 8);
  CHECK(plan.construction == "accumulation/additive");
  CHECK(plan.x_idx == iota(1, 8));
  CHECK(plan.r[0] == 0);
  CHECK(plan.r[3] == q("1/16"));
  CHECK(check_plan(plan).exact);
}

TEST_CASE("accumulation: strict case on the convergent line") {
  const auto plan = radii_accumulation(make_family(FamilyId::ConvergentLine), 7);
  CHECK(plan.construction == "accumulation/strict");
  CHECK(plan.x_idx == std::vector<std::size_t>{1, 2, 3, 5, 6, 11, 12});
  CHECK(plan.r == std::vector<Rational>{0, q("1/2"), 0, q("1/20"), 0, q("1/110"), 0});
  CHECK(check_plan(plan).exact);
  CHECK(code_of([] { radii_accumulation(make_family(FamilyId::IntegerLine), 5); }) == ErrorCode::NotConvergent);
}

TEST_CASE("unbounded: integer line plan and ratio bound") {
  const auto plan = radii_unbounded(make_family(FamilyId::IntegerLine), 7);
  CHECK(plan.x_idx == std::vector<std::size_t>{1, 3, 10, 41, 206, 1237, 8660});
  CHECK(plan.r == std::vector<Rational>{1, 1, 4, 21, 124, 825, 6186});
  const auto report = check_plan(plan);
  REQUIRE(report.q.size() == 3);
  CHECK(report.q[0] == q("5/7"));
  for (std::size_t n = 1; n <= report.q.size(); ++n) CHECK(report.q[n - 1] > Rational(1) - fraction(1, 2 * n));
  CHECK(code_of([] { radii_unbounded(make_family(FamilyId::IntegerLine), 9); }) == ErrorCode::HorizonExhausted);
  RadiiOptions partial;
  partial.partial = true;
  CHECK(radii_unbounded(make_family(FamilyId::IntegerLine), 9, partial).size() == 7);
}

TEST_CASE("unbounded: geometric line reaches twenty pairs") {
  const auto plan = radii_unbounded(make_family(FamilyId::GeometricLine), 41);
  const auto report = check_plan(plan);
  REQUIRE(report.q.size() == 20);
  for (std::size_t n = 1; n <= 20; ++n) CHECK(report.q[n - 1] > Rational(1) - fraction(1, 2 * n));
}

TEST_CASE("unbounded delta: marked pairs of the integer line") {
  const auto plan = radii_unbounded_delta(make_family(FamilyId::IntegerLine), 7);
  CHECK(plan.x_idx == std::vector<std::size_t>{1, 2, 3, 6, 7, 14, 15});
  // Gap of (p, p + 1) seen from x_1 = 1 is p - 1, so r = (p - 1 - gap, p - gap).
  CHECK(plan.r == std::vector<Rational>{0, 0, 1, 0, 1, 0, 1});
  CHECK(check_plan(plan).exact);
  CHECK(code_of([] { radii_unbounded_delta(make_family(FamilyId::Remark1), 5); }) == ErrorCode::MetadataRequired);
}

TEST_CASE("unbounded ultrametric: max-index family, two routes to the same plan") {
  const std::vector<std::size_t> x = {1, 2, 3, 12, 13, 52, 53};
  const std::vector<Rational> r = {0, 1, 2, 6, 7, 26, 27};
  const auto ultra = radii_ultrametric(testfam::max_index(), 7);
  CHECK(ultra.construction == "ultrametric/unbounded");
  CHECK(ultra.x_idx == x);
  CHECK(ultra.r == r);
  const auto delta = radii_unbounded_delta(testfam::max_index(), 7);
  CHECK(delta.x_idx == x);
  CHECK(delta.r == r);
  CHECK(verify_l1_isometry(ultra, {3, q("-1/2"), 2}) == q("11/2"));
}

TEST_CASE("bounded separated: Remark families with declared limits") {
  for (auto id : {FamilyId::Remark2, FamilyId::Remark3, FamilyId::Remark4, FamilyId::Remark5, FamilyId::Remark6}) {
    const auto plan = radii_bounded_separated(make_family(id), 9);
    CAPTURE(plan.family.id());
    CHECK_FALSE(plan.approximate_limits);
    const auto report = check_plan(plan);
    REQUIRE(report.q.size() == 4);
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(report.q[n - 1] > bounded_ratio_bound(n));
      CHECK(report.q[n - 1] < 1);
    }
  }
  CHECK(radii_bounded_separated(make_family(FamilyId::Remark5), 4).x_idx == std::vector<std::size_t>{1, 3, 5, 7});
}

TEST_CASE("bounded separated: radii formula") {
  const auto plan = radii_bounded_separated(make_family(FamilyId::Uniform), 5);
  CHECK(plan.x_idx == iota(1, 5));
  CHECK(plan.r == std::vector<Rational>{0, q("1/4"), q("1/3"), q("3/8"), q("2/5")});
}

TEST_CASE("bounded separated: limits estimated from the tail") {
  RadiiOptions options;
  options.horizon = 200;
  const auto plan = radii_bounded_separated(testfam::undeclared_uniform(), 5, options);
  CHECK(plan.approximate_limits);
  CHECK(plan.r.back() == q("4/5"));
  CHECK(code_of([&] { radii_bounded_separated(testfam::oscillating(), 5, options); }) ==
        ErrorCode::MetadataRequired);
}

TEST_CASE("ultrametric: uniform space gives the equidistant plan") {
  const auto plan = radii_ultrametric(uniform(), 9);
  CHECK(plan.construction == "ultrametric/equidistant");
  CHECK(plan.x_idx == iota(1, 9));
  CHECK(plan.r == halves(9));
  CHECK(plan.exact);
  const auto scaled = radii_ultrametric(make_family(FamilyId::Uniform, {.d = 3}), 5);
  CHECK(scaled.r == std::vector<Rational>(5, q("3/2")));
}

TEST_CASE("ultrametric: rising rows") {
  const auto plan = radii_ultrametric(testfam::rising(), 7);
  CHECK(plan.construction == "ultrametric/rising-rows");
  CHECK(plan.x_idx == std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 64});
  CHECK(plan.r[1] == q("7/8"));
  CHECK(plan.r[2] == q("7/8"));
  CHECK(check_plan(plan).exact);
}

TEST_CASE("ultrametric: falling limits are thinned geometrically") {
  RadiiOptions options;
  options.horizon = 300;
  const auto plan = radii_ultrametric(testfam::falling(), 5, options);
  CHECK(plan.construction == "ultrametric/decreasing-limits");
  // d_k = 1 + 1/k and d = 1, so the thinning keeps k' >= 4k.
  CHECK(plan.x_idx == std::vector<std::size_t>{1, 4, 16, 64, 256});
  CHECK(plan.r[1] == q("23/32"));
  CHECK(plan.r[2] == q("17/32"));
  CHECK(check_plan(plan).exact);
  CHECK(verify_projection(plan).passed());
}

TEST_CASE("ultrametric: rejections") {
  try {
    radii_ultrametric(make_family(FamilyId::ConvergentLine), 5);
    FAIL("expected NotUltrametric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUltrametric);
    CHECK(e.witness() == std::vector<std::size_t>{1, 2, 3});
  }
  FamilySpec spec;
  spec.id = "test:unlabelled";
  spec.oracle = [](std::size_t, std::size_t) -> Rational { return 1; };
  spec.traits.bounded = true;
  CHECK(code_of([&] { radii_ultrametric(MetricFamily(spec), 5); }) == ErrorCode::MetadataRequired);
}

TEST_CASE("ultrametric: dendrograms give exact plans") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto family = make_family(FamilyId::DendrogramUltrametric, {.seed = seed, .depth = 4});
    const auto plan = radii_ultrametric(family, 11);
    CAPTURE(seed);
    CHECK(check_plan(plan).exact);
    CHECK(verify_l1_isometry(plan, {1, -1, 2, q("1/3"), -5}, NormMethod::Transport) == q("28/3"));
    CHECK(verify_projection(plan).passed());
  }
}

TEST_CASE("case selection") {
  CHECK(resolve_case(make_family(FamilyId::ConvergentLine), RadiiCase::Auto) == RadiiCase::Accumulation);
  CHECK(resolve_case(uniform(), RadiiCase::Auto) == RadiiCase::Ultrametric);
  CHECK(resolve_case(make_family(FamilyId::IntegerLine), RadiiCase::Auto) == RadiiCase::UnboundedDelta);
  CHECK(resolve_case(make_family(FamilyId::Remark1), RadiiCase::Auto) == RadiiCase::Unbounded);
  CHECK(resolve_case(make_family(FamilyId::Remark3), RadiiCase::Auto) == RadiiCase::BoundedSeparated);
  CHECK(resolve_case(uniform(), RadiiCase::Unbounded) == RadiiCase::Unbounded);
  CHECK(parse_radii_case("udelta") == RadiiCase::UnboundedDelta);
  CHECK_FALSE(parse_radii_case("delta"));
}

TEST_CASE("admissibility program") {
  const auto six = admissibility_lp(uniform(), iota(1, 6));
  REQUIRE(six.tau);
  CHECK(*six.tau == 1);
  CHECK(check_plan(make_plan(uniform(), iota(1, 6), six.r)).exact);

  const auto remark2 = admissibility_lp(make_family(FamilyId::Remark2), iota(1, 6));
  REQUIRE(remark2.tau);
  CHECK(*remark2.tau < 1);
  CHECK(*remark2.tau > 0);

  // With one pair slot the split r_1 = 0, r_2 + r_3 = rho(x_2, x_3) is
  // always admissible by the triangle inequality.
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto space = validate_metric(oracle::random_metric(rng, 3));
    CHECK(*admissibility_lp(family_from_space(space, "tri"), {1, 2, 3}).tau == 1);
  }

  CHECK_FALSE(admissibility_lp(uniform(), {1, 2}).tau);
  CHECK(code_of([] { admissibility_lp(uniform(), {1, 2, 2}); }) == ErrorCode::ParseError);
  CHECK(code_of([] { admissibility_lp(make_family(FamilyId::DendrogramUltrametric), {1, 100000}); }) ==
        ErrorCode::IndexOutOfRange);
}

TEST_CASE("admissibility reorderings") {
  // Swapping x_2 and x_1 on the integer line only moves the base.
  const auto line = make_family(FamilyId::IntegerLine);
  CHECK(*admissibility_lp(line, {2, 1, 3}).tau == 1);
  const auto remark = admissibility_lp(make_family(FamilyId::Remark2), {1, 3, 2, 5, 4});
  REQUIRE(remark.tau);
  CHECK(*remark.tau <= 1);
}
