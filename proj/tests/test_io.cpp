#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "lipfree/catalog.hpp"
#include "lipfree/io.hpp"
#include "lipfree/radii.hpp"

using namespace lipfree;
using testing::code_of;
using testing::q;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("rationals in JSON") {
  CHECK(rational_from_json(Json("3/6")) == q("1/2"));
  CHECK(rational_from_json(Json(4)) == 4);
  CHECK(rational_from_json(Json(-2)) == -2);
  CHECK(rational_from_json(Json(0.25)) == q("1/4"));
  CHECK(rational_to_json(q("-7/3")) == Json("-7/3"));
  CHECK(code_of([] { rational_from_json(Json(true)); }) == ErrorCode::ParseError);
  CHECK(code_of([] { rational_from_json(Json("x")); }) == ErrorCode::ParseError);
}

TEST_CASE("spaces from JSON") {
  const auto space = space_from_json(Json::parse(R"({"n": 3, "dist": [[0,2,3],[2,0,"4"],[3,4,0]]})"));
  CHECK(space.size() == 3);
  CHECK(space(1, 2) == 4);
  CHECK(code_of([] { space_from_json(Json::parse(R"({"n": 2, "dist": [[0,1,1],[1,0,1],[1,1,0]]})")); }) ==
        ErrorCode::NotSquare);
  CHECK(code_of([] { space_from_json(Json::parse(R"({"dist": [[0,1,3],[1,0,1],[3,1,0]]})")); }) ==
        ErrorCode::TriangleViolation);
  CHECK(code_of([] { space_from_json(Json::parse(R"([1, 2])")); }) == ErrorCode::ParseError);
  const auto path = write_temp("lipfree_io_space.json", R"({"dist": [[0,1],[1,0]]})");
  CHECK(load_space_file(path).size() == 2);
  CHECK(parse_space("file:" + path).size() == 2);
  CHECK(code_of([] { load_space_file("/nonexistent/space.json"); }) == ErrorCode::ParseError);
}

TEST_CASE("elements round trip") {
  const auto mu = element_from_json(Json::parse(R"([{"point": 3, "coef": "1/2"}, {"point": 1, "coef": -1},
                                                    {"point": 3, "coef": "1/2"}, {"point": 0, "coef": 5}])"));
  CHECK(mu.terms().size() == 2);
  CHECK(mu.coefficient(3) == 1);
  CHECK(element_to_json(mu).dump() == R"([{"point":1,"coef":"-1"},{"point":3,"coef":"1"}])");
  CHECK(element_from_json(element_to_json(mu)) == mu);
  CHECK(code_of([] { element_from_json(Json::parse(R"([{"point": -1, "coef": 1}])")); }) == ErrorCode::ParseError);
}

TEST_CASE("family and space shorthands") {
  CHECK(parse_family("uniform:3/2").distance(1, 2) == q("3/2"));
  CHECK(parse_family("intline").distance(2, 9) == 7);
  CHECK(parse_family("remark:5").id() == "remark:5");
  CHECK(parse_family("dendro:3:4").id() == "dendro:3:4");
  CHECK(parse_space("uniform:1:5").size() == 5);
  CHECK(parse_space("remark:2:8").size() == 8);
  CHECK(parse_space("intline:10")(0, 9) == 9);
  CHECK(code_of([] { parse_family("remark:7"); }) == ErrorCode::InvalidFamilyParameters);
  CHECK(code_of([] { parse_family("uniform"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_family("uniform:0"); }) == ErrorCode::InvalidFamilyParameters);
  CHECK(code_of([] { parse_family("circle"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_space("intline"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_space("intline:x"); }) == ErrorCode::ParseError);
}

TEST_CASE("plans round trip through JSON") {
  for (const char* family : {"uniform:1", "dendro:2:4", "intline", "convline"}) {
    const auto plan = construct_plan(parse_family(family), RadiiCase::Auto, 7);
    const Json doc = plan_to_json(plan);
    CHECK(doc.begin().key() == "family");
    const auto back = plan_from_json(doc);
    CHECK(back.family.id() == plan.family.id());
    CHECK(back.x_idx == plan.x_idx);
    CHECK(back.r == plan.r);
    CHECK(back.exact == plan.exact);
    CHECK(back.construction == plan.construction);
    CHECK(plan_to_json(back).dump() == doc.dump());
  }
  CHECK(code_of([] { plan_from_json(Json::parse(R"({"family": "intline", "x_idx": [1]})")); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { plan_from_json(Json::parse(R"({"family": "intline", "x_idx": [3, 2], "r": [0, 0]})")); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("JSON arguments are inline text or files") {
  CHECK(read_json_argument("[1, 2]").size() == 2);
  const auto path = write_temp("lipfree_io_coeffs.json", "[\"1/2\", 3]");
  CHECK(read_json_argument(path)[0] == "1/2");
  CHECK(code_of([] { read_json_argument("[1,"); }) == ErrorCode::ParseError);
}
