// lipfree: exact norms in Lipschitz-free spaces over finite metric spaces and
// the l1 / l-infinity embedding constructions, from the command line.
//
// Results go to stdout as JSON with rationals written "p/q". Exit status is
// 0 on success, 1 when the library rejects the input (the error name is the
// first word on stderr) and 2 on malformed command lines.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lipfree/catalog.hpp"
#include "lipfree/error.hpp"
#include "lipfree/io.hpp"
#include "lipfree/norm.hpp"
#include "lipfree/plan.hpp"
#include "lipfree/radii.hpp"

using namespace lipfree;

namespace {

void print(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << body;
}

RadiiOptions radii_options(bool partial) {
  RadiiOptions options;
  options.partial = partial;
  if (const char* env = std::getenv("LIPFREE_HORIZON")) {
    try {
      const long long value = std::stoll(env);
      if (value < 2) throw std::invalid_argument("small");
      options.horizon = static_cast<std::size_t>(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, std::string("LIPFREE_HORIZON must be an integer >= 2, got '") + env + "'");
    }
  }
  return options;
}

RadiiCase radii_case(const std::string& name) {
  const auto parsed = parse_radii_case(name);
  if (!parsed) throw CLI::ValidationError("--case", "expected auto|accum|bounded|unbounded|udelta|ultra");
  return *parsed;
}

std::vector<Rational> coefficients(const std::string& text) {
  const Json doc = read_json_argument(text);
  if (!doc.is_array()) throw Error(ErrorCode::ParseError, "coefficients must be a JSON array");
  std::vector<Rational> out;
  for (const auto& v : doc) out.push_back(rational_from_json(v));
  return out;
}

Json points_json(const std::vector<PlanePoint>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back({to_string(p.u), to_string(p.v)});
  return out;
}

Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Lipschitz-free space norms and embedding constructions"};
  app.require_subcommand(1, 1);

  // norm
  std::string space_text, element_text, method = "lp";
  bool with_witness = false;
  auto* norm = app.add_subcommand("norm", "Norm of a finitely supported element");
  norm->add_option("--space", space_text, "Space shorthand, e.g. uniform:1:5 or file:space.json")->required();
  norm->add_option("--element", element_text, "JSON [{\"point\": i, \"coef\": \"p/q\"}] or a file")->required();
  norm->add_option("--method", method, "lp, flow or both")->check(CLI::IsMember({"lp", "flow", "both"}));
  norm->add_flag("--witness", with_witness, "Also print a 1-Lipschitz function attaining the norm");

  // two-point
  std::string a_text, b_text, dx0_text, dy0_text, dxy_text;
  auto* two_point = app.add_subcommand("two-point", "Closed-form norm of a delta_x + b delta_y");
  two_point->add_option("--a", a_text)->required();
  two_point->add_option("--b", b_text)->required();
  two_point->add_option("--dx0", dx0_text, "dist(x, 0)")->required();
  two_point->add_option("--dy0", dy0_text, "dist(y, 0)")->required();
  two_point->add_option("--dxy", dxy_text, "dist(x, y)")->required();

  // ball-section
  std::string section_space, svg_path, csv_path;
  std::size_t x_point = 1, y_point = 2;
  auto* section = app.add_subcommand("ball-section", "Set A and unit-ball section of span{delta_x, delta_y}");
  auto* section_space_opt = section->add_option("--space", section_space, "Space shorthand");
  section->add_option("--x", x_point, "First point (default 1)");
  section->add_option("--y", y_point, "Second point (default 2)");
  auto* sdx0 = section->add_option("--dx0", dx0_text);
  auto* sdy0 = section->add_option("--dy0", dy0_text);
  auto* sdxy = section->add_option("--dxy", dxy_text);
  section_space_opt->excludes(sdx0)->excludes(sdy0)->excludes(sdxy);
  sdx0->needs(sdy0)->needs(sdxy);
  section->add_option("--svg", svg_path, "Write the figure here");
  section->add_option("--csv", csv_path, "Write the vertex lists here");

  // construct
  std::string family_text, case_name = "auto", emit_path;
  std::size_t count = 0;
  bool partial = false;
  auto* construct = app.add_subcommand("construct", "Choose points and radii for an embedding plan");
  construct->add_option("--family", family_text, "Family shorthand, e.g. intline or dendro:3:4")->required();
  construct->add_option("--case", case_name, "auto|accum|bounded|unbounded|udelta|ultra");
  construct->add_option("--N", count, "Number of plan points")->required()->check(CLI::PositiveNumber);
  construct->add_option("--emit", emit_path, "Write the plan JSON here");
  construct->add_flag("--partial", partial, "Accept a shorter plan when the horizon runs out");

  // verify
  std::string plan_path, coeffs_text;
  bool with_projection = false;
  auto* verify = app.add_subcommand("verify", "Check a plan and the embedding it induces");
  auto* plan_opt = verify->add_option("--plan", plan_path, "Plan JSON file");
  auto* verify_family = verify->add_option("--family", family_text, "Build the plan from this family instead");
  verify->add_option("--case", case_name, "auto|accum|bounded|unbounded|udelta|ultra");
  verify->add_option("--N", count, "Number of plan points to use")->check(CLI::PositiveNumber);
  verify->add_option("--coeffs", coeffs_text, "JSON array of coefficients (default [1])");
  verify->add_flag("--projection", with_projection, "Also check the norm-one projection");
  verify->add_flag("--partial", partial, "Accept a shorter plan when the horizon runs out");
  plan_opt->excludes(verify_family);

  // admissibility
  std::string ordering_text;
  auto* admissibility = app.add_subcommand("admissibility", "Best worst-pair ratio tau over admissible radii");
  admissibility->add_option("--family", family_text)->required();
  admissibility->add_option("--N", count, "Prefix length (identity ordering)")->check(CLI::PositiveNumber);
  admissibility->add_option("--ordering", ordering_text, "JSON array of family indices instead of 1..N");

  // spaces
  auto* spaces = app.add_subcommand("spaces", "Catalog of metric families");
  spaces->add_subcommand("list", "List family shorthands")->require_subcommand(0);
  spaces->require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*norm) {
      const FiniteMetricSpace space = parse_space(space_text);
      const FreeElement mu = element_from_json(read_json_argument(element_text));
      Json out;
      if (method == "flow") {
        out["norm"] = to_string(free_norm_flow(mu, space));
      } else {
        const FreeNormResult result = free_norm_lp(mu, space);
        out["norm"] = to_string(result.norm);
        if (method == "both") out["flow_norm"] = to_string(free_norm_flow(mu, space));
        if (with_witness) out["witness"] = rationals_json(result.witness.values());
      }
      print(out);
    } else if (*two_point) {
      const Rational value = two_point_norm(parse_rational(a_text), parse_rational(b_text), parse_rational(dx0_text),
                                            parse_rational(dy0_text), parse_rational(dxy_text));
      print(Json{{"norm", to_string(value)}});
    } else if (*section) {
      BallSection result;
      if (!section_space.empty()) {
        result = ball_section(parse_space(section_space), x_point, y_point);
      } else if (!dx0_text.empty()) {
        result = ball_section(parse_rational(dx0_text), parse_rational(dy0_text), parse_rational(dxy_text));
      } else {
        throw CLI::RequiredError("--space or --dx0/--dy0/--dxy");
      }
      if (!svg_path.empty()) write_file(svg_path, ball_section_svg(result));
      if (!csv_path.empty()) write_file(csv_path, ball_section_csv(result));
      print(Json{{"dx0", to_string(result.dx0)},
                 {"dy0", to_string(result.dy0)},
                 {"dxy", to_string(result.dxy)},
                 {"vertices", points_json(result.vertices)},
                 {"unit_ball", points_json(result.unit_ball)}});
    } else if (*construct) {
      const MetricFamily family = parse_family(family_text);
      const EmbeddingPlan plan = construct_plan(family, radii_case(case_name), count, radii_options(partial));
      const PlanReport report = check_plan(plan);
      Json out = plan_to_json(plan);
      out["q"] = rationals_json(report.q);
      if (!emit_path.empty()) write_file(emit_path, plan_to_json(plan).dump(2) + "\n");
      print(out);
    } else if (*verify) {
      std::optional<EmbeddingPlan> plan;
      if (!plan_path.empty()) {
        plan = plan_from_json(read_json_argument(plan_path));
        if (count > 0) plan = plan->prefix(count);
      } else if (!family_text.empty()) {
        if (count == 0) throw CLI::RequiredError("--N");
        plan = construct_plan(parse_family(family_text), radii_case(case_name), count, radii_options(partial));
      } else {
        throw CLI::RequiredError("--plan or --family");
      }
      const std::vector<Rational> a = coeffs_text.empty() ? std::vector<Rational>{1} : coefficients(coeffs_text);
      const PlanReport report = check_plan(*plan);
      Json out;
      if (report.exact) {
        out["l1_norm"] = to_string(verify_l1_isometry(*plan, a, NormMethod::Transport));
        out["exact"] = true;
        if (with_projection) out["projection"] = verify_projection(*plan).passed();
      } else {
        const LinftyReport linfty = verify_linfty_isometry(*plan, a);
        out["lip"] = to_string(linfty.lip);
        out["lower"] = to_string(linfty.lower);
        out["upper"] = to_string(linfty.upper);
        out["exact"] = false;
      }
      print(out);
    } else if (*admissibility) {
      const MetricFamily family = parse_family(family_text);
      std::vector<std::size_t> ordering;
      if (!ordering_text.empty()) {
        const Json doc = read_json_argument(ordering_text);
        if (!doc.is_array()) throw Error(ErrorCode::ParseError, "ordering must be a JSON array");
        for (const auto& v : doc) {
          if (!v.is_number_unsigned()) throw Error(ErrorCode::ParseError, "ordering entries must be indices");
          ordering.push_back(v.get<std::size_t>());
        }
      } else {
        if (count == 0) throw CLI::RequiredError("--N or --ordering");
        for (std::size_t i = 1; i <= count; ++i) ordering.push_back(i);
      }
      const AdmissibilityResult result = admissibility_lp(family, ordering);
      Json out;
      out["family"] = family.id();
      out["N"] = ordering.size();
      if (result.tau) {
        out["tau"] = to_string(*result.tau);
        out["r"] = rationals_json(result.r);
      } else {
        out["tau"] = nullptr;
        out["status"] = "NoPairSlots";
      }
      print(out);
    } else if (*spaces) {
      Json out = Json::array();
      for (const auto& info : family_catalog())
        out.push_back({{"id", info.id}, {"params", info.params}, {"exercises", info.exercises}});
      print(out);
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
