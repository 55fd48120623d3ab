#include "lipfree/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "lipfree/error.hpp"

namespace lipfree {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorCode::ParseError, "expected a non-negative integer for " + std::string(what) + ", got '" +
                                           std::string(text) + "'");
  return value;
}

Json parse_json_text(const std::string& text, std::string_view origin) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(origin) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return parse_rational(std::to_string(value.get<std::uint64_t>()));
    return parse_rational(std::to_string(value.get<std::int64_t>()));
  }
  if (value.is_number_float()) return rational_from_double(value.get<double>());
  throw Error(ErrorCode::ParseError, "expected a number or rational string, got " + value.dump());
}

Json rational_to_json(const Rational& value) { return to_string(value); }

FiniteMetricSpace space_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("dist") || !doc["dist"].is_array())
    throw Error(ErrorCode::ParseError, "space must be an object with a \"dist\" matrix");
  Matrix dist;
  for (const auto& row : doc["dist"]) {
    if (!row.is_array()) throw Error(ErrorCode::ParseError, "\"dist\" rows must be arrays");
    std::vector<Rational> values;
    for (const auto& entry : row) values.push_back(rational_from_json(entry));
    dist.push_back(std::move(values));
  }
  if (doc.contains("n")) {
    if (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() != dist.size())
      throw Error(ErrorCode::NotSquare, "\"n\" does not match the number of rows");
  }
  return validate_metric(dist);
}

FiniteMetricSpace load_space_file(const std::string& path) {
  return space_from_json(parse_json_text(read_file(path), path));
}

FreeElement element_from_json(const Json& doc) {
  if (!doc.is_array()) throw Error(ErrorCode::ParseError, "element must be an array of {point, coef}");
  std::vector<FreeElement::Term> terms;
  for (const auto& term : doc) {
    if (!term.is_object() || !term.contains("point") || !term.contains("coef") ||
        !term["point"].is_number_unsigned())
      throw Error(ErrorCode::ParseError, "bad element term " + term.dump());
    terms.push_back({term["point"].get<std::size_t>(), rational_from_json(term["coef"])});
  }
  return FreeElement(std::move(terms));
}

Json element_to_json(const FreeElement& element) {
  Json out = Json::array();
  for (const auto& t : element.terms()) out.push_back({{"point", t.point}, {"coef", to_string(t.coef)}});
  return out;
}

MetricFamily parse_family(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view name = parts[0];
  const auto expect = [&](std::size_t count) {
    if (parts.size() != count)
      throw Error(ErrorCode::ParseError, "family '" + std::string(text) + "' expects " +
                                             std::to_string(count - 1) + " parameter(s)");
  };
  if (name == "file") {
    if (parts.size() < 2) throw Error(ErrorCode::ParseError, "file: needs a path");
    const std::string path(text.substr(5));
    return family_from_space(load_space_file(path), "file:" + path);
  }
  FamilyParams params;
  if (name == "uniform") {
    expect(2);
    params.d = parse_rational(parts[1]);
    return make_family(FamilyId::Uniform, params);
  }
  if (name == "convline") return expect(1), make_family(FamilyId::ConvergentLine);
  if (name == "intline") return expect(1), make_family(FamilyId::IntegerLine);
  if (name == "geomline") return expect(1), make_family(FamilyId::GeometricLine);
  if (name == "dendro") {
    expect(3);
    params.seed = parse_unsigned(parts[1], "seed");
    params.depth = parse_unsigned(parts[2], "depth");
    return make_family(FamilyId::DendrogramUltrametric, params);
  }
  if (name == "remark") {
    expect(2);
    const auto k = parse_unsigned(parts[1], "remark number");
    if (k < 1 || k > 6) throw Error(ErrorCode::InvalidFamilyParameters, "remark families are numbered 1..6");
    return make_family(static_cast<FamilyId>(static_cast<int>(FamilyId::Remark1) + static_cast<int>(k) - 1));
  }
  throw Error(ErrorCode::ParseError, "unknown family '" + std::string(name) + "'");
}

FiniteMetricSpace parse_space(std::string_view text) {
  if (text.starts_with("file:")) return load_space_file(std::string(text.substr(5)));
  const std::size_t cut = text.rfind(':');
  if (cut == std::string_view::npos)
    throw Error(ErrorCode::ParseError, "space '" + std::string(text) + "' needs a trailing :<N>");
  const auto count = parse_unsigned(text.substr(cut + 1), "point count");
  return truncate(parse_family(text.substr(0, cut)), count);
}

Json plan_to_json(const EmbeddingPlan& plan) {
  Json r = Json::array();
  for (const auto& value : plan.r) r.push_back(to_string(value));
  return Json{{"family", plan.family.id()},
              {"x_idx", plan.x_idx},
              {"r", r},
              {"exact", plan.exact},
              {"construction", plan.construction}};
}

EmbeddingPlan plan_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("family") || !doc.contains("x_idx") || !doc.contains("r"))
    throw Error(ErrorCode::ParseError, "plan needs \"family\", \"x_idx\" and \"r\"");
  std::vector<std::size_t> x_idx;
  for (const auto& v : doc["x_idx"]) {
    if (!v.is_number_unsigned()) throw Error(ErrorCode::ParseError, "x_idx entries must be positive integers");
    x_idx.push_back(v.get<std::size_t>());
  }
  std::vector<Rational> r;
  for (const auto& v : doc["r"]) r.push_back(rational_from_json(v));
  const std::string construction = doc.value("construction", std::string("manual"));
  EmbeddingPlan plan = make_plan(parse_family(doc["family"].get<std::string>()), std::move(x_idx), std::move(r),
                                 construction);
  plan.exact = doc.value("exact", false);
  return plan;
}

Json read_json_argument(const std::string& text) {
  std::error_code ec;
  if (!text.empty() && text.front() != '[' && text.front() != '{' && std::filesystem::is_regular_file(text, ec))
    return parse_json_text(read_file(text), text);
  return parse_json_text(text, "argument");
}

}  // namespace lipfree
