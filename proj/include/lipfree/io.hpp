#pragma once

#include <json.hpp>

#include <string>
#include <string_view>

#include "lipfree/catalog.hpp"
#include "lipfree/plan.hpp"

namespace lipfree {

using Json = nlohmann::ordered_json;

/// A JSON number or string ("p/q", integer, decimal) as an exact rational.
Rational rational_from_json(const Json& value);
Json rational_to_json(const Rational& value);

/// {"n": int, "dist": [[...], ...]}; full matrix, validated.
FiniteMetricSpace space_from_json(const Json& doc);
FiniteMetricSpace load_space_file(const std::string& path);

/// [{"point": i, "coef": "p/q"}, ...]
FreeElement element_from_json(const Json& doc);
Json element_to_json(const FreeElement& element);

/// Family shorthand: uniform:<d>, convline, intline, geomline,
/// dendro:<seed>:<depth>, remark:<k>, file:<path>.
MetricFamily parse_family(std::string_view text);

/// Space shorthand: a family shorthand followed by :<N> (the first N points),
/// or file:<path> for a whole custom space.
FiniteMetricSpace parse_space(std::string_view text);

/// {"family": id, "x_idx": [...], "r": ["p/q", ...], "exact": bool}
Json plan_to_json(const EmbeddingPlan& plan);
EmbeddingPlan plan_from_json(const Json& doc);

/// Parses JSON text, or reads it from a file when `text` names one.
Json read_json_argument(const std::string& text);

}  // namespace lipfree
