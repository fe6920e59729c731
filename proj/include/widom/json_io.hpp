#pragma once

#include <json.hpp>
#include <string>

#include "widom/asymptotics.hpp"
#include "widom/grid.hpp"
#include "widom/lemniscate.hpp"
#include "widom/minimax.hpp"
#include "widom/weights.hpp"

namespace widom {

/// Parses {"const", "powers": [{"re", "im", "s"}], "table": [[theta, value]], "M", "allow_singular"}.
/// At least one of const, powers, table must be present. Throws invalid_argument on malformed input.
WeightSpec weight_from_json(const nlohmann::json& j);
nlohmann::json weight_to_json(const WeightSpec& w);
WeightSpec load_weight_file(const std::string& path);

/// "inf" or {"re", "im"}.
nlohmann::json point_to_json(const ComplexPoint& p);
ComplexPoint point_from_json(const nlohmann::json& j);

/// Solution export; monomial coefficients are flagged ill_conditioned for degree > 40.
nlohmann::json solution_to_json(const PolySolution& s, const Grid& grid);
nlohmann::json report_to_json(const PredictionReport& r);
nlohmann::json comparison_to_json(const ComparisonRecord& c);

}  // namespace widom
