#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polyharm/estimates.hpp"
#include "polyharm/exponents.hpp"
#include "polyharm/green.hpp"
#include "polyharm/singular.hpp"
#include "polyharm/spectral.hpp"

namespace polyharm {

using Json = nlohmann::ordered_json;

// Indented JSON with every double printed as %.17g; non-finite doubles
// become null. Key order is insertion order, so output is byte-stable.
std::string dump_json(const Json& value);

std::string format_double(double x);

Json regimes_json(const ExponentParams& params, int n, int m, Regime regime);
Json to_json(const BootstrapTrace& trace);
Json to_json(const MinRatioReport& report, const BallProblem& problem);
Json to_json(const EstimateReport& report);
Json to_json(const SingularStudy& study);
Json eigen_json(const BallProblem& problem, int level, const EigenPair& pair, const SandwichConstants& sandwich);

// Comma separated, header first, doubles as %.17g.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

std::string bootstrap_csv(const BootstrapTrace& trace);
std::string estimate_csv(const EstimateReport& report);
std::string singular_csv(const SingularStudy& study);
// t = |x - x0| along the cone axis, u, v
std::string axis_profile_csv(const SingularStudy& study);

}  // namespace polyharm
