#pragma once

// File formats of the command-line tool.
//   params:  {"d": 1, "N": 4, "omega_re": [[0]], "omega_im": [[1]]}
//            (omega_re / omega_im may be scalars for d = 1 or diagonal shorthand)
//   signals: JSON array of [re, im] pairs, or CSV rows "index,re,im"
//   points:  JSON array of integer rows [k_1..k_d, l_1..l_d]

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gtorus/common.hpp"
#include "gtorus/core.hpp"
#include "gtorus/signal.hpp"

namespace gtorus::cli {

using Json = nlohmann::ordered_json;

/// Reads a whole file; throws std::runtime_error naming the path.
std::string read_file(const std::string& path);

GaborConfig parse_params(const Json& j);
GaborParams load_params(const std::string& path);
Json params_to_json(const GaborParams& params);

/// Accepts JSON [[re, im], ...], an output object with a "coefficients" or
/// "signal" array, or CSV "index,re,im".
std::vector<cplx> parse_complex_list(const std::string& text);
Signal load_signal(const std::string& path, const GaborParams& params);

std::vector<std::pair<std::size_t, std::size_t>> parse_points(const Json& j, const GaborParams& params);
std::vector<std::pair<std::size_t, std::size_t>> load_points(const std::string& path, const GaborParams& params);

/// Comma-separated numbers "re,im,re,im,..." as a complex vector.
CVector parse_complex_vector(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
/// "from:to:step".
std::vector<double> parse_alpha_grid(const std::string& text);

/// Shortest round-trip decimal, '.' separator, independent of locale.
std::string format_number(double v);
Json complex_json(cplx v);

}  // namespace gtorus::cli
