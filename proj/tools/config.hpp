#pragma once

// JSON channel configs in, JSON designs out.
//
// Config layout:
//   {
//     "prior":  {"p0": 0.5},
//     "phi0":   {"components": [{"mean": -1, "stddev": 1, "weight": 1}]},
//     "phi1":   {"components": [...]},
//     "search": {"lo": -11, "hi": 11},                        (optional)
//     "solver": {"a_lo", "a_hi", "tol_a", "max_iter", "grid_points"}  (optional)
//   }

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "biquant/biquant.hpp"

namespace biquant::cli {

/// Malformed or invalid config; the message names the offending field or
/// the line/column of a syntax error.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    ChannelSpec channel;
    SolverConfig solver;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json design_to_json(const QuantizerDesign& design);
QuantizerDesign design_from_json(const nlohmann::json& j);

} // namespace biquant::cli
