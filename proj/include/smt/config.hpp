#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace smt {

// Resolved run configuration shared by simulate / invert / roundtrip.
// Serialized as JSON; command-line flags override file values.
struct RunConfig {
    int dim = 3;                          // odd space dimension n
    std::string kind = "radial";          // "radial" | "modes"
    std::string phantom = "gaussian";     // registry name
    std::vector<double> phantom_params;   // empty -> figure defaults
    double tmin = 1e-4;
    double tmax = 0.99;
    int nodes = 300;
    int quad_order = 64;
    std::string diff = "polyfit";         // differentiation spec, e.g. "stencil:width=9"
    double eps = 1e-6;
    std::optional<double> eps_prime;      // empty -> auto-detect ("auto")
    double noise_amplitude = 0.0;
    std::uint64_t seed = 0;
    std::string method = "ode";           // "ode" | "analytic"
    int qmax = 0;                         // modes kind: highest harmonic degree
    int n_theta = 0;                      // modes kind: 0 -> derived from qmax
    int n_phi = 0;
    std::string out_dir = "out";
    std::string label = "run";
    std::vector<std::pair<double, double>> metrics_intervals;  // for round-trip reports
};

nlohmann::json config_to_json(const RunConfig& c);
RunConfig config_from_json(const nlohmann::json& j);  // throws DataError on bad fields

// Parses a JSON config file. Throws DataError on I/O or schema problems.
RunConfig load_config_file(const std::filesystem::path& path);

// Throws std::invalid_argument when the configuration violates its
// invariants (n odd >= 3, 0 < tmin < tmax <= 1, enough nodes, known method /
// kind / differentiation spec, ...).
void validate(const RunConfig& c);

}  // namespace smt
