#include "smt/config.hpp"

#include <fstream>
#include <stdexcept>

#include "smt/differentiate.hpp"
#include "smt/io.hpp"

namespace smt {

using nlohmann::json;

json config_to_json(const RunConfig& c) {
    json j;
    j["dim"] = c.dim;
    j["kind"] = c.kind;
    j["phantom"] = c.phantom;
    j["phantom_params"] = c.phantom_params;
    j["tmin"] = c.tmin;
    j["tmax"] = c.tmax;
    j["nodes"] = c.nodes;
    j["quad_order"] = c.quad_order;
    j["diff"] = c.diff;
    j["eps"] = c.eps;
    if (c.eps_prime)
        j["eps_prime"] = *c.eps_prime;
    else
        j["eps_prime"] = "auto";
    j["noise_amplitude"] = c.noise_amplitude;
    j["seed"] = c.seed;
    j["method"] = c.method;
    j["qmax"] = c.qmax;
    j["n_theta"] = c.n_theta;
    j["n_phi"] = c.n_phi;
    j["out_dir"] = c.out_dir;
    j["label"] = c.label;
    j["metrics_intervals"] = json::array();
    for (const auto& [a, b] : c.metrics_intervals)
        j["metrics_intervals"].push_back(json::array({a, b}));
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    try {
        if (!j.is_object()) throw DataError("config: top level must be an object");
        c.dim = j.value("dim", c.dim);
        c.kind = j.value("kind", c.kind);
        c.phantom = j.value("phantom", c.phantom);
        c.phantom_params = j.value("phantom_params", c.phantom_params);
        c.tmin = j.value("tmin", c.tmin);
        c.tmax = j.value("tmax", c.tmax);
        c.nodes = j.value("nodes", c.nodes);
        c.quad_order = j.value("quad_order", c.quad_order);
        c.diff = j.value("diff", c.diff);
        c.eps = j.value("eps", c.eps);
        if (j.contains("eps_prime")) {
            const auto& ep = j.at("eps_prime");
            if (ep.is_string()) {
                if (ep.get<std::string>() != "auto")
                    throw DataError("config: eps_prime must be a number or \"auto\"");
                c.eps_prime.reset();
            } else {
                c.eps_prime = ep.get<double>();
            }
        }
        c.noise_amplitude = j.value("noise_amplitude", c.noise_amplitude);
        c.seed = j.value("seed", c.seed);
        c.method = j.value("method", c.method);
        c.qmax = j.value("qmax", c.qmax);
        c.n_theta = j.value("n_theta", c.n_theta);
        c.n_phi = j.value("n_phi", c.n_phi);
        c.out_dir = j.value("out_dir", c.out_dir);
        c.label = j.value("label", c.label);
        if (j.contains("metrics_intervals")) {
            c.metrics_intervals.clear();
            for (const auto& iv : j.at("metrics_intervals")) {
                if (!iv.is_array() || iv.size() != 2)
                    throw DataError("config: metrics_intervals entries must be [lo, hi]");
                c.metrics_intervals.emplace_back(iv[0].get<double>(), iv[1].get<double>());
            }
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("config: ") + e.what());
    }
    return c;
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

void validate(const RunConfig& c) {
    if (c.dim < 3 || c.dim % 2 == 0)
        throw std::invalid_argument("config: dim must be an odd integer >= 3");
    if (c.kind != "radial" && c.kind != "modes")
        throw std::invalid_argument("config: kind must be 'radial' or 'modes'");
    if (c.kind == "modes" && c.dim != 3)
        throw std::invalid_argument("config: kind 'modes' requires dim 3");
    if (!(c.tmin > 0.0 && c.tmin < c.tmax && c.tmax <= 1.0))
        throw std::invalid_argument("config: need 0 < tmin < tmax <= 1");
    const int k = (c.dim - 3) / 2;
    const int max_deriv = (c.kind == "modes" ? c.qmax : 0) + 2 * k + 1;
    if (c.nodes < 10 * std::max(max_deriv, 1))
        throw std::invalid_argument("config: nodes must be >= 10x the highest derivative order");
    if (c.quad_order < 2) throw std::invalid_argument("config: quad_order must be >= 2");
    if (!(c.eps > 0.0 && c.eps < 1.0)) throw std::invalid_argument("config: eps must be in (0,1)");
    if (c.eps_prime && !(*c.eps_prime > 0.0 && *c.eps_prime < 1.0))
        throw std::invalid_argument("config: eps_prime must be in (0,1)");
    if (c.noise_amplitude < 0.0)
        throw std::invalid_argument("config: noise_amplitude must be >= 0");
    if (c.method != "ode" && c.method != "analytic")
        throw std::invalid_argument("config: method must be 'ode' or 'analytic'");
    if (c.qmax < 0) throw std::invalid_argument("config: qmax must be >= 0");
    if (c.n_theta < 0 || c.n_phi < 0)
        throw std::invalid_argument("config: n_theta/n_phi must be >= 0");
    for (const auto& [a, b] : c.metrics_intervals)
        if (!(a < b)) throw std::invalid_argument("config: metrics interval needs lo < hi");
    DiffMethod::parse(c.diff);  // throws std::invalid_argument on a bad spec
}

}  // namespace smt
