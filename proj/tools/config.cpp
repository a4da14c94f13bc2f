#include "config.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace biquant::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
    for (const auto& [key, _] : obj.items())
        if (!known.count(key))
            throw ConfigError(where + (where.empty() ? "" : ".") + key + ": unknown field");
}

const json& require_object(const json& parent, const std::string& key, const std::string& where) {
    if (!parent.contains(key)) throw ConfigError(where + key + ": missing");
    const auto& v = parent.at(key);
    if (!v.is_object()) throw ConfigError(where + key + ": expected an object");
    return v;
}

double number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ConfigError(path + ": missing");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(path + ": expected a number");
    return v.get<double>();
}

std::optional<double> optional_number(const json& obj, const std::string& key,
                                      const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    return number(obj, key, path);
}

DensityModel parse_density(const json& root, const std::string& name) {
    const auto& d = require_object(root, name, "");
    reject_unknown(d, name, {"components"});
    if (!d.contains("components") || !d.at("components").is_array() ||
        d.at("components").empty())
        throw ConfigError(name + ".components: expected a non-empty array");

    std::vector<GaussianComponent> comps;
    std::size_t i = 0;
    for (const auto& c : d.at("components")) {
        const std::string at = name + ".components[" + std::to_string(i++) + "]";
        if (!c.is_object()) throw ConfigError(at + ": expected an object");
        reject_unknown(c, at, {"mean", "stddev", "weight"});
        GaussianComponent g{number(c, "mean", at + ".mean"), number(c, "stddev", at + ".stddev"),
                            optional_number(c, "weight", at + ".weight").value_or(1.0)};
        try {
            validate(g);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(at + ": " + e.what());
        }
        comps.push_back(g);
    }
    try {
        return DensityModel(std::move(comps));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(name + ": " + e.what());
    }
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown(root, "", {"prior", "phi0", "phi1", "search", "solver"});

    const auto& prior_obj = require_object(root, "prior", "");
    reject_unknown(prior_obj, "prior", {"p0"});
    const double p0 = number(prior_obj, "p0", "prior.p0");
    if (!(p0 > 0.0 && p0 < 1.0)) throw ConfigError("prior.p0: must lie strictly inside (0, 1)");

    auto phi0 = parse_density(root, "phi0");
    auto phi1 = parse_density(root, "phi1");

    auto [lo, hi] = ChannelSpec::default_search_domain(phi0, phi1);
    if (root.contains("search")) {
        const auto& s = require_object(root, "search", "");
        reject_unknown(s, "search", {"lo", "hi"});
        lo = optional_number(s, "lo", "search.lo").value_or(lo);
        hi = optional_number(s, "hi", "search.hi").value_or(hi);
    }

    SolverConfig solver;
    if (root.contains("solver")) {
        const auto& s = require_object(root, "solver", "");
        reject_unknown(s, "solver", {"a_lo", "a_hi", "tol_a", "max_iter", "grid_points"});
        solver.a_lo = optional_number(s, "a_lo", "solver.a_lo").value_or(solver.a_lo);
        solver.a_hi = optional_number(s, "a_hi", "solver.a_hi").value_or(solver.a_hi);
        solver.tol_a = optional_number(s, "tol_a", "solver.tol_a").value_or(solver.tol_a);
        for (const char* key : {"max_iter", "grid_points"}) {
            if (!s.contains(key)) continue;
            const auto& v = s.at(key);
            if (!v.is_number_unsigned())
                throw ConfigError(std::string("solver.") + key + ": expected a positive integer");
            (std::string(key) == "max_iter" ? solver.max_iter : solver.grid_points) =
                v.get<std::size_t>();
        }
    }
    try {
        solver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("solver: ") + e.what());
    }

    try {
        return {ChannelSpec(Prior(p0), std::move(phi0), std::move(phi1), lo, hi), solver};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("search: ") + e.what());
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

json design_to_json(const QuantizerDesign& d) {
    return json{{"a_star", d.a_star},
                {"r_star", d.r_star},
                {"thresholds", d.thresholds.vector()},
                {"mapping", std::string(to_string(d.mapping))},
                {"channel", {{"a11", d.channel.a11}, {"a22", d.channel.a22}}},
                {"mi_bits", d.mi_bits},
                {"stationarity_residual", d.stationarity_residual},
                {"iterations", d.iterations},
                {"warnings", d.warnings}};
}

QuantizerDesign design_from_json(const json& j) {
    QuantizerDesign d;
    d.a_star = j.at("a_star").get<double>();
    d.r_star = j.at("r_star").get<double>();
    d.thresholds = ThresholdVector(j.at("thresholds").get<std::vector<double>>());
    const auto mapping = j.at("mapping").get<std::string>();
    if (mapping == "odd_to_zero") d.mapping = Mapping::OddToZero;
    else if (mapping == "even_to_zero") d.mapping = Mapping::EvenToZero;
    else throw ConfigError("mapping: expected odd_to_zero or even_to_zero");
    d.channel = {j.at("channel").at("a11").get<double>(), j.at("channel").at("a22").get<double>()};
    d.mi_bits = j.at("mi_bits").get<double>();
    d.stationarity_residual = j.at("stationarity_residual").get<double>();
    d.iterations = j.at("iterations").get<std::size_t>();
    if (j.contains("warnings")) d.warnings = j.at("warnings").get<std::vector<std::string>>();
    return d;
}

} // namespace biquant::cli
