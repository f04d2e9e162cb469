#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lgt/cli.hpp"

namespace lgt {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "mode",     "n_sites",  "t",       "h",        "boundary",  "p",
    "ring",     "eta",      "max_iters", "kkt_tol", "l2_tol",   "seed",
    "restarts", "temperature", "mu_grid", "T_grid", "init_theta", "init_phi",
};

[[noreturn]] void bad(const std::string& key, const std::string& what) {
    throw std::invalid_argument(key + ": " + what);
}

double get_number(const json& j, const std::string& key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number()) bad(key, "expected a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, int dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number_integer()) bad(key, "expected an integer");
    return j.at(key).get<int>();
}

bool get_bool(const json& j, const std::string& key, bool dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_boolean()) bad(key, "expected a boolean");
    return j.at(key).get<bool>();
}

std::string get_string(const json& j, const std::string& key, const std::string& dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_string()) bad(key, "expected a string");
    return j.at(key).get<std::string>();
}

std::vector<double> get_vector(const json& j, const std::string& key,
                               std::vector<double> dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_array()) bad(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) bad(key, "expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

RunMode parse_mode(const std::string& s) {
    if (s == "vqe_moo") return RunMode::vqe_moo;
    if (s == "vqe_penalty") return RunMode::vqe_penalty;
    if (s == "vqt_moo") return RunMode::vqt_moo;
    if (s == "vqt_penalty") return RunMode::vqt_penalty;
    bad("mode", "must be one of vqe_moo, vqe_penalty, vqt_moo, vqt_penalty (got '" + s +
                    "')");
}

Boundary parse_boundary(const std::string& s) {
    if (s == "periodic") return Boundary::periodic;
    if (s == "open_dangling") return Boundary::open_dangling;
    bad("boundary", "must be 'periodic' or 'open_dangling' (got '" + s + "')");
}

std::vector<double> default_mu_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 12; ++k) grid.push_back(0.25 * k);
    return grid;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (const auto& item : j.items())
        if (!kKnownKeys.count(item.key()))
            throw std::invalid_argument("unknown config key: " + item.key());

    RunConfig cfg;
    if (!j.contains("mode")) bad("mode", "required");
    cfg.mode = parse_mode(get_string(j, "mode", ""));

    if (!j.contains("n_sites")) bad("n_sites", "required");
    cfg.model.n_sites = get_int(j, "n_sites", 0);
    cfg.model.t = get_number(j, "t", 1.0);
    cfg.model.h = get_number(j, "h", 0.5);
    cfg.model.boundary = parse_boundary(get_string(j, "boundary", "periodic"));

    cfg.n_blocks = get_int(j, "p", 3);
    cfg.ring = get_bool(j, "ring", true);
    cfg.eta = get_number(j, "eta", 0.02);
    cfg.max_iters = get_int(j, "max_iters", 20000);
    cfg.kkt_tol = get_number(j, "kkt_tol", 1e-4);
    cfg.l2_tol = get_number(j, "l2_tol", 1e-2);
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer() || j.at("seed").get<int64_t>() < 0)
            bad("seed", "expected a non-negative integer");
        cfg.seed = j.at("seed").get<uint64_t>();
    }
    cfg.restarts = get_int(j, "restarts", 5);

    const bool thermal = cfg.mode == RunMode::vqt_moo || cfg.mode == RunMode::vqt_penalty;
    if (thermal && !j.contains("temperature"))
        bad("temperature", "required for mode " + get_string(j, "mode", ""));
    cfg.temperature = get_number(j, "temperature", 1.0);

    cfg.mu_grid = get_vector(j, "mu_grid", default_mu_grid());
    cfg.temperature_grid = get_vector(j, "T_grid", {0.5, 1.0, 1.5, 2.0});

    if (j.contains("init_theta")) cfg.init_theta = get_vector(j, "init_theta", {});
    if (j.contains("init_phi")) cfg.init_phi = get_vector(j, "init_phi", {});

    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config_text(buffer.str());
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
}

}  // namespace lgt
