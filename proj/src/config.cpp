#include "fractal_chain/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fractal_chain/errors.hpp"

namespace fractal_chain {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty()) return x;
    } catch (const std::exception&) {
    }
    throw io_error("config: key '" + key + "' expects a number, got '" + v + "'");
}

std::int64_t to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (trim(v.substr(pos)).empty()) return x;
    } catch (const std::exception&) {
    }
    throw io_error("config: key '" + key + "' expects an integer, got '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw io_error("config: key '" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<std::int64_t> to_int_list(const std::string& key,
                                      const std::string& v) {
    std::vector<std::int64_t> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_int(key, item));
    }
    return out;
}

} // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap map;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw io_error("config line " + std::to_string(lineno) +
                               ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw io_error("config line " + std::to_string(lineno) +
                               ": empty section name");
            map[section]; // register even if empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw io_error("config line " + std::to_string(lineno) +
                           ": expected 'key = value'");
        if (section.empty())
            throw io_error("config line " + std::to_string(lineno) +
                           ": key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw io_error("config line " + std::to_string(lineno) + ": empty key");
        map[section][key] = value;
    }
    return map;
}

ConfigMap parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

KernelFamily KernelConfig::to_family() const {
    if (family == "nearest_neighbor") return NearestNeighbor{};
    if (family == "wm_fractal") return WMFractal{a, d_graph, order};
    if (family == "geometric_weierstrass")
        return GeometricWeierstrass{a, b, order};
    if (family == "explicit") {
        std::vector<KernelTerm> parsed;
        std::stringstream ss(terms);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw parameter_error(
                    "kernel.terms expects 'offset:weight,...', got '" + item + "'");
            parsed.push_back({to_int("kernel.terms", item.substr(0, colon)),
                              to_double("kernel.terms", item.substr(colon + 1))});
        }
        return ExplicitTerms{std::move(parsed)};
    }
    throw parameter_error("unknown kernel family '" + family + "'");
}

ExperimentConfig config_from_map(const ConfigMap& map) {
    ExperimentConfig cfg;
    for (const auto& [section, kv] : map) {
        if (section == "kernel") {
            for (const auto& [key, v] : kv) {
                if (key == "family") cfg.kernel.family = v;
                else if (key == "a") cfg.kernel.a = static_cast<int>(to_int(key, v));
                else if (key == "b") cfg.kernel.b = to_double(key, v);
                else if (key == "d_graph") cfg.kernel.d_graph = to_double(key, v);
                else if (key == "order") cfg.kernel.order = static_cast<int>(to_int(key, v));
                else if (key == "terms") cfg.kernel.terms = v;
                else if (key == "c") cfg.kernel.c = to_double(key, v);
                else if (key == "h") cfg.kernel.h = to_double(key, v);
                else throw io_error("config: unknown key kernel." + key);
            }
        } else if (section == "sim") {
            for (const auto& [key, v] : kv) {
                if (key == "n_particles") cfg.sim.n_particles = to_int(key, v);
                else if (key == "init") cfg.sim.init = v;
                else if (key == "mode_index") cfg.sim.mode_index = to_int(key, v);
                else if (key == "amplitude") cfg.sim.amplitude = to_double(key, v);
                else if (key == "seed") cfg.sim.seed = static_cast<std::uint64_t>(to_int(key, v));
                else if (key == "init_csv") cfg.sim.init_csv = v;
                else if (key == "dt") cfg.sim.dt = to_double(key, v);
                else if (key == "n_steps") cfg.sim.n_steps = to_int(key, v);
                else if (key == "record_every") cfg.sim.record_every = to_int(key, v);
                else throw io_error("config: unknown key sim." + key);
            }
        } else if (section == "dispersion") {
            for (const auto& [key, v] : kv) {
                if (key == "k_min") cfg.dispersion.k_min = to_double(key, v);
                else if (key == "k_max") cfg.dispersion.k_max = to_double(key, v);
                else if (key == "n_points") cfg.dispersion.n_points = to_int(key, v);
                else if (key == "measure_modes")
                    cfg.dispersion.measure_modes = to_int_list(key, v);
                else throw io_error("config: unknown key dispersion." + key);
            }
        } else if (section == "weierstrass") {
            for (const auto& [key, v] : kv) {
                if (key == "a") cfg.weierstrass.a = static_cast<int>(to_int(key, v));
                else if (key == "b") cfg.weierstrass.b = to_double(key, v);
                else if (key == "n_max") cfg.weierstrass.n_max = static_cast<int>(to_int(key, v));
                else if (key == "fractal") cfg.weierstrass.fractal = to_bool(key, v);
                else if (key == "x_min") cfg.weierstrass.x_min = to_double(key, v);
                else if (key == "x_max") cfg.weierstrass.x_max = to_double(key, v);
                else if (key == "n_samples") cfg.weierstrass.n_samples = to_int(key, v);
                else throw io_error("config: unknown key weierstrass." + key);
            }
        } else if (section == "boxdim") {
            for (const auto& [key, v] : kv) {
                if (key == "input") cfg.boxdim.input = v;
                else if (key == "eps_max") cfg.boxdim.eps_max = to_double(key, v);
                else if (key == "eps_min") cfg.boxdim.eps_min = to_double(key, v);
                else if (key == "n_scales") cfg.boxdim.n_scales = to_int(key, v);
                else throw io_error("config: unknown key boxdim." + key);
            }
        } else if (section == "output") {
            for (const auto& [key, v] : kv) {
                if (key == "dir") cfg.output.dir = v;
                else if (key == "format") cfg.output.format = v;
                else throw io_error("config: unknown key output." + key);
            }
        } else {
            throw io_error("config: unknown section [" + section + "]");
        }
    }
    if (cfg.output.format != "csv" && cfg.output.format != "json")
        throw io_error("config: output.format must be 'csv' or 'json'");
    return cfg;
}

std::vector<double> geometric_scales(double eps_max, double eps_min,
                                     std::int64_t n_scales) {
    if (!(eps_max > eps_min) || !(eps_min > 0.0))
        throw parameter_error("geometric_scales: need eps_max > eps_min > 0");
    if (n_scales < 2)
        throw parameter_error("geometric_scales: need at least 2 scales");
    std::vector<double> eps(n_scales);
    const double ratio = std::log(eps_min / eps_max) /
                         static_cast<double>(n_scales - 1);
    for (std::int64_t i = 0; i < n_scales; ++i)
        eps[i] = eps_max * std::exp(ratio * static_cast<double>(i));
    eps.front() = eps_max;
    eps.back() = eps_min;
    return eps;
}

} // namespace fractal_chain
