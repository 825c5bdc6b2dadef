#ifndef FRACTAL_CHAIN_CONFIG_HPP
#define FRACTAL_CHAIN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fractal_chain/kernel.hpp"

namespace fractal_chain {

// Experiment configuration, read from an INI-style file with nested
// sections [kernel] [sim] [dispersion] [weierstrass] [boxdim] [output].
// Grammar: 'key = value' lines, '#' comments, blank lines ignored.
// Command-line flags override file values which override defaults.

struct KernelConfig {
    std::string family = "nearest_neighbor";
    int a = 2;
    double b = 0.5;
    double d_graph = 1.5;
    int order = 0;
    std::string terms; // explicit family, "offset:weight,offset:weight,..."
    double c = 1.0;
    double h = 1.0;

    KernelFamily to_family() const; // throws parameter_error
};

struct SimSection {
    std::int64_t n_particles = 64;
    std::string init = "mode"; // mode | random | csv
    std::int64_t mode_index = 1;
    double amplitude = 1.0;
    std::uint64_t seed = 0;
    std::string init_csv;
    double dt = 0.01;
    std::int64_t n_steps = 1000;
    std::int64_t record_every = 1;
};

struct DispersionSection {
    double k_min = 0.0;
    double k_max = 3.141592653589793;
    std::int64_t n_points = 129;
    std::vector<std::int64_t> measure_modes;
};

struct WeierstrassSection {
    int a = 3;
    double b = 0.5;
    int n_max = 40;
    bool fractal = false;
    double x_min = 0.0;
    double x_max = 1.0;
    std::int64_t n_samples = 1001;
};

struct BoxdimSection {
    std::string input;       // graph CSV; empty = generate from [weierstrass]
    double eps_max = 0.125;
    double eps_min = 0.001953125;
    std::int64_t n_scales = 7; // geometric spacing between eps_max and eps_min
};

struct OutputSection {
    std::string dir = "out";
    std::string format = "csv"; // csv | json
};

struct ExperimentConfig {
    KernelConfig kernel;
    SimSection sim;
    DispersionSection dispersion;
    WeierstrassSection weierstrass;
    BoxdimSection boxdim;
    OutputSection output;
};

// Parsed file as section -> key -> value, preserving unknown-key detection.
using ConfigMap = std::map<std::string, std::map<std::string, std::string>>;

ConfigMap parse_config_text(const std::string& text); // throws io_error
ConfigMap parse_config_file(const std::filesystem::path& path);

// Apply a parsed file over the defaults. Unknown sections or keys throw
// io_error naming the offender.
ExperimentConfig config_from_map(const ConfigMap& map);

std::vector<double> geometric_scales(double eps_max, double eps_min,
                                     std::int64_t n_scales);

} // namespace fractal_chain

#endif
