#include "fractal_chain/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fractal_chain/errors.hpp"

namespace fractal_chain {

namespace {

using nlohmann::json;

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot write " + path.string());
    out << text;
    if (!out)
        throw io_error("write failed for " + path.string());
}

double parse_double(const std::string& s, const std::filesystem::path& path,
                    std::size_t line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\r')) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw io_error(path.string() + ":" + std::to_string(line) +
                       ": bad number '" + s + "'");
    }
}

std::int64_t parse_int(const std::string& s, const std::filesystem::path& path,
                       std::size_t line) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\r')) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw io_error(path.string() + ":" + std::to_string(line) +
                       ": bad integer '" + s + "'");
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

// Rows of an expected-width CSV after checking the exact header.
std::vector<std::vector<std::string>>
read_csv(const std::filesystem::path& path, const std::string& header) {
    std::istringstream in(slurp(path));
    std::string line;
    if (!std::getline(in, line))
        throw io_error(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header)
        throw io_error(path.string() + ": expected header '" + header +
                       "', got '" + line + "'");
    const std::size_t width = split_csv_line(header).size();
    std::vector<std::vector<std::string>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != width)
            throw io_error(path.string() + ":" + std::to_string(lineno) +
                           ": expected " + std::to_string(width) +
                           " fields, got " + std::to_string(fields.size()));
        rows.push_back(std::move(fields));
    }
    return rows;
}

json read_json_file(const std::filesystem::path& path) {
    try {
        return json::parse(slurp(path));
    } catch (const json::exception& e) {
        throw io_error(path.string() + ": " + e.what());
    }
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

PlanarGraph read_planar_graph_csv(const std::filesystem::path& path) {
    PlanarGraph g;
    for (const auto& row : read_csv(path, "x,y")) {
        g.x.push_back(parse_double(row[0], path, 0));
        g.y.push_back(parse_double(row[1], path, 0));
    }
    g.validate();
    return g;
}

void write_planar_graph_csv(const std::filesystem::path& path,
                            const PlanarGraph& g) {
    std::string out = "x,y\n";
    for (std::size_t i = 0; i < g.x.size(); ++i)
        out += format_double(g.x[i]) + "," + format_double(g.y[i]) + "\n";
    spit(path, out);
}

void write_box_count_json(const std::filesystem::path& path,
                          const BoxCountResult& r) {
    json j;
    j["scales"] = r.scales;
    j["counts"] = r.counts;
    j["dimension"] = r.dimension;
    j["r_squared"] = r.r_squared;
    spit(path, j.dump(2) + "\n");
}

BoxCountResult read_box_count_json(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    try {
        BoxCountResult r;
        r.scales = j.at("scales").get<std::vector<double>>();
        r.counts = j.at("counts").get<std::vector<std::int64_t>>();
        r.dimension = j.at("dimension").get<double>();
        r.r_squared = j.at("r_squared").get<double>();
        return r;
    } catch (const json::exception& e) {
        throw io_error(path.string() + ": " + e.what());
    }
}

std::string kernel_to_json(const InteractionKernel& k) {
    json terms = json::array();
    for (const auto& t : k.terms) terms.push_back({t.offset, t.weight});
    json j;
    j["c"] = k.c;
    j["h"] = k.h;
    j["terms"] = std::move(terms);
    return j.dump();
}

InteractionKernel kernel_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw io_error(std::string("kernel JSON: ") + e.what());
    }
    try {
        std::vector<KernelTerm> terms;
        for (const auto& t : j.at("terms"))
            terms.push_back({t.at(0).get<std::int64_t>(), t.at(1).get<double>()});
        return build_kernel(ExplicitTerms{std::move(terms)},
                            j.at("c").get<double>(), j.at("h").get<double>());
    } catch (const json::exception& e) {
        throw io_error(std::string("kernel JSON: ") + e.what());
    }
}

void write_kernel_json(const std::filesystem::path& path,
                       const InteractionKernel& k) {
    spit(path, kernel_to_json(k) + "\n");
}

InteractionKernel read_kernel_json(const std::filesystem::path& path) {
    return kernel_from_json(slurp(path));
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory& tr) {
    std::string out = "t,n,u,v\n";
    for (std::size_t s = 0; s < tr.times.size(); ++s) {
        const std::string t = format_double(tr.times[s]);
        for (std::size_t i = 0; i < tr.displacements[s].size(); ++i) {
            out += t;
            out += ',';
            out += std::to_string(i);
            out += ',';
            out += format_double(tr.displacements[s][i]);
            out += ',';
            out += format_double(tr.velocities[s][i]);
            out += '\n';
        }
    }
    spit(path, out);
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    Trajectory tr;
    for (const auto& row : read_csv(path, "t,n,u,v")) {
        const double t = parse_double(row[0], path, 0);
        const auto n = parse_int(row[1], path, 0);
        const double u = parse_double(row[2], path, 0);
        const double v = parse_double(row[3], path, 0);
        if (n == 0) {
            tr.times.push_back(t);
            tr.displacements.emplace_back();
            tr.velocities.emplace_back();
        }
        if (tr.displacements.empty() ||
            n != static_cast<std::int64_t>(tr.displacements.back().size()))
            throw io_error(path.string() + ": particle indices out of order");
        tr.displacements.back().push_back(u);
        tr.velocities.back().push_back(v);
    }
    return tr;
}

void write_trajectory_json(const std::filesystem::path& path,
                           const Trajectory& tr) {
    json j;
    j["times"] = tr.times;
    j["displacements"] = tr.displacements;
    j["velocities"] = tr.velocities;
    j["energies"] = tr.energies;
    j["dt"] = tr.dt;
    spit(path, j.dump() + "\n");
}

Trajectory read_trajectory_json(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    try {
        Trajectory tr;
        tr.times = j.at("times").get<std::vector<double>>();
        tr.displacements =
            j.at("displacements").get<std::vector<std::vector<double>>>();
        tr.velocities =
            j.at("velocities").get<std::vector<std::vector<double>>>();
        tr.energies = j.at("energies").get<std::vector<double>>();
        tr.dt = j.at("dt").get<double>();
        return tr;
    } catch (const json::exception& e) {
        throw io_error(path.string() + ": " + e.what());
    }
}

void write_energy_csv(const std::filesystem::path& path, const Trajectory& tr) {
    std::string out = "t,E\n";
    for (std::size_t s = 0; s < tr.times.size(); ++s)
        out += format_double(tr.times[s]) + "," +
               format_double(tr.energies[s]) + "\n";
    spit(path, out);
}

std::vector<std::pair<double, double>>
read_two_column_csv(const std::filesystem::path& path,
                    const std::string& header) {
    std::vector<std::pair<double, double>> rows;
    for (const auto& row : read_csv(path, header))
        rows.emplace_back(parse_double(row[0], path, 0),
                          parse_double(row[1], path, 0));
    return rows;
}

ChainState read_initial_state_csv(const std::filesystem::path& path) {
    const auto rows = read_csv(path, "n,u,v");
    if (rows.size() < 2)
        throw io_error(path.string() + ": need at least 2 particles");
    ChainState s;
    s.u.assign(rows.size(), 0.0);
    s.v.assign(rows.size(), 0.0);
    std::vector<bool> seen(rows.size(), false);
    for (const auto& row : rows) {
        const auto n = parse_int(row[0], path, 0);
        if (n < 0 || n >= static_cast<std::int64_t>(rows.size()) || seen[n])
            throw io_error(path.string() +
                           ": particle indices must cover 0..N-1 exactly once");
        seen[n] = true;
        s.u[n] = parse_double(row[1], path, 0);
        s.v[n] = parse_double(row[2], path, 0);
    }
    s.validate();
    return s;
}

void write_initial_state_csv(const std::filesystem::path& path,
                             const ChainState& s) {
    std::string out = "n,u,v\n";
    for (std::size_t i = 0; i < s.u.size(); ++i)
        out += std::to_string(i) + "," + format_double(s.u[i]) + "," +
               format_double(s.v[i]) + "\n";
    spit(path, out);
}

void write_dispersion_csv(const std::filesystem::path& path,
                          const DispersionCurve& curve) {
    std::string out = "k,lambda,omega\n";
    for (std::size_t i = 0; i < curve.k.size(); ++i)
        out += format_double(curve.k[i]) + "," +
               format_double(curve.lambda[i]) + "," +
               format_double(curve.omega[i]) + "\n";
    spit(path, out);
}

DispersionCurve read_dispersion_csv(const std::filesystem::path& path) {
    DispersionCurve curve;
    for (const auto& row : read_csv(path, "k,lambda,omega")) {
        curve.k.push_back(parse_double(row[0], path, 0));
        curve.lambda.push_back(parse_double(row[1], path, 0));
        curve.omega.push_back(parse_double(row[2], path, 0));
    }
    return curve;
}

void write_dispersion_sidecar_json(const std::filesystem::path& path,
                                   const DispersionCurve& curve,
                                   const InteractionKernel& k) {
    json j;
    j["kernel_id"] = curve.kernel_id;
    j["kernel"] = json::parse(kernel_to_json(k));
    j["n_points"] = curve.k.size();
    spit(path, j.dump(2) + "\n");
}

void write_dispersion_json(const std::filesystem::path& path,
                           const DispersionCurve& curve,
                           const InteractionKernel& k) {
    json j;
    j["k"] = curve.k;
    j["lambda"] = curve.lambda;
    j["omega"] = curve.omega;
    j["kernel_id"] = curve.kernel_id;
    j["kernel"] = json::parse(kernel_to_json(k));
    spit(path, j.dump() + "\n");
}

void write_probe_csv(const std::filesystem::path& path,
                     const std::vector<SlopeProbePoint>& points) {
    std::string out = "M,max_slope\n";
    for (const auto& p : points)
        out += std::to_string(p.order) + "," + format_double(p.max_slope) + "\n";
    spit(path, out);
}

std::vector<SlopeProbePoint>
read_probe_csv(const std::filesystem::path& path) {
    std::vector<SlopeProbePoint> points;
    for (const auto& row : read_csv(path, "M,max_slope")) {
        points.push_back({static_cast<int>(parse_int(row[0], path, 0)),
                          parse_double(row[1], path, 0)});
    }
    return points;
}

} // namespace fractal_chain
