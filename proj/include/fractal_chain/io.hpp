#ifndef FRACTAL_CHAIN_IO_HPP
#define FRACTAL_CHAIN_IO_HPP

#include <filesystem>
#include <string>

#include "fractal_chain/box_counting.hpp"
#include "fractal_chain/chain.hpp"
#include "fractal_chain/dispersion.hpp"
#include "fractal_chain/kernel.hpp"

// File formats. CSV dialect is fixed: comma separator, '.' decimal point,
// one header row, '\n' line endings, UTF-8. Doubles are written with 17
// significant digits so every file re-parses to bit-equal values.

namespace fractal_chain {

// Shortest-exact formatting used by all writers ("%.17g").
std::string format_double(double v);

// PlanarGraph as two-column CSV "x,y".
PlanarGraph read_planar_graph_csv(const std::filesystem::path& path);
void write_planar_graph_csv(const std::filesystem::path& path,
                            const PlanarGraph& g);

// BoxCountResult as JSON {"scales", "counts", "dimension", "r_squared"}.
void write_box_count_json(const std::filesystem::path& path,
                          const BoxCountResult& r);
BoxCountResult read_box_count_json(const std::filesystem::path& path);

// Kernel as JSON {"c": ..., "h": ..., "terms": [[offset, weight], ...]}.
std::string kernel_to_json(const InteractionKernel& k);
InteractionKernel kernel_from_json(const std::string& text);
void write_kernel_json(const std::filesystem::path& path,
                       const InteractionKernel& k);
InteractionKernel read_kernel_json(const std::filesystem::path& path);

// Trajectory as long-format CSV "t,n,u,v" (CSV) or arrays (JSON).
void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory& tr);
Trajectory read_trajectory_csv(const std::filesystem::path& path);
void write_trajectory_json(const std::filesystem::path& path,
                           const Trajectory& tr);
Trajectory read_trajectory_json(const std::filesystem::path& path);

// Energy series as two-column CSV "t,E".
void write_energy_csv(const std::filesystem::path& path, const Trajectory& tr);

// Generic two-column numeric CSV with an exact expected header; reads back
// energy series ("t,E"), sampled functions ("x,W"), and the like.
std::vector<std::pair<double, double>>
read_two_column_csv(const std::filesystem::path& path,
                    const std::string& header);

// Initial state from CSV "n,u,v" (rows may appear in any order but must
// cover n = 0..N-1 exactly once).
ChainState read_initial_state_csv(const std::filesystem::path& path);
void write_initial_state_csv(const std::filesystem::path& path,
                             const ChainState& s);

// DispersionCurve as CSV "k,lambda,omega" plus a JSON sidecar with the
// kernel provenance.
void write_dispersion_csv(const std::filesystem::path& path,
                          const DispersionCurve& curve);
DispersionCurve read_dispersion_csv(const std::filesystem::path& path);
void write_dispersion_sidecar_json(const std::filesystem::path& path,
                                   const DispersionCurve& curve,
                                   const InteractionKernel& k);
void write_dispersion_json(const std::filesystem::path& path,
                           const DispersionCurve& curve,
                           const InteractionKernel& k);

// Probe results as CSV "M,max_slope".
void write_probe_csv(const std::filesystem::path& path,
                     const std::vector<SlopeProbePoint>& points);
std::vector<SlopeProbePoint>
read_probe_csv(const std::filesystem::path& path);

} // namespace fractal_chain

#endif
