#ifndef FRACTAL_CHAIN_CHAIN_HPP
#define FRACTAL_CHAIN_CHAIN_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fractal_chain/kernel.hpp"

namespace fractal_chain {

// Displacements and velocities of an N-particle periodic ring at time t.
struct ChainState {
    std::vector<double> u; // displacements
    std::vector<double> v; // velocities
    double t = 0.0;

    void validate() const; // throws parameter_error / numeric_error
};

struct SimConfig {
    double dt = 0.0;
    std::int64_t n_steps = 0;
    std::int64_t record_every = 1;

    void validate() const; // local field checks; the dt*omega_max stability
                           // guard lives in dispersion (needs the mode set)
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> displacements;
    std::vector<std::vector<double>> velocities;
    std::vector<double> energies;
    double dt = 0.0; // integration step, needed for Verlet bias correction
};

// Integration blew up; carries the offending step and what was recorded.
class divergence_error : public std::runtime_error {
public:
    divergence_error(const std::string& msg, std::int64_t step_index,
                     Trajectory partial)
        : std::runtime_error(msg), step_index(step_index),
          partial(std::move(partial)) {}
    std::int64_t step_index;
    Trajectory partial;
};

// acc_n = (c^2/h^2) sum_m b(m) [u_{(n+a(m)) mod N} - 2 u_n + u_{(n-a(m)) mod N}].
// Kernel terms are iterated outer in ascending-offset order, particles inner,
// so results are bit-reproducible. O(N * terms).
void accelerations(const InteractionKernel& k, std::span<const double> u,
                   std::span<double> acc);
std::vector<double> accelerations(const InteractionKernel& k,
                                  const std::vector<double>& u);

// Total energy sum_n v_n^2/2 + V(u) with
//   V(u) = (c^2 / 2h^2) sum_m b(m) sum_n (u_{n+a(m)} - u_n)^2,
// chosen so that -dV/du_n reproduces accelerations(). Non-negative.
double total_energy(const InteractionKernel& k, const ChainState& s);

// One velocity-Verlet step (half-kick, drift, half-kick). Time-reversible
// and symplectic; exactly two acceleration evaluations.
ChainState step_verlet(const InteractionKernel& k, const ChainState& s,
                       double dt);

// Standing wave u_n = amplitude * cos(k n h), v = 0, with the ring mode
// k = 2 pi j / (N h). Throws parameter_error for j outside [0, N).
ChainState init_plane_wave(std::int64_t n, std::int64_t mode_index,
                           double amplitude, double h);

// Iterate step_verlet n_steps times, recording every record_every steps
// (always including step 0 and the final step) together with total_energy.
// Throws divergence_error (partial trajectory attached) if any |u_n| exceeds
// 1e6 times the initial amplitude or goes non-finite.
Trajectory run(const InteractionKernel& k, const ChainState& s0,
               const SimConfig& cfg);

} // namespace fractal_chain

#endif
