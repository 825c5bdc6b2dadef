#ifndef FRACTAL_CHAIN_DISPERSION_HPP
#define FRACTAL_CHAIN_DISPERSION_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fractal_chain/chain.hpp"
#include "fractal_chain/kernel.hpp"

namespace fractal_chain {

// Sampled dispersion law of one kernel.
struct DispersionCurve {
    std::vector<double> k;      // wavenumbers
    std::vector<double> lambda; // operator eigenvalues, >= 0
    std::vector<double> omega;  // sqrt((2 c^2/h^2) lambda)
    std::string kernel_id;      // provenance of the generating kernel
};

// Eigenvalue of the discrete coupling operator on the plane wave e^{ikx}:
//   lambda(k) = sum_m b(m) [1 - cos(h a(m) k)], each stored term once.
// Non-negative for positive weights; lambda(0) = 0.
double lambda_of_k(const InteractionKernel& k, double wavenumber);

// Dispersion law omega(k) = sqrt((2 c^2/h^2) lambda(k)), real and >= 0.
double omega_of_k(const InteractionKernel& k, double wavenumber);

// Apply the discrete operator on a periodic complex field:
//   out_n = sum_m b(m) [field_n - (field_{n+a(m)} + field_{n-a(m)})/2].
// Ring-mode plane waves e^{ikhn} are eigenvectors with eigenvalue lambda(k);
// equivalently out = (h^2 / 2c^2) * (-accelerations) extended to complex
// fields.
std::vector<std::complex<double>>
apply_operator_dense(const InteractionKernel& k,
                     std::span<const std::complex<double>> field);

// Plane-wave eigenvalue of the operator sum_{m=0}^{order} b^m cos(-i h a^m d/dx):
//   sum_{m=0}^{order} b^m cos(a^m h k),
// i.e. the truncated Weierstrass series W(h k / pi).
double weierstrass_operator_eigenvalue(int a, double b, int order, double h,
                                       double wavenumber);

// Maximum of omega over the ring modes k_j = 2 pi j / (N h), j = 0..N-1.
double max_ring_frequency(const InteractionKernel& k, std::int64_t n_particles);

// Full SimConfig validation including the dt * omega_max < 2 stability guard.
void validate_sim_config(const InteractionKernel& k, std::int64_t n_particles,
                         const SimConfig& cfg);

// Mode frequency measured from a trajectory started by init_plane_wave at the
// same mode index: each snapshot is projected on the mode profile, the
// frequency of the projection series is fitted by least squares (periodogram
// peak initial guess, golden-section refinement), and the Verlet frequency
// bias is removed via omega = (2/dt) sin(Omega_fit dt / 2).
// Throws protocol_error (< 4 oscillation periods covered or too few samples)
// and fit_error (relative RMS residual above 1e-3, residual attached).
double measure_mode_frequency(const Trajectory& tr, std::int64_t mode_index);

// Evaluate lambda and omega on a wavenumber grid. Grid points may be
// evaluated in parallel (FRACTAL_CHAIN_THREADS caps the thread count,
// 0 = auto); output order always follows the input grid.
DispersionCurve sample_dispersion(const InteractionKernel& k,
                                  const std::vector<double>& k_grid);

struct SlopeProbePoint {
    int order;        // truncation M
    double max_slope; // max |d lambda_M / dk| over the probe window
};

// Truncated-derivative growth probe for the geometric family
// a(m) = a^m, b(m) = b^m near the given wavenumber:
// for each M in orders, the analytic derivative
//   d lambda_M/dk = sum_{m=0}^{M} b^m h a^m sin(h a^m k)
// is maximized in magnitude over a window k +- 0.05/h sampled finely enough
// to resolve the fastest term. In the fractal regime ab > 1 the sequence
// grows without saturation (~ factor ab per unit M); the group velocity of
// the untruncated law does not exist.
// Throws regime_error when a*b <= 1 and parameter_error on bad inputs.
std::vector<SlopeProbePoint>
group_velocity_divergence_probe(int a, double b, double h, double wavenumber,
                                const std::vector<int>& orders);

} // namespace fractal_chain

#endif
