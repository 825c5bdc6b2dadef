#include "fractal_chain/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "fractal_chain/errors.hpp"

namespace fractal_chain {

namespace {

constexpr double kPi = 3.14159265358979323846;

int thread_cap() {
    const char* env = std::getenv("FRACTAL_CHAIN_THREADS");
    long cap = 0; // 0 = auto
    if (env && *env) cap = std::strtol(env, nullptr, 10);
    if (cap <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        cap = hw ? static_cast<long>(hw) : 1;
    }
    return static_cast<int>(std::min<long>(cap, 256));
}

} // namespace

double lambda_of_k(const InteractionKernel& k, double wavenumber) {
    if (!std::isfinite(wavenumber))
        throw parameter_error("lambda_of_k: wavenumber is not finite");
    const double kh = k.h * wavenumber;
    double sum = 0.0;
    // 1 - cos(w) = 2 sin^2(w/2): keeps every term exactly non-negative and
    // avoids cancellation at small w. Ascending offsets, fixed order.
    for (const auto& term : k.terms) {
        const double s = std::sin(0.5 * static_cast<double>(term.offset) * kh);
        sum += term.weight * (2.0 * s * s);
    }
    return sum;
}

double omega_of_k(const InteractionKernel& k, double wavenumber) {
    const double lam = lambda_of_k(k, wavenumber);
    return std::sqrt(2.0 * (k.c * k.c) / (k.h * k.h) * lam);
}

std::vector<std::complex<double>>
apply_operator_dense(const InteractionKernel& k,
                     std::span<const std::complex<double>> field) {
    const auto n = static_cast<std::int64_t>(field.size());
    if (n < 2)
        throw parameter_error("apply_operator_dense: need at least 2 samples");
    for (const auto& f : field)
        if (!std::isfinite(f.real()) || !std::isfinite(f.imag()))
            throw numeric_error("apply_operator_dense: non-finite field");

    std::vector<std::complex<double>> out(field.size(), {0.0, 0.0});
    for (const auto& term : k.terms) {
        const std::int64_t off = term.offset % n;
        const double w = term.weight;
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t fwd = (i + off < n) ? i + off : i + off - n;
            const std::int64_t bwd = (i - off >= 0) ? i - off : i - off + n;
            out[i] += w * (field[i] - 0.5 * (field[fwd] + field[bwd]));
        }
    }
    return out;
}

double weierstrass_operator_eigenvalue(int a, double b, int order, double h,
                                       double wavenumber) {
    if (a < 2)
        throw parameter_error("weierstrass_operator_eigenvalue: a must be >= 2");
    if (!(b > 0.0) || !(b < 1.0))
        throw parameter_error(
            "weierstrass_operator_eigenvalue: b must lie strictly in (0,1)");
    if (order < 0)
        throw parameter_error("weierstrass_operator_eigenvalue: order must be >= 0");
    if (!(h > 0.0) || !std::isfinite(h) || !std::isfinite(wavenumber))
        throw parameter_error("weierstrass_operator_eigenvalue: bad h or wavenumber");

    // sum b^m cos(a^m h k) is the Weierstrass series at x = h k / pi;
    // reduce the cosine argument mod 2 exactly as weierstrass_eval does so
    // the identity holds to machine precision for any truncation order.
    double r = std::fmod((h * wavenumber) / kPi, 2.0);
    double sum = 0.0;
    double b_pow = 1.0;
    const double a_d = static_cast<double>(a);
    for (int m = 0; m <= order; ++m) {
        sum += b_pow * std::cos(kPi * r);
        r = std::fmod(a_d * r, 2.0);
        b_pow *= b;
    }
    return sum;
}

double max_ring_frequency(const InteractionKernel& k, std::int64_t n_particles) {
    if (n_particles < 2)
        throw parameter_error("max_ring_frequency: need n_particles >= 2");
    double w_max = 0.0;
    for (std::int64_t j = 0; j < n_particles; ++j) {
        const double kj = 2.0 * kPi * static_cast<double>(j) /
                          (static_cast<double>(n_particles) * k.h);
        w_max = std::max(w_max, omega_of_k(k, kj));
    }
    return w_max;
}

void validate_sim_config(const InteractionKernel& k, std::int64_t n_particles,
                         const SimConfig& cfg) {
    cfg.validate();
    const double w_max = max_ring_frequency(k, n_particles);
    if (!(cfg.dt * w_max < 2.0))
        throw parameter_error(
            "SimConfig: dt * omega_max = " + std::to_string(cfg.dt * w_max) +
            " violates the stability guard dt * omega_max < 2");
}

namespace {

// Concentrated least squares for P(t) ~ A cos(W t) + B sin(W t):
// residual sum of squares after solving the 2x2 normal equations.
double sinusoid_rss(const std::vector<double>& t, const std::vector<double>& p,
                    double w) {
    double scc = 0, sss = 0, scs = 0, spc = 0, sps = 0, spp = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double c = std::cos(w * t[i]);
        const double s = std::sin(w * t[i]);
        scc += c * c; sss += s * s; scs += c * s;
        spc += p[i] * c; sps += p[i] * s; spp += p[i] * p[i];
    }
    const double det = scc * sss - scs * scs;
    if (std::abs(det) < 1e-300) return spp;
    const double A = (spc * sss - sps * scs) / det;
    const double B = (sps * scc - spc * scs) / det;
    return spp - (A * spc + B * sps);
}

} // namespace

double measure_mode_frequency(const Trajectory& tr, std::int64_t mode_index) {
    if (tr.displacements.size() < 8 || tr.times.size() != tr.displacements.size())
        throw protocol_error(
            "measure_mode_frequency: trajectory too short (need >= 8 samples)");
    if (!(tr.dt > 0.0))
        throw protocol_error("measure_mode_frequency: trajectory lacks the "
                             "integration step size");
    const auto n = static_cast<std::int64_t>(tr.displacements.front().size());
    if (mode_index < 0 || mode_index >= n)
        throw parameter_error("measure_mode_frequency: mode_index out of range");

    // Project every snapshot on the mode profile cos(2 pi j n / N).
    std::vector<double> profile(n);
    double norm = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        profile[i] = std::cos(2.0 * kPi * static_cast<double>(mode_index) *
                              static_cast<double>(i) / static_cast<double>(n));
        norm += profile[i] * profile[i];
    }
    const auto n_samp = tr.times.size();
    std::vector<double> proj(n_samp);
    double p_max = 0.0;
    for (std::size_t s = 0; s < n_samp; ++s) {
        const auto& u = tr.displacements[s];
        if (static_cast<std::int64_t>(u.size()) != n)
            throw protocol_error("measure_mode_frequency: ragged snapshots");
        double dot = 0.0;
        for (std::int64_t i = 0; i < n; ++i) dot += u[i] * profile[i];
        proj[s] = dot / norm;
        p_max = std::max(p_max, std::abs(proj[s]));
    }

    // Constant projection (mode 0, or nothing in this mode): frequency 0.
    double spread = 0.0;
    for (double p : proj) spread = std::max(spread, std::abs(p - proj.front()));
    if (spread <= 1e-9 * std::max(1.0, p_max)) return 0.0;

    const double t0 = tr.times.front();
    std::vector<double> t_rel(n_samp);
    for (std::size_t s = 0; s < n_samp; ++s) t_rel[s] = tr.times[s] - t0;
    const double t_span = t_rel.back();
    if (!(t_span > 0.0))
        throw protocol_error("measure_mode_frequency: zero time span");

    // Discrete-spectrum peak as the initial guess. The sampling stride caps
    // the resolvable frequency at pi / min_stride.
    double stride = std::numeric_limits<double>::infinity();
    for (std::size_t s = 1; s < n_samp; ++s)
        stride = std::min(stride, t_rel[s] - t_rel[s - 1]);
    if (!(stride > 0.0))
        throw protocol_error("measure_mode_frequency: times not increasing");
    const double w_nyq = kPi / stride;
    const double dw = 2.0 * kPi / (4.0 * t_span); // 4x oversampled bins
    double best_w = dw, best_power = -1.0;
    for (double w = dw; w <= w_nyq; w += dw) {
        double re = 0.0, im = 0.0;
        for (std::size_t s = 0; s < n_samp; ++s) {
            re += proj[s] * std::cos(w * t_rel[s]);
            im += proj[s] * std::sin(w * t_rel[s]);
        }
        const double power = re * re + im * im;
        if (power > best_power) { best_power = power; best_w = w; }
    }

    // Golden-section refinement of the concentrated least-squares objective
    // around the peak bin.
    double lo = std::max(best_w - dw, 0.25 * dw);
    double hi = std::min(best_w + dw, w_nyq);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = sinusoid_rss(t_rel, proj, x1);
    double f2 = sinusoid_rss(t_rel, proj, x2);
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = sinusoid_rss(t_rel, proj, x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = sinusoid_rss(t_rel, proj, x2);
        }
    }
    const double w_fit = 0.5 * (lo + hi);

    double rss = sinusoid_rss(t_rel, proj, w_fit);
    double p_energy = 0.0;
    for (double p : proj) p_energy += p * p;
    const double residual =
        (p_energy > 0.0) ? std::sqrt(std::max(0.0, rss) / p_energy) : 0.0;
    if (residual > 1e-3)
        throw fit_error("measure_mode_frequency: sinusoid fit residual " +
                            std::to_string(residual) + " exceeds 1e-3",
                        residual);

    if (w_fit * t_span < 4.0 * 2.0 * kPi)
        throw protocol_error(
            "measure_mode_frequency: trajectory covers fewer than 4 "
            "oscillation periods");

    // Verlet frequency bias: a mode of true frequency w oscillates
    // numerically at (2/dt) asin(w dt / 2); invert it.
    const double half = 0.5 * w_fit * tr.dt;
    if (half >= 0.5 * kPi)
        throw numeric_error(
            "measure_mode_frequency: fitted frequency beyond the Verlet "
            "stability limit");
    return (2.0 / tr.dt) * std::sin(half);
}

DispersionCurve sample_dispersion(const InteractionKernel& k,
                                  const std::vector<double>& k_grid) {
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        if (!std::isfinite(k_grid[i]))
            throw protocol_error("sample_dispersion: non-finite grid point");
        if (i > 0 && k_grid[i] < k_grid[i - 1])
            throw protocol_error("sample_dispersion: grid must be sorted");
    }
    DispersionCurve curve;
    curve.k = k_grid;
    curve.lambda.resize(k_grid.size());
    curve.omega.resize(k_grid.size());
    curve.kernel_id = k.id;

    const double w_scale = 2.0 * (k.c * k.c) / (k.h * k.h);
    auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double lam = lambda_of_k(k, k_grid[i]);
            curve.lambda[i] = lam;
            curve.omega[i] = std::sqrt(w_scale * lam);
        }
    };

    const int cap = thread_cap();
    const std::size_t min_chunk = 2048;
    if (cap > 1 && k_grid.size() >= 2 * min_chunk) {
        const std::size_t n_threads =
            std::min<std::size_t>(cap, k_grid.size() / min_chunk);
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        const std::size_t chunk = (k_grid.size() + n_threads - 1) / n_threads;
        for (std::size_t t = 0; t < n_threads; ++t) {
            const std::size_t b = t * chunk;
            const std::size_t e = std::min(k_grid.size(), b + chunk);
            if (b < e) pool.emplace_back(eval_range, b, e);
        }
        for (auto& th : pool) th.join();
    } else {
        eval_range(0, k_grid.size());
    }
    return curve;
}

std::vector<SlopeProbePoint>
group_velocity_divergence_probe(int a, double b, double h, double wavenumber,
                                const std::vector<int>& orders) {
    if (a < 2)
        throw parameter_error("group_velocity_divergence_probe: a must be >= 2");
    if (!(b > 0.0) || !(b < 1.0))
        throw parameter_error(
            "group_velocity_divergence_probe: b must lie strictly in (0,1)");
    if (!(h > 0.0) || !std::isfinite(h) || !std::isfinite(wavenumber))
        throw parameter_error("group_velocity_divergence_probe: bad h or wavenumber");
    if (static_cast<double>(a) * b <= 1.0)
        throw regime_error(
            "group_velocity_divergence_probe: a*b = " +
            std::to_string(static_cast<double>(a) * b) +
            " <= 1; the truncated derivative converges and the probe is "
            "meaningless");
    if (orders.empty())
        throw protocol_error("group_velocity_divergence_probe: empty order list");
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 0)
            throw parameter_error("group_velocity_divergence_probe: orders must be >= 0");
        if (i > 0 && orders[i] <= orders[i - 1])
            throw protocol_error(
                "group_velocity_divergence_probe: orders must be strictly increasing");
    }

    const double half_window = 0.05 / h;
    const double k_lo = wavenumber - half_window;
    const double k_hi = wavenumber + half_window;

    std::vector<SlopeProbePoint> out;
    out.reserve(orders.size());
    for (int order : orders) {
        // d lambda_M / dk = sum_{m<=M} b^m h a^m sin(h a^m k); sample finely
        // enough to resolve the fastest oscillation (>= 8 points per period).
        const double a_top = std::pow(static_cast<double>(a), order);
        double want = (k_hi - k_lo) * h * a_top * 8.0 / (2.0 * kPi);
        const auto n_sub = static_cast<std::int64_t>(
            std::clamp(want, 1000.0, 4.0e6)) + 1;

        const double ab = static_cast<double>(a) * b;
        const double a_d = static_cast<double>(a);
        double max_slope = 0.0;
        for (std::int64_t i = 0; i <= n_sub; ++i) {
            const double kk =
                k_lo + (k_hi - k_lo) * static_cast<double>(i) /
                           static_cast<double>(n_sub);
            double deriv = 0.0;
            double coeff = h; // b^m h a^m
            double freq = h;  // h a^m
            for (int m = 0; m <= order; ++m) {
                deriv += coeff * std::sin(freq * kk);
                coeff *= ab;
                freq *= a_d;
            }
            max_slope = std::max(max_slope, std::abs(deriv));
        }
        out.push_back({order, max_slope});
    }
    return out;
}

} // namespace fractal_chain
