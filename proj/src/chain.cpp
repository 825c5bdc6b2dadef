#include "fractal_chain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fractal_chain/errors.hpp"

namespace fractal_chain {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDivergenceFactor = 1e6;

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace

void ChainState::validate() const {
    if (u.size() != v.size())
        throw parameter_error("ChainState: u and v lengths differ");
    if (u.size() < 2)
        throw parameter_error("ChainState: need at least 2 particles");
    if (!all_finite(u) || !all_finite(v) || !std::isfinite(t))
        throw numeric_error("ChainState: non-finite entries");
}

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw parameter_error("SimConfig: dt must be > 0");
    if (n_steps < 0)
        throw parameter_error("SimConfig: n_steps must be >= 0");
    if (record_every < 1)
        throw parameter_error("SimConfig: record_every must be >= 1");
}

void accelerations(const InteractionKernel& k, std::span<const double> u,
                   std::span<double> acc) {
    const auto n = static_cast<std::int64_t>(u.size());
    if (n < 2)
        throw parameter_error("accelerations: need at least 2 particles");
    if (acc.size() != u.size())
        throw parameter_error("accelerations: output size mismatch");
    if (!all_finite(u))
        throw numeric_error("accelerations: non-finite displacement");

    std::fill(acc.begin(), acc.end(), 0.0);
    // Terms outer (ascending offsets), particles inner: fixed summation
    // order, two strided passes per term.
    for (const auto& term : k.terms) {
        const std::int64_t off = term.offset % n;
        const double w = term.weight;
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t fwd = (i + off < n) ? i + off : i + off - n;
            const std::int64_t bwd = (i - off >= 0) ? i - off : i - off + n;
            acc[i] += w * (u[fwd] - 2.0 * u[i] + u[bwd]);
        }
    }
    const double scale = (k.c * k.c) / (k.h * k.h);
    for (std::int64_t i = 0; i < n; ++i) acc[i] *= scale;
}

std::vector<double> accelerations(const InteractionKernel& k,
                                  const std::vector<double>& u) {
    std::vector<double> acc(u.size());
    accelerations(k, std::span<const double>(u), std::span<double>(acc));
    return acc;
}

double total_energy(const InteractionKernel& k, const ChainState& s) {
    s.validate();
    const auto n = static_cast<std::int64_t>(s.u.size());
    double kinetic = 0.0;
    for (double vi : s.v) kinetic += vi * vi;
    kinetic *= 0.5;

    double potential = 0.0;
    for (const auto& term : k.terms) {
        const std::int64_t off = term.offset % n;
        double bond = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t fwd = (i + off < n) ? i + off : i + off - n;
            const double d = s.u[fwd] - s.u[i];
            bond += d * d;
        }
        potential += term.weight * bond;
    }
    potential *= (k.c * k.c) / (2.0 * k.h * k.h);
    return kinetic + potential;
}

ChainState step_verlet(const InteractionKernel& k, const ChainState& s,
                       double dt) {
    s.validate();
    if (!std::isfinite(dt) || dt == 0.0)
        throw parameter_error("step_verlet: dt must be finite and non-zero");

    const auto n = s.u.size();
    ChainState next = s;
    std::vector<double> acc(n);
    accelerations(k, std::span<const double>(next.u), std::span<double>(acc));
    for (std::size_t i = 0; i < n; ++i) next.v[i] += 0.5 * dt * acc[i]; // half-kick
    for (std::size_t i = 0; i < n; ++i) next.u[i] += dt * next.v[i];    // drift
    accelerations(k, std::span<const double>(next.u), std::span<double>(acc));
    for (std::size_t i = 0; i < n; ++i) next.v[i] += 0.5 * dt * acc[i]; // half-kick
    next.t = s.t + dt;
    return next;
}

ChainState init_plane_wave(std::int64_t n, std::int64_t mode_index,
                           double amplitude, double h) {
    if (n < 2)
        throw parameter_error("init_plane_wave: need at least 2 particles");
    if (mode_index < 0 || mode_index >= n)
        throw parameter_error("init_plane_wave: mode_index " +
                              std::to_string(mode_index) +
                              " outside [0, " + std::to_string(n) + ")");
    if (!(h > 0.0) || !std::isfinite(h) || !std::isfinite(amplitude))
        throw parameter_error("init_plane_wave: bad amplitude or spacing");

    // k n h = 2 pi j n / N, independent of h.
    ChainState s;
    s.u.resize(n);
    s.v.assign(n, 0.0);
    const double phase = 2.0 * kPi * static_cast<double>(mode_index) /
                         static_cast<double>(n);
    for (std::int64_t i = 0; i < n; ++i)
        s.u[i] = amplitude * std::cos(phase * static_cast<double>(i));
    s.t = 0.0;
    return s;
}

Trajectory run(const InteractionKernel& k, const ChainState& s0,
               const SimConfig& cfg) {
    s0.validate();
    cfg.validate();

    const auto n = s0.u.size();
    const double amp0 = std::max(max_abs(s0.u), max_abs(s0.v));
    const double u_limit =
        (amp0 > 0.0) ? kDivergenceFactor * amp0
                     : std::numeric_limits<double>::infinity();

    Trajectory tr;
    tr.dt = cfg.dt;
    const auto n_records = cfg.n_steps / cfg.record_every + 2;
    tr.times.reserve(n_records);
    tr.displacements.reserve(n_records);
    tr.velocities.reserve(n_records);
    tr.energies.reserve(n_records);

    ChainState s = s0;
    auto record = [&](const ChainState& st) {
        tr.times.push_back(st.t);
        tr.displacements.push_back(st.u);
        tr.velocities.push_back(st.v);
        tr.energies.push_back(total_energy(k, st));
    };
    record(s);

    std::vector<double> acc(n);
    accelerations(k, std::span<const double>(s.u), std::span<double>(acc));
    for (std::int64_t step = 1; step <= cfg.n_steps; ++step) {
        // velocity Verlet with the closing half-kick's acceleration reused
        // as the next step's opening one
        for (std::size_t i = 0; i < n; ++i) s.v[i] += 0.5 * cfg.dt * acc[i];
        for (std::size_t i = 0; i < n; ++i) s.u[i] += cfg.dt * s.v[i];
        accelerations(k, std::span<const double>(s.u), std::span<double>(acc));
        for (std::size_t i = 0; i < n; ++i) s.v[i] += 0.5 * cfg.dt * acc[i];
        s.t = s0.t + static_cast<double>(step) * cfg.dt;

        const double umax = max_abs(s.u);
        if (!std::isfinite(umax) || umax > u_limit || !all_finite(s.v))
            throw divergence_error(
                "run: displacement exceeded " +
                    std::to_string(kDivergenceFactor) +
                    " x initial amplitude at step " + std::to_string(step),
                step, std::move(tr));

        if (step % cfg.record_every == 0 || step == cfg.n_steps) record(s);
    }
    return tr;
}

} // namespace fractal_chain
