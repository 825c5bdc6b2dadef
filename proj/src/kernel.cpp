#include "fractal_chain/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fractal_chain/errors.hpp"

namespace fractal_chain {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_constants(double c, double h) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw parameter_error("build_kernel: c must be > 0");
    if (!(h > 0.0) || !std::isfinite(h))
        throw parameter_error("build_kernel: h must be > 0");
}

// a^m as int64 with overflow detection.
std::int64_t pow_offset(int a, int m) {
    std::int64_t r = 1;
    for (int i = 0; i < m; ++i) {
        if (r > std::numeric_limits<std::int64_t>::max() / a)
            throw parameter_error(
                "build_kernel: offset a^m overflows 64-bit integer (a=" +
                std::to_string(a) + ", m=" + std::to_string(m) + ")");
        r *= a;
    }
    return r;
}

// Sort by offset, merge duplicates weight-additively, validate positivity.
std::vector<KernelTerm> normalize_terms(std::vector<KernelTerm> terms) {
    if (terms.empty())
        throw parameter_error("build_kernel: kernel needs at least one term");
    for (const auto& t : terms) {
        if (t.offset < 1)
            throw parameter_error("build_kernel: offsets must be positive integers");
        if (!(t.weight > 0.0) || !std::isfinite(t.weight))
            throw parameter_error("build_kernel: weights must be positive and finite");
    }
    std::stable_sort(terms.begin(), terms.end(),
                     [](const KernelTerm& l, const KernelTerm& r) {
                         return l.offset < r.offset;
                     });
    std::vector<KernelTerm> merged;
    merged.reserve(terms.size());
    for (const auto& t : terms) {
        if (!merged.empty() && merged.back().offset == t.offset)
            merged.back().weight += t.weight;
        else
            merged.push_back(t);
    }
    return merged;
}

InteractionKernel finish(std::vector<KernelTerm> terms, double c, double h,
                         std::string id) {
    InteractionKernel k;
    k.terms = normalize_terms(std::move(terms));
    k.c = c;
    k.h = h;
    k.weight_sum = 0.0;
    for (const auto& t : k.terms) k.weight_sum += t.weight;
    k.id = std::move(id);
    return k;
}

} // namespace

std::int64_t InteractionKernel::max_offset() const {
    return terms.empty() ? 0 : terms.back().offset;
}

InteractionKernel build_kernel(const KernelFamily& f, double c, double h) {
    check_constants(c, h);
    const std::string suffix = ",c=" + fmt(c) + ",h=" + fmt(h) + ")";

    if (std::holds_alternative<NearestNeighbor>(f)) {
        return finish({{1, 1.0}}, c, h,
                      "nearest_neighbor(c=" + fmt(c) + ",h=" + fmt(h) + ")");
    }
    if (const auto* wm = std::get_if<WMFractal>(&f)) {
        if (wm->a < 2)
            throw parameter_error("build_kernel: WMFractal needs a >= 2");
        if (!(wm->d_graph > 1.0) || !(wm->d_graph < 2.0))
            throw parameter_error(
                "build_kernel: WMFractal needs d_graph strictly in (1,2)");
        if (wm->order < 0)
            throw parameter_error("build_kernel: truncation order must be >= 0");
        std::vector<KernelTerm> terms;
        terms.reserve(wm->order + 1);
        for (int m = 0; m <= wm->order; ++m) {
            const double w = std::pow(static_cast<double>(wm->a),
                                      (wm->d_graph - 2.0) * m);
            terms.push_back({pow_offset(wm->a, m), w});
        }
        return finish(std::move(terms), c, h,
                      "wm_fractal(a=" + std::to_string(wm->a) +
                          ",d_graph=" + fmt(wm->d_graph) +
                          ",order=" + std::to_string(wm->order) + suffix);
    }
    if (const auto* gw = std::get_if<GeometricWeierstrass>(&f)) {
        if (gw->a < 2)
            throw parameter_error("build_kernel: GeometricWeierstrass needs a >= 2");
        if (!(gw->b > 0.0) || !(gw->b < 1.0))
            throw parameter_error(
                "build_kernel: GeometricWeierstrass needs b strictly in (0,1)");
        if (gw->order < 0)
            throw parameter_error("build_kernel: truncation order must be >= 0");
        std::vector<KernelTerm> terms;
        terms.reserve(gw->order + 1);
        double w = 1.0;
        for (int m = 0; m <= gw->order; ++m) {
            terms.push_back({pow_offset(gw->a, m), w});
            w *= gw->b;
        }
        return finish(std::move(terms), c, h,
                      "geometric_weierstrass(a=" + std::to_string(gw->a) +
                          ",b=" + fmt(gw->b) +
                          ",order=" + std::to_string(gw->order) + suffix);
    }
    const auto& ex = std::get<ExplicitTerms>(f);
    return finish(ex.terms, c, h,
                  "explicit(n_terms=" + std::to_string(ex.terms.size()) + suffix);
}

double effective_mass_squared(double b, double h) {
    if (!(b >= 0.0) || b >= 1.0 || !std::isfinite(b))
        throw parameter_error(
            "effective_mass_squared: b must lie in [0,1) (mass diverges at b=1)");
    if (!(h > 0.0) || !std::isfinite(h))
        throw parameter_error("effective_mass_squared: h must be > 0");
    return 4.0 * b / (h * h * (1.0 - b));
}

std::vector<std::string> validate_kernel_for_ring(const InteractionKernel& k,
                                                  std::int64_t n_particles) {
    if (n_particles < 2)
        throw parameter_error("validate_kernel_for_ring: need n_particles >= 2");
    std::vector<std::string> warnings;
    for (const auto& t : k.terms) {
        if (2 * t.offset >= n_particles)
            warnings.push_back(
                "offset " + std::to_string(t.offset) +
                " wraps at least halfway around the " +
                std::to_string(n_particles) +
                "-particle ring; the coupling aliases onto nearer neighbours");
    }
    return warnings;
}

} // namespace fractal_chain
