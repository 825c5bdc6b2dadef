#include "fractal_chain/weierstrass.hpp"

#include <cmath>
#include <string>

#include "fractal_chain/errors.hpp"

namespace fractal_chain {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void WeierstrassParams::validate() const {
    if (a < 2)
        throw parameter_error("WeierstrassParams: a must be an integer >= 2, got " +
                              std::to_string(a));
    if (!(b > 0.0) || !(b < 1.0))
        throw parameter_error("WeierstrassParams: b must lie strictly in (0,1), got " +
                              std::to_string(b));
    if (n_max < 0)
        throw parameter_error("WeierstrassParams: n_max must be >= 0, got " +
                              std::to_string(n_max));
    if (fractal && a * b < 1.0)
        throw parameter_error(
            "WeierstrassParams: params flagged fractal need a*b >= 1, got a*b = " +
            std::to_string(a * b));
}

double weierstrass_eval(const WeierstrassParams& p, double x) {
    p.validate();
    if (!std::isfinite(x))
        throw parameter_error("weierstrass_eval: x is not finite");

    // cos(a^n pi x) = cos(pi r_n) with r_0 = x mod 2, r_{n+1} = (a r_n) mod 2.
    // The reduction keeps every cosine argument in (-2pi, 2pi) and is exact
    // for dyadic x, where a*r_n never needs more mantissa bits than x itself.
    double r = std::fmod(x, 2.0);
    double sum = 0.0;
    double b_pow = 1.0;
    const double a_d = static_cast<double>(p.a);
    for (int n = 0; n <= p.n_max; ++n) {
        sum += b_pow * std::cos(kPi * r);
        r = std::fmod(a_d * r, 2.0);
        b_pow *= p.b;
    }
    return sum;
}

double weierstrass_tail_bound(const WeierstrassParams& p) {
    p.validate();
    return std::pow(p.b, p.n_max + 1) / (1.0 - p.b);
}

void WMParams::validate() const {
    if (a < 2)
        throw parameter_error("WMParams: a must be an integer >= 2, got " +
                              std::to_string(a));
    if (!(d_graph > 1.0) || !(d_graph < 2.0))
        throw parameter_error(
            "WMParams: d_graph must lie strictly in (1,2), got " +
            std::to_string(d_graph));
    if (m_lo > 0)
        throw parameter_error("WMParams: m_lo must be <= 0, got " +
                              std::to_string(m_lo));
    if (m_hi < 0)
        throw parameter_error("WMParams: m_hi must be >= 0, got " +
                              std::to_string(m_hi));
    if (static_cast<double>(m_hi) * std::log(static_cast<double>(a)) > 700.0)
        throw parameter_error(
            "WMParams: a^m_hi overflows double precision; reduce m_hi");
}

double wm_cosine_eval(const WMParams& p, double z) {
    p.validate();
    if (!std::isfinite(z))
        throw parameter_error("wm_cosine_eval: z is not finite");

    const double a_d = static_cast<double>(p.a);
    const double w_exp = p.d_graph - 2.0; // weight exponent, < 0
    double sum = 0.0;
    // a^m stays exact for a = 2 (pure exponent shifts) and for a^m < 2^53
    // otherwise, so 1 - cos(a^m z) = 2 sin^2(a^m z / 2) is evaluated on the
    // most accurate argument available. Ascending m, fixed order.
    double freq = std::pow(a_d, static_cast<double>(p.m_lo));
    for (int m = p.m_lo; m <= p.m_hi; ++m) {
        const double s = std::sin(0.5 * freq * z);
        sum += std::pow(a_d, w_exp * static_cast<double>(m)) * (2.0 * s * s);
        freq *= a_d;
    }
    return sum;
}

double wm_tail_bound(const WMParams& p, double z) {
    p.validate();
    if (!std::isfinite(z))
        throw parameter_error("wm_tail_bound: z is not finite");

    const double a_d = static_cast<double>(p.a);
    const double q = std::pow(a_d, p.d_graph - 2.0); // upper-tail ratio, < 1
    const double upper =
        2.0 * std::pow(a_d, (p.d_graph - 2.0) * (p.m_hi + 1)) / (1.0 - q);
    const double lower = 0.5 * z * z *
                         std::pow(a_d, p.d_graph * static_cast<double>(p.m_lo)) /
                         (std::pow(a_d, p.d_graph) - 1.0);
    return upper + lower;
}

} // namespace fractal_chain
