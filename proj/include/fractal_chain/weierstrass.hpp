#ifndef FRACTAL_CHAIN_WEIERSTRASS_HPP
#define FRACTAL_CHAIN_WEIERSTRASS_HPP

namespace fractal_chain {

// Parameters of the truncated Weierstrass series
//     W(x) = sum_{n=0}^{n_max} b^n cos(a^n pi x).
// The full series is continuous everywhere; for 0 < b < 1 and a*b >= 1 it is
// nowhere differentiable and its graph has box-counting dimension
// 2 + ln(b)/ln(a).
struct WeierstrassParams {
    int a = 2;          // integer frequency base, >= 2
    double b = 0.5;     // amplitude ratio, strictly in (0,1)
    int n_max = 0;      // truncation order, >= 0
    bool fractal = false; // when set, validation also enforces a*b >= 1

    void validate() const; // throws parameter_error
};

// Evaluate the truncated series. Summation runs in ascending n with the
// cosine argument reduced mod 2 at every step, so the result is
// bit-reproducible and exact for dyadic x even when a^n overflows a double.
double weierstrass_eval(const WeierstrassParams& p, double x);

// Geometric bound on the dropped tail: b^(n_max+1)/(1-b).
// Holds for every x since |b^n cos(...)| <= b^n.
double weierstrass_tail_bound(const WeierstrassParams& p);

// Parameters of the truncated cosine Weierstrass-Mandelbrot series
//     C(z) = sum_{m=m_lo}^{m_hi} a^((D-2)m) (1 - cos(a^m z)),
// the doubly infinite sum truncated to a finite window. Both tails converge
// exactly when 1 < D < 2 (upper needs D < 2, lower needs D > 1).
struct WMParams {
    int a = 2;            // integer frequency base, >= 2
    double d_graph = 1.5; // target graph dimension, strictly in (1,2)
    int m_lo = 0;         // lower truncation index, <= 0
    int m_hi = 0;         // upper truncation index, >= 0

    void validate() const; // throws parameter_error
};

// Evaluate the truncated series, ascending m. Non-negative for all z.
double wm_cosine_eval(const WMParams& p, double z);

// Two-sided tail bound U + L for the window [m_lo, m_hi]:
//   U = 2 a^((D-2)(m_hi+1)) / (1 - a^(D-2))      via |1 - cos| <= 2,
//   L = (z^2/2) a^(D m_lo) / (a^D - 1)           via 1 - cos(w) <= w^2/2.
double wm_tail_bound(const WMParams& p, double z);

} // namespace fractal_chain

#endif
