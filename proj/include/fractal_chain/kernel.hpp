#ifndef FRACTAL_CHAIN_KERNEL_HPP
#define FRACTAL_CHAIN_KERNEL_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fractal_chain {

struct KernelTerm {
    std::int64_t offset; // a(m), positive integer
    double weight;       // b(m), positive real

    friend bool operator==(const KernelTerm&, const KernelTerm&) = default;
};

// Finite interaction kernel: particle n couples to n +- offset with the given
// weight, for every stored term. The equation of motion is
//   d^2 u_n / dt^2 = (c^2/h^2) sum_m b(m) [u_{n+a(m)} - 2 u_n + u_{n-a(m)}].
// Terms are kept sorted by strictly increasing offset; duplicate offsets are
// merged by summing weights at construction. Immutable after construction.
struct InteractionKernel {
    std::vector<KernelTerm> terms;
    double c = 1.0;          // wave-speed constant, > 0
    double h = 1.0;          // lattice spacing, > 0
    double weight_sum = 0.0; // cached sum of weights
    std::string id;          // provenance descriptor of the generating family

    std::int64_t max_offset() const;
};

// Kernel families.
struct NearestNeighbor {}; // single term (1, 1)

// a(m) = a^m, b(m) = a^((d_graph-2) m), m = 0..order.
struct WMFractal {
    int a = 2;
    double d_graph = 1.5;
    int order = 0;
};

// a(m) = a^m, b(m) = b^m, m = 0..order.
struct GeometricWeierstrass {
    int a = 2;
    double b = 0.5;
    int order = 0;
};

struct ExplicitTerms {
    std::vector<KernelTerm> terms;
};

using KernelFamily =
    std::variant<NearestNeighbor, WMFractal, GeometricWeierstrass, ExplicitTerms>;

// Realize a family as a finite kernel. Deterministic: identical inputs give
// bit-identical kernels. Throws parameter_error on domain violations
// (a < 2, b outside (0,1), d_graph outside (1,2), non-positive weights,
// offsets overflowing 64-bit).
InteractionKernel build_kernel(const KernelFamily& f, double c, double h);

// Effective mass constant M^2 = 4 b / (h^2 (1 - b)) of the geometric-weight
// chain rearranged into Klein-Gordon-like form. Throws parameter_error for
// b outside [0,1) or h <= 0 (mass diverges at b = 1).
double effective_mass_squared(double b, double h);

// Ring-aliasing check: one warning per offset that wraps at least halfway
// around an n_particles ring (offset >= n_particles/2). Empty means clean.
std::vector<std::string> validate_kernel_for_ring(const InteractionKernel& k,
                                                  std::int64_t n_particles);

} // namespace fractal_chain

#endif
