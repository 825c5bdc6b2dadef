#ifndef FRACTAL_CHAIN_ERRORS_HPP
#define FRACTAL_CHAIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fractal_chain {

// Invalid parameter domain (b outside (0,1), d_graph outside (1,2), ...).
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Degenerate geometry (zero x-range graph, too few points, ...).
class geometry_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller violated a usage contract (too few scales, too-short trajectory, ...).
class protocol_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite values or numerically meaningless results.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operation requested outside its physical regime (e.g. divergence probe with ab <= 1).
class regime_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Least-squares fit did not reach the required quality; carries the residual.
class fit_error : public std::runtime_error {
public:
    fit_error(const std::string& msg, double residual)
        : std::runtime_error(msg), residual(residual) {}
    double residual;
};

// Malformed input/output files.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fractal_chain

#endif
