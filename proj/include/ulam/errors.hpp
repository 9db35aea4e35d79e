#ifndef ULAM_ERRORS_HPP
#define ULAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ulam {

// 64-bit arithmetic left the representable range.
struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Memory or I/O limit hit; message carries how far we got.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solver hit its cap; carries the last estimate.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double last)
        : std::runtime_error(what), last_estimate(last) {}
    double last_estimate;
};

// Input data contradicts a structural guarantee (corrupt cache, non-Ulam input).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ulam

#endif
