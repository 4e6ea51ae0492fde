#ifndef SVWM_ERRORS_HPP
#define SVWM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace svwm {

// Shape disagreement between operands (mat_mul inner dims, key/suspect shape, ...).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A stated precondition was violated (alpha <= 0, negative sigma, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Correlation is undefined because an input has no variance.
class ZeroVarianceError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// Malformed input bytes; carries the byte offset where parsing failed.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Iteration failed to converge; carries the residual at the sweep limit.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const { return residual_; }

private:
    double residual_;
};

// Key file is malformed, truncated, or violates the key invariants.
class KeyFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem read/write failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace svwm

#endif // SVWM_ERRORS_HPP
