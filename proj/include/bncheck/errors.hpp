#ifndef BNCHECK_ERRORS_HPP
#define BNCHECK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bncheck {

/// A parameter is outside the domain an operation accepts.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An input is too large for the requested code path (dense eigensolver,
/// brute-force clique oracle, vertex cap).
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Malformed graph text. `line()` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An eigensolver failed to reach its residual target within the iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_residual)
        : std::runtime_error(what + " (best residual " + std::to_string(best_residual) + ")"),
          best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// The clique search stopped on its time budget, so omega is only a lower bound.
class NonCertifiedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bncheck

#endif
