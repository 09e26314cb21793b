#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmfd {

/// Input outside the mathematical domain of an operation (negative density,
/// q < 1 for a gradient norm, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what, std::size_t index = npos)
        : std::domain_error(what), index_(index) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// Offending node index, or npos when the error is not tied to a node.
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// An explicit step left the invariant region [0, n_H] beyond rounding.
class StabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A nonlinear solve did not converge. Carries the last iterate so the
/// caller can fall back to another solver or inspect the failure.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::vector<double> iterate, long step = -1)
        : std::runtime_error(what), iterate_(std::move(iterate)), step_(step) {}

    const std::vector<double>& iterate() const noexcept { return iterate_; }
    long step() const noexcept { return step_; }

private:
    std::vector<double> iterate_;
    long step_;
};

/// Malformed or invalid experiment configuration.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string field = {}, int line = 0)
        : std::runtime_error(what), field_(std::move(field)), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

}  // namespace pmfd
