#pragma once

#include <stdexcept>
#include <string>

namespace collox {

/// Thrown when a linear system cannot be factored. `index` identifies the
/// offending block (block solves) or interpolation site (collocation matrix);
/// -1 marks the initial-condition rows.
class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(std::string what, int index)
        : std::runtime_error(std::move(what)), index_(index) {}

    int index() const noexcept { return index_; }

private:
    int index_;
};

/// Thrown by the Newton iteration when an iterate blows up (non-finite
/// coefficients or runaway right-end value).
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::string what, int iteration)
        : std::runtime_error(std::move(what)), iteration_(iteration) {}

    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace collox
