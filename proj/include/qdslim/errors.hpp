#ifndef QDSLIM_ERRORS_HPP
#define QDSLIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdslim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidDimensionError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

// Truncated basis cannot represent the requested object; carries the dimension
// that would suffice.
struct TruncationError : Error {
    int suggested_dim;
    TruncationError(const std::string& what, int suggested)
        : Error(what), suggested_dim(suggested) {}
};

// Pure-state bound requested outside its admissible time window.
struct TimeWindowError : Error {
    double max_dt;
    TimeWindowError(const std::string& what, double max_admissible)
        : Error(what), max_dt(max_admissible) {}
};

struct InfeasibleConstraintError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

}  // namespace qdslim

#endif
