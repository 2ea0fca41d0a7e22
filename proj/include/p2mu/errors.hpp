#pragma once

#include <stdexcept>
#include <string>

namespace p2mu {

/// Base class for all p2mu errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Requested operation exceeds a configured capability (degree cap, unknown component type, ...).
struct capability_error : error {
    using error::error;
};

/// Argument outside the mathematical domain of the operation.
struct domain_error : error {
    using error::error;
};

/// A stated precondition of the operation is violated.
struct precondition_error : error {
    using error::error;
};

/// Principal value does not exist at the requested point (e.g. an atom sits there).
struct pv_undefined_error : error {
    using error::error;
};

/// Not enough usable data to produce an estimate (e.g. a whole shell was flagged).
struct insufficient_data_error : error {
    using error::error;
};

/// Numerical factorization or solve failed beyond tolerances.
struct numerical_error : error {
    using error::error;
};

/// Malformed input text (measure spec files, grid specs).
struct parse_error : error {
    using error::error;
};

} // namespace p2mu
