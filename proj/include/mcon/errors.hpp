#pragma once

#include <stdexcept>
#include <string>

namespace mcon {

struct error : std::runtime_error {
    explicit error(const std::string &msg) : std::runtime_error(msg) {}
};

// Mixing exact and floating scalars in one operation.
struct backend_mismatch : error {
    explicit backend_mismatch(const std::string &msg) : error(msg) {}
};

// Bad input data: duplicate poles, wrong sizes, malformed JSON.
struct config_error : error {
    explicit config_error(const std::string &msg) : error(msg) {}
};

// Division by zero and friends.
struct arithmetic_error : error {
    explicit arithmetic_error(const std::string &msg) : error(msg) {}
};

// A construction ran into a degenerate configuration (theta4 = 0, scalar
// residue where a non-scalar one is required, singular linear system, ...).
struct degenerate_error : error {
    explicit degenerate_error(const std::string &msg) : error(msg) {}
};

// The requested point sits on the triangular (non-Hausdorff) locus.
struct triangular_locus_error : error {
    explicit triangular_locus_error(const std::string &msg) : error(msg) {}
};

// Input data violates a defining relation (e.g. point off the cubic).
struct inconsistency_error : error {
    explicit inconsistency_error(const std::string &msg) : error(msg) {}
};

// Operation requires an irreducible connection.
struct reducible_error : error {
    explicit reducible_error(const std::string &msg) : error(msg) {}
};

// A gauge move violated its precondition.
struct gauge_error : error {
    explicit gauge_error(const std::string &msg) : error(msg) {}
};

// Degree bounds / splitting detection failed.
struct bounds_error : error {
    explicit bounds_error(const std::string &msg) : error(msg) {}
};

} // namespace mcon
