// Exception types shared across the spherelab modules.
#pragma once

#include <stdexcept>
#include <string>

namespace spherelab {

// A materialized value (factorial digits, enumerated points, DP table size)
// would exceed the configured resource budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument above the configured table range, or an exact integer count would
// overflow its carrier type.
struct RangeExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Trial division up to 1e6 plus a single prime cofactor did not factor the
// modulus.
struct FactorizationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Normalized averaging over a sphere with no lattice points.
struct EmptySphere : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedDimension : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cutoff supports around distinct rational centers are required to be
// disjoint; raised when a requested scale violates that.
struct SupportOverlap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Log-log decay fit impossible: fewer than three usable data points.
struct DegenerateFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spherelab
