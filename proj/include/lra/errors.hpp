#pragma once

#include <stdexcept>

namespace lra {

// Invalid parameters: bad dimensions, out-of-range counts, mismatched sizes.
struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Unreadable files, malformed records, inconsistent corpora.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite inputs or failed numeric procedures.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Contours that violate the closed-polygon invariants.
struct invalid_contour_error : data_error {
    using data_error::data_error;
};

}  // namespace lra
