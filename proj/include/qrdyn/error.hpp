#pragma once

#include <stdexcept>

namespace qrdyn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Out-of-domain input: K <= 1, |mu| >= 1, a non-fixed angle, and so on.
struct InvalidParameter : Error {
    using Error::Error;
};

struct NumericalFailure : Error {
    using Error::Error;
};

struct ResourceLimit : Error {
    using Error::Error;
};

/// The map has no non-repelling fixed ray, so there is no immediate basin.
struct NoBasin : Error {
    using Error::Error;
};

}  // namespace qrdyn
