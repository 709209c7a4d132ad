#pragma once

#include <stdexcept>
#include <string>

namespace omforce {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input value violates a parameter invariant. The message names the
/// offending field or key.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// The mean-field solver did not converge within its iteration budget
/// (typically a bistable or critical drive regime).
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// The effective mechanical frequency is non-positive at the solution:
/// the soft mode has collapsed and the operating point is unphysical.
class UnphysicalSoftMode : public Error {
public:
    using Error::Error;
};

/// The measured quadrature carries no force signal (|P_xi| = 0 or zero
/// measurement strength); the inferred force noise diverges.
class DivergentSensitivity : public Error {
public:
    using Error::Error;
};

/// A bracketed minimization was requested on a range that contains no
/// interior minimum (or no feasible point at all).
class BracketError : public Error {
public:
    using Error::Error;
};

/// The linearized dynamics are unstable at the requested operating point,
/// so the stationary noise spectrum is not defined there.
class UnstableOperatingPoint : public Error {
public:
    using Error::Error;
};

} // namespace omforce
