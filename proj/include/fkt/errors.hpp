#pragma once

#include <stdexcept>
#include <string>

namespace fkt {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad grid size or mismatched grids.
class SizingError : public Error {
public:
    using Error::Error;
};

/// A harmonic at or above the grid's Nyquist wavenumber.
class AliasingError : public Error {
public:
    using Error::Error;
};

/// Precondition on a numeric argument violated (non-finite values, bad dt, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Sign-fixed principal eigenvector has a nonpositive node.
class PositivityViolation : public Error {
public:
    using Error::Error;
};

/// Principal eigenvalue not separated from the rest of the spectrum.
class DegenerateGap : public Error {
public:
    using Error::Error;
};

/// A linear solve or factorization failed.
class SolverFailure : public Error {
public:
    using Error::Error;
};

/// Two algebraically equal routes disagree beyond tolerance.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

}  // namespace fkt
