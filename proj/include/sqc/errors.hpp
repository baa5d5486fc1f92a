#pragma once

#include <stdexcept>
#include <string>

namespace sqc {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation point outside the guaranteed convergence disc of a series.
class OutOfDisk : public Error {
public:
    using Error::Error;
};

class NonInvertibleAtZero : public Error {
public:
    using Error::Error;
};

class AxesNotOrthogonal : public Error {
public:
    using Error::Error;
};

/// Non-integer power requested on the negative real axis.
class BranchCut : public Error {
public:
    using Error::Error;
};

/// A limiting quadrature did not stabilize.
class Divergent : public Error {
public:
    using Error::Error;
};

class DifferentSlices : public Error {
public:
    using Error::Error;
};

class GridExhausted : public Error {
public:
    using Error::Error;
};

class ConfigInvalid : public Error {
public:
    using Error::Error;
};

}  // namespace sqc
