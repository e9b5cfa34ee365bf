#ifndef OPTOLEVER_ERRORS_HPP
#define OPTOLEVER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace optolever {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Bad argument to a domain function (nonpositive frequency, bad grid, ...).
class InvalidArgument : public Error
{
public:
    using Error::Error;
};

class SingularCurvature : public Error
{
public:
    using Error::Error;
};

// Displacement or tilt too large for the first-order mode expansion.
class SmallSignalViolation : public Error
{
public:
    using Error::Error;
};

class QuadratureNotConverged : public Error
{
public:
    using Error::Error;
};

// Readout angle at which the signal gain vanishes (pure a1 readout).
class DegenerateReadout : public Error
{
public:
    using Error::Error;
};

class NoPhysicalSolution : public Error
{
public:
    using Error::Error;
};

class NoCancellation : public Error
{
public:
    using Error::Error;
};

// Numerical cross-check of a closed-form solver result failed.
class VerificationFailed : public Error
{
public:
    using Error::Error;
};

} // namespace optolever

#endif // OPTOLEVER_ERRORS_HPP
