// errors.hpp — Exception types used across the library

#pragma once

#include <stdexcept>
#include <string>

namespace qbet {

// Base class for everything thrown on purpose by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or inconsistent configuration (bad spec fields, scenario mismatch,
// missing mediator, malformed run configs).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// A call violated a documented precondition (overlapping legs, invalid k,
// mismatched grids, bad step size).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

// The closed-form path cannot handle this input (detuned spec, non-unit
// amplitudes, incomplete first leg); the numerical propagator can.
class UnsupportedByAnalytic : public Error {
public:
    explicit UnsupportedByAnalytic(const std::string& what) : Error(what) {}
};

// A numerical method failed its own accuracy watchdog.
class AccuracyError : public Error {
public:
    explicit AccuracyError(const std::string& what) : Error(what) {}
};

} // namespace qbet
