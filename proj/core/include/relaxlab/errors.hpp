#pragma once

#include <stdexcept>
#include <string>

namespace relaxlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameter outside the admissible set (|a| >= 1, gamma outside (1,2], t <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Non-finite or malformed field samples.
class DataError : public Error {
public:
    using Error::Error;
};

// Two inputs that must describe the same problem disagree (mass, grid size).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class CalibrationError : public Error {
public:
    using Error::Error;
};

class ToleranceError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class AliasingError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, double last_good_time)
        : Error(what), last_good_time_(last_good_time) {}
    double last_good_time() const { return last_good_time_; }

private:
    double last_good_time_;
};

class TruncationError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace relaxlab
