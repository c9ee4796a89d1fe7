#pragma once

#include <stdexcept>
#include <string>

namespace tct {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid arguments, malformed input files, broken preconditions.
/// CLI exit code 2.
class parameter_error : public error {
public:
    explicit parameter_error(const std::string& msg) : error(msg) {}
};

/// Argument outside the mathematical domain of an operation.
class domain_error : public parameter_error {
public:
    explicit domain_error(const std::string& msg) : parameter_error(msg) {}
};

/// Requested quantity does not exist for the given model
/// (e.g. density of a point mass).
class unsupported_error : public parameter_error {
public:
    explicit unsupported_error(const std::string& msg) : parameter_error(msg) {}
};

/// Numeric-integrity failures detected at run time. CLI exit code 3.
class numeric_error : public error {
public:
    explicit numeric_error(const std::string& msg) : error(msg) {}
};

/// Weight exponent exceeded the configured limit somewhere on the
/// frequency grid; the grid extends beyond what the sample tails support.
class cf_overflow_error : public numeric_error {
public:
    cf_overflow_error(const std::string& msg, double omega)
        : numeric_error(msg), omega_(omega) {}
    double omega() const { return omega_; }

private:
    double omega_;
};

/// Imaginary part of the inversion did not cancel; the input CF estimate
/// is not conjugate-symmetric.
class integrity_error : public numeric_error {
public:
    explicit integrity_error(const std::string& msg) : numeric_error(msg) {}
};

}  // namespace tct
