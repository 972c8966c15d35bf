#pragma once

#include <stdexcept>
#include <string>

namespace soc {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A resource cap would be exceeded (matrix entry budget, enumeration size).
class capacity_error : public error {
public:
    explicit capacity_error(const std::string& msg) : error(msg) {}
};

/// A mathematical precondition was violated (non-reduced inner series,
/// non-normal input, parameter outside its admissible range).
class contract_violation : public error {
public:
    explicit contract_violation(const std::string& msg) : error(msg) {}
};

/// Operands have incompatible or non-square shapes.
class shape_error : public error {
public:
    explicit shape_error(const std::string& msg) : error(msg) {}
};

/// Malformed data: invalid restricted-growth string, bad config schema,
/// non-finite entries.
class validation_error : public error {
public:
    explicit validation_error(const std::string& msg) : error(msg) {}
};

/// A linear solve was requested on a probe set whose condition estimate
/// exceeds the trust threshold.
class conditioning_error : public error {
public:
    explicit conditioning_error(const std::string& msg) : error(msg) {}
};

} // namespace soc
