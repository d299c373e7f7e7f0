#pragma once

#include <stdexcept>
#include <string>

namespace hmgc {

// Bad input data or parameters (CLI maps these to exit code 2).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file content; message carries the line number.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation requires a capability the scorer does not expose
// (e.g. gradients from a black-box detector).
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A metric is undefined on the given input (single-class AUC, zero denominator).
class UndefinedMetricError : public std::runtime_error {
public:
    explicit UndefinedMetricError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hmgc
