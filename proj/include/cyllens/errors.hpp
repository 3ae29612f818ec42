#pragma once

#include <stdexcept>
#include <string>

namespace cyllens {

/// Raised when a cylinder radius is too small for the grid spacing.
/// Under-resolved radii are rejected loudly instead of degrading silently.
class resolution_error : public std::runtime_error {
public:
    explicit resolution_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an iterative or direct solve fails to reach its residual target.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an operation needs data the field does not carry
/// (e.g. rescaling a field that has no analytic closure).
class unsupported_operation : public std::runtime_error {
public:
    explicit unsupported_operation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cyllens
