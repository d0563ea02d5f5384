#pragma once

#include <stdexcept>
#include <string>

namespace sgcd {

/// Raised when an operation receives arguments outside its domain.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an exact census would exceed the configured enumeration budget.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sgcd
