#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace scope {

// Malformed or inconsistent configuration / input files. CLI exit code 3.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// No assignment / plan satisfies the constraints. CLI exit code 2.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
  InfeasibleError(const std::string& what, std::vector<std::string> ids)
      : std::runtime_error(what), offending_ids(std::move(ids)) {}

  std::vector<std::string> offending_ids;  // e.g. partitions with no feasible tier
};

// Exact enumeration would exceed its configured budget. CLI exit code 4.
class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scope
