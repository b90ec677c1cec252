#pragma once

#include <stdexcept>
#include <string>

namespace farekit {

// Unknown node / zone / edge id.
class invalid_reference_error : public std::runtime_error {
 public:
  explicit invalid_reference_error(const std::string& what) : std::runtime_error(what) {}
};

// A node sequence that is not a walk of the network.
class invalid_walk_error : public std::runtime_error {
 public:
  explicit invalid_walk_error(const std::string& what) : std::runtime_error(what) {}
};

// Instance data that violates a structural requirement (missing coordinates,
// cover passed to a partition-only tariff, disconnected metropolitan zone, ...).
class configuration_error : public std::runtime_error {
 public:
  explicit configuration_error(const std::string& what) : std::runtime_error(what) {}
};

// An instance shape a specialized algorithm does not handle (e.g. more than one
// disconnected zone); callers should fall back to the exact solver.
class unsupported_instance_error : public std::runtime_error {
 public:
  explicit unsupported_instance_error(const std::string& what) : std::runtime_error(what) {}
};

// Search or enumeration exceeded its state budget.
class resource_limit_error : public std::runtime_error {
 public:
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace farekit
