#pragma once

#include <stdexcept>
#include <string>

namespace qwoa {

/// Invalid input: malformed spectrum, out-of-range parameter, bad instance.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A request exceeded an enumeration or memory budget, or I/O failed.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qwoa
