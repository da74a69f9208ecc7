#pragma once

#include <stdexcept>
#include <string>

namespace wsnconn {

// Raised when an argument lies outside the domain of a formula or sampler.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Raised for filesystem and stream failures; the message carries the path.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool condition, const char* quantity, const std::string& message) {
  if (!condition) {
    throw DomainError(std::string(quantity) + ": " + message);
  }
}

}  // namespace detail
}  // namespace wsnconn
