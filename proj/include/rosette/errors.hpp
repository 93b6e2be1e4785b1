#pragma once

#include <stdexcept>
#include <string>

namespace rosette {

/// Input lies outside the model's physical domain (alpha*Z >= n_theta).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed argument: bad quantum numbers, empty window, bad sample density.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A resource guard tripped (window too long, too many candidate pairs).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rosette
