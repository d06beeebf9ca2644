#ifndef STAIR_ERROR_HPP
#define STAIR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace stair {

// Input is well-formed but outside the domain of the operation
// (e.g. a permutation containing 321 handed to the gridding code).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Text could not be parsed into the requested value.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stair

#endif  // STAIR_ERROR_HPP
