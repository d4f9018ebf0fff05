#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pimvar {

/// Malformed input text. `position` is a byte offset into the parsed string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A pi process outside the flat, replication-free fragment.
class FragmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A CH state violating well-formedness (duplicate introduced names, two
/// main threads) or hitting a dynamic pattern-match failure.
class WellFormednessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pimvar
