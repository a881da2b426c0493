#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bentkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: bad masks, out-of-range dimensions, non-permutations.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Text that does not follow the ANF grammar or a file format.
class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// An operation whose contract requires a bent function received a non-bent one.
class NotBent : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

// A search exceeded its configured node budget.
class ResourceLimit : public Error {
 public:
  ResourceLimit(const std::string& what, std::uint64_t budget)
      : Error(what), budget_(budget) {}
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

// Data that violates a consistency relation (e.g. a missing lower class).
class Inconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace bentkit
