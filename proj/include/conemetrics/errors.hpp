#pragma once

#include <stdexcept>
#include <string>

namespace conemetrics {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got, const std::string& what)
      : Error(what + ": expected dimension " + std::to_string(expected) + ", got " +
              std::to_string(got)),
        expected_(expected),
        got_(got) {}

  std::size_t expected() const { return expected_; }
  std::size_t got() const { return got_; }

 private:
  std::size_t expected_;
  std::size_t got_;
};

class NotInterior : public Error {
 public:
  using Error::Error;
};

class DifferentParts : public Error {
 public:
  using Error::Error;
};

class ConeMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised where a formula is only valid off the measure-zero set of ties.
class NonSmoothPoint : public Error {
 public:
  using Error::Error;
};

/// Bracketing or boundary search ran out of budget.
class SearchFailure : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace conemetrics
