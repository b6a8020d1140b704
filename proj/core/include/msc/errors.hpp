#pragma once

#include <stdexcept>
#include <string>

namespace msc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A menu, alternative, or block was requested that the container does not hold.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the mathematical domain of the operation (e.g. alpha not in (0,1)).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Shapes disagree: matrix dimensions, vector lengths, or menus outside the universe.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The caller broke a documented precondition of the operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration was requested beyond its size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A model construction could not produce a valid rationalizing model.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A document could not be parsed or violates an invariant at a known location.
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& what)
      : Error(location + ": " + what), location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace msc
