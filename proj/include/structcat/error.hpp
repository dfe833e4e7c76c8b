#pragma once

#include <stdexcept>
#include <string>

namespace structcat {

// Root of every error raised by the library. Law violations found by the
// validators are reported through ValidationReport, never thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input refers to undeclared identifiers or declares one twice.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class InvalidCategory : public Error {
 public:
  using Error::Error;
};

class InvalidFunctor : public Error {
 public:
  using Error::Error;
};

class NotFaithful : public Error {
 public:
  using Error::Error;
};

// A morphism does not have the endpoints an operation requires.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

class BaseMismatch : public Error {
 public:
  using Error::Error;
};

class NotLiftable : public Error {
 public:
  NotLiftable(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NotAProduct : public Error {
 public:
  using Error::Error;
};

// Desk-scale size bounds are hard errors.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class UnknownIdentifier : public Error {
 public:
  using Error::Error;
};

}  // namespace structcat
