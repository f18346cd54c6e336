#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetlin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifierError : public Error {
 public:
  UnknownIdentifierError(std::string name, std::size_t position)
      : Error("unknown identifier '" + name + "' at position " + std::to_string(position)),
        name_(std::move(name)),
        position_(position) {}
  const std::string& name() const { return name_; }
  std::size_t position() const { return position_; }

 private:
  std::string name_;
  std::size_t position_;
};

/// Division by zero, log of a non-positive number, and similar. Carries the
/// rendered subexpression that failed.
class SingularityError : public Error {
 public:
  explicit SingularityError(std::string subexpression)
      : Error("evaluation singularity in '" + subexpression + "'"), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularJacobianError : public Error {
 public:
  using Error::Error;
};

class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagreed.
class InternalInconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace jetlin
