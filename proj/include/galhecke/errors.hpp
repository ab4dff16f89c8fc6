#pragma once

#include <stdexcept>
#include <string>

namespace galhecke {

// Failure categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
  Domain = 2,       // bad argument or violated precondition
  Validation = 2,   // input data failed a structural check
  Undetermined = 3, // computation cannot certify an answer
  Unsupported = 4,  // outside the implemented scope (e.g. niveau > 1)
  DataGap = 5,      // required data (local data, table row) missing
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class UndeterminedError : public Error {
 public:
  explicit UndeterminedError(const std::string& what) : Error(ErrorKind::Undetermined, what) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(ErrorKind::Unsupported, what) {}
};

class DataGapError : public Error {
 public:
  explicit DataGapError(const std::string& what) : Error(ErrorKind::DataGap, what) {}
};

}  // namespace galhecke
