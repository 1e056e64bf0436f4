#pragma once

#include <stdexcept>
#include <string>

namespace ilm {

// Precondition: caller passed invalid input.
// Domain: input is valid but outside the regime where the object exists.
// Numerical: an iteration or factorization failed.
enum class ErrorKind { Precondition, Domain, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};

class NoCompetingRoots : public Error {
 public:
  explicit NoCompetingRoots(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class NotApplicable : public Error {
 public:
  explicit NotApplicable(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class SignPatternBroken : public Error {
 public:
  explicit SignPatternBroken(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class WindowTooSmall : public Error {
 public:
  explicit WindowTooSmall(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class SingularLplus : public Error {
 public:
  explicit SingularLplus(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class EigenFailure : public Error {
 public:
  explicit EigenFailure(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class InitialSolveFailed : public Error {
 public:
  explicit InitialSolveFailed(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class NotGrowing : public Error {
 public:
  explicit NotGrowing(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

}  // namespace ilm
