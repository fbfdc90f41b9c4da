#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The expression left the class the canonicalizer can decide. This is a
/// simplification gap, not a proof that the expression is nonzero.
class UnsupportedExpression : public Error {
 public:
  using Error::Error;
};

/// A configured size limit (chain order, derivative tower depth) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Substituted chain member is not u times the lower Riccati member.
class FactorizationFailure : public Error {
 public:
  using Error::Error;
};

class DegenerateSolution : public Error {
 public:
  using Error::Error;
};

class PoleAt : public Error {
 public:
  PoleAt(double x, const std::string& what) : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

class PoleInInterval : public Error {
 public:
  PoleInInterval(double root, const std::string& what) : Error(what), root_(root) {}
  double root() const noexcept { return root_; }

 private:
  double root_;
};

class StepUnderflow : public Error {
 public:
  StepUnderflow(double lastGoodX, const std::string& what) : Error(what), lastGoodX_(lastGoodX) {}
  double lastGoodX() const noexcept { return lastGoodX_; }

 private:
  double lastGoodX_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
      : Error(what), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace chainlab
