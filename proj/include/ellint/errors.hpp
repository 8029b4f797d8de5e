#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ellint {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what) : Error(what) {}
};

class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& what) : Error(what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// Rejection sampling ran out of budget; carries what was accepted so far.
class SamplingBudgetExceeded : public Error {
 public:
  SamplingBudgetExceeded(const std::string& what, std::size_t accepted)
      : Error(what), accepted_(accepted) {}
  std::size_t accepted() const { return accepted_; }

 private:
  std::size_t accepted_;
};

class SingularCombination : public Error {
 public:
  explicit SingularCombination(const std::string& what) : Error(what) {}
};

class OptimizerFailed : public Error {
 public:
  explicit OptimizerFailed(const std::string& what) : Error(what) {}
};

class SolverInfeasible : public Error {
 public:
  explicit SolverInfeasible(const std::string& what) : Error(what) {}
};

class EmptyIntersection : public Error {
 public:
  explicit EmptyIntersection(const std::string& what) : Error(what) {}
};

class DegenerateTrace : public Error {
 public:
  explicit DegenerateTrace(const std::string& what) : Error(what) {}
};

}  // namespace ellint
