#pragma once

#include <stdexcept>
#include <string>

namespace tpmhdg {

/// Base class of all numerical failures raised by the library.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoRootInRange : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EmptyMesh : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UnsupportedOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularGram : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularLocalSystem : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StabilizationViolation : public NumericalError {
 public:
  StabilizationViolation(const std::string& what, int facet) : NumericalError(what), facet_(facet) {}
  int facet() const { return facet_; }

 private:
  int facet_;
};

class SingularLocalBlock : public NumericalError {
 public:
  SingularLocalBlock(const std::string& what, int element) : NumericalError(what), element_(element) {}
  int element() const { return element_; }

 private:
  int element_;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateRatio : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::invalid_argument {
 public:
  ValidationError(const std::string& field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace tpmhdg
