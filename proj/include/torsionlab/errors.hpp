#pragma once

#include <stdexcept>
#include <string>

namespace torsionlab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or degenerate domain description.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Mesh generation failed or the requested size cannot resolve the domain.
class MeshError : public Error {
 public:
  using Error::Error;
};

class UnderResolvedError : public MeshError {
 public:
  using MeshError::MeshError;
};

/// Element with a non-positive Jacobian.
class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string &what, int iterations, double residual)
      : Error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Query point does not lie in the meshed domain.
class OutsideDomainError : public Error {
 public:
  using Error::Error;
};

/// Analysis precondition not met (too few samples, no zero set, ...).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

}  // namespace torsionlab
