#pragma once

#include <stdexcept>
#include <string>

namespace swkit {

/// Base class of every error raised by the library. The CLI maps these to
/// exit code 2 (numerical or validation failure).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class AntisymmetryViolation : public Error {
 public:
  using Error::Error;
};

class JacobiViolation : public Error {
 public:
  JacobiViolation(double residual, int a, int b, int c)
      : Error("Jacobi identity violated: residual " + std::to_string(residual) +
              " at triple (" + std::to_string(a) + "," + std::to_string(b) +
              "," + std::to_string(c) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

class NotASubalgebra : public Error {
 public:
  using Error::Error;
};

class NotAnIdeal : public Error {
 public:
  using Error::Error;
};

class NotRankZero : public Error {
 public:
  using Error::Error;
};

class DifferentialNotVanishing : public Error {
 public:
  explicit DifferentialNotVanishing(double norm)
      : Error("dH does not vanish on X: |grad H| = " + std::to_string(norm)),
        norm_(norm) {}
  double norm() const { return norm_; }

 private:
  double norm_;
};

class BaseBlockSingular : public Error {
 public:
  using Error::Error;
};

class NotAutomorphism : public Error {
 public:
  using Error::Error;
};

class SingularBlock : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonFiniteState : public Error {
 public:
  explicit NonFiniteState(long step)
      : Error("non-finite state encountered at step " + std::to_string(step)),
        step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

class NewtonDivergence : public Error {
 public:
  explicit NewtonDivergence(long step)
      : Error("implicit midpoint Newton iteration failed at step " +
              std::to_string(step)),
        step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

class UnknownGroup : public Error {
 public:
  using Error::Error;
};

class SingularMetric : public Error {
 public:
  using Error::Error;
};

class UnsupportedPower : public Error {
 public:
  using Error::Error;
};

class NotSu2Triple : public Error {
 public:
  using Error::Error;
};

class NumericalCheckFailed : public Error {
 public:
  using Error::Error;
};

class ScenarioError : public Error {
 public:
  using Error::Error;
};

}  // namespace swkit
