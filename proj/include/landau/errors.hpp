#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace landau {

// Bad input: configuration, parameter constraints, malformed files. Exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the region where an operation is defined.
class DomainError : public ValidationError {
 public:
  explicit DomainError(const std::string& what) : ValidationError(what) {}
};

// A computation that could not deliver its postcondition. Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class RadiusError : public NumericalError {
 public:
  explicit RadiusError(const std::string& what) : NumericalError(what) {}
};

class ConvergenceError : public NumericalError {
 public:
  explicit ConvergenceError(const std::string& what) : NumericalError(what) {}
};

class StabilityError : public NumericalError {
 public:
  explicit StabilityError(const std::string& what) : NumericalError(what) {}
};

// The winding contour passed too close to a zero; caller should refine and retry.
class ContourRefineError : public NumericalError {
 public:
  explicit ContourRefineError(const std::string& what) : NumericalError(what) {}
};

// Gevrey weight exceeded double range.
class SaturationError : public NumericalError {
 public:
  explicit SaturationError(const std::string& what) : NumericalError(what) {}
};

class BlowUpError : public NumericalError {
 public:
  explicit BlowUpError(const std::string& what) : NumericalError(what) {}
};

// Process-wide warning log. The first warning of each category (text before the first
// colon) is also echoed to stderr unless muted.
void warn(const std::string& message);
std::vector<std::string> warnings();
void clear_warnings();
// Returns the previous setting.
bool set_warnings_muted(bool muted);

class ScopedWarningMute {
 public:
  ScopedWarningMute() : previous_(set_warnings_muted(true)) {}
  ~ScopedWarningMute() { set_warnings_muted(previous_); }
  ScopedWarningMute(const ScopedWarningMute&) = delete;
  ScopedWarningMute& operator=(const ScopedWarningMute&) = delete;

 private:
  bool previous_;
};

}  // namespace landau
