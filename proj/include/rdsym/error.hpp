#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace rdsym {

/// Error families, each mapped to a distinct CLI exit status.
enum class ErrorCategory { config = 2, domain = 3, tolerance = 4, numerics = 5 };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

private:
  ErrorCategory category_;
};

/// Invalid parameters: violated family restrictions, malformed config, bad arguments.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

/// Evaluation outside the admissible domain (fractional power of a nonpositive base,
/// positivity breach in the simulator). Carries the offending location when known.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what,
                       std::optional<double> t = std::nullopt,
                       std::optional<double> x = std::nullopt)
      : Error(ErrorCategory::domain, what), t_(t), x_(x) {}

  std::optional<double> t() const noexcept { return t_; }
  std::optional<double> x() const noexcept { return x_; }

private:
  std::optional<double> t_;
  std::optional<double> x_;
};

class ToleranceError : public Error {
public:
  explicit ToleranceError(const std::string& what) : Error(ErrorCategory::tolerance, what) {}
};

/// Numerical failure: singular systems, ODE blow-up.
class NumericsError : public Error {
public:
  explicit NumericsError(const std::string& what, std::optional<double> location = std::nullopt)
      : Error(ErrorCategory::numerics, what), location_(location) {}

  std::optional<double> location() const noexcept { return location_; }

private:
  std::optional<double> location_;
};

}  // namespace rdsym
