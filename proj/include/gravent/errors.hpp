#pragma once

#include <stdexcept>
#include <string>

namespace gravent {

/// A physical input outside the domain of a formula (nonpositive mass, T = 0 for a wavelength, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configuration value that violates a type invariant. `path` names the
/// offending field, e.g. "geometry.alpha".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::invalid_argument(path.empty() ? what : path + ": " + what), path_(std::move(path)), detail_(what) {}

  const std::string& path() const noexcept { return path_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Re-raise with a parent section prepended to the path.
  ConfigError nested(const std::string& parent) const {
    return ConfigError(path_.empty() ? parent : parent + "." + path_, detail_);
  }

 private:
  std::string path_;
  std::string detail_;
};

/// A quantum state that fails its physicality checks.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the bound solver when the margin never crosses 1 inside the
/// admissible bracket.
class NoCrossingError : public NumericalError {
 public:
  enum class Kind { FeasibleEverywhere, InfeasibleEverywhere };

  NoCrossingError(Kind kind, const std::string& what) : NumericalError(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace gravent
