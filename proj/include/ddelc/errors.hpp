#pragma once

#include <stdexcept>
#include <string>

namespace ddelc {

/// Base class for failures of the numerical machinery itself (as opposed to
/// precondition violations, which throw std::domain_error or
/// std::invalid_argument). The CLI maps these to exit code 2.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature or iteration failed to reach its accuracy target.
class accuracy_error : public numerical_error {
 public:
  explicit accuracy_error(const std::string& what) : numerical_error(what) {}
};

/// A root bracket did not enclose a sign change.
class bracket_error : public numerical_error {
 public:
  explicit bracket_error(const std::string& what) : numerical_error(what) {}
};

/// Not enough usable data to produce the requested estimate.
class insufficient_data_error : public numerical_error {
 public:
  explicit insufficient_data_error(const std::string& what) : numerical_error(what) {}
};

}  // namespace ddelc
