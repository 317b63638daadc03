#pragma once

#include <stdexcept>
#include <string>

namespace wienerkit {

// Malformed or out-of-contract caller input (bad file, invalid parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation point where the requested quantity does not exist.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An adaptive computation stopped before reaching its tolerance. Carries the
// best estimate and the error that was actually achieved.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double best_estimate, double achieved_error)
      : std::runtime_error(what), best_estimate_(best_estimate), achieved_error_(achieved_error) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double best_estimate_;
  double achieved_error_;
};

}  // namespace wienerkit
