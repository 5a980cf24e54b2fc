#pragma once

#include <stdexcept>
#include <string>

namespace allmach {

// Invalid thermodynamic input (nonpositive density, negative pressure, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A computed state left the admissible set at a known grid location.
class NumericalStateError : public std::runtime_error {
 public:
  NumericalStateError(const std::string& what, int i, int j)
      : std::runtime_error(what + " at node (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")"),
        i_(i), j_(j) {}
  int i() const { return i_; }
  int j() const { return j_; }

 private:
  int i_;
  int j_;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested quantity is unavailable in the current state (e.g. no cached
// perturbation at eps = 0).
struct StateError : std::logic_error {
  using std::logic_error::logic_error;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what + " (residual " + std::to_string(residual) +
                           ", iterations " + std::to_string(iterations) + ")"),
        residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

}  // namespace allmach
