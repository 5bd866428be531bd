// Error types shared across the library.
//
// Validation failures (bad parameters, malformed inputs) use the standard
// exceptions std::invalid_argument and std::domain_error. FeasibilityError is
// reserved for well-formed problems whose constraint set is empty; it carries
// the smallest constraint violation over the relaxed problem as a certificate.
#pragma once

#include <stdexcept>
#include <string>

namespace rdc {

class FeasibilityError : public std::runtime_error {
 public:
  explicit FeasibilityError(const std::string& what, double violation = 0.0)
      : std::runtime_error(what), violation_(violation) {}

  // Minimal constraint violation of the infeasible system; 0 when the
  // reporting site has no meaningful certificate.
  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

}  // namespace rdc
