// Desk-scale self-checks behind the `verify` CLI subcommand: every closed
// form and solver result is replayed against its brute-force oracle and the
// structural identities it must satisfy, with one named residual per check.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rdc {

struct VerifyCheck {
  std::string name;
  double residual = 0.0;   // signed for one-sided checks, magnitude otherwise
  double tolerance = 0.0;  // pass iff residual <= tolerance
  bool pass = false;
};

struct VerifyOptions {
  int resolution = 101;  // grid points per axis for the enumeration oracles
  std::uint64_t seed = 1;
};

// scope is one of "all", "oneshot", "dc", "universal"; anything else raises
// std::invalid_argument naming the accepted values.
std::vector<VerifyCheck> run_verification(const std::string& scope,
                                          const VerifyOptions& options = {});

}  // namespace rdc
