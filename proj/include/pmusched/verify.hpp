#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "pmusched/bnb.hpp"

namespace pmusched {

struct VerifyParams {
  int n_max = 8;
  int trials = 200;
  std::uint64_t seed = 1;
  Cost weight_max = 10;
  std::vector<double> densities = {0.0, 0.2, 0.5};
  std::string reproducer_path = "verify_failure.json";
  std::ostream* log = nullptr;
};

struct VerifyOutcome {
  int trials_run = 0;
  int failures = 0;
  std::string first_failure;
  BoundStats stats;
  bool ok() const { return failures == 0; }
};

// Sweeps seeded random instances, asserting that the solver matches the
// exhaustive oracle exactly and that the relaxation invariants hold at every
// node. The first failing instance is written to the reproducer path.
VerifyOutcome verify_sweep(const VerifyParams& params);

}  // namespace pmusched
