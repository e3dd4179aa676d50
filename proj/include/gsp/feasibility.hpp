#pragma once

// Exact Fourier-Motzkin decision procedure for small LinearSystems with
// both strict and weak rows. Feasible systems come back with a witness
// built by back-substitution, each variable placed at the midpoint of its
// admissible interval.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gsp/linear_system.hpp"

namespace gsp {

enum class FeasibilityStatus { feasible, infeasible };

std::string to_string(FeasibilityStatus s);

struct SolveOptions {
  std::size_t max_variables = 12;
  // Fixed elimination order (variable indices). Empty: greedy, fewest
  // generated rows first.
  std::vector<std::size_t> order;
};

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::infeasible;
  std::vector<Rational> witness;               // feasible only
  std::vector<std::size_t> eliminated_order;   // variables in elimination order
  std::vector<std::size_t> rows_per_stage;     // row count before each elimination, then final
  std::string conflict;                        // infeasible only: the contradictory derived row

  bool feasible() const { return status == FeasibilityStatus::feasible; }
};

FeasibilityResult solve(const LinearSystem& system, const SolveOptions& options = {});

}  // namespace gsp
