// ============================================================================
// swonbt/oracle.hpp — bounded satisfiability by direct semantic encoding
// ============================================================================
//
// Searches for a model of a formula among trees whose timelines split at the
// root, with at most `leaves` timelines of `depth` explicit positions each
// (leaf extension beyond), every subset of them accepted and every subset of
// the accepted ones expected, and evaluation clocks 0..clocks.  The semantic
// clauses are unfolded into propositional constraints and handed to a SAT
// solver; no normal form of the decision procedure is involved.
//
// A "satisfiable" answer comes with a verified witness.  "Unsatisfiable" only
// means no model exists within the bounds.
// ============================================================================

#pragma once

#include <cstddef>
#include <optional>

#include "swonbt/decide.hpp"
#include "swonbt/formula.hpp"

namespace swonbt {

struct OracleBounds {
  std::size_t depth = 3;    // explicit positions after the root
  std::size_t leaves = 4;   // timeline slots
  std::size_t clocks = 4;   // largest evaluation clock
  std::size_t max_variables = 4'000'000;
};

// Bounds large enough for formulas of the given shape to be decided within
// them: clocks >= max(4, Y-depth + 1), depth >= max(3, clocks + X-depth),
// leaves >= max(4, modal nodes + 2).
OracleBounds adaptive_bounds(const Formula& f);

struct OracleResult {
  bool satisfiable = false;
  std::optional<Witness> witness;
  std::size_t variables = 0;
};

// Throws BoundsTooLarge when the encoding would exceed max_variables.
OracleResult brute_force_satisfiable(const Formula& f, const OracleBounds& bounds = {});

}  // namespace swonbt
