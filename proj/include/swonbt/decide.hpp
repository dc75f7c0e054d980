// ============================================================================
// swonbt/decide.hpp — satisfiability and validity
// ============================================================================
//
// Pipeline:  phi --delta--> SWXXYY --gamma--> SW1 --modal_dnf--> disjuncts
//            disjunct --to_core--> core formula --> one slot per basic-sequence
//            element, each slot a timeline of the witness.
//
// A core formula is satisfiable iff some clock i and some choice of one
// consistent offset-literal conjunction per slot can be placed at i on its
// own timeline with all slots agreeing on the shared root state.  Only the
// root is shared because the witness tree branches right after it.
//
// The search backtracks over the slots; the number of visited search nodes is
// capped (DecideOptions::cap, default SWONBT_ENUM_CAP or 10^6) and exceeding
// the cap raises CombinatorialLimit.
// ============================================================================

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swonbt/context.hpp"
#include "swonbt/formula.hpp"
#include "swonbt/model.hpp"
#include "swonbt/rewrite.hpp"

namespace swonbt {

// SWONBT_ENUM_CAP when set to a positive integer, kDefaultEnumerationCap
// otherwise.
std::size_t enumeration_cap_from_env();

struct DecideOptions {
  std::size_t cap = enumeration_cap_from_env();
  unsigned jobs = 1;
};

using Valuation = std::map<std::string, bool>;
// Absolute position on a timeline -> required truth values.
using PositionAssignment = std::map<std::size_t, Valuation>;

// Placement of a conjunction at clock i; nullopt when i is outside its clock
// window.  Y literals reaching before the origin are dropped.
std::optional<PositionAssignment> bind_at(const LiteralConjunction& element, std::size_t clock);

struct Feasibility {
  bool satisfiable = false;
  // Smallest clock at which the conjunction can be placed and the placement.
  std::size_t clock = 0;
  PositionAssignment placement;
};

// A single conjunction on its own timeline.
Feasibility atom_feasibility(const LiteralConjunction& element);

struct WitnessPlan {
  std::size_t clock = 0;
  std::vector<PositionAssignment> placements;  // one per sequence element
};

// Joint placement of an atomic sequence, elements on separate timelines
// sharing only the root.
std::optional<WitnessPlan> sequence_satisfiable(const AtomicSequence& seq);

struct Witness {
  TreeModel model;
  Context context;
  TimelineIndex timeline = 0;
  std::size_t clock = 0;
};

struct Verdict {
  bool holds = false;             // satisfiable / valid
  std::optional<Witness> witness;  // model / counter-model
};

// Throws CombinatorialLimit.
Verdict satisfiable(const Formula& f, const DecideOptions& options = {});
Verdict valid(const Formula& f, const DecideOptions& options = {});

// "at timeline <leaf> clock <i>"
std::string describe_point(const TreeModel& m, TimelineIndex t, std::size_t clock);

}  // namespace swonbt
