#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "swonbt/context.hpp"
#include "swonbt/formula.hpp"
#include "swonbt/model.hpp"

namespace swonbt {

// (M, C, pi, i).  The timeline must be accepted by the context.
struct ContextualizedPoint {
  const TreeModel& model;
  const Context& context;
  TimelineIndex timeline;
  std::size_t clock;
};

// (M, AT, ET, pi, i) with AT nonempty, ET a subset of AT and pi in AT.
struct AEPoint {
  const TreeModel& model;
  TimelineSet at;
  TimelineSet et;
  TimelineIndex timeline;
  std::size_t clock;
};

// Truth at a contextualized pointed model.  Y at clock 0 is true whatever
// its argument; [W] over an empty expected set is vacuously true.  Throws
// PointError when the timeline is not accepted.
bool check(const ContextualizedPoint& pt, const Formula& f);

// Same clauses with AT/ET in place of accepted/expected.  Throws PointError
// on a malformed point.
bool check_ae(const AEPoint& pt, const Formula& f);

// The AE point induced by a contextualized point.
AEPoint to_ae(const ContextualizedPoint& pt);

// Clock bound used by find_counterpoint: past it every formula of the given
// shape has stable truth on every timeline of `m`.
std::size_t counterpoint_clock_bound(const TreeModel& m, const Formula& f);

// Some accepted (timeline, clock) where `f` is false, scanning clocks up to
// counterpoint_clock_bound.
std::optional<std::pair<TimelineIndex, std::size_t>> find_counterpoint(const TreeModel& m,
                                                                         const Context& c,
                                                                         const Formula& f);

}  // namespace swonbt
