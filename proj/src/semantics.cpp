#include "swonbt/semantics.hpp"

#include "swonbt/error.hpp"

namespace swonbt {

namespace {

class Evaluator {
 public:
  Evaluator(const TreeModel& m, const TimelineSet& at, const TimelineSet& et)
      : model_(m), at_(at), et_(et) {}

  bool eval(const Formula& f, TimelineIndex t, std::size_t clock) const {
    switch (f.kind()) {
      case Kind::Atom:
        return model_.holds(state_at(model_.timelines()[t], clock), f.name());
      case Kind::Bottom: return false;
      case Kind::Not: return !eval(f.operand(), t, clock);
      case Kind::And: return eval(f.lhs(), t, clock) && eval(f.rhs(), t, clock);
      case Kind::Next: return eval(f.operand(), t, clock + 1);
      case Kind::Yesterday: return clock == 0 || eval(f.operand(), t, clock - 1);
      case Kind::StrongNec: return all(at_, f.operand(), clock);
      case Kind::WeakNec: return all(et_, f.operand(), clock);
    }
    return false;
  }

 private:
  bool all(const TimelineSet& domain, const Formula& f, std::size_t clock) const {
    for (TimelineIndex other : domain) {
      if (!eval(f, other, clock)) return false;
    }
    return true;
  }

  const TreeModel& model_;
  const TimelineSet& at_;
  const TimelineSet& et_;
};

}  // namespace

bool check(const ContextualizedPoint& pt, const Formula& f) {
  TimelineSet at = accepted(pt.context, pt.model);
  if (!contains(at, pt.timeline)) {
    std::string name = pt.timeline < pt.model.timelines().size()
                           ? pt.model.timelines()[pt.timeline].leaf
                           : std::to_string(pt.timeline);
    throw PointError("TimelineNotAccepted: timeline '" + name + "' is not accepted by the context");
  }
  TimelineSet et = expected(pt.context, pt.model);
  return Evaluator(pt.model, at, et).eval(f, pt.timeline, pt.clock);
}

bool check_ae(const AEPoint& pt, const Formula& f) {
  if (pt.at.empty()) throw PointError("AE point needs a nonempty accepted set");
  for (TimelineIndex t : pt.at) {
    if (t >= pt.model.timelines().size()) throw PointError("AE point names an unknown timeline");
  }
  if (!is_subset(pt.et, pt.at)) throw PointError("AE point: expected set not within accepted");
  if (!contains(pt.at, pt.timeline)) throw PointError("AE point: timeline not accepted");
  return Evaluator(pt.model, pt.at, pt.et).eval(f, pt.timeline, pt.clock);
}

AEPoint to_ae(const ContextualizedPoint& pt) {
  return AEPoint{pt.model, accepted(pt.context, pt.model), expected(pt.context, pt.model),
                 pt.timeline, pt.clock};
}

std::size_t counterpoint_clock_bound(const TreeModel& m, const Formula& f) {
  // Beyond depth + Y-depth every referenced position is a leaf copy and no Y
  // reaches the origin, so truth repeats; the X-depth term is slack.
  return m.depth() + yesterday_depth(f) + next_depth(f);
}

std::optional<std::pair<TimelineIndex, std::size_t>> find_counterpoint(const TreeModel& m,
                                                                         const Context& c,
                                                                         const Formula& f) {
  TimelineSet at = accepted(c, m);
  TimelineSet et = expected(c, m);
  Evaluator ev(m, at, et);
  const std::size_t bound = counterpoint_clock_bound(m, f);
  for (std::size_t clock = 0; clock <= bound; ++clock) {
    for (TimelineIndex t : at) {
      if (!ev.eval(f, t, clock)) return std::pair{t, clock};
    }
  }
  return std::nullopt;
}

}  // namespace swonbt
