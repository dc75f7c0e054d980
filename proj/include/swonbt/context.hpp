// ============================================================================
// swonbt/context.hpp — ontic-rule contexts
// ============================================================================
//
// A context is a finite list of named ontic rules (timeline sets), a strict
// priority order between them and a set of undefeatable rules.  It
// determines two timeline sets over a model:
//
//   accepted  the intersection of the undefeatable rules (all timelines when
//             there are none); the domain of [S]
//   expected  the intersection over the longest prefix of the priority
//             hierarchy whose running intersection stays nonempty, or the
//             empty set when the top layer already intersects to nothing;
//             the domain of [W]
//
// File format:
//
//   rule L1 = {w1, w3}
//   rule L2 = {}
//   order L1 > L2          # transitive closure is taken
//   undefeatable {L1}
// ============================================================================

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swonbt/model.hpp"

namespace swonbt {

using RuleIndex = std::size_t;

struct OnticRule {
  std::string name;
  TimelineSet timelines;
};

class Context {
 public:
  // The empty context (no rules, empty order, nothing undefeatable).
  Context() = default;

  // Validates against `model` and closes `order` transitively.  Each pair
  // (a, b) reads "a has priority over b".  Throws ContextError.
  static Context make(const TreeModel& model, std::vector<OnticRule> rules,
                      const std::vector<std::pair<std::string, std::string>>& order,
                      const std::vector<std::string>& undefeatable);

  const std::vector<OnticRule>& rules() const noexcept { return rules_; }
  std::size_t rule_count() const noexcept { return rules_.size(); }
  std::optional<RuleIndex> find_rule(std::string_view name) const;
  // Strict priority after transitive closure.
  bool dominates(RuleIndex a, RuleIndex b) const { return order_.at(a).at(b); }
  const std::vector<RuleIndex>& undefeatable() const noexcept { return undefeatable_; }
  // Non-fatal findings from make(), e.g. two rules with the same timeline set.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  std::vector<OnticRule> rules_;
  std::vector<std::vector<bool>> order_;
  std::vector<RuleIndex> undefeatable_;
  std::vector<std::string> warnings_;
};

struct Hierarchy {
  // Pairwise disjoint rule-index layers, highest priority first.  A context
  // without rules yields a single empty layer.
  std::vector<std::vector<RuleIndex>> layers;
};

Hierarchy hierarchy(const Context& c);

// Intersection of the given rules' timeline sets; every timeline of the model
// for an empty rule list.
TimelineSet en(const Context& c, const std::vector<RuleIndex>& rules, const TreeModel& m);

TimelineSet accepted(const Context& c, const TreeModel& m);
TimelineSet expected(const Context& c, const TreeModel& m);

// A context whose accepted/expected sets are exactly (at, et).  Throws
// ContextError(EmptyAccepted) when at is empty and ContextError(Format) when
// et is not a subset of at.
Context context_from_ae(const TreeModel& m, const TimelineSet& at, const TimelineSet& et);

Context parse_context_text(std::string_view text, const TreeModel& m);
Context load_context(const std::string& path, const TreeModel& m);
std::string write_context_text(const Context& c, const TreeModel& m);

// Timeline-set helpers shared by the evaluator and the decision procedure.
TimelineSet intersect(const TimelineSet& a, const TimelineSet& b);
bool is_subset(const TimelineSet& a, const TimelineSet& b);
bool contains(const TimelineSet& s, TimelineIndex t);

}  // namespace swonbt
