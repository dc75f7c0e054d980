// ============================================================================
// swonbt/model.hpp — finite presentation of serial rooted trees
// ============================================================================
//
// A TreeModel is a finite rooted tree with a valuation.  The underlying
// branching-time structure is infinite: every leaf is taken to be followed by
// an endless chain of copies of itself carrying the same valuation.  Under
// that convention timelines are in bijection with leaves and are named by
// their leaf id.
//
// File format (one declaration per line, '#' starts a comment):
//
//   state w0 root {}
//   state w1 parent=w0 {p, q}
//
// A JSON mirror {"states": [{"id": ..., "parent": ..., "atoms": [...]}]} is
// accepted for files ending in ".json".
// ============================================================================

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace swonbt {

using StateIndex = std::size_t;
using TimelineIndex = std::size_t;

// Sorted, duplicate-free list of timeline indices into TreeModel::timelines().
using TimelineSet = std::vector<TimelineIndex>;

struct StateSpec {
  std::string id;
  std::optional<std::string> parent;
  std::set<std::string> atoms;
};

struct Timeline {
  std::string leaf;
  // Root-to-leaf states; path.front() is the root.
  std::vector<StateIndex> path;
};

class TreeModel {
 public:
  // Checks the tree invariants; throws ModelError.
  static TreeModel validate(std::vector<StateSpec> raw);

  std::size_t state_count() const noexcept { return states_.size(); }
  const std::string& state_id(StateIndex s) const { return states_.at(s).id; }
  std::optional<StateIndex> find_state(std::string_view id) const;
  StateIndex root() const noexcept { return root_; }
  std::optional<StateIndex> parent(StateIndex s) const { return states_.at(s).parent; }
  const std::vector<StateIndex>& children(StateIndex s) const { return states_.at(s).children; }
  const std::set<std::string>& atoms_at(StateIndex s) const { return states_.at(s).atoms; }
  bool holds(StateIndex s, const std::string& atom) const;

  // Ordered by leaf id.
  const std::vector<Timeline>& timelines() const noexcept { return timelines_; }
  std::optional<TimelineIndex> find_timeline(std::string_view leaf) const;
  TimelineSet all_timelines() const;

  // Length of the longest root-to-leaf path minus one.
  std::size_t depth() const noexcept { return depth_; }

  // Raw declarations in state-index order; feeds the writers.
  std::vector<StateSpec> specs() const;

 private:
  struct State {
    std::string id;
    std::optional<StateIndex> parent;
    std::vector<StateIndex> children;
    std::set<std::string> atoms;
  };

  std::vector<State> states_;
  StateIndex root_ = 0;
  std::vector<Timeline> timelines_;
  std::size_t depth_ = 0;
};

// Free-function spelling of TreeModel::validate.
inline TreeModel validate_model(std::vector<StateSpec> raw) {
  return TreeModel::validate(std::move(raw));
}

const std::vector<Timeline>& timelines(const TreeModel& m);

// path[i] for i inside the explicit path, the leaf beyond it.
StateIndex state_at(const Timeline& t, std::size_t clock);

std::vector<StateSpec> parse_model_text(std::string_view text);
std::vector<StateSpec> parse_model_json(std::string_view text);
// Dispatches on the ".json" extension.
TreeModel load_model(const std::string& path);

std::string write_model_text(const TreeModel& m);
std::string write_model_json(const TreeModel& m);

}  // namespace swonbt
