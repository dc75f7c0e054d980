// Small CDCL SAT solver: two watched literals, first-UIP learning, activity
// ordering with phase saving, Luby restarts.  Sized for the oracle's
// encodings (up to a few million clauses), not for industrial instances.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace swonbt::internal {

// Literal encoding: 2*var for positive, 2*var+1 for negative.
using Lit = std::uint32_t;

inline Lit pos(std::uint32_t var) { return var << 1; }
inline Lit neg(std::uint32_t var) { return (var << 1) | 1u; }
inline Lit negate(Lit l) { return l ^ 1u; }
inline std::uint32_t var_of(Lit l) { return l >> 1; }

class SatSolver {
 public:
  std::uint32_t new_var();
  std::size_t var_count() const noexcept { return assigns_.size(); }

  // False once the clause set is trivially unsatisfiable.
  bool add_clause(std::vector<Lit> clause);

  bool solve();
  // Valid after solve() returned true.
  bool value(std::uint32_t var) const { return assigns_.at(var) == kTrue; }
  bool value_of(Lit l) const { return value(var_of(l)) != static_cast<bool>(l & 1u); }

 private:
  static constexpr std::int8_t kTrue = 1;
  static constexpr std::int8_t kFalse = -1;
  static constexpr std::int8_t kUndef = 0;

  std::int8_t lit_value(Lit l) const {
    std::int8_t v = assigns_[var_of(l)];
    return (l & 1u) ? static_cast<std::int8_t>(-v) : v;
  }
  void enqueue(Lit l, std::int64_t reason);
  std::int64_t propagate();
  void analyze(std::int64_t conflict, std::vector<Lit>& learnt, std::size_t& back_level);
  void backtrack(std::size_t level);
  void bump(std::uint32_t var);
  std::int64_t pick_branch();
  std::size_t level() const noexcept { return trail_lim_.size(); }
  std::int64_t attach(std::vector<Lit> clause);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<std::uint32_t>> watches_;  // per literal: clause ids
  std::vector<std::int8_t> assigns_;
  std::vector<bool> phase_;
  std::vector<std::size_t> levels_;
  std::vector<std::int64_t> reasons_;
  std::vector<double> activity_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  double bump_ = 1.0;
  bool unsat_ = false;
  std::vector<bool> seen_;
};

}  // namespace swonbt::internal
