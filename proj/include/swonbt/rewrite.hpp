// ============================================================================
// swonbt/rewrite.hpp — normal forms
// ============================================================================
//
//   delta        pushes X and Y down to atoms and false, giving a formula of
//                SWXXYY (temporal prefixes only directly over p / false)
//   gamma        flattens nested [S]/[W] in an SWXXYY formula, giving SW1
//   modal_dnf    splits an SW1 formula into disjuncts of modal literals
//                plus one XXYY remainder
//   to_core      merges a disjunct into a core formula
//                [S]H & <S>I1 & ... & [W]J & <W>K1 & ... & L
//   dnf_xxyy     disjunctive normal form of an XXYY formula as conjunctions
//                of offset literals
//
// Offset literals.  Inside a conjunction every constraint is relative to the
// evaluation clock i:
//
//   X^h p, ~X^h p    p / ~p at position i+h (a next position always exists)
//   Y^n p            p at i-n, vacuously true when i < n
//   ~Y^n p           i >= n and ~p at i-n
//   Y^n false        i < n
//   ~Y^n false       i >= n
// ============================================================================

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swonbt/formula.hpp"

namespace swonbt {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

Formula delta(const Formula& f);

// Throws FragmentError unless f is in SWXXYY.
Formula gamma(const Formula& f);

class LiteralConjunction {
 public:
  // Key: (offset, atom).  Offsets > 0 are X positions, < 0 are Y positions.
  using Literals = std::map<std::pair<int, std::string>, bool>;

  // Each mutator returns consistent().
  bool add_literal(int offset, const std::string& atom, bool positive);
  bool require_clock_at_least(std::size_t n);
  bool require_clock_below(std::size_t n);
  bool merge(const LiteralConjunction& other);
  bool make_contradictory();

  bool consistent() const noexcept { return consistent_; }
  const Literals& literals() const noexcept { return literals_; }
  std::size_t min_clock() const noexcept { return min_clock_; }
  // Exclusive upper bound on the clock, if any.
  std::optional<std::size_t> clock_limit() const noexcept { return clock_limit_; }
  // Largest n among Y^n literals and clock bounds.
  std::size_t past_reach() const noexcept;
  std::size_t future_reach() const noexcept;

  // Every constraint of *this also appears in `other`.
  bool subsumes(const LiteralConjunction& other) const;

  // XXYY rendering; false when inconsistent, true when empty.
  Formula to_formula() const;

  friend bool operator==(const LiteralConjunction&, const LiteralConjunction&) = default;
  friend auto operator<=>(const LiteralConjunction&, const LiteralConjunction&) = default;

 private:
  bool consistent_ = true;
  std::size_t min_clock_ = 0;
  std::optional<std::size_t> clock_limit_;
  Literals literals_;
};

// DJ(alpha): consistent, deduplicated, subsumption-free disjuncts in a
// deterministic order.  Empty for an unsatisfiable propositional core.
// Throws FragmentError unless alpha is in XXYY.
std::vector<LiteralConjunction> dnf_xxyy(const Formula& alpha);

// Disjuncts of an SW1 formula.  Each one is a conjunction of [S]a, ~[S]a,
// [W]a, ~[W]a literals (a in XXYY) and at most one XXYY remainder; their
// disjunction is equivalent to the input.  Throws FragmentError.
std::vector<Formula> modal_dnf(const Formula& sw1);

enum class CoreKind { Full, Partial };

struct CoreFormula {
  CoreKind kind = CoreKind::Partial;
  Formula strong_body = Formula::top();            // H
  std::vector<Formula> strong_witnesses;           // I1..Ii, at least one
  Formula weak_body = Formula::top();              // J
  std::vector<Formula> weak_witnesses;             // K1..Kk, empty iff Partial
  Formula present = Formula::top();                // L

  Formula to_formula() const;
};

// Throws ShapeError when a conjunct is neither a modal literal over an XXYY
// body nor an XXYY formula.
CoreFormula to_core(const Formula& disjunct);

// Full:    (H&I1, ..., H&Ii, H&J&K1, ..., H&J&Kk, H&L)
// Partial: (H&I1, ..., H&Ii, H&L)
std::vector<Formula> basic_sequence(const CoreFormula& core);

using AtomicSequence = std::vector<LiteralConjunction>;

// Role of each basic-sequence slot, in order.
enum class SlotRole { StrongWitness, WeakWitness, Present };
std::vector<SlotRole> slot_roles(const CoreFormula& core);

// Deterministic enumeration of the atomic sequences of a core formula: each
// slot independently picks one disjunct of H and one of each other factor
// (I_x; J and K_x; L).  Elements may come out inconsistent.
class AtomicSequenceEnumerator {
 public:
  // Throws CombinatorialLimit when the number of sequences exceeds `cap`.
  explicit AtomicSequenceEnumerator(const CoreFormula& core,
                                    std::size_t cap = kDefaultEnumerationCap);

  std::size_t count() const noexcept { return count_; }
  std::optional<AtomicSequence> next();

 private:
  // dj_ holds DJ(H), DJ(I1).., DJ(J), DJ(K1).., DJ(L); each slot lists the
  // dj_ indices whose product forms its choices.
  std::vector<std::vector<LiteralConjunction>> dj_;
  std::vector<std::vector<std::size_t>> slots_;
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> digits_;
  std::size_t count_ = 0;
  std::size_t produced_ = 0;
};

inline AtomicSequenceEnumerator atomic_sequences(const CoreFormula& core,
                                                 std::size_t cap = kDefaultEnumerationCap) {
  return AtomicSequenceEnumerator(core, cap);
}

}  // namespace swonbt
