// ============================================================================
// swonbt/formula.hpp — formulas over X, Y, [S] and [W]
// ============================================================================
//
// A Formula is an immutable, reference-counted tree over exactly eight node
// kinds.  Derived connectives (true, |, ->, <->, <S>, <W>) are expanded by the
// factory helpers below and never appear as nodes:
//
//   true      := ~false
//   a | b     := ~(~a & ~b)
//   a -> b    := ~(a & ~b)
//   a <-> b   := (a -> b) & (b -> a)
//   <S> a     := ~[S]~a          <W> a := ~[W]~a
//
// Values are cheap to copy and safe to share across threads.
// ============================================================================

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace swonbt {

enum class Kind : std::uint8_t {
  Atom,
  Bottom,
  Not,
  And,
  Next,
  Yesterday,
  StrongNec,
  WeakNec,
};

class Formula {
 public:
  static Formula atom(std::string name);
  static Formula bottom();
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula next(Formula operand);
  static Formula yesterday(Formula operand);
  static Formula strong(Formula operand);
  static Formula weak(Formula operand);

  // Sugar; each returns the primitive expansion.
  static Formula top();
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);
  static Formula strong_possible(Formula operand);
  static Formula weak_possible(Formula operand);

  Kind kind() const noexcept;
  // Atom name; empty for every other kind.
  const std::string& name() const noexcept;
  std::size_t arity() const noexcept;
  const Formula& child(std::size_t index) const;
  const Formula& operand() const { return child(0); }
  const Formula& lhs() const { return child(0); }
  const Formula& rhs() const { return child(1); }

  // Node count.
  std::size_t size() const noexcept;
  std::size_t hash() const noexcept;
  // Address of the shared node; stable for the lifetime of any copy.
  const void* identity() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// X^n f and Y^n f.
Formula next_n(std::size_t n, Formula f);
Formula yesterday_n(std::size_t n, Formula f);

// Left-folded conjunction/disjunction; empty list gives true/false.
Formula conjunction_of(const std::vector<Formula>& parts);
Formula disjunction_of(const std::vector<Formula>& parts);

// ── Sugar recognizers (inverse of the factory helpers) ─────────────────────

bool is_top(const Formula& f);
std::optional<std::pair<Formula, Formula>> match_disjunction(const Formula& f);
std::optional<std::pair<Formula, Formula>> match_implication(const Formula& f);
std::optional<std::pair<Formula, Formula>> match_equivalence(const Formula& f);
std::optional<Formula> match_strong_possible(const Formula& f);
std::optional<Formula> match_weak_possible(const Formula& f);

// ── Fragments ───────────────────────────────────────────────────────────────

enum class Fragment : std::uint8_t {
  SWONBT,
  SWXXYY,
  XXYY,
  SW1,
  Propositional,
};

const char* fragment_name(Fragment f) noexcept;

// X^n p | X^n false | Y^n p | Y^n false, for any n >= 0.
bool is_prefixed_atom(const Formula& f);
bool is_propositional(const Formula& f);
bool is_xxyy(const Formula& f);
bool is_swxxyy(const Formula& f);
bool is_sw1(const Formula& f);

std::set<Fragment> classify(const Formula& f);

// chi ::= [S]phi | [W]phi | ~chi | (chi & chi)
bool is_closed(const Formula& f);

// ── Measures ────────────────────────────────────────────────────────────────

std::set<std::string> atoms_of(const Formula& f);
// Largest number of X (resp. Y) nodes on a root-to-leaf path.
std::size_t next_depth(const Formula& f);
std::size_t yesterday_depth(const Formula& f);
// Largest number of [S]/[W] nodes on a root-to-leaf path.
std::size_t modal_depth(const Formula& f);

// ── Positions ───────────────────────────────────────────────────────────────

// Child-index path from the root.
using Path = std::vector<std::size_t>;

std::optional<Formula> subformula_at(const Formula& f, const Path& path);
// Replaces the subformula at `path`; nullopt when the path does not exist.
std::optional<Formula> replace_at(const Formula& f, const Path& path, const Formula& replacement);

}  // namespace swonbt
