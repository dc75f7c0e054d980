// ============================================================================
// swonbt/proofcheck.hpp — Hilbert-style derivations
// ============================================================================
//
// Axiom schemas (metavariables PHI, PSI, CHI, ALPHA):
//
//   taut  any formula whose propositional skeleton is a tautology
//   ax2a  X ~PHI <-> ~X PHI                ax3a  Y ~PHI <-> (Y false | ~Y PHI)
//   ax2b  X (PHI & PSI) <-> (X PHI & X PSI) ax3b  Y (PHI & PSI) <-> (Y PHI & Y PSI)
//   ax2c  X Y PHI <-> PHI                  ax3c  Y X PHI <-> (Y false | PHI)
//   ax2d  X [S] PHI <-> [S] X PHI          ax3d  Y [S] PHI <-> [S] Y PHI
//   ax2e  X [W] PHI <-> [W] X PHI          ax3e  Y [W] PHI <-> [W] Y PHI
//   ax2f  ~X ~true                         ax3f  <S> Y false -> (<S> ALPHA -> ALPHA)
//   ax4a  [S] (PHI -> PSI) -> ([S] PHI -> [S] PSI)
//   ax4b  [S] (CHI | PHI) <-> (CHI | [S] PHI)
//   ax4c  [S] PHI -> PHI
//   ax5a  [W] (PHI -> PSI) -> ([W] PHI -> [W] PSI)
//   ax5b  [W] (CHI | PHI) <-> (CHI | [W] PHI)
//   ax6   [S] PHI -> [W] PHI
//
// CHI must be closed and ALPHA propositional.
//
// Proof file, one step per line ('#' starts a comment):
//
//   <n>. <formula> ; <rule>
//
//   rule ::= taut | ax2a .. ax6 | mp <i> <j> | genX <i> | genY <i> | genS <i>
//          | genW <i> | repl <i> <j> at <path> | repl <i> at <path>
//
// mp i j: line i is phi and line j is phi -> psi; the step is psi.
// repl i j at P: line i is psi <-> psi', line j is phi with psi at P; the step
// is phi with that one occurrence replaced by psi'.
// repl i at P: from psi <-> psi' derive phi <-> phi', phi' as above.
// Paths are dot-separated child indices from the root (0 = first child);
// "root" is the empty path.
// ============================================================================

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swonbt/error.hpp"
#include "swonbt/formula.hpp"

namespace swonbt {

enum class AxiomId {
  Taut,
  Ax2a, Ax2b, Ax2c, Ax2d, Ax2e, Ax2f,
  Ax3a, Ax3b, Ax3c, Ax3d, Ax3e, Ax3f,
  Ax4a, Ax4b, Ax4c,
  Ax5a, Ax5b,
  Ax6,
};

const char* axiom_name(AxiomId id) noexcept;
std::optional<AxiomId> axiom_from_name(std::string_view name);
std::vector<AxiomId> all_axioms();

// The schema with metavariables as atoms; nullopt for Taut.
std::optional<Formula> axiom_schema(AxiomId id);

using Substitution = std::map<std::string, Formula>;

struct AxiomMatch {
  AxiomId id;
  Substitution substitution;  // empty for Taut
};

// Truth-table check of the propositional skeleton (X/Y/[S]/[W] subformulas
// and atoms abstracted to variables).
bool is_tautology(const Formula& f);

// Instance of `schema` via `subst` (metavariables replaced).
Formula instantiate(const Formula& schema, const Substitution& subst);

// Structural match against one schema, ignoring side conditions.
std::optional<Substitution> match_schema(AxiomId id, const Formula& f);
bool side_condition_holds(AxiomId id, const Substitution& subst);

// First schema (ax2a..ax6, then taut) that f instantiates with its side
// conditions met.
std::optional<AxiomMatch> match_axiom(const Formula& f);

enum class RuleKind { Axiom, ModusPonens, GenX, GenY, GenS, GenW, Replacement, ReplacementEquivalence };

struct Justification {
  RuleKind rule = RuleKind::Axiom;
  AxiomId axiom = AxiomId::Taut;   // for RuleKind::Axiom
  std::vector<std::size_t> refs;  // 1-based line numbers
  Path path;                      // for replacement
};

struct ProofLine {
  std::size_t number;
  Formula formula;
  Justification justification;
};

struct Derivation {
  std::vector<ProofLine> lines;
};

enum class ProofErrorKind { Syntax, BadReference, SideConditionViolated, RuleMismatch };

const char* proof_error_name(ProofErrorKind kind) noexcept;

class ProofError : public Error {
 public:
  ProofError(ProofErrorKind kind, std::size_t line, const std::string& what)
      : Error(std::string(proof_error_name(kind)) + " at line " + std::to_string(line) + ": " + what),
        kind_(kind),
        line_(line) {}
  ProofErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ProofErrorKind kind_;
  std::size_t line_;
};

// Throws ProofError(Syntax) with the 1-based step number.
Derivation parse_proof(std::string_view text);
Derivation load_proof(const std::string& path);

std::string format_justification(const Justification& j);
std::string write_proof(const Derivation& d);

std::string format_path(const Path& p);
std::optional<Path> parse_path(std::string_view text);

// nullopt when every step checks; otherwise the first failing step.
std::optional<ProofError> check_derivation(const Derivation& d);

}  // namespace swonbt
