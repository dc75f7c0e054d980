#include "swonbt/proofcheck.hpp"

#include <array>
#include <charconv>
#include <utility>

#include "internal/io.hpp"
#include "swonbt/syntax.hpp"

namespace swonbt {

namespace {

struct SchemaText {
  AxiomId id;
  const char* name;
  const char* text;
};

constexpr std::array<SchemaText, 19> kSchemas{{
    {AxiomId::Taut, "taut", nullptr},
    {AxiomId::Ax2a, "ax2a", "X ~PHI <-> ~X PHI"},
    {AxiomId::Ax2b, "ax2b", "X (PHI & PSI) <-> (X PHI & X PSI)"},
    {AxiomId::Ax2c, "ax2c", "X Y PHI <-> PHI"},
    {AxiomId::Ax2d, "ax2d", "X [S] PHI <-> [S] X PHI"},
    {AxiomId::Ax2e, "ax2e", "X [W] PHI <-> [W] X PHI"},
    {AxiomId::Ax2f, "ax2f", "~X ~true"},
    {AxiomId::Ax3a, "ax3a", "Y ~PHI <-> (Y false | ~Y PHI)"},
    {AxiomId::Ax3b, "ax3b", "Y (PHI & PSI) <-> (Y PHI & Y PSI)"},
    {AxiomId::Ax3c, "ax3c", "Y X PHI <-> (Y false | PHI)"},
    {AxiomId::Ax3d, "ax3d", "Y [S] PHI <-> [S] Y PHI"},
    {AxiomId::Ax3e, "ax3e", "Y [W] PHI <-> [W] Y PHI"},
    {AxiomId::Ax3f, "ax3f", "<S> Y false -> (<S> ALPHA -> ALPHA)"},
    {AxiomId::Ax4a, "ax4a", "[S] (PHI -> PSI) -> ([S] PHI -> [S] PSI)"},
    {AxiomId::Ax4b, "ax4b", "[S] (CHI | PHI) <-> (CHI | [S] PHI)"},
    {AxiomId::Ax4c, "ax4c", "[S] PHI -> PHI"},
    {AxiomId::Ax5a, "ax5a", "[W] (PHI -> PSI) -> ([W] PHI -> [W] PSI)"},
    {AxiomId::Ax5b, "ax5b", "[W] (CHI | PHI) <-> (CHI | [W] PHI)"},
    {AxiomId::Ax6, "ax6", "[S] PHI -> [W] PHI"},
}};

bool is_metavariable(const std::string& name) {
  return name == "PHI" || name == "PSI" || name == "CHI" || name == "ALPHA";
}

bool unify(const Formula& pattern, const Formula& f, Substitution& subst) {
  if (pattern.kind() == Kind::Atom && is_metavariable(pattern.name())) {
    auto [it, inserted] = subst.emplace(pattern.name(), f);
    return inserted || it->second == f;
  }
  if (pattern.kind() != f.kind() || pattern.arity() != f.arity()) return false;
  if (pattern.kind() == Kind::Atom) return pattern.name() == f.name();
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!unify(pattern.child(i), f.child(i), subst)) return false;
  }
  return true;
}

// Propositional skeleton: truth-functional structure over abstracted leaves.
void collect_leaves(const Formula& f, std::vector<Formula>& leaves) {
  if (f.kind() == Kind::Not || f.kind() == Kind::And) {
    for (std::size_t i = 0; i < f.arity(); ++i) collect_leaves(f.child(i), leaves);
    return;
  }
  if (f.kind() == Kind::Bottom) return;
  for (const auto& l : leaves) {
    if (l == f) return;
  }
  leaves.push_back(f);
}

bool eval_skeleton(const Formula& f, const std::vector<Formula>& leaves, std::uint64_t row) {
  switch (f.kind()) {
    case Kind::Bottom: return false;
    case Kind::Not: return !eval_skeleton(f.operand(), leaves, row);
    case Kind::And:
      return eval_skeleton(f.lhs(), leaves, row) && eval_skeleton(f.rhs(), leaves, row);
    default:
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (leaves[i] == f) return (row >> i) & 1u;
      }
      return false;
  }
}

std::optional<std::size_t> parse_number(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<Justification> parse_justification(std::string_view text) {
  auto w = words(text);
  if (w.empty()) return std::nullopt;
  Justification j;
  auto refs = [&](std::size_t from, std::size_t count) {
    for (std::size_t k = from; k < from + count; ++k) {
      if (k >= w.size()) return false;
      auto n = parse_number(w[k]);
      if (!n) return false;
      j.refs.push_back(*n);
    }
    return true;
  };
  const auto& head = w[0];
  if (auto ax = axiom_from_name(head)) {
    if (w.size() != 1) return std::nullopt;
    j.rule = RuleKind::Axiom;
    j.axiom = *ax;
    return j;
  }
  if (head == "mp") {
    j.rule = RuleKind::ModusPonens;
    if (w.size() != 3 || !refs(1, 2)) return std::nullopt;
    return j;
  }
  static const std::array<std::pair<const char*, RuleKind>, 4> kGen{{
      {"genX", RuleKind::GenX}, {"genY", RuleKind::GenY},
      {"genS", RuleKind::GenS}, {"genW", RuleKind::GenW},
  }};
  for (const auto& [name, kind] : kGen) {
    if (head == name) {
      j.rule = kind;
      if (w.size() != 2 || !refs(1, 1)) return std::nullopt;
      return j;
    }
  }
  if (head == "repl") {
    std::size_t nrefs = 0;
    if (w.size() == 5 && w[3] == "at") {
      j.rule = RuleKind::Replacement;
      nrefs = 2;
    } else if (w.size() == 4 && w[2] == "at") {
      j.rule = RuleKind::ReplacementEquivalence;
      nrefs = 1;
    } else {
      return std::nullopt;
    }
    if (!refs(1, nrefs)) return std::nullopt;
    auto p = parse_path(w.back());
    if (!p) return std::nullopt;
    j.path = *p;
    return j;
  }
  return std::nullopt;
}

ProofError mismatch(std::size_t line, const std::string& why) {
  return ProofError(ProofErrorKind::RuleMismatch, line, why);
}

std::optional<ProofError> check_line(const Derivation& d, std::size_t index) {
  const ProofLine& step = d.lines[index];
  const std::size_t n = step.number;
  const Justification& j = step.justification;
  for (std::size_t r : j.refs) {
    if (r == 0 || r >= n) {
      return ProofError(ProofErrorKind::BadReference, n,
                        "line " + std::to_string(r) + " is not an earlier step");
    }
  }
  auto ref = [&](std::size_t k) -> const Formula& { return d.lines[j.refs[k] - 1].formula; };

  switch (j.rule) {
    case RuleKind::Axiom: {
      if (j.axiom == AxiomId::Taut) {
        if (is_tautology(step.formula)) return std::nullopt;
        return mismatch(n, "not a propositional tautology");
      }
      auto subst = match_schema(j.axiom, step.formula);
      if (!subst) return mismatch(n, std::string("not an instance of ") + axiom_name(j.axiom));
      if (!side_condition_holds(j.axiom, *subst)) {
        return ProofError(ProofErrorKind::SideConditionViolated, n,
                          j.axiom == AxiomId::Ax3f ? "ALPHA must be propositional"
                                                   : "CHI must be a closed formula");
      }
      return std::nullopt;
    }
    case RuleKind::ModusPonens: {
      auto imp = match_implication(ref(1));
      if (!imp) return mismatch(n, "second premise is not an implication");
      if (!(imp->first == ref(0))) return mismatch(n, "antecedent differs from the first premise");
      if (!(imp->second == step.formula)) return mismatch(n, "consequent differs from this step");
      return std::nullopt;
    }
    case RuleKind::GenX:
    case RuleKind::GenY:
    case RuleKind::GenS:
    case RuleKind::GenW: {
      const Formula& p = ref(0);
      Formula expected = j.rule == RuleKind::GenX   ? Formula::next(p)
                         : j.rule == RuleKind::GenY ? Formula::yesterday(p)
                         : j.rule == RuleKind::GenS ? Formula::strong(p)
                                                    : Formula::weak(p);
      if (expected == step.formula) return std::nullopt;
      return mismatch(n, "expected " + print(expected));
    }
    case RuleKind::Replacement:
    case RuleKind::ReplacementEquivalence: {
      auto eq = match_equivalence(ref(0));
      if (!eq) return mismatch(n, "first premise is not an equivalence");
      const auto& [from, to] = *eq;
      Formula target = step.formula;
      Formula result = step.formula;
      if (j.rule == RuleKind::Replacement) {
        target = ref(1);
      } else {
        auto parts = match_equivalence(step.formula);
        if (!parts) return mismatch(n, "step is not an equivalence");
        target = parts->first;
        result = parts->second;
      }
      auto at = subformula_at(target, j.path);
      if (!at) return mismatch(n, "path " + format_path(j.path) + " does not exist");
      if (!(*at == from)) return mismatch(n, "subformula at " + format_path(j.path) + " is not " + print(from));
      auto replaced = replace_at(target, j.path, to);
      if (!replaced || !(*replaced == result)) return mismatch(n, "replacement result differs");
      return std::nullopt;
    }
  }
  return mismatch(n, "unknown rule");
}

}  // namespace

const char* axiom_name(AxiomId id) noexcept {
  for (const auto& s : kSchemas) {
    if (s.id == id) return s.name;
  }
  return "?";
}

std::optional<AxiomId> axiom_from_name(std::string_view name) {
  for (const auto& s : kSchemas) {
    if (name == s.name) return s.id;
  }
  return std::nullopt;
}

std::vector<AxiomId> all_axioms() {
  std::vector<AxiomId> out;
  for (const auto& s : kSchemas) out.push_back(s.id);
  return out;
}

std::optional<Formula> axiom_schema(AxiomId id) {
  static const std::map<AxiomId, Formula> parsed = [] {
    std::map<AxiomId, Formula> m;
    for (const auto& s : kSchemas) {
      if (s.text) m.emplace(s.id, parse(s.text));
    }
    return m;
  }();
  auto it = parsed.find(id);
  if (it == parsed.end()) return std::nullopt;
  return it->second;
}

bool is_tautology(const Formula& f) {
  std::vector<Formula> leaves;
  collect_leaves(f, leaves);
  if (leaves.size() > 24) throw Error("tautology check over more than 24 variables");
  const std::uint64_t rows = std::uint64_t{1} << leaves.size();
  for (std::uint64_t row = 0; row < rows; ++row) {
    if (!eval_skeleton(f, leaves, row)) return false;
  }
  return true;
}

Formula instantiate(const Formula& schema, const Substitution& subst) {
  if (schema.kind() == Kind::Atom) {
    auto it = subst.find(schema.name());
    return it == subst.end() ? schema : it->second;
  }
  switch (schema.kind()) {
    case Kind::Bottom: return schema;
    case Kind::Not: return Formula::negation(instantiate(schema.operand(), subst));
    case Kind::And:
      return Formula::conjunction(instantiate(schema.lhs(), subst), instantiate(schema.rhs(), subst));
    case Kind::Next: return Formula::next(instantiate(schema.operand(), subst));
    case Kind::Yesterday: return Formula::yesterday(instantiate(schema.operand(), subst));
    case Kind::StrongNec: return Formula::strong(instantiate(schema.operand(), subst));
    case Kind::WeakNec: return Formula::weak(instantiate(schema.operand(), subst));
    default: return schema;
  }
}

std::optional<Substitution> match_schema(AxiomId id, const Formula& f) {
  auto schema = axiom_schema(id);
  if (!schema) return std::nullopt;
  Substitution subst;
  if (!unify(*schema, f, subst)) return std::nullopt;
  return subst;
}

bool side_condition_holds(AxiomId id, const Substitution& subst) {
  if (id == AxiomId::Ax3f) return is_propositional(subst.at("ALPHA"));
  if (id == AxiomId::Ax4b || id == AxiomId::Ax5b) return is_closed(subst.at("CHI"));
  return true;
}

std::optional<AxiomMatch> match_axiom(const Formula& f) {
  for (const auto& s : kSchemas) {
    if (s.id == AxiomId::Taut) continue;
    auto subst = match_schema(s.id, f);
    if (subst && side_condition_holds(s.id, *subst)) return AxiomMatch{s.id, std::move(*subst)};
  }
  if (is_tautology(f)) return AxiomMatch{AxiomId::Taut, {}};
  return std::nullopt;
}

const char* proof_error_name(ProofErrorKind kind) noexcept {
  switch (kind) {
    case ProofErrorKind::Syntax: return "SyntaxError";
    case ProofErrorKind::BadReference: return "BadReference";
    case ProofErrorKind::SideConditionViolated: return "SideConditionViolated";
    case ProofErrorKind::RuleMismatch: return "RuleMismatch";
  }
  return "ProofError";
}

std::string format_path(const Path& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

std::optional<Path> parse_path(std::string_view text) {
  if (text == "root") return Path{};
  Path p;
  std::size_t start = 0;
  while (true) {
    auto dot = text.find('.', start);
    auto n = parse_number(text.substr(start, dot == std::string_view::npos ? dot : dot - start));
    if (!n) return std::nullopt;
    p.push_back(*n);
    if (dot == std::string_view::npos) return p;
    start = dot + 1;
  }
}

Derivation parse_proof(std::string_view text) {
  Derivation d;
  auto lines = internal::split_lines(text);
  for (const auto& raw : lines) {
    auto line = internal::trim(internal::strip_comment(raw));
    if (line.empty()) continue;
    const std::size_t expected = d.lines.size() + 1;
    auto fail = [&](const std::string& why) {
      return ProofError(ProofErrorKind::Syntax, expected, why);
    };
    auto dot = line.find('.');
    if (dot == std::string_view::npos) throw fail("expected '<n>. <formula> ; <rule>'");
    auto number = parse_number(internal::trim(line.substr(0, dot)));
    if (!number) throw fail("bad step number");
    if (*number != expected) {
      throw fail("steps must be numbered consecutively from 1, got " + std::to_string(*number));
    }
    auto semi = line.rfind(';');
    if (semi == std::string_view::npos || semi < dot) throw fail("missing '; <rule>'");
    Formula f = Formula::bottom();
    try {
      f = parse(internal::trim(line.substr(dot + 1, semi - dot - 1)));
    } catch (const SyntaxError& e) {
      throw fail(std::string("formula: ") + e.what());
    }
    auto j = parse_justification(internal::trim(line.substr(semi + 1)));
    if (!j) throw fail("unrecognized rule '" + std::string(internal::trim(line.substr(semi + 1))) + "'");
    d.lines.push_back(ProofLine{*number, f, *j});
  }
  return d;
}

Derivation load_proof(const std::string& path) { return parse_proof(internal::read_file(path)); }

std::string format_justification(const Justification& j) {
  auto refs = [&] {
    std::string out;
    for (std::size_t r : j.refs) out += " " + std::to_string(r);
    return out;
  };
  switch (j.rule) {
    case RuleKind::Axiom: return axiom_name(j.axiom);
    case RuleKind::ModusPonens: return "mp" + refs();
    case RuleKind::GenX: return "genX" + refs();
    case RuleKind::GenY: return "genY" + refs();
    case RuleKind::GenS: return "genS" + refs();
    case RuleKind::GenW: return "genW" + refs();
    case RuleKind::Replacement:
    case RuleKind::ReplacementEquivalence:
      return "repl" + refs() + " at " + format_path(j.path);
  }
  return "?";
}

std::string write_proof(const Derivation& d) {
  std::string out;
  for (const auto& l : d.lines) {
    out += std::to_string(l.number) + ". " + print(l.formula) + " ; " +
           format_justification(l.justification) + "\n";
  }
  return out;
}

std::optional<ProofError> check_derivation(const Derivation& d) {
  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    if (d.lines[i].number != i + 1) {
      return ProofError(ProofErrorKind::Syntax, d.lines[i].number, "steps out of sequence");
    }
    if (auto err = check_line(d, i)) return err;
  }
  return std::nullopt;
}

}  // namespace swonbt
