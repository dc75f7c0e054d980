#include "swonbt/rewrite.hpp"

#include <algorithm>
#include <limits>

#include "swonbt/error.hpp"
#include "swonbt/syntax.hpp"

namespace swonbt {

namespace {

// Peels a chain of identical temporal prefixes: returns (count, base).
std::pair<std::size_t, Formula> peel(const Formula& f, Kind prefix) {
  std::size_t n = 0;
  Formula base = f;
  while (base.kind() == prefix) {
    base = base.operand();
    ++n;
  }
  return {n, base};
}

bool is_modal(const Formula& f) {
  return f.kind() == Kind::StrongNec || f.kind() == Kind::WeakNec;
}

Formula rewrap(Kind modal, Formula body) {
  return modal == Kind::StrongNec ? Formula::strong(std::move(body)) : Formula::weak(std::move(body));
}

// ── delta ───────────────────────────────────────────────────────────────────

Formula push_next(const Formula& g) {
  switch (g.kind()) {
    case Kind::Atom:
    case Kind::Bottom:
    case Kind::Next:
      return Formula::next(g);
    case Kind::Yesterday:
      // X Y^n b == Y^(n-1) b: the position after i always has a predecessor.
      return g.operand();
    case Kind::Not:
      return Formula::negation(push_next(g.operand()));
    case Kind::And:
      return Formula::conjunction(push_next(g.lhs()), push_next(g.rhs()));
    case Kind::StrongNec:
    case Kind::WeakNec:
      return rewrap(g.kind(), push_next(g.operand()));
  }
  return g;
}

Formula push_yesterday(const Formula& g) {
  static const Formula kOrigin = Formula::yesterday(Formula::bottom());
  switch (g.kind()) {
    case Kind::Atom:
    case Kind::Bottom:
    case Kind::Yesterday:
      return Formula::yesterday(g);
    case Kind::Next:
      // Y X^n b == Y false | X^(n-1) b.
      return Formula::disjunction(kOrigin, g.operand());
    case Kind::Not:
      return Formula::disjunction(kOrigin, Formula::negation(push_yesterday(g.operand())));
    case Kind::And:
      return Formula::conjunction(push_yesterday(g.lhs()), push_yesterday(g.rhs()));
    case Kind::StrongNec:
    case Kind::WeakNec:
      return rewrap(g.kind(), push_yesterday(g.operand()));
  }
  return g;
}

// ── gamma ───────────────────────────────────────────────────────────────────

struct Unit {
  Formula formula;
  bool positive;
  friend bool operator==(const Unit&, const Unit&) = default;
};
using Clause = std::vector<Unit>;

// CNF over units (modal atoms and maximal XXYY subformulas) of `f` taken with
// the given polarity.
std::vector<Clause> unit_cnf(const Formula& f, bool positive) {
  if (f.kind() == Kind::Not) return unit_cnf(f.operand(), !positive);
  if (is_xxyy(f) || is_modal(f)) return {Clause{Unit{f, positive}}};
  // And.
  auto left = unit_cnf(f.lhs(), positive);
  auto right = unit_cnf(f.rhs(), positive);
  if (positive) {
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }
  std::vector<Clause> out;
  for (const auto& a : left) {
    for (const auto& b : right) {
      Clause c = a;
      c.insert(c.end(), b.begin(), b.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

// Removes repeated literals; nullopt for a tautological clause.
std::optional<Clause> tidy(const Clause& c) {
  Clause out;
  for (const auto& u : c) {
    bool seen = false;
    for (const auto& v : out) {
      if (v.formula == u.formula) {
        if (v.positive != u.positive) return std::nullopt;
        seen = true;
      }
    }
    if (!seen) out.push_back(u);
  }
  return out;
}

Formula literal(const Unit& u) { return u.positive ? u.formula : Formula::negation(u.formula); }

// Op(body) for a body in SW1: every clause splits into its closed part, which
// leaves the modality, and its XXYY part, which stays under it.
Formula flatten(Kind modal, const Formula& body) {
  std::vector<Clause> clauses;
  for (const auto& raw : unit_cnf(body, true)) {
    auto c = tidy(raw);
    if (!c) continue;
    if (std::find(clauses.begin(), clauses.end(), *c) == clauses.end()) clauses.push_back(*c);
  }
  std::vector<Formula> conjuncts;
  for (const auto& clause : clauses) {
    std::vector<Formula> closed;
    std::vector<Formula> local;
    for (const auto& u : clause) (is_modal(u.formula) ? closed : local).push_back(literal(u));
    if (!local.empty()) {
      closed.push_back(rewrap(modal, disjunction_of(local)));
    } else if (modal == Kind::WeakNec) {
      // [W] over an empty expected set holds regardless of the closed part.
      closed.push_back(Formula::weak(Formula::bottom()));
    }
    conjuncts.push_back(disjunction_of(closed));
  }
  return conjunction_of(conjuncts);
}

Formula gamma_rec(const Formula& f) {
  switch (f.kind()) {
    case Kind::Not:
      return Formula::negation(gamma_rec(f.operand()));
    case Kind::And:
      return Formula::conjunction(gamma_rec(f.lhs()), gamma_rec(f.rhs()));
    case Kind::StrongNec:
    case Kind::WeakNec:
      return flatten(f.kind(), gamma_rec(f.operand()));
    default:
      return f;  // prefixed atom
  }
}

// ── dnf_xxyy ────────────────────────────────────────────────────────────────

LiteralConjunction prefixed_literal(const Formula& f, bool positive) {
  LiteralConjunction c;
  auto [xs, xbase] = peel(f, Kind::Next);
  if (xs > 0) {
    if (xbase.kind() == Kind::Bottom) {
      if (positive) c.make_contradictory();
    } else {
      c.add_literal(static_cast<int>(xs), xbase.name(), positive);
    }
    return c;
  }
  auto [ys, ybase] = peel(f, Kind::Yesterday);
  if (ybase.kind() == Kind::Bottom) {
    if (ys == 0) {
      if (positive) c.make_contradictory();
    } else if (positive) {
      c.require_clock_below(ys);
    } else {
      c.require_clock_at_least(ys);
    }
    return c;
  }
  if (ys > 0 && !positive) c.require_clock_at_least(ys);
  c.add_literal(-static_cast<int>(ys), ybase.name(), positive);
  return c;
}

std::vector<LiteralConjunction> normalize(std::vector<LiteralConjunction> ds) {
  std::erase_if(ds, [](const LiteralConjunction& c) { return !c.consistent(); });
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  std::vector<LiteralConjunction> out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < ds.size() && !subsumed; ++j) {
      if (j != i && ds[j].subsumes(ds[i])) subsumed = true;
    }
    if (!subsumed) out.push_back(ds[i]);
  }
  return out;
}

std::vector<LiteralConjunction> dnf_rec(const Formula& f, bool positive) {
  if (is_prefixed_atom(f)) {
    auto c = prefixed_literal(f, positive);
    if (!c.consistent()) return {};
    return {c};
  }
  if (f.kind() == Kind::Not) return dnf_rec(f.operand(), !positive);
  auto left = dnf_rec(f.lhs(), positive);
  auto right = dnf_rec(f.rhs(), positive);
  if (!positive) {
    left.insert(left.end(), right.begin(), right.end());
    return normalize(std::move(left));
  }
  std::vector<LiteralConjunction> out;
  for (const auto& a : left) {
    for (const auto& b : right) {
      LiteralConjunction c = a;
      if (c.merge(b)) out.push_back(std::move(c));
    }
  }
  return normalize(std::move(out));
}

// ── modal_dnf ───────────────────────────────────────────────────────────────

using Assignment = std::vector<std::pair<Formula, bool>>;

struct Reduced {
  std::optional<bool> constant;
  Formula formula = Formula::bottom();
};

std::optional<bool> lookup(const Assignment& a, const Formula& f) {
  for (const auto& [m, v] : a) {
    if (m == f) return v;
  }
  return std::nullopt;
}

Reduced reduce(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Kind::Bottom:
      return {false, f};
    case Kind::StrongNec:
    case Kind::WeakNec:
      if (auto v = lookup(a, f)) return {*v, f};
      return {std::nullopt, f};
    case Kind::Not: {
      auto r = reduce(f.operand(), a);
      if (r.constant) return {!*r.constant, f};
      if (r.formula.kind() == Kind::Not) return {std::nullopt, r.formula.operand()};
      return {std::nullopt, Formula::negation(r.formula)};
    }
    case Kind::And: {
      auto l = reduce(f.lhs(), a);
      if (l.constant && !*l.constant) return {false, f};
      auto r = reduce(f.rhs(), a);
      if (r.constant && !*r.constant) return {false, f};
      if (l.constant) return r;
      if (r.constant) return l;
      return {std::nullopt, Formula::conjunction(l.formula, r.formula)};
    }
    default:
      return {std::nullopt, f};
  }
}

std::optional<Formula> first_modal(const Formula& f) {
  if (is_modal(f)) return f;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (auto m = first_modal(f.child(i))) return m;
  }
  return std::nullopt;
}

void split(const Formula& f, Assignment& a, std::vector<Formula>& out) {
  auto r = reduce(f, a);
  if (r.constant && !*r.constant) return;
  std::optional<Formula> pivot;
  if (!r.constant) pivot = first_modal(r.formula);
  if (!pivot) {
    std::vector<Formula> parts;
    for (const auto& [m, v] : a) parts.push_back(v ? m : Formula::negation(m));
    if (!r.constant) parts.push_back(r.formula);
    out.push_back(conjunction_of(parts));
    return;
  }
  for (bool value : {true, false}) {
    a.emplace_back(*pivot, value);
    split(r.formula, a, out);
    a.pop_back();
  }
}

void flatten_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Kind::And) {
    flatten_conjuncts(f.lhs(), out);
    flatten_conjuncts(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

Formula negate_body(const Formula& f) {
  return f.kind() == Kind::Not ? f.operand() : Formula::negation(f);
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

}  // namespace

Formula delta(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Bottom:
      return f;
    case Kind::Not:
      return Formula::negation(delta(f.operand()));
    case Kind::And:
      return Formula::conjunction(delta(f.lhs()), delta(f.rhs()));
    case Kind::Next:
      return push_next(delta(f.operand()));
    case Kind::Yesterday:
      return push_yesterday(delta(f.operand()));
    case Kind::StrongNec:
    case Kind::WeakNec:
      return rewrap(f.kind(), delta(f.operand()));
  }
  return f;
}

Formula gamma(const Formula& f) {
  if (!is_swxxyy(f)) throw FragmentError("gamma expects an SWXXYY formula, got " + print(f));
  return gamma_rec(f);
}

// ── LiteralConjunction ──────────────────────────────────────────────────────

bool LiteralConjunction::make_contradictory() {
  consistent_ = false;
  literals_.clear();
  min_clock_ = 0;
  clock_limit_.reset();
  return false;
}

bool LiteralConjunction::add_literal(int offset, const std::string& atom, bool positive) {
  if (!consistent_) return false;
  auto [it, inserted] = literals_.emplace(std::pair{offset, atom}, positive);
  if (!inserted && it->second != positive) return make_contradictory();
  return true;
}

bool LiteralConjunction::require_clock_at_least(std::size_t n) {
  if (!consistent_) return false;
  min_clock_ = std::max(min_clock_, n);
  if (clock_limit_ && *clock_limit_ <= min_clock_) return make_contradictory();
  return true;
}

bool LiteralConjunction::require_clock_below(std::size_t n) {
  if (!consistent_) return false;
  clock_limit_ = clock_limit_ ? std::min(*clock_limit_, n) : n;
  if (*clock_limit_ <= min_clock_) return make_contradictory();
  return true;
}

bool LiteralConjunction::merge(const LiteralConjunction& other) {
  if (!other.consistent_) return make_contradictory();
  if (!require_clock_at_least(other.min_clock_)) return false;
  if (other.clock_limit_ && !require_clock_below(*other.clock_limit_)) return false;
  for (const auto& [key, positive] : other.literals_) {
    if (!add_literal(key.first, key.second, positive)) return false;
  }
  return true;
}

std::size_t LiteralConjunction::past_reach() const noexcept {
  std::size_t reach = min_clock_;
  if (clock_limit_) reach = std::max(reach, *clock_limit_);
  for (const auto& [key, positive] : literals_) {
    if (key.first < 0) reach = std::max(reach, static_cast<std::size_t>(-key.first));
  }
  return reach;
}

std::size_t LiteralConjunction::future_reach() const noexcept {
  std::size_t reach = 0;
  for (const auto& [key, positive] : literals_) {
    if (key.first > 0) reach = std::max(reach, static_cast<std::size_t>(key.first));
  }
  return reach;
}

bool LiteralConjunction::subsumes(const LiteralConjunction& other) const {
  if (!consistent_) return !other.consistent_;
  if (!other.consistent_) return true;
  if (min_clock_ > other.min_clock_) return false;
  if (clock_limit_ && (!other.clock_limit_ || *other.clock_limit_ > *clock_limit_)) return false;
  for (const auto& [key, positive] : literals_) {
    auto it = other.literals_.find(key);
    if (it == other.literals_.end() || it->second != positive) return false;
  }
  return true;
}

Formula LiteralConjunction::to_formula() const {
  if (!consistent_) return Formula::bottom();
  std::vector<Formula> parts;
  for (const auto& [key, positive] : literals_) {
    const auto& [offset, atom] = key;
    Formula a = Formula::atom(atom);
    if (offset >= 0) {
      a = next_n(static_cast<std::size_t>(offset), a);
    } else {
      const auto n = static_cast<std::size_t>(-offset);
      // A negative past literal already carries its i >= n bound.
      a = yesterday_n(n, a);
    }
    parts.push_back(positive ? a : Formula::negation(a));
  }
  bool bound_implied = false;
  for (const auto& [key, positive] : literals_) {
    if (!positive && key.first < 0 && static_cast<std::size_t>(-key.first) == min_clock_) {
      bound_implied = true;
    }
  }
  if (min_clock_ > 0 && !bound_implied) {
    parts.push_back(Formula::negation(yesterday_n(min_clock_, Formula::bottom())));
  }
  if (clock_limit_) parts.push_back(yesterday_n(*clock_limit_, Formula::bottom()));
  return conjunction_of(parts);
}

std::vector<LiteralConjunction> dnf_xxyy(const Formula& alpha) {
  if (!is_xxyy(alpha)) throw FragmentError("dnf expects an XXYY formula, got " + print(alpha));
  return dnf_rec(alpha, true);
}

std::vector<Formula> modal_dnf(const Formula& sw1) {
  if (!is_sw1(sw1)) throw FragmentError("modal DNF expects an SW1 formula, got " + print(sw1));
  std::vector<Formula> out;
  Assignment a;
  split(sw1, a, out);
  return out;
}

// ── Core formulas ───────────────────────────────────────────────────────────

Formula CoreFormula::to_formula() const {
  std::vector<Formula> parts{Formula::strong(strong_body)};
  for (const auto& i : strong_witnesses) parts.push_back(Formula::strong_possible(i));
  parts.push_back(Formula::weak(weak_body));
  for (const auto& k : weak_witnesses) parts.push_back(Formula::weak_possible(k));
  parts.push_back(present);
  return conjunction_of(parts);
}

CoreFormula to_core(const Formula& disjunct) {
  std::vector<Formula> conjuncts;
  flatten_conjuncts(disjunct, conjuncts);
  std::vector<Formula> h, j, l;
  CoreFormula core;
  for (const auto& c : conjuncts) {
    if (is_xxyy(c)) {
      l.push_back(c);
      continue;
    }
    const bool negated = c.kind() == Kind::Not;
    const Formula& m = negated ? c.operand() : c;
    if (!is_modal(m) || !is_xxyy(m.operand())) {
      throw ShapeError("not a modal literal over an XXYY body: " + print(c));
    }
    const bool strong = m.kind() == Kind::StrongNec;
    if (!negated) {
      (strong ? h : j).push_back(m.operand());
    } else {
      (strong ? core.strong_witnesses : core.weak_witnesses).push_back(negate_body(m.operand()));
    }
  }
  core.strong_body = conjunction_of(h);
  core.weak_body = conjunction_of(j);
  core.present = conjunction_of(l);
  if (core.strong_witnesses.empty()) core.strong_witnesses.push_back(Formula::top());
  core.kind = core.weak_witnesses.empty() ? CoreKind::Partial : CoreKind::Full;
  return core;
}

std::vector<SlotRole> slot_roles(const CoreFormula& core) {
  std::vector<SlotRole> roles(core.strong_witnesses.size(), SlotRole::StrongWitness);
  if (core.kind == CoreKind::Full) {
    roles.insert(roles.end(), core.weak_witnesses.size(), SlotRole::WeakWitness);
  }
  roles.push_back(SlotRole::Present);
  return roles;
}

std::vector<Formula> basic_sequence(const CoreFormula& core) {
  std::vector<Formula> out;
  const Formula& h = core.strong_body;
  for (const auto& i : core.strong_witnesses) out.push_back(Formula::conjunction(h, i));
  if (core.kind == CoreKind::Full) {
    for (const auto& k : core.weak_witnesses) {
      out.push_back(Formula::conjunction(Formula::conjunction(h, core.weak_body), k));
    }
  }
  out.push_back(Formula::conjunction(h, core.present));
  return out;
}

AtomicSequenceEnumerator::AtomicSequenceEnumerator(const CoreFormula& core, std::size_t cap) {
  auto add = [&](const Formula& f) {
    dj_.push_back(dnf_xxyy(f));
    return dj_.size() - 1;
  };
  const std::size_t h = add(core.strong_body);
  for (const auto& i : core.strong_witnesses) slots_.push_back({h, add(i)});
  if (core.kind == CoreKind::Full) {
    const std::size_t j = add(core.weak_body);
    for (const auto& k : core.weak_witnesses) slots_.push_back({h, j, add(k)});
  }
  slots_.push_back({h, add(core.present)});

  count_ = 1;
  for (const auto& slot : slots_) {
    for (std::size_t idx : slot) {
      radices_.push_back(dj_[idx].size());
      count_ = saturating_mul(count_, dj_[idx].size());
    }
  }
  if (count_ > cap) {
    throw CombinatorialLimit("core formula has more than " + std::to_string(cap) +
                             " atomic sequences");
  }
  digits_.assign(radices_.size(), 0);
}

std::optional<AtomicSequence> AtomicSequenceEnumerator::next() {
  if (produced_ >= count_) return std::nullopt;
  AtomicSequence seq;
  std::size_t d = 0;
  for (const auto& slot : slots_) {
    LiteralConjunction element;
    for (std::size_t idx : slot) element.merge(dj_[idx][digits_[d++]]);
    seq.push_back(std::move(element));
  }
  for (std::size_t k = digits_.size(); k-- > 0;) {
    if (++digits_[k] < radices_[k]) break;
    digits_[k] = 0;
  }
  ++produced_;
  return seq;
}

}  // namespace swonbt
