#include "swonbt/formula.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

namespace swonbt {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> children;
  std::size_t size;
  std::size_t hash;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::string kEmptyName;

}  // namespace

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

namespace {

// Builds a node with cached size and structural hash.
template <typename NodeT>
std::shared_ptr<const NodeT> make_node(Kind kind, std::string name, std::vector<Formula> children) {
  auto node = std::make_shared<NodeT>();
  node->kind = kind;
  node->size = 1;
  node->hash = mix(std::hash<int>{}(static_cast<int>(kind)), std::hash<std::string>{}(name));
  for (const auto& c : children) {
    node->size += c.size();
    node->hash = mix(node->hash, c.hash());
  }
  node->name = std::move(name);
  node->children = std::move(children);
  return node;
}

}  // namespace

Formula Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("atom name must be nonempty");
  return Formula(make_node<Node>(Kind::Atom, std::move(name), {}));
}

Formula Formula::bottom() {
  static const Formula instance(make_node<Node>(Kind::Bottom, {}, {}));
  return instance;
}

Formula Formula::negation(Formula operand) {
  return Formula(make_node<Node>(Kind::Not, {}, {std::move(operand)}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(make_node<Node>(Kind::And, {}, {std::move(lhs), std::move(rhs)}));
}

Formula Formula::next(Formula operand) {
  return Formula(make_node<Node>(Kind::Next, {}, {std::move(operand)}));
}

Formula Formula::yesterday(Formula operand) {
  return Formula(make_node<Node>(Kind::Yesterday, {}, {std::move(operand)}));
}

Formula Formula::strong(Formula operand) {
  return Formula(make_node<Node>(Kind::StrongNec, {}, {std::move(operand)}));
}

Formula Formula::weak(Formula operand) {
  return Formula(make_node<Node>(Kind::WeakNec, {}, {std::move(operand)}));
}

Formula Formula::top() { return negation(bottom()); }

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return negation(conjunction(negation(std::move(lhs)), negation(std::move(rhs))));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return negation(conjunction(std::move(lhs), negation(std::move(rhs))));
}

Formula Formula::equivalence(Formula lhs, Formula rhs) {
  return conjunction(implication(lhs, rhs), implication(rhs, lhs));
}

Formula Formula::strong_possible(Formula operand) {
  return negation(strong(negation(std::move(operand))));
}

Formula Formula::weak_possible(Formula operand) {
  return negation(weak(negation(std::move(operand))));
}

Kind Formula::kind() const noexcept { return node_->kind; }

const std::string& Formula::name() const noexcept {
  return node_->kind == Kind::Atom ? node_->name : kEmptyName;
}

std::size_t Formula::arity() const noexcept { return node_->children.size(); }

const Formula& Formula::child(std::size_t index) const { return node_->children.at(index); }

std::size_t Formula::size() const noexcept { return node_->size; }

std::size_t Formula::hash() const noexcept { return node_->hash; }

const void* Formula::identity() const noexcept { return node_.get(); }

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  if (a.node_->name != b.node_->name) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.child(i) == b.child(i))) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.child(i) <=> b.child(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Formula next_n(std::size_t n, Formula f) {
  for (std::size_t i = 0; i < n; ++i) f = Formula::next(std::move(f));
  return f;
}

Formula yesterday_n(std::size_t n, Formula f) {
  for (std::size_t i = 0; i < n; ++i) f = Formula::yesterday(std::move(f));
  return f;
}

Formula conjunction_of(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conjunction(acc, parts[i]);
  return acc;
}

Formula disjunction_of(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::bottom();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disjunction(acc, parts[i]);
  return acc;
}

bool is_top(const Formula& f) { return f.kind() == Kind::Not && f.operand().kind() == Kind::Bottom; }

std::optional<std::pair<Formula, Formula>> match_disjunction(const Formula& f) {
  if (f.kind() != Kind::Not || f.operand().kind() != Kind::And) return std::nullopt;
  const Formula& inner = f.operand();
  if (inner.lhs().kind() != Kind::Not || inner.rhs().kind() != Kind::Not) return std::nullopt;
  return std::pair{inner.lhs().operand(), inner.rhs().operand()};
}

std::optional<std::pair<Formula, Formula>> match_implication(const Formula& f) {
  if (f.kind() != Kind::Not || f.operand().kind() != Kind::And) return std::nullopt;
  const Formula& inner = f.operand();
  if (inner.rhs().kind() != Kind::Not) return std::nullopt;
  return std::pair{inner.lhs(), inner.rhs().operand()};
}

std::optional<std::pair<Formula, Formula>> match_equivalence(const Formula& f) {
  if (f.kind() != Kind::And) return std::nullopt;
  auto forward = match_implication(f.lhs());
  auto backward = match_implication(f.rhs());
  if (!forward || !backward) return std::nullopt;
  if (!(forward->first == backward->second) || !(forward->second == backward->first)) {
    return std::nullopt;
  }
  return forward;
}

namespace {

std::optional<Formula> match_possible(const Formula& f, Kind modal) {
  if (f.kind() != Kind::Not) return std::nullopt;
  const Formula& box = f.operand();
  if (box.kind() != modal || box.operand().kind() != Kind::Not) return std::nullopt;
  return box.operand().operand();
}

}  // namespace

std::optional<Formula> match_strong_possible(const Formula& f) {
  return match_possible(f, Kind::StrongNec);
}

std::optional<Formula> match_weak_possible(const Formula& f) {
  return match_possible(f, Kind::WeakNec);
}

const char* fragment_name(Fragment f) noexcept {
  switch (f) {
    case Fragment::SWONBT: return "SWONBT";
    case Fragment::SWXXYY: return "SWXXYY";
    case Fragment::XXYY: return "XXYY";
    case Fragment::SW1: return "SW1";
    case Fragment::Propositional: return "Propositional";
  }
  return "?";
}

bool is_prefixed_atom(const Formula& f) {
  const Formula* cur = &f;
  if (cur->kind() == Kind::Next) {
    while (cur->kind() == Kind::Next) cur = &cur->operand();
  } else {
    while (cur->kind() == Kind::Yesterday) cur = &cur->operand();
  }
  return cur->kind() == Kind::Atom || cur->kind() == Kind::Bottom;
}

bool is_propositional(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Bottom: return true;
    case Kind::Not: return is_propositional(f.operand());
    case Kind::And: return is_propositional(f.lhs()) && is_propositional(f.rhs());
    default: return false;
  }
}

bool is_xxyy(const Formula& f) {
  switch (f.kind()) {
    case Kind::Not: return is_xxyy(f.operand());
    case Kind::And: return is_xxyy(f.lhs()) && is_xxyy(f.rhs());
    default: return is_prefixed_atom(f);
  }
}

bool is_swxxyy(const Formula& f) {
  switch (f.kind()) {
    case Kind::Not:
    case Kind::StrongNec:
    case Kind::WeakNec: return is_swxxyy(f.operand());
    case Kind::And: return is_swxxyy(f.lhs()) && is_swxxyy(f.rhs());
    default: return is_prefixed_atom(f);
  }
}

bool is_sw1(const Formula& f) {
  switch (f.kind()) {
    case Kind::Not: return is_sw1(f.operand());
    case Kind::And: return is_sw1(f.lhs()) && is_sw1(f.rhs());
    case Kind::StrongNec:
    case Kind::WeakNec: return is_xxyy(f.operand());
    default: return is_prefixed_atom(f);
  }
}

std::set<Fragment> classify(const Formula& f) {
  std::set<Fragment> out{Fragment::SWONBT};
  if (is_swxxyy(f)) out.insert(Fragment::SWXXYY);
  if (is_sw1(f)) out.insert(Fragment::SW1);
  if (is_xxyy(f)) out.insert(Fragment::XXYY);
  if (is_propositional(f)) out.insert(Fragment::Propositional);
  return out;
}

bool is_closed(const Formula& f) {
  switch (f.kind()) {
    case Kind::StrongNec:
    case Kind::WeakNec: return true;
    case Kind::Not: return is_closed(f.operand());
    case Kind::And: return is_closed(f.lhs()) && is_closed(f.rhs());
    default: return false;
  }
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Kind::Atom) out.insert(f.name());
  for (std::size_t i = 0; i < f.arity(); ++i) collect_atoms(f.child(i), out);
}

std::size_t depth_of(const Formula& f, Kind counted_a, Kind counted_b) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    best = std::max(best, depth_of(f.child(i), counted_a, counted_b));
  }
  return best + ((f.kind() == counted_a || f.kind() == counted_b) ? 1 : 0);
}

}  // namespace

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::size_t next_depth(const Formula& f) { return depth_of(f, Kind::Next, Kind::Next); }

std::size_t yesterday_depth(const Formula& f) {
  return depth_of(f, Kind::Yesterday, Kind::Yesterday);
}

std::size_t modal_depth(const Formula& f) { return depth_of(f, Kind::StrongNec, Kind::WeakNec); }

std::optional<Formula> subformula_at(const Formula& f, const Path& path) {
  const Formula* cur = &f;
  for (std::size_t index : path) {
    if (index >= cur->arity()) return std::nullopt;
    cur = &cur->child(index);
  }
  return *cur;
}

namespace {

Formula rebuild(const Formula& f, std::size_t index, Formula replaced) {
  switch (f.kind()) {
    case Kind::Not: return Formula::negation(std::move(replaced));
    case Kind::Next: return Formula::next(std::move(replaced));
    case Kind::Yesterday: return Formula::yesterday(std::move(replaced));
    case Kind::StrongNec: return Formula::strong(std::move(replaced));
    case Kind::WeakNec: return Formula::weak(std::move(replaced));
    case Kind::And:
      return index == 0 ? Formula::conjunction(std::move(replaced), f.rhs())
                        : Formula::conjunction(f.lhs(), std::move(replaced));
    default: return f;
  }
}

std::optional<Formula> replace_from(const Formula& f, const Path& path, std::size_t depth,
                                    const Formula& replacement) {
  if (depth == path.size()) return replacement;
  std::size_t index = path[depth];
  if (index >= f.arity()) return std::nullopt;
  auto inner = replace_from(f.child(index), path, depth + 1, replacement);
  if (!inner) return std::nullopt;
  return rebuild(f, index, std::move(*inner));
}

}  // namespace

std::optional<Formula> replace_at(const Formula& f, const Path& path, const Formula& replacement) {
  return replace_from(f, path, 0, replacement);
}

}  // namespace swonbt
