// Shared test helpers: random formulas, random models and AE points, and a
// reference evaluator that works on explicit valuation sequences rather than
// on TreeModel/Context.

#pragma once

#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "swonbt/context.hpp"
#include "swonbt/formula.hpp"
#include "swonbt/model.hpp"
#include "swonbt/semantics.hpp"

namespace swonbt::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

enum class Shape { Full, Propositional, Closed, Temporal };

// Random formula with at most `size` primitive nodes (sugar is built from the
// primitives, so sizes count the expansion).
inline Formula random_formula(Rng& rng, std::size_t size, const std::vector<std::string>& atoms,
                              Shape shape = Shape::Full) {
  auto leaf = [&]() {
    if (coin(rng, 0.12)) return Formula::bottom();
    return Formula::atom(atoms[uniform(rng, 0, atoms.size() - 1)]);
  };
  if (shape == Shape::Closed) {
    // chi ::= [S]phi | [W]phi | ~chi | chi & chi
    if (size >= 5 && coin(rng, 0.3)) {
      std::size_t left = uniform(rng, 2, size - 3);
      return Formula::conjunction(random_formula(rng, left, atoms, Shape::Closed),
                                  random_formula(rng, size - 1 - left, atoms, Shape::Closed));
    }
    if (size >= 3 && coin(rng, 0.25)) {
      return Formula::negation(random_formula(rng, size - 1, atoms, Shape::Closed));
    }
    Formula body = random_formula(rng, size > 1 ? size - 1 : 1, atoms, Shape::Full);
    return coin(rng) ? Formula::strong(body) : Formula::weak(body);
  }
  if (size <= 1) return leaf();
  const std::size_t pick = uniform(rng, 0, 9);
  const bool prop = shape == Shape::Propositional;
  const bool temporal_only = shape == Shape::Temporal;
  if (pick <= 2 && size >= 3) {
    std::size_t left = uniform(rng, 1, size - 2);
    return Formula::conjunction(random_formula(rng, left, atoms, shape),
                                random_formula(rng, size - 1 - left, atoms, shape));
  }
  Formula sub = random_formula(rng, size - 1, atoms, shape);
  switch (pick) {
    case 3:
    case 4:
      return Formula::negation(sub);
    case 5:
      return prop ? Formula::negation(sub) : Formula::next(sub);
    case 6:
      return prop ? Formula::negation(sub) : Formula::yesterday(sub);
    case 7:
      return prop || temporal_only ? Formula::negation(sub) : Formula::strong(sub);
    case 8:
      return prop || temporal_only ? Formula::negation(sub) : Formula::weak(sub);
    default:
      return sub;
  }
}

// Random finite tree: every state at depth < max_depth gets 0..max_branch
// children (the root at least one when max_depth > 0).
inline TreeModel random_model(Rng& rng, std::size_t max_depth, std::size_t max_branch,
                              const std::vector<std::string>& atoms) {
  std::vector<StateSpec> specs;
  auto valuation = [&]() {
    std::set<std::string> v;
    for (const auto& a : atoms) {
      if (coin(rng)) v.insert(a);
    }
    return v;
  };
  specs.push_back({"r", std::nullopt, valuation()});
  std::vector<std::pair<std::string, std::size_t>> frontier{{"r", 0}};
  std::size_t counter = 0;
  while (!frontier.empty()) {
    auto [id, depth] = frontier.back();
    frontier.pop_back();
    if (depth >= max_depth) continue;
    std::size_t kids = uniform(rng, id == "r" ? 1 : 0, max_branch);
    for (std::size_t k = 0; k < kids; ++k) {
      std::string child = "s" + std::to_string(++counter);
      specs.push_back({child, id, valuation()});
      frontier.emplace_back(child, depth + 1);
    }
  }
  return TreeModel::validate(std::move(specs));
}

// Explicit valuation sequences; position k beyond the end repeats the last.
struct RefFrame {
  std::vector<std::vector<std::set<std::string>>> timelines;
  std::vector<std::size_t> at;
  std::vector<std::size_t> et;
};

inline RefFrame to_ref(const TreeModel& m, const TimelineSet& at, const TimelineSet& et) {
  RefFrame f;
  for (const auto& t : m.timelines()) {
    std::vector<std::set<std::string>> seq;
    for (StateIndex s : t.path) seq.push_back(m.atoms_at(s));
    f.timelines.push_back(std::move(seq));
  }
  f.at.assign(at.begin(), at.end());
  f.et.assign(et.begin(), et.end());
  return f;
}

inline bool ref_eval(const RefFrame& fr, const Formula& f, std::size_t t, std::size_t i) {
  switch (f.kind()) {
    case Kind::Atom: {
      const auto& seq = fr.timelines[t];
      const auto& val = seq[i < seq.size() ? i : seq.size() - 1];
      return val.count(f.name()) > 0;
    }
    case Kind::Bottom:
      return false;
    case Kind::Not:
      return !ref_eval(fr, f.operand(), t, i);
    case Kind::And:
      return ref_eval(fr, f.lhs(), t, i) && ref_eval(fr, f.rhs(), t, i);
    case Kind::Next:
      return ref_eval(fr, f.operand(), t, i + 1);
    case Kind::Yesterday:
      return i == 0 ? true : ref_eval(fr, f.operand(), t, i - 1);
    case Kind::StrongNec:
      for (auto u : fr.at) {
        if (!ref_eval(fr, f.operand(), u, i)) return false;
      }
      return true;
    case Kind::WeakNec:
      for (auto u : fr.et) {
        if (!ref_eval(fr, f.operand(), u, i)) return false;
      }
      return true;
  }
  return false;
}

struct RandomAE {
  TreeModel model;
  TimelineSet at;
  TimelineSet et;
  TimelineIndex timeline;
  std::size_t clock;

  AEPoint point() const { return AEPoint{model, at, et, timeline, clock}; }
  RefFrame frame() const { return to_ref(model, at, et); }
};

inline RandomAE random_ae(Rng& rng, const std::vector<std::string>& atoms,
                          std::size_t max_depth = 3, std::size_t max_branch = 3,
                          std::size_t max_clock = 5) {
  RandomAE r{random_model(rng, max_depth, max_branch, atoms), {}, {}, 0, 0};
  const std::size_t n = r.model.timelines().size();
  for (std::size_t t = 0; t < n; ++t) {
    if (coin(rng, 0.7)) r.at.push_back(t);
  }
  if (r.at.empty()) r.at.push_back(uniform(rng, 0, n - 1));
  for (auto t : r.at) {
    if (coin(rng, 0.5)) r.et.push_back(t);
  }
  r.timeline = r.at[uniform(rng, 0, r.at.size() - 1)];
  r.clock = uniform(rng, 0, max_clock);
  return r;
}

// Every formula over `leaves` with exactly `size` primitive nodes, with each
// conjunction's operands in nondecreasing order (commutative dedup).
inline std::vector<std::vector<Formula>> formulas_up_to(std::size_t max_size,
                                                        const std::vector<Formula>& leaves) {
  std::vector<std::vector<Formula>> by_size(max_size + 1);
  if (max_size >= 1) by_size[1] = leaves;
  for (std::size_t n = 2; n <= max_size; ++n) {
    for (const auto& sub : by_size[n - 1]) {
      by_size[n].push_back(Formula::negation(sub));
      by_size[n].push_back(Formula::next(sub));
      by_size[n].push_back(Formula::yesterday(sub));
      by_size[n].push_back(Formula::strong(sub));
      by_size[n].push_back(Formula::weak(sub));
    }
    for (std::size_t a = 1; a + 1 < n; ++a) {
      const std::size_t b = n - 1 - a;
      if (a > b) break;
      for (const auto& x : by_size[a]) {
        for (const auto& y : by_size[b]) {
          if (a == b && y < x) continue;
          by_size[n].push_back(Formula::conjunction(x, y));
        }
      }
    }
  }
  return by_size;
}

}  // namespace swonbt::testing
