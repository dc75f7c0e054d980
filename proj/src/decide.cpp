#include "swonbt/decide.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <stdexcept>

#include "swonbt/error.hpp"
#include "swonbt/semantics.hpp"
#include "swonbt/syntax.hpp"

namespace swonbt {

namespace {

// Counts visited search nodes against the cap.
class Budget {
 public:
  explicit Budget(std::size_t cap) : cap_(cap) {}

  void spend(std::size_t n, const Formula& disjunct) {
    used_ += n;
    if (used_ > cap_) {
      throw CombinatorialLimit("search exceeded " + std::to_string(cap_) +
                               " nodes on disjunct " + print(disjunct));
    }
  }

 private:
  std::size_t cap_;
  std::size_t used_ = 0;
};

std::vector<LiteralConjunction> tidy(std::vector<LiteralConjunction> ds) {
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

// Consistent conjunctions realizing one basic-sequence element.
std::vector<LiteralConjunction> slot_candidates(const std::vector<Formula>& factors,
                                                Budget& budget, const Formula& disjunct) {
  std::vector<LiteralConjunction> current{LiteralConjunction{}};
  for (const auto& factor : factors) {
    auto dj = dnf_xxyy(factor);
    budget.spend(current.size() * dj.size(), disjunct);
    std::vector<LiteralConjunction> next;
    for (const auto& a : current) {
      for (const auto& b : dj) {
        LiteralConjunction c = a;
        if (c.merge(b)) next.push_back(std::move(c));
      }
    }
    current = tidy(std::move(next));
    if (current.empty()) break;
  }
  return current;
}

std::vector<std::vector<Formula>> slot_factors(const CoreFormula& core) {
  std::vector<std::vector<Formula>> out;
  const Formula& h = core.strong_body;
  for (const auto& i : core.strong_witnesses) out.push_back({h, i});
  if (core.kind == CoreKind::Full) {
    for (const auto& k : core.weak_witnesses) out.push_back({h, core.weak_body, k});
  }
  out.push_back({h, core.present});
  return out;
}

struct RootOption {
  Valuation root;
  std::size_t candidate;
};

bool compatible(const Valuation& a, const Valuation& b) {
  for (const auto& [atom, value] : b) {
    auto it = a.find(atom);
    if (it != a.end() && it->second != value) return false;
  }
  return true;
}

// One option per distinct root valuation among the slot's candidates that can
// be placed at `clock`.
std::vector<RootOption> root_options(const std::vector<LiteralConjunction>& candidates,
                                     std::size_t clock) {
  std::vector<RootOption> out;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    auto placement = bind_at(candidates[c], clock);
    if (!placement) continue;
    Valuation root;
    if (auto it = placement->find(0); it != placement->end()) root = it->second;
    bool seen = std::any_of(out.begin(), out.end(),
                            [&](const RootOption& o) { return o.root == root; });
    if (!seen) out.push_back({std::move(root), c});
  }
  return out;
}

bool assign_roots(const std::vector<std::vector<RootOption>>& options,
                  const std::vector<std::size_t>& order, std::size_t depth, Valuation& root,
                  std::vector<std::size_t>& chosen, Budget& budget, const Formula& disjunct) {
  if (depth == order.size()) return true;
  const std::size_t slot = order[depth];
  for (const auto& option : options[slot]) {
    budget.spend(1, disjunct);
    if (!compatible(root, option.root)) continue;
    Valuation saved = root;
    root.insert(option.root.begin(), option.root.end());
    chosen[slot] = option.candidate;
    if (assign_roots(options, order, depth + 1, root, chosen, budget, disjunct)) return true;
    root = std::move(saved);
  }
  return false;
}

struct SlotPlan {
  std::size_t clock;
  std::vector<LiteralConjunction> elements;
};

std::optional<SlotPlan> search_core(const CoreFormula& core, const Formula& disjunct,
                                    std::size_t cap) {
  Budget budget(cap);
  std::vector<std::vector<LiteralConjunction>> candidates;
  std::size_t reach = 0;
  for (const auto& factors : slot_factors(core)) {
    candidates.push_back(slot_candidates(factors, budget, disjunct));
    if (candidates.back().empty()) return std::nullopt;
    for (const auto& c : candidates.back()) reach = std::max(reach, c.past_reach());
  }
  // Beyond every Y offset and clock bound the placements no longer touch the
  // root and stop depending on the clock.
  for (std::size_t clock = 0; clock <= reach + 1; ++clock) {
    std::vector<std::vector<RootOption>> options;
    bool blocked = false;
    for (const auto& slot : candidates) {
      options.push_back(root_options(slot, clock));
      if (options.back().empty()) blocked = true;
    }
    if (blocked) continue;
    std::vector<std::size_t> order(options.size());
    for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return options[a].size() < options[b].size();
    });
    Valuation root;
    std::vector<std::size_t> chosen(options.size(), 0);
    if (assign_roots(options, order, 0, root, chosen, budget, disjunct)) {
      SlotPlan plan{clock, {}};
      for (std::size_t s = 0; s < candidates.size(); ++s) {
        plan.elements.push_back(candidates[s][chosen[s]]);
      }
      return plan;
    }
  }
  return std::nullopt;
}

// A tree with one branch per slot below a shared root, merged where the
// branches coincide.
Witness build_witness(const CoreFormula& core, std::size_t clock,
                      const std::vector<PositionAssignment>& placements) {
  std::set<std::string> root_atoms;
  std::size_t depth = 0;
  for (const auto& placement : placements) {
    for (const auto& [pos, valuation] : placement) {
      depth = std::max(depth, pos);
      if (pos != 0) continue;
      for (const auto& [atom, value] : valuation) {
        if (value) root_atoms.insert(atom);
      }
    }
  }

  std::vector<StateSpec> specs{StateSpec{"w0", std::nullopt, root_atoms}};
  std::vector<std::string> leaf_of_slot;
  if (depth == 0) {
    leaf_of_slot.assign(placements.size(), "w0");
  } else {
    std::vector<std::vector<std::set<std::string>>> branches;
    for (const auto& placement : placements) {
      std::vector<std::set<std::string>> branch(depth);
      for (const auto& [pos, valuation] : placement) {
        if (pos == 0) continue;
        for (const auto& [atom, value] : valuation) {
          if (value) branch[pos - 1].insert(atom);
        }
      }
      auto it = std::find(branches.begin(), branches.end(), branch);
      std::size_t b = static_cast<std::size_t>(it - branches.begin());
      if (it == branches.end()) {
        branches.push_back(branch);
        std::string parent = "w0";
        for (std::size_t pos = 1; pos <= depth; ++pos) {
          std::string id = "t" + std::to_string(b + 1) + "_" + std::to_string(pos);
          specs.push_back(StateSpec{id, parent, branch[pos - 1]});
          parent = id;
        }
      }
      leaf_of_slot.push_back("t" + std::to_string(b + 1) + "_" + std::to_string(depth));
    }
  }

  Witness w;
  w.model = TreeModel::validate(std::move(specs));
  auto roles = slot_roles(core);
  TimelineSet expected_set;
  for (std::size_t s = 0; s < roles.size(); ++s) {
    TimelineIndex t = *w.model.find_timeline(leaf_of_slot[s]);
    if (roles[s] == SlotRole::WeakWitness) expected_set.push_back(t);
    if (roles[s] == SlotRole::Present) w.timeline = t;
  }
  // Full: a single rule singles out the weak-witness timelines as expected.
  // Partial: a single empty rule leaves nothing expected.
  w.context = Context::make(w.model, {OnticRule{"E", expected_set}}, {}, {});
  w.clock = clock;
  return w;
}

std::optional<Witness> decide_disjunct(const Formula& disjunct, std::size_t cap) {
  CoreFormula core = to_core(disjunct);
  auto plan = search_core(core, disjunct, cap);
  if (!plan) return std::nullopt;
  std::vector<PositionAssignment> placements;
  for (const auto& e : plan->elements) placements.push_back(*bind_at(e, plan->clock));
  return build_witness(core, plan->clock, placements);
}

}  // namespace

std::size_t enumeration_cap_from_env() {
  if (const char* env = std::getenv("SWONBT_ENUM_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultEnumerationCap;
}

std::optional<PositionAssignment> bind_at(const LiteralConjunction& element, std::size_t clock) {
  if (!element.consistent()) return std::nullopt;
  if (clock < element.min_clock()) return std::nullopt;
  if (element.clock_limit() && clock >= *element.clock_limit()) return std::nullopt;
  PositionAssignment out;
  for (const auto& [key, positive] : element.literals()) {
    const auto& [offset, atom] = key;
    if (offset < 0 && clock < static_cast<std::size_t>(-offset)) continue;  // vacuous Y
    const auto pos = static_cast<std::size_t>(static_cast<long long>(clock) + offset);
    out[pos][atom] = positive;
  }
  return out;
}

Feasibility atom_feasibility(const LiteralConjunction& element) {
  Feasibility f;
  if (!element.consistent()) return f;
  // Distinct (offset, atom) keys land on distinct (position, atom) pairs, so a
  // consistent conjunction fits at its least admissible clock.
  f.clock = element.min_clock();
  if (auto placement = bind_at(element, f.clock)) {
    f.satisfiable = true;
    f.placement = std::move(*placement);
  }
  return f;
}

std::optional<WitnessPlan> sequence_satisfiable(const AtomicSequence& seq) {
  std::size_t reach = 0;
  for (const auto& e : seq) {
    if (!e.consistent()) return std::nullopt;
    reach = std::max(reach, e.past_reach());
  }
  for (std::size_t clock = 0; clock <= reach + 1; ++clock) {
    WitnessPlan plan{clock, {}};
    Valuation root;
    bool ok = true;
    for (const auto& e : seq) {
      auto placement = bind_at(e, clock);
      if (!placement) {
        ok = false;
        break;
      }
      if (auto it = placement->find(0); it != placement->end()) {
        if (!compatible(root, it->second)) {
          ok = false;
          break;
        }
        root.insert(it->second.begin(), it->second.end());
      }
      plan.placements.push_back(std::move(*placement));
    }
    if (ok) return plan;
  }
  return std::nullopt;
}

Verdict satisfiable(const Formula& f, const DecideOptions& options) {
  const auto disjuncts = modal_dnf(gamma(delta(f)));
  std::optional<Witness> found;

  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  for (std::size_t start = 0; start < disjuncts.size() && !found; start += jobs) {
    const std::size_t stop = std::min(disjuncts.size(), start + jobs);
    if (stop - start == 1) {
      found = decide_disjunct(disjuncts[start], options.cap);
      continue;
    }
    std::vector<std::future<std::optional<Witness>>> pending;
    for (std::size_t d = start; d < stop; ++d) {
      pending.push_back(std::async(std::launch::async, decide_disjunct, disjuncts[d], options.cap));
    }
    for (auto& p : pending) {
      auto w = p.get();
      if (w && !found) found = std::move(w);
    }
  }

  Verdict v;
  if (!found) return v;
  ContextualizedPoint pt{found->model, found->context, found->timeline, found->clock};
  if (!check(pt, f)) {
    throw std::logic_error("constructed witness does not satisfy " + print(f));
  }
  v.holds = true;
  v.witness = std::move(found);
  return v;
}

Verdict valid(const Formula& f, const DecideOptions& options) {
  Verdict counter = satisfiable(Formula::negation(f), options);
  return Verdict{!counter.holds, std::move(counter.witness)};
}

std::string describe_point(const TreeModel& m, TimelineIndex t, std::size_t clock) {
  return "at timeline " + m.timelines().at(t).leaf + " clock " + std::to_string(clock);
}

}  // namespace swonbt
