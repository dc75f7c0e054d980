#include "internal/sat.hpp"

#include <algorithm>

namespace swonbt::internal {

namespace {

std::size_t luby(std::size_t i) {
  // i-th element (0-based) of 1 1 2 1 1 2 4 ...
  std::size_t size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i = i % size;
  }
  return std::size_t{1} << seq;
}

}  // namespace

std::uint32_t SatSolver::new_var() {
  const auto v = static_cast<std::uint32_t>(assigns_.size());
  assigns_.push_back(kUndef);
  phase_.push_back(false);
  levels_.push_back(0);
  reasons_.push_back(-1);
  activity_.push_back(0.0);
  seen_.push_back(false);
  watches_.emplace_back();
  watches_.emplace_back();
  return v;
}

std::int64_t SatSolver::attach(std::vector<Lit> clause) {
  const auto id = static_cast<std::uint32_t>(clauses_.size());
  watches_[negate(clause[0])].push_back(id);
  watches_[negate(clause[1])].push_back(id);
  clauses_.push_back(std::move(clause));
  return id;
}

bool SatSolver::add_clause(std::vector<Lit> clause) {
  if (unsat_) return false;
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < clause.size(); ++i) {
    if (i + 1 < clause.size() && clause[i + 1] == negate(clause[i])) return true;  // tautology
    std::int8_t v = lit_value(clause[i]);
    if (v == kTrue && levels_[var_of(clause[i])] == 0) return true;
    if (v == kFalse && levels_[var_of(clause[i])] == 0) continue;
    kept.push_back(clause[i]);
  }
  if (kept.empty()) {
    unsat_ = true;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() >= 0) unsat_ = true;
    return !unsat_;
  }
  attach(std::move(kept));
  return true;
}

void SatSolver::enqueue(Lit l, std::int64_t reason) {
  const auto v = var_of(l);
  assigns_[v] = (l & 1u) ? kFalse : kTrue;
  levels_[v] = level();
  reasons_[v] = reason;
  trail_.push_back(l);
}

// Returns the conflicting clause id, or -1.
std::int64_t SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];  // p became true; watchers of p hold ~p
    auto& ws = watches_[p];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const std::uint32_t cid = ws[i++];
      auto& c = clauses_[cid];
      const Lit false_lit = negate(p);
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == kTrue) {
        ws[j++] = cid;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[negate(c[1])].push_back(cid);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = cid;
      if (lit_value(c[0]) == kFalse) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return cid;
      }
      enqueue(c[0], cid);
    }
    ws.resize(j);
  }
  return -1;
}

void SatSolver::bump(std::uint32_t var) {
  activity_[var] += bump_;
  if (activity_[var] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    bump_ *= 1e-100;
  }
}

void SatSolver::analyze(std::int64_t conflict, std::vector<Lit>& learnt, std::size_t& back_level) {
  learnt.assign(1, 0);
  std::size_t pending = 0;
  std::size_t index = trail_.size();
  Lit p = 0;
  bool first = true;
  do {
    const auto& c = clauses_[static_cast<std::size_t>(conflict)];
    for (std::size_t k = first ? 0 : 1; k < c.size(); ++k) {
      const Lit q = c[k];
      const auto v = var_of(q);
      if (seen_[v] || levels_[v] == 0) continue;
      seen_[v] = true;
      bump(v);
      if (levels_[v] >= level()) {
        ++pending;
      } else {
        learnt.push_back(q);
      }
    }
    first = false;
    while (!seen_[var_of(trail_[--index])]) {
    }
    p = trail_[index];
    conflict = reasons_[var_of(p)];
    seen_[var_of(p)] = false;
    --pending;
  } while (pending > 0);
  learnt[0] = negate(p);

  back_level = 0;
  std::size_t max_i = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    if (levels_[var_of(learnt[k])] > back_level) {
      back_level = levels_[var_of(learnt[k])];
      max_i = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (Lit l : learnt) seen_[var_of(l)] = false;
  bump_ *= 1.0 / 0.95;
}

void SatSolver::backtrack(std::size_t target) {
  if (level() <= target) return;
  for (std::size_t k = trail_.size(); k-- > trail_lim_[target];) {
    const auto v = var_of(trail_[k]);
    phase_[v] = (trail_[k] & 1u) == 0;
    assigns_[v] = kUndef;
    reasons_[v] = -1;
  }
  trail_.resize(trail_lim_[target]);
  trail_lim_.resize(target);
  qhead_ = trail_.size();
}

std::int64_t SatSolver::pick_branch() {
  std::int64_t best = -1;
  double best_act = -1.0;
  for (std::uint32_t v = 0; v < assigns_.size(); ++v) {
    if (assigns_[v] == kUndef && activity_[v] > best_act) {
      best_act = activity_[v];
      best = v;
    }
  }
  return best;
}

bool SatSolver::solve() {
  if (unsat_) return false;
  if (propagate() >= 0) {
    unsat_ = true;
    return false;
  }
  std::vector<Lit> learnt;
  for (std::size_t restart = 0;; ++restart) {
    std::size_t budget = 100 * luby(restart);
    while (true) {
      const std::int64_t conflict = propagate();
      if (conflict >= 0) {
        if (level() == 0) {
          unsat_ = true;
          return false;
        }
        std::size_t back_level = 0;
        analyze(conflict, learnt, back_level);
        backtrack(back_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          enqueue(learnt[0], attach(learnt));
        }
        if (budget > 0) --budget;
        continue;
      }
      if (budget == 0) {
        backtrack(0);
        break;
      }
      const std::int64_t v = pick_branch();
      if (v < 0) return true;
      trail_lim_.push_back(trail_.size());
      const auto var = static_cast<std::uint32_t>(v);
      enqueue(phase_[var] ? pos(var) : neg(var), -1);
    }
  }
}

}  // namespace swonbt::internal
