#include "swonbt/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "internal/sat.hpp"
#include "swonbt/error.hpp"
#include "swonbt/semantics.hpp"
#include "swonbt/syntax.hpp"

namespace swonbt {

using internal::Lit;

namespace {

std::size_t count_modal(const Formula& f) {
  std::size_t n = (f.kind() == Kind::StrongNec || f.kind() == Kind::WeakNec) ? 1 : 0;
  for (std::size_t i = 0; i < f.arity(); ++i) n += count_modal(f.child(i));
  return n;
}

class Encoder {
 public:
  Encoder(const OracleBounds& b, const std::set<std::string>& atoms) : b_(b) {
    truth_ = fresh();
    solver_.add_clause({internal::pos(truth_)});
    for (const auto& a : atoms) {
      root_[a] = fresh();
      for (std::size_t t = 0; t < b_.leaves; ++t) {
        for (std::size_t p = 1; p <= b_.depth; ++p) cell_[{t, p, a}] = fresh();
      }
    }
    for (std::size_t t = 0; t < b_.leaves; ++t) {
      act_.push_back(fresh());
      et_.push_back(fresh());
      solver_.add_clause({internal::neg(et_[t]), internal::pos(act_[t])});
    }
    solver_.add_clause({internal::pos(act_[0])});
  }

  Lit encode(const Formula& f, std::size_t t, std::size_t clock) {
    const bool global = f.kind() == Kind::StrongNec || f.kind() == Kind::WeakNec;
    const auto key = std::tuple{f.identity(), global ? b_.leaves : t, clock};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Lit out = encode_uncached(f, t, clock);
    memo_.emplace(key, out);
    return out;
  }

  internal::SatSolver& solver() { return solver_; }
  std::uint32_t root_var(const std::string& a) const { return root_.at(a); }
  std::uint32_t cell_var(std::size_t t, std::size_t p, const std::string& a) const {
    return cell_.at({t, p, a});
  }
  std::uint32_t act(std::size_t t) const { return act_[t]; }
  std::uint32_t et(std::size_t t) const { return et_[t]; }
  Lit truth() const { return internal::pos(truth_); }
  std::uint32_t fresh() {
    if (solver_.var_count() >= b_.max_variables) {
      throw BoundsTooLarge("oracle encoding exceeds " + std::to_string(b_.max_variables) +
                           " variables");
    }
    return solver_.new_var();
  }

 private:
  Lit encode_uncached(const Formula& f, std::size_t t, std::size_t clock) {
    switch (f.kind()) {
      case Kind::Atom: {
        const std::size_t p = std::min(clock, b_.depth);
        return internal::pos(p == 0 ? root_.at(f.name()) : cell_.at({t, p, f.name()}));
      }
      case Kind::Bottom:
        return internal::negate(truth());
      case Kind::Not:
        return internal::negate(encode(f.operand(), t, clock));
      case Kind::And: {
        const Lit a = encode(f.lhs(), t, clock);
        const Lit b = encode(f.rhs(), t, clock);
        const Lit g = internal::pos(fresh());
        solver_.add_clause({internal::negate(g), a});
        solver_.add_clause({internal::negate(g), b});
        solver_.add_clause({g, internal::negate(a), internal::negate(b)});
        return g;
      }
      case Kind::Next:
        return encode(f.operand(), t, clock + 1);
      case Kind::Yesterday:
        return clock == 0 ? truth() : encode(f.operand(), t, clock - 1);
      case Kind::StrongNec:
      case Kind::WeakNec: {
        const auto& domain = f.kind() == Kind::StrongNec ? act_ : et_;
        // g <-> for every slot s: domain(s) -> body(s)
        const Lit g = internal::pos(fresh());
        std::vector<Lit> some_failure{g};
        for (std::size_t s = 0; s < b_.leaves; ++s) {
          const Lit in = internal::pos(domain[s]);
          const Lit body = encode(f.operand(), s, clock);
          solver_.add_clause({internal::negate(g), internal::negate(in), body});
          const Lit d = internal::pos(fresh());
          solver_.add_clause({internal::negate(d), in});
          solver_.add_clause({internal::negate(d), internal::negate(body)});
          some_failure.push_back(d);
        }
        solver_.add_clause(some_failure);
        return g;
      }
    }
    throw std::logic_error("unknown formula kind");
  }

  const OracleBounds& b_;
  internal::SatSolver solver_;
  std::uint32_t truth_ = 0;
  std::map<std::string, std::uint32_t> root_;
  std::map<std::tuple<std::size_t, std::size_t, std::string>, std::uint32_t> cell_;
  std::vector<std::uint32_t> act_;
  std::vector<std::uint32_t> et_;
  std::map<std::tuple<const void*, std::size_t, std::size_t>, Lit> memo_;
};

}  // namespace

OracleBounds adaptive_bounds(const Formula& f) {
  OracleBounds b;
  b.clocks = std::max<std::size_t>(4, yesterday_depth(f) + 1);
  b.depth = std::max<std::size_t>(3, b.clocks + next_depth(f));
  b.leaves = std::max<std::size_t>(4, count_modal(f) + 2);
  return b;
}

OracleResult brute_force_satisfiable(const Formula& f, const OracleBounds& bounds) {
  if (bounds.leaves == 0) throw BoundsTooLarge("oracle needs at least one timeline slot");
  const auto atoms = atoms_of(f);
  Encoder enc(bounds, atoms);

  // Some clock at which the formula holds on slot 0.
  std::vector<Lit> some_clock;
  std::vector<Lit> per_clock;
  for (std::size_t c = 0; c <= bounds.clocks; ++c) {
    per_clock.push_back(enc.encode(f, 0, c));
    some_clock.push_back(per_clock.back());
  }
  enc.solver().add_clause(some_clock);

  OracleResult result;
  result.variables = enc.solver().var_count();
  if (!enc.solver().solve()) return result;

  auto& s = enc.solver();
  std::size_t clock = 0;
  while (!s.value_of(per_clock[clock])) ++clock;

  // Active slots become the timelines of the witness.
  std::vector<std::size_t> active;
  for (std::size_t t = 0; t < bounds.leaves; ++t) {
    if (s.value(enc.act(t))) active.push_back(t);
  }
  std::set<std::string> root_atoms;
  for (const auto& a : atoms) {
    if (s.value(enc.root_var(a))) root_atoms.insert(a);
  }
  std::vector<StateSpec> specs{StateSpec{"w0", std::nullopt, root_atoms}};
  std::vector<std::string> leaf_of;
  for (std::size_t t : active) {
    std::string parent = "w0";
    for (std::size_t p = 1; p <= bounds.depth; ++p) {
      std::set<std::string> val;
      for (const auto& a : atoms) {
        if (s.value(enc.cell_var(t, p, a))) val.insert(a);
      }
      std::string id = "s" + std::to_string(t + 1) + "_" + std::to_string(p);
      specs.push_back(StateSpec{id, parent, val});
      parent = id;
    }
    leaf_of.push_back(parent);
  }

  Witness w;
  w.model = TreeModel::validate(std::move(specs));
  TimelineSet at, et;
  for (std::size_t k = 0; k < active.size(); ++k) {
    TimelineIndex ti = *w.model.find_timeline(leaf_of[k]);
    at.push_back(ti);
    if (s.value(enc.et(active[k]))) et.push_back(ti);
  }
  std::sort(at.begin(), at.end());
  at.erase(std::unique(at.begin(), at.end()), at.end());
  std::sort(et.begin(), et.end());
  et.erase(std::unique(et.begin(), et.end()), et.end());
  w.context = context_from_ae(w.model, at, et);
  w.timeline = *w.model.find_timeline(leaf_of[0]);
  w.clock = clock;

  ContextualizedPoint pt{w.model, w.context, w.timeline, w.clock};
  if (!check(pt, f)) throw std::logic_error("oracle model does not satisfy " + print(f));
  result.satisfiable = true;
  result.witness = std::move(w);
  return result;
}

}  // namespace swonbt
