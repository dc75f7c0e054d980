#include "doctest.h"

#include "support.hpp"
#include "swonbt/decide.hpp"
#include "swonbt/error.hpp"
#include "swonbt/rewrite.hpp"
#include "swonbt/semantics.hpp"
#include "swonbt/syntax.hpp"

using namespace swonbt;
using namespace swonbt::testing;

namespace {
const std::vector<std::string> kAtoms{"p", "q", "r"};

// Equivalence by evaluation at random AE points.
bool equivalent_on_samples(const Formula& a, const Formula& b, Rng& rng, int points = 200) {
  for (int k = 0; k < points; ++k) {
    RandomAE ae = random_ae(rng, kAtoms);
    if (check_ae(ae.point(), a) != check_ae(ae.point(), b)) return false;
  }
  return true;
}

Formula disjunction_of_conjunctions(const std::vector<LiteralConjunction>& dj) {
  std::vector<Formula> parts;
  for (const auto& c : dj) parts.push_back(c.to_formula());
  return disjunction_of(parts);
}

std::size_t count_sequences(const CoreFormula& core) {
  auto e = atomic_sequences(core);
  std::size_t n = 0;
  while (e.next()) ++n;
  CHECK(n == e.count());
  return n;
}
}  // namespace

TEST_CASE("delta examples") {
  CHECK(delta(parse("X [S] p")) == parse("[S] X p"));
  CHECK(delta(parse("X Y p")) == parse("p"));
  Rng rng(51);
  CHECK(equivalent_on_samples(delta(parse("Y ~p")), parse("Y false | ~Y p"), rng));
  CHECK(delta(parse("p & [W] q")) == parse("p & [W] q"));
}

TEST_CASE("delta reaches SWXXYY and preserves truth") {
  Rng rng(52);
  for (int k = 0; k < 500; ++k) {
    Formula f = random_formula(rng, uniform(rng, 1, 10), kAtoms);
    Formula d = delta(f);
    CAPTURE(print(f));
    CHECK(is_swxxyy(d));
    CHECK(equivalent_on_samples(f, d, rng, 50));
  }
}

TEST_CASE("gamma examples") {
  Rng rng(53);
  CHECK(gamma(parse("[S] [S] p")) == parse("[S] p"));
  CHECK(gamma(parse("p")) == parse("p"));
  Formula g1 = gamma(parse("[S] (<S> p | q)"));
  CHECK(is_sw1(g1));
  CHECK(equivalent_on_samples(g1, parse("<S> p | [S] q"), rng));
  Formula g2 = gamma(parse("[W] ([W] p | q)"));
  CHECK(is_sw1(g2));
  CHECK(equivalent_on_samples(g2, parse("[W] p | [W] q"), rng));
  CHECK_THROWS_AS(gamma(parse("X [S] p")), FragmentError);
}

TEST_CASE("gamma reaches SW1 and preserves truth") {
  Rng rng(54);
  for (int k = 0; k < 500; ++k) {
    Formula d = delta(random_formula(rng, uniform(rng, 1, 10), kAtoms));
    Formula g = gamma(d);
    CAPTURE(print(d));
    CHECK(is_sw1(g));
    CHECK(modal_depth(g) <= 1);
    CHECK(equivalent_on_samples(d, g, rng, 50));
  }
}

TEST_CASE("literal conjunctions") {
  LiteralConjunction c;
  CHECK(c.add_literal(0, "p", true));
  CHECK(c.add_literal(1, "p", false));
  CHECK(c.future_reach() == 1);
  CHECK_FALSE(c.add_literal(1, "p", true));
  CHECK_FALSE(c.consistent());

  LiteralConjunction w;
  CHECK(w.require_clock_at_least(2));
  CHECK(w.add_literal(-2, "q", false));
  CHECK(w.past_reach() == 2);
  CHECK_FALSE(w.require_clock_below(2));

  LiteralConjunction small, big;
  small.add_literal(0, "p", true);
  big.add_literal(0, "p", true);
  big.add_literal(2, "q", true);
  CHECK(small.subsumes(big));
  CHECK_FALSE(big.subsumes(small));
  CHECK(LiteralConjunction{}.to_formula() == Formula::top());
}

TEST_CASE("dnf_xxyy examples") {
  auto single = dnf_xxyy(parse("X p"));
  REQUIRE(single.size() == 1);
  CHECK(single[0].literals() == LiteralConjunction::Literals{{{1, "p"}, true}});
  CHECK(dnf_xxyy(parse("p & ~p")).empty());
  CHECK(dnf_xxyy(parse("Y false & ~Y false")).empty());
  CHECK_THROWS_AS(dnf_xxyy(parse("[S] p")), FragmentError);

  Rng rng(55);
  Formula f = parse("~(X p & Y q)");
  CHECK(equivalent_on_samples(disjunction_of_conjunctions(dnf_xxyy(f)), f, rng, 500));
  auto dj = dnf_xxyy(f);
  CHECK(dj.size() == 2);
}

TEST_CASE("dnf_xxyy is equivalent and subsumption free") {
  Rng rng(56);
  for (int k = 0; k < 500; ++k) {
    Formula d = delta(random_formula(rng, uniform(rng, 1, 10), kAtoms, Shape::Temporal));
    REQUIRE(is_xxyy(d));
    auto dj = dnf_xxyy(d);
    CAPTURE(print(d));
    CHECK(equivalent_on_samples(disjunction_of_conjunctions(dj), d, rng, 50));
    for (std::size_t a = 0; a < dj.size(); ++a) {
      CHECK(dj[a].consistent());
      for (std::size_t b = 0; b < dj.size(); ++b) {
        if (a != b) CHECK_FALSE(dj[a].subsumes(dj[b]));
      }
    }
  }
}

TEST_CASE("modal_dnf is equivalent to its input") {
  Rng rng(57);
  for (int k = 0; k < 300; ++k) {
    Formula g = gamma(delta(random_formula(rng, uniform(rng, 1, 10), kAtoms)));
    auto ds = modal_dnf(g);
    CAPTURE(print(g));
    CHECK(equivalent_on_samples(disjunction_of(ds), g, rng, 50));
    for (const auto& d : ds) CHECK_NOTHROW(to_core(d));
  }
}

TEST_CASE("to_core examples") {
  CoreFormula a = to_core(parse("[S] p & [S] q & <S> r & [W] s & t"));
  CHECK(a.kind == CoreKind::Partial);
  Rng rng(58);
  CHECK(equivalent_on_samples(a.strong_body, parse("p & q"), rng));
  REQUIRE(a.strong_witnesses.size() == 1);
  CHECK(a.strong_witnesses[0] == parse("r"));
  CHECK(a.weak_body == parse("s"));
  CHECK(a.weak_witnesses.empty());
  CHECK(a.present == parse("t"));

  CoreFormula b = to_core(parse("<W> p"));
  CHECK(b.kind == CoreKind::Full);
  CHECK(b.strong_body == Formula::top());
  CHECK(b.strong_witnesses == std::vector<Formula>{Formula::top()});
  CHECK(b.weak_body == Formula::top());
  CHECK(b.weak_witnesses == std::vector<Formula>{parse("p")});
  CHECK(b.present == Formula::top());

  CoreFormula c = to_core(parse("[W] p"));
  CHECK(c.kind == CoreKind::Partial);
  CHECK(c.strong_witnesses == std::vector<Formula>{Formula::top()});
  CHECK(c.weak_body == parse("p"));

  CHECK_THROWS_AS(to_core(parse("[S] [S] p")), ShapeError);
  CHECK_THROWS_AS(to_core(parse("[S] p | q")), ShapeError);
}

TEST_CASE("to_core preserves truth") {
  Rng rng(59);
  for (const char* text : {"[S] p & [S] q & <S> r & [W] s & t", "<W> p & <W> ~p & [S] X q", "~[W] Y p & [W] q",
                           "<S> p & <S> q & [S] (p | q)"}) {
    Formula f = parse(text);
    CHECK(equivalent_on_samples(to_core(f).to_formula(), f, rng, 500));
  }
}

TEST_CASE("basic sequences") {
  CoreFormula full;
  full.kind = CoreKind::Full;
  full.strong_body = parse("h");
  full.strong_witnesses = {parse("i")};
  full.weak_body = parse("j");
  full.weak_witnesses = {parse("k")};
  full.present = parse("l");
  CHECK(basic_sequence(full) == std::vector<Formula>{parse("h & i"), parse("h & j & k"), parse("h & l")});
  CHECK(slot_roles(full) == std::vector<SlotRole>{SlotRole::StrongWitness, SlotRole::WeakWitness, SlotRole::Present});

  CoreFormula partial = full;
  partial.kind = CoreKind::Partial;
  partial.weak_witnesses.clear();
  CHECK(basic_sequence(partial) == std::vector<Formula>{parse("h & i"), parse("h & l")});

  CoreFormula trivial;
  trivial.strong_witnesses = {Formula::top()};
  CHECK(basic_sequence(trivial) ==
        std::vector<Formula>{Formula::conjunction(Formula::top(), Formula::top()),
                             Formula::conjunction(Formula::top(), Formula::top())});
}

TEST_CASE("atomic sequence counts") {
  CoreFormula core;
  core.strong_body = parse("p | X q");
  core.strong_witnesses = {parse("r")};
  core.present = parse("q");
  CHECK(count_sequences(core) == 4);

  CoreFormula singletons;
  singletons.strong_body = parse("p");
  singletons.strong_witnesses = {parse("X q")};
  singletons.present = parse("r");
  CHECK(count_sequences(singletons) == 1);

  CoreFormula dead;
  dead.strong_witnesses = {Formula::top()};
  dead.weak_body = parse("p & ~p");
  dead.kind = CoreKind::Full;
  dead.weak_witnesses = {parse("q")};
  CHECK(count_sequences(dead) == 0);

  CoreFormula wide;
  wide.strong_body = parse("(p | q) & (X p | X q) & (Y p | Y q)");
  wide.strong_witnesses = {Formula::top(), Formula::top(), Formula::top()};
  CHECK_THROWS_AS(atomic_sequences(wide, 100), CombinatorialLimit);
}

TEST_CASE("enumeration agrees with the decision search") {
  Rng rng(60);
  for (int k = 0; k < 300; ++k) {
    Formula g = gamma(delta(random_formula(rng, uniform(rng, 1, 8), {"p", "q"})));
    for (const auto& d : modal_dnf(g)) {
      CoreFormula core = to_core(d);
      bool any = false;
      auto e = atomic_sequences(core);
      while (auto seq = e.next()) {
        if (sequence_satisfiable(*seq)) {
          any = true;
          break;
        }
      }
      CAPTURE(print(d));
      CHECK(satisfiable(d).holds == any);
    }
  }
}
