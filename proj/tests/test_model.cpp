#include "doctest.h"

#include <fstream>

#include "support.hpp"
#include "swonbt/error.hpp"
#include "swonbt/model.hpp"

using namespace swonbt;
using namespace swonbt::testing;

namespace {
const std::string kScenarios = SWONBT_SCENARIO_DIR;

ModelErrorKind error_kind(std::vector<StateSpec> specs) {
  try {
    TreeModel::validate(std::move(specs));
  } catch (const ModelError& e) {
    return e.kind();
  }
  FAIL("no ModelError");
  return ModelErrorKind::Format;
}
}  // namespace

TEST_CASE("tiger model") {
  TreeModel m = load_model(kScenarios + "/tiger.model");
  CHECK(m.state_count() == 7);
  REQUIRE(m.timelines().size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(m.timelines()[k].leaf == "w1_" + std::to_string(k + 1));
    CHECK(m.timelines()[k].path.front() == m.root());
  }
  CHECK(m.depth() == 1);
  CHECK(m.holds(*m.find_state("w1_2"), "a_d"));
  CHECK_FALSE(m.holds(*m.find_state("w1_2"), "a_t"));
}

TEST_CASE("text and JSON loaders agree") {
  TreeModel text = load_model(kScenarios + "/tiger.model");
  TreeModel json = load_model(kScenarios + "/tiger.model.json");
  CHECK(write_model_text(text) == write_model_text(json));
}

TEST_CASE("single state model") {
  TreeModel m = TreeModel::validate({{"only", std::nullopt, {"p"}}});
  REQUIRE(m.timelines().size() == 1);
  CHECK(m.timelines()[0].leaf == "only");
  CHECK(state_at(m.timelines()[0], 0) == m.root());
  CHECK(state_at(m.timelines()[0], 100) == m.root());
}

TEST_CASE("state_at on the four-timeline scenario") {
  TreeModel m = load_model(kScenarios + "/priority.model");
  REQUIRE(timelines(m).size() == 4);
  const Timeline& pi3 = m.timelines()[*m.find_timeline("w1_3")];
  CHECK(m.state_id(state_at(pi3, 0)) == "w0_1");
  CHECK(m.state_id(state_at(pi3, 1)) == "w1_3");
  CHECK(m.state_id(state_at(pi3, 7)) == "w1_3");
}

TEST_CASE("validation errors") {
  CHECK(error_kind({}) == ModelErrorKind::Empty);
  CHECK(error_kind({{"a", std::nullopt, {}}, {"b", std::nullopt, {}}}) == ModelErrorKind::MultipleRoots);
  CHECK(error_kind({{"a", std::nullopt, {}}, {"a", std::nullopt, {}}}) == ModelErrorKind::DuplicateStateId);
  CHECK(error_kind({{"a", std::nullopt, {}}, {"b", "zz", {}}}) == ModelErrorKind::UnknownParent);
  CHECK(error_kind({{"a", std::nullopt, {}}, {"b", "c", {}}, {"c", "b", {}}}) ==
        ModelErrorKind::Cycle);
  CHECK_THROWS_AS(parse_model_text("state a root {p\n"), ModelError);
  CHECK_THROWS_AS(parse_model_json("{\"states\": 3}"), ModelError);
}

TEST_CASE("structural invariants on random trees") {
  Rng rng(21);
  for (int k = 0; k < 300; ++k) {
    TreeModel m = random_model(rng, 4, 3, {"p", "q"});
    std::vector<bool> covered(m.state_count(), false);
    for (const auto& t : m.timelines()) {
      CHECK(t.path.front() == m.root());
      CHECK(m.children(t.path.back()).empty());
      for (std::size_t i = 0; i + 1 < t.path.size(); ++i) CHECK(m.parent(t.path[i + 1]) == t.path[i]);
      for (auto s : t.path) covered[s] = true;
      for (std::size_t i = 0; i < t.path.size() + 3; ++i) {
        CHECK(state_at(t, i) == t.path[std::min(i, t.path.size() - 1)]);
      }
    }
    CHECK(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }));
    // Writers round-trip.
    TreeModel again = TreeModel::validate(parse_model_text(write_model_text(m)));
    CHECK(write_model_text(again) == write_model_text(m));
    TreeModel from_json = TreeModel::validate(parse_model_json(write_model_json(m)));
    CHECK(write_model_text(from_json) == write_model_text(m));
  }
}
