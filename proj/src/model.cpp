#include "swonbt/model.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

#include "internal/io.hpp"
#include "swonbt/error.hpp"

namespace swonbt {

using internal::trim;

TreeModel TreeModel::validate(std::vector<StateSpec> raw) {
  if (raw.empty()) throw ModelError(ModelErrorKind::Empty, "model has no states");

  TreeModel m;
  std::map<std::string, StateIndex, std::less<>> index;
  for (auto& spec : raw) {
    if (!index.emplace(spec.id, m.states_.size()).second) {
      throw ModelError(ModelErrorKind::DuplicateStateId, "duplicate state id '" + spec.id + "'");
    }
    m.states_.push_back(State{spec.id, std::nullopt, {}, std::move(spec.atoms)});
  }

  std::optional<StateIndex> root;
  for (StateIndex s = 0; s < raw.size(); ++s) {
    if (!raw[s].parent) {
      if (root) {
        throw ModelError(ModelErrorKind::MultipleRoots, "states '" + m.states_[*root].id +
                                                            "' and '" + m.states_[s].id +
                                                            "' both lack a parent");
      }
      root = s;
      continue;
    }
    auto it = index.find(*raw[s].parent);
    if (it == index.end()) {
      throw ModelError(ModelErrorKind::UnknownParent,
                       "state '" + m.states_[s].id + "' names unknown parent '" + *raw[s].parent +
                           "'");
    }
    m.states_[s].parent = it->second;
  }

  // Every parent chain must end at the root.  The first offending state in
  // declaration order decides between Cycle (it lies on the loop) and
  // UnreachableState (its chain runs into a loop elsewhere).
  for (StateIndex s = 0; s < m.states_.size(); ++s) {
    std::vector<bool> seen(m.states_.size(), false);
    StateIndex cur = s;
    while (m.states_[cur].parent) {
      seen[cur] = true;
      cur = *m.states_[cur].parent;
      if (seen[cur]) {
        if (cur == s) {
          throw ModelError(ModelErrorKind::Cycle, "state '" + m.states_[s].id + "' lies on a cycle");
        }
        throw ModelError(ModelErrorKind::UnreachableState,
                         "state '" + m.states_[s].id + "' is not reachable from a root");
      }
    }
  }
  if (!root) throw ModelError(ModelErrorKind::Cycle, "no root state");
  m.root_ = *root;

  for (StateIndex s = 0; s < m.states_.size(); ++s) {
    if (auto p = m.states_[s].parent) m.states_[*p].children.push_back(s);
  }

  for (StateIndex s = 0; s < m.states_.size(); ++s) {
    if (!m.states_[s].children.empty()) continue;
    Timeline t{m.states_[s].id, {}};
    for (std::optional<StateIndex> cur = s; cur; cur = m.states_[*cur].parent) {
      t.path.push_back(*cur);
    }
    std::reverse(t.path.begin(), t.path.end());
    m.depth_ = std::max(m.depth_, t.path.size() - 1);
    m.timelines_.push_back(std::move(t));
  }
  std::sort(m.timelines_.begin(), m.timelines_.end(),
            [](const Timeline& a, const Timeline& b) { return a.leaf < b.leaf; });
  return m;
}

std::optional<StateIndex> TreeModel::find_state(std::string_view id) const {
  for (StateIndex s = 0; s < states_.size(); ++s) {
    if (states_[s].id == id) return s;
  }
  return std::nullopt;
}

bool TreeModel::holds(StateIndex s, const std::string& atom) const {
  return states_.at(s).atoms.count(atom) != 0;
}

std::optional<TimelineIndex> TreeModel::find_timeline(std::string_view leaf) const {
  for (TimelineIndex t = 0; t < timelines_.size(); ++t) {
    if (timelines_[t].leaf == leaf) return t;
  }
  return std::nullopt;
}

TimelineSet TreeModel::all_timelines() const {
  TimelineSet out(timelines_.size());
  for (TimelineIndex t = 0; t < out.size(); ++t) out[t] = t;
  return out;
}

std::vector<StateSpec> TreeModel::specs() const {
  std::vector<StateSpec> out;
  out.reserve(states_.size());
  for (const auto& s : states_) {
    std::optional<std::string> parent;
    if (s.parent) parent = states_[*s.parent].id;
    out.push_back(StateSpec{s.id, parent, s.atoms});
  }
  return out;
}

const std::vector<Timeline>& timelines(const TreeModel& m) { return m.timelines(); }

StateIndex state_at(const Timeline& t, std::size_t clock) {
  return clock < t.path.size() ? t.path[clock] : t.path.back();
}

std::vector<StateSpec> parse_model_text(std::string_view text) {
  std::vector<StateSpec> out;
  auto lines = internal::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    auto line = trim(internal::strip_comment(lines[n]));
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      return ModelError(ModelErrorKind::Format, "line " + std::to_string(n + 1) + ": " + why);
    };

    auto brace = line.find('{');
    auto head = trim(line.substr(0, brace));
    std::vector<std::string> words;
    std::size_t start = 0;
    while (start < head.size()) {
      auto sp = head.find_first_of(" \t", start);
      auto word = head.substr(start, sp == std::string_view::npos ? std::string_view::npos
                                                                  : sp - start);
      if (!word.empty()) words.emplace_back(word);
      if (sp == std::string_view::npos) break;
      start = sp + 1;
    }
    if (words.size() != 3 || words[0] != "state") {
      throw fail("expected 'state <id> root|parent=<id> {atoms}'");
    }
    StateSpec spec;
    spec.id = words[1];
    if (!internal::is_name(spec.id)) throw fail("bad state id '" + spec.id + "'");
    if (words[2] == "root") {
      // no parent
    } else if (words[2].rfind("parent=", 0) == 0) {
      spec.parent = words[2].substr(7);
      if (!internal::is_name(*spec.parent)) throw fail("bad parent id");
    } else {
      throw fail("expected 'root' or 'parent=<id>'");
    }
    if (brace != std::string_view::npos) {
      std::vector<std::string> atoms;
      if (!internal::parse_brace_list(line.substr(brace), atoms)) throw fail("bad atom list");
      spec.atoms.insert(atoms.begin(), atoms.end());
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<StateSpec> parse_model_json(std::string_view text) {
  std::vector<StateSpec> out;
  try {
    auto doc = nlohmann::json::parse(text);
    for (const auto& s : doc.at("states")) {
      StateSpec spec;
      spec.id = s.at("id").get<std::string>();
      if (s.contains("parent") && !s.at("parent").is_null()) {
        spec.parent = s.at("parent").get<std::string>();
      }
      if (s.contains("atoms")) {
        for (const auto& a : s.at("atoms")) spec.atoms.insert(a.get<std::string>());
      }
      out.push_back(std::move(spec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(ModelErrorKind::Format, std::string("bad JSON model: ") + e.what());
  }
  return out;
}

TreeModel load_model(const std::string& path) {
  std::string text = internal::read_file(path);
  if (internal::ends_with(path, ".json")) return TreeModel::validate(parse_model_json(text));
  return TreeModel::validate(parse_model_text(text));
}

std::string write_model_text(const TreeModel& m) {
  std::string out;
  for (const auto& spec : m.specs()) {
    out += "state " + spec.id + (spec.parent ? " parent=" + *spec.parent : std::string(" root")) +
           " {";
    bool first = true;
    for (const auto& a : spec.atoms) {
      if (!first) out += ", ";
      out += a;
      first = false;
    }
    out += "}\n";
  }
  return out;
}

std::string write_model_json(const TreeModel& m) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& spec : m.specs()) {
    nlohmann::json s;
    s["id"] = spec.id;
    if (spec.parent) s["parent"] = *spec.parent;
    s["atoms"] = spec.atoms;
    states.push_back(std::move(s));
  }
  return nlohmann::json{{"states", states}}.dump(2) + "\n";
}

}  // namespace swonbt
