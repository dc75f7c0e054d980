#include "swonbt/context.hpp"

#include <algorithm>
#include <iterator>

#include "internal/io.hpp"
#include "swonbt/error.hpp"

namespace swonbt {

using internal::trim;

TimelineSet intersect(const TimelineSet& a, const TimelineSet& b) {
  TimelineSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const TimelineSet& a, const TimelineSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool contains(const TimelineSet& s, TimelineIndex t) {
  return std::binary_search(s.begin(), s.end(), t);
}

Context Context::make(const TreeModel& model, std::vector<OnticRule> rules,
                      const std::vector<std::pair<std::string, std::string>>& order,
                      const std::vector<std::string>& undefeatable) {
  Context c;
  const std::size_t n = rules.size();
  for (auto& rule : rules) {
    std::sort(rule.timelines.begin(), rule.timelines.end());
    rule.timelines.erase(std::unique(rule.timelines.begin(), rule.timelines.end()),
                         rule.timelines.end());
    for (TimelineIndex t : rule.timelines) {
      if (t >= model.timelines().size()) {
        throw ContextError(ContextErrorKind::UnknownTimeline,
                           "rule '" + rule.name + "' names a timeline outside the model");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rules[i].name == rules[j].name) {
        throw ContextError(ContextErrorKind::DuplicateRuleName,
                           "rule '" + rules[i].name + "' declared twice");
      }
      if (rules[i].timelines == rules[j].timelines) {
        c.warnings_.push_back("rules '" + rules[i].name + "' and '" + rules[j].name +
                              "' have the same timelines");
      }
    }
  }
  c.rules_ = std::move(rules);

  auto lookup = [&](const std::string& name) {
    auto idx = c.find_rule(name);
    if (!idx) throw ContextError(ContextErrorKind::UnknownRule, "unknown rule '" + name + "'");
    return *idx;
  };

  c.order_.assign(n, std::vector<bool>(n, false));
  for (const auto& [hi, lo] : order) {
    RuleIndex a = lookup(hi);
    RuleIndex b = lookup(lo);
    if (a == b) throw ContextError(ContextErrorKind::Reflexive, "rule '" + hi + "' above itself");
    c.order_[a][b] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!c.order_[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (c.order_[k][j]) c.order_[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (c.order_[i][i]) {
      throw ContextError(ContextErrorKind::Reflexive,
                         "priority order is cyclic through '" + c.rules_[i].name + "'");
    }
  }

  for (const auto& name : undefeatable) {
    RuleIndex u = lookup(name);
    for (std::size_t j = 0; j < n; ++j) {
      if (c.order_[j][u]) {
        throw ContextError(ContextErrorKind::UndefeatableNotMaximal,
                           "undefeatable rule '" + name + "' is below '" + c.rules_[j].name + "'");
      }
    }
    if (std::find(c.undefeatable_.begin(), c.undefeatable_.end(), u) == c.undefeatable_.end()) {
      c.undefeatable_.push_back(u);
    }
  }
  std::sort(c.undefeatable_.begin(), c.undefeatable_.end());
  return c;
}

std::optional<RuleIndex> Context::find_rule(std::string_view name) const {
  for (RuleIndex i = 0; i < rules_.size(); ++i) {
    if (rules_[i].name == name) return i;
  }
  return std::nullopt;
}

Hierarchy hierarchy(const Context& c) {
  Hierarchy h;
  const std::size_t n = c.rule_count();
  std::vector<bool> placed(n, false);
  std::size_t remaining = n;
  do {
    std::vector<RuleIndex> layer;
    for (RuleIndex r = 0; r < n; ++r) {
      if (placed[r]) continue;
      bool maximal = true;
      for (RuleIndex s = 0; s < n && maximal; ++s) {
        if (!placed[s] && c.dominates(s, r)) maximal = false;
      }
      if (maximal) layer.push_back(r);
    }
    for (RuleIndex r : layer) placed[r] = true;
    remaining -= layer.size();
    h.layers.push_back(std::move(layer));
  } while (remaining > 0);
  return h;
}

TimelineSet en(const Context& c, const std::vector<RuleIndex>& rules, const TreeModel& m) {
  TimelineSet out = m.all_timelines();
  for (RuleIndex r : rules) out = intersect(out, c.rules().at(r).timelines);
  return out;
}

TimelineSet accepted(const Context& c, const TreeModel& m) { return en(c, c.undefeatable(), m); }

TimelineSet expected(const Context& c, const TreeModel& m) {
  Hierarchy h = hierarchy(c);
  TimelineSet running = en(c, h.layers.front(), m);
  if (running.empty()) return running;
  for (std::size_t k = 1; k < h.layers.size(); ++k) {
    TimelineSet next = intersect(running, en(c, h.layers[k], m));
    if (next.empty()) break;
    running = std::move(next);
  }
  return running;
}

Context context_from_ae(const TreeModel& m, const TimelineSet& at, const TimelineSet& et) {
  if (at.empty()) {
    throw ContextError(ContextErrorKind::EmptyAccepted, "accepted timeline set must be nonempty");
  }
  if (!is_subset(et, at)) {
    throw ContextError(ContextErrorKind::Format, "expected timelines must be accepted");
  }
  if (et.empty()) {
    // Two incomparable rules on the top layer; their intersection is empty.
    return Context::make(m, {OnticRule{"L1", at}, OnticRule{"L0", {}}}, {}, {"L1"});
  }
  return Context::make(m, {OnticRule{"L1", at}, OnticRule{"L2", et}}, {{"L1", "L2"}}, {"L1"});
}

Context parse_context_text(std::string_view text, const TreeModel& m) {
  std::vector<OnticRule> rules;
  std::vector<std::pair<std::string, std::string>> order;
  std::vector<std::string> undefeatable;

  auto lines = internal::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    auto line = trim(internal::strip_comment(lines[n]));
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      return ContextError(ContextErrorKind::Format, "line " + std::to_string(n + 1) + ": " + why);
    };
    auto sp = line.find_first_of(" \t");
    auto keyword = line.substr(0, sp);
    auto rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));

    if (keyword == "rule") {
      auto eq = rest.find('=');
      if (eq == std::string_view::npos) throw fail("expected 'rule <name> = {...}'");
      std::string name(trim(rest.substr(0, eq)));
      if (!internal::is_name(name)) throw fail("bad rule name");
      std::vector<std::string> leaves;
      if (!internal::parse_brace_list(rest.substr(eq + 1), leaves)) throw fail("bad timeline list");
      OnticRule rule{name, {}};
      for (const auto& leaf : leaves) {
        auto t = m.find_timeline(leaf);
        if (!t) {
          throw ContextError(ContextErrorKind::UnknownTimeline,
                             "line " + std::to_string(n + 1) + ": no timeline ends at '" + leaf +
                                 "'");
        }
        rule.timelines.push_back(*t);
      }
      rules.push_back(std::move(rule));
    } else if (keyword == "order") {
      auto gt = rest.find('>');
      if (gt == std::string_view::npos) throw fail("expected 'order <name> > <name>'");
      std::string hi(trim(rest.substr(0, gt)));
      std::string lo(trim(rest.substr(gt + 1)));
      if (!internal::is_name(hi) || !internal::is_name(lo)) throw fail("bad rule name");
      order.emplace_back(hi, lo);
    } else if (keyword == "undefeatable") {
      std::vector<std::string> names;
      if (!internal::parse_brace_list(rest, names)) throw fail("bad rule list");
      undefeatable.insert(undefeatable.end(), names.begin(), names.end());
    } else {
      throw fail("unknown declaration '" + std::string(keyword) + "'");
    }
  }
  return Context::make(m, std::move(rules), order, undefeatable);
}

Context load_context(const std::string& path, const TreeModel& m) {
  return parse_context_text(internal::read_file(path), m);
}

std::string write_context_text(const Context& c, const TreeModel& m) {
  std::string out;
  for (const auto& rule : c.rules()) {
    out += "rule " + rule.name + " = {";
    for (std::size_t i = 0; i < rule.timelines.size(); ++i) {
      if (i) out += ", ";
      out += m.timelines().at(rule.timelines[i]).leaf;
    }
    out += "}\n";
  }
  for (RuleIndex a = 0; a < c.rule_count(); ++a) {
    for (RuleIndex b = 0; b < c.rule_count(); ++b) {
      if (c.dominates(a, b)) out += "order " + c.rules()[a].name + " > " + c.rules()[b].name + "\n";
    }
  }
  if (!c.undefeatable().empty()) {
    out += "undefeatable {";
    for (std::size_t i = 0; i < c.undefeatable().size(); ++i) {
      if (i) out += ", ";
      out += c.rules()[c.undefeatable()[i]].name;
    }
    out += "}\n";
  }
  return out;
}

}  // namespace swonbt
