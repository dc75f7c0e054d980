#include "swonbt/cli.hpp"

#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "internal/io.hpp"
#include "swonbt/context.hpp"
#include "swonbt/decide.hpp"
#include "swonbt/error.hpp"
#include "swonbt/oracle.hpp"
#include "swonbt/proofcheck.hpp"
#include "swonbt/rewrite.hpp"
#include "swonbt/semantics.hpp"
#include "swonbt/syntax.hpp"

namespace swonbt {

using json = nlohmann::json;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kFailure = 2;

int report_error(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                 const std::string& kind, const std::string& message) {
  if (cfg.format == OutputFormat::Json) {
    out << json{{"command", cfg.subcommand}, {"error", kind}, {"message", message}}.dump() << "\n";
  }
  err << "error: " << message << "\n";
  return kFailure;
}

// Runs `body`, mapping library exceptions to exit status 2.
template <typename Body>
int guarded(const RunConfig& cfg, std::ostream& out, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const SyntaxError& e) {
    return report_error(cfg, out, err, "SyntaxError", e.what());
  } catch (const ModelError& e) {
    return report_error(cfg, out, err, "ModelError", e.what());
  } catch (const ContextError& e) {
    return report_error(cfg, out, err, "ContextError", e.what());
  } catch (const PointError& e) {
    const std::string what = e.what();
    const bool unaccepted = what.rfind("TimelineNotAccepted", 0) == 0;
    return report_error(cfg, out, err, unaccepted ? "TimelineNotAccepted" : "PointError", what);
  } catch (const FragmentError& e) {
    return report_error(cfg, out, err, "FragmentError", e.what());
  } catch (const CombinatorialLimit& e) {
    return report_error(cfg, out, err, "CombinatorialLimit", e.what());
  } catch (const BoundsTooLarge& e) {
    return report_error(cfg, out, err, "BoundsTooLarge", e.what());
  } catch (const ProofError& e) {
    return report_error(cfg, out, err, proof_error_name(e.kind()), e.what());
  } catch (const std::exception& e) {
    return report_error(cfg, out, err, "Error", e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << content;
}

json witness_json(const Witness& w) {
  return json{{"model", json::parse(write_model_json(w.model))},
              {"context", write_context_text(w.context, w.model)},
              {"point", write_point({w.model.timelines()[w.timeline].leaf, w.clock})}};
}

}  // namespace

PointSpec parse_point(std::string_view text) {
  std::istringstream in{std::string(internal::trim(internal::strip_comment(text)))};
  std::string at, kw_timeline, leaf, kw_clock, clock_text, extra;
  in >> at >> kw_timeline >> leaf >> kw_clock >> clock_text;
  if (at != "at" || kw_timeline != "timeline" || kw_clock != "clock" || leaf.empty() ||
      clock_text.empty() || (in >> extra)) {
    throw PointError("point must read 'at timeline <leaf> clock <i>'");
  }
  std::size_t pos = 0;
  std::size_t clock = 0;
  try {
    clock = std::stoul(clock_text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != clock_text.size() || clock_text[0] == '-') throw PointError("bad clock '" + clock_text + "'");
  return PointSpec{leaf, clock};
}

std::string write_point(const PointSpec& p) {
  return "at timeline " + p.timeline + " clock " + std::to_string(p.clock);
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    TreeModel model = load_model(cfg.model_path);
    Context context = cfg.context_path.empty() ? Context{} : load_context(cfg.context_path, model);
    for (const auto& w : context.warnings()) err << "warning: " << w << "\n";
    PointSpec point{cfg.timeline, cfg.clock.value_or(0)};
    if (!cfg.point_path.empty()) point = parse_point(internal::read_file(cfg.point_path));
    if (point.timeline.empty()) throw PointError("no timeline given (--timeline or --point)");
    auto t = model.find_timeline(point.timeline);
    if (!t) throw PointError("TimelineNotAccepted: no timeline ends at '" + point.timeline + "'");
    Formula f = parse(cfg.formula);
    const bool value = check(ContextualizedPoint{model, context, *t, point.clock}, f);
    if (cfg.format == OutputFormat::Json) {
      out << json{{"command", "check"}, {"formula", print(f)}, {"point", write_point(point)},
                  {"result", value}}.dump()
          << "\n";
    } else {
      out << (value ? "true" : "false") << "\n";
    }
    return value ? kPositive : kNegative;
  });
}

int cmd_decide(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    const bool validity = cfg.decide_mode == "valid";
    if (!validity && cfg.decide_mode != "sat") throw Error("decide needs --valid or --sat");
    Formula f = parse(cfg.formula);
    DecideOptions opts;
    if (cfg.cap > 0) opts.cap = cfg.cap;
    opts.jobs = cfg.jobs;
    Verdict v = validity ? valid(f, opts) : satisfiable(f, opts);
    const char* word = validity ? (v.holds ? "VALID" : "INVALID") : (v.holds ? "SAT" : "UNSAT");

    if (v.witness && !cfg.out_prefix.empty()) {
      const Witness& w = *v.witness;
      write_file(cfg.out_prefix + ".model", write_model_text(w.model));
      write_file(cfg.out_prefix + ".ctx", write_context_text(w.context, w.model));
      write_file(cfg.out_prefix + ".point",
                 write_point({w.model.timelines()[w.timeline].leaf, w.clock}) + "\n");
    }
    if (cfg.format == OutputFormat::Json) {
      json j{{"command", "decide"}, {"mode", cfg.decide_mode}, {"formula", print(f)},
             {"verdict", word}, {"result", v.holds}};
      if (v.witness) j["witness"] = witness_json(*v.witness);
      if (v.witness && !cfg.out_prefix.empty()) j["files"] = cfg.out_prefix;
      out << j.dump() << "\n";
    } else {
      out << word << "\n";
      if (v.witness) {
        const Witness& w = *v.witness;
        out << (validity ? "# counter-model (the formula is false here)\n" : "# witness\n");
        out << write_model_text(w.model) << write_context_text(w.context, w.model)
            << write_point({w.model.timelines()[w.timeline].leaf, w.clock}) << "\n";
        if (!cfg.out_prefix.empty()) {
          out << "# written to " << cfg.out_prefix << ".{model,ctx,point}\n";
        }
      }
    }
    // Positive: VALID / SAT.
    return v.holds ? kPositive : kNegative;
  });
}

int cmd_rewrite(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    Formula f = parse(cfg.formula);
    Formula g = Formula::bottom();
    Fragment target;
    if (cfg.target == "swxxyy") {
      g = delta(f);
      target = Fragment::SWXXYY;
    } else if (cfg.target == "sw1") {
      g = gamma(delta(f));
      target = Fragment::SW1;
    } else {
      throw Error("--to must be swxxyy or sw1");
    }
    const auto fragments = classify(g);
    if (!fragments.count(target)) {
      throw FragmentError("rewrite result is not in " + std::string(fragment_name(target)));
    }
    if (cfg.format == OutputFormat::Json) {
      json frag = json::array();
      for (auto fr : fragments) frag.push_back(fragment_name(fr));
      out << json{{"command", "rewrite"}, {"input", print(f)}, {"target", cfg.target},
                  {"result", print(g)}, {"fragments", frag}}.dump()
          << "\n";
    } else {
      out << print(g) << "\n";
    }
    return kPositive;
  });
}

int cmd_prove(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    Derivation d = load_proof(cfg.proof_path);
    auto failure = check_derivation(d);
    if (cfg.format == OutputFormat::Json) {
      json j{{"command", "prove"}, {"file", cfg.proof_path}, {"steps", d.lines.size()},
             {"result", !failure}};
      if (failure) {
        j["error"] = proof_error_name(failure->kind());
        j["line"] = failure->line();
        j["message"] = failure->what();
      }
      out << j.dump() << "\n";
    } else if (failure) {
      out << "REJECTED\n" << failure->what() << "\n";
    } else {
      out << "OK (" << d.lines.size() << " steps)\n";
    }
    return failure ? kNegative : kPositive;
  });
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    Formula f = parse(cfg.formula);
    OracleBounds b = adaptive_bounds(f);
    if (cfg.max_depth) b.depth = cfg.max_depth;
    if (cfg.max_leaves) b.leaves = cfg.max_leaves;
    if (cfg.max_clock) b.clocks = cfg.max_clock;
    OracleResult r = brute_force_satisfiable(f, b);
    const char* word = r.satisfiable ? "SAT" : "UNSAT";
    if (cfg.format == OutputFormat::Json) {
      json j{{"command", "oracle"}, {"formula", print(f)}, {"verdict", word},
             {"result", r.satisfiable},
             {"bounds", {{"depth", b.depth}, {"leaves", b.leaves}, {"clocks", b.clocks}}}};
      if (r.witness) j["witness"] = witness_json(*r.witness);
      out << j.dump() << "\n";
    } else {
      out << word << " (depth " << b.depth << ", leaves " << b.leaves << ", clocks 0.." << b.clocks
          << ")\n";
      if (r.witness) {
        const Witness& w = *r.witness;
        out << write_model_text(w.model) << write_context_text(w.context, w.model)
            << write_point({w.model.timelines()[w.timeline].leaf, w.clock}) << "\n";
      }
    }
    return r.satisfiable ? kPositive : kNegative;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strong and weak ontic necessities in branching time"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "text";
  std::string valid_formula, sat_formula;
  std::size_t clock = 0;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* check_cmd = app.add_subcommand("check", "Evaluate a formula at a pointed model");
  check_cmd->add_option("--model", cfg.model_path, "Model file (.json for JSON)")->required();
  check_cmd->add_option("--context", cfg.context_path, "Context file (default: empty context)");
  check_cmd->add_option("--timeline", cfg.timeline, "Timeline, named by its leaf");
  auto* clock_opt = check_cmd->add_option("--clock", clock, "Clock position");
  check_cmd->add_option("--point", cfg.point_path, "Point file: at timeline <leaf> clock <i>");
  check_cmd->add_option("--formula", cfg.formula, "Formula")->required();
  add_format(check_cmd);

  auto* decide_cmd = app.add_subcommand("decide", "Decide validity or satisfiability");
  auto* valid_opt = decide_cmd->add_option("--valid", valid_formula, "Formula to test for validity");
  auto* sat_opt = decide_cmd->add_option("--sat", sat_formula, "Formula to test for satisfiability");
  valid_opt->excludes(sat_opt);
  decide_cmd->add_option("--out", cfg.out_prefix, "Write <prefix>.model/.ctx/.point");
  decide_cmd->add_option("--cap", cfg.cap, "Search node cap (default SWONBT_ENUM_CAP or 1e6)")
      ->check(CLI::PositiveNumber);
  decide_cmd->add_option("--jobs", cfg.jobs, "Disjuncts decided in parallel")
      ->check(CLI::PositiveNumber);
  add_format(decide_cmd);

  auto* rewrite_cmd = app.add_subcommand("rewrite", "Rewrite into SWXXYY or SW1");
  rewrite_cmd->add_option("formula,--formula", cfg.formula, "Formula");
  rewrite_cmd->add_option("--to", cfg.target, "Target fragment")
      ->required()
      ->check(CLI::IsMember({"swxxyy", "sw1"}));
  add_format(rewrite_cmd);

  auto* prove_cmd = app.add_subcommand("prove", "Check a derivation file");
  prove_cmd->add_option("file", cfg.proof_path, "Proof file")->required();
  add_format(prove_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "Bounded satisfiability by direct search");
  oracle_cmd->add_option("formula,--formula", cfg.formula, "Formula");
  oracle_cmd->add_option("--depth", cfg.max_depth, "Explicit positions per timeline")
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--leaves", cfg.max_leaves, "Timeline slots")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--clocks", cfg.max_clock, "Largest clock")->check(CLI::PositiveNumber);
  add_format(oracle_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : kFailure;
  }

  cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  if (clock_opt->count()) cfg.clock = clock;

  if (check_cmd->parsed()) {
    cfg.subcommand = "check";
    if (cfg.point_path.empty() && (cfg.timeline.empty() || !cfg.clock)) {
      return report_error(cfg, out, err, "Usage", "check needs --point or --timeline and --clock");
    }
    return cmd_check(cfg, out, err);
  }
  if (decide_cmd->parsed()) {
    cfg.subcommand = "decide";
    if (valid_opt->count()) {
      cfg.decide_mode = "valid";
      cfg.formula = valid_formula;
    } else if (sat_opt->count()) {
      cfg.decide_mode = "sat";
      cfg.formula = sat_formula;
    } else {
      return report_error(cfg, out, err, "Usage", "decide needs --valid or --sat");
    }
    return cmd_decide(cfg, out, err);
  }
  if (rewrite_cmd->parsed()) {
    cfg.subcommand = "rewrite";
    if (cfg.formula.empty()) return report_error(cfg, out, err, "Usage", "rewrite needs a formula");
    return cmd_rewrite(cfg, out, err);
  }
  if (prove_cmd->parsed()) {
    cfg.subcommand = "prove";
    return cmd_prove(cfg, out, err);
  }
  cfg.subcommand = "oracle";
  if (cfg.formula.empty()) return report_error(cfg, out, err, "Usage", "oracle needs a formula");
  return cmd_oracle(cfg, out, err);
}

}  // namespace swonbt
