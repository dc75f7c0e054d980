// ============================================================================
// swonbt/cli.hpp — command-line surface
// ============================================================================
//
//   swonbt check   --model M [--context C] (--timeline LEAF --clock I | --point P)
//                  --formula F
//   swonbt decide  (--valid F | --sat F) [--out PREFIX] [--cap N] [--jobs N]
//   swonbt rewrite [--formula] F --to swxxyy|sw1
//   swonbt prove   FILE
//   swonbt oracle  [--formula] F [--depth D] [--leaves N] [--clocks C]
//
// Every command takes --format text|json.  Exit status: 0 when the verdict is
// positive (true, VALID, SAT, OK), 1 when negative, 2 on any error.
//
// decide --out PREFIX writes PREFIX.model, PREFIX.ctx and PREFIX.point, which
// replay through `check --model PREFIX.model --context PREFIX.ctx
// --point PREFIX.point`.
// ============================================================================

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "swonbt/model.hpp"

namespace swonbt {

enum class OutputFormat { Text, Json };

struct RunConfig {
  std::string subcommand;
  std::string model_path;
  std::string context_path;
  std::string point_path;
  std::string timeline;
  std::optional<std::size_t> clock;
  std::string formula;
  std::string decide_mode;  // "valid" or "sat"
  std::string target;       // rewrite target
  std::string proof_path;
  std::string out_prefix;
  OutputFormat format = OutputFormat::Text;
  std::size_t cap = 0;  // 0: environment / default
  unsigned jobs = 1;
  std::size_t max_depth = 0;   // oracle bounds, 0: adaptive
  std::size_t max_leaves = 0;
  std::size_t max_clock = 0;
};

struct PointSpec {
  std::string timeline;
  std::size_t clock;
};

// "at timeline <leaf> clock <i>"
PointSpec parse_point(std::string_view text);
std::string write_point(const PointSpec& p);

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_decide(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_rewrite(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_prove(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swonbt
