#pragma once

#include <string>
#include <string_view>

#include "swonbt/formula.hpp"

namespace swonbt {

// Concrete syntax:
//
//   phi ::= "false" | "true" | ident | "~" phi | "X" phi | "Y" phi
//         | "[S]" phi | "[W]" phi | "<S>" phi | "<W>" phi | phi op phi | "(" phi ")"
//   op  ::= "&" | "|" | "->" | "<->"
//
// Prefix operators bind tightest, then &, |, -> (right associative), <->.
// Identifiers match [a-zA-Z_][a-zA-Z0-9_]* except the keywords X, Y, true,
// false.  Throws SyntaxError with a 1-based line/column.
Formula parse(std::string_view text);

// Canonical text; binary connectives are always parenthesized and sugar is
// re-introduced where the expansion is recognized.  parse(print(f)) == f.
std::string print(const Formula& f);

}  // namespace swonbt
