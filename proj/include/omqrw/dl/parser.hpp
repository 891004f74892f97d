#pragma once

#include <string>

#include "omqrw/dl/model.hpp"

namespace omqrw::dl {

// One axiom per line, '#' comments:
//   concept ::= NAME | "ex" ROLE      ROLE ::= NAME | NAME "-"
//   axiom   ::= concept "sub" concept | ROLE "rsub" ROLE
//             | concept "disj" concept | ROLE "rdisj" ROLE
// Role inclusions are closed under inversion on the fly.
TBox parse_tbox(const std::string& text);

// One fact per line: A(a) or P(a,b). Identifiers: [A-Za-z0-9_.]+ plus the
// reserved '@' prefix emitted by hcomplete output.
ABox parse_abox(const std::string& text);

// Single line: q(x1,...,xk) :- atom, atom, ... with Boolean head q().
CQ parse_cq(const std::string& text);

std::string format_abox(const ABox& abox);
std::string format_tbox(const TBox& tbox);

} // namespace omqrw::dl
