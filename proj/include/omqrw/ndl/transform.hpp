#pragma once

#include "omqrw/dl/model.hpp"
#include "omqrw/ndl/program.hpp"

namespace omqrw::ndl {

// Huffman-balanced binarization: every clause with more than two body atoms
// is replaced by a tree of binary clauses over fresh predicates, guided by
// the inferred weight function (zero-weight atoms enter the tree with
// surrogate weight 1). Equivalent to the input; output is skinny.
Program to_skinny(const Program& p);

// Rewriting over H-complete ABoxes -> rewriting over arbitrary ABoxes:
// renames every predicate S to S__s and adds bridging clauses deriving each
// EDB predicate from everything that implies it under the TBox.
Program lift_to_arbitrary(const Program& p, const dl::TBox& tbox);

// Linearity-preserving variant: each clause is unfolded into a chain that
// consumes one EDB atom per link, with every atom replaced by each of the
// raw-vocabulary atoms implying it. Throws precondition_error("NotLinear").
Program lift_linear(const Program& p, const dl::TBox& tbox);

} // namespace omqrw::ndl
