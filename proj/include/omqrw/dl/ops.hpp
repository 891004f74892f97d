#pragma once

#include <optional>

#include "omqrw/dl/model.hpp"

namespace omqrw::dl {

// Adds @ex_R / @exinv_R definitions for every role of the TBox (both
// polarities). Idempotent. Throws precondition_error("NameCollision") if a
// non-reserved input name starts with '@'.
TBox normalize(const TBox& tbox);

// Maximum length of words in W_T; nullopt means depth omega. Decided by
// cycle detection on the word graph over the TBox roles, never by
// enumeration; cutoff is kept as a safety valve for the enumeration-based
// test oracle and is not consulted here.
std::optional<int> tbox_depth(const TBox& tbox, int cutoff = 64);

// Least superset of abox closed under the subsumption rules on named
// individuals. Requires a normalized TBox.
ABox h_complete(const TBox& tbox, const ABox& abox);

// True iff T,A |= B(a) for the H-completed abox, i.e. some stated fact
// implies B. For B = ex R this is witnessed by the reserved concept name.
bool holds_at(const TBox& tbox, const ABox& hcomplete_abox, const BasicConcept& b,
              const std::string& a);

// Existential generators of the TBox: the pairs (B, R) from axioms
// B <= ex R, excluding the normalization axioms A_R <= ex R themselves.
// These are the axioms that create anonymous witnesses in the chase.
std::vector<std::pair<BasicConcept, Role>> generators(const TBox& tbox);

// Roles that can start an anonymous path in some chase (targets of
// generators). Words over these letters are the only ones the canonical
// model realizes, hence the only ones type assignments need.
std::vector<Role> generated_first_letters(const TBox& tbox);

// True iff an anonymous element with last role 'prev' acquires an
// R-successor: some generator (B, R) applies at it and inversing the parent
// edge does not already satisfy it.
bool generated_step(const TBox& tbox, const Role& prev, const Role& next);

// All words the canonical model can realize, shortest first, ties broken by
// role order. Throws precondition_error("InfiniteDepth") when the TBox has
// depth omega.
std::vector<Word> generated_words(const TBox& tbox);

} // namespace omqrw::dl
