#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "omqrw/dl/model.hpp"

namespace omqrw::chase {

using dl::ABox;
using dl::BasicConcept;
using dl::CQ;
using dl::Role;
using dl::TBox;
using dl::Word;

// An element of the canonical model: a named individual extended by a word.
struct Element {
    std::string ind;
    Word word;
    bool named() const { return word.empty(); }
};

class CanonicalModel {
public:
    std::vector<Element> elements;  // element 0..n-1; named ones first
    std::map<std::pair<std::string, Word>, int> index;
    std::map<std::string, std::set<int>> concept_ext;
    std::map<std::string, std::set<std::pair<int, int>>> role_ext;  // by role name
    int depth_bound = 0;

    int find(const std::string& ind, const Word& w = {}) const {
        auto it = index.find({ind, w});
        return it == index.end() ? -1 : it->second;
    }
    bool in_concept(const std::string& name, int e) const {
        auto it = concept_ext.find(name);
        return it != concept_ext.end() && it->second.count(e);
    }
    bool in_role(const Role& r, int e1, int e2) const {
        auto it = role_ext.find(r.name);
        if (it == role_ext.end()) return false;
        return r.inv ? it->second.count({e2, e1}) != 0 : it->second.count({e1, e2}) != 0;
    }
    // Neighbors (both directions) under any role; used to order the search.
    std::vector<int> successors(int e) const;
    std::vector<int> predecessors(int e) const;
};

// Materializes all elements a.w with |w| <= depth_limit. Witnesses are
// created per existential axiom B <= ex R applying at an element, so the
// anonymous part contains exactly the generated words.
CanonicalModel build_chase(const TBox& tbox, const ABox& abox, int depth_limit);

// Consistency against the disjointness axioms: named elements are checked on
// the H-completed ABox, anonymous ones per realizable generator role.
bool is_consistent(const TBox& tbox, const ABox& abox);

// All certain answers, computed by homomorphism search over the chase with
// depth limit |var(q)|. Throws semantic_error("InconsistentInput") when the
// ABox is inconsistent with the TBox.
std::set<std::vector<std::string>> certain_answers(const TBox& tbox, const CQ& cq,
                                                   const ABox& abox);

// T,{A(a)} |= q for Boolean q. Throws precondition_error("NotBoolean").
bool entails_from_concept(const TBox& tbox, const std::string& concept_name, const CQ& cq);

struct TreeWitness {
    std::set<std::string> roots;     // t_r
    std::set<std::string> interior;  // t_i, non-empty, existential
    std::set<Role> gen_roles;        // all roles generating this witness
    std::vector<dl::QueryAtom> subquery;  // q_t

    friend bool operator<(const TreeWitness& a, const TreeWitness& b) {
        if (a.roots != b.roots) return a.roots < b.roots;
        return a.interior < b.interior;
    }
};

// All tree witnesses of a tree-shaped CQ, each with its full generator set.
// Throws precondition_error("NotTreeShaped").
std::vector<TreeWitness> tree_witnesses(const TBox& tbox, const CQ& cq);

// Shared helpers.
bool is_tree_shaped(const CQ& cq);
bool is_connected(const CQ& cq);
int leaf_count(const CQ& cq);

} // namespace omqrw::chase
