#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace omqrw::dl {

// A role: a role name or its inverse.
struct Role {
    std::string name;
    bool inv = false;

    Role() = default;
    Role(std::string n, bool i = false) : name(std::move(n)), inv(i) {}

    Role inverse() const { return Role(name, !inv); }

    friend bool operator==(const Role& a, const Role& b) {
        return a.inv == b.inv && a.name == b.name;
    }
    friend bool operator<(const Role& a, const Role& b) {
        return a.name != b.name ? a.name < b.name : a.inv < b.inv;
    }
    std::string str() const { return inv ? name + "-" : name; }
};

// A basic concept: a concept name or an existential restriction on a role.
struct BasicConcept {
    enum Kind { Atomic, Exists } kind = Atomic;
    std::string name;  // valid when Atomic
    Role role;         // valid when Exists

    BasicConcept() = default;
    static BasicConcept atomic(std::string n) {
        BasicConcept b;
        b.kind = Atomic;
        b.name = std::move(n);
        return b;
    }
    static BasicConcept exists(Role r) {
        BasicConcept b;
        b.kind = Exists;
        b.role = std::move(r);
        return b;
    }

    friend bool operator==(const BasicConcept& a, const BasicConcept& b) {
        if (a.kind != b.kind) return false;
        return a.kind == Atomic ? a.name == b.name : a.role == b.role;
    }
    friend bool operator<(const BasicConcept& a, const BasicConcept& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.kind == Atomic ? a.name < b.name : a.role < b.role;
    }
    std::string str() const { return kind == Atomic ? name : "ex " + role.str(); }
};

// A word over roles; the empty word is written eps.
using Word = std::vector<Role>;

inline std::string word_str(const Word& w) {
    if (w.empty()) return "eps";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ".";
        s += w[i].str();
    }
    return s;
}

// Reserved concept names introduced by normalization. The '@' prefix is
// rejected by the input grammar, so these can never clash with user names.
inline std::string reserved_exists_name(const Role& r) {
    return (r.inv ? "@exinv_" : "@ex_") + r.name;
}
inline bool is_reserved_name(const std::string& n) { return !n.empty() && n[0] == '@'; }

class TBox {
public:
    std::vector<std::pair<BasicConcept, BasicConcept>> concept_inclusions;
    std::vector<std::pair<Role, Role>> role_inclusions;  // closed under inversion
    std::vector<std::pair<BasicConcept, BasicConcept>> concept_disjointness;
    std::vector<std::pair<Role, Role>> role_disjointness;
    bool normalized = false;

    // Roles of the TBox: every role name occurring anywhere, both polarities.
    std::vector<Role> roles() const;

    void add_concept_inclusion(BasicConcept a, BasicConcept b);
    // Adds both r1 <= r2 and r1^- <= r2^-.
    void add_role_inclusion(Role r1, Role r2);

    // Eagerly computes the subsumption closures; instances are immutable
    // afterwards and safe for concurrent reads.
    void build_closures();

    bool subsumes_concept(const BasicConcept& b1, const BasicConcept& b2) const;
    bool subsumes_role(const Role& r1, const Role& r2) const;

    // All basic concepts b with b subsumed-by target (target's down-set).
    std::vector<BasicConcept> subsumees_of_concept(const BasicConcept& target) const;
    std::vector<Role> subsumees_of_role(const Role& target) const;
    std::vector<BasicConcept> subsumers_of_concept(const BasicConcept& source) const;

    const std::vector<BasicConcept>& concept_universe() const { return concepts_; }

private:
    // Interned universes and closure tables, built by build_closures().
    std::vector<BasicConcept> concepts_;
    std::map<BasicConcept, int> concept_id_;
    std::vector<Role> roles_;
    std::map<Role, int> role_id_;
    std::vector<std::vector<bool>> concept_le_;  // concept_le_[i][j]: i subsumed by j
    std::vector<std::vector<bool>> role_le_;

    int concept_id(const BasicConcept& b) const {
        auto it = concept_id_.find(b);
        return it == concept_id_.end() ? -1 : it->second;
    }
    int role_id(const Role& r) const {
        auto it = role_id_.find(r);
        return it == role_id_.end() ? -1 : it->second;
    }
};

class ABox {
public:
    std::set<std::pair<std::string, std::string>> concept_facts;  // (concept, ind)
    std::set<std::tuple<std::string, std::string, std::string>> role_facts;  // (role, a, b)
    bool hcomplete = false;

    std::set<std::string> individuals() const {
        std::set<std::string> out;
        for (auto& [c, a] : concept_facts) out.insert(a);
        for (auto& [p, a, b] : role_facts) {
            out.insert(a);
            out.insert(b);
        }
        return out;
    }

    void add_concept(const std::string& c, const std::string& a) { concept_facts.insert({c, a}); }
    void add_role(const std::string& p, const std::string& a, const std::string& b) {
        role_facts.insert({p, a, b});
    }

    // Membership honoring inverses: r(a,b) holds iff p(a,b) for r = p,
    // or p(b,a) for r = p^-.
    bool has_role(const Role& r, const std::string& a, const std::string& b) const {
        return r.inv ? role_facts.count({r.name, b, a}) != 0
                     : role_facts.count({r.name, a, b}) != 0;
    }
    bool has_concept(const std::string& c, const std::string& a) const {
        return concept_facts.count({c, a}) != 0;
    }
};

// A conjunctive query atom: A(v) or P(v1,v2) over variables.
struct QueryAtom {
    std::string pred;
    std::vector<std::string> vars;  // size 1 or 2
    bool is_role() const { return vars.size() == 2; }

    friend bool operator==(const QueryAtom& a, const QueryAtom& b) {
        return a.pred == b.pred && a.vars == b.vars;
    }
    friend bool operator<(const QueryAtom& a, const QueryAtom& b) {
        return a.pred != b.pred ? a.pred < b.pred : a.vars < b.vars;
    }
};

class CQ {
public:
    std::string name = "q";
    std::vector<QueryAtom> atoms;
    std::vector<std::string> avars;  // answer variables, in head order

    // Variables in first-occurrence order (head first, then body).
    std::vector<std::string> vars() const {
        std::vector<std::string> out;
        auto add = [&](const std::string& v) {
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        };
        for (auto& v : avars) add(v);
        for (auto& at : atoms)
            for (auto& v : at.vars) add(v);
        return out;
    }

    bool is_answer_var(const std::string& v) const {
        return std::find(avars.begin(), avars.end(), v) != avars.end();
    }

    bool boolean() const { return avars.empty(); }

    // Gaifman graph edges {u,v} for role atoms with u != v.
    std::vector<std::pair<std::string, std::string>> gaifman_edges() const {
        std::set<std::pair<std::string, std::string>> es;
        for (auto& at : atoms)
            if (at.is_role() && at.vars[0] != at.vars[1]) {
                auto u = at.vars[0], v = at.vars[1];
                if (v < u) std::swap(u, v);
                es.insert({u, v});
            }
        return {es.begin(), es.end()};
    }
};

} // namespace omqrw::dl
