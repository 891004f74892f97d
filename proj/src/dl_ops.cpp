#include "omqrw/dl/ops.hpp"

#include <functional>

#include "omqrw/errors.hpp"

namespace omqrw::dl {

std::vector<Role> TBox::roles() const {
    std::set<std::string> names;
    auto note_role = [&](const Role& r) { names.insert(r.name); };
    auto note_concept = [&](const BasicConcept& b) {
        if (b.kind == BasicConcept::Exists) names.insert(b.role.name);
    };
    for (auto& [a, b] : concept_inclusions) {
        note_concept(a);
        note_concept(b);
    }
    for (auto& [a, b] : role_inclusions) {
        note_role(a);
        note_role(b);
    }
    for (auto& [a, b] : concept_disjointness) {
        note_concept(a);
        note_concept(b);
    }
    for (auto& [a, b] : role_disjointness) {
        note_role(a);
        note_role(b);
    }
    std::vector<Role> out;
    for (auto& n : names) {
        out.push_back(Role(n, false));
        out.push_back(Role(n, true));
    }
    return out;
}

void TBox::add_concept_inclusion(BasicConcept a, BasicConcept b) {
    auto p = std::make_pair(std::move(a), std::move(b));
    for (auto& q : concept_inclusions)
        if (q == p) return;
    concept_inclusions.push_back(std::move(p));
}

void TBox::add_role_inclusion(Role r1, Role r2) {
    auto add = [&](Role a, Role b) {
        auto p = std::make_pair(std::move(a), std::move(b));
        for (auto& q : role_inclusions)
            if (q == p) return;
        role_inclusions.push_back(std::move(p));
    };
    add(r1, r2);
    add(r1.inverse(), r2.inverse());
}

void TBox::build_closures() {
    // Intern roles.
    roles_ = roles();
    role_id_.clear();
    for (size_t i = 0; i < roles_.size(); ++i) role_id_[roles_[i]] = (int)i;

    size_t nr = roles_.size();
    role_le_.assign(nr, std::vector<bool>(nr, false));
    for (size_t i = 0; i < nr; ++i) role_le_[i][i] = true;
    for (auto& [a, b] : role_inclusions) {
        int i = role_id(a), j = role_id(b);
        if (i >= 0 && j >= 0) role_le_[i][j] = true;
    }
    // Transitive closure (Warshall); the inversion closure is already in the
    // stated inclusions.
    for (size_t k = 0; k < nr; ++k)
        for (size_t i = 0; i < nr; ++i)
            if (role_le_[i][k])
                for (size_t j = 0; j < nr; ++j)
                    if (role_le_[k][j]) role_le_[i][j] = true;

    // Intern basic concepts: every name / existential mentioned plus ex R for
    // all TBox roles.
    std::set<BasicConcept> cs;
    auto note = [&](const BasicConcept& b) { cs.insert(b); };
    for (auto& [a, b] : concept_inclusions) {
        note(a);
        note(b);
    }
    for (auto& [a, b] : concept_disjointness) {
        note(a);
        note(b);
    }
    for (auto& r : roles_) cs.insert(BasicConcept::exists(r));
    concepts_.assign(cs.begin(), cs.end());
    concept_id_.clear();
    for (size_t i = 0; i < concepts_.size(); ++i) concept_id_[concepts_[i]] = (int)i;

    size_t nc = concepts_.size();
    concept_le_.assign(nc, std::vector<bool>(nc, false));
    for (size_t i = 0; i < nc; ++i) concept_le_[i][i] = true;
    for (auto& [a, b] : concept_inclusions) {
        int i = concept_id(a), j = concept_id(b);
        if (i >= 0 && j >= 0) concept_le_[i][j] = true;
    }
    // R <= R' forces ex R <= ex R'.
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nr; ++j)
            if (role_le_[i][j]) {
                int ci = concept_id(BasicConcept::exists(roles_[i]));
                int cj = concept_id(BasicConcept::exists(roles_[j]));
                if (ci >= 0 && cj >= 0) concept_le_[ci][cj] = true;
            }
    for (size_t k = 0; k < nc; ++k)
        for (size_t i = 0; i < nc; ++i)
            if (concept_le_[i][k])
                for (size_t j = 0; j < nc; ++j)
                    if (concept_le_[k][j]) concept_le_[i][j] = true;
}

bool TBox::subsumes_concept(const BasicConcept& b1, const BasicConcept& b2) const {
    if (b1 == b2) return true;
    int i = concept_id(b1), j = concept_id(b2);
    if (i >= 0 && j >= 0) return concept_le_[i][j];
    // Concepts outside the TBox vocabulary relate only reflexively, except
    // through the role rule.
    if (b1.kind == BasicConcept::Exists && b2.kind == BasicConcept::Exists)
        return subsumes_role(b1.role, b2.role);
    return false;
}

bool TBox::subsumes_role(const Role& r1, const Role& r2) const {
    if (r1 == r2) return true;
    int i = role_id(r1), j = role_id(r2);
    if (i < 0 || j < 0) return false;
    return role_le_[i][j];
}

std::vector<BasicConcept> TBox::subsumees_of_concept(const BasicConcept& target) const {
    std::vector<BasicConcept> out;
    int j = concept_id(target);
    if (j < 0) return {target};
    for (size_t i = 0; i < concepts_.size(); ++i)
        if (concept_le_[i][j]) out.push_back(concepts_[i]);
    return out;
}

std::vector<Role> TBox::subsumees_of_role(const Role& target) const {
    std::vector<Role> out;
    int j = role_id(target);
    if (j < 0) return {target};
    for (size_t i = 0; i < roles_.size(); ++i)
        if (role_le_[i][j]) out.push_back(roles_[i]);
    return out;
}

std::vector<BasicConcept> TBox::subsumers_of_concept(const BasicConcept& source) const {
    std::vector<BasicConcept> out;
    int i = concept_id(source);
    if (i < 0) return {source};
    for (size_t j = 0; j < concepts_.size(); ++j)
        if (concept_le_[i][j]) out.push_back(concepts_[j]);
    return out;
}

TBox normalize(const TBox& tbox) {
    if (!tbox.normalized) {
        auto check = [&](const BasicConcept& c) {
            if (c.kind == BasicConcept::Atomic && is_reserved_name(c.name))
                throw precondition_error("NameCollision",
                                         "input uses reserved concept name " + c.name);
        };
        for (auto& [a, b] : tbox.concept_inclusions) {
            check(a);
            check(b);
        }
        for (auto& [a, b] : tbox.concept_disjointness) {
            check(a);
            check(b);
        }
    }
    TBox out = tbox;
    for (auto& r : out.roles()) {
        BasicConcept ar = BasicConcept::atomic(reserved_exists_name(r));
        BasicConcept ex = BasicConcept::exists(r);
        out.add_concept_inclusion(ar, ex);
        out.add_concept_inclusion(ex, ar);
    }
    out.normalized = true;
    out.build_closures();
    return out;
}

std::optional<int> tbox_depth(const TBox& tbox, int) {
    auto rs = tbox.roles();
    size_t n = rs.size();
    if (n == 0) return 0;
    // Edge i -> j iff ex Ri^- <= ex Rj and Ri^- not<= Rj.
    std::vector<std::vector<int>> adj(n);
    for (size_t i = 0; i < n; ++i) {
        Role ri_inv = rs[i].inverse();
        for (size_t j = 0; j < n; ++j) {
            if (tbox.subsumes_concept(BasicConcept::exists(ri_inv), BasicConcept::exists(rs[j])) &&
                !tbox.subsumes_role(ri_inv, rs[j]))
                adj[i].push_back((int)j);
        }
    }
    // Every single role is a word, so any cycle is reachable as a word start.
    // DFS cycle detection, then longest path in the DAG counted in nodes.
    std::vector<int> state(n, 0), longest(n, -1);
    bool cyclic = false;
    std::function<int(int)> dfs = [&](int u) -> int {
        if (state[u] == 1) {
            cyclic = true;
            return 0;
        }
        if (state[u] == 2) return longest[u];
        state[u] = 1;
        int best = 1;
        for (int v : adj[u]) {
            if (cyclic) break;
            best = std::max(best, 1 + dfs(v));
        }
        state[u] = 2;
        longest[u] = best;
        return best;
    };
    int depth = 0;
    for (size_t i = 0; i < n && !cyclic; ++i) depth = std::max(depth, dfs((int)i));
    if (cyclic) return std::nullopt;
    return depth;
}

ABox h_complete(const TBox& tbox, const ABox& abox) {
    ABox out = abox;
    // Role rule. The role closure is transitive, so one pass over the stated
    // facts reaches the fixpoint.
    for (auto& [p, a, b] : abox.role_facts) {
        for (auto& s : tbox.roles()) {
            if (s.inv) continue;
            if (tbox.subsumes_role(Role(p, false), s)) out.add_role(s.name, a, b);
            if (tbox.subsumes_role(Role(p, true), s)) out.add_role(s.name, b, a);
        }
    }
    // Concept rule: B(a) stated (with ex R witnessed by the closed role
    // facts) implies A(a) for every concept name A above B. The concept
    // closure is transitive, so newly added names need no second round; the
    // loop below just confirms the fixpoint.
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<BasicConcept, std::string>> held;
        for (auto& [c, a] : out.concept_facts) held.push_back({BasicConcept::atomic(c), a});
        for (auto& [p, a, b] : out.role_facts) {
            held.push_back({BasicConcept::exists(Role(p, false)), a});
            held.push_back({BasicConcept::exists(Role(p, true)), b});
        }
        for (auto& [b, a] : held) {
            for (auto& super : tbox.subsumers_of_concept(b)) {
                if (super.kind == BasicConcept::Atomic &&
                    !out.concept_facts.count({super.name, a})) {
                    out.add_concept(super.name, a);
                    changed = true;
                }
            }
        }
    }
    out.hcomplete = true;
    return out;
}

bool holds_at(const TBox& tbox, const ABox& hc, const BasicConcept& b, const std::string& a) {
    if (b.kind == BasicConcept::Atomic) return hc.has_concept(b.name, a);
    // ex R: after H-completion the reserved name carries it whenever
    // derivable from a concept; an explicit role fact also witnesses it.
    if (hc.has_concept(reserved_exists_name(b.role), a)) return true;
    for (auto& [p, x, y] : hc.role_facts) {
        if (b.role.inv ? (y == a && tbox.subsumes_role(Role(p, true), b.role))
                       : (x == a && tbox.subsumes_role(Role(p, false), b.role)))
            return true;
    }
    return false;
}

std::vector<std::pair<BasicConcept, Role>> generators(const TBox& tbox) {
    std::vector<std::pair<BasicConcept, Role>> out;
    for (auto& [lhs, rhs] : tbox.concept_inclusions) {
        if (rhs.kind != BasicConcept::Exists) continue;
        if (lhs.kind == BasicConcept::Atomic && lhs.name == reserved_exists_name(rhs.role))
            continue;  // the normalization definition itself creates nothing
        out.push_back({lhs, rhs.role});
    }
    return out;
}

std::vector<Role> generated_first_letters(const TBox& tbox) {
    std::set<Role> s;
    for (auto& [b, r] : generators(tbox)) s.insert(r);
    return {s.begin(), s.end()};
}

bool generated_step(const TBox& tbox, const Role& prev, const Role& next) {
    BasicConcept prev_type = BasicConcept::exists(prev.inverse());
    for (auto& [b, r] : generators(tbox)) {
        if (!(r == next)) continue;
        if (tbox.subsumes_concept(prev_type, b) && !tbox.subsumes_role(prev.inverse(), next))
            return true;
    }
    return false;
}

std::vector<Word> generated_words(const TBox& tbox) {
    if (!tbox_depth(tbox))
        throw precondition_error("InfiniteDepth", "TBox has depth omega");
    std::vector<Word> out;
    out.push_back({});
    std::vector<Word> frontier;
    for (auto& r : generated_first_letters(tbox)) frontier.push_back({r});
    while (!frontier.empty()) {
        std::sort(frontier.begin(), frontier.end());
        out.insert(out.end(), frontier.begin(), frontier.end());
        std::vector<Word> next;
        for (auto& w : frontier)
            for (auto& r : tbox.roles())
                if (generated_step(tbox, w.back(), r)) {
                    Word w2 = w;
                    w2.push_back(r);
                    next.push_back(std::move(w2));
                }
        frontier = std::move(next);
    }
    return out;
}

} // namespace omqrw::dl
