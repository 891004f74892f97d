#include "omqrw/chase/chase.hpp"

#include <algorithm>
#include <functional>

#include "omqrw/dl/ops.hpp"
#include "omqrw/errors.hpp"

namespace omqrw::chase {

std::vector<int> CanonicalModel::successors(int e) const {
    std::set<int> out;
    for (auto& [name, ext] : role_ext)
        for (auto& [x, y] : ext) {
            if (x == e) out.insert(y);
            if (y == e) out.insert(x);
        }
    return {out.begin(), out.end()};
}

std::vector<int> CanonicalModel::predecessors(int e) const { return successors(e); }

CanonicalModel build_chase(const TBox& tbox, const ABox& abox, int depth_limit) {
    CanonicalModel m;
    m.depth_bound = depth_limit;
    ABox hc = abox.hcomplete ? abox : dl::h_complete(tbox, abox);

    auto add_element = [&](const std::string& ind, const Word& w) {
        int id = (int)m.elements.size();
        m.elements.push_back({ind, w});
        m.index[{ind, w}] = id;
        return id;
    };

    for (auto& a : hc.individuals()) add_element(a, {});

    // Named level: extensions come from the H-completed ABox.
    for (auto& [c, a] : hc.concept_facts) m.concept_ext[c].insert(m.find(a));
    for (auto& [p, a, b] : hc.role_facts) m.role_ext[p].insert({m.find(a), m.find(b)});

    auto gens = dl::generators(tbox);

    // Anonymous type of an element whose word ends with role r: concept names
    // above ex r^-.
    auto anon_concepts = [&](const Role& last) {
        std::vector<std::string> out;
        for (auto& sup : tbox.subsumers_of_concept(BasicConcept::exists(last.inverse())))
            if (sup.kind == BasicConcept::Atomic) out.push_back(sup.name);
        return out;
    };

    // Breadth-first witness creation, one level of words per round.
    std::vector<int> frontier;
    for (int e = 0; e < (int)m.elements.size(); ++e) frontier.push_back(e);
    for (int level = 1; level <= depth_limit; ++level) {
        std::vector<int> next;
        for (int e : frontier) {
            const Element el = m.elements[e];
            std::set<Role> targets;
            for (auto& [b, r] : gens) {
                bool applies;
                if (el.named())
                    applies = dl::holds_at(tbox, hc, b, el.ind);
                else {
                    Role last = el.word.back();
                    applies = tbox.subsumes_concept(BasicConcept::exists(last.inverse()), b) &&
                              !tbox.subsumes_role(last.inverse(), r);
                }
                if (applies) targets.insert(r);
            }
            for (auto& r : targets) {
                Word w = el.word;
                w.push_back(r);
                if (m.find(el.ind, w) >= 0) continue;
                int id = add_element(el.ind, w);
                next.push_back(id);
                for (auto& c : anon_concepts(r)) m.concept_ext[c].insert(id);
                // The generating edge participates in every super-role of r.
                for (auto& s : tbox.roles()) {
                    if (s.inv) continue;
                    if (tbox.subsumes_role(r, Role(s.name, false)))
                        m.role_ext[s.name].insert({e, id});
                    if (tbox.subsumes_role(r, Role(s.name, true)))
                        m.role_ext[s.name].insert({id, e});
                }
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return m;
}

namespace {

// Roles that label some anonymous element of some chase over this TBox.
std::vector<Role> realizable_roles(const TBox& tbox, const ABox& hc) {
    std::set<Role> real;
    auto gens = dl::generators(tbox);
    for (auto& [b, r] : gens) {
        if (real.count(r)) continue;
        for (auto& a : hc.individuals())
            if (dl::holds_at(tbox, hc, b, a)) {
                real.insert(r);
                break;
            }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& prev : std::set<Role>(real))
            for (auto& r : tbox.roles())
                if (!real.count(r) && dl::generated_step(tbox, prev, r)) {
                    real.insert(r);
                    changed = true;
                }
    }
    return {real.begin(), real.end()};
}

} // namespace

bool is_consistent(const TBox& tbox, const ABox& abox) {
    ABox hc = abox.hcomplete ? abox : dl::h_complete(tbox, abox);
    auto inds = hc.individuals();
    auto real = realizable_roles(tbox, hc);

    for (auto& [b1, b2] : tbox.concept_disjointness) {
        for (auto& a : inds)
            if (dl::holds_at(tbox, hc, b1, a) && dl::holds_at(tbox, hc, b2, a)) return false;
        for (auto& r : real) {
            BasicConcept type = BasicConcept::exists(r.inverse());
            if (tbox.subsumes_concept(type, b1) && tbox.subsumes_concept(type, b2)) return false;
        }
    }
    for (auto& [r1, r2] : tbox.role_disjointness) {
        for (auto& [p, a, b] : hc.role_facts) {
            for (bool inv : {false, true}) {
                Role r(p, inv);
                const std::string& x = inv ? b : a;
                const std::string& y = inv ? a : b;
                // r holds on (x,y); check whether both disjoint roles do.
                bool in1 = tbox.subsumes_role(r, r1) || hc.has_role(r1, x, y);
                bool in2 = tbox.subsumes_role(r, r2) || hc.has_role(r2, x, y);
                if (in1 && in2) return false;
            }
        }
        for (auto& r : real)
            if (tbox.subsumes_role(r, r1) && tbox.subsumes_role(r, r2)) return false;
    }
    return true;
}

namespace {

// Backtracking homomorphism search from cq into a model. Answer variables
// may only bind to named elements. on_hit receives the full assignment and
// returns true to continue enumerating.
struct HomSearch {
    const CanonicalModel& m;
    const CQ& cq;
    std::vector<std::string> order;                 // variables, by descending degree
    std::map<std::string, std::vector<const dl::QueryAtom*>> atoms_of;
    std::function<bool(const std::map<std::string, int>&)> on_hit;
    std::map<std::string, int> assign;
    bool stopped = false;

    explicit HomSearch(const CanonicalModel& model, const CQ& query) : m(model), cq(query) {
        std::map<std::string, int> degree;
        for (auto& v : cq.vars()) degree[v] = 0;
        for (auto& [u, v] : cq.gaifman_edges()) {
            degree[u]++;
            degree[v]++;
        }
        order = cq.vars();
        std::stable_sort(order.begin(), order.end(),
                         [&](const std::string& a, const std::string& b) {
                             return degree[a] > degree[b];
                         });
        for (auto& at : cq.atoms)
            for (auto& v : at.vars) atoms_of[v].push_back(&at);
    }

    bool atom_ok(const dl::QueryAtom& at) {
        // Checks only when all variables are bound.
        for (auto& v : at.vars)
            if (!assign.count(v)) return true;
        if (!at.is_role()) return m.in_concept(at.pred, assign.at(at.vars[0]));
        return m.in_role(Role(at.pred, false), assign.at(at.vars[0]), assign.at(at.vars[1]));
    }

    void run(size_t i = 0) {
        if (stopped) return;
        if (i == order.size()) {
            if (!on_hit(assign)) stopped = true;
            return;
        }
        const std::string& v = order[i];
        bool must_be_named = cq.is_answer_var(v);
        for (int e = 0; e < (int)m.elements.size(); ++e) {
            if (must_be_named && !m.elements[e].named()) continue;
            assign[v] = e;
            bool ok = true;
            for (auto* at : atoms_of[v]) ok = ok && atom_ok(*at);
            if (ok) run(i + 1);
            assign.erase(v);
            if (stopped) return;
        }
    }
};

} // namespace

std::set<std::vector<std::string>> certain_answers(const TBox& tbox, const CQ& cq,
                                                   const ABox& abox) {
    if (!is_consistent(tbox, abox))
        throw semantic_error("InconsistentInput", "ABox is inconsistent with the TBox");
    CanonicalModel m = build_chase(tbox, abox, (int)cq.vars().size());
    std::set<std::vector<std::string>> out;
    HomSearch hs(m, cq);
    hs.on_hit = [&](const std::map<std::string, int>& a) {
        std::vector<std::string> tup;
        for (auto& x : cq.avars) tup.push_back(m.elements[a.at(x)].ind);
        out.insert(std::move(tup));
        return true;
    };
    if (cq.vars().empty()) {
        // No variables at all: the empty conjunction holds.
        out.insert({});
        return out;
    }
    hs.run();
    return out;
}

bool entails_from_concept(const TBox& tbox, const std::string& concept_name, const CQ& cq) {
    if (!cq.boolean()) throw precondition_error("NotBoolean", "query has answer variables");
    ABox a;
    a.add_concept(concept_name, "@w");
    auto ans = certain_answers(tbox, cq, a);
    return !ans.empty();
}

bool is_connected(const CQ& cq) {
    auto vs = cq.vars();
    if (vs.empty()) return true;
    std::map<std::string, std::vector<std::string>> adj;
    for (auto& [u, v] : cq.gaifman_edges()) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::set<std::string> seen;
    std::vector<std::string> stack{vs[0]};
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        for (auto& u : adj[v]) stack.push_back(u);
    }
    return seen.size() == vs.size();
}

bool is_tree_shaped(const CQ& cq) {
    auto vs = cq.vars();
    if (vs.empty()) return true;
    return is_connected(cq) && cq.gaifman_edges().size() + 1 == vs.size();
}

int leaf_count(const CQ& cq) {
    std::map<std::string, int> degree;
    for (auto& [u, v] : cq.gaifman_edges()) {
        degree[u]++;
        degree[v]++;
    }
    int leaves = 0;
    for (auto& [v, d] : degree)
        if (d == 1) ++leaves;
    if (degree.empty() && !cq.vars().empty()) leaves = 1;  // single vertex
    return leaves;
}

std::vector<TreeWitness> tree_witnesses(const TBox& tbox, const CQ& cq) {
    if (!is_tree_shaped(cq)) throw precondition_error("NotTreeShaped", "query is not a tree");

    std::vector<std::string> evars;
    for (auto& v : cq.vars())
        if (!cq.is_answer_var(v)) evars.push_back(v);
    if (evars.empty()) return {};

    std::map<std::string, std::set<std::string>> adj;
    for (auto& at : cq.atoms)
        if (at.is_role() && at.vars[0] != at.vars[1]) {
            adj[at.vars[0]].insert(at.vars[1]);
            adj[at.vars[1]].insert(at.vars[0]);
        }

    // Candidate interiors: all non-empty subsets of existential variables.
    // The root set is forced: exactly the outside neighbours of the interior.
    struct Cand {
        std::set<std::string> t_i, t_r;
        std::vector<dl::QueryAtom> q_t;
        std::set<Role> roles;
    };
    std::vector<Cand> cands;
    size_t n = evars.size();
    for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
        Cand c;
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t(1) << i)) c.t_i.insert(evars[i]);
        for (auto& v : c.t_i)
            for (auto& u : adj[v])
                if (!c.t_i.count(u)) c.t_r.insert(u);
        for (auto& at : cq.atoms) {
            bool inside = true, all_root = true;
            for (auto& v : at.vars) {
                inside &= (c.t_i.count(v) || c.t_r.count(v)) != 0;
                all_root &= c.t_r.count(v) != 0;
            }
            if (inside && !all_root) c.q_t.push_back(at);
        }
        cands.push_back(std::move(c));
    }

    // Verify each candidate against the single-generator chases.
    std::map<Role, CanonicalModel> chases;
    for (auto& c : cands) {
        CQ sub;
        sub.atoms = c.q_t;
        for (auto& r : tbox.roles()) {
            auto it = chases.find(r);
            if (it == chases.end()) {
                ABox a;
                a.add_concept(dl::reserved_exists_name(r), "@w");
                it = chases.emplace(r, build_chase(tbox, a, (int)sub.vars().size() + 1)).first;
            }
            const CanonicalModel& m = it->second;
            int root = m.find("@w");
            bool found = false;
            HomSearch hs(m, sub);
            hs.on_hit = [&](const std::map<std::string, int>& asg) {
                for (auto& [v, e] : asg) {
                    bool at_root = (e == root);
                    if (at_root != (c.t_r.count(v) != 0)) return true;  // keep searching
                }
                found = true;
                return false;
            };
            hs.run();
            if (found) c.roles.insert(r);
        }
    }

    // Minimality, per generating role: q_t must not strictly contain the
    // q_t of another verified candidate for the same role.
    auto subset = [](const std::vector<dl::QueryAtom>& a, const std::vector<dl::QueryAtom>& b) {
        for (auto& x : a)
            if (std::find(b.begin(), b.end(), x) == b.end()) return false;
        return true;
    };
    std::vector<TreeWitness> out;
    for (auto& c : cands) {
        if (c.roles.empty()) continue;
        TreeWitness w;
        w.roots = c.t_r;
        w.interior = c.t_i;
        w.subquery = c.q_t;
        for (auto& r : c.roles) {
            bool minimal = true;
            for (auto& o : cands) {
                if (&o == &c || !o.roles.count(r)) continue;
                if (subset(o.q_t, c.q_t) && o.q_t.size() < c.q_t.size()) minimal = false;
            }
            if (minimal) w.gen_roles.insert(r);
        }
        if (!w.gen_roles.empty()) out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace omqrw::chase
