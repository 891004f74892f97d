#include "omqrw/ndl/program.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "omqrw/errors.hpp"

namespace omqrw::ndl {

namespace {

std::map<std::string, std::vector<const Clause*>> clauses_by_head(const Program& p) {
    std::map<std::string, std::vector<const Clause*>> out;
    for (auto& c : p.clauses) out[c.head.pred].push_back(&c);
    return out;
}

} // namespace

std::vector<std::string> topo_order(const Program& p) {
    auto idb = p.idb();
    auto by_head = clauses_by_head(p);
    std::vector<std::string> order;
    std::map<std::string, int> state;  // 0 new, 1 open, 2 done
    std::function<void(const std::string&)> visit = [&](const std::string& s) {
        int& st = state[s];
        if (st == 2) return;
        if (st == 1)
            throw precondition_error("RecursionDetected", "cycle through predicate " + s);
        st = 1;
        for (auto* c : by_head[s])
            for (auto& a : c->body)
                if (idb.count(a.pred)) visit(a.pred);
        st = 2;
        order.push_back(s);
    };
    for (auto& s : idb) visit(s);
    return order;
}

ValidationReport validate(const Program& p) {
    ValidationReport r;
    auto idb = p.idb();

    for (auto& c : p.clauses) {
        if (c.head.is_eq())
            throw precondition_error("UnsafeHead", "equality cannot occur in a head");
        for (auto& t : c.head.args) {
            if (!t.is_var) continue;
            bool found = false;
            for (auto& b : c.body)
                for (auto& u : b.args) found |= (u.is_var && u.text == t.text);
            if (!found)
                throw precondition_error(
                    "UnsafeHead", "head variable " + t.text + " missing from body of clause for " +
                                      c.head.pred);
        }
    }

    topo_order(p);  // throws RecursionDetected on a cycle
    r.nonrecursive = true;

    // Depth: longest dependence path from the goal.
    auto by_head = clauses_by_head(p);
    std::map<std::string, int> depth;
    std::function<int(const std::string&)> dep = [&](const std::string& s) -> int {
        if (!idb.count(s)) return 0;
        auto it = depth.find(s);
        if (it != depth.end()) return it->second;
        int best = 0;
        for (auto* c : by_head[s])
            for (auto& a : c->body) best = std::max(best, 1 + dep(a.pred));
        depth[s] = best;
        return best;
    };
    r.depth = dep(p.goal);

    // Ordered check: the trailing param positions of every occurrence of an
    // IDB predicate must carry the same variables, and body parameters must
    // flow into the head.
    r.ordered = true;
    std::map<std::string, std::vector<Term>> pvars;
    auto check_occurrence = [&](const Atom& a) {
        if (!idb.count(a.pred)) return;
        int k = p.param_count(a.pred);
        if (k == 0) return;
        if ((int)a.args.size() < k)
            throw precondition_error("OrderedViolation",
                                     "predicate " + a.pred + " has fewer args than parameters");
        std::vector<Term> tail(a.args.end() - k, a.args.end());
        auto [it, fresh] = pvars.emplace(a.pred, tail);
        if (!fresh && it->second != tail) r.ordered = false;
    };
    for (auto& c : p.clauses) {
        check_occurrence(c.head);
        for (auto& a : c.body) check_occurrence(a);
    }
    if (r.ordered) {
        for (auto& c : p.clauses) {
            std::set<std::string> body_params, head_params;
            for (auto& a : c.body) {
                if (!idb.count(a.pred)) continue;
                int k = p.param_count(a.pred);
                for (int i = 0; i < k; ++i) body_params.insert(a.args[a.args.size() - k + i].text);
            }
            int k = p.param_count(c.head.pred);
            for (int i = 0; i < k; ++i) head_params.insert(c.head.args[c.head.args.size() - k + i].text);
            for (auto& v : body_params)
                if (!head_params.count(v)) r.ordered = false;
        }
    }

    // Width: distinct non-parameter variables per clause; linear / skinny.
    r.linear = true;
    r.skinny = true;
    for (auto& c : p.clauses) {
        std::set<std::string> vars, param_vars;
        auto scan = [&](const Atom& a) {
            int k = idb.count(a.pred) ? p.param_count(a.pred) : 0;
            for (size_t i = 0; i < a.args.size(); ++i) {
                if (!a.args[i].is_var) continue;
                vars.insert(a.args[i].text);
                if ((int)i >= (int)a.args.size() - k) param_vars.insert(a.args[i].text);
            }
        };
        scan(c.head);
        int idb_atoms = 0;
        for (auto& a : c.body) {
            scan(a);
            if (!a.is_eq() && idb.count(a.pred)) ++idb_atoms;
        }
        int nonparam = 0;
        for (auto& v : vars)
            if (!param_vars.count(v)) ++nonparam;
        r.width = std::max(r.width, nonparam);
        if (idb_atoms > 1) r.linear = false;
        if (c.body.size() > 2) r.skinny = false;
        r.arity = std::max(r.arity, (int)c.head.args.size());
        for (auto& a : c.body) r.arity = std::max(r.arity, (int)a.args.size());
    }
    return r;
}

std::map<std::string, int> infer_weight_function(const Program& p) {
    auto order = topo_order(p);
    auto by_head = clauses_by_head(p);
    auto idb = p.idb();
    std::map<std::string, int> nu;
    for (auto& c : p.clauses)
        for (auto& a : c.body)
            if (!idb.count(a.pred)) nu[a.pred] = 0;
    for (auto& s : order) {
        int best = 1;
        for (auto* c : by_head[s]) {
            int sum = 0;
            for (auto& a : c->body) sum += nu.count(a.pred) ? nu[a.pred] : 0;
            best = std::max(best, sum);
        }
        nu[s] = best;
    }
    return nu;
}

bool is_weight_function(const Program& p, const std::map<std::string, int>& nu) {
    auto idb = p.idb();
    auto get = [&](const std::string& s) {
        auto it = nu.find(s);
        return it == nu.end() ? 0 : it->second;
    };
    for (auto& s : idb)
        if (get(s) <= 0) return false;
    for (auto& c : p.clauses) {
        int sum = 0;
        for (auto& a : c.body) sum += get(a.pred);
        if (get(c.head.pred) < sum) return false;
    }
    return true;
}

std::map<std::string, std::vector<std::string>> parameter_vars(const Program& p) {
    std::map<std::string, std::vector<std::string>> out;
    for (auto& c : p.clauses) {
        auto note = [&](const Atom& a) {
            int k = p.param_count(a.pred);
            if (k == 0 || out.count(a.pred)) return;
            std::vector<std::string> vs;
            for (int i = 0; i < k; ++i) vs.push_back(a.args[a.args.size() - k + i].text);
            out[a.pred] = std::move(vs);
        };
        note(c.head);
        for (auto& a : c.body) note(a);
    }
    return out;
}

namespace {

void emit_atom(std::ostringstream& os, const Atom& a) {
    if (a.is_eq()) {
        os << a.args[0].text << " = " << a.args[1].text;
        return;
    }
    os << a.pred << "(";
    for (size_t i = 0; i < a.args.size(); ++i) {
        if (i) os << ",";
        if (!a.args[i].is_var) os << '"' << a.args[i].text << '"';
        else os << a.args[i].text;
    }
    os << ")";
}

Clause inline_equalities(const Clause& c) {
    // Union-find over the clause variables induced by its equality atoms.
    std::map<std::string, std::string> parent;
    std::function<std::string(std::string)> find = [&](std::string v) {
        while (parent.count(v) && parent[v] != v) v = parent[v];
        return v;
    };
    auto unite = [&](const std::string& a, const std::string& b) {
        auto ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    };
    for (auto& a : c.body)
        if (a.is_eq() && a.args[0].is_var && a.args[1].is_var) unite(a.args[0].text, a.args[1].text);

    Clause out;
    auto subst = [&](Atom a) {
        for (auto& t : a.args)
            if (t.is_var) t.text = find(t.text);
        return a;
    };
    out.head = subst(c.head);
    for (auto& a : c.body) {
        if (a.is_eq() && a.args[0].is_var && a.args[1].is_var) {
            // Keep x = x only when x occurs nowhere else: it still pins the
            // variable to the active domain.
            std::string v = find(a.args[0].text);
            bool elsewhere = false;
            for (auto& b : c.body)
                if (!b.is_eq())
                    for (auto& t : b.args) elsewhere |= (t.is_var && find(t.text) == v);
            if (elsewhere) continue;
            Atom self{kEq, {var(v), var(v)}};
            bool dup = std::find(out.body.begin(), out.body.end(), self) != out.body.end();
            if (!dup) out.body.push_back(self);
            continue;
        }
        out.body.push_back(subst(a));
    }
    return out;
}

} // namespace

std::string emit(const Program& p, bool eq_inline) {
    std::ostringstream os;
    os << "% goal: " << p.goal << "/" << p.goal_arity << "\n";
    if (!p.avars.empty()) {
        os << "% avar:";
        for (auto& v : p.avars) os << " " << v;
        os << "\n";
    }
    for (auto& [pred, k] : p.params)
        if (k > 0) os << "% params: " << pred << " " << k << "\n";
    for (auto& c : p.clauses) {
        Clause cl = eq_inline ? inline_equalities(c) : c;
        emit_atom(os, cl.head);
        if (!cl.body.empty()) {
            os << " :- ";
            for (size_t i = 0; i < cl.body.size(); ++i) {
                if (i) os << ", ";
                emit_atom(os, cl.body[i]);
            }
        }
        os << ".\n";
    }
    return os.str();
}

namespace {

struct PLexer {
    const std::string& s;
    int line;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(msg, line, (int)pos + 1);
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum((unsigned char)s[pos]) || std::string("_.@*").find(s[pos]) != std::string::npos))
            ++pos;
        if (pos == start) fail("expected identifier");
        return s.substr(start, pos - start);
    }
    Term term() {
        skip_ws();
        if (eat('"')) {
            size_t start = pos;
            while (pos < s.size() && s[pos] != '"') ++pos;
            if (pos >= s.size()) fail("unterminated constant");
            std::string c = s.substr(start, pos - start);
            ++pos;
            return cst(c);
        }
        return var(ident());
    }
    Atom atom() {
        Term first = term();
        skip_ws();
        if (pos < s.size() && s[pos] == '=') {
            ++pos;
            Term second = term();
            return Atom{kEq, {first, second}};
        }
        if (!first.is_var) fail("predicate expected");
        Atom a;
        a.pred = first.text;
        expect('(');
        if (!eat(')')) {
            do {
                a.args.push_back(term());
            } while (eat(','));
            expect(')');
        }
        return a;
    }
};

} // namespace

Program parse_program(const std::string& text) {
    Program p;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        std::string trimmed = line;
        size_t b = trimmed.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        if (trimmed[b] == '%') {
            std::istringstream meta(trimmed.substr(b + 1));
            std::string kw;
            meta >> kw;
            if (kw == "goal:") {
                std::string g;
                meta >> g;
                auto slash = g.find('/');
                if (slash == std::string::npos) throw parse_error("bad goal line", ln, 1);
                p.goal = g.substr(0, slash);
                p.goal_arity = std::stoi(g.substr(slash + 1));
            } else if (kw == "avar:") {
                std::string v;
                while (meta >> v) p.avars.push_back(v);
            } else if (kw == "params:") {
                std::string pred;
                int k = 0;
                meta >> pred >> k;
                p.params[pred] = k;
            }
            continue;
        }
        PLexer lx{line, ln};
        Clause c;
        c.head = lx.atom();
        lx.skip_ws();
        if (lx.pos + 1 < line.size() && line[lx.pos] == ':' && line[lx.pos + 1] == '-') {
            lx.pos += 2;
            if (!lx.peek('.')) {
                do {
                    c.body.push_back(lx.atom());
                } while (lx.eat(','));
            }
        }
        lx.expect('.');
        p.clauses.push_back(std::move(c));
    }
    if (p.goal.empty() && !p.clauses.empty()) {
        p.goal = p.clauses.front().head.pred;
        p.goal_arity = (int)p.clauses.front().head.args.size();
    }
    return p;
}

} // namespace omqrw::ndl
