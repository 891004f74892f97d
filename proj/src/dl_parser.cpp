#include "omqrw/dl/parser.hpp"

#include <cctype>
#include <sstream>

#include "omqrw/errors.hpp"

namespace omqrw::dl {

namespace {

bool ident_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_' || c == '.' || c == '@';
}

struct LineLexer {
    const std::string& s;
    int line;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size() || s[pos] == '#';
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(msg, line, (int)pos + 1);
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && ident_char(s[pos])) ++pos;
        if (pos == start) fail("expected identifier");
        return s.substr(start, pos - start);
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
};

Role parse_role_tok(LineLexer& lx) {
    std::string n = lx.ident();
    if (is_reserved_name(n)) lx.fail("'@' names are reserved");
    bool inv = lx.eat('-');
    return Role(n, inv);
}

BasicConcept parse_concept_tok(LineLexer& lx) {
    std::string n = lx.ident();
    if (n == "ex") return BasicConcept::exists(parse_role_tok(lx));
    if (is_reserved_name(n)) lx.fail("'@' names are reserved");
    return BasicConcept::atomic(n);
}

} // namespace

TBox parse_tbox(const std::string& text) {
    TBox tbox;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        LineLexer lx{line, ln};
        if (lx.done()) continue;
        // Look ahead at the keyword to pick the production: role axioms use
        // rsub/rdisj, concept axioms sub/disj.
        size_t save = lx.pos;
        std::string first = lx.ident();
        bool first_inv = lx.eat('-');
        lx.skip_ws();
        size_t kw_start = lx.pos;
        while (lx.pos < line.size() && ident_char(line[lx.pos])) ++lx.pos;
        std::string kw = line.substr(kw_start, lx.pos - kw_start);
        if (kw == "rsub" || kw == "rdisj") {
            if (first == "ex") lx.fail("role expected before " + kw);
            if (is_reserved_name(first)) lx.fail("'@' names are reserved");
            Role r1(first, first_inv);
            Role r2 = parse_role_tok(lx);
            if (!lx.done()) lx.fail("trailing input");
            if (kw == "rsub")
                tbox.add_role_inclusion(r1, r2);
            else
                tbox.role_disjointness.push_back({r1, r2});
        } else if (kw == "sub" || kw == "disj") {
            lx.pos = save;
            BasicConcept c1 = parse_concept_tok(lx);
            lx.ident();  // the keyword again
            BasicConcept c2 = parse_concept_tok(lx);
            if (!lx.done()) lx.fail("trailing input");
            if (kw == "sub")
                tbox.add_concept_inclusion(c1, c2);
            else
                tbox.concept_disjointness.push_back({c1, c2});
        } else {
            lx.pos = kw_start;
            lx.fail("expected sub, rsub, disj or rdisj");
        }
    }
    tbox.build_closures();
    return tbox;
}

ABox parse_abox(const std::string& text) {
    ABox abox;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        LineLexer lx{line, ln};
        if (lx.done()) continue;
        std::string pred = lx.ident();
        lx.expect('(');
        std::string a = lx.ident();
        if (lx.eat(',')) {
            std::string b = lx.ident();
            lx.expect(')');
            if (!lx.done()) lx.fail("trailing input");
            abox.add_role(pred, a, b);
        } else {
            lx.expect(')');
            if (!lx.done()) lx.fail("trailing input");
            abox.add_concept(pred, a);
        }
    }
    return abox;
}

CQ parse_cq(const std::string& text) {
    // Single line; allow surrounding blank lines.
    std::istringstream in(text);
    std::string line, found;
    int ln = 0, found_ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        LineLexer probe{line, ln};
        if (probe.done()) continue;
        if (!found.empty()) throw parse_error("query must be a single line", ln, 1);
        found = line;
        found_ln = ln;
    }
    if (found.empty()) throw parse_error("empty query", 1, 1);

    CQ cq;
    LineLexer lx{found, found_ln};
    cq.name = lx.ident();
    lx.expect('(');
    if (!lx.eat(')')) {
        do {
            cq.avars.push_back(lx.ident());
        } while (lx.eat(','));
        lx.expect(')');
    }
    lx.expect(':');
    lx.expect('-');
    if (!lx.done()) {
        do {
            QueryAtom at;
            at.pred = lx.ident();
            lx.expect('(');
            at.vars.push_back(lx.ident());
            if (lx.eat(',')) at.vars.push_back(lx.ident());
            lx.expect(')');
            cq.atoms.push_back(std::move(at));
        } while (lx.eat(','));
        if (!lx.done()) lx.fail("trailing input");
    }
    for (auto& v : cq.avars) {
        bool occurs = false;
        for (auto& at : cq.atoms)
            for (auto& u : at.vars) occurs |= (u == v);
        if (!occurs) throw parse_error("answer variable " + v + " not used in body", found_ln, 1);
    }
    return cq;
}

std::string format_abox(const ABox& abox) {
    std::ostringstream out;
    for (auto& [c, a] : abox.concept_facts) out << c << "(" << a << ")\n";
    for (auto& [p, a, b] : abox.role_facts) out << p << "(" << a << "," << b << ")\n";
    return out.str();
}

std::string format_tbox(const TBox& tbox) {
    std::ostringstream out;
    for (auto& [a, b] : tbox.concept_inclusions)
        out << a.str() << " sub " << b.str() << "\n";
    for (auto& [a, b] : tbox.role_inclusions)
        out << a.str() << " rsub " << b.str() << "\n";
    for (auto& [a, b] : tbox.concept_disjointness)
        out << a.str() << " disj " << b.str() << "\n";
    for (auto& [a, b] : tbox.role_disjointness)
        out << a.str() << " rdisj " << b.str() << "\n";
    return out.str();
}

} // namespace omqrw::dl
