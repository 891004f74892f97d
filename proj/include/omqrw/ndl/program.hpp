#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace omqrw::ndl {

inline const std::string kEq = "=";

struct Term {
    std::string text;
    bool is_var = true;

    friend bool operator==(const Term& a, const Term& b) {
        return a.is_var == b.is_var && a.text == b.text;
    }
    friend bool operator<(const Term& a, const Term& b) {
        return a.text != b.text ? a.text < b.text : a.is_var < b.is_var;
    }
};

inline Term var(std::string v) { return Term{std::move(v), true}; }
inline Term cst(std::string c) { return Term{std::move(c), false}; }

struct Atom {
    std::string pred;
    std::vector<Term> args;

    bool is_eq() const { return pred == kEq; }

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.pred == b.pred && a.args == b.args;
    }
    friend bool operator<(const Atom& a, const Atom& b) {
        return a.pred != b.pred ? a.pred < b.pred : a.args < b.args;
    }
};

struct Clause {
    Atom head;
    std::vector<Atom> body;

    friend bool operator==(const Clause& a, const Clause& b) {
        return a.head == b.head && a.body == b.body;
    }
};

struct Program {
    std::vector<Clause> clauses;
    std::string goal;
    int goal_arity = 0;
    // Number of trailing parameter positions per predicate (ordered programs).
    std::map<std::string, int> params;
    // Names of the answer variables, used for CSV headers.
    std::vector<std::string> avars;

    std::set<std::string> idb() const {
        std::set<std::string> out;
        for (auto& c : clauses) out.insert(c.head.pred);
        return out;
    }
    int param_count(const std::string& pred) const {
        auto it = params.find(pred);
        return it == params.end() ? 0 : it->second;
    }
};

struct ValidationReport {
    bool nonrecursive = false;
    bool ordered = false;
    bool linear = false;
    bool skinny = false;
    int depth = 0;
    int width = 0;
    int arity = 0;
};

// Structural analysis. Throws precondition_error: RecursionDetected (message
// names the cycle), UnsafeHead, OrderedViolation (only when declared
// parameters are inconsistent with the clause set).
ValidationReport validate(const Program& p);

// Pointwise-least weight function: 0 on EDBs, and max(1, sum of body
// weights) over clauses, in topological order. Requires nonrecursive input.
std::map<std::string, int> infer_weight_function(const Program& p);

bool is_weight_function(const Program& p, const std::map<std::string, int>& nu);

// Predicates in dependence order, leaves first (EDBs excluded).
std::vector<std::string> topo_order(const Program& p);

// The parameter variables of each IDB predicate, read off its occurrences;
// empty when the predicate has no parameters. Used by the per-candidate
// evaluation procedures.
std::map<std::string, std::vector<std::string>> parameter_vars(const Program& p);

// Text format: one clause per line "head :- atom, ..., atom." with equality
// written "x = y"; facts "head."; metadata lines "% goal: G/2",
// "% avar: x0 x7", "% params: P 1". eq_inline eliminates equality atoms by
// unifying variables at emission where possible.
std::string emit(const Program& p, bool eq_inline = true);
Program parse_program(const std::string& text);

} // namespace omqrw::ndl
