#pragma once

#include "n3/term.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace n3 {

struct EvalContext;

struct EngineLimits {
    std::size_t max_iterations = 10000;
    std::size_t max_derived = 1000000;
};

// A forward rule: { antecedent } => { consequent } with the universals that
// range over both sides. `id` identifies the source implication triple.
struct Rule {
    Formula antecedent;
    Formula consequent;
    std::set<std::string> universals;
    std::string id;
};

class RuleError : public std::runtime_error {
public:
    explicit RuleError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when closure limits are hit; carries everything derived so far.
class ClosureError : public std::runtime_error {
public:
    ClosureError(const std::string& msg, Formula partial)
        : std::runtime_error(msg), partial_(std::move(partial)) {}
    const Formula& partial() const { return partial_; }

private:
    Formula partial_;
};

// Pure graph matching of a pattern against data. Universal variables in the
// pattern bind data terms; pattern blanks and existentials match any term
// (consistently, keyed by name). Quoted pattern terms match quoted data
// terms by recursive exact correspondence: after applying bindings there
// must be a triple bijection, with quantified names paired bijectively.
// Builtin predicates are not evaluated here. Enumeration order and the
// returned set are deterministic.
std::vector<Bindings> match(const Formula& pattern, const Formula& data,
                            const Bindings& seed = {});

// Calls on_match for each solution; stops early when it returns false.
void match_each(const Formula& pattern, const Formula& data, const Bindings& seed,
                const std::function<bool(const Bindings&)>& on_match);

// True iff g can be derived from f by conjunction elimination/introduction,
// universal elimination, existential introduction and variable renaming.
// On variable-free RDF graphs this is simple entailment.
bool includes(const Formula& f, const Formula& g);
bool includes(const Formula& f, const Formula& g, Bindings& witness);
bool not_includes(const Formula& f, const Formula& g);

// Extracts the rules stated at the top level of f: triples whose predicate
// is log:implies with quoted subject and object. Implications with a
// variable subject or object are data, not rules. A rule whose consequent
// uses a universal that neither occurs in the antecedent nor is declared
// inside the consequent is rejected with RuleError.
std::vector<Rule> extract_rules(const Formula& f);

// Tracks (rule, bindings-projected-to-consequent) pairs that already fired,
// so re-running a rule never re-mints fresh blank nodes for an old match.
class FiringRecord {
public:
    bool mark(const std::string& key) { return fired_.insert(key).second; }

private:
    std::set<std::string> fired_;
};

// One modus ponens sweep: matches the antecedent against kb (graph triples
// first, then builtin triples in bound-argument order), instantiates the
// consequent per new firing with fresh blanks, and returns the instantiated
// consequent formulas. `fresh` feeds the fresh-blank namer.
std::vector<Formula> apply_rule(const Rule& rule, const Formula& kb,
                                FiringRecord& fired, const EvalContext& env,
                                std::set<std::string>& fresh);

// Deductive closure: least fixpoint of applying every top-level rule
// (including derived ones) to f, unioned with f. Deterministic. Throws
// ClosureError carrying the partial result when limits are hit.
Formula conclusion(const Formula& f, const EvalContext& env);

// includes(conclusion(f), g).
bool supports(const Formula& f, const Formula& g, const EvalContext& env);

// Runs the rules of `rules` over conclusion(conjoin(kb, rules)) and returns
// only the instantiated consequents.
Formula filter(const Formula& kb, const Formula& rules, const EvalContext& env);

}  // namespace n3
