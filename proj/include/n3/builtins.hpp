#pragma once

#include "n3/engine.hpp"
#include "n3/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace n3 {

class Resolver;

enum class EvalStatus { Satisfied, Unsatisfied, NotEvaluable };

// Outcome of one builtin evaluation. Satisfied carries one binding extension
// per solution (several for enumerating predicates such as list membership);
// a pure check yields a single empty extension.
struct EvalResult {
    EvalStatus status = EvalStatus::NotEvaluable;
    std::vector<Bindings> solutions;
    std::string diagnostic;

    static EvalResult satisfied() { return {EvalStatus::Satisfied, {Bindings{}}, ""}; }
    static EvalResult satisfied(std::vector<Bindings> sols) {
        return {EvalStatus::Satisfied, std::move(sols), ""};
    }
    static EvalResult unsatisfied(std::string why = "") {
        return {EvalStatus::Unsatisfied, {}, std::move(why)};
    }
    static EvalResult not_evaluable(std::string why = "") {
        return {EvalStatus::NotEvaluable, {}, std::move(why)};
    }
};

// Everything a builtin evaluation may consult. Defaults give a pure,
// offline, real-clock context; tests freeze the clock and environment.
struct EvalContext {
    Resolver* resolver = nullptr;
    std::string base = "file:///";
    EngineLimits limits;
    std::vector<std::string> argv;
    std::optional<std::map<std::string, std::string>> environ_override;
    std::optional<std::string> frozen_utc;  // ISO-8601 instant for gmTime/localTime
    bool allow_impure = true;
    std::vector<std::string>* diagnostics = nullptr;

    void diag(const std::string& msg) const {
        if (diagnostics) diagnostics->push_back(msg);
    }
};

// True when the IRI lives in a namespace reserved for calculable predicates.
bool in_builtin_namespace(const std::string& iri);

// True when the predicate has a registered evaluator. Unregistered names in
// a builtin namespace are sound as ground facts and match the graph instead.
bool is_builtin_predicate(const std::string& iri);

// Evaluates a registered builtin. `subject` and `object` arrive with the
// current bindings already applied; solutions only extend those bindings.
EvalResult evaluate_builtin(const std::string& predicate, const Term& subject,
                            const Term& object, const EvalContext& env);

struct CatalogEntry {
    std::string iri;
    std::string modes;  // subset of "check", "compute-object", "compute-subject"
    std::string shape;  // "scalar" or "list-subject"
};

// Sorted by IRI; stable across runs.
std::vector<CatalogEntry> builtin_catalog();

}  // namespace n3
