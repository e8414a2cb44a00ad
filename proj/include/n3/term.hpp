#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace n3 {

class Formula;
struct TermData;

// Term kinds. Blank ids always carry the "_:" prefix so they can never
// collide with variable names inside a Bindings map.
enum class TermKind { Iri, Literal, Blank, UniVar, ExiVar, List, Quoted };

class Term {
public:
    Term();  // empty IRI; placeholder only

    static Term iri(std::string value);
    static Term literal(std::string lexical);
    static Term literal(std::string lexical, std::string datatype_iri);
    static Term lang_literal(std::string lexical, std::string language);
    static Term integer(long long value);
    static Term boolean(bool value);
    static Term blank(std::string id);
    static Term univar(std::string name);
    static Term exivar(std::string name);
    static Term list(std::vector<Term> items);
    static Term quoted(Formula f);

    TermKind kind() const { return kind_; }
    bool is_iri() const { return kind_ == TermKind::Iri; }
    bool is_literal() const { return kind_ == TermKind::Literal; }
    bool is_blank() const { return kind_ == TermKind::Blank; }
    bool is_list() const { return kind_ == TermKind::List; }
    bool is_quoted() const { return kind_ == TermKind::Quoted; }
    // Blank and ExiVar form one renameable class; UniVar is separate.
    bool is_existential_kind() const {
        return kind_ == TermKind::Blank || kind_ == TermKind::ExiVar;
    }
    bool is_variable() const {
        return kind_ == TermKind::UniVar || kind_ == TermKind::ExiVar;
    }

    // IRI value, literal lexical form, blank id, or variable name.
    const std::string& text() const;
    const std::string& datatype() const;  // empty when untyped
    const std::string& language() const;  // empty when no tag
    const std::vector<Term>& items() const;
    const Formula& quoted_formula() const;

    bool operator==(const Term& other) const { return compare(other) == 0; }
    bool operator!=(const Term& other) const { return compare(other) != 0; }
    bool operator<(const Term& other) const { return compare(other) < 0; }

    // Total order: kind rank, then content. Quoted terms compare by the
    // canonical key of their formula, so equality is equality up to
    // consistent renaming of quantified names.
    int compare(const Term& other) const;

private:
    Term(TermKind k, std::shared_ptr<const TermData> d) : kind_(k), data_(std::move(d)) {}
    TermKind kind_;
    std::shared_ptr<const TermData> data_;
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    int compare(const Triple& other) const;
    bool operator==(const Triple& other) const { return compare(other) == 0; }
    bool operator!=(const Triple& other) const { return compare(other) != 0; }
    bool operator<(const Triple& other) const { return compare(other) < 0; }
};

// Variable name -> replacement term.
using Bindings = std::map<std::string, Term>;

// A formula is a set of triples plus the variables it declares. Triples are
// kept sorted and deduplicated; declaration lists are sorted. Blank nodes
// need no declaration: a blank is owned by the innermost formula enclosing
// all of its occurrences.
class Formula {
public:
    Formula() = default;
    Formula(std::vector<Triple> triples,
            std::vector<std::string> universals = {},
            std::vector<std::string> existentials = {});

    const std::vector<Triple>& triples() const { return triples_; }
    const std::vector<std::string>& universals() const { return universals_; }
    const std::vector<std::string>& existentials() const { return existentials_; }

    bool empty() const { return triples_.empty(); }
    std::size_t size() const { return triples_.size(); }
    bool contains(const Triple& t) const;
    bool declares_universal(const std::string& name) const;
    bool declares_existential(const std::string& name) const;

    // Value equality is equality up to consistent renaming of quantified
    // names (same relation the canonical key induces).
    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

private:
    std::vector<Triple> triples_;
    std::vector<std::string> universals_;
    std::vector<std::string> existentials_;
};

// --- Core operations ----------------------------------------------------

// Replaces bound variables by their values. Respects scope: a nested formula
// redeclaring a name shadows the binding. Declarations of fully substituted
// variables are dropped.
Formula substitute_variables(const Formula& f, const Bindings& b);
Term substitute_variables(const Term& t, const Bindings& b);

// Replaces every occurrence of `from` with `to` in top-level triples and
// inside lists, but not inside quoted formulas (quotation is opaque).
Formula rewrite_equals(const Formula& f, const Term& from, const Term& to);

// Renames every quantified name (universals, existentials, blanks) of f to
// fresh names not present in `reserved`. Returns the renamed formula and
// extends `reserved` with the names used.
Formula rename_apart(const Formula& f, std::set<std::string>& reserved);

// Set union of formulas with quantified names kept apart: blanks and
// existentials of later operands are renamed away from earlier ones;
// universals merge by name.
Formula conjoin(const std::vector<Formula>& fs);

bool isomorphic(const Formula& a, const Formula& b);

// Canonical relabeling of quantified names (universals to v0, v1, ...;
// blanks/existentials to _:c0, _:c1, ...). Two formulas are isomorphic iff
// their canonical forms are equal term-for-term.
Formula canonical_form(const Formula& f);

// Deterministic structural encoding of the canonical form. Not N3 syntax;
// used for equality, ordering and dedup keys.
std::string canonical_key(const Formula& f);

// Structural encoding of a term as-is (no relabeling) except that quoted
// formulas are encoded canonically. Stable dedup key for ground terms.
std::string term_key(const Term& t);

// Names of the existential class (blanks and declared existentials) owned by
// the root of f: declared existentials plus blanks whose occurrence least
// common ancestor is the root.
std::set<std::string> root_existential_names(const Formula& f);

// True when the name occurs as a variable or blank anywhere in the formula
// tree, including declarations.
bool mentions_name(const Formula& f, const std::string& name);

// All names occurring in the formula tree (variable names, blank ids, and
// every declared name), for choosing fresh names.
std::set<std::string> all_names(const Formula& f);

// Fresh-name helper: smallest "<stem><n>" not in reserved; inserts it.
std::string fresh_name(const std::string& stem, std::set<std::string>& reserved);

}
