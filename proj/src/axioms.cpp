#include "n3/axioms.hpp"
#include "n3/parser.hpp"

#include "n3/axiom_texts.hpp"

namespace n3::axioms {

const Formula& rdfs() {
    static const Formula f = parse_document(rdfs_text, rdfs_iri, rdfs_iri);
    return f;
}

const Formula& lists() {
    static const Formula f = parse_document(lists_text, lists_iri, lists_iri);
    return f;
}

const Formula& sameas() {
    static const Formula f = parse_document(sameas_text, sameas_iri, sameas_iri);
    return f;
}

const char* source_text(const std::string& iri) {
    if (iri == rdfs_iri) return rdfs_text;
    if (iri == lists_iri) return lists_text;
    if (iri == sameas_iri) return sameas_text;
    return nullptr;
}

const Formula* by_iri(const std::string& iri) {
    if (iri == rdfs_iri) return &rdfs();
    if (iri == lists_iri) return &lists();
    if (iri == sameas_iri) return &sameas();
    return nullptr;
}

std::vector<std::string> bundled_iris() { return {lists_iri, rdfs_iri, sameas_iri}; }

}  // namespace n3::axioms
