#pragma once

#include "n3/term.hpp"

#include <string>
#include <vector>

namespace n3::axioms {

// Stable IRIs under which the bundled axiom documents can be loaded.
inline constexpr const char* rdfs_iri = "urn:n3r:axioms:rdfs";
inline constexpr const char* lists_iri = "urn:n3r:axioms:lists";
inline constexpr const char* sameas_iri = "urn:n3r:axioms:sameas";

const Formula& rdfs();
const Formula& lists();
const Formula& sameas();

const char* source_text(const std::string& iri);  // nullptr when unknown
const Formula* by_iri(const std::string& iri);    // nullptr when unknown
std::vector<std::string> bundled_iris();

}  // namespace n3::axioms
