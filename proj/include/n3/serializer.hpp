#pragma once

#include "n3/term.hpp"

#include <string>
#include <utility>
#include <vector>

namespace n3 {

struct SerializerConfig {
    // prefix -> namespace IRI, tried longest-namespace-first.
    std::vector<std::pair<std::string, std::string>> prefixes;
    // When set, IRIs under the base are printed as relative references.
    std::string base;
    // Flat mode: one triple per line, no prefixes, no bracket inlining, no
    // subject grouping. Quoted formulas and lists keep their structural
    // syntax.
    bool flat = false;
};

std::string serialize(const Formula& f, const SerializerConfig& cfg = {});

// Deterministic bytes for isomorphic formulas: canonical relabeling followed
// by serialization. The overload threads a prefix map through unchanged.
std::string canonical_text(const Formula& f);
std::string canonical_text(const Formula& f,
                           const std::vector<std::pair<std::string, std::string>>& prefixes);

}
