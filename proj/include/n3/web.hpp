#pragma once

#include "n3/term.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace n3 {

struct Document {
    std::string iri;        // the requested IRI, fragment stripped
    std::string final_iri;  // after redirects
    std::string media_type;
    std::string body;
    std::string retrieved_at;  // ISO-8601 UTC
};

struct ResolverConfig {
    bool network_allowed = true;
    // Checked before anything else; longest matching prefix wins.
    std::vector<std::pair<std::string, std::string>> fixtures;  // iri prefix -> local path
    std::string cache_dir;  // empty disables the disk cache
    int timeout_seconds = 15;
    std::vector<std::string> accept = {"text/n3", "text/turtle", "text/rdf+n3"};
};

class FetchError : public std::runtime_error {
public:
    enum class Kind { Offline, Scheme, Status, Timeout, Io, Media };
    FetchError(Kind kind, std::string iri, const std::string& message)
        : std::runtime_error(message + " <" + iri + ">"), kind_(kind), iri_(std::move(iri)) {}
    Kind kind() const { return kind_; }
    const std::string& iri() const { return iri_; }

private:
    Kind kind_;
    std::string iri_;
};

// Parses a fixture map file: one "iri-prefix TAB local-path" per line;
// blank lines and lines starting with '#' are skipped.
std::vector<std::pair<std::string, std::string>> load_fixture_map(const std::string& path);

class Resolver {
public:
    explicit Resolver(ResolverConfig cfg) : cfg_(std::move(cfg)) {}

    const ResolverConfig& config() const { return cfg_; }

    // Fetches the document behind an http(s) or file IRI. Fixture map first,
    // then file scheme, then disk cache, then the network when allowed.
    // Redirects are followed to depth 5. Results are memoized.
    Document dereference(const std::string& iri);

    // parse_document of the dereferenced body with the requested IRI as
    // base. Memoized so repeated calls agree blank-for-blank. Throws
    // FetchError on retrieval problems, ParseError on bad N3, and
    // FetchError{Media} for media types outside the N3 family.
    const Formula& semantics(const std::string& iri);

private:
    ResolverConfig cfg_;
    std::map<std::string, Document> doc_memo_;
    std::map<std::string, Formula> sem_memo_;
    std::mutex mu_;

    Document fetch(const std::string& iri);
};

}  // namespace n3
