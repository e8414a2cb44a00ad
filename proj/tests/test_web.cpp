#include <doctest.h>

#include "n3/engine.hpp"
#include "n3/parser.hpp"
#include "n3/term.hpp"
#include "n3/web.hpp"

#include <filesystem>
#include <fstream>
#include <string>

using namespace n3;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test case, removed on destruction.
struct Scratch {
    fs::path dir;

    Scratch() {
        dir = fs::temp_directory_path() /
              ("n3-web-test-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }

    std::string put(const std::string& name, const std::string& body) {
        fs::path p = dir / name;
        fs::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary);
        out << body;
        return p.string();
    }
};

Resolver offline_resolver(ResolverConfig cfg = {}) {
    cfg.network_allowed = false;
    return Resolver(std::move(cfg));
}

}  // namespace

TEST_CASE("fixture map files skip comments, blanks, and carriage returns") {
    Scratch s;
    std::string path = s.put("map.tsv",
                             "# comment line\n"
                             "\n"
                             "http://a.example/\tlocal/a.n3\r\n"
                             "http://b.example/doc\tb.n3\n"
                             "malformed line without tab\n");
    auto map = load_fixture_map(path);
    REQUIRE(map.size() == 2);
    CHECK(map[0].first == "http://a.example/");
    CHECK(map[0].second == "local/a.n3");
    CHECK(map[1].first == "http://b.example/doc");
    CHECK(map[1].second == "b.n3");

    CHECK_THROWS_AS(load_fixture_map((s.dir / "missing.tsv").string()), FetchError);
}

TEST_CASE("fixtures serve by longest prefix with suffix appended") {
    Scratch s;
    s.put("wide/other.n3", "<http://e/other> <http://e/p> <http://e/o> .");
    std::string narrow = s.put("narrow.n3", "<http://e/narrow> <http://e/p> <http://e/o> .");

    ResolverConfig cfg;
    cfg.fixtures = {{"http://people.example/", (s.dir / "wide/").string()},
                    {"http://people.example/judy-foaf.rdf", narrow}};
    Resolver r = offline_resolver(cfg);

    // Exact entry is longer than the directory prefix, so it wins.
    Document exact = r.dereference("http://people.example/judy-foaf.rdf");
    CHECK(exact.body.find("narrow") != std::string::npos);

    // Other IRIs under the prefix map into the directory.
    Document viaDir = r.dereference("http://people.example/other.n3");
    CHECK(viaDir.body.find("other") != std::string::npos);
}

TEST_CASE("fixture suffixes map into a directory tree") {
    Scratch s;
    s.put("site/inner/page.n3", "<http://e/a> <http://e/b> <http://e/c> .");
    ResolverConfig cfg;
    cfg.fixtures = {{"http://site.example/", (s.dir / "site/").string()}};
    Resolver r = offline_resolver(cfg);
    Document doc = r.dereference("http://site.example/inner/page.n3");
    CHECK(doc.body.find("<http://e/a>") != std::string::npos);
    CHECK(doc.final_iri == "http://site.example/inner/page.n3");
    CHECK(doc.media_type == "text/n3");
}

TEST_CASE("file IRIs read from disk") {
    Scratch s;
    std::string path = s.put("doc.n3", "<http://e/s> <http://e/p> <http://e/o> .");
    Resolver r = offline_resolver();
    Document doc = r.dereference("file://" + path);
    CHECK(doc.body == "<http://e/s> <http://e/p> <http://e/o> .");
    CHECK(doc.media_type == "text/n3");

    try {
        r.dereference("file://" + (s.dir / "absent.n3").string());
        FAIL_CHECK("expected FetchError");
    } catch (const FetchError& e) {
        CHECK(e.kind() == FetchError::Kind::Io);
    }
}

TEST_CASE("turtle file extensions report the turtle media type") {
    Scratch s;
    std::string path = s.put("doc.ttl", "<http://e/s> <http://e/p> <http://e/o> .");
    Resolver r = offline_resolver();
    CHECK(r.dereference("file://" + path).media_type == "text/turtle");
    // Still inside the N3 family, so semantics parses it.
    CHECK(r.semantics("file://" + path).size() == 1);
}

TEST_CASE("network IRIs fail offline with the Offline kind") {
    Resolver r = offline_resolver();
    try {
        r.dereference("http://offline.example/doc");
        FAIL_CHECK("expected FetchError");
    } catch (const FetchError& e) {
        CHECK(e.kind() == FetchError::Kind::Offline);
        CHECK(e.iri() == "http://offline.example/doc");
    }
}

TEST_CASE("unsupported schemes are rejected") {
    Resolver r = offline_resolver();
    try {
        r.dereference("gopher://old.example/");
        FAIL_CHECK("expected FetchError");
    } catch (const FetchError& e) {
        CHECK(e.kind() == FetchError::Kind::Scheme);
    }
}

TEST_CASE("fragments are stripped before retrieval") {
    Scratch s;
    std::string path = s.put("doc.n3", "<http://e/s> <http://e/p> <http://e/o> .");
    ResolverConfig cfg;
    cfg.fixtures = {{"http://frag.example/doc", path}};
    Resolver r = offline_resolver(cfg);
    Document plain = r.dereference("http://frag.example/doc");
    Document fragged = r.dereference("http://frag.example/doc#part");
    CHECK(plain.body == fragged.body);
    CHECK(fragged.iri == "http://frag.example/doc");
    CHECK(isomorphic(r.semantics("http://frag.example/doc#part"),
                     r.semantics("http://frag.example/doc")));
}

TEST_CASE("semantics parses against the request IRI and memoizes") {
    Scratch s;
    std::string path = s.put("doc.n3", "<> <http://e/p> [ <http://e/q> 1 ] .");
    ResolverConfig cfg;
    cfg.fixtures = {{"http://memo.example/doc", path}};
    Resolver r = offline_resolver(cfg);

    const Formula& first = r.semantics("http://memo.example/doc");
    const Formula& second = r.semantics("http://memo.example/doc");
    CHECK(&first == &second);  // same object: blank labels stay stable
    CHECK(first.contains(Triple{Term::iri("http://memo.example/doc"),
                                Term::iri("http://e/p"),
                                first.triples()[0].object}));

    // A fresh resolver yields the same meaning.
    Resolver r2 = offline_resolver(cfg);
    CHECK(isomorphic(r2.semantics("http://memo.example/doc"), first));
}

TEST_CASE("dereference is memoized per resolver") {
    Scratch s;
    std::string path = s.put("doc.n3", "<http://e/s> <http://e/p> 1 .");
    ResolverConfig cfg;
    cfg.fixtures = {{"http://memo.example/doc", path}};
    Resolver r = offline_resolver(cfg);
    Document d1 = r.dereference("http://memo.example/doc");
    // Changing the underlying file does not change what this resolver saw.
    s.put("doc.n3", "<http://e/s> <http://e/p> 2 .");
    Document d2 = r.dereference("http://memo.example/doc");
    CHECK(d1.body == d2.body);
}

TEST_CASE("a parse failure surfaces as ParseError, not FetchError") {
    Scratch s;
    std::string path = s.put("bad.n3", "<http://e/s> <http://e/p .");
    ResolverConfig cfg;
    cfg.fixtures = {{"http://bad.example/doc", path}};
    Resolver r = offline_resolver(cfg);
    CHECK_THROWS_AS(r.semantics("http://bad.example/doc"), ParseError);
    // The body itself is still retrievable.
    CHECK(r.dereference("http://bad.example/doc").body.find("<http://e/p") !=
          std::string::npos);
}

TEST_CASE("the disk cache serves entries without the network") {
    Scratch s;
    // Key layout: sha1 of the IRI names a .meta (final IRI, media type,
    // retrieval instant) and a .body file.
    const std::string key = "92f97b9cf42b8a282c08e5ba858c6248689f6f20";
    s.put("cache/" + key + ".meta",
          "http://cache.example/final\ntext/n3\n2026-01-01T00:00:00Z\n");
    s.put("cache/" + key + ".body", "<http://e/s> <http://e/p> <http://e/o> .");
    ResolverConfig cfg;
    cfg.cache_dir = (s.dir / "cache").string();
    Resolver r = offline_resolver(cfg);
    Document doc = r.dereference("http://cache.example/doc");
    CHECK(doc.final_iri == "http://cache.example/final");
    CHECK(doc.media_type == "text/n3");
    CHECK(doc.retrieved_at == "2026-01-01T00:00:00Z");
    CHECK(doc.body == "<http://e/s> <http://e/p> <http://e/o> .");
    CHECK(r.semantics("http://cache.example/doc").size() == 1);
}

TEST_CASE("semantics refuses media types outside the N3 family") {
    Scratch s;
    const std::string key = "92f97b9cf42b8a282c08e5ba858c6248689f6f20";
    s.put("cache/" + key + ".meta",
          "http://cache.example/doc\ntext/html\n2026-01-01T00:00:00Z\n");
    s.put("cache/" + key + ".body", "<html></html>");
    ResolverConfig cfg;
    cfg.cache_dir = (s.dir / "cache").string();
    Resolver r = offline_resolver(cfg);
    try {
        r.semantics("http://cache.example/doc");
        FAIL_CHECK("expected FetchError");
    } catch (const FetchError& e) {
        CHECK(e.kind() == FetchError::Kind::Media);
    }
    // dereference still hands the raw bytes over.
    CHECK(r.dereference("http://cache.example/doc").body == "<html></html>");
}
