#include <doctest.h>

#include "property_suites.hpp"

#include "n3/builtins.hpp"
#include "n3/engine.hpp"
#include "n3/parser.hpp"
#include "n3/serializer.hpp"
#include "n3/term.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace n3;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 0x5eed2026;
constexpr int kCases = 200;

void require_suite(const proptest::SuiteResult& r) {
    CAPTURE(r.name);
    CAPTURE(r.first_failure);
    CHECK(r.cases >= kCases);
    CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("serializer round trips preserve isomorphism") {
    require_suite(proptest::roundtrip_suite(kSeed, kCases));
}

TEST_CASE("includes is reflexive and monotone in its first argument") {
    require_suite(proptest::includes_reflexive_monotone_suite(kSeed, kCases));
}

TEST_CASE("not_includes complements includes") {
    require_suite(proptest::not_includes_complement_suite(kSeed, kCases));
}

TEST_CASE("conclusion is idempotent and order independent") {
    require_suite(proptest::conclusion_suite(kSeed, kCases));
}

TEST_CASE("conjoin is commutative and associative up to isomorphism") {
    require_suite(proptest::conjoin_algebra_suite(kSeed, kCases));
}

TEST_CASE("includes agrees with brute-force simple entailment") {
    require_suite(proptest::simple_entailment_suite(kSeed, kCases));
}

TEST_CASE("the bundle runner covers every suite") {
    auto all = proptest::all_property_suites(kSeed + 1, 50);
    CHECK(all.size() == 6);
    std::set<std::string> names;
    for (const auto& r : all) {
        CAPTURE(r.name);
        CAPTURE(r.first_failure);
        CHECK(r.ok());
        names.insert(r.name);
    }
    CHECK(names.size() == 6);
}

// ---- additional randomized invariants over the same generators -------------

namespace {

// A small standalone generator for the extra invariants below; mirrors the
// term pools of the shared suites without exporting their internals.
struct MiniGen {
    std::mt19937_64 rng;
    explicit MiniGen(std::uint64_t seed) : rng(seed) {}

    int pick(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }
    bool chance(int percent) { return pick(100) < percent; }

    Term node(int depth = 0) {
        int roll = pick(100);
        if (roll < 40) return Term::iri("http://example.org/gen#i" + std::to_string(pick(5)));
        if (roll < 55) return Term::literal("lit" + std::to_string(pick(4)));
        if (roll < 65) return Term::blank("_:b" + std::to_string(pick(3)));
        if (roll < 75) return Term::univar("u" + std::to_string(pick(3)));
        if (roll < 85 && depth < 2) {
            std::vector<Term> items;
            int n = pick(3);
            for (int i = 0; i < n; ++i) items.push_back(node(depth + 1));
            return Term::list(std::move(items));
        }
        if (depth < 2) return Term::quoted(formula(depth + 1));
        return Term::integer(pick(10));
    }

    Term predicate() { return Term::iri("http://example.org/gen#p" + std::to_string(pick(4))); }

    Formula formula(int depth = 0) {
        std::vector<Triple> triples;
        int n = 1 + pick(3);
        for (int i = 0; i < n; ++i) triples.push_back({node(depth), predicate(), node(depth)});
        return Formula(std::move(triples));
    }

    // Declares every variable used anywhere in the tree at the root.
    Formula document() {
        Formula body = formula();
        std::set<std::string> unis, exis;
        collect(body, unis, exis);
        return Formula(body.triples(), {unis.begin(), unis.end()}, {exis.begin(), exis.end()});
    }

    static void collect_term(const Term& t, std::set<std::string>& unis,
                             std::set<std::string>& exis) {
        switch (t.kind()) {
            case TermKind::UniVar:
                unis.insert(t.text());
                break;
            case TermKind::ExiVar:
                exis.insert(t.text());
                break;
            case TermKind::List:
                for (const auto& i : t.items()) collect_term(i, unis, exis);
                break;
            case TermKind::Quoted:
                collect(t.quoted_formula(), unis, exis);
                break;
            default:
                break;
        }
    }

    static void collect(const Formula& f, std::set<std::string>& unis,
                        std::set<std::string>& exis) {
        for (const auto& t : f.triples()) {
            collect_term(t.subject, unis, exis);
            collect_term(t.predicate, unis, exis);
            collect_term(t.object, unis, exis);
        }
    }
};

}  // namespace

TEST_CASE("isomorphism is an equivalence relation") {
    MiniGen g(kSeed ^ 0xA);
    for (int i = 0; i < kCases; ++i) {
        Formula a = g.document();
        Formula b = g.document();
        Formula c = g.document();
        CHECK(isomorphic(a, a));
        CHECK(isomorphic(a, b) == isomorphic(b, a));
        if (isomorphic(a, b) && isomorphic(b, c)) CHECK(isomorphic(a, c));
        std::set<std::string> reserved = all_names(a);
        CHECK(isomorphic(a, rename_apart(a, reserved)));
    }
}

TEST_CASE("canonical text depends only on the isomorphism class") {
    MiniGen g(kSeed ^ 0xB);
    for (int i = 0; i < kCases; ++i) {
        Formula a = g.document();
        std::set<std::string> reserved = all_names(a);
        Formula b = rename_apart(a, reserved);
        CHECK(canonical_text(a) == canonical_text(b));
        Formula c = g.document();
        CHECK((canonical_text(a) == canonical_text(c)) == isomorphic(a, c));
    }
}

TEST_CASE("substitution composes over disjoint domains") {
    MiniGen g(kSeed ^ 0xC);
    for (int i = 0; i < kCases; ++i) {
        Formula f = g.document();
        Bindings first{{"u0", Term::iri("http://example.org/gen#v0")}};
        Bindings second{{"u1", Term::literal("replacement")}};
        Bindings both = first;
        both.insert(second.begin(), second.end());
        Formula stepwise = substitute_variables(substitute_variables(f, first), second);
        Formula atonce = substitute_variables(f, both);
        CHECK(isomorphic(stepwise, atonce));
    }
}

TEST_CASE("rewriting equals leaves quotations untouched") {
    MiniGen g(kSeed ^ 0xD);
    Term from = Term::iri("http://example.org/gen#i0");
    Term to = Term::iri("http://example.org/gen#renamed");
    for (int i = 0; i < kCases; ++i) {
        Formula f = g.document();
        Formula r = rewrite_equals(f, from, to);
        for (std::size_t t = 0; t < f.size(); ++t) {
            const Triple& before = f.triples()[t];
            // Quoted terms must appear unchanged somewhere in the rewrite.
            auto check_opaque = [&](const Term& term) {
                if (!term.is_quoted()) return;
                bool found = false;
                for (const auto& after : r.triples())
                    if (after.subject == term || after.predicate == term ||
                        after.object == term)
                        found = true;
                CHECK(found);
            };
            check_opaque(before.subject);
            check_opaque(before.object);
        }
        // Top-level occurrences are all gone.
        for (const auto& t : r.triples()) {
            CHECK(t.subject != from);
            CHECK(t.predicate != from);
            CHECK(t.object != from);
        }
    }
}

TEST_CASE("closure grows monotonically and supports follows includes") {
    std::mt19937_64 rng(kSeed ^ 0xE);
    EvalContext env;
    for (int i = 0; i < kCases; ++i) {
        std::ostringstream doc;
        doc << "@prefix : <http://example.org/gen#> .\n";
        int facts = 1 + static_cast<int>(rng() % 4);
        for (int f = 0; f < facts; ++f)
            doc << ":i" << rng() % 4 << " :p" << rng() % 3 << " :i" << rng() % 4 << " .\n";
        int rules = 1 + static_cast<int>(rng() % 2);
        for (int r = 0; r < rules; ++r)
            doc << "{ ?X :p" << rng() % 3 << " ?Y } => { ?Y :q" << rng() % 2 << " ?X } .\n";
        Formula f = parse_document(doc.str(), "http://example.org/gen");
        Formula closed = conclusion(f, env);
        CHECK(includes(closed, f));
        for (const auto& t : f.triples()) CHECK(closed.contains(t));
        // Anything included is supported without further work.
        Formula sample({f.triples()[0]});
        CHECK(includes(f, sample));
        CHECK(supports(f, sample, env));
    }
}

TEST_CASE("negation as failure is stable for a fixed scope") {
    EvalContext env;
    std::mt19937_64 rng(kSeed ^ 0xF);
    for (int i = 0; i < 50; ++i) {
        bool present = rng() % 2 == 0;
        std::ostringstream doc;
        doc << "@prefix : <http://example.org/gen#> .\n"
            << "@prefix log: <http://www.w3.org/2000/10/swap/log#> .\n"
            << ":scope :holds { :a :p :b } .\n";
        if (present) doc << ":extra :is { :x :q :y } .\n";
        doc << "{ :scope :holds ?G . ?G log:notIncludes { :missing :p :b } } "
               "=> { :scope a :Gap } .\n";
        Formula f = parse_document(doc.str(), "http://example.org/gen");
        Formula closed = conclusion(f, env);
        // The negation consults the quoted scope only, so unrelated additions
        // never flip the outcome.
        CHECK(includes(closed,
                       parse_document("@prefix : <http://example.org/gen#> .\n:scope a :Gap .",
                                      "http://example.org/gen")));
    }
}

TEST_CASE("every shipped example document round trips") {
    fs::path corpus = fs::path(N3_FIXTURE_DIR) / "corpus";
    REQUIRE(fs::exists(corpus));
    int count = 0;
    for (const auto& entry : fs::directory_iterator(corpus)) {
        if (entry.path().extension() != ".n3") continue;
        ++count;
        std::ifstream in(entry.path());
        std::stringstream ss;
        ss << in.rdbuf();
        std::string base = "file://" + entry.path().string();
        CAPTURE(entry.path().filename().string());
        Formula f = parse_document(ss.str(), base, entry.path().filename().string());
        SerializerConfig pretty;
        pretty.prefixes.emplace_back("", "http://example.org/ns#");
        CHECK(isomorphic(f, parse_document(serialize(f, pretty), base)));
        SerializerConfig flat;
        flat.flat = true;
        CHECK(isomorphic(f, parse_document(serialize(f, flat), base)));
        CHECK(isomorphic(f, parse_document(canonical_text(f), base)));
    }
    CHECK(count >= 30);
}
