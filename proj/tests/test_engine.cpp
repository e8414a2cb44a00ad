#include <doctest.h>

#include "n3/builtins.hpp"
#include "n3/engine.hpp"
#include "n3/parser.hpp"
#include "n3/term.hpp"
#include "n3/vocab.hpp"

#include <set>
#include <string>
#include <vector>

using namespace n3;

namespace {

constexpr const char* kBase = "http://example.org/doc";
const char* kPrefix = "@prefix : <http://example.org/ns#> .\n";

Formula parse(const std::string& text) { return parse_document(std::string(kPrefix) + text, kBase); }

Term ex(const std::string& local) { return Term::iri("http://example.org/ns#" + local); }

EvalContext pure_env() {
    EvalContext env;
    env.base = kBase;
    return env;
}

}  // namespace

TEST_CASE("match binds universals in the pattern to data terms") {
    Formula data = parse(":socrates a :Man . :plato a :Man . :fido a :Dog .");
    Formula pattern = parse("?X a :Man .");
    auto sols = match(pattern, data);
    REQUIRE(sols.size() == 2);
    std::set<std::string> found;
    for (const auto& b : sols) found.insert(b.at("X").text());
    CHECK(found == std::set<std::string>{"http://example.org/ns#plato",
                                         "http://example.org/ns#socrates"});
}

TEST_CASE("match enforces repeated variables consistently") {
    Formula data = parse(":a :knows :b . :b :knows :b .");
    auto sols = match(parse("?X :knows ?X ."), data);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].at("X") == ex("b"));
}

TEST_CASE("an empty pattern yields exactly one empty solution") {
    auto sols = match(Formula(), parse(":s :p :o ."));
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].empty());
}

TEST_CASE("seed bindings constrain the match") {
    Formula data = parse(":a :p 1 . :b :p 2 .");
    Bindings seed{{"X", ex("b")}};
    auto sols = match(parse("?X :p ?N ."), data, seed);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].at("N") == Term::integer(2));
}

TEST_CASE("pattern blanks match any term, consistently by name") {
    Formula data = parse(":joe :age 5 . :joe :height 5 .");
    CHECK(match(parse("_:x :age _:n . _:x :height _:n ."), data).size() == 1);
    Formula data2 = parse(":joe :age 5 . :joe :height 6 .");
    CHECK(match(parse("_:x :age _:n . _:x :height _:n ."), data2).empty());
}

TEST_CASE("a variable reaches inside quoted data when the quote shapes agree") {
    Formula data = parse(":j :says { :peter a :M } .");
    auto sols = match(parse(":j :says { ?X a :M } ."), data);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].at("X") == ex("peter"));
}

TEST_CASE("a quote-confined data blank cannot escape through a variable") {
    // The data blank lives only inside the quotation; binding an outside
    // variable to it would leak a local name out of its scope.
    Formula data = parse(":j :says { _:secret a :M } .");
    CHECK(match(parse(":j :says { ?X a :M } ."), data).empty());
    // A pattern-side blank inside the quote pairs with it instead.
    CHECK(match(parse(":j :says { _:any a :M } ."), data).size() == 1);
}

TEST_CASE("quoted matching pairs quantified names bijectively") {
    Formula data = parse(":j :says { _:a :p _:a } .");
    CHECK(match(parse(":j :says { _:x :p _:x } ."), data).size() == 1);
    CHECK(match(parse(":j :says { _:x :p _:y } ."), data).empty());
}

TEST_CASE("match treats builtin-named predicates as plain graph edges") {
    Formula data = parse("@prefix math: <http://www.w3.org/2000/10/swap/math#> .\n"
                         ":a math:greaterThan :b .");
    CHECK(match(parse("@prefix math: <http://www.w3.org/2000/10/swap/math#> .\n"
                      "?X math:greaterThan :b ."),
                data)
              .size() == 1);
}

TEST_CASE("includes is reflexive and accepts the empty formula") {
    Formula f = parse(":s :p :o . _:b :q 2 . { ?X a :C } => { ?X a :D } .");
    CHECK(includes(f, f));
    CHECK(includes(f, Formula()));
    CHECK(includes(Formula(), Formula()));
    CHECK_FALSE(includes(Formula(), parse(":s :p :o .")));
}

TEST_CASE("includes instantiates universals and introduces existentials") {
    Formula data = parse(":socrates a :Man .");
    CHECK(includes(data, parse("?X a :Man .")));
    CHECK(includes(data, parse("_:someone a :Man .")));
    CHECK_FALSE(includes(data, parse("?X a :Dog .")));
    Bindings witness;
    REQUIRE(includes(data, parse("?X a :Man ."), witness));
    CHECK(witness.at("X") == ex("socrates"));
}

TEST_CASE("includes requires every conjunct") {
    Formula data = parse(":a :p 1 . :b :q 2 .");
    CHECK(includes(data, parse(":a :p 1 .")));
    CHECK(includes(data, parse(":a :p 1 . :b :q 2 .")));
    CHECK_FALSE(includes(data, parse(":a :p 1 . :b :q 3 .")));
}

TEST_CASE("includes on quoted formulas is exact correspondence") {
    Formula data = parse(":j :says { :a :p :b . :c :q :d } .");
    CHECK(includes(data, parse(":j :says { :a :p :b . :c :q :d } .")));
    // Quotation is opaque: a sub-conjunction of the quote is a different term.
    CHECK_FALSE(includes(data, parse(":j :says { :a :p :b } .")));
}

TEST_CASE("not_includes is the exact complement") {
    Formula data = parse(":s :p :o .");
    std::vector<Formula> gs = {parse(":s :p :o ."), parse(":s :p :x ."),
                               parse("?V :p :o ."), Formula()};
    for (const auto& g : gs) {
        CHECK(includes(data, g) != not_includes(data, g));
    }
}

TEST_CASE("extract_rules takes only top-level quoted implications") {
    Formula f = parse(
        "{ ?X a :Man } => { ?X a :Mortal } .\n"
        ":j :says { { ?Y a :Dog } => { ?Y a :Animal } } .\n");
    auto rules = extract_rules(f);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].universals == std::set<std::string>{"X"});
    CHECK(rules[0].antecedent.size() == 1);
    CHECK(rules[0].consequent.size() == 1);
}

TEST_CASE("implications with variable sides are data, not rules") {
    Formula f = parse("@prefix log: <http://www.w3.org/2000/10/swap/log#> .\n"
                      "?S log:implies ?T . { :a :b :c } log:implies ?T .");
    CHECK(extract_rules(f).empty());
}

TEST_CASE("a consequent-only universal is a malformed rule") {
    Formula f = parse("{ ?X a :Man } => { ?X :likes ?Z } .");
    CHECK_THROWS_AS(extract_rules(f), RuleError);
}

TEST_CASE("blank nodes in the consequent assert existence") {
    Formula f = parse("{ ?X a :Man } => { ?X :hasFather [ a :Man ] } .");
    auto rules = extract_rules(f);
    REQUIRE(rules.size() == 1);
    bool has_blank = false;
    for (const auto& t : rules[0].consequent.triples())
        if (t.object.is_blank()) has_blank = true;
    CHECK(has_blank);
}

TEST_CASE("apply_rule fires once per distinct consequent instantiation") {
    Formula kb = parse(":socrates a :Man . { ?X a :Man } => { ?X :hasSoul [ a :Soul ] } .");
    auto rules = extract_rules(kb);
    REQUIRE(rules.size() == 1);
    FiringRecord fired;
    std::set<std::string> fresh = all_names(kb);
    EvalContext env = pure_env();
    auto first = apply_rule(rules[0], kb, fired, env, fresh);
    REQUIRE(first.size() == 1);
    CHECK(first[0].size() == 2);
    // Same kb, same record: the firing is remembered, no new blanks minted.
    auto second = apply_rule(rules[0], kb, fired, env, fresh);
    CHECK(second.empty());
}

TEST_CASE("conclusion computes the deductive closure") {
    Formula f = parse(":socrates a :Man . { ?X a :Man } => { ?X a :Mortal } .");
    Formula out = conclusion(f, pure_env());
    CHECK(includes(out, parse(":socrates a :Mortal .")));
    CHECK(includes(out, parse(":socrates a :Man .")));
    // Input triples, including the rule itself, are retained.
    for (const auto& t : f.triples()) CHECK(out.contains(t));
}

TEST_CASE("conclusion is idempotent") {
    Formula f = parse(
        ":a :p :b . :b :p :c .\n"
        "{ ?X :p ?Y . ?Y :p ?Z } => { ?X :p ?Z } .");
    EvalContext env = pure_env();
    Formula once = conclusion(f, env);
    Formula twice = conclusion(once, env);
    CHECK(isomorphic(once, twice));
}

TEST_CASE("derived rules fire in the same closure") {
    Formula f = parse(
        ":c a :Class .\n"
        "{ :c a :Class } => { { ?X a :c } => { ?X a :Instance } } .\n"
        ":i a :c .");
    Formula out = conclusion(f, pure_env());
    CHECK(includes(out, parse(":i a :Instance .")));
}

TEST_CASE("closure limits raise with the partial result attached") {
    Formula f = parse(":seed a :T . { ?X a :T } => { [ :parent ?X ] a :T } .");
    EvalContext env = pure_env();
    env.limits.max_iterations = 5;
    try {
        conclusion(f, env);
        FAIL_CHECK("expected ClosureError");
    } catch (const ClosureError& e) {
        CHECK(e.partial().size() > f.size());
        CHECK(std::string(e.what()).find("5") != std::string::npos);
    }
}

TEST_CASE("builtin comparisons gate rule firing") {
    Formula f = parse(
        "@prefix math: <http://www.w3.org/2000/10/swap/math#> .\n"
        ":p1 :pages 6 . :p2 :pages 9 .\n"
        "{ ?D :pages ?N . ?N math:notGreaterThan 8 } => { ?D a :Acceptable } .");
    Formula out = conclusion(f, pure_env());
    CHECK(includes(out, parse(":p1 a :Acceptable .")));
    CHECK_FALSE(includes(out, parse(":p2 a :Acceptable .")));
}

TEST_CASE("computing builtins bind fresh values during closure") {
    Formula f = parse(
        "@prefix crypto: <http://www.w3.org/2000/10/swap/crypto#> .\n"
        ":req :secret \"opensesame\" .\n"
        "{ ?R :secret ?S . ?S crypto:md5 ?H } => { ?R :digest ?H } .");
    Formula out = conclusion(f, pure_env());
    CHECK(includes(out, parse(":req :digest \"e6078b9b1aac915d11b9fd59791030bf\" .")));
}

TEST_CASE("scoped negation holds while the scope lacks the triple") {
    std::string rule =
        "@prefix log: <http://www.w3.org/2000/10/swap/log#> .\n"
        "{ :dir :holds ?G . ?G log:notIncludes { :judy a :Student } }\n"
        "  => { :judy a :Outsider } .\n";
    Formula absent = parse(std::string(rule) + ":dir :holds { :someone a :Student } .");
    CHECK(includes(conclusion(absent, pure_env()), parse(":judy a :Outsider .")));
    Formula present = parse(std::string(rule) + ":dir :holds { :judy a :Student } .");
    CHECK(not_includes(conclusion(present, pure_env()), parse(":judy a :Outsider .")));
}

TEST_CASE("enumerating builtins multiply rule firings") {
    Formula f = parse(
        "@prefix list: <http://www.w3.org/2000/10/swap/list#> .\n"
        ":doc :authors ( :alice :bob ) .\n"
        "{ :doc :authors ?L . ?A list:in ?L } => { ?A a :Author } .");
    Formula out = conclusion(f, pure_env());
    CHECK(includes(out, parse(":alice a :Author .")));
    CHECK(includes(out, parse(":bob a :Author .")));
}

TEST_CASE("unregistered names in builtin namespaces behave as ground facts") {
    Formula f = parse(
        "@prefix math: <http://www.w3.org/2000/10/swap/math#> .\n"
        ":a math:madeUpRelation :b .\n"
        "{ ?X math:madeUpRelation :b } => { ?X a :Found } .");
    Formula out = conclusion(f, pure_env());
    CHECK(includes(out, parse(":a a :Found .")));
}

TEST_CASE("filter returns instantiated consequents only") {
    Formula kb = parse(":socrates a :Man . :fido a :Dog .");
    Formula rules = parse("{ ?X a :Man } => { ?X a :Mortal } .");
    Formula out = filter(kb, rules, pure_env());
    Formula expected = parse(":socrates a :Mortal .");
    CHECK(isomorphic(out, expected));
}

TEST_CASE("filter consequents may carry fresh existence") {
    Formula kb = parse(":socrates a :Man .");
    Formula rules = parse("{ ?X a :Man } => { ?X :hasSoul [ a :Soul ] } .");
    Formula out = filter(kb, rules, pure_env());
    CHECK(out.size() == 2);
    CHECK(includes(out, parse(":socrates :hasSoul _:s . _:s a :Soul .")));
}

TEST_CASE("supports extends includes through rule application") {
    Formula f = parse(":socrates a :Man . { ?X a :Man } => { ?X a :Mortal } .");
    Formula goal = parse(":socrates a :Mortal .");
    EvalContext env = pure_env();
    CHECK_FALSE(includes(f, goal));
    CHECK(supports(f, goal, env));
    // Whatever is included is also supported.
    CHECK(supports(f, parse(":socrates a :Man ."), env));
}

TEST_CASE("conjoin keeps blank scopes apart before reasoning") {
    Formula a = parse("_:x :claims :one .");
    Formula b = parse("_:x :claims :two .");
    Formula joined = conjoin({a, b});
    CHECK(joined.size() == 2);
    std::set<std::string> subjects;
    for (const auto& t : joined.triples()) subjects.insert(t.subject.text());
    CHECK(subjects.size() == 2);
}

TEST_CASE("match enumeration order is deterministic") {
    Formula data = parse(":a :p 1 . :b :p 2 . :c :p 3 .");
    Formula pattern = parse("?X :p ?N .");
    auto s1 = match(pattern, data);
    auto s2 = match(pattern, data);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i] == s2[i]);
}

TEST_CASE("match_each stops when the callback declines") {
    Formula data = parse(":a :p 1 . :b :p 2 . :c :p 3 .");
    int seen = 0;
    match_each(parse("?X :p ?N ."), data, {}, [&](const Bindings&) {
        ++seen;
        return seen < 2;
    });
    CHECK(seen == 2);
}
