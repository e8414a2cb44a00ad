#include "n3/axioms.hpp"
#include "n3/builtins.hpp"
#include "n3/engine.hpp"
#include "n3/parser.hpp"
#include "n3/serializer.hpp"
#include "n3/vocab.hpp"
#include "n3/web.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace {

constexpr const char* version_string = "n3r 0.1.0";

enum ExitCode { ExitOk = 0, ExitUsage = 1, ExitParse = 2, ExitClosure = 3, ExitFetch = 4 };

bool looks_like_iri(const std::string& s) {
    return s.find("://", 1) != std::string::npos || s.rfind("urn:", 0) == 0;
}

std::string absolute_path(const std::string& path) {
    if (!path.empty() && path[0] == '/') return path;
    char buf[4096];
    if (!getcwd(buf, sizeof buf)) return path;
    return std::string(buf) + "/" + path;
}

std::string dirname_of(const std::string& path) {
    std::size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

struct LoadedDoc {
    n3::ParseResult parsed;
    std::string base;
};

LoadedDoc load_input(const std::string& input, n3::Resolver& resolver,
                     const std::string& forced_base) {
    std::string text, base, name;
    if (input == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin),
                    std::istreambuf_iterator<char>());
        base = forced_base.empty() ? "file:///dev/stdin" : forced_base;
        name = "<stdin>";
    } else if (const char* axiom = n3::axioms::source_text(input)) {
        text = axiom;
        base = input;
        name = input;
    } else {
        std::string iri =
            looks_like_iri(input) ? input : "file://" + absolute_path(input);
        n3::Document doc = resolver.dereference(iri);
        text = doc.body;
        base = forced_base.empty() ? doc.iri : forced_base;
        name = input;
    }
    LoadedDoc out;
    out.parsed = n3::parse_document_full(text, base, name);
    out.base = base;
    return out;
}

n3::Formula strip_to_data(const n3::Formula& f) {
    std::vector<n3::Triple> keep;
    for (const auto& t : f.triples()) {
        if (t.predicate.is_iri() && t.predicate.text() == n3::vocab::log_implies) continue;
        keep.push_back(t);
    }
    return n3::Formula(std::move(keep));
}

// The emit phase of filtering, usable on a partial closure after a limit hit.
n3::Formula filter_over(const n3::Formula& closure, const n3::Formula& rules,
                        const n3::EvalContext& env) {
    n3::FiringRecord fired;
    std::set<std::string> fresh = n3::all_names(closure);
    std::vector<n3::Triple> out;
    std::set<std::string> uni, exi;
    for (const auto& rule : n3::extract_rules(rules)) {
        for (const auto& inst : n3::apply_rule(rule, closure, fired, env, fresh)) {
            for (const auto& t : inst.triples()) out.push_back(t);
            for (const auto& n : inst.universals()) uni.insert(n);
            for (const auto& n : inst.existentials()) exi.insert(n);
        }
    }
    return n3::Formula(std::move(out), std::vector<std::string>(uni.begin(), uni.end()),
                       std::vector<std::string>(exi.begin(), exi.end()));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"N3 reasoner: parse, derive, filter, and serialize Notation3"};

    std::vector<std::string> inputs;
    std::string filter_doc, prefixes_file, fixtures_file, cache_dir, base_flag;
    bool think = false, data_only = false, flat = false, canonical = false;
    bool no_network = false, with_rdfs = false, with_lists = false, with_sameas = false;
    bool show_version = false, show_catalog = false;
    std::size_t max_steps = n3::EngineLimits{}.max_iterations;
    std::size_t max_triples = n3::EngineLimits{}.max_derived;

    app.add_option("inputs", inputs, "N3 documents: paths, IRIs, or - for stdin");
    app.add_flag("--think", think, "replace the knowledge base with its deductive closure");
    app.add_option("--filter", filter_doc, "output only consequents of the rules in DOC");
    app.add_flag("--data-only", data_only,
                 "drop implication triples and variable declarations from output");
    app.add_flag("--flat", flat, "one triple per line with absolute IRIs");
    app.add_flag("--canonical", canonical, "canonically labeled, deterministic output");
    app.add_option("--prefixes-file", prefixes_file,
                   "N3 document whose @prefix directives style the output");
    app.add_flag("--no-network", no_network, "never touch the network");
    app.add_option("--fixtures", fixtures_file,
                   "fixture map file: iri-prefix TAB local-path per line");
    app.add_option("--cache-dir", cache_dir, "directory for the document cache");
    app.add_option("--max-steps", max_steps, "fixpoint iteration limit");
    app.add_option("--max-triples", max_triples, "derived triple limit");
    app.add_flag("--with-rdfs", with_rdfs, "conjoin the bundled schema rules");
    app.add_flag("--with-lists", with_lists, "conjoin the bundled list axioms");
    app.add_flag("--with-sameas", with_sameas, "conjoin the bundled equality rules");
    app.add_option("--base", base_flag, "base IRI for stdin and relative output");
    app.add_flag("--version", show_version, "print version and exit");
    app.add_flag("--catalog", show_catalog, "print builtin and axiom catalog and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ExitUsage;
    }

    if (show_version) {
        std::cout << version_string << "\n";
        return ExitOk;
    }
    if (show_catalog) {
        for (const auto& entry : n3::builtin_catalog())
            std::cout << entry.iri << "\t" << entry.modes << "\t" << entry.shape << "\n";
        for (const auto& iri : n3::axioms::bundled_iris()) std::cout << iri << "\taxioms\n";
        return ExitOk;
    }
    if (inputs.empty()) {
        std::cerr << "n3r: no input documents (use - for stdin)\n";
        return ExitUsage;
    }
    if (max_steps == 0 || max_triples == 0) {
        std::cerr << "n3r: limits must be positive\n";
        return ExitUsage;
    }

    n3::ResolverConfig rcfg;
    rcfg.network_allowed = !no_network;
    rcfg.cache_dir = cache_dir;
    std::vector<std::string> diagnostics;
    int status = ExitOk;

    try {
        if (!fixtures_file.empty()) {
            auto entries = n3::load_fixture_map(fixtures_file);
            std::string dir = dirname_of(absolute_path(fixtures_file));
            for (auto& [prefix, path] : entries) {
                if (!path.empty() && path[0] != '/') path = dir + "/" + path;
                rcfg.fixtures.push_back({prefix, path});
            }
        }
        n3::Resolver resolver(rcfg);

        std::vector<n3::Formula> parts;
        std::vector<std::pair<std::string, std::string>> prefixes;
        std::set<std::string> prefix_seen;
        std::string first_base;
        for (const auto& input : inputs) {
            LoadedDoc doc = load_input(input, resolver, base_flag);
            if (first_base.empty()) first_base = doc.base;
            parts.push_back(doc.parsed.formula);
            for (const auto& [p, ns] : doc.parsed.prefixes)
                if (prefix_seen.insert(p).second) prefixes.push_back({p, ns});
        }
        if (with_rdfs) parts.push_back(n3::axioms::rdfs());
        if (with_lists) parts.push_back(n3::axioms::lists());
        if (with_sameas) parts.push_back(n3::axioms::sameas());
        n3::Formula kb = n3::conjoin(parts);

        if (!prefixes_file.empty()) {
            n3::Document doc =
                resolver.dereference("file://" + absolute_path(prefixes_file));
            auto styled = n3::parse_document_full(doc.body, doc.iri, prefixes_file);
            prefixes.clear();
            for (const auto& [p, ns] : styled.prefixes) prefixes.push_back({p, ns});
        }

        n3::EvalContext env;
        env.resolver = &resolver;
        env.base = base_flag.empty() ? first_base : base_flag;
        env.limits.max_iterations = max_steps;
        env.limits.max_derived = max_triples;
        env.argv = inputs;
        env.diagnostics = &diagnostics;

        n3::Formula rules;
        bool filtering = !filter_doc.empty();
        if (filtering) rules = load_input(filter_doc, resolver, "").parsed.formula;

        n3::Formula result;
        try {
            if (think) kb = n3::conclusion(kb, env);
            result = filtering ? n3::filter(kb, rules, env) : kb;
        } catch (const n3::ClosureError& e) {
            std::cerr << "n3r: " << e.what() << "\n";
            result = filtering ? filter_over(e.partial(), rules, env) : e.partial();
            status = ExitClosure;
        }

        if (data_only) result = strip_to_data(result);

        std::string text;
        if (canonical) {
            text = n3::canonical_text(result, prefixes);
        } else {
            n3::SerializerConfig cfg;
            cfg.prefixes = prefixes;
            cfg.base = base_flag.empty() ? first_base : base_flag;
            cfg.flat = flat;
            text = n3::serialize(result, cfg);
        }
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } catch (const n3::ParseError& e) {
        std::cerr << "n3r: " << e.what() << "\n";
        return ExitParse;
    } catch (const n3::RuleError& e) {
        std::cerr << "n3r: " << e.what() << "\n";
        return ExitParse;
    } catch (const n3::FetchError& e) {
        std::cerr << "n3r: " << e.what() << "\n";
        return ExitFetch;
    }

    for (const auto& d : diagnostics) std::cerr << "n3r: note: " << d << "\n";
    return status;
}
