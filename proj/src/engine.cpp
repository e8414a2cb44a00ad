#include "n3/engine.hpp"
#include "n3/builtins.hpp"
#include "n3/vocab.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace n3 {

namespace {

bool is_var_kind(const Term& t) {
    return t.kind() == TermKind::UniVar || t.kind() == TermKind::ExiVar ||
           t.kind() == TermKind::Blank;
}

void collect_term_names(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
        case TermKind::UniVar:
        case TermKind::ExiVar:
        case TermKind::Blank:
            out.insert(t.text());
            break;
        case TermKind::List:
            for (const auto& item : t.items()) collect_term_names(item, out);
            break;
        case TermKind::Quoted: {
            const Formula& f = t.quoted_formula();
            for (const auto& n : f.universals()) out.insert(n);
            for (const auto& n : f.existentials()) out.insert(n);
            for (const auto& tr : f.triples()) {
                collect_term_names(tr.subject, out);
                collect_term_names(tr.predicate, out);
                collect_term_names(tr.object, out);
            }
            break;
        }
        default:
            break;
    }
}

void count_blank_occurrences_term(const Term& t, std::map<std::string, int>& m) {
    switch (t.kind()) {
        case TermKind::Blank:
            ++m[t.text()];
            break;
        case TermKind::List:
            for (const auto& item : t.items()) count_blank_occurrences_term(item, m);
            break;
        case TermKind::Quoted:
            for (const auto& tr : t.quoted_formula().triples()) {
                count_blank_occurrences_term(tr.subject, m);
                count_blank_occurrences_term(tr.predicate, m);
                count_blank_occurrences_term(tr.object, m);
            }
            break;
        default:
            break;
    }
}

void count_blank_occurrences(const Formula& f, std::map<std::string, int>& m) {
    for (const auto& tr : f.triples()) {
        count_blank_occurrences_term(tr.subject, m);
        count_blank_occurrences_term(tr.predicate, m);
        count_blank_occurrences_term(tr.object, m);
    }
}

std::string encode_bindings(const Bindings& b) {
    std::string out;
    for (const auto& [name, value] : b) {
        out += std::to_string(name.size());
        out += ':';
        out += name;
        out += '=';
        out += term_key(value);
        out += ';';
    }
    return out;
}

// Backtracking matcher. Pattern universals bind data terms; pattern blanks
// and existentials bind like variables but may not capture names quantified
// inside a quoted data term. Quoted terms match by exact correspondence:
// equal triple counts, a triple bijection, and a bijection between the
// quantified names local to each side.
class Matcher {
public:
    Matcher(const Formula& pattern, const Formula& data, const Formula* count_source)
        : pattern_(pattern), data_(data) {
        count_blank_occurrences(count_source ? *count_source : pattern, pcount_);
        count_blank_occurrences(data, dcount_);
    }

    void run(const Bindings& seed, const std::function<bool(const Bindings&)>& emit) {
        b_ = seed;
        emit_ = &emit;
        solve_top(0);
    }

private:
    const Formula& pattern_;
    const Formula& data_;
    std::map<std::string, int> pcount_, dcount_;
    Bindings b_;
    std::map<std::string, std::string> p2d_, d2p_;
    std::set<std::string> plocal_, dlocal_;
    const std::function<bool(const Bindings&)>* emit_ = nullptr;

    bool mentions_data_local(const Term& t) const {
        if (dlocal_.empty()) return false;
        std::set<std::string> names;
        collect_term_names(t, names);
        for (const auto& n : names)
            if (dlocal_.count(n)) return true;
        return false;
    }

    // All match functions return false only to abort the whole search; a
    // plain mismatch returns true so the caller tries other alternatives.
    bool solve_top(std::size_t i) {
        if (i == pattern_.triples().size()) return (*emit_)(b_);
        const Triple& pt = pattern_.triples()[i];
        for (const auto& dt : data_.triples()) {
            bool r = match_term(pt.subject, dt.subject, [&] {
                return match_term(pt.predicate, dt.predicate, [&] {
                    return match_term(pt.object, dt.object, [&] { return solve_top(i + 1); });
                });
            });
            if (!r) return false;
        }
        return true;
    }

    bool with_binding(const std::string& name, const Term& value,
                      const std::function<bool()>& k) {
        auto it = b_.find(name);
        if (it != b_.end()) return it->second == value ? k() : true;
        if (mentions_data_local(value)) return true;
        b_.emplace(name, value);
        bool r = k();
        b_.erase(name);
        return r;
    }

    bool with_pair(const std::string& pname, const std::string& dname,
                   const std::function<bool()>& k) {
        auto it = p2d_.find(pname);
        if (it != p2d_.end()) return it->second == dname ? k() : true;
        if (d2p_.count(dname)) return true;
        p2d_[pname] = dname;
        d2p_[dname] = pname;
        bool r = k();
        p2d_.erase(pname);
        d2p_.erase(dname);
        return r;
    }

    bool match_term(const Term& p, const Term& d, const std::function<bool()>& k) {
        switch (p.kind()) {
            case TermKind::UniVar:
            case TermKind::ExiVar:
            case TermKind::Blank: {
                const std::string& name = p.text();
                if (plocal_.count(name)) {
                    if (!is_var_kind(d) || !dlocal_.count(d.text())) return true;
                    bool puni = p.kind() == TermKind::UniVar;
                    bool duni = d.kind() == TermKind::UniVar;
                    if (puni != duni) return true;
                    return with_pair(name, d.text(), k);
                }
                return with_binding(name, d, k);
            }
            case TermKind::Iri:
            case TermKind::Literal:
                return p == d ? k() : true;
            case TermKind::List: {
                if (!d.is_list() || p.items().size() != d.items().size()) return true;
                return match_items(p.items(), d.items(), 0, k);
            }
            case TermKind::Quoted:
                if (!d.is_quoted()) return true;
                return match_quoted(p.quoted_formula(), d.quoted_formula(), k);
        }
        return true;
    }

    bool match_items(const std::vector<Term>& ps, const std::vector<Term>& ds,
                     std::size_t i, const std::function<bool()>& k) {
        if (i == ps.size()) return k();
        return match_term(ps[i], ds[i], [&] { return match_items(ps, ds, i + 1, k); });
    }

    bool match_quoted(const Formula& pf, const Formula& df, const std::function<bool()>& k) {
        if (pf.triples().size() != df.triples().size()) return true;

        std::vector<std::string> padded, dadded;
        auto enter = [](std::set<std::string>& scope, const std::string& name,
                        std::vector<std::string>& added) {
            if (scope.insert(name).second) added.push_back(name);
        };
        for (const auto& n : pf.universals()) enter(plocal_, n, padded);
        for (const auto& n : pf.existentials()) enter(plocal_, n, padded);
        for (const auto& n : df.universals()) enter(dlocal_, n, dadded);
        for (const auto& n : df.existentials()) enter(dlocal_, n, dadded);
        std::map<std::string, int> pin, din;
        count_blank_occurrences(pf, pin);
        count_blank_occurrences(df, din);
        for (const auto& [name, cnt] : pin) {
            auto it = pcount_.find(name);
            if (it != pcount_.end() && cnt == it->second) enter(plocal_, name, padded);
        }
        for (const auto& [name, cnt] : din) {
            auto it = dcount_.find(name);
            if (it != dcount_.end() && cnt == it->second) enter(dlocal_, name, dadded);
        }

        std::vector<bool> used(df.triples().size(), false);
        std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
            if (i == pf.triples().size()) return k();
            const Triple& pt = pf.triples()[i];
            for (std::size_t j = 0; j < df.triples().size(); ++j) {
                if (used[j]) continue;
                const Triple& dt = df.triples()[j];
                used[j] = true;
                bool r = match_term(pt.subject, dt.subject, [&] {
                    return match_term(pt.predicate, dt.predicate, [&] {
                        return match_term(pt.object, dt.object,
                                          [&] { return assign(i + 1); });
                    });
                });
                used[j] = false;
                if (!r) return false;
            }
            return true;
        };
        bool r = assign(0);

        for (const auto& n : padded) plocal_.erase(n);
        for (const auto& n : dadded) dlocal_.erase(n);
        return r;
    }
};

}  // namespace

void match_each(const Formula& pattern, const Formula& data, const Bindings& seed,
                const std::function<bool(const Bindings&)>& on_match) {
    Matcher m(pattern, data, nullptr);
    m.run(seed, on_match);
}

std::vector<Bindings> match(const Formula& pattern, const Formula& data,
                            const Bindings& seed) {
    std::vector<Bindings> out;
    std::set<std::string> seen;
    match_each(pattern, data, seed, [&](const Bindings& b) {
        if (seen.insert(encode_bindings(b)).second) out.push_back(b);
        return true;
    });
    std::sort(out.begin(), out.end(), [](const Bindings& x, const Bindings& y) {
        return encode_bindings(x) < encode_bindings(y);
    });
    return out;
}

bool includes(const Formula& f, const Formula& g, Bindings& witness) {
    bool found = false;
    match_each(g, f, {}, [&](const Bindings& b) {
        witness = b;
        found = true;
        return false;
    });
    return found;
}

bool includes(const Formula& f, const Formula& g) {
    Bindings w;
    return includes(f, g, w);
}

bool not_includes(const Formula& f, const Formula& g) { return !includes(f, g); }

std::vector<Rule> extract_rules(const Formula& f) {
    std::vector<Rule> rules;
    for (const auto& t : f.triples()) {
        if (!t.predicate.is_iri() || t.predicate.text() != vocab::log_implies) continue;
        if (!t.subject.is_quoted() || !t.object.is_quoted()) continue;
        Rule r;
        r.antecedent = t.subject.quoted_formula();
        r.consequent = t.object.quoted_formula();
        for (const auto& v : f.universals())
            if (mentions_name(r.antecedent, v) || mentions_name(r.consequent, v))
                r.universals.insert(v);
        r.id = term_key(t.subject) + "=>" + term_key(t.object);
        for (const auto& v : r.universals) {
            if (mentions_name(r.consequent, v) && !r.consequent.declares_universal(v) &&
                !mentions_name(r.antecedent, v))
                throw RuleError("rule consequent uses universal ?" + v +
                                " that the antecedent cannot bind");
        }
        rules.push_back(std::move(r));
    }
    return rules;
}

namespace {

std::string firing_key(const Rule& rule, const Bindings& b) {
    std::string key = rule.id;
    key += '|';
    for (const auto& [name, value] : b) {
        if (!mentions_name(rule.consequent, name)) continue;
        key += std::to_string(name.size());
        key += ':';
        key += name;
        key += '=';
        key += term_key(value);
        key += ';';
    }
    return key;
}

}  // namespace

std::vector<Formula> apply_rule(const Rule& rule, const Formula& kb, FiringRecord& fired,
                                const EvalContext& env, std::set<std::string>& fresh) {
    std::vector<Triple> graph_triples, builtin_triples;
    for (const auto& t : rule.antecedent.triples()) {
        if (t.predicate.is_iri() && is_builtin_predicate(t.predicate.text()))
            builtin_triples.push_back(t);
        else
            graph_triples.push_back(t);
    }
    Formula pattern{graph_triples};

    std::vector<Formula> outs;
    auto fire = [&](const Bindings& b) {
        if (!fired.mark(firing_key(rule, b))) return;
        Formula inst = substitute_variables(rule.consequent, b);
        Bindings freshen;
        for (const auto& name : root_existential_names(rule.consequent)) {
            if (b.count(name)) continue;
            freshen[name] = Term::blank(fresh_name("_:g", fresh));
        }
        if (!freshen.empty()) inst = substitute_variables(inst, freshen);
        outs.push_back(std::move(inst));
    };

    std::function<void(const Bindings&, const std::vector<Triple>&)> eval_builtins =
        [&](const Bindings& b, const std::vector<Triple>& remaining) {
            if (remaining.empty()) {
                fire(b);
                return;
            }
            for (std::size_t i = 0; i < remaining.size(); ++i) {
                const Triple& t = remaining[i];
                Term s = substitute_variables(t.subject, b);
                Term o = substitute_variables(t.object, b);
                EvalResult r = evaluate_builtin(t.predicate.text(), s, o, env);
                if (r.status == EvalStatus::NotEvaluable) continue;
                if (r.status == EvalStatus::Unsatisfied) {
                    if (!r.diagnostic.empty())
                        env.diag(t.predicate.text() + ": " + r.diagnostic);
                    return;
                }
                std::vector<Triple> rest;
                rest.reserve(remaining.size() - 1);
                for (std::size_t j = 0; j < remaining.size(); ++j)
                    if (j != i) rest.push_back(remaining[j]);
                for (const auto& ext : r.solutions) {
                    Bindings merged = b;
                    for (const auto& [k, v] : ext) merged[k] = v;
                    eval_builtins(merged, rest);
                }
                return;
            }
            env.diag("rule skipped: builtin arguments never became bound (first: " +
                     remaining.front().predicate.text() + ")");
        };

    Matcher m(pattern, kb, &rule.antecedent);
    m.run({}, [&](const Bindings& b) {
        eval_builtins(b, builtin_triples);
        return true;
    });
    return outs;
}

Formula conclusion(const Formula& f, const EvalContext& env) {
    std::set<Triple> kb_triples(f.triples().begin(), f.triples().end());
    std::set<std::string> kb_uni(f.universals().begin(), f.universals().end());
    std::set<std::string> kb_exi(f.existentials().begin(), f.existentials().end());
    std::set<std::string> fresh = all_names(f);
    FiringRecord fired;
    std::size_t derived = 0;

    auto build = [&] {
        return Formula(std::vector<Triple>(kb_triples.begin(), kb_triples.end()),
                       std::vector<std::string>(kb_uni.begin(), kb_uni.end()),
                       std::vector<std::string>(kb_exi.begin(), kb_exi.end()));
    };

    for (std::size_t iter = 0; iter < env.limits.max_iterations; ++iter) {
        Formula kb = build();
        std::vector<Rule> rules = extract_rules(kb);
        std::set<Triple> delta;
        std::set<std::string> delta_uni, delta_exi;
        for (const auto& rule : rules) {
            for (const auto& inst : apply_rule(rule, kb, fired, env, fresh)) {
                for (const auto& t : inst.triples())
                    if (!kb_triples.count(t)) delta.insert(t);
                for (const auto& n : inst.universals()) delta_uni.insert(n);
                for (const auto& n : inst.existentials()) delta_exi.insert(n);
            }
        }
        if (delta.empty()) return kb;
        derived += delta.size();
        kb_triples.insert(delta.begin(), delta.end());
        kb_uni.insert(delta_uni.begin(), delta_uni.end());
        kb_exi.insert(delta_exi.begin(), delta_exi.end());
        if (derived > env.limits.max_derived)
            throw ClosureError("derived-triple limit (" +
                                   std::to_string(env.limits.max_derived) +
                                   ") exceeded before fixpoint",
                               build());
    }
    throw ClosureError("iteration limit (" + std::to_string(env.limits.max_iterations) +
                           ") exceeded before fixpoint",
                       build());
}

bool supports(const Formula& f, const Formula& g, const EvalContext& env) {
    return includes(conclusion(f, env), g);
}

Formula filter(const Formula& kb, const Formula& rules, const EvalContext& env) {
    Formula closure = conclusion(conjoin({kb, rules}), env);
    FiringRecord fired;
    std::set<std::string> fresh = all_names(closure);
    std::vector<Triple> out_triples;
    std::set<std::string> out_uni, out_exi;
    for (const auto& rule : extract_rules(rules)) {
        for (const auto& inst : apply_rule(rule, closure, fired, env, fresh)) {
            for (const auto& t : inst.triples()) out_triples.push_back(t);
            for (const auto& n : inst.universals()) out_uni.insert(n);
            for (const auto& n : inst.existentials()) out_exi.insert(n);
        }
    }
    return Formula(std::move(out_triples),
                   std::vector<std::string>(out_uni.begin(), out_uni.end()),
                   std::vector<std::string>(out_exi.begin(), out_exi.end()));
}

}  // namespace n3
