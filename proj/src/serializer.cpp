#include "n3/serializer.hpp"
#include "n3/vocab.hpp"
#include "n3/parser.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

namespace n3 {

namespace {

bool is_bare_label(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

bool is_safe_local(const std::string& s) {
    if (!s.empty() && s[0] == '-') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

bool is_integer_lexical(const std::string& s) {
    std::size_t i = (s.size() > 1 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

bool is_decimal_lexical(const std::string& s) {
    std::size_t dot = s.find('.');
    if (dot == std::string::npos) return false;
    return is_integer_lexical(s.substr(0, dot)) && all_digits(s.substr(dot + 1));
}

bool is_double_lexical(const std::string& s) {
    std::size_t e = s.find_first_of("eE");
    if (e == std::string::npos) return false;
    std::string mantissa = s.substr(0, e), exponent = s.substr(e + 1);
    return (is_integer_lexical(mantissa) || is_decimal_lexical(mantissa)) &&
           is_integer_lexical(exponent);
}

std::string escape_string(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04X", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string escape_iri(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '>')
            out += "%3E";
        else if (c == ' ')
            out += "%20";
        else
            out += c;
    }
    return out;
}

struct UniInfo {
    bool root_decl = false;
    bool nonroot_decl = false;
    int min_rel = INT_MAX;  // occurrence depth relative to declaring formula
    int max_rel = INT_MIN;
    bool question = false;
    std::string label;  // bare label when question, else symbol IRI
};

struct ExiInfo {
    std::string symbol;
};

struct BlankInfo {
    const Formula* owner = nullptr;
    bool multi_owner = false;
    int object_occ = 0;
    int subject_occ = 0;
    int other_occ = 0;  // predicate or list positions
    enum class Mode { Empty, InlineObject, InlineSubject, Labeled } mode = Mode::Labeled;
    std::string label;
};

using UniKey = std::pair<std::string, const Formula*>;

struct Analysis {
    std::map<std::string, BlankInfo> blanks;
    std::map<UniKey, UniInfo> unis;
    std::map<UniKey, ExiInfo> exis;
    std::map<const Formula*, int> visits;
    std::set<std::string> taken_labels;
};

enum class Pos { Subject, Predicate, Object, InList };

struct Walker {
    Analysis& a;
    std::vector<std::pair<const Formula*, int>> stack;  // (formula, depth)

    explicit Walker(Analysis& an) : a(an) {}

    void walk_formula(const Formula& f, int depth) {
        ++a.visits[&f];
        stack.push_back({&f, depth});
        for (const auto& t : f.triples()) {
            walk_term(t.subject, depth, Pos::Subject);
            walk_term(t.predicate, depth, Pos::Predicate);
            walk_term(t.object, depth, Pos::Object);
        }
        stack.pop_back();
    }

    void walk_term(const Term& t, int depth, Pos pos) {
        switch (t.kind()) {
            case TermKind::Blank: {
                BlankInfo& b = a.blanks[t.text()];
                const Formula* here = stack.back().first;
                if (!b.owner)
                    b.owner = here;
                else if (b.owner != here)
                    b.multi_owner = true;
                if (pos == Pos::Object)
                    ++b.object_occ;
                else if (pos == Pos::Subject)
                    ++b.subject_occ;
                else
                    ++b.other_occ;
                break;
            }
            case TermKind::UniVar: {
                for (std::size_t i = stack.size(); i-- > 0;) {
                    if (stack[i].first->declares_universal(t.text())) {
                        UniInfo& u = a.unis[{t.text(), stack[i].first}];
                        if (i == 0)
                            u.root_decl = true;
                        else
                            u.nonroot_decl = true;
                        int rel = depth - stack[i].second;
                        u.min_rel = std::min(u.min_rel, rel);
                        u.max_rel = std::max(u.max_rel, rel);
                        break;
                    }
                }
                break;
            }
            case TermKind::ExiVar: {
                for (std::size_t i = stack.size(); i-- > 0;) {
                    if (stack[i].first->declares_existential(t.text())) {
                        a.exis[{t.text(), stack[i].first}];
                        break;
                    }
                }
                break;
            }
            case TermKind::List:
                for (const auto& item : t.items()) walk_term(item, depth, Pos::InList);
                break;
            case TermKind::Quoted:
                walk_formula(t.quoted_formula(), depth + 1);
                break;
            default:
                break;
        }
    }
};

struct Renderer {
    const SerializerConfig& cfg;
    Analysis a;
    std::set<std::string> used_prefixes;
    bool used_base = false;
    std::vector<std::pair<std::string, std::string>> ns_order;  // (namespace, prefix)
    std::vector<const Formula*> render_stack;

    explicit Renderer(const SerializerConfig& c) : cfg(c) {
        if (!cfg.flat) {
            for (const auto& [prefix, ns] : cfg.prefixes) ns_order.push_back({ns, prefix});
            std::stable_sort(ns_order.begin(), ns_order.end(),
                             [](const auto& x, const auto& y) {
                                 return x.first.size() > y.first.size();
                             });
        }
    }

    std::string mint_label(const std::string& stem) {
        for (int k = 0;; ++k) {
            std::string candidate = stem + std::to_string(k);
            if (a.taken_labels.insert(candidate).second) return candidate;
        }
    }

    void prepare(const Formula& f) {
        Walker w(a);
        w.walk_formula(f, 0);
        for (auto& [key, u] : a.unis) {
            // A ?label reference re-declares at the parent of the formula it
            // occurs in, so the occurrence depths decide whether the sugar can
            // reproduce the declaration point.
            bool root_ok = u.root_decl && !u.nonroot_decl && u.max_rel <= 1;
            bool nested_ok = u.nonroot_decl && !u.root_decl && u.min_rel == 1 && u.max_rel == 1;
            u.question = root_ok || nested_ok;
            if (u.question) {
                std::string base_label;
                if (is_bare_label(key.first)) {
                    base_label = key.first;
                } else {
                    std::size_t cut = key.first.find_last_of("#/");
                    std::string tail =
                        cut == std::string::npos ? key.first : key.first.substr(cut + 1);
                    if (is_bare_label(tail)) base_label = tail;
                }
                if (!base_label.empty() && a.taken_labels.insert(base_label).second)
                    u.label = base_label;
                else
                    u.label = mint_label("v");
            } else if (iri_is_absolute(key.first)) {
                u.label = key.first;
            } else {
                u.label = std::string(vocab::var_ns) + key.first;
            }
        }
        for (auto& [key, e] : a.exis) {
            e.symbol = iri_is_absolute(key.first) ? key.first
                                                  : std::string(vocab::var_ns) + key.first;
        }
        decide_blank_modes(f);
    }

    void decide_blank_modes(const Formula& root) {
        for (auto& [id, b] : a.blanks) {
            int total = b.object_occ + b.subject_occ + b.other_occ;
            bool shared_owner = b.owner && a.visits[b.owner] > 1;
            if (cfg.flat || b.multi_owner || shared_owner) {
                b.mode = BlankInfo::Mode::Labeled;
            } else if (total == 1 && b.subject_occ == 0) {
                b.mode = BlankInfo::Mode::Empty;
            } else if (b.object_occ == 1 && b.other_occ == 0) {
                b.mode = BlankInfo::Mode::InlineObject;
            } else if (b.object_occ == 0 && b.other_occ == 0 && b.subject_occ > 0) {
                b.mode = BlankInfo::Mode::InlineSubject;
            } else {
                b.mode = BlankInfo::Mode::Labeled;
            }
        }
        if (!cfg.flat) demote_inline_cycles(root);
        for (auto& [id, b] : a.blanks) {
            if (b.mode == BlankInfo::Mode::Labeled) {
                std::string tail = id.substr(2);
                if (is_bare_label(tail) && a.taken_labels.insert(tail).second)
                    b.label = tail;
                else
                    b.label = mint_label("b");
            }
        }
    }

    // Object-inlined blanks nest the triples they are subject of; a cycle in
    // that containment would recurse forever, so members fall back to labels.
    void demote_inline_cycles(const Formula& root) {
        std::map<std::string, std::vector<std::string>> edges;
        std::function<void(const Formula&)> scan = [&](const Formula& f) {
            for (const auto& t : f.triples()) {
                if (t.subject.is_blank() && t.object.is_blank()) {
                    auto oi = a.blanks.find(t.object.text());
                    if (oi != a.blanks.end() &&
                        oi->second.mode == BlankInfo::Mode::InlineObject)
                        edges[t.subject.text()].push_back(t.object.text());
                }
                for (const Term* term : {&t.subject, &t.predicate, &t.object})
                    if (term->is_quoted()) scan(term->quoted_formula());
            }
        };
        scan(root);
        while (true) {
            std::map<std::string, int> state;  // 0 unseen, 1 active, 2 done
            std::string demote;
            std::function<bool(const std::string&)> dfs = [&](const std::string& v) -> bool {
                state[v] = 1;
                for (const auto& w : edges[v]) {
                    auto wi = a.blanks.find(w);
                    if (wi == a.blanks.end() ||
                        wi->second.mode != BlankInfo::Mode::InlineObject)
                        continue;
                    if (state[w] == 1) return true;
                    if (state[w] == 0 && dfs(w)) return true;
                }
                state[v] = 2;
                return false;
            };
            for (auto& [id, b] : a.blanks) {
                if (b.mode != BlankInfo::Mode::InlineObject || state[id] != 0) continue;
                if (dfs(id)) {
                    demote = id;
                    break;
                }
            }
            if (demote.empty()) break;
            a.blanks[demote].mode = BlankInfo::Mode::Labeled;
        }
    }

    std::string iri_text(const std::string& iri) {
        for (const auto& [ns, prefix] : ns_order) {
            if (iri.size() >= ns.size() && iri.compare(0, ns.size(), ns) == 0) {
                std::string local = iri.substr(ns.size());
                if (is_safe_local(local)) {
                    used_prefixes.insert(prefix);
                    return prefix + ":" + local;
                }
            }
        }
        if (!cfg.flat && !cfg.base.empty()) {
            if (iri == cfg.base) {
                used_base = true;
                return "<>";
            }
            if (iri.size() > cfg.base.size() &&
                iri.compare(0, cfg.base.size(), cfg.base) == 0) {
                std::string rest = iri.substr(cfg.base.size());
                if (rest.find_first_of("<>\" \n") == std::string::npos &&
                    resolve_iri(cfg.base, rest) == iri) {
                    used_base = true;
                    return "<" + escape_iri(rest) + ">";
                }
            }
        }
        return "<" + escape_iri(iri) + ">";
    }

    std::string literal_text(const Term& t) {
        const std::string& lex = t.text();
        const std::string& dt = t.datatype();
        if (!cfg.flat) {
            if (dt == vocab::xsd_integer && is_integer_lexical(lex)) return lex;
            if (dt == vocab::xsd_decimal && is_decimal_lexical(lex)) return lex;
            if (dt == vocab::xsd_double && is_double_lexical(lex)) return lex;
            if (dt == vocab::xsd_boolean && (lex == "true" || lex == "false"))
                return "@" + lex;
        }
        std::string out = "\"" + escape_string(lex) + "\"";
        if (!t.language().empty())
            out += "@" + t.language();
        else if (!dt.empty())
            out += "^^" + iri_text(dt);
        return out;
    }

    const UniInfo* uni_info(const std::string& name) {
        for (std::size_t i = render_stack.size(); i-- > 0;) {
            if (render_stack[i]->declares_universal(name)) {
                auto it = a.unis.find({name, render_stack[i]});
                return it == a.unis.end() ? nullptr : &it->second;
            }
        }
        return nullptr;
    }

    const ExiInfo* exi_info(const std::string& name) {
        for (std::size_t i = render_stack.size(); i-- > 0;) {
            if (render_stack[i]->declares_existential(name)) {
                auto it = a.exis.find({name, render_stack[i]});
                return it == a.exis.end() ? nullptr : &it->second;
            }
        }
        return nullptr;
    }

    std::string term_text(const Term& t, bool as_predicate) {
        switch (t.kind()) {
            case TermKind::Iri: {
                if (!cfg.flat && as_predicate) {
                    if (t.text() == vocab::rdf_type) return "a";
                    if (t.text() == vocab::log_implies) return "=>";
                    if (t.text() == vocab::owl_same_as) return "=";
                }
                return iri_text(t.text());
            }
            case TermKind::Literal:
                return literal_text(t);
            case TermKind::Blank: {
                const BlankInfo& b = a.blanks[t.text()];
                switch (b.mode) {
                    case BlankInfo::Mode::Empty:
                        return "[]";
                    case BlankInfo::Mode::InlineObject: {
                        std::string props = props_text(t);
                        return props.empty() ? "[]" : "[ " + props + " ]";
                    }
                    default:
                        return "_:" + b.label;
                }
            }
            case TermKind::UniVar: {
                const UniInfo* u = uni_info(t.text());
                if (u) {
                    if (u->question) return "?" + u->label;
                    return iri_text(u->label);
                }
                // Free variable: keep it referenceable.
                if (is_bare_label(t.text())) return "?" + t.text();
                return iri_text(iri_is_absolute(t.text())
                                    ? t.text()
                                    : std::string(vocab::var_ns) + t.text());
            }
            case TermKind::ExiVar: {
                const ExiInfo* e = exi_info(t.text());
                if (e) return iri_text(e->symbol);
                return iri_text(iri_is_absolute(t.text())
                                    ? t.text()
                                    : std::string(vocab::var_ns) + t.text());
            }
            case TermKind::List: {
                std::string out = "(";
                bool first = true;
                for (const auto& item : t.items()) {
                    if (!first) out += " ";
                    out += term_text(item, false);
                    first = false;
                }
                out += ")";
                return out;
            }
            case TermKind::Quoted:
                return formula_text(t.quoted_formula(), true);
        }
        return "";
    }

    std::string props_text(const Term& blank) {
        const Formula* f = render_stack.back();
        std::string out;
        const Term* last_pred = nullptr;
        for (const auto& t : f->triples()) {
            if (t.subject != blank) continue;
            if (!out.empty()) {
                if (last_pred && t.predicate == *last_pred) {
                    out += ", " + term_text(t.object, false);
                    continue;
                }
                out += "; ";
            }
            out += term_text(t.predicate, true) + " " + term_text(t.object, false);
            last_pred = &t.predicate;
        }
        return out;
    }

    bool subject_suppressed(const Term& s) {
        if (!s.is_blank()) return false;
        auto it = a.blanks.find(s.text());
        return it != a.blanks.end() && it->second.mode == BlankInfo::Mode::InlineObject;
    }

    std::string props_for_range(const std::vector<Triple>& ts, std::size_t i, std::size_t j) {
        std::string out;
        const Term* last_pred = nullptr;
        for (std::size_t k = i; k < j; ++k) {
            if (!out.empty()) {
                if (last_pred && ts[k].predicate == *last_pred) {
                    out += ", " + term_text(ts[k].object, false);
                    continue;
                }
                out += "; ";
            }
            out += term_text(ts[k].predicate, true) + " " + term_text(ts[k].object, false);
            last_pred = &ts[k].predicate;
        }
        return out;
    }

    std::string formula_text(const Formula& f, bool braced) {
        render_stack.push_back(&f);
        std::vector<std::string> statements;

        std::vector<std::string> foralls, forsomes;
        for (const auto& name : f.universals()) {
            const UniInfo* u = uni_info(name);
            if (u && !u->question) foralls.push_back(iri_text(u->label));
        }
        for (const auto& name : f.existentials()) {
            const ExiInfo* e = exi_info(name);
            if (e) forsomes.push_back(iri_text(e->symbol));
        }
        std::sort(foralls.begin(), foralls.end());
        std::sort(forsomes.begin(), forsomes.end());
        if (!foralls.empty()) {
            std::string s = "@forAll ";
            for (std::size_t i = 0; i < foralls.size(); ++i) s += (i ? ", " : "") + foralls[i];
            statements.push_back(std::move(s));
        }
        if (!forsomes.empty()) {
            std::string s = "@forSome ";
            for (std::size_t i = 0; i < forsomes.size(); ++i)
                s += (i ? ", " : "") + forsomes[i];
            statements.push_back(std::move(s));
        }

        const auto& ts = f.triples();
        if (cfg.flat) {
            for (const auto& t : ts)
                statements.push_back(term_text(t.subject, false) + " " +
                                     term_text(t.predicate, true) + " " +
                                     term_text(t.object, false));
        } else {
            std::size_t i = 0;
            while (i < ts.size()) {
                const Term& s = ts[i].subject;
                std::size_t j = i;
                while (j < ts.size() && ts[j].subject == s) ++j;
                if (subject_suppressed(s)) {
                    i = j;
                    continue;
                }
                bool subject_inline =
                    s.is_blank() &&
                    a.blanks[s.text()].mode == BlankInfo::Mode::InlineSubject;
                statements.push_back(subject_inline
                                         ? "[ " + props_for_range(ts, i, j) + " ]"
                                         : term_text(s, false) + " " +
                                               props_for_range(ts, i, j));
                i = j;
            }
        }

        std::string body;
        for (std::size_t k = 0; k < statements.size(); ++k) {
            if (braced) {
                body += statements[k];
                if (k + 1 < statements.size()) body += " . ";
            } else {
                body += statements[k] + " .\n";
            }
        }
        render_stack.pop_back();
        if (braced) return body.empty() ? "{ }" : "{ " + body + " }";
        return body;
    }

    std::string run(const Formula& f) {
        prepare(f);
        std::string body = formula_text(f, false);
        std::string head;
        if (!cfg.flat) {
            if (used_base) head += "@base <" + escape_iri(cfg.base) + "> .\n";
            for (const auto& [prefix, ns] : cfg.prefixes)
                if (used_prefixes.count(prefix))
                    head += "@prefix " + prefix + ": <" + escape_iri(ns) + "> .\n";
            if (!head.empty()) head += "\n";
        }
        return head + body;
    }
};

}  // namespace

std::string serialize(const Formula& f, const SerializerConfig& cfg) {
    Renderer r(cfg);
    return r.run(f);
}

std::string canonical_text(const Formula& f) { return canonical_text(f, {}); }

std::string canonical_text(const Formula& f,
                           const std::vector<std::pair<std::string, std::string>>& prefixes) {
    SerializerConfig cfg;
    cfg.prefixes = prefixes;
    return serialize(canonical_form(f), cfg);
}

}  // namespace n3
