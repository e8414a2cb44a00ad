#include "n3/term.hpp"
#include "n3/vocab.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <mutex>

namespace n3 {

struct TermData {
    std::string text;
    std::string datatype;
    std::string language;
    std::vector<Term> items;
    std::shared_ptr<const Formula> formula;
    mutable std::once_flag canon_once;
    mutable std::string canon_key;
};

namespace {

const std::shared_ptr<const TermData>& empty_data() {
    static const std::shared_ptr<const TermData> d = std::make_shared<TermData>();
    return d;
}

std::shared_ptr<TermData> make_data(std::string text) {
    auto d = std::make_shared<TermData>();
    d->text = std::move(text);
    return d;
}

// Length-prefixed strings keep structural encodings unambiguous.
void enc_string(std::string& out, const std::string& s) {
    out += std::to_string(s.size());
    out += ':';
    out += s;
}

}  // namespace

Term::Term() : kind_(TermKind::Iri), data_(empty_data()) {}

Term Term::iri(std::string value) {
    return Term(TermKind::Iri, make_data(std::move(value)));
}

Term Term::literal(std::string lexical) {
    return Term(TermKind::Literal, make_data(std::move(lexical)));
}

Term Term::literal(std::string lexical, std::string datatype_iri) {
    auto d = make_data(std::move(lexical));
    d->datatype = std::move(datatype_iri);
    return Term(TermKind::Literal, std::move(d));
}

Term Term::lang_literal(std::string lexical, std::string language) {
    auto d = make_data(std::move(lexical));
    d->language = std::move(language);
    return Term(TermKind::Literal, std::move(d));
}

Term Term::integer(long long value) {
    return literal(std::to_string(value), vocab::xsd_integer);
}

Term Term::boolean(bool value) {
    return literal(value ? "true" : "false", vocab::xsd_boolean);
}

Term Term::blank(std::string id) {
    assert(id.rfind("_:", 0) == 0);
    return Term(TermKind::Blank, make_data(std::move(id)));
}

Term Term::univar(std::string name) {
    return Term(TermKind::UniVar, make_data(std::move(name)));
}

Term Term::exivar(std::string name) {
    return Term(TermKind::ExiVar, make_data(std::move(name)));
}

Term Term::list(std::vector<Term> items) {
    auto d = std::make_shared<TermData>();
    d->items = std::move(items);
    return Term(TermKind::List, std::move(d));
}

Term Term::quoted(Formula f) {
    auto d = std::make_shared<TermData>();
    d->formula = std::make_shared<const Formula>(std::move(f));
    return Term(TermKind::Quoted, std::move(d));
}

const std::string& Term::text() const { return data_->text; }
const std::string& Term::datatype() const { return data_->datatype; }
const std::string& Term::language() const { return data_->language; }
const std::vector<Term>& Term::items() const { return data_->items; }
const Formula& Term::quoted_formula() const { return *data_->formula; }

namespace {

int kind_rank(TermKind k) {
    switch (k) {
        case TermKind::Iri: return 0;
        case TermKind::Literal: return 1;
        case TermKind::Blank: return 2;
        case TermKind::UniVar: return 3;
        case TermKind::ExiVar: return 4;
        case TermKind::List: return 5;
        case TermKind::Quoted: return 6;
    }
    return 7;
}

int sgn(int c) { return c == 0 ? 0 : (c < 0 ? -1 : 1); }

}  // namespace

int Term::compare(const Term& other) const {
    int ra = kind_rank(kind_), rb = kind_rank(other.kind_);
    if (ra != rb) return ra < rb ? -1 : 1;
    if (data_ == other.data_) return 0;
    switch (kind_) {
        case TermKind::Iri:
        case TermKind::Blank:
        case TermKind::UniVar:
        case TermKind::ExiVar:
            return sgn(data_->text.compare(other.data_->text));
        case TermKind::Literal: {
            if (int c = data_->text.compare(other.data_->text)) return sgn(c);
            if (int c = data_->datatype.compare(other.data_->datatype)) return sgn(c);
            return sgn(data_->language.compare(other.data_->language));
        }
        case TermKind::List: {
            const auto& a = data_->items;
            const auto& b = other.data_->items;
            std::size_t n = std::min(a.size(), b.size());
            for (std::size_t i = 0; i < n; ++i)
                if (int c = a[i].compare(b[i])) return c;
            if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
            return 0;
        }
        case TermKind::Quoted: {
            std::call_once(data_->canon_once, [this] {
                data_->canon_key = canonical_key(*data_->formula);
            });
            std::call_once(other.data_->canon_once, [&other] {
                other.data_->canon_key = canonical_key(*other.data_->formula);
            });
            return sgn(data_->canon_key.compare(other.data_->canon_key));
        }
    }
    return 0;
}

int Triple::compare(const Triple& other) const {
    if (int c = subject.compare(other.subject)) return c;
    if (int c = predicate.compare(other.predicate)) return c;
    return object.compare(other.object);
}

Formula::Formula(std::vector<Triple> triples,
                 std::vector<std::string> universals,
                 std::vector<std::string> existentials)
    : triples_(std::move(triples)),
      universals_(std::move(universals)),
      existentials_(std::move(existentials)) {
    std::sort(triples_.begin(), triples_.end());
    triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
    std::sort(universals_.begin(), universals_.end());
    universals_.erase(std::unique(universals_.begin(), universals_.end()), universals_.end());
    std::sort(existentials_.begin(), existentials_.end());
    existentials_.erase(std::unique(existentials_.begin(), existentials_.end()),
                        existentials_.end());
}

bool Formula::contains(const Triple& t) const {
    return std::binary_search(triples_.begin(), triples_.end(), t);
}

bool Formula::declares_universal(const std::string& name) const {
    return std::binary_search(universals_.begin(), universals_.end(), name);
}

bool Formula::declares_existential(const std::string& name) const {
    return std::binary_search(existentials_.begin(), existentials_.end(), name);
}

bool Formula::operator==(const Formula& other) const {
    if (triples_.size() != other.triples_.size()) return false;
    return canonical_key(*this) == canonical_key(other);
}

// --- Canonical labeling ---------------------------------------------------
//
// Quantified names (universals; existentials and blanks as one class) are
// relabeled canonically: color refinement over occurrence contexts, then
// individualization on remaining ties, keeping the assignment whose final
// encoding is smallest. Free variables are left untouched. Ownership of a
// blank is the least common ancestor of its occurrences; declared variables
// are owned where declared. A declared existential whose declaration sits at
// its occurrence LCA is interchangeable with a blank and is normalized to one.

namespace {

struct SigTerm {
    enum Kind { Atom, Inst, ListK, QuoteK } kind = Atom;
    std::string atom;
    int inst = -1;
    const Term* orig = nullptr;
    std::vector<SigTerm> items;
    int quote_node = -1;
};

struct SigTriple {
    SigTerm s, p, o;
    std::vector<int> insts;  // instances occurring (or declared) inside
};

struct SigNode {
    int parent = -1;
    int depth = 0;
    std::vector<int> decl_uni;
    std::vector<int> decl_exi;
    std::vector<SigTriple> triples;
};

struct Instance {
    std::string name;
    int cls = 0;  // 0 universal, 1 existential class
    bool is_blank = false;
    int decl_node = -1;
    std::vector<int> occ_nodes;
    int lca = -1;
};

struct SigTree {
    std::vector<SigNode> nodes;
    std::vector<Instance> insts;
};

std::string atom_encoding(const Term& t) {
    std::string out;
    switch (t.kind()) {
        case TermKind::Iri:
            out += 'I';
            enc_string(out, t.text());
            break;
        case TermKind::Literal:
            out += 'L';
            enc_string(out, t.text());
            enc_string(out, t.datatype());
            enc_string(out, t.language());
            break;
        case TermKind::UniVar:
            out += 'U';
            enc_string(out, t.text());
            break;
        case TermKind::ExiVar:
            out += 'E';
            enc_string(out, t.text());
            break;
        case TermKind::Blank:
            out += 'B';
            enc_string(out, t.text());
            break;
        default:
            assert(false);
    }
    return out;
}

struct TreeBuilder {
    SigTree tree;
    std::map<std::string, int> blank_inst;
    std::vector<std::map<std::string, int>> uni_scope;
    std::vector<std::map<std::string, int>> exi_scope;

    static int resolve(const std::vector<std::map<std::string, int>>& scopes,
                       const std::string& name) {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto f = it->find(name);
            if (f != it->end()) return f->second;
        }
        return -1;
    }

    int new_instance(const std::string& name, int cls, bool blank, int decl_node) {
        tree.insts.push_back({name, cls, blank, decl_node, {}, -1});
        return static_cast<int>(tree.insts.size()) - 1;
    }

    int build_node(const Formula& f, int parent) {
        int id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[id].parent = parent;
        tree.nodes[id].depth = parent < 0 ? 0 : tree.nodes[parent].depth + 1;
        uni_scope.emplace_back();
        exi_scope.emplace_back();
        for (const auto& name : f.universals()) {
            int inst = new_instance(name, 0, false, id);
            uni_scope.back()[name] = inst;
            tree.nodes[id].decl_uni.push_back(inst);
        }
        for (const auto& name : f.existentials()) {
            int inst = new_instance(name, 1, false, id);
            exi_scope.back()[name] = inst;
            tree.nodes[id].decl_exi.push_back(inst);
        }
        for (const auto& t : f.triples()) {
            SigTriple st;
            st.s = build_term(t.subject, id);
            st.p = build_term(t.predicate, id);
            st.o = build_term(t.object, id);
            tree.nodes[id].triples.push_back(std::move(st));
        }
        uni_scope.pop_back();
        exi_scope.pop_back();
        return id;
    }

    SigTerm build_term(const Term& t, int node) {
        SigTerm st;
        st.orig = &t;
        switch (t.kind()) {
            case TermKind::UniVar: {
                int inst = resolve(uni_scope, t.text());
                if (inst < 0) {
                    st.kind = SigTerm::Atom;
                    st.atom = atom_encoding(t);
                } else {
                    st.kind = SigTerm::Inst;
                    st.inst = inst;
                    tree.insts[inst].occ_nodes.push_back(node);
                }
                break;
            }
            case TermKind::ExiVar: {
                int inst = resolve(exi_scope, t.text());
                if (inst < 0) {
                    st.kind = SigTerm::Atom;
                    st.atom = atom_encoding(t);
                } else {
                    st.kind = SigTerm::Inst;
                    st.inst = inst;
                    tree.insts[inst].occ_nodes.push_back(node);
                }
                break;
            }
            case TermKind::Blank: {
                auto it = blank_inst.find(t.text());
                int inst;
                if (it == blank_inst.end()) {
                    inst = new_instance(t.text(), 1, true, -1);
                    blank_inst[t.text()] = inst;
                } else {
                    inst = it->second;
                }
                st.kind = SigTerm::Inst;
                st.inst = inst;
                tree.insts[inst].occ_nodes.push_back(node);
                break;
            }
            case TermKind::List: {
                st.kind = SigTerm::ListK;
                for (const auto& item : t.items()) st.items.push_back(build_term(item, node));
                break;
            }
            case TermKind::Quoted: {
                st.kind = SigTerm::QuoteK;
                st.quote_node = build_node(t.quoted_formula(), node);
                break;
            }
            default:
                st.kind = SigTerm::Atom;
                st.atom = atom_encoding(t);
                break;
        }
        return st;
    }
};

void collect_term_insts(const SigTerm& st, const SigTree& tree,
                        const std::vector<std::vector<int>>& node_insts,
                        std::vector<int>& out) {
    switch (st.kind) {
        case SigTerm::Inst:
            out.push_back(st.inst);
            break;
        case SigTerm::ListK:
            for (const auto& item : st.items) collect_term_insts(item, tree, node_insts, out);
            break;
        case SigTerm::QuoteK:
            out.insert(out.end(), node_insts[st.quote_node].begin(),
                       node_insts[st.quote_node].end());
            break;
        default:
            break;
    }
}

// Fills SigTriple::insts bottom-up so refinement can find every triple an
// instance appears in, however deeply.
void index_triple_insts(SigTree& tree) {
    std::vector<std::vector<int>> node_insts(tree.nodes.size());
    for (int id = static_cast<int>(tree.nodes.size()) - 1; id >= 0; --id) {
        std::vector<int> acc(tree.nodes[id].decl_uni);
        acc.insert(acc.end(), tree.nodes[id].decl_exi.begin(), tree.nodes[id].decl_exi.end());
        for (auto& t : tree.nodes[id].triples) {
            std::vector<int> ti;
            collect_term_insts(t.s, tree, node_insts, ti);
            collect_term_insts(t.p, tree, node_insts, ti);
            collect_term_insts(t.o, tree, node_insts, ti);
            std::sort(ti.begin(), ti.end());
            ti.erase(std::unique(ti.begin(), ti.end()), ti.end());
            t.insts = ti;
            acc.insert(acc.end(), ti.begin(), ti.end());
        }
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
        node_insts[id] = std::move(acc);
    }
}

int lca_of(const SigTree& tree, int a, int b) {
    while (a != b) {
        if (a < 0 || b < 0) return 0;
        if (tree.nodes[a].depth > tree.nodes[b].depth)
            a = tree.nodes[a].parent;
        else if (tree.nodes[b].depth > tree.nodes[a].depth)
            b = tree.nodes[b].parent;
        else {
            a = tree.nodes[a].parent;
            b = tree.nodes[b].parent;
        }
    }
    return a;
}

void compute_lcas(SigTree& tree) {
    for (auto& inst : tree.insts) {
        if (inst.occ_nodes.empty()) {
            inst.lca = inst.decl_node;
            continue;
        }
        int l = inst.occ_nodes.front();
        for (int n : inst.occ_nodes) l = lca_of(tree, l, n);
        inst.lca = l;
    }
}

int owner_node(const Instance& inst) {
    return inst.decl_node >= 0 ? inst.decl_node : inst.lca;
}

std::string enc_term_sig(const SigTerm& st, const SigTree& tree,
                         const std::vector<std::string>& labels, int mark);

std::string enc_node_sig(int node, const SigTree& tree,
                         const std::vector<std::string>& labels, int mark) {
    const SigNode& n = tree.nodes[node];
    std::vector<std::string> us, es, ts;
    for (int i : n.decl_uni) us.push_back(labels[i]);
    for (int i : n.decl_exi) es.push_back(labels[i]);
    std::sort(us.begin(), us.end());
    std::sort(es.begin(), es.end());
    for (const auto& t : n.triples) {
        std::string e = "(";
        e += enc_term_sig(t.s, tree, labels, mark);
        e += enc_term_sig(t.p, tree, labels, mark);
        e += enc_term_sig(t.o, tree, labels, mark);
        e += ')';
        ts.push_back(std::move(e));
    }
    std::sort(ts.begin(), ts.end());
    std::string out = "F[u:";
    for (const auto& s : us) enc_string(out, s);
    out += ";e:";
    for (const auto& s : es) enc_string(out, s);
    out += ";t:";
    for (const auto& s : ts) out += s;
    out += ']';
    return out;
}

std::string enc_term_sig(const SigTerm& st, const SigTree& tree,
                         const std::vector<std::string>& labels, int mark) {
    switch (st.kind) {
        case SigTerm::Atom:
            return st.atom;
        case SigTerm::Inst: {
            std::string out = st.inst == mark ? "@<" : "<";
            out += labels[st.inst];
            out += '>';
            return out;
        }
        case SigTerm::ListK: {
            std::string out = "(";
            for (const auto& item : st.items) out += enc_term_sig(item, tree, labels, mark);
            out += ')';
            return out;
        }
        case SigTerm::QuoteK:
            return "{" + enc_node_sig(st.quote_node, tree, labels, mark) + "}";
    }
    return {};
}

// One refinement pass; labels are replaced by compressed group ranks.
// Returns true when the partition changed.
bool refine_once(const SigTree& tree, std::vector<std::string>& labels) {
    std::size_t n = tree.insts.size();
    std::vector<std::string> sigs(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string sig = labels[i];
        sig += '#';
        std::vector<std::string> ctxs;
        for (std::size_t nd = 0; nd < tree.nodes.size(); ++nd) {
            for (const auto& t : tree.nodes[nd].triples) {
                if (!std::binary_search(t.insts.begin(), t.insts.end(), static_cast<int>(i)))
                    continue;
                std::string ctx = "d" + std::to_string(tree.nodes[nd].depth) + ":(";
                ctx += enc_term_sig(t.s, tree, labels, static_cast<int>(i));
                ctx += enc_term_sig(t.p, tree, labels, static_cast<int>(i));
                ctx += enc_term_sig(t.o, tree, labels, static_cast<int>(i));
                ctx += ')';
                ctxs.push_back(std::move(ctx));
            }
        }
        std::sort(ctxs.begin(), ctxs.end());
        for (const auto& c : ctxs) enc_string(sig, c);
        sigs[i] = std::move(sig);
    }
    std::vector<std::string> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::string> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), sigs[i]);
        next[i] = "g" + std::to_string(it - sorted.begin());
    }
    bool changed = false;
    for (std::size_t i = 0; i < n && !changed; ++i)
        for (std::size_t j = i + 1; j < n && !changed; ++j)
            if ((labels[i] == labels[j]) != (next[i] == next[j])) changed = true;
    labels.swap(next);
    return changed;
}

void refine(const SigTree& tree, std::vector<std::string>& labels) {
    for (std::size_t round = 0; round <= tree.insts.size(); ++round)
        if (!refine_once(tree, labels)) break;
}

std::vector<std::string> initial_labels(const SigTree& tree) {
    std::vector<std::string> labels;
    labels.reserve(tree.insts.size());
    for (const auto& inst : tree.insts) {
        int owner = owner_node(inst);
        int depth = owner >= 0 ? tree.nodes[owner].depth : 0;
        labels.push_back((inst.cls == 0 ? "U" : "E") + std::to_string(depth));
    }
    refine(tree, labels);
    return labels;
}

bool blank_representation(const Instance& inst) {
    if (inst.is_blank) return true;
    return inst.decl_node == inst.lca;
}

std::vector<std::string> assign_names(const SigTree& tree,
                                      const std::vector<std::string>& labels) {
    std::vector<int> order(tree.insts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (tree.insts[a].cls != tree.insts[b].cls)
            return tree.insts[a].cls < tree.insts[b].cls;
        if (labels[a] != labels[b]) return labels[a] < labels[b];
        return tree.insts[a].name < tree.insts[b].name;  // deterministic fallback
    });
    std::vector<std::string> names(tree.insts.size());
    int uni_rank = 0, exi_rank = 0;
    for (int i : order) {
        if (tree.insts[i].cls == 0)
            names[i] = "v" + std::to_string(uni_rank++);
        else
            names[i] = "c" + std::to_string(exi_rank++);
    }
    return names;
}

Term rebuild_term(const SigTerm& st, const SigTree& tree,
                  const std::vector<std::string>& names);

Formula rebuild_node(int node, const SigTree& tree, const std::vector<std::string>& names) {
    const SigNode& n = tree.nodes[node];
    std::vector<Triple> triples;
    for (const auto& t : n.triples)
        triples.push_back({rebuild_term(t.s, tree, names), rebuild_term(t.p, tree, names),
                           rebuild_term(t.o, tree, names)});
    std::vector<std::string> uni, exi;
    for (int i : n.decl_uni)
        if (!tree.insts[i].occ_nodes.empty()) uni.push_back(names[i]);
    for (int i : n.decl_exi)
        if (!tree.insts[i].occ_nodes.empty() && !blank_representation(tree.insts[i]))
            exi.push_back(names[i]);
    return Formula(std::move(triples), std::move(uni), std::move(exi));
}

Term rebuild_term(const SigTerm& st, const SigTree& tree,
                  const std::vector<std::string>& names) {
    switch (st.kind) {
        case SigTerm::Atom:
            return *st.orig;
        case SigTerm::Inst: {
            const Instance& inst = tree.insts[st.inst];
            if (inst.cls == 0) return Term::univar(names[st.inst]);
            if (blank_representation(inst)) return Term::blank("_:" + names[st.inst]);
            return Term::exivar(names[st.inst]);
        }
        case SigTerm::ListK: {
            std::vector<Term> items;
            for (const auto& item : st.items) items.push_back(rebuild_term(item, tree, names));
            return Term::list(std::move(items));
        }
        case SigTerm::QuoteK:
            return Term::quoted(rebuild_node(st.quote_node, tree, names));
    }
    return Term();
}

std::string literal_term_enc(const Term& t);

std::string literal_formula_enc(const Formula& f) {
    std::vector<std::string> ts;
    for (const auto& t : f.triples()) {
        std::string e = "(";
        e += literal_term_enc(t.subject);
        e += literal_term_enc(t.predicate);
        e += literal_term_enc(t.object);
        e += ')';
        ts.push_back(std::move(e));
    }
    std::sort(ts.begin(), ts.end());
    std::string out = "F[u:";
    for (const auto& s : f.universals()) enc_string(out, s);
    out += ";e:";
    for (const auto& s : f.existentials()) enc_string(out, s);
    out += ";t:";
    for (const auto& s : ts) out += s;
    out += ']';
    return out;
}

std::string literal_term_enc(const Term& t) {
    switch (t.kind()) {
        case TermKind::List: {
            std::string out = "(";
            for (const auto& item : t.items()) out += literal_term_enc(item);
            out += ')';
            return out;
        }
        case TermKind::Quoted:
            return "{" + literal_formula_enc(t.quoted_formula()) + "}";
        default:
            return atom_encoding(t);
    }
}

struct CanonState {
    const SigTree* tree = nullptr;
    std::string best_key;
    Formula best_form;
    bool has_best = false;
};

void canon_search(CanonState& st, std::vector<std::string> labels) {
    const SigTree& tree = *st.tree;
    std::map<std::pair<int, std::string>, std::vector<int>> groups;
    for (std::size_t i = 0; i < tree.insts.size(); ++i)
        groups[{tree.insts[i].cls, labels[i]}].push_back(static_cast<int>(i));
    const std::vector<int>* ambiguous = nullptr;
    for (const auto& [key, members] : groups)
        if (members.size() > 1) {
            ambiguous = &members;
            break;
        }
    if (!ambiguous) {
        auto names = assign_names(tree, labels);
        Formula form = rebuild_node(0, tree, names);
        std::string key = literal_formula_enc(form);
        if (!st.has_best || key < st.best_key) {
            st.best_key = std::move(key);
            st.best_form = std::move(form);
            st.has_best = true;
        }
        return;
    }
    for (int pick : *ambiguous) {
        auto labels2 = labels;
        labels2[pick] += "!";
        refine(tree, labels2);
        canon_search(st, std::move(labels2));
    }
}

// Upper bound on instances before tie exploration is skipped. Past it the
// labeling is still deterministic but may differ between isomorphic inputs
// with large automorphism groups; far outside the intended working set.
constexpr std::size_t individualization_cap = 40;

struct CanonOutput {
    Formula form;
    std::string key;
};

CanonOutput canonicalize(const Formula& f) {
    TreeBuilder builder;
    builder.build_node(f, -1);
    SigTree& tree = builder.tree;
    index_triple_insts(tree);
    compute_lcas(tree);
    auto labels = initial_labels(tree);
    if (tree.insts.size() > individualization_cap) {
        auto names = assign_names(tree, labels);
        Formula form = rebuild_node(0, tree, names);
        std::string key = literal_formula_enc(form);
        return {std::move(form), std::move(key)};
    }
    CanonState st;
    st.tree = &tree;
    canon_search(st, labels);
    return {std::move(st.best_form), std::move(st.best_key)};
}

}  // namespace

Formula canonical_form(const Formula& f) { return canonicalize(f).form; }

std::string canonical_key(const Formula& f) { return canonicalize(f).key; }

bool isomorphic(const Formula& a, const Formula& b) {
    if (a.triples().size() != b.triples().size()) return false;
    return canonical_key(a) == canonical_key(b);
}

std::string term_key(const Term& t) {
    switch (t.kind()) {
        case TermKind::List: {
            std::string out = "(";
            for (const auto& item : t.items()) out += term_key(item);
            out += ')';
            return out;
        }
        case TermKind::Quoted:
            return "{" + canonical_key(t.quoted_formula()) + "}";
        default:
            return atom_encoding(t);
    }
}

// --- Substitution and renaming -------------------------------------------

namespace {

bool formula_mentions_any(const Formula& f, const Bindings& b);

Term subst_term(const Term& t, const Bindings& b) {
    switch (t.kind()) {
        case TermKind::UniVar:
        case TermKind::ExiVar:
        case TermKind::Blank: {
            auto it = b.find(t.text());
            return it == b.end() ? t : it->second;
        }
        case TermKind::List: {
            std::vector<Term> items;
            items.reserve(t.items().size());
            for (const auto& item : t.items()) items.push_back(subst_term(item, b));
            return Term::list(std::move(items));
        }
        case TermKind::Quoted: {
            const Formula& qf = t.quoted_formula();
            Bindings inner = b;
            for (const auto& name : qf.universals()) inner.erase(name);
            for (const auto& name : qf.existentials()) inner.erase(name);
            if (inner.empty() || !formula_mentions_any(qf, inner)) return t;
            return Term::quoted(substitute_variables(qf, inner));
        }
        default:
            return t;
    }
}

bool term_mentions_any(const Term& t, const Bindings& b) {
    switch (t.kind()) {
        case TermKind::UniVar:
        case TermKind::ExiVar:
        case TermKind::Blank:
            return b.count(t.text()) > 0;
        case TermKind::List:
            for (const auto& item : t.items())
                if (term_mentions_any(item, b)) return true;
            return false;
        case TermKind::Quoted:
            return formula_mentions_any(t.quoted_formula(), b);
        default:
            return false;
    }
}

bool formula_mentions_any(const Formula& f, const Bindings& b) {
    for (const auto& name : f.universals())
        if (b.count(name)) return true;
    for (const auto& name : f.existentials())
        if (b.count(name)) return true;
    for (const auto& t : f.triples())
        if (term_mentions_any(t.subject, b) || term_mentions_any(t.predicate, b) ||
            term_mentions_any(t.object, b))
            return true;
    return false;
}

}  // namespace

Term substitute_variables(const Term& t, const Bindings& b) { return subst_term(t, b); }

Formula substitute_variables(const Formula& f, const Bindings& b) {
    if (b.empty()) return f;
    std::vector<Triple> triples;
    triples.reserve(f.triples().size());
    for (const auto& t : f.triples())
        triples.push_back({subst_term(t.subject, b), subst_term(t.predicate, b),
                           subst_term(t.object, b)});
    std::vector<std::string> uni, exi;
    for (const auto& name : f.universals())
        if (!b.count(name)) uni.push_back(name);
    for (const auto& name : f.existentials())
        if (!b.count(name)) exi.push_back(name);
    return Formula(std::move(triples), std::move(uni), std::move(exi));
}

namespace {

Term rewrite_term(const Term& t, const Term& from, const Term& to) {
    if (t == from) return to;
    if (t.kind() == TermKind::List) {
        std::vector<Term> items;
        items.reserve(t.items().size());
        for (const auto& item : t.items()) items.push_back(rewrite_term(item, from, to));
        return Term::list(std::move(items));
    }
    return t;  // quoted formulas are opaque
}

}  // namespace

Formula rewrite_equals(const Formula& f, const Term& from, const Term& to) {
    std::vector<Triple> triples;
    triples.reserve(f.triples().size());
    for (const auto& t : f.triples())
        triples.push_back({rewrite_term(t.subject, from, to),
                           rewrite_term(t.predicate, from, to),
                           rewrite_term(t.object, from, to)});
    return Formula(std::move(triples), f.universals(), f.existentials());
}

namespace {

void collect_names_into(const Formula& f, std::set<std::string>& out,
                        std::set<std::string>* quantified) {
    for (const auto& name : f.universals()) {
        out.insert(name);
        if (quantified) quantified->insert(name);
    }
    for (const auto& name : f.existentials()) {
        out.insert(name);
        if (quantified) quantified->insert(name);
    }
    std::function<void(const Term&)> walk = [&](const Term& t) {
        switch (t.kind()) {
            case TermKind::UniVar:
            case TermKind::ExiVar:
                out.insert(t.text());
                break;
            case TermKind::Blank:
                out.insert(t.text());
                if (quantified) quantified->insert(t.text());
                break;
            case TermKind::List:
                for (const auto& item : t.items()) walk(item);
                break;
            case TermKind::Quoted:
                collect_names_into(t.quoted_formula(), out, quantified);
                break;
            default:
                break;
        }
    };
    for (const auto& t : f.triples()) {
        walk(t.subject);
        walk(t.predicate);
        walk(t.object);
    }
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& m);

Formula rename_formula(const Formula& f, const std::map<std::string, std::string>& m) {
    std::vector<Triple> triples;
    triples.reserve(f.triples().size());
    for (const auto& t : f.triples())
        triples.push_back({rename_term(t.subject, m), rename_term(t.predicate, m),
                           rename_term(t.object, m)});
    auto rename_list = [&](const std::vector<std::string>& names) {
        std::vector<std::string> out;
        out.reserve(names.size());
        for (const auto& name : names) {
            auto it = m.find(name);
            out.push_back(it == m.end() ? name : it->second);
        }
        return out;
    };
    return Formula(std::move(triples), rename_list(f.universals()),
                   rename_list(f.existentials()));
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& m) {
    switch (t.kind()) {
        case TermKind::UniVar: {
            auto it = m.find(t.text());
            return it == m.end() ? t : Term::univar(it->second);
        }
        case TermKind::ExiVar: {
            auto it = m.find(t.text());
            return it == m.end() ? t : Term::exivar(it->second);
        }
        case TermKind::Blank: {
            auto it = m.find(t.text());
            return it == m.end() ? t : Term::blank(it->second);
        }
        case TermKind::List: {
            std::vector<Term> items;
            items.reserve(t.items().size());
            for (const auto& item : t.items()) items.push_back(rename_term(item, m));
            return Term::list(std::move(items));
        }
        case TermKind::Quoted:
            return Term::quoted(rename_formula(t.quoted_formula(), m));
        default:
            return t;
    }
}

}  // namespace

std::string fresh_name(const std::string& stem, std::set<std::string>& reserved) {
    for (long long k = 0;; ++k) {
        std::string candidate = stem + std::to_string(k);
        if (reserved.insert(candidate).second) return candidate;
    }
}

Formula rename_apart(const Formula& f, std::set<std::string>& reserved) {
    std::set<std::string> names, quantified;
    collect_names_into(f, names, &quantified);
    std::set<std::string> avoid = reserved;
    avoid.insert(names.begin(), names.end());
    std::map<std::string, std::string> m;
    for (const auto& name : quantified) {
        bool blank = name.rfind("_:", 0) == 0;
        std::string next = fresh_name(blank ? "_:g" : "u", avoid);
        m[name] = next;
        reserved.insert(next);
    }
    if (m.empty()) return f;
    return rename_formula(f, m);
}

Formula conjoin(const std::vector<Formula>& fs) {
    std::set<std::string> reserved;
    for (const auto& f : fs) {
        std::set<std::string> names;
        collect_names_into(f, names, nullptr);
        reserved.insert(names.begin(), names.end());
    }
    std::vector<Triple> triples;
    std::vector<std::string> universals, existentials;
    for (const auto& f : fs) {
        // Blanks (anywhere) and root existentials are kept apart; universals
        // merge by name.
        std::set<std::string> names, quantified;
        collect_names_into(f, names, &quantified);
        std::map<std::string, std::string> m;
        for (const auto& name : quantified) {
            if (name.rfind("_:", 0) == 0)
                m[name] = fresh_name("_:g", reserved);
            else if (f.declares_existential(name))
                m[name] = fresh_name("e", reserved);
        }
        Formula g = m.empty() ? f : rename_formula(f, m);
        for (const auto& t : g.triples()) triples.push_back(t);
        for (const auto& name : g.universals()) universals.push_back(name);
        for (const auto& name : g.existentials()) existentials.push_back(name);
    }
    return Formula(std::move(triples), std::move(universals), std::move(existentials));
}

std::set<std::string> root_existential_names(const Formula& f) {
    TreeBuilder builder;
    builder.build_node(f, -1);
    SigTree& tree = builder.tree;
    compute_lcas(tree);
    std::set<std::string> out;
    for (const auto& inst : tree.insts) {
        if (inst.cls != 1) continue;
        if (inst.is_blank) {
            if (inst.lca == 0) out.insert(inst.name);
        } else if (inst.decl_node == 0) {
            out.insert(inst.name);
        }
    }
    return out;
}

bool mentions_name(const Formula& f, const std::string& name) {
    std::set<std::string> names;
    collect_names_into(f, names, nullptr);
    return names.count(name) > 0;
}

std::set<std::string> all_names(const Formula& f) {
    std::set<std::string> names;
    collect_names_into(f, names, nullptr);
    return names;
}

}  // namespace n3
