#include "n3/parser.hpp"
#include "n3/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

namespace n3 {

namespace {

std::string format_error(const std::string& message, const SourceSpan& span,
                         const std::string& source) {
    std::string where = source.empty() ? "input" : source;
    return where + ":" + std::to_string(span.line) + ":" + std::to_string(span.column) +
           ": " + message;
}

}  // namespace

ParseError::ParseError(const std::string& message, SourceSpan span, const std::string& source)
    : std::runtime_error(format_error(message, span, source)),
      span_(span),
      source_(source),
      message_(message) {}

// --- IRI handling ---------------------------------------------------------

namespace {

struct IriParts {
    std::optional<std::string> scheme;
    std::optional<std::string> authority;
    std::string path;
    std::optional<std::string> query;
    std::optional<std::string> fragment;
};

IriParts split_iri(const std::string& s) {
    IriParts p;
    std::size_t i = 0;
    // scheme
    std::size_t colon = s.find(':');
    if (colon != std::string::npos && colon > 0) {
        bool ok = std::isalpha(static_cast<unsigned char>(s[0])) != 0;
        for (std::size_t k = 1; ok && k < colon; ++k) {
            char c = s[k];
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
                ok = false;
        }
        std::size_t stop = s.find_first_of("/?#");
        if (ok && (stop == std::string::npos || colon < stop)) {
            p.scheme = s.substr(0, colon);
            i = colon + 1;
        }
    }
    if (s.compare(i, 2, "//") == 0) {
        std::size_t end = s.find_first_of("/?#", i + 2);
        if (end == std::string::npos) end = s.size();
        p.authority = s.substr(i + 2, end - i - 2);
        i = end;
    }
    std::size_t qpos = s.find('?', i);
    std::size_t hpos = s.find('#', i);
    std::size_t path_end = std::min(qpos == std::string::npos ? s.size() : qpos,
                                    hpos == std::string::npos ? s.size() : hpos);
    p.path = s.substr(i, path_end - i);
    if (qpos != std::string::npos && (hpos == std::string::npos || qpos < hpos)) {
        std::size_t qend = hpos == std::string::npos ? s.size() : hpos;
        p.query = s.substr(qpos + 1, qend - qpos - 1);
    }
    if (hpos != std::string::npos) p.fragment = s.substr(hpos + 1);
    return p;
}

std::string merge_paths(const IriParts& base, const std::string& ref_path) {
    if (base.authority && base.path.empty()) return "/" + ref_path;
    std::size_t slash = base.path.rfind('/');
    if (slash == std::string::npos) return ref_path;
    return base.path.substr(0, slash + 1) + ref_path;
}

std::string remove_dot_segments(std::string input) {
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0)
            input.erase(0, 3);
        else if (input.rfind("./", 0) == 0)
            input.erase(0, 2);
        else if (input.rfind("/./", 0) == 0)
            input.erase(0, 2);
        else if (input == "/.")
            input = "/";
        else if (input.rfind("/../", 0) == 0) {
            input.erase(0, 3);
            std::size_t slash = output.rfind('/');
            output.erase(slash == std::string::npos ? 0 : slash);
        } else if (input == "/..") {
            input = "/";
            std::size_t slash = output.rfind('/');
            output.erase(slash == std::string::npos ? 0 : slash);
        } else if (input == "." || input == "..")
            input.clear();
        else {
            std::size_t next = input.find('/', input[0] == '/' ? 1 : 0);
            if (next == std::string::npos) next = input.size();
            output += input.substr(0, next);
            input.erase(0, next);
        }
    }
    return output;
}

std::string recompose(const IriParts& p) {
    std::string out;
    if (p.scheme) out += *p.scheme + ":";
    if (p.authority) out += "//" + *p.authority;
    out += p.path;
    if (p.query) out += "?" + *p.query;
    if (p.fragment) out += "#" + *p.fragment;
    return out;
}

}  // namespace

bool iri_is_absolute(const std::string& iri) {
    return split_iri(iri).scheme.has_value();
}

std::string resolve_iri(const std::string& base, const std::string& ref) {
    IriParts r = split_iri(ref);
    if (r.scheme) {
        r.path = remove_dot_segments(r.path);
        return recompose(r);
    }
    IriParts b = split_iri(base);
    IriParts t;
    t.scheme = b.scheme;
    if (r.authority) {
        t.authority = r.authority;
        t.path = remove_dot_segments(r.path);
        t.query = r.query;
    } else {
        t.authority = b.authority;
        if (r.path.empty()) {
            t.path = b.path;
            t.query = r.query ? r.query : b.query;
        } else {
            t.path = r.path[0] == '/' ? remove_dot_segments(r.path)
                                      : remove_dot_segments(merge_paths(b, r.path));
            t.query = r.query;
        }
    }
    t.fragment = r.fragment;
    return recompose(t);
}

std::string resolve_qname(const std::map<std::string, std::string>& prefixes,
                          const std::string& prefix, const std::string& local) {
    auto it = prefixes.find(prefix);
    if (it == prefixes.end())
        throw std::runtime_error(prefix.empty() ? "default prefix is not declared"
                                                : "prefix \"" + prefix + ":\" is not declared");
    return it->second + local;
}

// --- Tokenizer --------------------------------------------------------------

namespace {

bool name_start_char(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           static_cast<unsigned char>(c) >= 0x80;
}

void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

struct Lexer {
    const std::string& text;
    const std::string& source;
    std::size_t pos = 0;
    int line = 1;
    int column = 1;

    Lexer(const std::string& t, const std::string& s) : text(t), source(s) {}

    [[noreturn]] void fail(const std::string& message, SourceSpan span) {
        throw ParseError(message, span, source);
    }

    SourceSpan here() const { return {pos, pos, line, column}; }

    char peek(std::size_t ahead = 0) const {
        return pos + ahead < text.size() ? text[pos + ahead] : '\0';
    }

    void advance() {
        if (pos < text.size()) {
            if (text[pos] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
            ++pos;
        }
    }

    void skip_trivia() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    // Scans a name, not consuming a trailing run of dots (statement ends).
    std::string scan_name() {
        std::size_t start = pos;
        while (pos < text.size() && (name_char(text[pos]) || text[pos] == '.')) advance();
        std::size_t end = pos;
        while (end > start && text[end - 1] == '.') --end;
        while (pos > end) {
            --pos;
            --column;  // dots never contain newlines
        }
        return text.substr(start, end - start);
    }

    std::string scan_string(SourceSpan start_span) {
        std::string value;
        bool long_string = false;
        advance();  // opening quote
        if (peek() == '"' && peek(1) == '"') {
            long_string = true;
            advance();
            advance();
        } else if (peek() == '"') {
            advance();
            return value;  // empty short string
        }
        while (true) {
            if (pos >= text.size()) fail("unterminated string literal", start_span);
            char c = text[pos];
            if (c == '"') {
                if (!long_string) {
                    advance();
                    return value;
                }
                if (peek(1) == '"' && peek(2) == '"') {
                    advance();
                    advance();
                    advance();
                    return value;
                }
                value += c;
                advance();
                continue;
            }
            if (c == '\n' && !long_string) fail("newline in string literal", start_span);
            if (c == '\\') {
                advance();
                char e = peek();
                switch (e) {
                    case '"': value += '"'; advance(); break;
                    case '\\': value += '\\'; advance(); break;
                    case 'n': value += '\n'; advance(); break;
                    case 't': value += '\t'; advance(); break;
                    case 'r': value += '\r'; advance(); break;
                    case 'u':
                    case 'U': {
                        int digits = e == 'u' ? 4 : 8;
                        advance();
                        unsigned long cp = 0;
                        for (int i = 0; i < digits; ++i) {
                            char h = peek();
                            if (!std::isxdigit(static_cast<unsigned char>(h)))
                                fail("bad \\u escape in string literal", here());
                            cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(h))
                                                ? static_cast<unsigned long>(h - '0')
                                                : static_cast<unsigned long>(
                                                      std::tolower(h) - 'a' + 10));
                            advance();
                        }
                        append_utf8(value, cp);
                        break;
                    }
                    default:
                        fail(std::string("unknown escape \"\\") + e + "\" in string literal",
                             here());
                }
                continue;
            }
            value += c;
            advance();
        }
    }

    Token scan_number(SourceSpan start_span) {
        std::size_t start = pos;
        if (peek() == '+' || peek() == '-') advance();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected digits after sign", start_span);
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        bool decimal = false, exponent = false;
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            decimal = true;
            advance();
            while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            char c1 = peek(1);
            char c2 = peek(2);
            if (std::isdigit(static_cast<unsigned char>(c1)) ||
                ((c1 == '+' || c1 == '-') && std::isdigit(static_cast<unsigned char>(c2)))) {
                exponent = true;
                advance();
                if (peek() == '+' || peek() == '-') advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            }
        }
        Token t;
        t.kind = exponent ? TokenKind::Double : (decimal ? TokenKind::Decimal : TokenKind::Integer);
        t.text = text.substr(start, pos - start);
        t.span = start_span;
        t.span.end = pos;
        return t;
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            SourceSpan span = here();
            if (pos >= text.size()) {
                Token t;
                t.kind = TokenKind::Eof;
                t.span = span;
                out.push_back(t);
                return out;
            }
            char c = text[pos];
            Token t;
            t.span = span;
            if (c == '<') {
                advance();
                std::size_t start = pos;
                while (pos < text.size() && text[pos] != '>' && text[pos] != '\n') advance();
                if (pos >= text.size() || text[pos] != '>')
                    fail("unterminated IRI reference", span);
                t.kind = TokenKind::IriRef;
                t.text = text.substr(start, pos - start);
                advance();
            } else if (c == '"') {
                t.kind = TokenKind::String;
                t.text = scan_string(span);
            } else if (c == '?') {
                advance();
                if (!name_start_char(peek()) && !std::isdigit(static_cast<unsigned char>(peek())))
                    fail("expected variable name after \"?\"", span);
                t.kind = TokenKind::Variable;
                t.text = scan_name();
            } else if (c == '_' && peek(1) == ':') {
                advance();
                advance();
                t.kind = TokenKind::BlankLabel;
                t.text = scan_name();
                if (t.text.empty()) fail("expected label after \"_:\"", span);
            } else if (c == '@') {
                advance();
                if (!std::isalpha(static_cast<unsigned char>(peek())))
                    fail("expected word after \"@\"", span);
                std::size_t start = pos;
                while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')
                    advance();
                t.kind = TokenKind::AtWord;
                t.text = text.substr(start, pos - start);
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       ((c == '+' || c == '-') &&
                        std::isdigit(static_cast<unsigned char>(peek(1))))) {
                t = scan_number(span);
            } else if (c == '=') {
                advance();
                if (peek() == '>') {
                    advance();
                    t.kind = TokenKind::Punct;
                    t.text = "=>";
                } else {
                    t.kind = TokenKind::Punct;
                    t.text = "=";
                }
            } else if (c == '^') {
                advance();
                if (peek() != '^') fail("single \"^\" is not supported", span);
                advance();
                t.kind = TokenKind::Punct;
                t.text = "^^";
            } else if (c == '{' || c == '}' || c == '[' || c == ']' || c == '(' || c == ')' ||
                       c == ';' || c == ',' || c == '.') {
                advance();
                t.kind = TokenKind::Punct;
                t.text = std::string(1, c);
            } else if (c == ':' || name_start_char(c)) {
                std::string first = c == ':' ? std::string() : scan_name();
                if (peek() == ':') {
                    advance();
                    t.kind = TokenKind::QName;
                    t.prefix = first;
                    t.local = (name_char(peek()) || peek() == '.') ? scan_name() : std::string();
                    t.text = t.prefix + ":" + t.local;
                } else {
                    if (first.empty()) fail("unexpected character", span);
                    t.kind = TokenKind::Bareword;
                    t.text = first;
                }
            } else {
                fail(std::string("unexpected character \"") + c + "\"", span);
            }
            t.span.end = pos;
            out.push_back(std::move(t));
        }
    }
};

}  // namespace

std::vector<Token> tokenize(const std::string& text, const std::string& source_name) {
    Lexer lexer(text, source_name);
    return lexer.run();
}

// --- Parser -----------------------------------------------------------------

namespace {

struct FormulaScope {
    std::vector<Triple> triples;
    std::set<std::string> universals;
    std::set<std::string> existentials;
    // IRIs declared as quantified symbols in this scope (via @forAll/@forSome).
    std::map<std::string, TermKind> var_symbols;
};

struct Parser {
    const std::vector<Token>& toks;
    const std::string& source;
    std::size_t pos = 0;
    std::map<std::string, std::string> prefixes;
    std::string base;
    std::optional<std::set<std::string>> keywords;  // nullopt: a/is/of are bare
    std::vector<FormulaScope> stack;
    long blank_counter = 0;

    Parser(const std::vector<Token>& t, const std::string& s, std::string base_iri)
        : toks(t), source(s), base(std::move(base_iri)) {}

    [[noreturn]] void fail(const std::string& message, const Token& at) {
        throw ParseError(message, at.span, source);
    }

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos + ahead, toks.size() - 1);
        return toks[i];
    }

    const Token& take() {
        const Token& t = toks[std::min(pos, toks.size() - 1)];
        if (pos < toks.size() - 1) ++pos;
        return t;
    }

    bool at_punct(const char* p, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == TokenKind::Punct && t.text == p;
    }

    void expect_punct(const char* p, const char* what) {
        if (!at_punct(p)) fail(std::string("expected \"") + p + "\" " + what, peek());
        take();
    }

    bool keyword_active(const std::string& word) const {
        if (keywords.has_value()) return keywords->count(word) > 0;
        return word == "a" || word == "is" || word == "of";
    }

    Term fresh_blank() {
        return Term::blank("_:#" + std::to_string(blank_counter++));
    }

    // Resolves an IRI that may have been declared as a quantified symbol.
    Term symbol_term(const std::string& iri) {
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            auto f = it->var_symbols.find(iri);
            if (f != it->var_symbols.end())
                return f->second == TermKind::UniVar ? Term::univar(iri) : Term::exivar(iri);
        }
        return Term::iri(iri);
    }

    std::string resolve_ref(const Token& t) {
        std::string iri = resolve_iri(base, t.text);
        if (!iri_is_absolute(iri))
            fail("cannot resolve relative IRI <" + t.text + "> without an absolute base", t);
        return iri;
    }

    std::string qname_iri(const Token& t) {
        try {
            return resolve_qname(prefixes, t.prefix, t.local);
        } catch (const std::runtime_error& e) {
            fail(e.what(), t);
        }
    }

    void declare_question_var(const std::string& name) {
        for (const auto& scope : stack)
            if (scope.universals.count(name)) return;
        std::size_t depth = stack.size() - 1;
        std::size_t target = depth == 0 ? 0 : depth - 1;
        stack[target].universals.insert(name);
    }

    void emit(Term s, Term p, Term o) {
        stack.back().triples.push_back({std::move(s), std::move(p), std::move(o)});
    }

    Formula parse_document() {
        stack.emplace_back();
        while (peek().kind != TokenKind::Eof) parse_statement();
        return pop_formula();
    }

    Formula pop_formula() {
        FormulaScope scope = std::move(stack.back());
        stack.pop_back();
        return Formula(std::move(scope.triples),
                       std::vector<std::string>(scope.universals.begin(), scope.universals.end()),
                       std::vector<std::string>(scope.existentials.begin(),
                                                scope.existentials.end()));
    }

    void end_statement() {
        if (at_punct(".")) {
            take();
            return;
        }
        // The final dot is optional at end of input and before "}".
        if (peek().kind == TokenKind::Eof || at_punct("}")) return;
        fail("expected \".\" after statement", peek());
    }

    void parse_statement() {
        const Token& t = peek();
        if (t.kind == TokenKind::AtWord && is_directive(t.text)) {
            parse_directive();
            return;
        }
        Term subject = parse_term();
        if (!at_punct(".") && !at_punct("}") && peek().kind != TokenKind::Eof)
            parse_property_list(subject);
        end_statement();
    }

    static bool is_directive(const std::string& word) {
        return word == "prefix" || word == "base" || word == "keywords" || word == "forAll" ||
               word == "forSome";
    }

    void parse_directive() {
        const Token& d = take();
        if (d.text == "prefix") {
            const Token& name = take();
            if (name.kind != TokenKind::QName || !name.local.empty())
                fail("expected prefix name ending in \":\" after @prefix", name);
            const Token& iri = take();
            if (iri.kind != TokenKind::IriRef) fail("expected IRI after prefix name", iri);
            prefixes[name.prefix] = resolve_ref(iri);
        } else if (d.text == "base") {
            const Token& iri = take();
            if (iri.kind != TokenKind::IriRef) fail("expected IRI after @base", iri);
            base = resolve_ref(iri);
        } else if (d.text == "keywords") {
            std::set<std::string> words;
            static const std::set<std::string> allowed = {"a", "is", "of", "true", "false"};
            while (peek().kind == TokenKind::Bareword) {
                const Token& w = take();
                if (!allowed.count(w.text))
                    fail("unsupported keyword \"" + w.text + "\" in @keywords", w);
                words.insert(w.text);
                if (at_punct(","))
                    take();
                else
                    break;
            }
            keywords = std::move(words);
        } else {  // forAll / forSome
            bool universal = d.text == "forAll";
            while (true) {
                const Token& s = take();
                std::string iri;
                if (s.kind == TokenKind::IriRef)
                    iri = resolve_ref(s);
                else if (s.kind == TokenKind::QName)
                    iri = qname_iri(s);
                else if (s.kind == TokenKind::Bareword && keywords.has_value())
                    iri = bareword_iri(s);
                else
                    fail(std::string("expected symbol after @") + d.text, s);
                if (universal) {
                    stack.back().universals.insert(iri);
                    stack.back().var_symbols[iri] = TermKind::UniVar;
                } else {
                    stack.back().existentials.insert(iri);
                    stack.back().var_symbols[iri] = TermKind::ExiVar;
                }
                if (at_punct(","))
                    take();
                else
                    break;
            }
        }
        end_statement();
    }

    std::string bareword_iri(const Token& t) {
        try {
            return resolve_qname(prefixes, "", t.text);
        } catch (const std::runtime_error& e) {
            fail(std::string(e.what()) +
                     " (bare names need a default prefix under @keywords)",
                 t);
        }
    }

    void parse_property_list(const Term& subject) {
        while (true) {
            bool reversed = false;
            Term predicate = parse_verb(reversed);
            while (true) {
                Term object = parse_term();
                if (reversed)
                    emit(object, predicate, subject);
                else
                    emit(subject, predicate, object);
                if (at_punct(","))
                    take();
                else
                    break;
            }
            if (at_punct(";")) {
                take();
                // Trailing semicolon before the statement end is tolerated.
                if (at_punct(".") || at_punct("}") || at_punct("]") ||
                    peek().kind == TokenKind::Eof)
                    return;
                continue;
            }
            return;
        }
    }

    Term parse_verb(bool& reversed) {
        const Token& t = peek();
        if (t.kind == TokenKind::Punct && t.text == "=") {
            take();
            return Term::iri(vocab::owl_same_as);
        }
        if (t.kind == TokenKind::Punct && t.text == "=>") {
            take();
            return Term::iri(vocab::log_implies);
        }
        if (t.kind == TokenKind::Bareword && keyword_active(t.text)) {
            if (t.text == "a") {
                take();
                return Term::iri(vocab::rdf_type);
            }
            if (t.text == "is") {
                take();
                Term p = parse_term();
                const Token& of = peek();
                if (of.kind != TokenKind::Bareword || !keyword_active("of") || of.text != "of")
                    fail("expected \"of\" after \"is <expression>\"", of);
                take();
                reversed = true;
                return p;
            }
            fail("keyword \"" + t.text + "\" cannot start a predicate", t);
        }
        return parse_term();
    }

    Term parse_term() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::IriRef: {
                take();
                return symbol_term(resolve_ref(t));
            }
            case TokenKind::QName: {
                take();
                return symbol_term(qname_iri(t));
            }
            case TokenKind::Bareword: {
                if (!keywords.has_value())
                    fail("bare name \"" + t.text +
                             "\" needs @keywords (only a/is/of may appear bare)",
                         t);
                if (keywords->count(t.text)) {
                    if (t.text == "true" || t.text == "false") {
                        take();
                        return Term::boolean(t.text == "true");
                    }
                    fail("keyword \"" + t.text + "\" cannot be used as a term", t);
                }
                take();
                return symbol_term(bareword_iri(t));
            }
            case TokenKind::Variable: {
                take();
                declare_question_var(t.text);
                return Term::univar(t.text);
            }
            case TokenKind::BlankLabel: {
                take();
                return Term::blank("_:" + t.text);
            }
            case TokenKind::String: {
                take();
                if (peek().kind == TokenKind::AtWord && !is_directive(peek().text) &&
                    peek().text != "true" && peek().text != "false") {
                    const Token& lang = take();
                    return Term::lang_literal(t.text, lang.text);
                }
                if (at_punct("^^")) {
                    take();
                    const Token& dt = take();
                    if (dt.kind == TokenKind::IriRef)
                        return Term::literal(t.text, resolve_ref(dt));
                    if (dt.kind == TokenKind::QName)
                        return Term::literal(t.text, qname_iri(dt));
                    fail("expected datatype IRI after \"^^\"", dt);
                }
                return Term::literal(t.text);
            }
            case TokenKind::Integer:
                take();
                return Term::literal(t.text, vocab::xsd_integer);
            case TokenKind::Decimal:
                take();
                return Term::literal(t.text, vocab::xsd_decimal);
            case TokenKind::Double:
                take();
                return Term::literal(t.text, vocab::xsd_double);
            case TokenKind::AtWord: {
                if (t.text == "true" || t.text == "false") {
                    take();
                    return Term::boolean(t.text == "true");
                }
                fail("directive @" + t.text + " cannot appear inside a statement", t);
            }
            case TokenKind::Punct: {
                if (t.text == "[") {
                    take();
                    Term node = fresh_blank();
                    if (!at_punct("]")) parse_property_list(node);
                    expect_punct("]", "to close blank node");
                    return node;
                }
                if (t.text == "(") {
                    take();
                    std::vector<Term> items;
                    while (!at_punct(")")) {
                        if (peek().kind == TokenKind::Eof)
                            fail("unterminated list", t);
                        items.push_back(parse_term());
                    }
                    take();
                    return Term::list(std::move(items));
                }
                if (t.text == "{") {
                    take();
                    stack.emplace_back();
                    while (!at_punct("}")) {
                        if (peek().kind == TokenKind::Eof)
                            fail("unterminated formula", t);
                        parse_statement();
                    }
                    take();
                    return Term::quoted(pop_formula());
                }
                fail("unexpected \"" + t.text + "\"", t);
            }
            case TokenKind::Eof:
                fail("unexpected end of input", t);
        }
        fail("unexpected token", t);
    }
};

}  // namespace

ParseResult parse_document_full(const std::string& text, const std::string& base_iri,
                                const std::string& source_name) {
    std::vector<Token> toks = tokenize(text, source_name);
    Parser parser(toks, source_name, base_iri);
    ParseResult result;
    result.formula = parser.parse_document();
    result.prefixes = std::move(parser.prefixes);
    result.base = std::move(parser.base);
    return result;
}

Formula parse_document(const std::string& text, const std::string& base_iri,
                       const std::string& source_name) {
    return parse_document_full(text, base_iri, source_name).formula;
}

}  // namespace n3
