#pragma once

#include "n3/term.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace n3 {

struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int column = 1;
};

enum class TokenKind {
    IriRef,     // <...>, text holds the body
    QName,      // prefix/local filled; text holds original spelling
    Bareword,   // bare name, meaning depends on keyword state
    Variable,   // ?name, text holds the name
    BlankLabel, // _:label, text holds the label
    String,     // text holds the decoded value
    Integer,
    Decimal,
    Double,
    Punct,      // one of { } [ ] ( ) ; , . = => ^^
    AtWord,     // @word, text holds the word (directives, booleans, language tags)
    Eof,
};

struct Token {
    TokenKind kind = TokenKind::Eof;
    std::string text;
    std::string prefix;
    std::string local;
    SourceSpan span;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, SourceSpan span, const std::string& source);
    const SourceSpan& span() const { return span_; }
    const std::string& source() const { return source_; }
    const std::string& message() const { return message_; }

private:
    SourceSpan span_;
    std::string source_;
    std::string message_;
};

std::vector<Token> tokenize(const std::string& text, const std::string& source_name = "");

struct ParseResult {
    Formula formula;
    std::map<std::string, std::string> prefixes;
    std::string base;
};

// Parses one document. Relative IRIs resolve against base_iri; source_name is
// used in diagnostics.
ParseResult parse_document_full(const std::string& text, const std::string& base_iri,
                                const std::string& source_name = "");
Formula parse_document(const std::string& text, const std::string& base_iri,
                       const std::string& source_name = "");

// Expands a prefix:local pair against a prefix map. Throws std::runtime_error
// when the prefix is undeclared.
std::string resolve_qname(const std::map<std::string, std::string>& prefixes,
                          const std::string& prefix, const std::string& local);

// RFC 3986 reference resolution (merge + dot-segment removal).
std::string resolve_iri(const std::string& base, const std::string& ref);

bool iri_is_absolute(const std::string& iri);

}
