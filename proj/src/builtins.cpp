#include "n3/builtins.hpp"
#include "n3/engine.hpp"
#include "n3/parser.hpp"
#include "n3/serializer.hpp"
#include "n3/vocab.hpp"
#include "n3/web.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cerrno>
#include <climits>
#include <cstring>
#include <ctime>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <string>

namespace n3 {

namespace {

bool unbound_var(const Term& t) {
    return t.kind() == TermKind::UniVar || t.kind() == TermKind::ExiVar ||
           t.kind() == TermKind::Blank;
}

bool term_is_ground(const Term& t) {
    switch (t.kind()) {
        case TermKind::UniVar:
        case TermKind::ExiVar:
            return false;
        case TermKind::List:
            for (const auto& item : t.items())
                if (!term_is_ground(item)) return false;
            return true;
        default:
            return true;
    }
}

EvalResult bind_to(const Term& target, const Term& value) {
    if (unbound_var(target)) return EvalResult::satisfied({Bindings{{target.text(), value}}});
    return target == value ? EvalResult::satisfied() : EvalResult::unsatisfied();
}

// ---- numerics ------------------------------------------------------------

enum class NumForm { Int, Dec, Dbl };

struct Num {
    NumForm form = NumForm::Int;
    long long i = 0;
    double d = 0.0;

    double value() const { return form == NumForm::Int ? static_cast<double>(i) : d; }
};

bool parse_num(const Term& t, Num& out) {
    if (!t.is_literal() || !t.language().empty()) return false;
    const std::string& lex = t.text();
    const std::string& dt = t.datatype();
    const char* begin = lex.c_str();
    char* end = nullptr;
    if (dt == vocab::xsd_integer ||
        (dt.empty() && lex.find_first_of(".eE") == std::string::npos)) {
        errno = 0;
        long long v = std::strtoll(begin, &end, 10);
        if (end == begin || *end != '\0' || errno == ERANGE) return false;
        out.form = NumForm::Int;
        out.i = v;
        return true;
    }
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) return false;
    out.d = v;
    if (dt == vocab::xsd_double || lex.find_first_of("eE") != std::string::npos)
        out.form = NumForm::Dbl;
    else
        out.form = NumForm::Dec;
    return true;
}

NumForm widest(NumForm a, NumForm b) { return a > b ? a : b; }

std::string format_double_shortest(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

Term num_term(NumForm form, double d, long long i) {
    switch (form) {
        case NumForm::Int:
            return Term::literal(std::to_string(i), vocab::xsd_integer);
        case NumForm::Dec: {
            std::string s = format_double_shortest(d);
            if (s.find_first_of("eE") != std::string::npos) {
                char buf[512];
                std::snprintf(buf, sizeof buf, "%.15f", d);
                s = buf;
                while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.')
                    s.pop_back();
            } else if (s.find('.') == std::string::npos) {
                s += ".0";
            }
            return Term::literal(s, vocab::xsd_decimal);
        }
        case NumForm::Dbl: {
            std::string s = format_double_shortest(d);
            if (s.find_first_of("eE") == std::string::npos) s += "e0";
            return Term::literal(s, vocab::xsd_double);
        }
    }
    return Term::literal("0", vocab::xsd_integer);
}

EvalResult bind_or_check_num(const Term& target, NumForm form, double d, long long i) {
    if (!std::isfinite(d) && form != NumForm::Int)
        return EvalResult::unsatisfied("non-finite result");
    if (unbound_var(target))
        return EvalResult::satisfied({Bindings{{target.text(), num_term(form, d, i)}}});
    Num given;
    if (!parse_num(target, given)) return EvalResult::not_evaluable("non-numeric operand");
    double want = form == NumForm::Int ? static_cast<double>(i) : d;
    bool eq = (form == NumForm::Int && given.form == NumForm::Int) ? given.i == i
                                                                   : given.value() == want;
    return eq ? EvalResult::satisfied() : EvalResult::unsatisfied();
}

// ---- math ----------------------------------------------------------------

EvalResult eval_math(const std::string& op, const Term& s, const Term& o) {
    static const std::set<std::string> comparisons = {
        "lessThan", "greaterThan", "notLessThan", "notGreaterThan", "equalTo", "notEqualTo"};
    if (comparisons.count(op)) {
        Num a, b;
        if (!parse_num(s, a) || !parse_num(o, b))
            return EvalResult::not_evaluable("needs two numeric literals");
        bool intish = a.form == NumForm::Int && b.form == NumForm::Int;
        int cmp;
        if (intish)
            cmp = a.i < b.i ? -1 : a.i > b.i ? 1 : 0;
        else
            cmp = a.value() < b.value() ? -1 : a.value() > b.value() ? 1 : 0;
        bool ok = op == "lessThan"         ? cmp < 0
                  : op == "greaterThan"    ? cmp > 0
                  : op == "notLessThan"    ? cmp >= 0
                  : op == "notGreaterThan" ? cmp <= 0
                  : op == "equalTo"        ? cmp == 0
                                           : cmp != 0;
        return ok ? EvalResult::satisfied() : EvalResult::unsatisfied();
    }

    if (op == "sum" || op == "difference" || op == "product" || op == "quotient") {
        if (!s.is_list() || !term_is_ground(s))
            return EvalResult::not_evaluable("needs a ground list subject");
        std::vector<Num> args;
        for (const auto& item : s.items()) {
            Num n;
            if (!parse_num(item, n)) return EvalResult::not_evaluable("non-numeric operand");
            args.push_back(n);
        }
        if ((op == "difference" || op == "quotient") && args.size() != 2)
            return EvalResult::not_evaluable(op + " needs exactly two operands");
        NumForm form = NumForm::Int;
        for (const auto& n : args) form = widest(form, n.form);
        if (op == "quotient") {
            if (args[1].value() == 0.0) return EvalResult::unsatisfied("quotient by zero");
            if (form == NumForm::Int && args[1].i != 0 && args[0].i % args[1].i == 0)
                return bind_or_check_num(o, NumForm::Int, 0, args[0].i / args[1].i);
            return bind_or_check_num(o, form == NumForm::Int ? NumForm::Dec : form,
                                     args[0].value() / args[1].value(), 0);
        }
        if (form == NumForm::Int) {
            long long acc = op == "product" ? 1 : 0;
            bool overflow = false;
            if (op == "difference") {
                overflow = __builtin_sub_overflow(args[0].i, args[1].i, &acc);
            } else {
                for (const auto& n : args) {
                    long long next;
                    overflow = op == "product"
                                   ? __builtin_mul_overflow(acc, n.i, &next)
                                   : __builtin_add_overflow(acc, n.i, &next);
                    if (overflow) break;
                    acc = next;
                }
            }
            if (!overflow) return bind_or_check_num(o, NumForm::Int, 0, acc);
            form = NumForm::Dbl;
        }
        double acc = op == "product" ? 1.0 : 0.0;
        if (op == "difference") {
            acc = args[0].value() - args[1].value();
        } else {
            for (const auto& n : args) acc = op == "product" ? acc * n.value() : acc + n.value();
        }
        return bind_or_check_num(o, form, acc, 0);
    }

    if (op == "negation") {
        Num n;
        if (parse_num(s, n)) {
            if (n.form == NumForm::Int && n.i != LLONG_MIN)
                return bind_or_check_num(o, NumForm::Int, 0, -n.i);
            return bind_or_check_num(o, n.form, -n.value(), 0);
        }
        if (parse_num(o, n)) {
            if (n.form == NumForm::Int && n.i != LLONG_MIN)
                return bind_or_check_num(s, NumForm::Int, 0, -n.i);
            return bind_or_check_num(s, n.form, -n.value(), 0);
        }
        return EvalResult::not_evaluable("needs a numeric literal on either side");
    }

    if (op == "absoluteValue") {
        Num n;
        if (!parse_num(s, n)) return EvalResult::not_evaluable("needs a numeric subject");
        if (n.form == NumForm::Int && n.i != LLONG_MIN)
            return bind_or_check_num(o, NumForm::Int, 0, n.i < 0 ? -n.i : n.i);
        return bind_or_check_num(o, n.form, std::fabs(n.value()), 0);
    }

    if (op == "cos") {
        Num n;
        if (!parse_num(s, n)) return EvalResult::not_evaluable("needs a numeric subject");
        return bind_or_check_num(o, NumForm::Dbl, std::cos(n.value()), 0);
    }

    return EvalResult::not_evaluable("unknown math operation");
}

// ---- strings ---------------------------------------------------------------

bool string_arg(const Term& t, std::string& out) {
    if (!t.is_literal()) return false;
    out = t.text();
    return true;
}

EvalResult eval_string(const std::string& op, const Term& s, const Term& o) {
    if (op == "concatenation") {
        if (!s.is_list() || !term_is_ground(s))
            return EvalResult::not_evaluable("needs a ground list subject");
        std::string acc;
        for (const auto& item : s.items()) {
            std::string part;
            if (!string_arg(item, part)) return EvalResult::not_evaluable("non-literal operand");
            acc += part;
        }
        return bind_to(o, Term::literal(acc));
    }

    if (op == "scrape") {
        if (!s.is_list() || s.items().size() != 2 || !term_is_ground(s))
            return EvalResult::not_evaluable("needs a (text pattern) subject");
        std::string text, pattern;
        if (!string_arg(s.items()[0], text) || !string_arg(s.items()[1], pattern))
            return EvalResult::not_evaluable("non-literal operand");
        try {
            std::regex re(pattern, std::regex::ECMAScript);
            std::smatch m;
            if (!std::regex_search(text, m, re) || m.size() < 2 || !m[1].matched)
                return EvalResult::unsatisfied("no capture matched");
            return bind_to(o, Term::literal(m[1].str()));
        } catch (const std::regex_error& e) {
            return EvalResult::not_evaluable(std::string("bad pattern: ") + e.what());
        }
    }

    std::string a, b;
    if (!string_arg(s, a) || !string_arg(o, b))
        return EvalResult::not_evaluable("needs two string literals");
    if (op == "contains")
        return a.find(b) != std::string::npos ? EvalResult::satisfied()
                                              : EvalResult::unsatisfied();
    if (op == "startsWith")
        return a.compare(0, b.size(), b) == 0 ? EvalResult::satisfied()
                                              : EvalResult::unsatisfied();
    if (op == "endsWith")
        return a.size() >= b.size() && a.compare(a.size() - b.size(), b.size(), b) == 0
                   ? EvalResult::satisfied()
                   : EvalResult::unsatisfied();
    if (op == "matches") {
        try {
            std::regex re(b, std::regex::ECMAScript);
            return std::regex_match(a, re) ? EvalResult::satisfied()
                                           : EvalResult::unsatisfied();
        } catch (const std::regex_error& e) {
            return EvalResult::not_evaluable(std::string("bad pattern: ") + e.what());
        }
    }
    return EvalResult::not_evaluable("unknown string operation");
}

// ---- lists -----------------------------------------------------------------

EvalResult eval_list(const std::string& op, const Term& s, const Term& o) {
    if (op == "last") {
        if (!s.is_list()) return EvalResult::not_evaluable("needs a list subject");
        if (s.items().empty()) return EvalResult::unsatisfied("empty list");
        return bind_to(o, s.items().back());
    }
    if (op == "in") {
        if (!o.is_list()) return EvalResult::not_evaluable("needs a list object");
        if (unbound_var(s)) {
            std::vector<Bindings> sols;
            std::set<std::string> seen;
            for (const auto& item : o.items())
                if (seen.insert(term_key(item)).second)
                    sols.push_back(Bindings{{s.text(), item}});
            if (sols.empty()) return EvalResult::unsatisfied();
            return EvalResult::satisfied(std::move(sols));
        }
        for (const auto& item : o.items())
            if (item == s) return EvalResult::satisfied();
        return EvalResult::unsatisfied();
    }
    return EvalResult::not_evaluable("unknown list operation");
}

// ---- crypto ----------------------------------------------------------------

std::string digest_hex(const std::string& data, const EVP_MD* md) {
    unsigned char buf[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), buf, &len, md, nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[buf[i] >> 4];
        out += hex[buf[i] & 0xF];
    }
    return out;
}

EvalResult eval_crypto(const std::string& op, const Term& s, const Term& o) {
    std::string text;
    if (!string_arg(s, text)) return EvalResult::not_evaluable("needs a string subject");
    const EVP_MD* md = op == "md5" ? EVP_md5() : op == "sha1" ? EVP_sha1() : nullptr;
    if (!md) return EvalResult::not_evaluable("unknown digest");
    return bind_to(o, Term::literal(digest_hex(text, md)));
}

// ---- time ------------------------------------------------------------------

struct Instant {
    long long year;
    int month, day, hour, minute;
    double second;
    std::string day_str, hour_str, minute_str;
};

bool parse_instant(const std::string& s, Instant& out) {
    static const std::regex re(
        R"(^(\d{4,})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2}(?:\.\d+)?)(Z|[+-]\d{2}:\d{2})?$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) return false;
    out.year = std::strtoll(m[1].str().c_str(), nullptr, 10);
    out.month = std::stoi(m[2].str());
    out.day = std::stoi(m[3].str());
    out.hour = std::stoi(m[4].str());
    out.minute = std::stoi(m[5].str());
    out.second = std::strtod(m[6].str().c_str(), nullptr);
    out.day_str = m[3].str();
    out.hour_str = m[4].str();
    out.minute_str = m[5].str();
    if (out.month < 1 || out.month > 12 || out.day < 1 || out.day > 31 || out.hour > 23 ||
        out.minute > 59 || out.second >= 61.0)
        return false;
    return true;
}

long long days_from_civil(long long y, int m, int d) {
    y -= m <= 2;
    long long era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                   static_cast<unsigned>(d) - 1u;
    unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

int day_of_week(const Instant& in) {  // 0 = Sunday
    long long days = days_from_civil(in.year, in.month, in.day);
    long long dow = (days + 4) % 7;
    if (dow < 0) dow += 7;
    return static_cast<int>(dow);
}

std::tm instant_to_tm(const Instant& in) {
    std::tm tm{};
    tm.tm_year = static_cast<int>(in.year - 1900);
    tm.tm_mon = in.month - 1;
    tm.tm_mday = in.day;
    tm.tm_hour = in.hour;
    tm.tm_min = in.minute;
    tm.tm_sec = static_cast<int>(in.second);
    tm.tm_wday = day_of_week(in);
    tm.tm_yday = static_cast<int>(days_from_civil(in.year, in.month, in.day) -
                                  days_from_civil(in.year, 1, 1));
    return tm;
}

EvalResult eval_time(const std::string& op, const Term& s, const Term& o,
                     const EvalContext& env) {
    if (op == "gmTime" || op == "localTime") {
        std::string format;
        if (!string_arg(s, format)) return EvalResult::not_evaluable("needs a format subject");
        if (format.empty()) format = "%Y-%m-%dT%H:%M:%SZ";
        std::tm tm{};
        if (env.frozen_utc) {
            Instant in;
            if (!parse_instant(*env.frozen_utc, in))
                return EvalResult::not_evaluable("bad frozen clock");
            tm = instant_to_tm(in);
        } else {
            if (!env.allow_impure)
                return EvalResult::not_evaluable("clock access disabled");
            std::time_t now = std::time(nullptr);
            if (op == "gmTime")
                gmtime_r(&now, &tm);
            else
                localtime_r(&now, &tm);
        }
        char buf[256];
        std::size_t n = std::strftime(buf, sizeof buf, format.c_str(), &tm);
        return bind_to(o, Term::literal(std::string(buf, n)));
    }

    std::string lex;
    if (!string_arg(s, lex)) return EvalResult::not_evaluable("needs a dateTime subject");
    Instant in;
    if (!parse_instant(lex, in)) return EvalResult::not_evaluable("unparseable dateTime");
    if (op == "day") return bind_to(o, Term::literal(in.day_str));
    if (op == "hour") return bind_to(o, Term::literal(in.hour_str));
    if (op == "minute") return bind_to(o, Term::literal(in.minute_str));
    if (op == "dayOfWeek") return bind_to(o, Term::literal(std::to_string(day_of_week(in))));
    return EvalResult::not_evaluable("unknown time operation");
}

// ---- os --------------------------------------------------------------------

EvalResult eval_os(const std::string& op, const Term& s, const Term& o,
                   const EvalContext& env) {
    std::string key;
    if (!string_arg(s, key)) return EvalResult::not_evaluable("needs a string subject");
    if (op == "argv") {
        errno = 0;
        char* end = nullptr;
        long idx = std::strtol(key.c_str(), &end, 10);
        if (end == key.c_str() || *end != '\0' || errno == ERANGE)
            return EvalResult::not_evaluable("argv index must be a number");
        if (idx < 1 || static_cast<std::size_t>(idx) > env.argv.size())
            return EvalResult::unsatisfied();
        return bind_to(o, Term::literal(env.argv[static_cast<std::size_t>(idx) - 1]));
    }
    if (op == "environ") {
        if (env.environ_override) {
            auto it = env.environ_override->find(key);
            if (it == env.environ_override->end()) return EvalResult::unsatisfied();
            return bind_to(o, Term::literal(it->second));
        }
        if (!env.allow_impure) return EvalResult::not_evaluable("environment access disabled");
        const char* v = std::getenv(key.c_str());
        if (!v) return EvalResult::unsatisfied();
        return bind_to(o, Term::literal(v));
    }
    return EvalResult::not_evaluable("unknown os operation");
}

// ---- log meta --------------------------------------------------------------

EvalResult eval_log(const std::string& op, const Term& s, const Term& o,
                    const EvalContext& env) {
    if (op == "uri") {
        if (s.is_iri()) return bind_to(o, Term::literal(s.text()));
        if (unbound_var(s) && o.is_literal()) {
            if (!iri_is_absolute(o.text()))
                return EvalResult::unsatisfied("not an absolute IRI");
            return bind_to(s, Term::iri(o.text()));
        }
        return EvalResult::not_evaluable("needs a resource or a URI string");
    }

    if (op == "semantics" || op == "content") {
        if (!s.is_iri()) return EvalResult::not_evaluable("needs a resource subject");
        if (!env.resolver) return EvalResult::unsatisfied("no document resolver configured");
        try {
            if (op == "content") {
                Document doc = env.resolver->dereference(s.text());
                return bind_to(o, Term::literal(doc.body));
            }
            const Formula& f = env.resolver->semantics(s.text());
            return bind_to(o, Term::quoted(f));
        } catch (const FetchError& e) {
            return EvalResult::unsatisfied(e.what());
        } catch (const ParseError& e) {
            return EvalResult::unsatisfied(e.what());
        }
    }

    if (op == "parsedAsN3") {
        std::string text;
        if (!string_arg(s, text)) return EvalResult::not_evaluable("needs a string subject");
        try {
            Formula f = parse_document(text, env.base, "log:parsedAsN3 argument");
            return bind_to(o, Term::quoted(std::move(f)));
        } catch (const ParseError& e) {
            return EvalResult::unsatisfied(e.what());
        }
    }

    if (op == "N3String") {
        if (!s.is_quoted()) return EvalResult::not_evaluable("needs a formula subject");
        return bind_to(o, Term::literal(canonical_text(s.quoted_formula())));
    }

    if (op == "includes" || op == "notIncludes") {
        if (!s.is_quoted() || !o.is_quoted())
            return EvalResult::not_evaluable("needs two formulas");
        if (op == "notIncludes")
            return not_includes(s.quoted_formula(), o.quoted_formula())
                       ? EvalResult::satisfied()
                       : EvalResult::unsatisfied();
        std::vector<Bindings> sols = match(o.quoted_formula(), s.quoted_formula());
        if (sols.empty()) return EvalResult::unsatisfied();
        return EvalResult::satisfied(std::move(sols));
    }

    if (op == "conjunction") {
        if (!s.is_list() || !term_is_ground(s))
            return EvalResult::not_evaluable("needs a ground list of formulas");
        std::vector<Formula> parts;
        for (const auto& item : s.items()) {
            if (!item.is_quoted())
                return EvalResult::not_evaluable("conjunction member is not a formula");
            parts.push_back(item.quoted_formula());
        }
        return bind_to(o, Term::quoted(conjoin(parts)));
    }

    if (op == "conclusion") {
        if (!s.is_quoted()) return EvalResult::not_evaluable("needs a formula subject");
        try {
            return bind_to(o, Term::quoted(conclusion(s.quoted_formula(), env)));
        } catch (const ClosureError& e) {
            return EvalResult::unsatisfied(e.what());
        } catch (const RuleError& e) {
            return EvalResult::unsatisfied(e.what());
        }
    }

    if (op == "supports") {
        if (!s.is_quoted() || !o.is_quoted())
            return EvalResult::not_evaluable("needs two formulas");
        try {
            Formula closed = conclusion(s.quoted_formula(), env);
            std::vector<Bindings> sols = match(o.quoted_formula(), closed);
            if (sols.empty()) return EvalResult::unsatisfied();
            return EvalResult::satisfied(std::move(sols));
        } catch (const ClosureError& e) {
            return EvalResult::unsatisfied(e.what());
        } catch (const RuleError& e) {
            return EvalResult::unsatisfied(e.what());
        }
    }

    return EvalResult::not_evaluable("unknown log operation");
}

// ---- registry ----------------------------------------------------------------

struct FamilyEntry {
    const char* local;
    const char* modes;
    const char* shape;
};

const std::map<std::string, std::vector<FamilyEntry>>& registry() {
    static const std::map<std::string, std::vector<FamilyEntry>> reg = {
        {vocab::math_ns,
         {{"lessThan", "check", "scalar"},
          {"greaterThan", "check", "scalar"},
          {"notLessThan", "check", "scalar"},
          {"notGreaterThan", "check", "scalar"},
          {"equalTo", "check", "scalar"},
          {"notEqualTo", "check", "scalar"},
          {"sum", "check,compute-object", "list-subject"},
          {"difference", "check,compute-object", "list-subject"},
          {"product", "check,compute-object", "list-subject"},
          {"quotient", "check,compute-object", "list-subject"},
          {"negation", "check,compute-object,compute-subject", "scalar"},
          {"absoluteValue", "check,compute-object", "scalar"},
          {"cos", "check,compute-object", "scalar"}}},
        {vocab::string_ns,
         {{"contains", "check", "scalar"},
          {"startsWith", "check", "scalar"},
          {"endsWith", "check", "scalar"},
          {"matches", "check", "scalar"},
          {"concatenation", "check,compute-object", "list-subject"},
          {"scrape", "check,compute-object", "list-subject"}}},
        {vocab::list_ns,
         {{"in", "check,compute-subject", "scalar"},
          {"last", "check,compute-object", "scalar"}}},
        {vocab::crypto_ns,
         {{"md5", "check,compute-object", "scalar"},
          {"sha1", "check,compute-object", "scalar"}}},
        {vocab::time_ns,
         {{"day", "check,compute-object", "scalar"},
          {"hour", "check,compute-object", "scalar"},
          {"minute", "check,compute-object", "scalar"},
          {"dayOfWeek", "check,compute-object", "scalar"},
          {"gmTime", "check,compute-object", "scalar"},
          {"localTime", "check,compute-object", "scalar"}}},
        {vocab::os_ns,
         {{"argv", "check,compute-object", "scalar"},
          {"environ", "check,compute-object", "scalar"}}},
        {vocab::log_ns,
         {{"uri", "check,compute-object,compute-subject", "scalar"},
          {"semantics", "check,compute-object", "scalar"},
          {"content", "check,compute-object", "scalar"},
          {"parsedAsN3", "check,compute-object", "scalar"},
          {"N3String", "check,compute-object", "scalar"},
          {"includes", "check", "scalar"},
          {"notIncludes", "check", "scalar"},
          {"conjunction", "check,compute-object", "list-subject"},
          {"conclusion", "check,compute-object", "scalar"},
          {"supports", "check", "scalar"}}},
    };
    return reg;
}

bool split_builtin(const std::string& iri, std::string& ns, std::string& local) {
    for (const auto& [family_ns, entries] : registry()) {
        if (iri.size() > family_ns.size() &&
            iri.compare(0, family_ns.size(), family_ns) == 0) {
            ns = family_ns;
            local = iri.substr(family_ns.size());
            for (const auto& e : entries)
                if (local == e.local) return true;
            return false;
        }
    }
    return false;
}

}  // namespace

bool in_builtin_namespace(const std::string& iri) {
    for (const auto& [family_ns, entries] : registry())
        if (iri.size() > family_ns.size() && iri.compare(0, family_ns.size(), family_ns) == 0)
            return true;
    return false;
}

bool is_builtin_predicate(const std::string& iri) {
    std::string ns, local;
    return split_builtin(iri, ns, local);
}

EvalResult evaluate_builtin(const std::string& predicate, const Term& subject,
                            const Term& object, const EvalContext& env) {
    std::string ns, local;
    if (!split_builtin(predicate, ns, local))
        return EvalResult::not_evaluable("unregistered builtin");
    if (ns == vocab::math_ns) return eval_math(local, subject, object);
    if (ns == vocab::string_ns) return eval_string(local, subject, object);
    if (ns == vocab::list_ns) return eval_list(local, subject, object);
    if (ns == vocab::crypto_ns) return eval_crypto(local, subject, object);
    if (ns == vocab::time_ns) return eval_time(local, subject, object, env);
    if (ns == vocab::os_ns) return eval_os(local, subject, object, env);
    if (ns == vocab::log_ns) return eval_log(local, subject, object, env);
    return EvalResult::not_evaluable("unregistered builtin");
}

std::vector<CatalogEntry> builtin_catalog() {
    std::vector<CatalogEntry> out;
    for (const auto& [family_ns, entries] : registry())
        for (const auto& e : entries)
            out.push_back({family_ns + e.local, e.modes, e.shape});
    std::sort(out.begin(), out.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) { return a.iri < b.iri; });
    return out;
}

}  // namespace n3
