#include "sparsefact/text.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sparsefact {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line), column_(column)
{
}

namespace {

enum class Tok { integer, ident, plus, minus, star, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, column;
};

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t{Tok::end, std::string(1, c), line, col};
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            t.kind = Tok::integer;
            t.text = std::string(s.substr(i, j - i));
            out.push_back(t);
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            t.kind = Tok::ident;
            t.text = std::string(s.substr(i, j - i));
            out.push_back(t);
            advance(j - i);
            continue;
        }
        switch (c) {
        case '+': t.kind = Tok::plus; break;
        case '-': t.kind = Tok::minus; break;
        case '*': t.kind = Tok::star; break;
        case '^': t.kind = Tok::caret; break;
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(t);
        advance(1);
    }
    out.push_back(Token{Tok::end, "", line, col});
    return out;
}

class Parser {
public:
    Parser(const std::vector<Token>& toks, const std::vector<std::string>& vars) : toks_(toks), vars_(vars) {}

    MultiPoly parse_all()
    {
        MultiPoly r = expr();
        if (peek().kind != Tok::end)
            fail("unexpected '" + peek().text + "'");
        return r;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(msg, peek().line, peek().column);
    }

    MultiPoly expr()
    {
        bool negate = false;
        if (peek().kind == Tok::plus || peek().kind == Tok::minus)
            negate = next().kind == Tok::minus;
        MultiPoly acc = term();
        if (negate)
            acc = -acc;
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            bool sub = next().kind == Tok::minus;
            MultiPoly rhs = term();
            acc = sub ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    MultiPoly term()
    {
        MultiPoly acc = factor();
        while (peek().kind == Tok::star) {
            next();
            acc = acc * factor();
        }
        return acc;
    }

    MultiPoly factor()
    {
        MultiPoly b = base();
        if (peek().kind != Tok::caret)
            return b;
        next();
        if (peek().kind != Tok::integer)
            fail("expected an unsigned integer exponent");
        const Token& e = next();
        Integer v(e.text);
        if (v > Integer(static_cast<unsigned long>(max_exponent)))
            throw ParseError("exponent overflow", e.line, e.column);
        const unsigned ev = static_cast<unsigned>(v.get_ui());
        // Monomials are raised in place; general bases by repeated squaring.
        if (b.size() == 1) {
            Term t = b.terms().front();
            t.coeff = pow_ui(t.coeff, ev);
            for (auto& x : t.exps) {
                std::uint64_t s = std::uint64_t{x} * ev;
                if (s > max_exponent)
                    throw ParseError("exponent overflow", e.line, e.column);
                x = static_cast<Exponent>(s);
            }
            return MultiPoly(vars_, {t});
        }
        return pow(b, ev);
    }

    MultiPoly base()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::integer:
            next();
            return MultiPoly::constant(vars_, Integer(t.text));
        case Tok::ident: {
            next();
            auto it = std::find(vars_.begin(), vars_.end(), t.text);
            return MultiPoly::variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
        }
        case Tok::lparen: {
            next();
            MultiPoly inner = expr();
            if (peek().kind != Tok::rparen)
                fail("expected ')'");
            next();
            return inner;
        }
        case Tok::end:
            fail("unexpected end of input");
        default:
            fail("unexpected '" + t.text + "'");
        }
    }

    const std::vector<Token>& toks_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

void collect_idents(const std::vector<Token>& toks, std::vector<std::string>& vars)
{
    for (const auto& t : toks)
        if (t.kind == Tok::ident && std::find(vars.begin(), vars.end(), t.text) == vars.end())
            vars.push_back(t.text);
}

} // namespace

MultiPoly parse(std::string_view text, const std::vector<std::string>& vars)
{
    auto toks = tokenize(text);
    std::vector<std::string> all = vars;
    collect_idents(toks, all);
    return Parser(toks, all).parse_all();
}

std::vector<MultiPoly> parse_all(const std::vector<std::string>& texts, const std::vector<std::string>& vars)
{
    std::vector<std::vector<Token>> toks;
    std::vector<std::string> all = vars;
    for (const auto& s : texts) {
        toks.push_back(tokenize(s));
        collect_idents(toks.back(), all);
    }
    std::vector<MultiPoly> out;
    for (const auto& t : toks)
        out.push_back(Parser(t, all).parse_all());
    return out;
}

namespace {

void append_term(std::ostringstream& os, bool first, const Integer& coeff,
                 const std::vector<std::pair<std::string, Exponent>>& powers)
{
    const bool neg = sgn(coeff) < 0;
    if (first) {
        if (neg)
            os << '-';
    } else {
        os << (neg ? '-' : '+');
    }
    Integer mag = abs(coeff);
    bool wrote = false;
    if (mag != 1 || powers.empty()) {
        os << mag.get_str();
        wrote = true;
    }
    for (const auto& [name, e] : powers) {
        if (wrote)
            os << '*';
        os << name;
        if (e != 1)
            os << '^' << e;
        wrote = true;
    }
}

} // namespace

std::string format(const MultiPoly& p)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    std::vector<std::pair<std::string, Exponent>> powers;
    for (const auto& t : p.terms()) {
        powers.clear();
        for (std::size_t v = 0; v < p.nvars(); ++v)
            if (t.exps[v])
                powers.emplace_back(p.variables()[v], t.exps[v]);
        append_term(os, first, t.coeff, powers);
        first = false;
    }
    return os.str();
}

std::string format(const BiPoly& p, const std::string& x_name, const std::string& t_name)
{
    return format(to_multipoly(p, x_name, t_name));
}

} // namespace sparsefact
