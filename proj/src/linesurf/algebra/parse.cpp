#include "linesurf/algebra/parse.hpp"

#include <cctype>

namespace linesurf {

namespace {

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string> &names)
        : text_(text), names_(names), field_(), n_(static_cast<int>(names.size()))
    {
    }

    Poly<Rationals> equation()
    {
        skip();
        if (at_end())
            error("empty polynomial");
        auto lhs = expr();
        skip();
        if (peek() == '=') {
            advance();
            auto rhs = expr();
            lhs = lhs - rhs;
        }
        skip();
        if (!at_end())
            error(std::string("unexpected '") + peek() + "'");
        return lhs;
    }

private:
    Poly<Rationals> expr()
    {
        skip();
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1 : 1;
            advance();
        }
        auto acc = term();
        if (sign < 0)
            acc = -acc;
        for (;;) {
            skip();
            const char c = peek();
            if (c != '+' && c != '-')
                break;
            advance();
            auto t = term();
            acc = c == '+' ? acc + t : acc - t;
        }
        return acc;
    }

    Poly<Rationals> term()
    {
        auto acc = factor();
        for (;;) {
            skip();
            if (peek() != '*')
                break;
            advance();
            acc = acc * factor();
        }
        return acc;
    }

    Poly<Rationals> factor()
    {
        auto base = primary();
        skip();
        if (peek() == '^') {
            advance();
            skip();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                error("expected exponent after '^'");
            const std::string digits = read_digits();
            if (digits.size() > 4)
                error("exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    Poly<Rationals> primary()
    {
        skip();
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_digits();
            if (peek() == '/') {
                advance();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    error("expected denominator after '/'");
                num += "/" + read_digits();
            }
            mpq_class q(num, 10);
            if (q.get_den() == 0)
                error("zero denominator");
            q.canonicalize();
            return Poly<Rationals>::constant(field_, n_, q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto [line, col] = position();
            std::string id;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                id.push_back(peek());
                advance();
            }
            for (int i = 0; i < n_; ++i)
                if (names_[static_cast<std::size_t>(i)] == id)
                    return Poly<Rationals>::variable(field_, n_, i);
            error_at(line, col, "unknown variable '" + id + "'");
        }
        if (c == '(') {
            advance();
            auto e = expr();
            skip();
            if (peek() != ')')
                error("expected ')'");
            advance();
            return e;
        }
        if (at_end())
            error("unexpected end of input");
        error(std::string("unexpected '") + c + "'");
    }

    std::string read_digits()
    {
        std::string s;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            s.push_back(peek());
            advance();
        }
        return s;
    }

    void skip()
    {
        while (!at_end()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (!at_end() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void advance() { ++pos_; }

    std::pair<int, int> position() const
    {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

    [[noreturn]] void error(const std::string &msg) const
    {
        const auto [line, col] = position();
        error_at(line, col, msg);
    }
    [[noreturn]] static void error_at(int line, int col, const std::string &msg)
    {
        fail(Errc::parse, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }

    std::string_view text_;
    const std::vector<std::string> &names_;
    Rationals field_;
    int n_;
    std::size_t pos_ = 0;
};

} // namespace

Poly<Rationals> parse_rational_poly(std::string_view text, const std::vector<std::string> &names)
{
    return Parser(text, names).equation();
}

std::vector<std::string> default_variable_names(int n)
{
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i)
        out.push_back("x" + std::to_string(i));
    return out;
}

} // namespace linesurf
