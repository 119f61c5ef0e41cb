#include "jetgeo/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace jetgeo {

namespace {

class ExprParser {
public:
    ExprParser(std::string_view text, int line) : text_(text), line_(line) {}

    ExprPtr parse() {
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos_ < text_.size())
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, static_cast<int>(pos_) + 1);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr parse_sum() {
        ExprPtr e = parse_term();
        for (;;) {
            if (consume('+'))
                e = Expr::add(e, parse_term());
            else if (consume('-'))
                e = Expr::sub(e, parse_term());
            else
                return e;
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        for (;;) {
            if (consume('*'))
                e = Expr::mul(e, parse_unary());
            else if (consume('/'))
                e = Expr::div(e, parse_unary());
            else
                return e;
        }
    }

    ExprPtr parse_unary() {
        if (consume('-')) return Expr::negate(parse_unary());
        if (consume('+')) return parse_unary();
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (consume('^')) return Expr::pow(base, parse_exponent());
        return base;
    }

    // Integer exponent; x^a^b nests to the right, so the exponent chain is
    // folded into a single integer here.
    int parse_exponent() {
        skip_ws();
        if (consume('(')) {
            int v = parse_exponent();
            if (!consume(')')) fail("expected ')' after exponent");
            if (consume('^')) v = fold_int_pow(v, parse_exponent());
            return v;
        }
        bool neg = consume('-');
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start) fail("expected integer exponent");
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
            fail("exponents must be integers");
        int v = 0;
        std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (neg) v = -v;
        if (consume('^')) v = fold_int_pow(v, parse_exponent());
        return v;
    }

    int fold_int_pow(int base, int exp) const {
        if (exp < 0) fail("negative exponent in exponent tower");
        long long r = 1;
        for (int i = 0; i < exp; ++i) {
            r *= base;
            if (r > 1'000'000'000 || r < -1'000'000'000) fail("exponent overflow");
        }
        return static_cast<int>(r);
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (consume('(')) {
            ExprPtr e = parse_sum();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        fail("expected number, identifier or '('");
    }

    ExprPtr parse_number() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            size_t mark = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark; // 'e' begins an identifier, not an exponent
            }
        }
        double v = 0;
        auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc{} || p != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return Expr::constant(v);
    }

    ExprPtr parse_ident() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "sin" || name == "cos" || name == "exp") {
            if (!consume('(')) fail("expected '(' after " + name);
            ExprPtr arg = parse_sum();
            if (!consume(')')) fail("expected ')' after " + name + " argument");
            if (name == "sin") return Expr::sin(arg);
            if (name == "cos") return Expr::cos(arg);
            return Expr::exp(arg);
        }
        if (name == "t") {
            pos_ = start;
            fail("fields are autonomous: 't' may not appear");
        }
        if (name.size() > 1 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            int idx = 0;
            std::from_chars(name.data() + 1, name.data() + name.size(), idx);
            if (idx < 1) {
                pos_ = start;
                fail("variable index must be >= 1");
            }
            return Expr::variable(idx);
        }
        return Expr::parameter(name);
    }

    std::string_view text_;
    int line_;
    size_t pos_ = 0;
};

struct FieldLine {
    int label = 0;
    ExprPtr expr;
};

// Matches "X<i>" at the start of a trimmed line; returns the index and the
// offset just past the label.
std::optional<std::pair<int, size_t>> match_label(std::string_view s) {
    if (s.empty() || s[0] != 'X') return std::nullopt;
    size_t p = 1;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p == 1) return std::nullopt;
    int idx = 0;
    std::from_chars(s.data() + 1, s.data() + p, idx);
    return std::make_pair(idx, p);
}

} // namespace

ExprPtr parse_expression(std::string_view text) {
    return ExprParser(text, 1).parse();
}

VectorField parse_field(const std::string& text, ParamMap params) {
    std::map<int, ExprPtr> components;
    std::map<std::pair<int, int>, ExprPtr> overrides;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line(raw);

        if (line.starts_with("#!override")) {
            std::string_view rest = line.substr(10);
            size_t off = 10;
            auto skip = [&] {
                while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest[0]))) {
                    rest.remove_prefix(1);
                    ++off;
                }
            };
            skip();
            if (!rest.starts_with("dX"))
                throw ParseError("expected 'dX<i>/dx<j> = <expr>' after #!override",
                                 lineno, static_cast<int>(off) + 1);
            rest.remove_prefix(1); off += 1;
            auto lab_i = match_label(rest);
            if (!lab_i) throw ParseError("expected component index after #!override dX",
                                         lineno, static_cast<int>(off) + 1);
            rest.remove_prefix(lab_i->second); off += lab_i->second;
            if (!rest.starts_with("/dx"))
                throw ParseError("expected '/dx<j>' in #!override", lineno,
                                 static_cast<int>(off) + 1);
            rest.remove_prefix(3); off += 3;
            size_t p = 0;
            while (p < rest.size() && std::isdigit(static_cast<unsigned char>(rest[p]))) ++p;
            if (p == 0) throw ParseError("expected variable index in #!override", lineno,
                                         static_cast<int>(off) + 1);
            int j = 0;
            std::from_chars(rest.data(), rest.data() + p, j);
            rest.remove_prefix(p); off += p;
            skip();
            if (rest.empty() || rest[0] != '=')
                throw ParseError("expected '=' in #!override", lineno,
                                 static_cast<int>(off) + 1);
            rest.remove_prefix(1);
            overrides[{lab_i->first, j}] = ExprParser(rest, lineno).parse();
            continue;
        }

        // strip comment
        if (size_t h = line.find('#'); h != std::string_view::npos)
            line = line.substr(0, h);
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        line = line.substr(first);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.remove_suffix(1);

        auto label = match_label(line);
        if (!label)
            throw ParseError("expected component definition 'X<i> = <expr>'", lineno,
                             static_cast<int>(first) + 1);
        auto [idx, past] = *label;
        if (idx < 1)
            throw ParseError("component index must be >= 1", lineno,
                             static_cast<int>(first) + 1);
        if (components.contains(idx))
            throw ParseError("duplicate component label X" + std::to_string(idx), lineno,
                             static_cast<int>(first) + 1);
        std::string_view rest = line.substr(past);
        size_t eq = rest.find('=');
        if (eq == std::string_view::npos ||
            rest.find_first_not_of(" \t") != eq)
            throw ParseError("expected '=' after X" + std::to_string(idx), lineno,
                             static_cast<int>(first + past) + 1);
        components[idx] = ExprParser(rest.substr(eq + 1), lineno).parse();
    }

    if (components.empty())
        throw ParseError("field file defines no components", lineno ? lineno : 1, 1);
    int n = static_cast<int>(components.size());
    std::vector<ExprPtr> ordered;
    ordered.reserve(n);
    for (int i = 1; i <= n; ++i) {
        auto it = components.find(i);
        if (it == components.end())
            throw ParseError("missing component label X" + std::to_string(i) +
                                 " (labels must be contiguous from 1)",
                             lineno, 1);
        ordered.push_back(it->second);
    }
    for (int i = 1; i <= n; ++i) {
        int mv = max_var_index(*ordered[i - 1]);
        if (mv > n)
            throw ParseError("component X" + std::to_string(i) + " references x" +
                                 std::to_string(mv) + " but the field has dimension " +
                                 std::to_string(n),
                             lineno, 1);
    }
    for (const auto& [key, expr] : overrides) {
        if (key.first < 1 || key.first > n || key.second < 1 || key.second > n)
            throw ParseError("#!override indices outside 1.." + std::to_string(n), lineno, 1);
    }
    return VectorField(std::move(ordered), std::move(params), std::move(overrides));
}

} // namespace jetgeo
