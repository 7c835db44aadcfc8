#include "acb/structure_file.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace acb::cli {

ParseError::ParseError(int line, int column, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
      column_(column) {}

std::vector<std::string> default_vars(int n) {
    if (n == 2) return {"z", "w"};
    std::vector<std::string> v;
    for (int k = 1; k <= n; ++k) v.push_back("z" + std::to_string(k));
    return v;
}

namespace {

enum class Tok { Num, Ident, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int col = 0;
};

class Lexer {
public:
    Lexer(const std::string& s, int line, int col0 = 1) : s_(s), line_(line), col0_(col0) { advance(); }

    const Token& peek() const { return cur_; }
    Token next() {
        Token t = cur_;
        advance();
        return t;
    }
    int line() const { return line_; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(line_, t.col, msg); }

    Token expect_sym(char c) {
        if (cur_.kind != Tok::Sym || cur_.text[0] != c) fail(cur_, std::string("expected '") + c + "'");
        return next();
    }
    bool accept_sym(char c) {
        if (cur_.kind == Tok::Sym && cur_.text[0] == c) {
            advance();
            return true;
        }
        return false;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        cur_ = Token{};
        cur_.col = col0_ + static_cast<int>(pos_);
        if (pos_ >= s_.size()) return;
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ + 1 < s_.size() && (s_[pos_] == '/' || s_[pos_] == '.') &&
                std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            }
            cur_.kind = Tok::Num;
            cur_.text = s_.substr(st, pos_ - st);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t st = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                        s_[pos_] == '-' || s_[pos_] == '.'))
                ++pos_;
            cur_.kind = Tok::Ident;
            cur_.text = s_.substr(st, pos_ - st);
            return;
        }
        if (std::string("+-*^()[],=").find(c) != std::string::npos) {
            cur_.kind = Tok::Sym;
            cur_.text = std::string(1, c);
            ++pos_;
            return;
        }
        throw ParseError(line_, cur_.col, std::string("unexpected character '") + c + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
    int line_;
    int col0_;
    Token cur_;
};

Cq parse_number(const std::string& t) {
    auto dot = t.find('.');
    if (dot == std::string::npos) return Cq::parse_rational(t);
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    std::string den = "1" + std::string(t.size() - dot - 1, '0');
    return Cq::parse_rational(digits + "/" + den);
}

class ExprParser {
public:
    ExprParser(Lexer& lx, const std::vector<std::string>& vars) : lx_(lx), vars_(vars), n_(static_cast<int>(vars.size())) {}

    Expression expr() {
        Expression e = term();
        for (;;) {
            if (lx_.accept_sym('+'))
                e += term();
            else if (lx_.accept_sym('-'))
                e -= term();
            else
                return e;
        }
    }

private:
    Expression term() {
        Expression e = factor();
        while (lx_.accept_sym('*')) e *= factor();
        return e;
    }

    Expression factor() {
        if (lx_.accept_sym('-')) return -factor();
        Expression a = atom();
        if (lx_.accept_sym('^')) {
            Token t = lx_.next();
            if (t.kind != Tok::Num || t.text.find_first_of("/.") != std::string::npos)
                lx_.fail(t, "exponent must be a natural number");
            if (t.text.size() > 3) lx_.fail(t, "exponent too large");
            a = a.pow(std::stoi(t.text));
        }
        return a;
    }

    int var_index(const std::string& name) const {
        for (int k = 0; k < n_; ++k)
            if (vars_[k] == name) return k;
        // z1..zn always name the coordinates positionally.
        if (name.size() > 1 && name[0] == 'z') {
            bool digits = std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(c); });
            if (digits && name.size() < 4) {
                int k = std::stoi(name.substr(1));
                if (k >= 1 && k <= n_) return k - 1;
            }
        }
        return -1;
    }

    Expression atom() {
        Token t = lx_.next();
        if (t.kind == Tok::Num) return Expression(n_, parse_number(t.text));
        if (t.kind == Tok::Sym && t.text == "(") {
            Expression e = expr();
            lx_.expect_sym(')');
            return e;
        }
        if (t.kind != Tok::Ident) lx_.fail(t, t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
        if (t.text == "i") return Expression(n_, Cq::i());
        if (t.text == "conj" || t.text == "abs2" || t.text == "sqrt") {
            lx_.expect_sym('(');
            Expression e = expr();
            lx_.expect_sym(')');
            if (t.text == "conj") return e.conj();
            if (t.text == "abs2") return e * e.conj();
            if (!e.is_polynomial() || !e.as_polynomial().is_radicand())
                lx_.fail(t, "sqrt argument is not a positive constant plus a radial polynomial");
            return Expression::sqrt_of(e.as_polynomial());
        }
        int k = var_index(t.text);
        if (k < 0) lx_.fail(t, "unknown identifier '" + t.text + "'");
        return Expression::var(n_, k);
    }

    Lexer& lx_;
    const std::vector<std::string>& vars_;
    int n_;
};

const std::set<std::string> kReserved{"i", "conj", "abs2", "sqrt", "J", "expect", "name", "dim", "vars"};

std::string strip_comment(const std::string& line) {
    auto p = line.find('#');
    return p == std::string::npos ? line : line.substr(0, p);
}

} // namespace

Expression parse_expression(const std::string& text, const std::vector<std::string>& vars) {
    Lexer lx(text, 1);
    ExprParser p(lx, vars);
    Expression e = p.expr();
    if (lx.peek().kind != Tok::End) lx.fail(lx.peek(), "trailing input");
    return e;
}

StructureFile parse_structure(const std::string& text, bool verify) {
    StructureFile f;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::vector<int> seen;
    bool vars_fixed = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        Lexer lx(line, lineno);
        if (lx.peek().kind == Tok::End) continue;
        Token head = lx.next();
        if (head.kind != Tok::Ident) lx.fail(head, "expected a statement keyword");
        if (head.text == "name") {
            lx.expect_sym('=');
            Token v = lx.next();
            if (v.kind != Tok::Ident && v.kind != Tok::Num) lx.fail(v, "expected a name");
            f.name = v.text;
        } else if (head.text == "dim") {
            if (f.n) lx.fail(head, "dim given twice");
            lx.expect_sym('=');
            Token v = lx.next();
            if (v.kind != Tok::Num || v.text.find_first_of("/.") != std::string::npos || v.text.size() > 2)
                lx.fail(v, "dim must be a small natural number");
            f.n = std::stoi(v.text);
            if (f.n < 1 || f.n > 8) lx.fail(v, "dim must lie in 1..8");
            f.vars = default_vars(f.n);
            f.J = ACStructure(f.n);
            seen.assign(static_cast<std::size_t>(f.n * f.n), 0);
        } else if (head.text == "vars") {
            if (!f.n) lx.fail(head, "vars before dim");
            if (vars_fixed) lx.fail(head, "vars must precede all entries and appear once");
            lx.expect_sym('=');
            std::vector<std::string> names;
            do {
                Token v = lx.next();
                if (v.kind != Tok::Ident || kReserved.count(v.text)) lx.fail(v, "expected a variable name");
                if (std::find(names.begin(), names.end(), v.text) != names.end()) lx.fail(v, "duplicate variable");
                names.push_back(v.text);
            } while (lx.accept_sym(','));
            if (static_cast<int>(names.size()) != f.n) lx.fail(head, "vars count does not match dim");
            f.vars = names;
            vars_fixed = true;
        } else if (head.text == "J") {
            if (!f.n) lx.fail(head, "entry before dim");
            vars_fixed = true;
            int idx[2];
            for (int& v : idx) {
                lx.expect_sym('[');
                Token t = lx.next();
                if (t.kind != Tok::Num || t.text.find_first_of("/.") != std::string::npos || t.text.size() > 2)
                    lx.fail(t, "expected an index");
                v = std::stoi(t.text);
                if (v < 1 || v > f.n) lx.fail(t, "index out of range");
                lx.expect_sym(']');
            }
            lx.expect_sym('=');
            lx.expect_sym('(');
            ExprParser p(lx, f.vars);
            Expression lin = p.expr();
            lx.expect_sym(',');
            Expression anti = p.expr();
            lx.expect_sym(')');
            int& s = seen[(idx[0] - 1) * f.n + idx[1] - 1];
            if (s) lx.fail(head, "entry given twice");
            s = lineno;
            f.J.lin(idx[0] - 1, idx[1] - 1) = lin;
            f.J.anti(idx[0] - 1, idx[1] - 1) = anti;
        } else if (head.text == "expect") {
            Token k = lx.next();
            if (k.kind != Tok::Ident) lx.fail(k, "expected a key");
            lx.expect_sym('=');
            Token v = lx.next();
            if (v.kind != Tok::Ident && v.kind != Tok::Num) lx.fail(v, "expected a value");
            f.expect[k.text] = v.text;
        } else {
            lx.fail(head, "unknown statement '" + head.text + "'");
        }
        if (lx.peek().kind != Tok::End) lx.fail(lx.peek(), "trailing input");
    }
    if (!f.n) throw ParseError(lineno + 1, 1, "missing dim");
    for (int i = 0; i < f.n; ++i)
        for (int k = 0; k < f.n; ++k)
            if (!seen[i * f.n + k])
                throw ParseError(lineno + 1, 1, "missing entry J[" + std::to_string(i + 1) + "][" + std::to_string(k + 1) + "]");
    if (verify) {
        auto inv = check_involution(f.J);
        if (!inv.pass) throw ParseError(lineno + 1, 1, "structure fails J^2 = -Id at entries " + inv.failing.front());
    }
    return f;
}

std::string print_cq(const Cq& c) {
    auto q = [](const mpq_class& v) { return v.get_str(10); };
    if (c.is_real()) return q(c.re());
    if (sgn(c.re()) == 0) {
        if (c.im() == 1) return "i";
        if (c.im() == -1) return "-i";
        return q(c.im()) + "*i";
    }
    mpq_class im = c.im();
    std::string s = "(" + q(c.re()) + (sgn(im) < 0 ? " - " : " + ");
    mpq_class a = abs(im);
    s += (a == 1 ? std::string("i") : q(a) + "*i") + ")";
    return s;
}

namespace {

std::string power(const std::string& base, int e) { return e == 1 ? base : base + "^" + std::to_string(e); }

std::vector<std::string> monomial_factors(const ConjMonomial& m, const std::vector<std::string>& vars) {
    std::vector<std::string> out;
    for (int k = 0; k < m.nvars(); ++k) {
        int a = m.holo(k), b = m.anti(k), e = std::min(a, b);
        if (e) out.push_back(power("abs2(" + vars[k] + ")", e));
        if (a > e) out.push_back(power(vars[k], a - e));
        if (b > e) out.push_back(power("conj(" + vars[k] + ")", b - e));
    }
    return out;
}

void append_term(std::string& out, const Cq& c, const std::vector<std::string>& factors) {
    bool negative = false;
    Cq v = c;
    if (c.is_real() && sgn(c.re()) < 0) negative = true;
    if (sgn(c.re()) == 0 && sgn(c.im()) < 0) negative = true;
    if (negative) v = -c;
    std::string body;
    if (factors.empty() || !v.is_one()) body = print_cq(v);
    for (const auto& f : factors) body += (body.empty() ? "" : "*") + f;
    if (out.empty())
        out = (negative ? "-" : "") + body;
    else
        out += (negative ? " - " : " + ") + body;
}

} // namespace

std::string print_polynomial(const Polynomial& p, const std::vector<std::string>& vars) {
    std::string out;
    for (const auto& [m, c] : p.terms()) append_term(out, c, monomial_factors(m, vars));
    return out.empty() ? "0" : out;
}

std::string print_expression(const Expression& e, const std::vector<std::string>& vars) {
    std::string out;
    for (const auto& [s, p] : e.terms()) {
        std::vector<std::string> roots;
        for (const auto& r : s.radicands()) roots.push_back("sqrt(" + print_polynomial(r, vars) + ")");
        for (const auto& [m, c] : p.terms()) {
            auto f = monomial_factors(m, vars);
            f.insert(f.end(), roots.begin(), roots.end());
            append_term(out, c, f);
        }
    }
    return out.empty() ? "0" : out;
}

std::string print_structure(const StructureFile& f) {
    std::ostringstream o;
    if (!f.name.empty()) o << "name = " << f.name << "\n";
    o << "dim = " << f.n << "\n";
    if (f.vars != default_vars(f.n)) {
        o << "vars = ";
        for (std::size_t k = 0; k < f.vars.size(); ++k) o << (k ? ", " : "") << f.vars[k];
        o << "\n";
    }
    for (int i = 0; i < f.n; ++i)
        for (int k = 0; k < f.n; ++k)
            o << "J[" << i + 1 << "][" << k + 1 << "] = (" << print_expression(f.J.lin(i, k), f.vars) << ", "
              << print_expression(f.J.anti(i, k), f.vars) << ")\n";
    for (const auto& [k, v] : f.expect) o << "expect " << k << " = " << v << "\n";
    return o.str();
}

} // namespace acb::cli
