#include <cctype>
#include <stdexcept>
#include <string>

#include "kls/ratfunc.hpp"

namespace kls {

namespace {

std::string var_name(int slot) { return slot == 0 ? "t" : "z" + std::to_string(slot); }

std::string mono_str(Monomial m, int nvars) {
    std::string s;
    for (int i = 0; i < nvars; ++i) {
        int e = m.exp(i);
        if (e == 0) continue;
        if (!s.empty()) s += "*";
        s += var_name(i);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

class Parser {
   public:
    Parser(const std::string& s, int nvars) : s_(s), nvars_(nvars) {}

    LaurentPoly poly() {
        std::vector<Term> terms;
        skip();
        bool first = true;
        while (pos_ < s_.size() && s_[pos_] != ')') {
            int sign = 1;
            if (peek('+')) {
                ++pos_;
            } else if (peek('-')) {
                sign = -1;
                ++pos_;
            } else if (!first) {
                fail("expected + or -");
            }
            skip();
            terms.push_back(term(sign));
            first = false;
            skip();
        }
        if (first) fail("empty polynomial");
        return LaurentPoly::from_terms(nvars_, std::move(terms));
    }

    RatFunc ratfunc() {
        skip();
        size_t save = pos_;
        if (peek('(')) {
            ++pos_;
            LaurentPoly num = poly();
            expect(')');
            skip();
            if (peek('/')) {
                ++pos_;
                skip();
                expect('(');
                LaurentPoly den = poly();
                expect(')');
                skip();
                if (pos_ != s_.size()) fail("trailing input");
                if (den.is_zero()) fail("zero denominator");
                return RatFunc::fraction(num, den);
            }
            pos_ = save;
        }
        LaurentPoly p = poly();
        if (pos_ != s_.size()) fail("trailing input");
        return RatFunc::from_poly(p);
    }

    bool done() {
        skip();
        return pos_ == s_.size();
    }

   private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
    void expect(char c) {
        skip();
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + why);
    }

    int signed_int() {
        skip();
        bool paren = false;
        if (peek('(')) {
            paren = true;
            ++pos_;
            skip();
        }
        int sign = 1;
        if (peek('-')) {
            sign = -1;
            ++pos_;
        } else if (peek('+')) {
            ++pos_;
        }
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        int v = std::stoi(s_.substr(start, pos_ - start));
        if (paren) expect(')');
        return sign * v;
    }

    Term term(int sign) {
        Int coef(sign);
        std::array<int, kMaxVars> e{};
        bool any = false;
        while (true) {
            skip();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                size_t start = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                coef *= Int(s_.substr(start, pos_ - start));
            } else if (peek('t')) {
                ++pos_;
                e[0] += exponent();
            } else if (peek('z')) {
                ++pos_;
                size_t start = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (start == pos_) fail("expected variable index");
                int idx = std::stoi(s_.substr(start, pos_ - start));
                if (idx < 1 || idx >= nvars_) fail("variable index out of range");
                e[static_cast<size_t>(idx)] += exponent();
            } else {
                fail("expected factor");
            }
            any = true;
            skip();
            if (peek('*')) {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        return {Monomial::from_exponents(std::span<const int>(e.data(), static_cast<size_t>(nvars_))), coef};
    }

    int exponent() {
        skip();
        if (!peek('^')) return 1;
        ++pos_;
        return signed_int();
    }

    const std::string& s_;
    int nvars_;
    size_t pos_ = 0;
};

}  // namespace

std::string poly_str(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        bool neg = t.coef.sign() < 0;
        Int mag = t.coef.abs();
        std::string m = mono_str(t.mono, p.nvars());
        std::string body;
        if (m.empty())
            body = mag.str();
        else if (mag.is_one())
            body = m;
        else
            body = mag.str() + "*" + m;
        if (first)
            out += neg ? "-" + body : body;
        else
            out += (neg ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

LaurentPoly parse_poly(const std::string& s, int nvars) {
    Parser ps(s, nvars);
    LaurentPoly p = ps.poly();
    if (!ps.done()) throw std::invalid_argument("parse error: trailing input");
    return p;
}

RatFunc parse_ratfunc(const std::string& s, int nvars) { return Parser(s, nvars).ratfunc(); }

std::string RatFunc::str() const {
    RatFunc s = simplified();
    LaurentPoly d = s.den();
    LaurentPoly n = s.num();
    if (d.is_constant() && d.lead().coef.is_one()) return poly_str(n);
    return "(" + poly_str(n) + ")/(" + poly_str(d) + ")";
}

}  // namespace kls
