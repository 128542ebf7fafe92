#include "kls/laurent.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace kls {

Monomial Monomial::from_exponents(std::span<const int> exps) {
    if (exps.size() > static_cast<size_t>(kMaxVars)) throw std::invalid_argument("too many variables");
    Word w = bias_word();
    for (size_t i = 0; i < exps.size(); ++i) {
        int e = exps[i];
        if (e <= -kBias || e >= kBias) throw std::overflow_error("exponent out of range");
        Word mask = Word(0xFFFF) << shift(static_cast<int>(i));
        w = (w & ~mask) | (Word(static_cast<uint16_t>(e + kBias)) << shift(static_cast<int>(i)));
    }
    return Monomial(w);
}

Monomial Monomial::var(int slot, int power) {
    std::array<int, kMaxVars> e{};
    e[static_cast<size_t>(slot)] = power;
    return from_exponents(e);
}

std::array<int, kMaxVars> Monomial::exponents() const noexcept {
    std::array<int, kMaxVars> e{};
    for (int i = 0; i < kMaxVars; ++i) e[static_cast<size_t>(i)] = exp(i);
    return e;
}

Monomial Monomial::pow(int k) const {
    auto e = exponents();
    for (auto& x : e) x *= k;
    return from_exponents(e);
}

Monomial Monomial::min(Monomial a, Monomial b) noexcept {
    Word w = 0;
    for (int i = 0; i < kMaxVars; ++i) {
        Word mask = Word(0xFFFF) << shift(i);
        Word fa = a.bits_ & mask, fb = b.bits_ & mask;
        w |= std::min(fa, fb);
    }
    return Monomial(w);
}

bool Monomial::componentwise_geq(Monomial o) const noexcept {
    for (int i = 0; i < kMaxVars; ++i) {
        Word mask = Word(0xFFFF) << shift(i);
        if ((bits_ & mask) < (o.bits_ & mask)) return false;
    }
    return true;
}

int Monomial::abs_degree(int nvars) const noexcept {
    int d = 0;
    for (int i = 0; i < nvars; ++i) d += std::abs(exp(i));
    return d;
}

// ---------------------------------------------------------------------------

LaurentPoly LaurentPoly::constant(int nvars, const Int& c) { return monomial(nvars, Monomial(), c); }

LaurentPoly LaurentPoly::monomial(int nvars, Monomial m, const Int& c) {
    LaurentPoly p(nvars);
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
}

LaurentPoly LaurentPoly::from_terms(int nvars, std::vector<Term> terms) {
    LaurentPoly p(nvars);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
}

void LaurentPoly::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
    size_t out = 0;
    for (size_t i = 0; i < terms_.size();) {
        size_t j = i + 1;
        Int c = std::move(terms_[i].coef);
        while (j < terms_.size() && terms_[j].mono == terms_[i].mono) c += terms_[j++].coef;
        if (!c.is_zero()) {
            terms_[out].mono = terms_[i].mono;
            terms_[out].coef = std::move(c);
            ++out;
        }
        i = j;
    }
    terms_.resize(out);
}

void LaurentPoly::check_arity(const LaurentPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("arity mismatch");
}

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].mono > a[i].mono) {
            out.push_back({b[j].mono, subtract ? -b[j].coef : b[j].coef});
            ++j;
        } else {
            Int c = subtract ? a[i].coef - b[j].coef : a[i].coef + b[j].coef;
            if (!c.is_zero()) out.push_back({a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    check_arity(o);
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    check_arity(o);
    if (o.terms_.empty()) return *this;
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_arity(b);
    if (a.is_zero() || b.is_zero()) return LaurentPoly(a.nvars_);
    if (a.is_monomial()) return b.shifted(a.terms_[0].mono).scaled(a.terms_[0].coef);
    if (b.is_monomial()) return a.shifted(b.terms_[0].mono).scaled(b.terms_[0].coef);
    std::vector<Term> prod;
    prod.reserve(a.size() * b.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) prod.push_back({x.mono * y.mono, x.coef * y.coef});
    return LaurentPoly::from_terms(a.nvars_, std::move(prod));
}

LaurentPoly LaurentPoly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power of a polynomial");
    LaurentPoly r = constant(nvars_, Int(1)), base = *this;
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

LaurentPoly LaurentPoly::scaled(const Int& c) const {
    if (c.is_zero()) return LaurentPoly(nvars_);
    LaurentPoly r = *this;
    if (c.is_one()) return r;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

LaurentPoly LaurentPoly::shifted(Monomial m) const {
    LaurentPoly r = *this;
    if (m.is_one()) return r;
    for (auto& t : r.terms_) t.mono = t.mono * m;
    return r;  // order is preserved by a translation
}

LaurentPoly LaurentPoly::divexact(const Int& c) const {
    LaurentPoly r = *this;
    if (c.is_one()) return r;
    for (auto& t : r.terms_) t.coef = Int::divexact(t.coef, c);
    return r;
}

Int LaurentPoly::content() const {
    Int g(0);
    for (const auto& t : terms_) {
        g = Int::gcd(g, t.coef);
        if (g.is_one()) break;
    }
    return g;
}

Monomial LaurentPoly::min_exponents() const {
    if (terms_.empty()) return Monomial();
    Monomial m = terms_[0].mono;
    for (size_t i = 1; i < terms_.size(); ++i) m = Monomial::min(m, terms_[i].mono);
    return m;
}

std::optional<LaurentPoly> LaurentPoly::try_divide(const LaurentPoly& divisor) const {
    check_arity(divisor);
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    if (is_zero()) return LaurentPoly(nvars_);
    if (divisor.is_monomial()) {
        const Term& d = divisor.terms_[0];
        LaurentPoly q = shifted(d.mono.inverse());
        for (auto& t : q.terms_) {
            if (!Int::divisible(t.coef, d.coef)) return std::nullopt;
            t.coef = Int::divexact(t.coef, d.coef);
        }
        return q;
    }
    Monomial sa = min_exponents(), sd = divisor.min_exponents();
    LaurentPoly dv = divisor.shifted(sd.inverse());
    const Term& lead_d = dv.terms_[0];

    std::map<Monomial, Int, std::greater<>> rem;
    for (const auto& t : terms_) rem.emplace(t.mono / sa, t.coef);
    std::vector<Term> quot;
    while (!rem.empty()) {
        auto it = rem.begin();
        if (!it->first.componentwise_geq(lead_d.mono)) return std::nullopt;
        if (!Int::divisible(it->second, lead_d.coef)) return std::nullopt;
        Monomial qm = it->first / lead_d.mono;
        Int qc = Int::divexact(it->second, lead_d.coef);
        rem.erase(it);
        for (size_t k = 1; k < dv.terms_.size(); ++k) {
            Monomial m = dv.terms_[k].mono * qm;
            auto [pos, inserted] = rem.try_emplace(m, Int(0));
            pos->second -= qc * dv.terms_[k].coef;
            if (pos->second.is_zero()) rem.erase(pos);
        }
        quot.push_back({qm, std::move(qc)});
    }
    LaurentPoly q(nvars_);
    q.terms_ = std::move(quot);  // emitted in decreasing order
    return q.shifted(sa / sd);
}

LaurentPoly LaurentPoly::substitute(const std::function<Monomial(Monomial)>& map) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({map(t.mono), t.coef});
    return from_terms(nvars_, std::move(out));
}

int LaurentPoly::degree_bound() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.abs_degree(nvars_));
    return d;
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
    for (size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].mono != b.terms_[i].mono) return a.terms_[i].mono < b.terms_[i].mono;
        if (a.terms_[i].coef != b.terms_[i].coef) return a.terms_[i].coef < b.terms_[i].coef;
    }
    return false;
}

size_t LaurentPoly::hash() const {
    size_t h = 0x9e3779b97f4a7c15ULL ^ (terms_.size() * 31 + static_cast<size_t>(nvars_));
    for (const auto& t : terms_) {
        auto w = t.mono.bits();
        uint64_t lo = static_cast<uint64_t>(w), hi = static_cast<uint64_t>(w >> 64);
        h ^= std::hash<uint64_t>{}(lo) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<uint64_t>{}(hi) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= t.coef.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace kls
