#include "kls/ratfunc.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace kls {

namespace atoms {
namespace {

struct Table {
    std::shared_mutex mu;
    std::vector<std::unique_ptr<LaurentPoly>> polys;
    std::unordered_map<LaurentPoly, AtomId, LaurentPolyHash> index;
};

Table& table() {
    static Table t;
    return t;
}

AtomId intern(LaurentPoly p) {
    Table& t = table();
    {
        std::shared_lock lk(t.mu);
        auto it = t.index.find(p);
        if (it != t.index.end()) return it->second;
    }
    std::unique_lock lk(t.mu);
    auto it = t.index.find(p);
    if (it != t.index.end()) return it->second;
    auto id = static_cast<AtomId>(t.polys.size());
    t.polys.push_back(std::make_unique<LaurentPoly>(p));
    t.index.emplace(std::move(p), id);
    return id;
}

}  // namespace

SplitPoly split(const LaurentPoly& p) {
    if (p.is_zero()) throw std::domain_error("cannot split the zero polynomial");
    if (p.is_monomial()) return {p.lead().coef, p.lead().mono, std::nullopt};
    Monomial m = p.min_exponents();
    Int c = p.content();
    if (p.lead().coef.sign() < 0) c = -c;
    LaurentPoly a = p.shifted(m.inverse()).divexact(c);
    return {c, m, intern(std::move(a))};
}

const LaurentPoly& get(AtomId id) {
    Table& t = table();
    std::shared_lock lk(t.mu);
    return *t.polys.at(id);
}

size_t count() {
    Table& t = table();
    std::shared_lock lk(t.mu);
    return t.polys.size();
}

}  // namespace atoms

namespace {

RatFunc::Factors merge_factors(const RatFunc::Factors& a, const RatFunc::Factors& b, int sign_b) {
    RatFunc::Factors out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, sign_b * b[j].second);
            ++j;
        } else {
            int e = a[i].second + sign_b * b[j].second;
            if (e != 0) out.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    return out;
}

LaurentPoly expand_atom(AtomId id, int e, int nvars) {
    const LaurentPoly& a = atoms::get(id);
    if (a.nvars() != nvars) throw std::invalid_argument("arity mismatch");
    return e == 1 ? a : a.pow(e);
}

}  // namespace

RatFunc RatFunc::from_poly(const LaurentPoly& p) {
    RatFunc r(p.nvars());
    r.res_ = p;
    return r;
}

RatFunc RatFunc::constant(int nvars, const Int& c) { return from_poly(LaurentPoly::constant(nvars, c)); }

RatFunc RatFunc::monomial(int nvars, Monomial m, const Int& c) {
    return from_poly(LaurentPoly::monomial(nvars, m, c));
}

RatFunc RatFunc::factor(const LaurentPoly& p, int e) {
    SplitPoly sp = atoms::split(p);
    RatFunc r(p.nvars());
    r.res_ = LaurentPoly::monomial(p.nvars(), sp.mono, sp.coef);
    if (sp.atom) r.fac_.emplace_back(*sp.atom, 1);
    return r.pow(e);
}

RatFunc RatFunc::fraction(const LaurentPoly& num, const LaurentPoly& den) {
    return from_poly(num) * factor(den, -1);
}

bool RatFunc::is_one() const { return fac_.empty() && den_.is_one() && res_.is_constant() && !res_.is_zero() && res_.lead().coef.is_one(); }

void RatFunc::reduce() {
    if (res_.is_zero()) {
        fac_.clear();
        den_ = Int(1);
        return;
    }
    for (auto it = fac_.begin(); it != fac_.end();) {
        if (it->second < 0) {
            const LaurentPoly& a = atoms::get(it->first);
            while (it->second < 0) {
                auto q = res_.try_divide(a);
                if (!q) break;
                res_ = std::move(*q);
                ++it->second;
            }
        }
        if (it->second == 0)
            it = fac_.erase(it);
        else
            ++it;
    }
    if (!den_.is_one()) {
        Int g = Int::gcd(res_.content(), den_);
        if (!g.is_one()) {
            res_ = res_.divexact(g);
            den_ = Int::divexact(den_, g);
        }
    }
}

LaurentPoly RatFunc::num() const {
    LaurentPoly n = res_;
    for (const auto& [id, e] : fac_)
        if (e > 0) n = n * expand_atom(id, e, nvars_);
    return n;
}

LaurentPoly RatFunc::den() const {
    LaurentPoly d = LaurentPoly::constant(nvars_, den_);
    for (const auto& [id, e] : fac_)
        if (e < 0) d = d * expand_atom(id, -e, nvars_);
    return d;
}

RatFunc RatFunc::simplified() const {
    RatFunc r(nvars_);
    r.res_ = num();
    r.den_ = den_;
    for (const auto& f : fac_)
        if (f.second < 0) r.fac_.push_back(f);
    r.reduce();
    return r;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.res_ = -r.res_;
    return r;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    a.res_.check_arity(b.res_);
    if (a.is_zero() || b.is_zero()) return RatFunc(a.nvars_);
    RatFunc r(a.nvars_);
    r.res_ = a.res_ * b.res_;
    r.den_ = a.den_ * b.den_;
    r.fac_ = merge_factors(a.fac_, b.fac_, 1);
    r.reduce();
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    a.res_.check_arity(b.res_);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RatFunc r(a.nvars_);
    LaurentPoly ra = a.res_, rb = b.res_;
    size_t i = 0, j = 0;
    while (i < a.fac_.size() || j < b.fac_.size()) {
        AtomId id;
        int ea = 0, eb = 0;
        if (j == b.fac_.size() || (i < a.fac_.size() && a.fac_[i].first < b.fac_[j].first)) {
            id = a.fac_[i].first;
            ea = a.fac_[i++].second;
        } else if (i == a.fac_.size() || b.fac_[j].first < a.fac_[i].first) {
            id = b.fac_[j].first;
            eb = b.fac_[j++].second;
        } else {
            id = a.fac_[i].first;
            ea = a.fac_[i++].second;
            eb = b.fac_[j++].second;
        }
        int c = std::min(ea, eb);
        if (c != 0) r.fac_.emplace_back(id, c);
        if (ea > c) ra = ra * expand_atom(id, ea - c, a.nvars_);
        if (eb > c) rb = rb * expand_atom(id, eb - c, a.nvars_);
    }
    if (a.den_ == b.den_) {
        r.den_ = a.den_;
    } else {
        r.den_ = Int::lcm(a.den_, b.den_);
        ra = ra.scaled(Int::divexact(r.den_, a.den_));
        rb = rb.scaled(Int::divexact(r.den_, b.den_));
    }
    r.res_ = std::move(ra);
    r.res_ += rb;
    r.reduce();
    return r;
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw std::domain_error("division by zero rational function");
    SplitPoly sp = atoms::split(res_);
    RatFunc r(nvars_);
    r.fac_ = merge_factors({}, fac_, -1);
    if (sp.atom) r.fac_ = merge_factors(r.fac_, {{*sp.atom, -1}}, 1);
    Int num = sp.coef.sign() < 0 ? -den_ : den_;
    r.res_ = LaurentPoly::monomial(nvars_, sp.mono.inverse(), num);
    r.den_ = sp.coef.abs();
    r.reduce();
    return r;
}

RatFunc RatFunc::pow(int k) const {
    if (k < 0) return inv().pow(-k);
    RatFunc r = constant(nvars_, Int(1)), base = *this;
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

RatFunc RatFunc::scaled(const Int& c) const {
    if (c.is_zero()) return RatFunc(nvars_);
    RatFunc r = *this;
    r.res_ = r.res_.scaled(c);
    r.reduce();
    return r;
}

RatFunc RatFunc::shifted(Monomial m) const {
    RatFunc r = *this;
    r.res_ = r.res_.shifted(m);
    return r;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_ && a.fac_ == b.fac_ && a.res_ == b.res_) return true;
    return (a - b).is_zero();
}

RatFunc RatFunc::substitute(const std::function<Monomial(Monomial)>& map,
                            const std::function<SplitPoly(AtomId)>& atom_image) const {
    RatFunc r(nvars_);
    if (is_zero()) return r;
    r.res_ = res_.substitute(map);
    r.den_ = den_;
    RatFunc extra = RatFunc::constant(nvars_, Int(1));
    for (const auto& [id, e] : fac_) {
        SplitPoly sp = atom_image ? atom_image(id) : atoms::split(atoms::get(id).substitute(map));
        RatFunc piece(nvars_);
        piece.res_ = LaurentPoly::monomial(nvars_, sp.mono, sp.coef);
        if (sp.atom) piece.fac_.emplace_back(*sp.atom, 1);
        extra = extra * piece.pow(e);
    }
    return r * extra;
}

int RatFunc::degree_bound() const {
    int d = res_.degree_bound();
    for (const auto& [id, e] : fac_) d += std::abs(e) * atoms::get(id).degree_bound();
    return d;
}

}  // namespace kls

namespace kls {

Monomial weight_monomial(std::span<const int> lambda, int t_exp) {
    std::array<int, kMaxVars> e{};
    if (lambda.size() + 1 > static_cast<size_t>(kMaxVars)) throw std::invalid_argument("rank too large");
    e[0] = t_exp;
    for (size_t i = 0; i < lambda.size(); ++i) e[i + 1] = lambda[i];
    return Monomial::from_exponents(std::span<const int>(e.data(), lambda.size() + 1));
}

RatFunc char_of_weight(std::span<const int> lambda) {
    int nv = static_cast<int>(lambda.size()) + 1;
    return RatFunc::monomial(nv, weight_monomial(lambda));
}

Monomial dualize_monomial(Monomial m, int nvars, bool invert_t, bool invert_chars) {
    auto e = m.exponents();
    if (invert_t) e[0] = -e[0];
    if (invert_chars)
        for (int i = 1; i < nvars; ++i) e[static_cast<size_t>(i)] = -e[static_cast<size_t>(i)];
    return Monomial::from_exponents(std::span<const int>(e.data(), static_cast<size_t>(nvars)));
}

RatFunc dualize(const RatFunc& f, bool invert_t, bool invert_chars) {
    if (!invert_t && !invert_chars) return f;
    int nv = f.nvars();
    if (invert_t && invert_chars) return f.substitute([](Monomial m) { return m.inverse(); });
    return f.substitute([=](Monomial m) { return dualize_monomial(m, nv, invert_t, invert_chars); });
}

}  // namespace kls
