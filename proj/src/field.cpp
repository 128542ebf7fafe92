#include "kls/field.hpp"

#include <sstream>
#include <stdexcept>

namespace kls {

// ExactField

Monomial ExactField::act_monomial(Elem w, Monomial m) const {
    const int n = W_.rank();
    const auto& M = W_.matrix(w);
    auto e = m.exponents();
    std::array<int, kMaxVars> out{};
    out[0] = e[0];
    for (int i = 0; i < n; ++i) {
        int s = 0;
        for (int j = 0; j < n; ++j) s += M[static_cast<size_t>(i * n + j)] * e[static_cast<size_t>(j + 1)];
        out[static_cast<size_t>(i + 1)] = s;
    }
    return Monomial::from_exponents(std::span<const int>(out.data(), static_cast<size_t>(n + 1)));
}

RatFunc ExactField::act(Elem w, const RatFunc& s) const {
    if (w == 0) return s;
    auto map = [this, w](Monomial m) { return act_monomial(w, m); };
    auto image = [this, w, &map](AtomId a) {
        uint64_t key = (static_cast<uint64_t>(a) << 32) | w;
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = atom_cache_.find(key);
            if (it != atom_cache_.end()) return it->second;
        }
        SplitPoly sp = atoms::split(atoms::get(a).substitute(map));
        std::lock_guard<std::mutex> lk(mu_);
        atom_cache_.emplace(key, sp);
        return sp;
    };
    return s.substitute(map, image);
}

RatFunc ExactField::atomize(const RatFunc& s) const {
    if (!s.factors().empty() || !s.den_const().is_one()) return s;
    const LaurentPoly& r = s.residual();
    if (r.is_zero() || r.is_monomial()) return s;
    return RatFunc::factor(r);
}

// EvalVec

EvalVec& EvalVec::operator+=(const EvalVec& o) {
    for (size_t i = 0; i < v.size(); ++i) v[i] = modp::add(v[i], o.v[i]);
    return *this;
}

EvalVec& EvalVec::operator-=(const EvalVec& o) {
    for (size_t i = 0; i < v.size(); ++i) v[i] = modp::sub(v[i], o.v[i]);
    return *this;
}

EvalVec& EvalVec::operator*=(const EvalVec& o) {
    for (size_t i = 0; i < v.size(); ++i) v[i] = modp::mul(v[i], o.v[i]);
    return *this;
}

EvalVec EvalVec::operator-() const {
    EvalVec r = *this;
    for (auto& x : r.v) x = modp::neg(x);
    return r;
}

EvalVec EvalVec::inv() const {
    // Batch inversion: one modular inverse per vector.
    EvalVec r = *this;
    const size_t n = v.size();
    if (n == 0) return r;
    std::vector<uint64_t> prefix(n);
    uint64_t acc = 1;
    for (size_t i = 0; i < n; ++i) {
        if (v[i] == 0) throw ResampleNeeded();
        prefix[i] = acc;
        acc = modp::mul(acc, v[i]);
    }
    uint64_t inv = modp::inv(acc);
    for (size_t i = n; i-- > 0;) {
        r.v[i] = modp::mul(inv, prefix[i]);
        inv = modp::mul(inv, v[i]);
    }
    return r;
}

// ModPField

ModPField::ModPField(const WeylGroup& W, uint64_t seed, bool with_dual)
    : W_(W),
      seed_(seed),
      with_dual_(with_dual),
      size_(W.size() * (with_dual ? 2 : 1)),
      point_(ModPPoint::random(W.rank() + 1, seed)) {}

EvalVec ModPField::chr(const Weight& lambda, int t_exp) const {
    auto key = std::make_pair(lambda, t_exp);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = chr_cache_.find(key);
        if (it != chr_cache_.end()) return it->second;
    }
    const size_t N = W_.size();
    const int n = W_.rank();
    EvalVec r{std::vector<uint64_t>(size_)};
    uint64_t tv = modp::pow(point_.values[0], t_exp);
    for (Elem u = 0; u < N; ++u) {
        Weight mu = W_.act(u, lambda);
        uint64_t x = tv;
        for (int i = 0; i < n; ++i)
            if (mu[static_cast<size_t>(i)]) x = modp::mul(x, modp::pow(point_.values[static_cast<size_t>(i + 1)], mu[static_cast<size_t>(i)]));
        r.v[u] = x;
    }
    if (with_dual_) {
        EvalVec head{std::vector<uint64_t>(r.v.begin(), r.v.begin() + static_cast<long>(N))};
        EvalVec back = head.inv();
        std::copy(back.v.begin(), back.v.end(), r.v.begin() + static_cast<long>(N));
    }
    std::lock_guard<std::mutex> lk(mu_);
    chr_cache_.emplace(key, r);
    return r;
}

EvalVec ModPField::from_laurent(const LaurentPoly& p) const {
    const int n = W_.rank();
    EvalVec r = zero();
    for (const auto& term : p.terms()) {
        auto e = term.mono.exponents();
        Weight lambda(e.begin() + 1, e.begin() + 1 + n);
        EvalVec c = chr(lambda, e[0]);
        uint64_t k = modp::from_int(term.coef);
        for (size_t i = 0; i < size_; ++i) r.v[i] = modp::add(r.v[i], modp::mul(k, c.v[i]));
    }
    return r;
}

EvalVec ModPField::from_tpoly(const TPoly& p) const {
    const size_t N = W_.size();
    uint64_t t = point_.values[0];
    uint64_t a = 0, b = 0;
    for (int k = p.low(); !p.is_zero() && k <= p.high(); ++k) {
        uint64_t c = modp::from_int(p.coeff(k));
        if (!c) continue;
        a = modp::add(a, modp::mul(c, modp::pow(t, k)));
        if (with_dual_) b = modp::add(b, modp::mul(c, modp::pow(t, -k)));
    }
    EvalVec r{std::vector<uint64_t>(size_, a)};
    if (with_dual_) std::fill(r.v.begin() + static_cast<long>(N), r.v.end(), b);
    return r;
}

EvalVec ModPField::from_ratfunc(const RatFunc& f) const {
    EvalVec r = from_laurent(f.residual());
    for (const auto& [id, e] : f.factors()) {
        EvalVec a = from_laurent(atoms::get(id));
        EvalVec base = e > 0 ? a : a.inv();
        for (int k = 0; k < (e > 0 ? e : -e); ++k) r *= base;
    }
    if (!f.den_const().is_one()) r = r / integer(f.den_const());
    return r;
}

EvalVec ModPField::act(Elem w, const EvalVec& s) const {
    if (w == 0) return s;
    const size_t N = W_.size();
    EvalVec r{std::vector<uint64_t>(size_)};
    for (Elem u = 0; u < N; ++u) {
        Elem uw = W_.mul(u, w);
        r.v[u] = s.v[uw];
        if (with_dual_) r.v[N + u] = s.v[N + uw];
    }
    return r;
}

EvalVec ModPField::dual(const EvalVec& s) const {
    if (!with_dual_) throw std::logic_error("mod-p field built without the dual point");
    const size_t N = W_.size();
    EvalVec r{std::vector<uint64_t>(size_)};
    for (size_t i = 0; i < N; ++i) {
        r.v[i] = s.v[N + i];
        r.v[N + i] = s.v[i];
    }
    return r;
}

bool ModPField::is_zero(const EvalVec& s) const {
    for (uint64_t x : s.v)
        if (x) return false;
    return true;
}

std::string ModPField::str(const EvalVec& s) const {
    std::ostringstream os;
    os << "modp(seed=" << seed_ << ")[" << (s.v.empty() ? 0 : s.v[0]) << ", ...]";
    return os.str();
}

}  // namespace kls
