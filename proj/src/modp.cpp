#include "kls/modp.hpp"

#include <cmath>

namespace kls {

namespace modp {

uint64_t pow(uint64_t a, int64_t e) {
    if (e < 0) return pow(inv(a), -e);
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t inv(uint64_t a) {
    if (a % kPrime == 0) throw ResampleNeeded();
    return pow(a, static_cast<int64_t>(kPrime - 2));
}

uint64_t from_int(const Int& v) { return v.mod(kPrime); }

}  // namespace modp

ModPPoint ModPPoint::random(int nvars, uint64_t seed) {
    ModPPoint p;
    p.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> dist(2, modp::kPrime - 1);
    for (int i = 0; i < nvars; ++i) p.values.push_back(dist(rng));
    return p;
}

uint64_t eval(const LaurentPoly& p, const std::vector<uint64_t>& values) {
    uint64_t s = 0;
    int n = p.nvars();
    for (const auto& t : p.terms()) {
        uint64_t v = modp::from_int(t.coef);
        for (int i = 0; i < n && v; ++i) {
            int e = t.mono.exp(i);
            if (e) v = modp::mul(v, modp::pow(values[static_cast<size_t>(i)], e));
        }
        s = modp::add(s, v);
    }
    return s;
}

uint64_t eval(const RatFunc& f, const std::vector<uint64_t>& values) {
    uint64_t num = eval(f.residual(), values);
    uint64_t den = modp::from_int(f.den_const());
    for (const auto& [id, e] : f.factors()) {
        uint64_t a = eval(atoms::get(id), values);
        if (e > 0) {
            num = modp::mul(num, modp::pow(a, e));
        } else {
            den = modp::mul(den, modp::pow(a, -e));
        }
    }
    if (den == 0) throw ResampleNeeded();
    return modp::mul(num, modp::inv(den));
}

EqResult eq_detail(const RatFunc& a, const RatFunc& b, const EqMode& mode) {
    EqResult r;
    if (mode.exact) {
        r.equal = (a == b);
        return r;
    }
    if (mode.points < 1) throw std::invalid_argument("modp mode needs at least one point");
    int nv = a.nvars();
    uint64_t seed = mode.seed;
    int good = 0, resamples = 0;
    while (good < mode.points) {
        ModPPoint pt = ModPPoint::random(nv, seed++);
        try {
            if (eval(a, pt.values) != eval(b, pt.values)) {
                r.equal = false;
                return r;
            }
            ++good;
        } catch (const ResampleNeeded&) {
            if (++resamples > mode.max_resamples)
                throw std::runtime_error("no evaluation point with nonvanishing denominators found");
        }
    }
    r.equal = true;
    double d = static_cast<double>(a.degree_bound() + b.degree_bound());
    r.error_bound = std::pow(d / static_cast<double>(modp::kPrime), mode.points);
    return r;
}

}  // namespace kls
