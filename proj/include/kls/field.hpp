#pragma once

// Coefficient fields for the twisted group ring and the localization model.
//
// ExactField works with RatFunc values.  ModPField represents a rational
// function f by the vector of values (u f)(P) for u in W (and optionally
// also at the dual point), where P is a random point modulo a 62-bit prime;
// the Weyl action is then a permutation of entries and duality swaps the
// two halves.  Both expose the same interface so the algebra templates are
// written once.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "kls/hecke.hpp"
#include "kls/modp.hpp"
#include "kls/ratfunc.hpp"
#include "kls/root_system.hpp"

namespace kls {

class ExactField {
   public:
    using Scalar = RatFunc;
    static constexpr bool kExact = true;

    explicit ExactField(const WeylGroup& W) : W_(W), nv_(W.rank() + 1) {}

    const WeylGroup& group() const { return W_; }
    int nvars() const { return nv_; }

    Scalar zero() const { return RatFunc(nv_); }
    Scalar one() const { return integer(Int(1)); }
    Scalar integer(const Int& c) const { return RatFunc::constant(nv_, c); }
    Scalar t_pow(int k) const { return RatFunc::monomial(nv_, Monomial::var(0, k)); }
    Scalar chr(const Weight& lambda, int t_exp = 0) const {
        return RatFunc::monomial(nv_, weight_monomial(lambda, t_exp));
    }
    Scalar from_laurent(const LaurentPoly& p) const { return RatFunc::from_poly(p); }
    Scalar from_tpoly(const TPoly& p) const { return RatFunc::from_poly(p.to_laurent(nv_)); }
    // Keep a polynomial as an irreducible-looking factor so products cancel.
    Scalar atomize(const Scalar& s) const;

    Scalar act(Elem w, const Scalar& s) const;
    Scalar dual(const Scalar& s) const { return dualize(s, true, true); }

    bool is_zero(const Scalar& s) const { return s.is_zero(); }
    bool eq(const Scalar& a, const Scalar& b) const { return a == b; }
    std::string str(const Scalar& s) const { return s.str(); }

   private:
    Monomial act_monomial(Elem w, Monomial m) const;

    const WeylGroup& W_;
    int nv_;
    mutable std::mutex mu_;
    mutable std::unordered_map<uint64_t, SplitPoly> atom_cache_;
};

// Values at the orbit points; size |W| or 2|W| (second half at the dual point).
struct EvalVec {
    std::vector<uint64_t> v;

    EvalVec& operator+=(const EvalVec& o);
    EvalVec& operator-=(const EvalVec& o);
    EvalVec& operator*=(const EvalVec& o);
    friend EvalVec operator+(EvalVec a, const EvalVec& b) { return a += b; }
    friend EvalVec operator-(EvalVec a, const EvalVec& b) { return a -= b; }
    friend EvalVec operator*(EvalVec a, const EvalVec& b) { return a *= b; }
    friend EvalVec operator/(const EvalVec& a, const EvalVec& b) { return a * b.inv(); }
    EvalVec operator-() const;
    EvalVec inv() const;  // throws ResampleNeeded on a zero entry
    friend bool operator==(const EvalVec& a, const EvalVec& b) { return a.v == b.v; }
};

class ModPField {
   public:
    using Scalar = EvalVec;
    static constexpr bool kExact = false;

    ModPField(const WeylGroup& W, uint64_t seed, bool with_dual);

    const WeylGroup& group() const { return W_; }
    uint64_t seed() const { return seed_; }
    bool with_dual() const { return with_dual_; }
    const ModPPoint& point() const { return point_; }

    Scalar zero() const { return EvalVec{std::vector<uint64_t>(size_, 0)}; }
    Scalar one() const { return EvalVec{std::vector<uint64_t>(size_, 1)}; }
    Scalar integer(const Int& c) const { return EvalVec{std::vector<uint64_t>(size_, modp::from_int(c))}; }
    Scalar t_pow(int k) const { return chr(Weight(static_cast<size_t>(W_.rank()), 0), k); }
    Scalar chr(const Weight& lambda, int t_exp = 0) const;
    Scalar from_laurent(const LaurentPoly& p) const;
    Scalar from_tpoly(const TPoly& p) const;
    Scalar from_ratfunc(const RatFunc& f) const;
    Scalar atomize(const Scalar& s) const { return s; }

    Scalar act(Elem w, const Scalar& s) const;
    Scalar dual(const Scalar& s) const;

    bool is_zero(const Scalar& s) const;
    bool eq(const Scalar& a, const Scalar& b) const { return a == b; }
    std::string str(const Scalar& s) const;

   private:
    const WeylGroup& W_;
    uint64_t seed_;
    bool with_dual_;
    size_t size_;
    ModPPoint point_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<Weight, int>, EvalVec> chr_cache_;
};

}  // namespace kls
