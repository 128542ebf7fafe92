#pragma once

// Rational functions in t, z_1..z_n, kept in a partially factored form
//
//     value = residual * prod_k atom_k^{e_k} / den
//
// where `residual` is a Laurent polynomial, each atom is a primitive
// polynomial (no monomial content, coprime integer coefficients, positive
// leading coefficient) interned in a global table, e_k are nonzero integers
// and `den` is a positive integer.  Products only add exponents, so the
// repeated root binomials that appear in localization formulas cancel
// without any gcd computation.  Sums expand the non-shared positive atoms.
//
// Equality is semantic: a == b iff a - b has zero residual.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kls/laurent.hpp"

namespace kls {

using AtomId = uint32_t;

// A polynomial split as coef * mono * atom (atom absent when the polynomial is
// a monomial).
struct SplitPoly {
    Int coef;
    Monomial mono;
    std::optional<AtomId> atom;
};

namespace atoms {
SplitPoly split(const LaurentPoly& p);
const LaurentPoly& get(AtomId id);
size_t count();
}  // namespace atoms

class RatFunc {
   public:
    using Factors = std::vector<std::pair<AtomId, int>>;

    RatFunc() = default;
    explicit RatFunc(int nvars) : nvars_(nvars), res_(nvars) {}
    static RatFunc from_poly(const LaurentPoly& p);
    static RatFunc constant(int nvars, const Int& c);
    static RatFunc monomial(int nvars, Monomial m, const Int& c = Int(1));
    // p^e kept in factored form.
    static RatFunc factor(const LaurentPoly& p, int e = 1);
    static RatFunc fraction(const LaurentPoly& num, const LaurentPoly& den);

    int nvars() const noexcept { return nvars_; }
    bool is_zero() const noexcept { return res_.is_zero(); }
    bool is_one() const;

    const LaurentPoly& residual() const noexcept { return res_; }
    const Factors& factors() const noexcept { return fac_; }
    const Int& den_const() const noexcept { return den_; }

    // Expanded numerator and denominator (denominator normalised to have
    // positive leading coefficient and no monomial content).
    LaurentPoly num() const;
    LaurentPoly den() const;
    // Numerator with all factors expanded, after cancelling the denominator
    // atoms where they divide.
    RatFunc simplified() const;

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    RatFunc inv() const;
    RatFunc pow(int k) const;
    RatFunc scaled(const Int& c) const;
    RatFunc shifted(Monomial m) const;

    // Semantic equality.
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // Image under a monomial substitution.  `atom_image` may supply cached
    // images of atoms; by default they are recomputed.
    RatFunc substitute(const std::function<Monomial(Monomial)>& map,
                       const std::function<SplitPoly(AtomId)>& atom_image = nullptr) const;

    // Structural bound on the total degree of numerator plus denominator.
    int degree_bound() const;

    // Text form: numerator alone when the denominator is 1, else (num)/(den).
    std::string str() const;

   private:
    void reduce();

    int nvars_ = 0;
    LaurentPoly res_;
    Int den_{1};
    Factors fac_;
};

// e^lambda for lambda in fundamental-weight coordinates (ring arity n+1).
RatFunc char_of_weight(std::span<const int> lambda);
Monomial weight_monomial(std::span<const int> lambda, int t_exp = 0);

// Substitution t -> 1/t and/or z_i -> 1/z_i.
Monomial dualize_monomial(Monomial m, int nvars, bool invert_t, bool invert_chars);
RatFunc dualize(const RatFunc& f, bool invert_t, bool invert_chars);

// Text grammar: terms `c * t^a * z1^b1 * ...` joined by + and -.
std::string poly_str(const LaurentPoly& p);
LaurentPoly parse_poly(const std::string& s, int nvars);
RatFunc parse_ratfunc(const std::string& s, int nvars);

inline std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }
inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << poly_str(p); }

}  // namespace kls
