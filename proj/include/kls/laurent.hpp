#pragma once

// Multivariate Laurent polynomials over Z in the variables t, z_1, ..., z_n.
//
// Slot 0 of a monomial is the exponent of t; slot i (1 <= i <= n) is the
// exponent of z_i = e^{omega_i}.  Terms are kept sorted in descending
// lexicographic order of exponent vectors (t first), with no zero
// coefficients, so the representation of a polynomial is canonical.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kls/integer.hpp"

namespace kls {

inline constexpr int kMaxVars = 8;

// Exponent vector packed into eight biased 16-bit fields.  Integer order on
// the packed word coincides with lexicographic order on exponent vectors.
class Monomial {
   public:
    using Word = unsigned __int128;

    constexpr Monomial() noexcept : bits_(bias_word()) {}
    static Monomial from_exponents(std::span<const int> exps);
    static Monomial var(int slot, int power = 1);

    int exp(int slot) const noexcept {
        return static_cast<int>(static_cast<uint16_t>(bits_ >> shift(slot))) - kBias;
    }
    std::array<int, kMaxVars> exponents() const noexcept;
    bool is_one() const noexcept { return bits_ == bias_word(); }

    Monomial operator*(Monomial o) const noexcept { return Monomial(bits_ + o.bits_ - bias_word()); }
    Monomial operator/(Monomial o) const noexcept { return Monomial(bits_ - o.bits_ + bias_word()); }
    Monomial inverse() const noexcept { return Monomial(bias_word() + bias_word() - bits_); }
    Monomial pow(int k) const;

    // Componentwise minimum / comparison.
    static Monomial min(Monomial a, Monomial b) noexcept;
    bool componentwise_geq(Monomial o) const noexcept;

    Word bits() const noexcept { return bits_; }
    friend auto operator<=>(Monomial a, Monomial b) noexcept { return a.bits_ <=> b.bits_; }
    friend bool operator==(Monomial a, Monomial b) noexcept { return a.bits_ == b.bits_; }

    // Total degree (sum of absolute exponents); used for degree bounds.
    int abs_degree(int nvars) const noexcept;

   private:
    static constexpr int kBias = 1 << 15;
    static constexpr int shift(int slot) noexcept { return 16 * (kMaxVars - 1 - slot); }
    static constexpr Word bias_word() noexcept {
        Word w = 0;
        for (int i = 0; i < kMaxVars; ++i) w |= Word(kBias) << shift(i);
        return w;
    }
    explicit constexpr Monomial(Word b) noexcept : bits_(b) {}

    Word bits_;
};

struct Term {
    Monomial mono;
    Int coef;
};

class LaurentPoly {
   public:
    LaurentPoly() = default;
    explicit LaurentPoly(int nvars) : nvars_(nvars) {}
    static LaurentPoly constant(int nvars, const Int& c);
    static LaurentPoly monomial(int nvars, Monomial m, const Int& c = Int(1));
    // Builds from arbitrary (unsorted, possibly repeated) terms.
    static LaurentPoly from_terms(int nvars, std::vector<Term> terms);

    int nvars() const noexcept { return nvars_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    bool is_constant() const noexcept { return is_zero() || (is_monomial() && terms_[0].mono.is_one()); }
    const Term& lead() const { return terms_.front(); }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly pow(int k) const;

    LaurentPoly scaled(const Int& c) const;
    LaurentPoly shifted(Monomial m) const;
    // Exact division of every coefficient by c.
    LaurentPoly divexact(const Int& c) const;

    // Gcd of the coefficients (positive), zero for the zero polynomial.
    Int content() const;
    // Componentwise minimum exponent over all terms.
    Monomial min_exponents() const;

    // Exact quotient by `divisor` if it divides in the Laurent ring.  Works by
    // clearing monomial content and running lex-order polynomial division.
    std::optional<LaurentPoly> try_divide(const LaurentPoly& divisor) const;

    // Image under a monomial substitution (a group homomorphism on monomials).
    LaurentPoly substitute(const std::function<Monomial(Monomial)>& map) const;

    // Largest |exponent sum| over terms; a crude structural degree bound.
    int degree_bound() const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) noexcept {
        if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
        return true;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) noexcept { return !(a == b); }
    // Total order used for canonical sorting of atoms.
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

    size_t hash() const;
    void check_arity(const LaurentPoly& o) const;

   private:
    void normalize();  // sort, merge, drop zeros

    int nvars_ = 0;
    std::vector<Term> terms_;
};

struct LaurentPolyHash {
    size_t operator()(const LaurentPoly& p) const { return p.hash(); }
};

// Sum of two sorted term lists (used by both LaurentPoly and callers that
// accumulate many terms).
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract);

}  // namespace kls
