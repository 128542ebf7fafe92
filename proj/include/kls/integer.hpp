#pragma once

// Arbitrary-precision integer with an inline 64-bit fast path.
//
// Values that fit in int64_t are stored inline; anything larger spills to a
// GMP integer.  Every operation renormalises back to the inline form when the
// result fits, so equality and hashing only ever have to compare like forms.

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace kls {

class Int {
   public:
    Int() noexcept = default;
    Int(int64_t v) noexcept : small_(v) {}  // NOLINT(google-explicit-constructor)
    Int(int v) noexcept : small_(v) {}      // NOLINT(google-explicit-constructor)
    explicit Int(const mpz_class& v) { assign(v); }
    explicit Int(const std::string& decimal);

    Int(const Int& o) : small_(o.small_), big_(o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr) {}
    Int(Int&&) noexcept = default;
    Int& operator=(const Int& o) {
        if (this != &o) {
            small_ = o.small_;
            big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Int& operator=(Int&&) noexcept = default;

    bool is_small() const noexcept { return !big_; }
    int64_t small() const noexcept { return small_; }
    mpz_class to_mpz() const { return big_ ? *big_ : mpz_class(static_cast<long>(small_)); }

    bool is_zero() const noexcept { return !big_ && small_ == 0; }
    bool is_one() const noexcept { return !big_ && small_ == 1; }
    int sign() const noexcept {
        if (big_) return sgn(*big_);
        return (small_ > 0) - (small_ < 0);
    }

    Int operator-() const;
    Int& operator+=(const Int& o);
    Int& operator-=(const Int& o);
    Int& operator*=(const Int& o);

    friend Int operator+(Int a, const Int& b) { return a += b; }
    friend Int operator-(Int a, const Int& b) { return a -= b; }
    friend Int operator*(Int a, const Int& b) { return a *= b; }

    // Exact quotient; the caller guarantees divisibility.
    static Int divexact(const Int& a, const Int& b);
    static bool divisible(const Int& a, const Int& b);
    static Int gcd(const Int& a, const Int& b);
    static Int lcm(const Int& a, const Int& b);
    Int abs() const { return sign() < 0 ? -*this : *this; }

    // Residue in [0, p).
    uint64_t mod(uint64_t p) const;

    friend bool operator==(const Int& a, const Int& b) {
        if (!a.big_ && !b.big_) return a.small_ == b.small_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;
    }
    friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
    friend bool operator<(const Int& a, const Int& b);

    size_t hash() const;
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.str(); }

   private:
    void assign(const mpz_class& v);

    int64_t small_ = 0;
    std::unique_ptr<mpz_class> big_;
};

}  // namespace kls
