#include "kls/integer.hpp"

#include <functional>
#include <stdexcept>

namespace kls {

Int::Int(const std::string& decimal) {
    mpz_class v;
    if (v.set_str(decimal, 10) != 0) throw std::invalid_argument("not an integer: " + decimal);
    assign(v);
}

void Int::assign(const mpz_class& v) {
    if (v.fits_slong_p()) {
        small_ = v.get_si();
        big_.reset();
    } else {
        small_ = 0;
        big_ = std::make_unique<mpz_class>(v);
    }
}

Int Int::operator-() const {
    if (!big_ && small_ != INT64_MIN) return Int(-small_);
    Int r;
    r.assign(-to_mpz());
    return r;
}

Int& Int::operator+=(const Int& o) {
    if (!big_ && !o.big_) {
        int64_t r;
        if (!__builtin_add_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    assign(to_mpz() + o.to_mpz());
    return *this;
}

Int& Int::operator-=(const Int& o) {
    if (!big_ && !o.big_) {
        int64_t r;
        if (!__builtin_sub_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    assign(to_mpz() - o.to_mpz());
    return *this;
}

Int& Int::operator*=(const Int& o) {
    if (!big_ && !o.big_) {
        int64_t r;
        if (!__builtin_mul_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    assign(to_mpz() * o.to_mpz());
    return *this;
}

Int Int::divexact(const Int& a, const Int& b) {
    if (b.is_zero()) throw std::domain_error("integer division by zero");
    if (a.is_small() && b.is_small() && !(a.small_ == INT64_MIN && b.small_ == -1)) return Int(a.small_ / b.small_);
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(q);
}

bool Int::divisible(const Int& a, const Int& b) {
    if (b.is_zero()) return a.is_zero();
    if (a.is_small() && b.is_small()) {
        if (b.small_ == -1) return true;
        return a.small_ % b.small_ == 0;
    }
    return mpz_divisible_p(a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t()) != 0;
}

Int Int::gcd(const Int& a, const Int& b) {
    if (a.is_small() && b.is_small() && a.small_ != INT64_MIN && b.small_ != INT64_MIN) {
        uint64_t x = static_cast<uint64_t>(a.small_ < 0 ? -a.small_ : a.small_);
        uint64_t y = static_cast<uint64_t>(b.small_ < 0 ? -b.small_ : b.small_);
        while (y) {
            uint64_t r = x % y;
            x = y;
            y = r;
        }
        return Int(static_cast<int64_t>(x));
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(g);
}

Int Int::lcm(const Int& a, const Int& b) {
    if (a.is_zero() || b.is_zero()) return Int(0);
    Int g = gcd(a, b);
    return (divexact(a, g) * b).abs();
}

uint64_t Int::mod(uint64_t p) const {
    if (!big_) {
        int64_t r = small_ % static_cast<int64_t>(p);
        if (r < 0) r += static_cast<int64_t>(p);
        return static_cast<uint64_t>(r);
    }
    mpz_class r;
    mpz_class pp;
    mpz_import(pp.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
    mpz_fdiv_r(r.get_mpz_t(), big_->get_mpz_t(), pp.get_mpz_t());
    uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
    return out;
}

bool operator<(const Int& a, const Int& b) {
    if (a.is_small() && b.is_small()) return a.small_ < b.small_;
    return a.to_mpz() < b.to_mpz();
}

size_t Int::hash() const {
    if (!big_) return std::hash<int64_t>{}(small_);
    return std::hash<std::string>{}(big_->get_str(16));
}

std::string Int::str() const {
    if (!big_) return std::to_string(small_);
    return big_->get_str(10);
}

}  // namespace kls
