#pragma once

// Hecke algebra over Z[t, t^-1] in the tau basis, with quadratic relation
// tau_i^2 = (t^-1 - t) tau_i + 1, and its Kazhdan-Lusztig bases.
//
// Normalisation: gamma_w lies in tau_w + sum_{v<w} t Z[t] tau_v and
//     gamma_w = sum_{v<=w} t^{l(w)-l(v)} P_{v,w}(t^-2) tau_v.

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kls/integer.hpp"
#include "kls/laurent.hpp"
#include "kls/root_system.hpp"

namespace kls {

// Laurent polynomial in the single variable t.
class TPoly {
   public:
    TPoly() = default;
    static TPoly monomial(int k, const Int& c = Int(1));
    static TPoly constant(const Int& c) { return monomial(0, c); }

    bool is_zero() const { return c_.empty(); }
    int low() const { return lo_; }
    int high() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    Int coeff(int k) const;

    TPoly operator-() const;
    TPoly& operator+=(const TPoly& o);
    TPoly& operator-=(const TPoly& o);
    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    friend TPoly operator*(const TPoly& a, const TPoly& b);
    TPoly shifted(int k) const;
    TPoly bar() const;  // t -> t^-1
    friend bool operator==(const TPoly& a, const TPoly& b) { return a.lo_ == b.lo_ && a.c_ == b.c_; }
    friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

    LaurentPoly to_laurent(int nvars) const;
    std::string str() const;

   private:
    void trim();
    int lo_ = 0;
    std::vector<Int> c_;
};

// Polynomial in q with integer coefficients (index = power).
using QPoly = std::vector<int64_t>;
std::string qpoly_str(const QPoly& p);  // "[1,1]"
QPoly qpoly_trim(QPoly p);
QPoly qpoly_add(const QPoly& a, const QPoly& b, int64_t scale_b = 1);
QPoly qpoly_mul(const QPoly& a, const QPoly& b);

// Dense element of H, indexed by group element id.
class HeckeElt {
   public:
    HeckeElt() = default;
    explicit HeckeElt(size_t n) : c_(n) {}
    size_t dim() const { return c_.size(); }
    const TPoly& operator[](Elem w) const { return c_[w]; }
    TPoly& operator[](Elem w) { return c_[w]; }
    bool is_zero() const;
    std::vector<Elem> support() const;

    HeckeElt operator-() const;
    HeckeElt& operator+=(const HeckeElt& o);
    HeckeElt& operator-=(const HeckeElt& o);
    friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
    friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
    HeckeElt scaled(const TPoly& p) const;
    friend bool operator==(const HeckeElt& a, const HeckeElt& b) { return a.c_ == b.c_; }
    friend bool operator!=(const HeckeElt& a, const HeckeElt& b) { return !(a == b); }

   private:
    std::vector<TPoly> c_;
};

class KLTable {
   public:
    static constexpr int kFormatVersion = 1;

    KLTable() = default;
    explicit KLTable(size_t n) : p_(n, std::vector<QPoly>(n)), complete_(n, 0) {}
    size_t size() const { return p_.size(); }
    const QPoly& get(Elem v, Elem w) const { return p_[w][v]; }
    void set(Elem v, Elem w, QPoly p) { p_[w][v] = std::move(p); }
    bool complete(Elem w) const { return complete_[w] != 0; }
    void mark_complete(Elem w) { complete_[w] = 1; }
    bool all_complete() const;

    // Versioned JSON with all |W|^2 entries, keyed by reduced words.
    void save(const std::filesystem::path& path, const WeylGroup& W) const;
    static std::optional<KLTable> load(const std::filesystem::path& path, const WeylGroup& W);

   private:
    std::vector<std::vector<QPoly>> p_;  // p_[w][v]
    std::vector<char> complete_;
};

class Hecke {
   public:
    struct Options {
        std::optional<std::filesystem::path> cache_dir;
        size_t bar_check_limit = 120;  // post-hoc bar-invariance check up to this |W|
    };

    explicit Hecke(const WeylGroup& W) : Hecke(W, Options{}) {}
    Hecke(const WeylGroup& W, Options opt);

    const WeylGroup& group() const { return W_; }
    size_t dim() const { return W_.size(); }

    HeckeElt zero() const { return HeckeElt(dim()); }
    HeckeElt tau(Elem w, const TPoly& c = TPoly::constant(Int(1))) const;
    HeckeElt one() const { return tau(0); }
    HeckeElt tau_simple_inverse(int i) const;
    HeckeElt tau_inverse(Elem w) const;

    HeckeElt tau_mul_right(const HeckeElt& h, int i) const;
    HeckeElt tau_mul_left(int i, const HeckeElt& h) const;
    HeckeElt mul(const HeckeElt& a, const HeckeElt& b) const;
    HeckeElt bar(const HeckeElt& h) const;
    HeckeElt hiota(const HeckeElt& h) const;

    // Kazhdan-Lusztig data (computed on first use, optionally cached on disk).
    const KLTable& kl_table() const;
    const QPoly& kl_poly(Elem v, Elem w) const { return kl_table().get(v, w); }
    int mu(Elem v, Elem u) const;
    HeckeElt kl_basis(Elem w) const;
    HeckeElt kl_tilde(Elem w) const;
    QPoly inverse_kl(Elem u, Elem w) const;
    QPoly parabolic_kl(Elem v, Elem w, Subset J) const;
    QPoly inverse_parabolic_kl(Elem u, Elem w, Subset J) const;
    HeckeElt gamma_rel(Subset J, Subset Jp) const;
    HeckeElt gamma_sum(Elem w) const;

    // Coordinates of h in the gamma basis (unitriangular solve).
    std::vector<std::pair<Elem, TPoly>> kl_coordinates(const HeckeElt& h) const;

    std::string str(const HeckeElt& h) const;
    std::filesystem::path cache_file() const;
    bool loaded_from_cache() const { return from_cache_; }

   private:
    void compute_table() const;

    const WeylGroup& W_;
    Options opt_;
    mutable std::once_flag once_;
    mutable KLTable table_;
    mutable bool from_cache_ = false;
};

}  // namespace kls
