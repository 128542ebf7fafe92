#pragma once

// Type-A Grassmannian combinatorics: partitions in a d x (n-d) box, their
// lattice paths, Grassmannian permutations, Zelevinsky tilings by rectangles,
// the label sets attached to a tiling and the chain of stabilizers.
//
// Coordinates: box (i, j) (row i from the top, column j, both 1-based) is the
// unit square [j-1, j] x [d-i, d-i+1]. A unit segment whose left (horizontal)
// or bottom (vertical) endpoint is (x, y) carries the label x + y + 1.
// Label sets are Subset bitmasks with bit k-1 for label k, so a subset of
// simple roots uses the same encoding as WeylGroup.
//
// The combinatorial layer never builds a WeylGroup, so it runs for any n.
// The algebraic checks at the bottom of the file are templates over the
// coefficient field and need the group S_n.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kls/hecke.hpp"
#include "kls/localization.hpp"
#include "kls/root_system.hpp"
#include "kls/twisted.hpp"

namespace kls::grass {

struct GrassData {
    int n = 2;
    int d = 1;

    GrassData() = default;
    GrassData(int n_, int d_);
    int rank() const { return n - 1; }
    int cols() const { return n - d; }
    Subset Pi() const { return (Subset(1) << rank()) - 1; }
    Subset J() const { return Pi() & ~(Subset(1) << (d - 1)); }
};

struct Partition {
    std::vector<int> parts;  // weakly decreasing, positive

    int length() const { return static_cast<int>(parts.size()); }
    int size() const;
    int row(int i) const { return i >= 1 && i <= length() ? parts[static_cast<size_t>(i - 1)] : 0; }
    std::string str() const;  // "5,5,3,2,2", "" for the empty partition
    friend bool operator==(const Partition&, const Partition&) = default;
};

Partition parse_partition(const std::string& s);
bool fits(const Partition& lam, const GrassData& g);
void require_fits(const Partition& lam, const GrassData& g);
std::vector<Partition> all_partitions(const GrassData& g);

// Lattice path from (0,0) to (n-d, d) along the southeast boundary: 'H' or 'V'.
std::string lattice_path(const Partition& lam, const GrassData& g);
std::vector<int> I_set(const Partition& lam, const GrassData& g);
std::vector<int> grass_permutation(const Partition& lam, const GrassData& g);  // one-line
Word reduced_word(const Partition& lam, const GrassData& g);                     // 1-based letters
Partition from_I_set(const std::vector<int>& I, const GrassData& g);

struct MatrixEncoding {
    std::vector<int> k;  // labels of the last step of each vertical run
    std::vector<int> a;  // lengths of the vertical runs
    std::vector<int> b;  // lengths b_0..b_{m-1} of the horizontal runs before them
    int m() const { return static_cast<int>(k.size()); }
    friend bool operator==(const MatrixEncoding&, const MatrixEncoding&) = default;
};

MatrixEncoding encode(const Partition& lam, const GrassData& g);
Partition decode(const MatrixEncoding& e, const GrassData& g);

// Permutations in one-line notation (values 1..n) and words with 1-based letters.
std::vector<int> perm_from_word(const Word& w, int n);
std::vector<int> perm_compose(const std::vector<int>& u, const std::vector<int>& v);  // u v
int perm_length(const std::vector<int>& p);
std::vector<int> perm_longest(Subset K, int n);
std::vector<int> perm_rel(Subset K, Subset Kp, int n);  // w_K w_{K'}
Word to_zero_based(const Word& w);

struct Rect {
    int i0 = 1;  // top row
    int j0 = 1;  // left column
    int p = 1;   // height
    int q = 1;   // width
    int c(const GrassData& g) const { return g.d + j0 - i0 - p + 1; }
    int d_label(const GrassData& g) const { return c(g) + p + q - 1; }
    bool contains(int i, int j) const { return i >= i0 && i < i0 + p && j >= j0 && j < j0 + q; }
    friend bool operator==(const Rect&, const Rect&) = default;
};

enum class TilingPolicy { smallest_index, largest_index, enumerate_all };
std::string policy_name(TilingPolicy p);
TilingPolicy parse_policy(const std::string& s);

struct Tiling {
    std::vector<Rect> rects;         // R_1..R_r in removal order
    std::vector<Partition> shapes;   // lambda^1..lambda^r
    std::vector<int> choices;        // corner index chosen at each step
};

// Corner indices allowed for the next removal and the rectangle they cut.
std::vector<int> valid_corners(const Partition& lam, const GrassData& g);
Rect corner_rectangle(const Partition& lam, const GrassData& g, int i);
Partition remove_rect(const Partition& lam, const Rect& R);

Tiling tiling(const Partition& lam, const GrassData& g, TilingPolicy policy = TilingPolicy::largest_index);
std::vector<Tiling> all_tilings(const Partition& lam, const GrassData& g);
std::vector<Tiling> tilings(const Partition& lam, const GrassData& g, TilingPolicy policy);

struct LabelSets {
    int c = 0;
    int d_label = 0;
    Subset C = 0, D = 0, Cp = 0, Dp = 0, J = 0, Jp = 0, K = 0, Kp = 0;
    std::vector<int> calC, calD;  // 1-based rectangle indices
    Subset boundary() const { return C | D; }
};

std::vector<LabelSets> label_sets(const Tiling& T, const GrassData& g);

// Pi minus the labels k_1..k_m of the permutation of lam.
Subset stabilizer(const Partition& lam, const GrassData& g);

struct StabilizerChain {
    std::vector<Subset> P;  // P_1..P_{r+1}, P_{r+1} = J
    std::vector<Subset> Q;  // Q_i = P_i cap P_{i+1}
};

StabilizerChain stabilizer_chain(const Tiling& T, const GrassData& g);
Word v_word(const Rect& R, const GrassData& g);  // 1-based letters

// Rendering.
std::string label_str(Subset S);                          // "{1,3}", "{}"
std::string complement_str(Subset S, const GrassData& g);  // "Pi\{4,6}"
std::string render_ascii(const Tiling& T, const Partition& lam, const GrassData& g);
std::string chain_str(const StabilizerChain& ch, const GrassData& g);
std::string word_str(const Word& w);  // "s5 s4 s3" (1-based letters), "e" when empty
nlohmann::json tiling_json(const Tiling& T, const Partition& lam, const GrassData& g);

// Label-level checks of a tiling; each failed check appends a message.
struct CombinatorialReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

CombinatorialReport verify_combinatorics(const Partition& lam, const GrassData& g, const Tiling& T);

// Algebraic layer.

constexpr int kDefaultRankGuard = 6;

struct FactorizationReport {
    CombinatorialReport combinatorics;
    bool hecke_checked = false;
    std::vector<std::string> failures;
    bool ok() const { return combinatorics.ok() && failures.empty(); }
};

struct GroupData {
    Elem w_lambda = 0;
    Elem x = 0;  // w_lambda w_J
};

inline GroupData group_data(const WeylGroup& W, const Partition& lam, const GrassData& g) {
    if (W.rank() != g.rank() || !W.cartan().is_type_A()) throw std::invalid_argument("group does not match Gr(d,n)");
    GroupData gd;
    gd.w_lambda = W.from_one_line(grass_permutation(lam, g));
    gd.x = W.mul(gd.w_lambda, W.longest(g.J()));
    return gd;
}

// Hecke-algebra factorizations of gamma_{w_lambda w_J} and the agreement of
// the relative push-pull elements for the three pairs of subsets.
template <class F>
FactorizationReport verify_factorizations(const TwistedRing<F>& R, const Hecke& H, const Partition& lam,
                                          const GrassData& g, const Tiling& T, int rank_guard = kDefaultRankGuard) {
    FactorizationReport rep;
    rep.combinatorics = verify_combinatorics(lam, g, T);
    if (g.n > rank_guard) throw std::length_error("rank guard exceeded: n = " + std::to_string(g.n));
    const WeylGroup& W = H.group();
    GroupData gd = group_data(W, lam, g);
    auto ls = label_sets(T, g);
    auto ch = stabilizer_chain(T, g);
    HeckeElt gJ = H.gamma_rel(g.J(), 0);
    HeckeElt byJ = H.one(), byK = H.one();
    for (size_t i = 0; i < ls.size(); ++i) {
        HeckeElt a = H.gamma_rel(ls[i].J, ls[i].Jp), b = H.gamma_rel(ls[i].K, ls[i].Kp);
        std::string tag = "R_" + std::to_string(i + 1);
        if (a != b) rep.failures.push_back(tag + ": relative gamma elements for (J,J') and (K,K') differ");
        byJ = H.mul(byJ, a);
        byK = H.mul(byK, b);
        auto yJ = R.Y_rel(ls[i].J, ls[i].Jp, Fgl::hyperbolic);
        auto yK = R.Y_rel(ls[i].K, ls[i].Kp, Fgl::hyperbolic);
        auto yP = R.Y_rel(ch.P[i], ch.Q[i], Fgl::hyperbolic);
        if (!R.eq(yJ, yK)) rep.failures.push_back(tag + ": push-pull elements for (J,J') and (K,K') differ");
        if (!R.eq(yJ, yP)) rep.failures.push_back(tag + ": push-pull elements for (J,J') and (P,Q) differ");
    }
    byJ = H.mul(byJ, gJ);
    byK = H.mul(byK, gJ);
    HeckeElt gx = H.kl_basis(gd.x);
    if (gx != byJ) rep.failures.push_back("gamma_{w w_J} differs from the product over (J_i, J'_i)");
    if (gx != byK) rep.failures.push_back("gamma_{w w_J} differs from the product over (K_i, K'_i)");
    rep.hecke_checked = true;
    return rep;
}

template <class F>
struct ZelevinskyClass {
    QWElt<F> op;     // Y_{P_1/Q_1} ... Y_{P_r/Q_r} Y_J, hyperbolic model
    CohClass<F> cls;  // op o pt_e
};

template <class F>
QWElt<F> zelevinsky_operator(const TwistedRing<F>& R, const GrassData& g, const Tiling& T) {
    auto ch = stabilizer_chain(T, g);
    std::vector<QWElt<F>> fs;
    for (size_t i = 0; i < ch.Q.size(); ++i) fs.push_back(R.Y_rel(ch.P[i], ch.Q[i], Fgl::hyperbolic));
    fs.push_back(R.Y_J(g.J(), Fgl::hyperbolic));
    return R.mul_all(fs, Fgl::hyperbolic);
}

template <class F>
ZelevinskyClass<F> zelevinsky_class(const Localization<F>& L, const GrassData& g, const Tiling& T) {
    ZelevinskyClass<F> z{zelevinsky_operator(L.ring(), g, T), {}};
    z.cls = L.odot_pt_e(z.op);
    z.cls.J = g.J();
    return z;
}

// mu^{-l(x)} psi(gamma_x) with x = w_lambda w_J.
template <class F>
QWElt<F> kl_operator(const Localization<F>& L, const Partition& lam, const GrassData& g) {
    const auto& R = L.ring();
    GroupData gd = group_data(R.group(), lam, g);
    auto op = R.psi(R.hecke_to_qw(L.hecke().kl_basis(gd.x)));
    return R.scale(L.mu_pow(-R.group().length(gd.x)), op);
}

struct ZelevinskyReport {
    size_t tilings = 0;
    bool operator_identity = true;  // every tiling's operator equals the KL operator
    bool class_identity = true;     // every tiling's class equals the KL-Schubert class
    bool tiling_independent = true;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

template <class F>
ZelevinskyReport verify_zelevinsky(const Localization<F>& L, const Partition& lam, const GrassData& g,
                                   const std::vector<Tiling>& Ts) {
    ZelevinskyReport rep;
    rep.tilings = Ts.size();
    auto target_op = kl_operator(L, lam, g);
    GroupData gd = group_data(L.ring().group(), lam, g);
    auto target = L.kl_schubert(gd.w_lambda, g.J());
    std::optional<CohClass<F>> first;
    for (size_t k = 0; k < Ts.size(); ++k) {
        auto z = zelevinsky_class(L, g, Ts[k]);
        std::string tag = "tiling " + std::to_string(k + 1);
        if (!L.ring().eq(z.op, target_op)) {
            rep.operator_identity = false;
            rep.failures.push_back(tag + ": push-pull chain differs from mu^{-l} psi(gamma)");
        }
        if (!L.eq(z.cls, target)) {
            rep.class_identity = false;
            rep.failures.push_back(tag + ": class differs from the KL-Schubert class");
        }
        if (!first) first = z.cls;
        else if (!L.eq(*first, z.cls)) {
            rep.tiling_independent = false;
            rep.failures.push_back(tag + ": class differs from the class of tiling 1");
        }
    }
    return rep;
}

}  // namespace kls::grass
