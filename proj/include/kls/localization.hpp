#pragma once

// Fixed-point model of equivariant K-theory / hyperbolic cohomology of G/B
// and G/P_J: a class is its vector of restrictions (c_u)_{u in W}.
//
//     (p d_v) . (q f_w) = q wv^-1(p) f_{wv^-1}    (bullet, Q-linear)
//     (p d_v) o (q f_w) = p v(q) f_{vw}           (odot)

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kls/twisted.hpp"

namespace kls {

template <class F>
struct CohClass {
    using Scalar = typename F::Scalar;
    Fgl model = Fgl::multiplicative;
    Subset J = 0;  // parabolic tag (0 = full flag variety)
    std::vector<Scalar> r;
};

struct SmoothReport {
    bool smooth = true;
    std::vector<std::pair<Elem, bool>> witnesses;  // per u <= w
};

template <class F>
class Localization {
   public:
    using Scalar = typename F::Scalar;
    using Class = CohClass<F>;
    using Elt = QWElt<F>;

    Localization(const TwistedRing<F>& R, const Hecke& H) : R_(R), H_(H), F_(R.field()), W_(R.group()) {}

    const TwistedRing<F>& ring() const { return R_; }
    const Hecke& hecke() const { return H_; }

    // Basic classes and arithmetic.
    Class constant(const Scalar& q, Fgl m, Subset J = 0) const { return Class{m, J, std::vector<Scalar>(W_.size(), q)}; }
    Class unit(Fgl m) const { return constant(F_.one(), m); }
    Class zero(Fgl m) const { return constant(F_.zero(), m); }
    Class add(const Class& a, const Class& b) const {
        check(a, b);
        Class c = a;
        for (size_t u = 0; u < c.r.size(); ++u) c.r[u] += b.r[u];
        return c;
    }
    Class sub(const Class& a, const Class& b) const {
        check(a, b);
        Class c = a;
        for (size_t u = 0; u < c.r.size(); ++u) c.r[u] -= b.r[u];
        return c;
    }
    Class product(const Class& a, const Class& b) const {
        check(a, b);
        Class c = a;
        for (size_t u = 0; u < c.r.size(); ++u) c.r[u] *= b.r[u];
        return c;
    }
    Class scale(const Scalar& q, const Class& a) const {
        Class c = a;
        for (auto& x : c.r) x = q * x;
        return c;
    }
    bool eq(const Class& a, const Class& b) const {
        if (a.model != b.model) return false;
        for (size_t u = 0; u < a.r.size(); ++u)
            if (!F_.eq(a.r[u], b.r[u])) return false;
        return true;
    }
    bool is_constant(const Class& a) const {
        for (size_t u = 1; u < a.r.size(); ++u)
            if (!F_.eq(a.r[u], a.r[0])) return false;
        return true;
    }
    // Restrictions constant on left cosets u W_J.
    bool is_invariant(const Class& a, Subset J) const {
        for (Elem u = 0; u < W_.size(); ++u)
            for (int j = 0; j < W_.rank(); ++j)
                if (WeylGroup::in(J, j) && !F_.eq(a.r[u], a.r[W_.rmul(u, j)])) return false;
        return true;
    }

    // Actions.
    // (a . c)_u = sum_v c_{uv} u(p_v)
    Class bullet(const Elt& a, const Class& c) const {
        check_model(a, c);
        Class out = zero(c.model);
        out.J = c.J;
        for (Elem u = 0; u < W_.size(); ++u) {
            bool first = true;
            for (const auto& [v, p] : a.terms) {
                const Scalar& cv = c.r[W_.mul(u, v)];
                if (F_.is_zero(cv)) continue;
                Scalar term = cv * F_.act(u, p);
                if (first) out.r[u] = std::move(term), first = false;
                else out.r[u] += term;
            }
        }
        return out;
    }
    // (a o c)_u = sum_v p_v v(c_{v^-1 u})
    Class odot(const Elt& a, const Class& c) const {
        check_model(a, c);
        Class out = zero(c.model);
        out.J = c.J;
        std::vector<char> started(W_.size(), 0);
        for (const auto& [v, p] : a.terms) {
            Elem vi = W_.inverse(v);
            for (Elem u = 0; u < W_.size(); ++u) {
                const Scalar& cu = c.r[W_.mul(vi, u)];
                if (F_.is_zero(cu)) continue;
                Scalar term = p * F_.act(v, cu);
                if (started[u]) out.r[u] += term;
                else out.r[u] = std::move(term), started[u] = 1;
            }
        }
        return out;
    }
    // a o pt_e, using (p d_v) o pt_e = p v(x_Pi) f_v.
    Class odot_pt_e(const Elt& a) const {
        Class out = zero(a.model);
        for (const auto& [v, p] : a.terms) out.r[v] = p * translated_x_Pi(v, a.model);
        return out;
    }

    // pt_w = w(x_Pi) f_w
    Class point_class(Elem w, Fgl m) const {
        Class c = zero(m);
        c.r[w] = translated_x_Pi(w, m);
        return c;
    }
    // w(x_Pi) = prod_{a<0} x_{wa}
    Scalar translated_x_Pi(Elem w, Fgl m) const {
        Scalar s = F_.one();
        for (int id : W_.positive_root_ids()) s = s * R_.x_root(W_.act_root(w, W_.negate_root(id)), m);
        return s;
    }

    // Motivic Chern classes (multiplicative model).
    Class mc_cell(Elem w) const {
        Class c = odot_pt_e(R_.tau_element(w));
        return scale(F_.t_pow(-W_.length(w)), c);
    }
    Class mc_variety(Elem w) const {
        HeckeElt g = H_.zero();
        for (Elem v : W_.lower_interval(w)) g[v] = TPoly::monomial(-W_.length(v));
        return odot_pt_e(R_.hecke_to_qw(g));
    }
    Class mc_opposite_cell(Elem v) const {
        return odot(R_.delta(W_.w0(), Fgl::multiplicative), mc_cell(W_.mul(W_.w0(), v)));
    }

    // lambda_{-t^-2}(T^*)|_u = prod over positive roots outside J of (1 - t^-2 e^{ua}).
    Class lambda_cotangent(Subset J = 0) const {
        Class c = unit(Fgl::multiplicative);
        c.J = J;
        auto roots = outside_roots(J);
        for (Elem u = 0; u < W_.size(); ++u)
            for (int id : roots) c.r[u] = c.r[u] * one_minus_t2(W_.act_root(u, id));
        return c;
    }
    // (Dc)_u = (-1)^{N_J} dual(c_u) prod_{a in Sigma^+ \ Sigma_J^+} e^{ua}
    Class serre_dual(const Class& c, Subset J = 0) const {
        auto roots = outside_roots(J);
        Weight sum(static_cast<size_t>(W_.rank()), 0);
        for (int id : roots)
            for (int k = 0; k < W_.rank(); ++k) sum[static_cast<size_t>(k)] += W_.roots()[static_cast<size_t>(id)].coords[static_cast<size_t>(k)];
        Scalar sign = F_.integer(Int(roots.size() % 2 ? -1 : 1));
        Class out = c;
        for (Elem u = 0; u < W_.size(); ++u) out.r[u] = sign * F_.dual(c.r[u]) * F_.chr(W_.act(u, sum));
        return out;
    }

    // Segre motivic Chern class of the opposite cell Y(v)^o.
    Class smc_cell(Elem v) const {
        Elem x = W_.mul(W_.w0(), v);
        Class b = bullet(R_.hecke_to_qw(H_.tau_inverse(x)), point_class(W_.w0(), Fgl::multiplicative));
        Scalar k = F_.t_pow(-W_.length(x)) / prod_one_minus_t2_neg(0);
        return scale(k, b);
    }
    // Same class from the duality definition t^{-2 dim} D(MC) / lambda.
    Class smc_cell_dual_route(Elem v) const {
        int dim = W_.length(W_.w0()) - W_.length(v);
        return smc_from_mc(mc_opposite_cell(v), dim, 0);
    }

    // <f, g>_J = Y_{Pi/J} . (f g); the result must be constant.
    Scalar pairing(const Class& f, const Class& g, Subset J = 0) const {
        Class c = bullet(R_.Y_rel(W_.full(), J, f.model), product(f, g));
        if (!is_constant(c)) throw std::domain_error("pairing is not a constant class");
        return c.r[0];
    }

    // Kazhdan-Lusztig classes C_w = gamma_w o pt_e, C~_w = gamma~_{w^-1 w0} . pt_{w0}.
    Class kl_class(Elem w) const { return odot_pt_e(R_.hecke_to_qw(H_.kl_basis(w))); }
    Class kl_class_tilde(Elem w) const {
        Elem x = W_.mul(W_.inverse(w), W_.w0());
        return bullet(R_.hecke_to_qw(H_.kl_tilde(x)), point_class(W_.w0(), Fgl::multiplicative));
    }
    // C_w = sum_{u<=w} t_w P_{u,w}(t^-2) MC(X(u)^o)
    Class kl_class_expansion(Elem w) const {
        Class c = zero(Fgl::multiplicative);
        for (Elem u : W_.lower_interval(w))
            c = add(c, scale(qpoly_at(H_.kl_poly(u, w), W_.length(w)), mc_cell(u)));
        return c;
    }
    // Expansion of C~_w in Segre classes.
    Class kl_class_tilde_expansion(Elem w) const {
        Elem w0 = W_.w0();
        Class c = zero(Fgl::multiplicative);
        Elem a = W_.mul(W_.inverse(w), w0);
        for (Elem v = 0; v < W_.size(); ++v) {
            if (!W_.leq(w, v)) continue;
            Elem b = W_.mul(W_.inverse(v), w0);
            Scalar k = F_.integer(Int(W_.sign(w) * W_.sign(v))) * qpoly_at(H_.kl_poly(b, a), W_.length(a));
            c = add(c, scale(k, smc_cell(v)));
        }
        return scale(prod_one_minus_t2_neg(0), c);
    }

    // Parabolic classes; arguments in W^J.
    Class mc_cell_J(Elem u, Subset J) const {
        require_min_rep(u, J);
        Class c = bullet(R_.Y_J(J, Fgl::multiplicative), mc_cell(u));
        c.J = J;
        return c;
    }
    Class mc_opposite_cell_J(Elem v, Subset J) const {
        require_min_rep(v, J);
        Class c = odot(R_.delta(W_.w0(), Fgl::multiplicative), mc_cell_J(W_.min_rep(W_.mul(W_.w0(), v), J), J));
        c.J = J;
        return c;
    }
    Class smc_cell_J(Elem v, Subset J) const {
        int dim = static_cast<int>(outside_roots(J).size()) - W_.length(v);
        Class c = smc_from_mc(mc_opposite_cell_J(v, J), dim, J);
        c.J = J;
        return c;
    }
    Class kl_class_J(Elem w, Subset J) const {
        require_min_rep(w, J);
        Class c = zero(Fgl::multiplicative);
        c.J = J;
        for (Elem u : W_.min_reps(J)) {
            if (!W_.leq(u, w)) continue;
            c = add(c, scale(qpoly_at(H_.parabolic_kl(u, w, J), W_.length(w)), mc_cell_J(u, J)));
        }
        return c;
    }
    Class kl_class_tilde_J(Elem w, Subset J) const {
        require_min_rep(w, J);
        Class c = zero(Fgl::multiplicative);
        c.J = J;
        Elem x = W_.mul(W_.mul(W_.longest(J), W_.inverse(w)), W_.w0());
        int tx = W_.length(x);
        for (Elem v : W_.min_reps(J)) {
            if (!W_.leq(w, v)) continue;
            Scalar k = F_.integer(Int(W_.sign(w) * W_.sign(v))) * qpoly_at(H_.inverse_parabolic_kl(w, v, J), tx);
            c = add(c, scale(k, smc_cell_J(v, J)));
        }
        return scale(prod_one_minus_t2_neg(J), c);
    }
    // Push-forward to G/P_J.
    Class pushforward(const Class& c, Subset J) const {
        Class out = bullet(R_.Y_J(J, c.model), c);
        out.J = J;
        return out;
    }

    // Hyperbolic KL-Schubert class mu^{-l(w w_J)} psi(gamma_{w w_J}) o pt^t_e.
    Class kl_schubert(Elem w, Subset J = 0) const {
        require_min_rep(w, J);
        Elem x = W_.mul(w, W_.longest(J));
        Elt g = R_.psi(R_.hecke_to_qw(H_.kl_basis(x)));
        Class c = scale(mu_pow(-W_.length(x)), odot_pt_e(g));
        c.J = J;
        return c;
    }
    // [X(w)]|_v = prod_{a>0} x_{-a} / prod_{a>0, s_a v <= w} x_{-a}, zero off [e, w].
    Class fundamental_class_smooth(Elem w, Subset J = 0) const {
        Elem x = J ? W_.mul(w, W_.longest(J)) : w;
        if (J) require_min_rep(w, J);
        if (!is_smooth(x).smooth) throw std::domain_error("Schubert variety is not smooth");
        Class c = zero(Fgl::hyperbolic);
        c.J = J;
        auto pos = W_.positive_root_ids();
        for (Elem v : W_.lower_interval(x)) {
            Scalar s = F_.one();
            for (int id : pos)
                if (!W_.leq(W_.mul(W_.reflection(id), v), x)) s = s * R_.x_root(W_.negate_root(id), Fgl::hyperbolic);
            c.r[v] = s;
        }
        return c;
    }

    // Smoothness criterion via the coefficients a_{w,u}.
    SmoothReport is_smooth(Elem w) const {
        SmoothReport rep;
        auto coeffs = R_.gamma_coefficients(H_, w);
        Elt a{Fgl::multiplicative, coeffs};
        for (Elem u : W_.lower_interval(w)) {
            Scalar expect = smooth_product(u, w);
            const Scalar* got = a.find(u);
            bool ok = got ? F_.eq(*got, expect) : F_.is_zero(expect);
            rep.witnesses.push_back({u, ok});
            rep.smooth = rep.smooth && ok;
        }
        return rep;
    }
    // prod_{a>0, u s_a <= w} (1 - t^-2 e^{ua}) / (1 - e^{ua})
    Scalar smooth_product(Elem u, Elem w) const {
        Scalar s = F_.one();
        for (int id : W_.positive_root_ids()) {
            if (!W_.leq(W_.mul(u, W_.reflection(id)), w)) continue;
            int ua = W_.act_root(u, id);
            s = s * one_minus_t2(ua) / R_.x_root(W_.negate_root(ua), Fgl::multiplicative);
        }
        return s;
    }

    // sum_k c_k t^{shift-2k}
    Scalar qpoly_at(const QPoly& p, int shift) const {
        TPoly r;
        for (size_t k = 0; k < p.size(); ++k)
            if (p[k]) r += TPoly::monomial(shift - 2 * static_cast<int>(k), Int(p[k]));
        return F_.from_tpoly(r);
    }
    Scalar mu_pow(int k) const {
        Scalar m = R_.mu();
        Scalar base = k >= 0 ? m : F_.one() / m;
        Scalar r = F_.one();
        for (int i = 0; i < (k >= 0 ? k : -k); ++i) r = r * base;
        return r;
    }
    // prod over positive roots outside J of (1 - t^-2 e^{-a})
    Scalar prod_one_minus_t2_neg(Subset J) const {
        Scalar s = F_.one();
        for (int id : outside_roots(J)) s = s * one_minus_t2(W_.negate_root(id));
        return s;
    }
    // prod over positive roots outside J of (t - t^-1 e^{-a})
    Scalar duality_constant(Subset J = 0) const {
        Scalar s = F_.one();
        for (int id : outside_roots(J))
            s = s * F_.atomize(F_.t_pow(1) - F_.chr(W_.roots()[static_cast<size_t>(W_.negate_root(id))].coords, -1));
        return s;
    }
    std::vector<int> outside_roots(Subset J) const {
        std::vector<int> out;
        for (int id : W_.positive_root_ids()) {
            const auto& rc = W_.roots()[static_cast<size_t>(id)].root_coords;
            bool inside = true;
            for (int i = 0; i < W_.rank(); ++i)
                if (rc[static_cast<size_t>(i)] != 0 && !WeylGroup::in(J, i)) inside = false;
            if (!inside) out.push_back(id);
        }
        return out;
    }

   private:
    static void check(const Class& a, const Class& b) {
        if (a.model != b.model) throw std::invalid_argument("formal group law mismatch");
    }
    static void check_model(const Elt& a, const Class& c) {
        if (a.model != c.model) throw std::invalid_argument("formal group law mismatch");
    }
    void require_min_rep(Elem w, Subset J) const {
        if (!W_.is_min_rep(w, J)) throw std::invalid_argument("element is not a minimal coset representative");
    }
    // 1 - t^-2 e^{root}
    Scalar one_minus_t2(int id) const {
        return F_.atomize(F_.one() - F_.chr(W_.roots()[static_cast<size_t>(id)].coords, -2));
    }
    Class smc_from_mc(const Class& mc, int dim, Subset J) const {
        Class d = serre_dual(mc, J);
        Class lam = lambda_cotangent(J);
        Scalar k = F_.t_pow(-2 * dim);
        for (Elem u = 0; u < W_.size(); ++u) d.r[u] = k * d.r[u] / lam.r[u];
        return d;
    }

    const TwistedRing<F>& R_;
    const Hecke& H_;
    const F& F_;
    const WeylGroup& W_;
};

}  // namespace kls
