#pragma once

// The localized twisted group ring Q_W = Q (x) Z[W] over a coefficient
// field F (ExactField or ModPField), with product
//     (p d_u)(q d_v) = p u(q) d_{uv},
// for the multiplicative and hyperbolic formal group laws.  Both laws are
// realized in the same rational-function field:
//     x^m_l = 1 - e^{-l},   x^t_l = (t^2+1)(1 - e^{-l}) / (t^2 - e^{-l}),
// so the embedding psi from the multiplicative to the hyperbolic ring is the
// identity on coefficients.

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kls/field.hpp"
#include "kls/hecke.hpp"
#include "kls/root_system.hpp"

namespace kls {

enum class Fgl { multiplicative, hyperbolic };

inline const char* fgl_name(Fgl m) { return m == Fgl::multiplicative ? "multiplicative" : "hyperbolic"; }
inline Fgl parse_fgl(const std::string& s) {
    if (s == "multiplicative" || s == "m") return Fgl::multiplicative;
    if (s == "hyperbolic" || s == "t") return Fgl::hyperbolic;
    throw std::invalid_argument("unknown formal group law: " + s);
}

template <class F>
struct QWElt {
    using Scalar = typename F::Scalar;
    Fgl model = Fgl::multiplicative;
    std::vector<std::pair<Elem, Scalar>> terms;  // sorted by id, nonzero coefficients

    const Scalar* find(Elem w) const {
        auto it = std::lower_bound(terms.begin(), terms.end(), w,
                                   [](const auto& t, Elem x) { return t.first < x; });
        return it != terms.end() && it->first == w ? &it->second : nullptr;
    }
    size_t size() const { return terms.size(); }
};

template <class F>
class TwistedRing {
   public:
    using Scalar = typename F::Scalar;
    using Elt = QWElt<F>;

    explicit TwistedRing(const F& field) : F_(field), W_(field.group()) {
        const auto& roots = W_.roots();
        for (size_t r = 0; r < roots.size(); ++r) {
            xm_.push_back(make_x(roots[r].coords, Fgl::multiplicative));
            xt_.push_back(make_x(roots[r].coords, Fgl::hyperbolic));
        }
        for (int i = 0; i < W_.rank(); ++i) tau_.push_back(make_tau(i));
    }

    const F& field() const { return F_; }
    const WeylGroup& group() const { return W_; }

    // Scalars.
    Scalar mu() const { return F_.t_pow(1) + F_.t_pow(-1); }
    Scalar x(const Weight& lambda, Fgl m) const {
        int id = W_.root_id(lambda);
        return id >= 0 ? x_root(id, m) : make_x(lambda, m);
    }
    const Scalar& x_root(int id, Fgl m) const {
        return m == Fgl::multiplicative ? xm_[static_cast<size_t>(id)] : xt_[static_cast<size_t>(id)];
    }
    // x_{J/J'} = prod of x_a over negative roots of J not in J'.
    Scalar x_rel(Subset J, Subset Jp, Fgl m) const {
        check_sub(J, Jp);
        Scalar r = F_.one();
        for (int id : neg_roots_in(J))
            if (!root_in(id, Jp)) r = r * x_root(id, m);
        return r;
    }
    Scalar x_Pi(Fgl m) const { return x_rel(W_.full(), 0, m); }
    // prod over negative roots of (t - t^-1 e^a).
    Scalar xhat_Pi() const {
        Scalar r = F_.one();
        for (int id : neg_roots_in(W_.full())) r = r * hat_factor(id);
        return r;
    }

    // Elements.
    Elt zero(Fgl m) const { return Elt{m, {}}; }
    Elt delta(Elem w, Fgl m) const { return Elt{m, {{w, F_.one()}}}; }
    Elt scalar(const Scalar& p, Fgl m) const {
        Elt r{m, {}};
        if (!F_.is_zero(p)) r.terms.push_back({0, p});
        return r;
    }
    Elt one(Fgl m) const { return delta(0, m); }

    Elt add(const Elt& a, const Elt& b) const { return combine(a, b, false); }
    Elt sub(const Elt& a, const Elt& b) const { return combine(a, b, true); }
    Elt neg(const Elt& a) const {
        Elt r = a;
        for (auto& [w, c] : r.terms) c = -c;
        return r;
    }
    // p * a
    Elt scale(const Scalar& p, const Elt& a) const {
        Elt r{a.model, {}};
        for (const auto& [w, c] : a.terms) push(r, w, p * c);
        return r;
    }
    // a * p = sum c_w w(p) d_w
    Elt scale_right(const Elt& a, const Scalar& p) const {
        Elt r{a.model, {}};
        for (const auto& [w, c] : a.terms) push(r, w, c * F_.act(w, p));
        return r;
    }

    Elt mul(const Elt& a, const Elt& b) const {
        check_model(a, b);
        Accum acc(W_.size());
        for (const auto& [u, p] : a.terms)
            for (const auto& [v, q] : b.terms) acc.add(W_.mul(u, v), p * F_.act(u, q));
        return acc.finish(F_, a.model);
    }
    Elt mul_all(const std::vector<Elt>& fs, Fgl m) const {
        Elt r = one(m);
        for (const auto& f : fs) r = mul(r, f);
        return r;
    }

    bool is_zero(const Elt& a) const { return a.terms.empty(); }
    bool eq(const Elt& a, const Elt& b) const {
        if (a.model != b.model) return false;
        return is_zero(sub(a, b));
    }

    // Push-pull elements.
    // Y_i = (1 + d_i) 1/x_{-a_i} = 1/x_{-a_i} d_e + 1/x_{a_i} d_i
    Elt Y(int i, Fgl m) const {
        int a = W_.root_id(W_.simple_root(i));
        Elt r{m, {}};
        push(r, 0, F_.one() / x_root(W_.negate_root(a), m));
        push(r, W_.simple(i), F_.one() / x_root(a, m));
        return r;
    }
    Elt Y_word(const Word& word, Fgl m) const {
        Elt r = one(m);
        for (int i : word) r = mul(r, Y(i, m));
        return r;
    }
    // Y_{J/J'} = (sum_{w in reps} d_w) 1/x_{J/J'}
    Elt Y_rel(Subset J, Subset Jp, Fgl m, const std::optional<std::vector<Elem>>& reps = std::nullopt) const {
        check_sub(J, Jp);
        std::vector<Elem> R = reps ? *reps : W_.relative_reps(J, Jp);
        Scalar inv = F_.one() / x_rel(J, Jp, m);
        Accum acc(W_.size());
        for (Elem w : R) acc.add(w, F_.act(w, inv));
        return acc.finish(F_, m);
    }
    Elt Y_J(Subset J, Fgl m) const { return Y_rel(J, 0, m); }

    // Demazure-Lusztig element tau_i (multiplicative model).
    const Elt& tau(int i) const { return tau_[static_cast<size_t>(i)]; }

    // Ring map H -> Q_{m,W}, tau_w -> product of tau_i along a reduced word.
    Elt hecke_to_qw(const HeckeElt& h) const {
        const size_t N = W_.size();
        std::vector<char> need(N, 0);
        for (Elem w : h.support())
            for (Elem x = w; !need[x]; x = parent(x)) {
                need[x] = 1;
                if (x == 0) break;
            }
        std::unordered_map<Elem, std::vector<Elem>> children;
        for (Elem w = 1; w < N; ++w)
            if (need[w]) children[parent(w)].push_back(w);
        Accum acc(N);
        std::function<void(Elem, const Elt&)> walk = [&](Elem v, const Elt& img) {
            if (!h[v].is_zero()) {
                Scalar c = F_.from_tpoly(h[v]);
                for (const auto& [u, p] : img.terms) acc.add(u, c * p);
            }
            auto it = children.find(v);
            if (it == children.end()) return;
            for (Elem w : it->second) walk(w, mul_tau_right(img, W_.word(w).back()));
        };
        if (need[0]) walk(0, one(Fgl::multiplicative));
        return acc.finish(F_, Fgl::multiplicative);
    }
    Elt tau_element(Elem w) const {
        Elt r = one(Fgl::multiplicative);
        for (int i : W_.word(w)) r = mul_tau_right(r, i);
        return r;
    }

    // Coefficient embedding psi: relabels the multiplicative ring as hyperbolic.
    Elt psi(const Elt& a) const {
        if (a.model != Fgl::multiplicative) throw std::invalid_argument("psi expects a multiplicative element");
        Elt r = a;
        r.model = Fgl::hyperbolic;
        return r;
    }

    // iota(p d_v) = v^-1(p) x_Pi / v^-1(x_Pi) d_{v^-1}
    Elt iota(const Elt& a) const {
        auto phi = [&](int id) { return x_root(id, a.model); };
        return anti(a, phi);
    }
    // iota-hat with x-hat_Pi x_Pi in place of x_Pi (multiplicative model).
    Elt hiota(const Elt& a) const {
        if (a.model != Fgl::multiplicative) throw std::invalid_argument("hiota expects a multiplicative element");
        auto phi = [&](int id) { return x_root(id, Fgl::multiplicative) * hat_factor(id); };
        return anti(a, phi);
    }

    // a_{w,u}: delta coefficients of Gamma_w = sum_{v<=w} t^{-l(v)} tau_v.
    std::vector<std::pair<Elem, Scalar>> gamma_coefficients(const Hecke& H, Elem w) const {
        HeckeElt g = H.zero();
        for (Elem v : W_.lower_interval(w)) g[v] = TPoly::monomial(-W_.length(v));
        return hecke_to_qw(g).terms;
    }

    // "(c) δ_[w] + ..." with terms sorted by length, then by name.
    std::string str(const Elt& a) const {
        if (a.terms.empty()) return "0";
        std::vector<size_t> idx(a.terms.size());
        for (size_t k = 0; k < idx.size(); ++k) idx[k] = k;
        std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
            Elem u = a.terms[x].first, v = a.terms[y].first;
            if (W_.length(u) != W_.length(v)) return W_.length(u) < W_.length(v);
            return W_.str(u) < W_.str(v);
        });
        std::ostringstream os;
        for (size_t k = 0; k < idx.size(); ++k) {
            if (k) os << " + ";
            os << "(" << F_.str(a.terms[idx[k]].second) << ") δ_" << W_.str(a.terms[idx[k]].first);
        }
        return os.str();
    }

   private:
    struct Accum {
        explicit Accum(size_t n) : v(n) {}
        void add(Elem w, const Scalar& s) {
            if (v[w]) *v[w] += s;
            else v[w] = s;
        }
        Elt finish(const F& f, Fgl m) {
            Elt r{m, {}};
            for (Elem w = 0; w < v.size(); ++w)
                if (v[w] && !f.is_zero(*v[w])) r.terms.push_back({w, std::move(*v[w])});
            return r;
        }
        std::vector<std::optional<Scalar>> v;
    };

    void push(Elt& r, Elem w, Scalar s) const {
        if (!F_.is_zero(s)) r.terms.push_back({w, std::move(s)});  // callers append in id order
    }

    static void check_model(const Elt& a, const Elt& b) {
        if (a.model != b.model) throw std::invalid_argument("formal group law mismatch");
    }
    static void check_sub(Subset J, Subset Jp) {
        if ((Jp & ~J) != 0) throw std::invalid_argument("J' is not contained in J");
    }

    Elt combine(const Elt& a, const Elt& b, bool minus) const {
        check_model(a, b);
        Elt r{a.model, {}};
        size_t i = 0, j = 0;
        while (i < a.terms.size() || j < b.terms.size()) {
            if (j == b.terms.size() || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
                r.terms.push_back(a.terms[i++]);
            } else if (i == a.terms.size() || b.terms[j].first < a.terms[i].first) {
                r.terms.push_back({b.terms[j].first, minus ? -b.terms[j].second : b.terms[j].second});
                ++j;
            } else {
                Scalar s = minus ? a.terms[i].second - b.terms[j].second : a.terms[i].second + b.terms[j].second;
                if (!F_.is_zero(s)) r.terms.push_back({a.terms[i].first, std::move(s)});
                ++i, ++j;
            }
        }
        return r;
    }

    bool root_in(int id, Subset J) const {
        const auto& rc = W_.roots()[static_cast<size_t>(id)].root_coords;
        for (int i = 0; i < W_.rank(); ++i)
            if (rc[static_cast<size_t>(i)] != 0 && !WeylGroup::in(J, i)) return false;
        return true;
    }
    std::vector<int> neg_roots_in(Subset J) const {
        std::vector<int> out;
        for (int id : W_.parabolic_positive_roots(J)) out.push_back(W_.negate_root(id));
        return out;
    }

    Scalar make_x(const Weight& lambda, Fgl m) const {
        Weight neg = lambda;
        for (auto& c : neg) c = -c;
        Scalar one_minus = F_.atomize(F_.one() - F_.chr(neg));
        if (m == Fgl::multiplicative) return one_minus;
        Scalar t2 = F_.t_pow(2);
        return F_.atomize(t2 + F_.one()) * one_minus / F_.atomize(t2 - F_.chr(neg));
    }
    // t - t^-1 e^a
    Scalar hat_factor(int id) const {
        return F_.atomize(F_.t_pow(1) - F_.chr(W_.roots()[static_cast<size_t>(id)].coords, -1));
    }

    Elt make_tau(int i) const {
        Weight a = W_.simple_root(i);
        Weight na = a;
        for (auto& c : na) c = -c;
        Scalar t = F_.t_pow(1), ti = F_.t_pow(-1);
        const Scalar& xa = x_root(W_.root_id(a), Fgl::multiplicative);  // 1 - e^{-a}
        Elt r{Fgl::multiplicative, {}};
        push(r, 0, (ti - t) / xa);
        push(r, W_.simple(i), F_.atomize(t - F_.chr(na, -1)) / xa);
        // Cross-check against Y_i (t - t^-1 e^{a}) - t.
        Elt alt = sub(scale_right(Y(i, Fgl::multiplicative), F_.atomize(t - F_.chr(a, -1))),
                      scalar(t, Fgl::multiplicative));
        if (!eq(r, alt)) throw std::logic_error("Demazure-Lusztig expressions disagree");
        return r;
    }

    // img * tau_i
    Elt mul_tau_right(const Elt& img, int i) const {
        const Elt& T = tau_[static_cast<size_t>(i)];
        Accum acc(W_.size());
        for (const auto& [v, p] : img.terms)
            for (const auto& [s, c] : T.terms) acc.add(W_.mul(v, s), p * F_.act(v, c));
        return acc.finish(F_, Fgl::multiplicative);
    }

    Elem parent(Elem w) const { return w == 0 ? 0 : W_.rmul(w, W_.word(w).back()); }

    // X/u(X) for X = prod_{a<0} phi(a): prod_{b in inv(u)} phi(ub)/phi(-ub).
    template <class Phi>
    Scalar ratio(Elem u, Phi&& phi) const {
        Scalar r = F_.one();
        for (int b : W_.inversions(u)) {
            int ub = W_.act_root(u, b);
            r = r * phi(ub) / phi(W_.negate_root(ub));
        }
        return r;
    }
    template <class Phi>
    Elt anti(const Elt& a, Phi&& phi) const {
        Accum acc(W_.size());
        for (const auto& [v, p] : a.terms) {
            Elem u = W_.inverse(v);
            acc.add(u, F_.act(u, p) * ratio(u, phi));
        }
        return acc.finish(F_, a.model);
    }

    const F& F_;
    const WeylGroup& W_;
    std::vector<Scalar> xm_, xt_;
    std::vector<Elt> tau_;
};

}  // namespace kls
