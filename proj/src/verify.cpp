#include "kls/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "kls/field.hpp"
#include "kls/grassmannian.hpp"
#include "kls/hecke.hpp"
#include "kls/localization.hpp"
#include "kls/twisted.hpp"

namespace kls::verify {

std::string mode_name(Mode m) { return m == Mode::exact ? "exact" : "modp"; }

Mode parse_mode(const std::string& s) {
    if (s == "exact") return Mode::exact;
    if (s == "modp") return Mode::modp;
    throw std::invalid_argument("unknown mode: " + s);
}

CartanData RunConfig::cartan() const {
    if (n > 0) return CartanData::type_A(n - 1);
    return CartanData::from_label(type + std::to_string(rank));
}

void RunConfig::validate() const {
    if (mode == Mode::modp && points < 1) throw std::invalid_argument("modp mode needs at least one point");
    if (hecke_guard == 0 || comb_guard == 0) throw std::invalid_argument("guards must be positive");
    if (n > 0 && (d < 1 || d >= n)) throw std::invalid_argument("Grassmannian needs 1 <= d < n");
    if (n == 0 && rank < 1) throw std::invalid_argument("rank must be positive");
}

Subset default_subset(int rank) {
    Subset full = (Subset(1) << rank) - 1;
    return full & ~(Subset(1) << ((rank + 1) / 2 - 1));
}

size_t Report::passed() const {
    return static_cast<size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; }));
}

nlohmann::json Report::json(bool timing) const {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["suite"] = suite;
    j["group"] = group;
    j["mode"] = mode_name(mode);
    if (mode == Mode::modp) j["points"] = points;
    j["seed"] = seed;
    j["total"] = cases.size();
    j["passed"] = passed();
    j["ok"] = ok();
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : cases) {
        nlohmann::json e{{"id", c.id}, {"pass", c.pass}};
        if (!c.note.empty()) e["note"] = c.note;
        if (!c.pass) e["witness"] = {{"lhs", c.lhs}, {"rhs", c.rhs}};
        cs.push_back(std::move(e));
    }
    j["cases"] = std::move(cs);
    if (timing) j["seconds"] = seconds;
    return j;
}

std::string Report::text(bool timing) const {
    std::ostringstream os;
    os << "suite " << suite << " on " << group << " (" << mode_name(mode);
    if (mode == Mode::modp) os << ", " << points << " point" << (points == 1 ? "" : "s") << ", seed " << seed;
    os << "): " << passed() << "/" << cases.size() << " pass";
    if (timing) os << " in " << seconds << " s";
    os << "\n";
    for (const auto& c : cases) {
        if (c.pass) continue;
        os << "FAIL " << c.id;
        if (!c.note.empty()) os << ": " << c.note;
        os << "\n";
        if (!c.lhs.empty() || !c.rhs.empty()) os << "  lhs: " << c.lhs << "\n  rhs: " << c.rhs << "\n";
    }
    return os.str();
}

namespace {

constexpr Fgl M = Fgl::multiplicative;
constexpr Fgl T = Fgl::hyperbolic;

struct Case {
    std::string id;
    std::vector<int64_t> a;
};

// Algebra objects over one coefficient field, plus a memo of classes shared
// by the cases of a suite.
template <class F>
struct Ctx {
    using Class = CohClass<F>;
    using Elt = QWElt<F>;
    const WeylGroup& W;
    const Hecke& H;
    const RunConfig& cfg;
    F field;
    TwistedRing<F> R;
    Localization<F> L;

    template <class... Args>
    Ctx(const WeylGroup& W_, const Hecke& H_, const RunConfig& cfg_, Args... args)
        : W(W_), H(H_), cfg(cfg_), field(W_, args...), R(field), L(R, H_) {}

    template <class Fn>
    const Class& cls(int kind, uint64_t key, Fn&& fn) {
        auto k = std::make_pair(kind, key);
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = memo_.find(k);
            if (it != memo_.end()) return *it->second;
        }
        auto c = std::make_shared<Class>(fn());
        std::lock_guard<std::mutex> lk(mu_);
        return *memo_.emplace(k, std::move(c)).first->second;
    }

   private:
    std::mutex mu_;
    std::map<std::pair<int, uint64_t>, std::shared_ptr<Class>> memo_;
};

template <class F>
std::string class_str(Ctx<F>& c, const CohClass<F>& a) {
    std::string s = "{";
    bool first = true;
    for (Elem u = 0; u < c.W.size(); ++u) {
        if (c.field.is_zero(a.r[u])) continue;
        if (!first) s += ", ";
        s += c.W.str(u) + ": " + c.field.str(a.r[u]);
        first = false;
    }
    return s + "}";
}

template <class F>
bool expect_class(Ctx<F>& c, const CohClass<F>& a, const CohClass<F>& b, CaseResult& r) {
    if (c.L.eq(a, b)) return true;
    r.lhs = class_str(c, a);
    r.rhs = class_str(c, b);
    return false;
}

template <class F>
bool expect_elt(Ctx<F>& c, const QWElt<F>& a, const QWElt<F>& b, CaseResult& r) {
    if (c.R.eq(a, b)) return true;
    r.lhs = c.R.str(a);
    r.rhs = c.R.str(b);
    return false;
}

template <class F>
bool expect_scalar(Ctx<F>& c, const typename F::Scalar& a, const typename F::Scalar& b, CaseResult& r) {
    if (c.field.eq(a, b)) return true;
    r.lhs = c.field.str(a);
    r.rhs = c.field.str(b);
    return false;
}

int braid_order(const CartanData& cd, int i, int j) {
    int p = cd.cartan[static_cast<size_t>(i)][static_cast<size_t>(j)] * cd.cartan[static_cast<size_t>(j)][static_cast<size_t>(i)];
    switch (p) {
        case 0: return 2;
        case 1: return 3;
        case 2: return 4;
        case 3: return 6;
    }
    throw std::logic_error("Cartan matrix is not of finite type");
}

std::string pair_id(const WeylGroup& W, Elem a, Elem b) { return W.str(a) + " " + W.str(b); }

Subset parabolic(const RunConfig& cfg, const WeylGroup& W) {
    Subset J = cfg.subset ? *cfg.subset : cfg.n ? grass::GrassData(cfg.n, cfg.d).J() : default_subset(W.rank());
    if (J & ~W.full()) throw std::invalid_argument("subset out of range");
    return J;
}

std::vector<Elem> all_elems(const WeylGroup& W) {
    std::vector<Elem> v(W.size());
    for (Elem w = 0; w < W.size(); ++w) v[w] = w;
    return v;
}

// ---------------------------------------------------------------------------
// Suites

struct Braid {
    static std::vector<Case> cases(const WeylGroup& W, const RunConfig&) {
        std::vector<Case> out;
        int n = W.rank();
        for (int i = 0; i < n; ++i) out.push_back({"quadratic s" + std::to_string(i + 1), {0, i, i}});
        const char* names[] = {"", "tau", "Y^m", "Y^t"};
        for (int kind = 1; kind <= 3; ++kind)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    out.push_back({std::string(names[kind]) + " braid s" + std::to_string(i + 1) + ",s" + std::to_string(j + 1),
                                   {kind, i, j}});
        return out;
    }
    template <class F>
    bool operator()(Ctx<F>& c, const Case& k, CaseResult& r) const {
        int kind = static_cast<int>(k.a[0]), i = static_cast<int>(k.a[1]), j = static_cast<int>(k.a[2]);
        if (kind == 0) {
            const auto& t = c.R.tau(i);
            auto rhs = c.R.add(c.R.scale(c.field.t_pow(-1) - c.field.t_pow(1), t), c.R.one(M));
            return expect_elt(c, c.R.mul(t, t), rhs, r);
        }
        auto gen = [&](int s) { return kind == 1 ? c.R.tau(s) : c.R.Y(s, kind == 2 ? M : T); };
        int m = braid_order(c.W.cartan(), i, j);
        Fgl model = kind == 3 ? T : M;
        auto lhs = c.R.one(model), rhs = c.R.one(model);
        for (int s = 0; s < m; ++s) {
            lhs = c.R.mul(lhs, gen(s % 2 ? j : i));
            rhs = c.R.mul(rhs, gen(s % 2 ? i : j));
        }
        if (kind == 3 && m > 2) {
            r.note = "hyperbolic push-pull elements are expected to break the braid relation";
            if (!c.R.eq(lhs, rhs)) return true;
            r.lhs = c.R.str(lhs);
            r.rhs = c.R.str(rhs);
            return false;
        }
        return expect_elt(c, lhs, rhs, r);
    }
};

enum Kind { kC, kCt, kMC, kSMC, kCJ, kCtJ, kMCJ, kSMCJ };

struct Duality {
    static std::vector<Case> cases(const WeylGroup& W, const RunConfig&) {
        std::vector<Case> out;
        for (Elem w = 0; w < W.size(); ++w)
            for (Elem v = 0; v < W.size(); ++v) out.push_back({pair_id(W, w, v), {w, v}});
        return out;
    }
    template <class F>
    bool operator()(Ctx<F>& c, const Case& k, CaseResult& r) const {
        Elem w = static_cast<Elem>(k.a[0]), v = static_cast<Elem>(k.a[1]);
        const auto& Cw = c.cls(kC, w, [&] { return c.L.kl_class(w); });
        const auto& Ctv = c.cls(kCt, v, [&] { return c.L.kl_class_tilde(v); });
        auto expect = w == v ? c.L.duality_constant() : c.field.zero();
        return expect_scalar(c, c.L.pairing(Cw, Ctv), expect, r);
    }
};

struct Orthogonality {
    static std::vector<Case> cases(const WeylGroup& W, const RunConfig& cfg) { return Duality::cases(W, cfg); }
    template <class F>
    bool operator()(Ctx<F>& c, const Case& k, CaseResult& r) const {
        Elem u = static_cast<Elem>(k.a[0]), v = static_cast<Elem>(k.a[1]);
        const auto& mc = c.cls(kMC, u, [&] { return c.L.mc_cell(u); });
        const auto& smc = c.cls(kSMC, v, [&] { return c.L.smc_cell(v); });
        return expect_scalar(c, c.L.pairing(mc, smc), u == v ? c.field.one() : c.field.zero(), r);
    }
};

struct ParabolicDuality {
    static std::vector<Case> cases(const WeylGroup& W, const RunConfig& cfg) {
        Subset J = parabolic(cfg, W);
        std::vector<Case> out;
        for (Elem a : W.min_reps(J))
            for (Elem b : W.min_reps(J)) out.push_back({"J=" + subset_str(J) + " " + pair_id(W, a, b), {a, b, J}});
        return out;
    }
    template <class F>
    bool operator()(Ctx<F>& c, const Case& k, CaseResult& r) const {
        Elem a = static_cast<Elem>(k.a[0]), b = static_cast<Elem>(k.a[1]);
        Subset J = static_cast<Subset>(k.a[2]);
        const auto& C = c.cls(kCJ, a, [&] { return c.L.kl_class_J(a, J); });
        const auto& Ct = c.cls(kCtJ, b, [&] { return c.L.kl_class_tilde_J(b, J); });
        const auto& mc = c.cls(kMCJ, a, [&] { return c.L.mc_cell_J(a, J); });
        const auto& smc = c.cls(kSMCJ, b, [&] { return c.L.smc_cell_J(b, J); });
        if (!expect_scalar(c, c.L.pairing(C, Ct, J), a == b ? c.L.duality_constant(J) : c.field.zero(), r)) {
            r.note = "KL pairing";
            return false;
        }
        if (!expect_scalar(c, c.L.pairing(mc, smc, J), a == b ? c.field.one() : c.field.zero(), r)) {
            r.note = "MC/SMC pairing";
            return false;
        }
        return true;
    }
};

template <class F>
CohClass<F> random_class(Ctx<F>& c, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> e(-1, 1), coef(-3, 3);
    CohClass<F> out = c.L.zero(M);
    int n = c.W.rank();
    for (Elem u = 0; u < c.W.size(); ++u) {
        Weight l(static_cast<size_t>(n)), m(static_cast<size_t>(n));
        for (auto& x : l) x = e(rng);
        for (auto& x : m) x = e(rng);
        auto num = c.field.chr(l, e(rng)) + c.field.integer(Int(coef(rng)));
        auto den = c.field.chr(m, e(rng)) + c.field.integer(Int(5));
        out.r[u] = num / den;
    }
    return out;
}

struct Serre {
    static std::vector<Case> cases(const WeylGroup& W, const RunConfig& cfg) {
        std::vector<Case> out;
        for (Elem w = 0; w < W.size(); ++w) out.push_back({"D(C) " + W.str(w), {0, w}});
        for (int s = 0; s < cfg.samples; ++s) out.push_back({"D^2 random " + std::to_string(s + 1), {1, s}});
        return out;
    }
    template <class F>
    bool operator()(Ctx<F>& c, const Case& k, CaseResult& r) const {
        if (k.a[0] == 0) {
            Elem w = static_cast<Elem>(k.a[1]);
            const auto& Cw = c.cls(kC, w, [&] { return c.L.kl_class(w); });
            return expect_class(c, c.L.serre_dual(Cw), Cw, r);
        }
        auto x = random_class(c, c.cfg.seed * 1000003ULL + static_cast<uint64_t>(k.a[1]));
        return expect_class(c, c.L.serre_dual(c.L.serre_dual(x)), x, r);
    }
};

// Full flag variety for every w; with a parabolic subset, also every w in W^J
// whose pullback w w_J is smooth.
struct Smoothness {
    static std::vector<Case> cases(const WeylGroup& W, const RunConfig& cfg) {
        std::vector<Case> out;
        for (Elem w = 0; w < W.size(); ++w) out.push_back({W.str(w), {w}});
        if (!cfg.subset && !cfg.n) return out;
        Subset J = parabolic(cfg, W);
        for (Elem w : W.min_reps(J)) out.push_back({"J=" + subset_str(J) + " " + W.str(w), {w, J}});
        return out;
    }
    template <class F>
    bool operator()(Ctx<F>& c, const Case& k, CaseResult& r) const {
        Elem w = static_cast<Elem>(k.a[0]);
        if (k.a.size() > 1) {
            Subset J = static_cast<Subset>(k.a[1]);
            Elem x = c.W.mul(w, c.W.longest(J));
            if (!c.L.is_smooth(x).smooth) {
                r.note = "singular";
                return true;
            }
            r.note = "smooth";
            return expect_class(c, c.L.kl_schubert(w, J), c.L.fundamental_class_smooth(w, J), r);
        }
        bool smooth = c.L.is_smooth(w).smooth;
        bool trivial = true;
        for (Elem v : c.W.lower_interval(w)) trivial = trivial && c.H.kl_poly(v, w) == QPoly{1};
        r.note = smooth ? "smooth" : "singular";
        if (smooth != trivial) {
            r.note = "smoothness criterion disagrees with P_{v,w} = 1";
            r.lhs = smooth ? "smooth" : "singular";
            r.rhs = trivial ? "all P_{v,w} = 1" : "some P_{v,w} != 1";
            return false;
        }
        if (!smooth) return true;
        return expect_class(c, c.L.kl_schubert(w), c.L.fundamental_class_smooth(w), r);
    }
};

struct Psi {
    static std::vector<Case> cases(const WeylGroup& W, const RunConfig&) {
        std::vector<Case> out;
        int n = W.rank();
        for (int i = 0; i < n; ++i) out.push_back({"psi(tau_" + std::to_string(i + 1) + ")", {0, i}});
        for (int i = 0; i < n; ++i) out.push_back({"g(x^t) simple root " + std::to_string(i + 1), {1, i}});
        for (int i = 0; i < n; ++i) out.push_back({"g(x^t) fundamental weight " + std::to_string(i + 1), {2, i}});
        return out;
    }
    template <class F>
    bool operator()(Ctx<F>& c, const Case& k, CaseResult& r) const {
        int i = static_cast<int>(k.a[1]);
        if (k.a[0] == 0) {
            auto rhs = c.R.sub(c.R.scale(c.R.mu(), c.R.Y(i, T)), c.R.scalar(c.field.t_pow(1), T));
            return expect_elt(c, c.R.psi(c.R.tau(i)), rhs, r);
        }
        Weight l(static_cast<size_t>(c.W.rank()), 0);
        if (k.a[0] == 1) l = c.W.simple_root(i);
        else l[static_cast<size_t>(i)] = 1;
        auto t2 = c.field.t_pow(2);
        auto x = c.R.x(l, T);
        auto g = (c.field.one() - t2) * x / (x - (t2 + c.field.one()));
        return expect_scalar(c, g, c.R.x(l, M), r);
    }
};

struct GammaPsiRel {
    static std::vector<Case> cases(const WeylGroup& W, const RunConfig&) {
        std::vector<Case> out;
        for (Subset J = 0; J <= W.full(); ++J)
            for (Subset Jp = 0; Jp <= J; ++Jp)
                if ((Jp & ~J) == 0) out.push_back({"J=" + subset_str(J) + " J'=" + subset_str(Jp), {J, Jp}});
        return out;
    }
    template <class F>
    bool operator()(Ctx<F>& c, const Case& k, CaseResult& r) const {
        Subset J = static_cast<Subset>(k.a[0]), Jp = static_cast<Subset>(k.a[1]);
        int l = c.W.length(c.W.w_rel(J, Jp));
        auto lhs = c.R.mul(c.R.scale(c.L.mu_pow(-l), c.R.psi(c.R.hecke_to_qw(c.H.gamma_rel(J, Jp)))), c.R.Y_J(Jp, T));
        if (!expect_elt(c, lhs, c.R.Y_J(J, T), r)) {
            r.note = "mu^{-l} psi(gamma_{J/J'}) Y_{J'} vs Y_J";
            return false;
        }
        for (Fgl m : {M, T}) {
            if (!expect_elt(c, c.R.mul(c.R.Y_J(Jp, m), c.R.iota(c.R.Y_rel(J, Jp, m))), c.R.Y_J(J, m), r)) {
                r.note = std::string("Y_{J'} iota(Y_{J/J'}) vs Y_J, ") + fgl_name(m);
                return false;
            }
        }
        return true;
    }
};

struct Pushforward {
    static std::vector<Case> cases(const WeylGroup& W, const RunConfig&) {
        std::vector<Case> out;
        for (Subset J = 0; J <= W.full(); ++J)
            for (Elem w : W.min_reps(J)) out.push_back({"J=" + subset_str(J) + " " + W.str(w), {J, w}});
        return out;
    }
    template <class F>
    bool operator()(Ctx<F>& c, const Case& k, CaseResult& r) const {
        Subset J = static_cast<Subset>(k.a[0]);
        Elem w = static_cast<Elem>(k.a[1]);
        Elem wJ = c.W.longest(J);
        auto poin = c.W.poincare(J);
        TPoly pj;
        for (size_t e = 0; e < poin.size(); ++e)
            if (poin[e]) pj += TPoly::monomial(2 * static_cast<int>(e), Int(poin[e]));
        auto factor = c.field.t_pow(-c.W.length(wJ)) * c.field.from_tpoly(pj);
        Elem x = c.W.mul(w, wJ);
        const auto& Cx = c.cls(kC, x, [&] { return c.L.kl_class(x); });
        return expect_class(c, c.L.pushforward(Cx, J), c.L.scale(factor, c.L.kl_class_J(w, J)), r);
    }
};

struct Inversion {
    static std::vector<Case> cases(const WeylGroup& W, const RunConfig&) {
        std::vector<Case> out;
        for (Subset J = 0; J <= W.full(); ++J) {
            if (J == W.full()) continue;  // a single coset
            for (Elem u : W.min_reps(J)) out.push_back({"J=" + subset_str(J) + " u=" + W.str(u), {J, u}});
        }
        return out;
    }
    template <class F>
    bool operator()(Ctx<F>& c, const Case& k, CaseResult& r) const {
        Subset J = static_cast<Subset>(k.a[0]);
        Elem u = static_cast<Elem>(k.a[1]);
        auto reps = J ? c.W.min_reps(J) : all_elems(c.W);
        for (Elem v : reps) {
            QPoly s;
            for (Elem w : reps) {
                QPoly q = J ? c.H.inverse_parabolic_kl(u, w, J) : c.H.inverse_kl(u, w);
                QPoly p = J ? c.H.parabolic_kl(w, v, J) : c.H.kl_poly(w, v);
                s = qpoly_add(s, qpoly_mul(q, p), c.W.sign(u) * c.W.sign(w));
            }
            QPoly expect = u == v ? QPoly{1} : QPoly{};
            if (qpoly_trim(s) != expect) {
                r.note = "v=" + c.W.str(v);
                r.lhs = qpoly_str(s);
                r.rhs = qpoly_str(expect);
                return false;
            }
        }
        return true;
    }
};

struct Zelevinsky {
    static std::vector<Case> cases(const WeylGroup&, const RunConfig& cfg) {
        grass::GrassData g(cfg.n, cfg.d);
        std::vector<Case> out;
        auto parts = grass::all_partitions(g);
        for (size_t k = 0; k < parts.size(); ++k) out.push_back({"lambda=(" + parts[k].str() + ")", {static_cast<int64_t>(k)}});
        return out;
    }
    template <class F>
    bool operator()(Ctx<F>& c, const Case& k, CaseResult& r) const {
        grass::GrassData g(c.cfg.n, c.cfg.d);
        grass::Partition lam = grass::all_partitions(g)[static_cast<size_t>(k.a[0])];
        auto all = grass::all_tilings(lam, g);
        std::vector<std::string> msgs;
        for (size_t t = 0; t < all.size(); ++t) {
            auto rep = grass::verify_factorizations(c.R, c.H, lam, g, all[t], g.n);
            for (const auto& m : rep.combinatorics.failures) msgs.push_back("tiling " + std::to_string(t + 1) + ": " + m);
            for (const auto& m : rep.failures) msgs.push_back("tiling " + std::to_string(t + 1) + ": " + m);
        }
        auto z = grass::verify_zelevinsky(c.L, lam, g, all);
        msgs.insert(msgs.end(), z.failures.begin(), z.failures.end());
        r.note = std::to_string(all.size()) + " tiling" + (all.size() == 1 ? "" : "s");
        if (msgs.empty()) return true;
        for (const auto& m : msgs) r.note += "; " + m;
        auto cls = grass::zelevinsky_class(c.L, g, all.front()).cls;
        auto target = c.L.kl_schubert(grass::group_data(c.W, lam, g).w_lambda, g.J());
        r.lhs = class_str(c, cls);
        r.rhs = class_str(c, target);
        return false;
    }
};

struct SuiteDef {
    std::string name;
    bool hecke = true;
    bool grass = false;
    bool dual = true;
    std::function<std::vector<Case>(const WeylGroup&, const RunConfig&)> cases;
    std::function<bool(Ctx<ExactField>&, const Case&, CaseResult&)> exact;
    std::function<bool(Ctx<ModPField>&, const Case&, CaseResult&)> modp;
};

template <class S>
SuiteDef def(std::string name, bool grass = false, bool dual = true) {
    SuiteDef d;
    d.name = std::move(name);
    d.grass = grass;
    d.dual = dual;
    d.cases = &S::cases;
    d.exact = S{};
    d.modp = S{};
    return d;
}

const std::vector<SuiteDef>& registry() {
    static const std::vector<SuiteDef> r = {
        def<Braid>("braid"),
        def<Duality>("duality"),
        def<ParabolicDuality>("parabolic-duality"),
        def<Serre>("serre"),
        def<Smoothness>("smoothness"),
        def<Psi>("psi"),
        def<GammaPsiRel>("gammapsirel"),
        def<Orthogonality>("orthogonality"),
        def<Zelevinsky>("zelevinsky", true, false),
        def<Inversion>("inversion"),
        def<Pushforward>("pushforward"),
    };
    return r;
}

const SuiteDef& find_suite(const std::string& name) {
    for (const auto& s : registry())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown suite: " + name);
}

template <class Fn>
void parallel_for(size_t n, unsigned threads, Fn&& fn) {
    unsigned t = threads ? threads : std::max(1U, std::thread::hardware_concurrency());
    t = static_cast<unsigned>(std::min<size_t>(t, std::max<size_t>(n, 1)));
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < n; i = next++) fn(i);
    };
    if (t <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < t; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

template <class F, class Chk>
void run_case(Ctx<F>& c, const Chk& chk, const Case& k, CaseResult& r) {
    r.id = k.id;
    try {
        r.pass = chk(c, k, r);
    } catch (const ResampleNeeded&) {
        throw;
    } catch (const std::exception& e) {
        r.pass = false;
        r.note = std::string("exception: ") + e.what();
    }
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    return out;
}

bool is_suite(const std::string& name) {
    for (const auto& s : registry())
        if (s.name == name) return true;
    return false;
}

Report run_suite(const std::string& suite, const RunConfig& cfg) {
    cfg.validate();
    const SuiteDef& def = find_suite(suite);
    if (def.grass && cfg.n == 0) throw std::invalid_argument("suite " + suite + " needs --n and --d");
    auto t0 = std::chrono::steady_clock::now();

    std::unique_ptr<WeylGroup> Wp;
    try {
        Wp = std::make_unique<WeylGroup>(cfg.cartan(), cfg.comb_guard + 1);
    } catch (const std::runtime_error&) {
        throw GuardError("group exceeds the combinatorics guard of " + std::to_string(cfg.comb_guard) + " elements");
    }
    const WeylGroup& W = *Wp;
    if (def.hecke && W.size() > cfg.hecke_guard)
        throw GuardError("suite " + suite + " needs |W| <= " + std::to_string(cfg.hecke_guard) + ", got " + std::to_string(W.size()));
    Hecke::Options hopt;
    hopt.cache_dir = cfg.cache_dir;
    Hecke H(W, hopt);

    Report rep;
    rep.suite = suite;
    rep.group = cfg.n ? "Gr(" + std::to_string(cfg.d) + "," + std::to_string(cfg.n) + ")" : W.cartan().type_label;
    rep.mode = cfg.mode;
    rep.points = cfg.points;
    rep.seed = cfg.seed;

    auto cases = def.cases(W, cfg);
    rep.cases.resize(cases.size());

    if (cfg.mode == Mode::exact) {
        Ctx<ExactField> c(W, H, cfg);
        parallel_for(cases.size(), cfg.threads, [&](size_t i) { run_case(c, def.exact, cases[i], rep.cases[i]); });
    } else {
        // point j uses seed + j; replacements draw from seeds beyond the last point
        std::vector<std::unique_ptr<Ctx<ModPField>>> ctx;
        for (int j = 0; j < cfg.points; ++j)
            ctx.push_back(std::make_unique<Ctx<ModPField>>(W, H, cfg, cfg.seed + static_cast<uint64_t>(j), def.dual));
        std::atomic<uint64_t> spare{cfg.seed + static_cast<uint64_t>(cfg.points)};
        parallel_for(cases.size(), cfg.threads, [&](size_t i) {
            CaseResult& r = rep.cases[i];
            r.id = cases[i].id;
            for (int j = 0; j < cfg.points; ++j) {
                CaseResult one;
                Ctx<ModPField>* c = ctx[static_cast<size_t>(j)].get();
                std::unique_ptr<Ctx<ModPField>> local;
                for (int attempt = 0;; ++attempt) {
                    try {
                        run_case(*c, def.modp, cases[i], one);
                        break;
                    } catch (const ResampleNeeded&) {
                        if (attempt >= 8) {
                            one.pass = false;
                            one.note = "evaluation points keep hitting a pole";
                            break;
                        }
                        local = std::make_unique<Ctx<ModPField>>(W, H, cfg, spare++, def.dual);
                        c = local.get();
                    }
                }
                if (!one.pass || j == 0) r = one;
                if (!one.pass) break;
            }
        });
        if (cfg.recheck > 0) {
            std::vector<size_t> idx(cases.size());
            for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::mt19937_64 rng(cfg.seed);
            std::shuffle(idx.begin(), idx.end(), rng);
            idx.resize(std::min(idx.size(), static_cast<size_t>(cfg.recheck)));
            std::sort(idx.begin(), idx.end());
            Ctx<ExactField> c(W, H, cfg);
            std::vector<CaseResult> extra(idx.size());
            parallel_for(idx.size(), cfg.threads, [&](size_t k) {
                run_case(c, def.exact, cases[idx[k]], extra[k]);
                extra[k].id = "exact: " + extra[k].id;
            });
            rep.cases.insert(rep.cases.end(), extra.begin(), extra.end());
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace kls::verify
