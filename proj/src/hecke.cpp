#include "kls/hecke.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace kls {

// ---------------------------------------------------------------------------
// TPoly

TPoly TPoly::monomial(int k, const Int& c) {
    TPoly p;
    if (!c.is_zero()) {
        p.lo_ = k;
        p.c_.push_back(c);
    }
    return p;
}

Int TPoly::coeff(int k) const {
    if (c_.empty() || k < lo_ || k > high()) return Int(0);
    return c_[static_cast<size_t>(k - lo_)];
}

void TPoly::trim() {
    size_t b = 0;
    while (b < c_.size() && c_[b].is_zero()) ++b;
    if (b == c_.size()) {
        c_.clear();
        lo_ = 0;
        return;
    }
    size_t e = c_.size();
    while (c_[e - 1].is_zero()) --e;
    if (b > 0 || e < c_.size()) {
        c_ = std::vector<Int>(c_.begin() + static_cast<long>(b), c_.begin() + static_cast<long>(e));
        lo_ += static_cast<int>(b);
    }
}

TPoly TPoly::operator-() const {
    TPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

TPoly& TPoly::operator+=(const TPoly& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    int lo = std::min(lo_, o.lo_), hi = std::max(high(), o.high());
    if (lo < lo_ || hi > high()) {
        std::vector<Int> n(static_cast<size_t>(hi - lo + 1));
        for (size_t k = 0; k < c_.size(); ++k) n[k + static_cast<size_t>(lo_ - lo)] = std::move(c_[k]);
        c_ = std::move(n);
        lo_ = lo;
    }
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k + static_cast<size_t>(o.lo_ - lo_)] += o.c_[k];
    trim();
    return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) { return *this += -o; }

TPoly operator*(const TPoly& a, const TPoly& b) {
    TPoly r;
    if (a.c_.empty() || b.c_.empty()) return r;
    r.lo_ = a.lo_ + b.lo_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
}

TPoly TPoly::shifted(int k) const {
    TPoly r = *this;
    if (!r.c_.empty()) r.lo_ += k;
    return r;
}

TPoly TPoly::bar() const {
    TPoly r;
    if (c_.empty()) return r;
    r.c_.assign(c_.rbegin(), c_.rend());
    r.lo_ = -high();
    return r;
}

LaurentPoly TPoly::to_laurent(int nvars) const {
    std::vector<Term> terms;
    for (size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) terms.push_back({Monomial::var(0, lo_ + static_cast<int>(k)), c_[k]});
    return LaurentPoly::from_terms(nvars, std::move(terms));
}

std::string TPoly::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (int k = high(); k >= lo_; --k) {
        Int c = coeff(k);
        if (c.is_zero()) continue;
        bool neg = c.sign() < 0;
        Int m = c.abs();
        std::string body;
        if (k == 0)
            body = m.str();
        else {
            std::string v = k == 1 ? "t" : "t^" + std::to_string(k);
            body = m.is_one() ? v : m.str() + "*" + v;
        }
        if (s.empty())
            s = neg ? "-" + body : body;
        else
            s += (neg ? " - " : " + ") + body;
    }
    return s;
}

// ---------------------------------------------------------------------------
// QPoly

QPoly qpoly_trim(QPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

QPoly qpoly_add(const QPoly& a, const QPoly& b, int64_t scale_b) {
    QPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += scale_b * b[i];
    return qpoly_trim(std::move(r));
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return qpoly_trim(std::move(r));
}

std::string qpoly_str(const QPoly& p) {
    std::string s = "[";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// HeckeElt

bool HeckeElt::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const TPoly& p) { return p.is_zero(); });
}

std::vector<Elem> HeckeElt::support() const {
    std::vector<Elem> s;
    for (size_t w = 0; w < c_.size(); ++w)
        if (!c_[w].is_zero()) s.push_back(static_cast<Elem>(w));
    return s;
}

HeckeElt HeckeElt::operator-() const {
    HeckeElt r = *this;
    for (auto& p : r.c_) p = -p;
    return r;
}

HeckeElt& HeckeElt::operator+=(const HeckeElt& o) {
    if (c_.empty()) c_.resize(o.c_.size());
    for (size_t w = 0; w < o.c_.size(); ++w)
        if (!o.c_[w].is_zero()) c_[w] += o.c_[w];
    return *this;
}

HeckeElt& HeckeElt::operator-=(const HeckeElt& o) {
    if (c_.empty()) c_.resize(o.c_.size());
    for (size_t w = 0; w < o.c_.size(); ++w)
        if (!o.c_[w].is_zero()) c_[w] -= o.c_[w];
    return *this;
}

HeckeElt HeckeElt::scaled(const TPoly& p) const {
    HeckeElt r(c_.size());
    for (size_t w = 0; w < c_.size(); ++w)
        if (!c_[w].is_zero()) r.c_[w] = c_[w] * p;
    return r;
}

// ---------------------------------------------------------------------------
// KLTable

bool KLTable::all_complete() const {
    return std::all_of(complete_.begin(), complete_.end(), [](char c) { return c != 0; });
}

void KLTable::save(const std::filesystem::path& path, const WeylGroup& W) const {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["type_label"] = W.cartan().type_label;
    j["rank"] = W.rank();
    auto word1 = [&](Elem x) {
        std::vector<int> w;
        for (int i : W.word(x)) w.push_back(i + 1);
        return w;
    };
    nlohmann::json entries = nlohmann::json::array();
    for (Elem w : W.by_length())
        for (Elem v : W.by_length()) entries.push_back({word1(v), word1(w), get(v, w)});
    j["entries"] = std::move(entries);
    std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write KL cache file " + tmp.string());
        out << j.dump() << "\n";
        if (!out) throw std::runtime_error("write failed for KL cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::optional<KLTable> KLTable::load(const std::filesystem::path& path, const WeylGroup& W) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (j.value("format_version", -1) != kFormatVersion || j.value("type_label", std::string()) != W.cartan().type_label ||
        j.value("rank", -1) != W.rank())
        return std::nullopt;
    KLTable t(W.size());
    size_t count = 0;
    for (const auto& e : j.at("entries")) {
        Word vw, ww;
        for (int i : e.at(0).get<std::vector<int>>()) vw.push_back(i - 1);
        for (int i : e.at(1).get<std::vector<int>>()) ww.push_back(i - 1);
        t.set(W.from_word(vw), W.from_word(ww), qpoly_trim(e.at(2).get<QPoly>()));
        ++count;
    }
    if (count != W.size() * W.size()) return std::nullopt;
    for (Elem w = 0; w < W.size(); ++w) {
        if (t.get(w, w) != QPoly{1}) return std::nullopt;
        t.mark_complete(w);
    }
    return t;
}

// ---------------------------------------------------------------------------
// Hecke

Hecke::Hecke(const WeylGroup& W, Options opt) : W_(W), opt_(std::move(opt)) {}

HeckeElt Hecke::tau(Elem w, const TPoly& c) const {
    HeckeElt h(dim());
    h[w] = c;
    return h;
}

HeckeElt Hecke::tau_simple_inverse(int i) const {
    HeckeElt h = tau(W_.simple(i));
    h[0] = TPoly::monomial(1) - TPoly::monomial(-1);
    return h;
}

HeckeElt Hecke::tau_mul_right(const HeckeElt& h, int i) const {
    if (i < 0 || i >= W_.rank()) throw std::out_of_range("simple index out of range");
    HeckeElt r(dim());
    const TPoly q = TPoly::monomial(-1) - TPoly::monomial(1);
    for (Elem w = 0; w < dim(); ++w) {
        if (h[w].is_zero()) continue;
        Elem v = W_.rmul(w, i);
        r[v] += h[w];
        if (W_.length(v) < W_.length(w)) r[w] += h[w] * q;
    }
    return r;
}

HeckeElt Hecke::tau_mul_left(int i, const HeckeElt& h) const {
    if (i < 0 || i >= W_.rank()) throw std::out_of_range("simple index out of range");
    HeckeElt r(dim());
    const TPoly q = TPoly::monomial(-1) - TPoly::monomial(1);
    for (Elem w = 0; w < dim(); ++w) {
        if (h[w].is_zero()) continue;
        Elem v = W_.lmul(i, w);
        r[v] += h[w];
        if (W_.length(v) < W_.length(w)) r[w] += h[w] * q;
    }
    return r;
}

HeckeElt Hecke::mul(const HeckeElt& a, const HeckeElt& b) const {
    HeckeElt r(dim());
    auto supp = b.support();
    if (supp.empty() || a.is_zero()) return r;
    // a * tau_w for every w below the support, reusing a*tau_{ws} for a right descent s.
    std::vector<char> need(dim(), 0);
    for (Elem w : supp) need[w] = 1;
    for (auto it = W_.by_length().rbegin(); it != W_.by_length().rend(); ++it) {
        Elem w = *it;
        if (!need[w] || w == 0) continue;
        int s = 0;
        while (!W_.right_descent(w, s)) ++s;
        need[W_.rmul(w, s)] = 1;
    }
    std::vector<HeckeElt> memo(dim());
    for (Elem w : W_.by_length()) {
        if (!need[w]) continue;
        if (w == 0) {
            memo[w] = a;
        } else {
            int s = 0;
            while (!W_.right_descent(w, s)) ++s;
            memo[w] = tau_mul_right(memo[W_.rmul(w, s)], s);
        }
    }
    for (Elem w : supp) r += memo[w].scaled(b[w]);
    return r;
}

HeckeElt Hecke::tau_inverse(Elem w) const {
    // (tau_{i1} ... tau_{ik})^{-1} = tau_{ik}^{-1} ... tau_{i1}^{-1}
    HeckeElt x = one();
    const TPoly c = TPoly::monomial(1) - TPoly::monomial(-1);
    const Word& wd = W_.word(w);
    for (auto it = wd.rbegin(); it != wd.rend(); ++it) x = tau_mul_right(x, *it) + x.scaled(c);
    return x;
}

HeckeElt Hecke::bar(const HeckeElt& h) const {
    HeckeElt r(dim());
    for (Elem w : h.support()) r += tau_inverse(W_.inverse(w)).scaled(h[w].bar());
    return r;
}

HeckeElt Hecke::hiota(const HeckeElt& h) const {
    HeckeElt r(dim());
    for (Elem w : h.support()) r[W_.inverse(w)] = h[w];
    return r;
}

std::filesystem::path Hecke::cache_file() const {
    if (!opt_.cache_dir) return {};
    return *opt_.cache_dir / ("kl_" + W_.cartan().type_label + ".json");
}

const KLTable& Hecke::kl_table() const {
    std::call_once(once_, [this] {
        if (opt_.cache_dir) {
            if (auto t = KLTable::load(cache_file(), W_)) {
                table_ = std::move(*t);
                from_cache_ = true;
                return;
            }
        }
        compute_table();
        if (opt_.cache_dir) table_.save(cache_file(), W_);
    });
    return table_;
}

namespace {

HeckeElt build_gamma(const WeylGroup& W, const KLTable& t, Elem w) {
    HeckeElt g(W.size());
    for (Elem v = 0; v < W.size(); ++v) {
        const QPoly& p = t.get(v, w);
        if (p.empty()) continue;
        TPoly c;
        int d = W.length(w) - W.length(v);
        for (size_t k = 0; k < p.size(); ++k)
            if (p[k]) c += TPoly::monomial(d - 2 * static_cast<int>(k), Int(p[k]));
        g[v] = c;
    }
    return g;
}

int mu_from(const WeylGroup& W, const KLTable& t, Elem v, Elem u) {
    int d = W.length(u) - W.length(v);
    if (d <= 0 || d % 2 == 0) return 0;
    const QPoly& p = t.get(v, u);
    auto k = static_cast<size_t>((d - 1) / 2);
    return k < p.size() ? static_cast<int>(p[k]) : 0;
}

}  // namespace

void Hecke::compute_table() const {
    const size_t N = dim();
    KLTable t(N);
    const TPoly tt = TPoly::monomial(1);
    for (Elem w : W_.by_length()) {
        if (w == 0) {
            t.set(0, 0, {1});
            t.mark_complete(0);
            continue;
        }
        int s = 0;
        while (!W_.right_descent(w, s)) ++s;
        Elem x = W_.rmul(w, s);
        HeckeElt gx = build_gamma(W_, t, x);
        HeckeElt g = tau_mul_right(gx, s) + gx.scaled(tt);
        for (Elem v = 0; v < N; ++v) {
            if (v == x || !W_.leq(v, x) || !W_.right_descent(v, s)) continue;
            int m = mu_from(W_, t, v, x);
            if (m) g -= build_gamma(W_, t, v).scaled(TPoly::constant(Int(m)));
        }
        for (Elem v = 0; v < N; ++v) {
            if (g[v].is_zero()) continue;
            int d = W_.length(w) - W_.length(v);
            QPoly p;
            for (int k = g[v].low(); k <= g[v].high(); ++k) {
                Int c = g[v].coeff(k);
                if (c.is_zero()) continue;
                if ((d - k) < 0 || (d - k) % 2 != 0 || !c.is_small())
                    throw std::logic_error("KL recursion produced a coefficient outside the expected form");
                auto pw = static_cast<size_t>((d - k) / 2);
                if (p.size() <= pw) p.resize(pw + 1, 0);
                p[pw] = c.small();
            }
            t.set(v, w, qpoly_trim(std::move(p)));
        }
        t.mark_complete(w);
    }
    if (N <= opt_.bar_check_limit) {
        for (Elem w = 0; w < N; ++w) {
            HeckeElt g = build_gamma(W_, t, w);
            if (bar(g) != g) throw std::logic_error("bar-invariance check failed for gamma_" + W_.str(w));
        }
    }
    table_ = std::move(t);
}

int Hecke::mu(Elem v, Elem u) const { return mu_from(W_, kl_table(), v, u); }

HeckeElt Hecke::kl_basis(Elem w) const { return build_gamma(W_, kl_table(), w); }

HeckeElt Hecke::kl_tilde(Elem w) const {
    const KLTable& t = kl_table();
    HeckeElt g(dim());
    for (Elem v = 0; v < dim(); ++v) {
        const QPoly& p = t.get(v, w);
        if (p.empty()) continue;
        int base = W_.length(v) - W_.length(w);
        int sg = W_.sign(v) * W_.sign(w);
        TPoly c;
        for (size_t k = 0; k < p.size(); ++k)
            if (p[k]) c += TPoly::monomial(base + 2 * static_cast<int>(k), Int(sg * p[k]));
        g[v] = c;
    }
    return g;
}

QPoly Hecke::inverse_kl(Elem u, Elem w) const {
    Elem w0 = W_.w0();
    return kl_poly(W_.mul(w0, w), W_.mul(w0, u));
}

QPoly Hecke::parabolic_kl(Elem v, Elem w, Subset J) const {
    if (!W_.is_min_rep(v, J) || !W_.is_min_rep(w, J)) throw std::invalid_argument("argument not in W^J");
    return kl_poly(v, W_.mul(w, W_.longest(J)));
}

QPoly Hecke::inverse_parabolic_kl(Elem u, Elem w, Subset J) const {
    if (!W_.is_min_rep(u, J) || !W_.is_min_rep(w, J)) throw std::invalid_argument("argument not in W^J");
    Elem wJ = W_.longest(J);
    QPoly r;
    Elem uwJ = W_.mul(u, wJ);
    for (Elem v : W_.parabolic_subgroup(J))
        r = qpoly_add(r, inverse_kl(uwJ, W_.mul(w, v)), W_.sign(v) * W_.sign(wJ));
    return r;
}

HeckeElt Hecke::gamma_rel(Subset J, Subset Jp) const {
    Elem wr = W_.w_rel(J, Jp);
    HeckeElt h(dim());
    for (Elem v : W_.relative_reps(J, Jp)) h[v] = TPoly::monomial(W_.length(wr) - W_.length(v));
    return h;
}

HeckeElt Hecke::gamma_sum(Elem w) const {
    HeckeElt h(dim());
    for (Elem v = 0; v < dim(); ++v)
        if (W_.leq(v, w)) h[v] = TPoly::monomial(-W_.length(v));
    return h;
}

std::vector<std::pair<Elem, TPoly>> Hecke::kl_coordinates(const HeckeElt& h0) const {
    HeckeElt h = h0;
    std::vector<std::pair<Elem, TPoly>> out;
    const auto& order = W_.by_length();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Elem w = *it;
        if (h[w].is_zero()) continue;
        TPoly c = h[w];
        h -= kl_basis(w).scaled(c);
        out.emplace_back(w, std::move(c));
    }
    return out;
}

std::string Hecke::str(const HeckeElt& h) const {
    auto supp = h.support();
    if (supp.empty()) return "0";
    std::vector<std::pair<std::string, Elem>> keyed;
    for (Elem w : supp) keyed.emplace_back(W_.str(w), w);
    std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        if (W_.length(a.second) != W_.length(b.second)) return W_.length(a.second) < W_.length(b.second);
        return a.first < b.first;
    });
    std::string s;
    for (const auto& [name, w] : keyed) {
        if (!s.empty()) s += " + ";
        s += "(" + h[w].str() + ")*T" + (name.front() == '[' ? name : "[" + name + "]");
    }
    return s;
}

}  // namespace kls
