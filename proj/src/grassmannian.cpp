#include "kls/grassmannian.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

namespace kls::grass {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

Subset bit(int label) { return Subset(1) << (label - 1); }

Subset interval(int lo, int hi) {
    Subset s = 0;
    for (int k = lo; k <= hi; ++k) s |= bit(k);
    return s;
}

int max_label(Subset S) {
    int m = 0;
    for (int k = 1; k <= 32; ++k)
        if (S & bit(k)) m = k;
    return m;
}

bool subset_of(Subset a, Subset b) { return (a & ~b) == 0; }

std::vector<int> labels(Subset S) {
    std::vector<int> out;
    for (int k = 1; k <= 32; ++k)
        if (S & bit(k)) out.push_back(k);
    return out;
}

// Boxes of rows 1..d: owner[i-1][j-1] = rectangle index (1-based) or 0.
using Grid = std::vector<std::vector<int>>;

Grid owners(const Tiling& T, const GrassData& g, size_t upto) {
    Grid G(static_cast<size_t>(g.d), std::vector<int>(static_cast<size_t>(g.cols()), 0));
    for (size_t k = 0; k < upto; ++k) {
        const Rect& R = T.rects[k];
        for (int i = R.i0; i < R.i0 + R.p; ++i)
            for (int j = R.j0; j < R.j0 + R.q; ++j) G[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = static_cast<int>(k + 1);
    }
    return G;
}

bool filled(const Grid& G, int i, int j) {
    if (i < 1 || j < 1 || i > static_cast<int>(G.size()) || j > static_cast<int>(G[0].size())) return false;
    return G[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] != 0;
}

}  // namespace

GrassData::GrassData(int n_, int d_) : n(n_), d(d_) {
    if (d < 1 || d >= n) throw std::invalid_argument("Grassmannian needs 1 <= d < n");
    if (n > 31) throw std::invalid_argument("Grassmannian needs n <= 31");
}

int Partition::size() const {
    int s = 0;
    for (int x : parts) s += x;
    return s;
}

std::string Partition::str() const {
    std::string s;
    for (size_t k = 0; k < parts.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(parts[k]);
    }
    return s;
}

Partition parse_partition(const std::string& s) {
    Partition lam;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (tok.empty()) continue;
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad partition entry: " + tok);
        }
        if (used != tok.size() || v < 0) throw std::invalid_argument("bad partition entry: " + tok);
        if (v) lam.parts.push_back(v);
    }
    for (size_t k = 1; k < lam.parts.size(); ++k)
        if (lam.parts[k] > lam.parts[k - 1]) throw std::invalid_argument("partition is not weakly decreasing: " + s);
    return lam;
}

bool fits(const Partition& lam, const GrassData& g) {
    for (size_t k = 0; k < lam.parts.size(); ++k) {
        if (lam.parts[k] <= 0) return false;
        if (k && lam.parts[k] > lam.parts[k - 1]) return false;
    }
    return lam.length() <= g.d && lam.row(1) <= g.cols();
}

void require_fits(const Partition& lam, const GrassData& g) {
    if (!fits(lam, g))
        throw std::invalid_argument("partition (" + lam.str() + ") does not fit in the " + std::to_string(g.d) + "x" +
                                    std::to_string(g.cols()) + " rectangle");
}

std::vector<Partition> all_partitions(const GrassData& g) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int bound) {
        Partition p;
        p.parts = cur;
        out.push_back(p);
        if (static_cast<int>(cur.size()) == g.d) return;
        for (int v = 1; v <= bound; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(g.cols());
    std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.parts > b.parts;
    });
    return out;
}

std::string lattice_path(const Partition& lam, const GrassData& g) {
    require_fits(lam, g);
    std::string path;
    int x = 0;
    for (int y = 0; y < g.d; ++y) {
        int len = lam.row(g.d - y);
        for (; x < len; ++x) path += 'H';
        path += 'V';
    }
    for (; x < g.cols(); ++x) path += 'H';
    return path;
}

std::vector<int> I_set(const Partition& lam, const GrassData& g) {
    std::vector<int> I;
    int x = 0, y = 0;
    for (char c : lattice_path(lam, g)) {
        if (c == 'V') I.push_back(x + y + 1), ++y;
        else ++x;
    }
    return I;
}

std::vector<int> grass_permutation(const Partition& lam, const GrassData& g) {
    std::vector<int> I = I_set(lam, g), perm = I;
    for (int k = 1; k <= g.n; ++k)
        if (!std::binary_search(I.begin(), I.end(), k)) perm.push_back(k);
    return perm;
}

Word reduced_word(const Partition& lam, const GrassData& g) {
    require_fits(lam, g);
    Word w;
    for (int i = lam.length(); i >= 1; --i)
        for (int j = lam.row(i); j >= 1; --j) w.push_back(g.d + j - i);
    return w;
}

Partition from_I_set(const std::vector<int>& I, const GrassData& g) {
    std::vector<int> s = I;
    std::sort(s.begin(), s.end());
    if (static_cast<int>(s.size()) != g.d || std::adjacent_find(s.begin(), s.end()) != s.end() ||
        (!s.empty() && (s.front() < 1 || s.back() > g.n)))
        throw std::invalid_argument("not a d-subset of [n]");
    // the k-th vertical step (0-based) has label x + k + 1
    Partition lam;
    for (int k = g.d - 1; k >= 0; --k) {
        int x = s[static_cast<size_t>(k)] - k - 1;
        if (x) lam.parts.push_back(x);
    }
    return lam;
}

MatrixEncoding encode(const Partition& lam, const GrassData& g) {
    std::string path = lattice_path(lam, g);
    MatrixEncoding e;
    int x = 0, y = 0;
    size_t pos = 0;
    int h = 0;
    while (pos < path.size()) {
        if (path[pos] == 'H') {
            ++h, ++x, ++pos;
            continue;
        }
        int a = 0;
        while (pos < path.size() && path[pos] == 'V') ++a, ++y, ++pos;
        e.b.push_back(h);
        e.a.push_back(a);
        e.k.push_back(x + y);
        h = 0;
    }
    return e;
}

Partition decode(const MatrixEncoding& e, const GrassData& g) {
    if (e.k.size() != e.a.size() || e.b.size() != e.a.size() || e.a.empty())
        throw std::invalid_argument("malformed matrix encoding");
    std::string path;
    int x = 0, y = 0;
    for (size_t j = 0; j < e.a.size(); ++j) {
        if (e.b[j] < 0 || e.a[j] <= 0 || (j && e.b[j] == 0)) throw std::invalid_argument("malformed matrix encoding");
        path.append(static_cast<size_t>(e.b[j]), 'H');
        path.append(static_cast<size_t>(e.a[j]), 'V');
        x += e.b[j];
        y += e.a[j];
        if (e.k[j] != x + y) throw std::invalid_argument("matrix encoding labels do not match the run lengths");
    }
    if (y != g.d || x > g.cols()) throw std::invalid_argument("matrix encoding does not fit Gr(d,n)");
    Partition lam;
    int cx = 0, cy = 0;
    std::vector<int> rows(static_cast<size_t>(g.d), 0);
    for (char c : path) {
        if (c == 'H') ++cx;
        else rows[static_cast<size_t>(g.d - cy - 1)] = cx, ++cy;
    }
    for (int r : rows)
        if (r) lam.parts.push_back(r);
    return lam;
}

std::vector<int> perm_from_word(const Word& w, int n) {
    std::vector<int> p(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) p[static_cast<size_t>(k)] = k + 1;
    for (int s : w) {
        if (s < 1 || s >= n) throw std::invalid_argument("letter out of range");
        std::swap(p[static_cast<size_t>(s - 1)], p[static_cast<size_t>(s)]);
    }
    return p;
}

std::vector<int> perm_compose(const std::vector<int>& u, const std::vector<int>& v) {
    std::vector<int> r(v.size());
    for (size_t k = 0; k < v.size(); ++k) r[k] = u[static_cast<size_t>(v[k] - 1)];
    return r;
}

int perm_length(const std::vector<int>& p) {
    int inv = 0;
    for (size_t a = 0; a < p.size(); ++a)
        for (size_t b = a + 1; b < p.size(); ++b)
            if (p[a] > p[b]) ++inv;
    return inv;
}

std::vector<int> perm_longest(Subset K, int n) {
    std::vector<int> p = perm_from_word({}, n);
    for (int a = 1; a < n;) {
        if (!(K & bit(a))) {
            ++a;
            continue;
        }
        int b = a;
        while (b + 1 < n && (K & bit(b + 1))) ++b;
        std::reverse(p.begin() + (a - 1), p.begin() + b + 1);
        a = b + 1;
    }
    return p;
}

std::vector<int> perm_rel(Subset K, Subset Kp, int n) { return perm_compose(perm_longest(K, n), perm_longest(Kp, n)); }

Word to_zero_based(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (int s : w) r.push_back(s - 1);
    return r;
}

std::string policy_name(TilingPolicy p) {
    switch (p) {
        case TilingPolicy::smallest_index: return "smallest_index";
        case TilingPolicy::largest_index: return "largest_index";
        case TilingPolicy::enumerate_all: return "enumerate_all";
    }
    return "?";
}

TilingPolicy parse_policy(const std::string& s) {
    if (s == "smallest_index" || s == "smallest") return TilingPolicy::smallest_index;
    if (s == "largest_index" || s == "largest") return TilingPolicy::largest_index;
    if (s == "enumerate_all" || s == "all") return TilingPolicy::enumerate_all;
    throw std::invalid_argument("unknown tiling policy: " + s);
}

std::vector<int> valid_corners(const Partition& lam, const GrassData& g) {
    std::vector<int> out;
    if (lam.parts.empty()) return out;
    MatrixEncoding e = encode(lam, g);
    int m = e.m();
    for (int i = 0; i < m; ++i) {
        if (e.b[static_cast<size_t>(i)] == 0) continue;  // the origin, when l < d
        // a vertical run on the left edge of the box bounds nothing
        bool edge = i == 0 || (i == 1 && e.b[0] == 0);
        int ai = edge ? kInf : e.a[static_cast<size_t>(i - 1)];
        int bi = e.b[static_cast<size_t>(i)];
        int a_next = e.a[static_cast<size_t>(i)];
        int b_next = i + 1 < m ? e.b[static_cast<size_t>(i + 1)] : kInf;
        if (bi <= ai && a_next <= b_next) out.push_back(i);
    }
    return out;
}

Rect corner_rectangle(const Partition& lam, const GrassData& g, int i) {
    MatrixEncoding e = encode(lam, g);
    if (i < 0 || i >= e.m() || e.b[static_cast<size_t>(i)] == 0) throw std::invalid_argument("not an outer corner");
    int x = 0, y = 0;
    for (int j = 0; j <= i; ++j) x += e.b[static_cast<size_t>(j)];
    for (int j = 0; j < i; ++j) y += e.a[static_cast<size_t>(j)];
    Rect R;
    R.p = e.a[static_cast<size_t>(i)];
    R.q = e.b[static_cast<size_t>(i)];
    R.i0 = g.d - y - R.p + 1;
    R.j0 = x - R.q + 1;
    return R;
}

Partition remove_rect(const Partition& lam, const Rect& R) {
    std::vector<int> rows = lam.parts;
    for (int i = R.i0; i < R.i0 + R.p; ++i) {
        if (i > lam.length() || lam.row(i) != R.j0 + R.q - 1) throw std::invalid_argument("rectangle is not removable");
        rows[static_cast<size_t>(i - 1)] = R.j0 - 1;
    }
    Partition out;
    for (int r : rows)
        if (r) out.parts.push_back(r);
    for (size_t k = 1; k < out.parts.size(); ++k)
        if (out.parts[k] > out.parts[k - 1]) throw std::invalid_argument("removal does not leave a partition");
    return out;
}

Tiling tiling(const Partition& lam, const GrassData& g, TilingPolicy policy) {
    if (policy == TilingPolicy::enumerate_all) throw std::invalid_argument("use all_tilings for enumerate_all");
    require_fits(lam, g);
    Tiling T;
    Partition cur = lam;
    while (!cur.parts.empty()) {
        auto cs = valid_corners(cur, g);
        if (cs.empty()) throw std::logic_error("no admissible corner for (" + cur.str() + ")");
        int i = policy == TilingPolicy::smallest_index ? cs.front() : cs.back();
        Rect R = corner_rectangle(cur, g, i);
        T.shapes.push_back(cur);
        T.rects.push_back(R);
        T.choices.push_back(i);
        cur = remove_rect(cur, R);
    }
    return T;
}

std::vector<Tiling> all_tilings(const Partition& lam, const GrassData& g) {
    require_fits(lam, g);
    std::vector<Tiling> out;
    Tiling cur;
    std::function<void(const Partition&)> rec = [&](const Partition& mu) {
        if (mu.parts.empty()) {
            out.push_back(cur);
            return;
        }
        auto cs = valid_corners(mu, g);
        if (cs.empty()) throw std::logic_error("no admissible corner for (" + mu.str() + ")");
        for (int i : cs) {
            Rect R = corner_rectangle(mu, g, i);
            cur.shapes.push_back(mu);
            cur.rects.push_back(R);
            cur.choices.push_back(i);
            rec(remove_rect(mu, R));
            cur.shapes.pop_back();
            cur.rects.pop_back();
            cur.choices.pop_back();
        }
    };
    rec(lam);
    return out;
}

std::vector<Tiling> tilings(const Partition& lam, const GrassData& g, TilingPolicy policy) {
    if (policy == TilingPolicy::enumerate_all) return all_tilings(lam, g);
    return {tiling(lam, g, policy)};
}

std::vector<LabelSets> label_sets(const Tiling& T, const GrassData& g) {
    std::vector<LabelSets> out(T.rects.size());
    for (size_t k = 0; k < T.rects.size(); ++k) {
        const Rect& R = T.rects[k];
        LabelSets& L = out[k];
        L.c = R.c(g);
        L.d_label = R.d_label(g);
        L.C = interval(L.c, L.c + R.p - 1);
        L.D = interval(L.c + R.p, L.d_label);
        L.Cp = L.C & ~bit(L.c + R.p - 1);
        L.Dp = L.D & ~bit(L.d_label);
        L.J = L.C | L.Dp;
        L.Jp = L.Cp | L.Dp;
    }
    for (size_t k = 0; k < T.rects.size(); ++k) {
        Grid G = owners(T, g, k + 1);
        LabelSets& L = out[k];
        for (size_t j = 0; j <= k; ++j) {
            const Rect& R = T.rects[j];
            bool left = true, top = true;
            for (int i = R.i0; i < R.i0 + R.p; ++i) left = left && !filled(G, i, R.j0 - 1);
            for (int c = R.j0; c < R.j0 + R.q; ++c) top = top && !filled(G, R.i0 - 1, c);
            if (left) L.calC.push_back(static_cast<int>(j + 1)), L.Kp |= out[j].Cp;
            if (top) L.calD.push_back(static_cast<int>(j + 1)), L.Kp |= out[j].Dp;
        }
        L.K = L.Kp | bit(max_label(L.C));
    }
    return out;
}

Subset stabilizer(const Partition& lam, const GrassData& g) {
    Subset P = g.Pi();
    for (int k : encode(lam, g).k)
        if (k < g.n) P &= ~bit(k);
    return P;
}

StabilizerChain stabilizer_chain(const Tiling& T, const GrassData& g) {
    StabilizerChain ch;
    for (const Partition& mu : T.shapes) ch.P.push_back(stabilizer(mu, g));
    ch.P.push_back(g.J());
    for (size_t i = 0; i + 1 < ch.P.size(); ++i) ch.Q.push_back(ch.P[i] & ch.P[i + 1]);
    return ch;
}

Word v_word(const Rect& R, const GrassData& g) {
    int c = R.c(g);
    Word w;
    for (int r = 0; r < R.p; ++r)
        for (int s = c + R.q - 1 + r; s >= c + r; --s) w.push_back(s);
    return w;
}

std::string label_str(Subset S) {
    std::string s = "{";
    bool first = true;
    for (int k : labels(S)) {
        if (!first) s += ",";
        s += std::to_string(k);
        first = false;
    }
    return s + "}";
}

std::string complement_str(Subset S, const GrassData& g) {
    Subset missing = g.Pi() & ~S;
    if (!missing) return "Pi";
    return "Pi\\" + label_str(missing);
}

std::string render_ascii(const Tiling& T, const Partition& lam, const GrassData& g) {
    Grid G = owners(T, g, T.rects.size());
    size_t width = std::to_string(T.rects.size()).size();
    std::string out;
    for (int i = 1; i <= lam.length(); ++i) {
        for (int j = 1; j <= lam.row(i); ++j) {
            std::string cell = std::to_string(G[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]);
            if (j > 1) out += ' ';
            out += std::string(width - cell.size(), ' ') + cell;
        }
        out += '\n';
    }
    return out;
}

std::string chain_str(const StabilizerChain& ch, const GrassData& g) {
    std::string s;
    for (size_t i = 0; i < ch.Q.size(); ++i) {
        s += "Y_{" + complement_str(ch.P[i], g) + "/" + complement_str(ch.Q[i], g) + "} ";
    }
    return s + "Y_{" + complement_str(ch.P.back(), g) + "}";
}

std::string word_str(const Word& w) {
    if (w.empty()) return "e";
    std::string s;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) s += ' ';
        s += "s" + std::to_string(w[k]);
    }
    return s;
}

nlohmann::json tiling_json(const Tiling& T, const Partition& lam, const GrassData& g) {
    using nlohmann::json;
    json j;
    j["n"] = g.n;
    j["d"] = g.d;
    j["lambda"] = lam.parts;
    j["I"] = I_set(lam, g);
    j["w"] = grass_permutation(lam, g);
    j["choices"] = T.choices;
    json rects = json::array(), sets = json::array(), words = json::array();
    auto ls = label_sets(T, g);
    for (size_t k = 0; k < T.rects.size(); ++k) {
        const Rect& R = T.rects[k];
        rects.push_back({{"i0", R.i0}, {"j0", R.j0}, {"p", R.p}, {"q", R.q}});
        const LabelSets& L = ls[k];
        sets.push_back({{"C", labels(L.C)},
                        {"D", labels(L.D)},
                        {"J", labels(L.J)},
                        {"J'", labels(L.Jp)},
                        {"K", labels(L.K)},
                        {"K'", labels(L.Kp)},
                        {"c", L.c},
                        {"d", L.d_label}});
        words.push_back(v_word(R, g));
    }
    j["rectangles"] = rects;
    j["label_sets"] = sets;
    j["v_words"] = words;
    auto ch = stabilizer_chain(T, g);
    json P = json::array(), Q = json::array();
    for (Subset s : ch.P) P.push_back(labels(s));
    for (Subset s : ch.Q) Q.push_back(labels(s));
    j["chain"] = {{"P", P}, {"Q", Q}, {"operator", chain_str(ch, g)}};
    return j;
}

CombinatorialReport verify_combinatorics(const Partition& lam, const GrassData& g, const Tiling& T) {
    CombinatorialReport rep;
    auto fail = [&](const std::string& s) { rep.failures.push_back(s); };
    require_fits(lam, g);

    if (decode(encode(lam, g), g) != lam) fail("matrix encoding does not round-trip");
    if (from_I_set(I_set(lam, g), g) != lam) fail("I-set does not round-trip");
    auto w = grass_permutation(lam, g);
    if (perm_from_word(reduced_word(lam, g), g.n) != w) fail("box word does not give w_lambda");
    if (perm_length(w) != lam.size()) fail("l(w_lambda) differs from |lambda|");
    for (int k = 1; k < g.n; ++k)
        if (k != g.d && w[static_cast<size_t>(k - 1)] > w[static_cast<size_t>(k)]) fail("w_lambda has a descent off d");

    // the rectangles tile lambda
    Grid G(static_cast<size_t>(g.d), std::vector<int>(static_cast<size_t>(g.cols()), 0));
    bool tiled = true;
    for (size_t k = 0; k < T.rects.size(); ++k) {
        const Rect& R = T.rects[k];
        for (int i = R.i0; i < R.i0 + R.p; ++i)
            for (int j = R.j0; j < R.j0 + R.q; ++j) {
                if (i < 1 || j < 1 || i > lam.length() || j > lam.row(i)) tiled = false;
                else if (G[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]++) tiled = false;
            }
    }
    int covered = 0;
    for (const auto& row : G)
        for (int c : row) covered += c;
    if (!tiled || covered != lam.size()) fail("rectangles do not tile lambda");
    if (T.shapes.size() != T.rects.size() || (!T.rects.empty() && T.shapes.front() != lam)) fail("shape list is inconsistent");
    for (size_t k = 0; k + 1 < T.shapes.size(); ++k)
        if (remove_rect(T.shapes[k], T.rects[k]) != T.shapes[k + 1]) fail("shape list is inconsistent");
    if (!T.rects.empty()) {
        const Rect& R = T.rects.back();
        Partition rect;
        rect.parts.assign(static_cast<size_t>(R.p), R.q);
        if (T.shapes.back() != rect || R.i0 != 1 || R.j0 != 1) fail("last shape is not a rectangle");
    }

    // v^1 ... v^r is a reduced word of w_lambda
    Word all;
    for (const Rect& R : T.rects) {
        Word v = v_word(R, g);
        all.insert(all.end(), v.begin(), v.end());
    }
    if (perm_from_word(all, g.n) != w || static_cast<int>(all.size()) != perm_length(w))
        fail("v^1...v^r is not a reduced word of w_lambda");

    auto ls = label_sets(T, g);
    auto ch = stabilizer_chain(T, g);
    for (size_t k = 0; k < ls.size(); ++k) {
        const LabelSets& L = ls[k];
        const Rect& R = T.rects[k];
        std::string tag = "R_" + std::to_string(k + 1) + ": ";
        if (L.J != (L.C | L.Dp) || L.Jp != (L.Cp | L.Dp)) fail(tag + "J sets are inconsistent");
        if (L.K != (L.Kp | bit(max_label(L.C))) || L.K == L.Kp) fail(tag + "K sets are inconsistent");
        if (!subset_of(L.J, L.K) || !subset_of(L.Jp, L.Kp)) fail(tag + "J_i is not inside K_i");
        if (L.d_label != L.c + R.p + R.q - 1) fail(tag + "label arithmetic is inconsistent");
        auto v = perm_from_word(v_word(R, g), g.n);
        auto wj = perm_rel(L.J, L.Jp, g.n), wk = perm_rel(L.K, L.Kp, g.n);
        if (wj != v || wk != v) fail(tag + "w_{J/J'} or w_{K/K'} differs from v^i");
        if (perm_length(wk) != R.p * R.q || perm_length(wj) != R.p * R.q) fail(tag + "l(w_{K/K'}) differs from p q");
        // both pairs differ from (J_i, J'_i) only by labels far from the boundary band
        Subset B = L.boundary();
        auto band_ok = [&](Subset A, Subset Ap) {
            return (A & B) == L.J && (Ap & B) == L.Jp && (A & ~B) == (Ap & ~B) && !(A & bit(L.d_label)) &&
                   (L.c == 1 || !(A & bit(L.c - 1)));
        };
        if (!band_ok(L.K, L.Kp)) fail(tag + "(K,K') does not reduce to (J,J')");
        if (!band_ok(ch.P[k], ch.Q[k])) fail(tag + "(P,Q) does not reduce to (J,J')");
        if (k == 0 && (L.K != L.J || L.Kp != L.Jp)) fail("K_1, K'_1 differ from J_1, J'_1");
        if (k > 0 && (!subset_of(ls[k - 1].Kp, L.K) || ls[k - 1].Kp == L.K)) fail(tag + "K'_{i-1} is not strictly inside K_i");
    }
    if (!ls.empty() && !subset_of(ls.back().Kp, g.J())) fail("K'_r is not inside J");
    return rep;
}

}  // namespace kls::grass
