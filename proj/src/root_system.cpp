#include "kls/root_system.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace kls {

CartanData CartanData::from_matrix(std::vector<std::vector<int>> a, std::string label) {
    CartanData cd;
    cd.rank = static_cast<int>(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != a.size()) throw std::invalid_argument("Cartan matrix must be square");
        for (size_t j = 0; j < a.size(); ++j) {
            if (i == j && a[i][j] != 2) throw std::invalid_argument("Cartan matrix diagonal must be 2");
            if (i != j && a[i][j] > 0) throw std::invalid_argument("Cartan matrix off-diagonal entries must be <= 0");
            if (i != j && (a[i][j] == 0) != (a[j][i] == 0))
                throw std::invalid_argument("Cartan matrix zero pattern must be symmetric");
        }
    }
    cd.cartan = std::move(a);
    cd.type_label = std::move(label);
    return cd;
}

namespace {

std::vector<std::vector<int>> chain(int n) {
    std::vector<std::vector<int>> a(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
        a[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
        if (i + 1 < n) {
            a[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = -1;
            a[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = -1;
        }
    }
    return a;
}

}  // namespace

CartanData CartanData::type_A(int n) {
    if (n < 1) throw std::invalid_argument("rank must be positive");
    return from_matrix(chain(n), "A" + std::to_string(n));
}

CartanData CartanData::type_B(int n) {
    if (n < 2) throw std::invalid_argument("type B needs rank >= 2");
    auto a = chain(n);
    a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 2)] = -2;
    return from_matrix(a, "B" + std::to_string(n));
}

CartanData CartanData::type_C(int n) {
    if (n < 2) throw std::invalid_argument("type C needs rank >= 2");
    auto a = chain(n);
    a[static_cast<size_t>(n - 2)][static_cast<size_t>(n - 1)] = -2;
    return from_matrix(a, "C" + std::to_string(n));
}

CartanData CartanData::type_D(int n) {
    if (n < 4) throw std::invalid_argument("type D needs rank >= 4");
    auto a = chain(n);
    auto m = static_cast<size_t>(n - 1);
    a[m][m - 1] = a[m - 1][m] = 0;
    a[m][m - 2] = a[m - 2][m] = -1;
    return from_matrix(a, "D" + std::to_string(n));
}

CartanData CartanData::type_G2() { return from_matrix({{2, -1}, {-3, 2}}, "G2"); }

CartanData CartanData::from_label(const std::string& label) {
    if (label.size() < 2) throw std::invalid_argument("bad Cartan type label: " + label);
    char t = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    int n = 0;
    try {
        n = std::stoi(label.substr(1));
    } catch (...) {
        throw std::invalid_argument("bad Cartan type label: " + label);
    }
    switch (t) {
        case 'A': return type_A(n);
        case 'B': return type_B(n);
        case 'C': return type_C(n);
        case 'D': return type_D(n);
        case 'G':
            if (n == 2) return type_G2();
            break;
        default: break;
    }
    throw std::invalid_argument("unsupported Cartan type: " + label);
}

size_t WeylGroup::VecHash::operator()(const std::vector<int>& v) const {
    size_t h = v.size();
    for (int x : v) h = h * 1000003u ^ static_cast<size_t>(static_cast<unsigned>(x));
    return h;
}

WeylGroup::WeylGroup(CartanData cd, size_t cap) : cd_(std::move(cd)) {
    enumerate(cap);
    build_roots();
    if (size() <= 10000) build_bruhat();
}

void WeylGroup::enumerate(size_t cap) {
    const int n = rank();
    const auto nn = static_cast<size_t>(n);
    auto rmat = [&](const std::vector<int>& m, int i) {
        // (M S_i): column k of S_i is e_k for k != i, and e_i - alpha_i for k == i.
        std::vector<int> r = m;
        for (size_t row = 0; row < nn; ++row) {
            int acc = 0;
            for (size_t k = 0; k < nn; ++k)
                acc += m[row * nn + k] * ((k == static_cast<size_t>(i) ? 1 : 0) - cd_.cartan[k][static_cast<size_t>(i)]);
            r[row * nn + static_cast<size_t>(i)] = acc;
        }
        return r;
    };
    std::vector<int> id(nn * nn, 0);
    for (size_t k = 0; k < nn; ++k) id[k * nn + k] = 1;
    mats_.push_back(id);
    index_.emplace(id, 0);
    len_.push_back(0);
    words_.push_back({});
    std::deque<Elem> queue{0};
    std::vector<std::vector<Elem>> rt;
    rt.emplace_back(nn, UINT32_MAX);
    while (!queue.empty()) {
        Elem w = queue.front();
        queue.pop_front();
        for (int i = 0; i < n; ++i) {
            if (rt[w][static_cast<size_t>(i)] != UINT32_MAX) continue;
            auto m = rmat(mats_[w], i);
            auto it = index_.find(m);
            Elem v;
            if (it == index_.end()) {
                if (mats_.size() >= cap)
                    throw std::runtime_error("Weyl group exceeds the enumeration cap of " + std::to_string(cap));
                v = static_cast<Elem>(mats_.size());
                mats_.push_back(m);
                index_.emplace(std::move(m), v);
                len_.push_back(len_[w] + 1);
                rt.emplace_back(nn, UINT32_MAX);
                queue.push_back(v);
            } else {
                v = it->second;
            }
            rt[w][static_cast<size_t>(i)] = v;
            rt[v][static_cast<size_t>(i)] = w;
        }
    }
    const size_t N = mats_.size();
    right_.resize(N * nn);
    for (size_t w = 0; w < N; ++w)
        for (size_t i = 0; i < nn; ++i) right_[w * nn + i] = rt[w][i];

    // Left multiplication: S_i M.
    left_.resize(N * nn);
    for (size_t w = 0; w < N; ++w) {
        for (size_t i = 0; i < nn; ++i) {
            std::vector<int> m = mats_[w];
            // row k of S_i: e_k^T except k == i... S_i = I - alpha_i e_i^T, so S_i M = M - alpha_i (row i of M).
            for (size_t k = 0; k < nn; ++k)
                for (size_t c = 0; c < nn; ++c) m[k * nn + c] -= cd_.cartan[k][i] * mats_[w][i * nn + c];
            left_[w * nn + i] = index_.at(m);
        }
    }

    // Lexicographically smallest reduced words by stripping left descents.
    by_length_.resize(N);
    for (size_t k = 0; k < N; ++k) by_length_[k] = static_cast<Elem>(k);
    std::stable_sort(by_length_.begin(), by_length_.end(), [&](Elem a, Elem b) { return len_[a] < len_[b]; });
    words_.assign(N, {});
    for (Elem w : by_length_) {
        if (w == 0) continue;
        for (int i = 0; i < n; ++i) {
            Elem v = lmul(i, w);
            if (len_[v] < len_[w]) {
                Word wd{i};
                wd.insert(wd.end(), words_[v].begin(), words_[v].end());
                words_[w] = std::move(wd);
                break;
            }
        }
    }
    inv_.resize(N);
    for (size_t w = 0; w < N; ++w) {
        Elem x = 0;
        for (auto it = words_[w].rbegin(); it != words_[w].rend(); ++it) x = rmul(x, *it);
        inv_[w] = x;
    }
    w0_ = by_length_.back();
    if (N <= 1000) {
        table_.resize(N * N);
        for (size_t u = 0; u < N; ++u) {
            for (size_t v = 0; v < N; ++v) {
                Elem x = static_cast<Elem>(u);
                for (int i : words_[v]) x = rmul(x, i);
                table_[u * N + v] = x;
            }
        }
    }
}

Elem WeylGroup::mul(Elem u, Elem v) const {
    if (!table_.empty()) return table_[static_cast<size_t>(u) * size() + v];
    Elem x = u;
    for (int i : words_[v]) x = rmul(x, i);
    return x;
}

Elem WeylGroup::from_word(const Word& word) const {
    Elem x = 0;
    for (int i : word) {
        if (i < 0 || i >= rank()) throw std::out_of_range("simple reflection index out of range");
        x = rmul(x, i);
    }
    return x;
}

Weight WeylGroup::act(Elem w, const Weight& lambda) const {
    const auto nn = static_cast<size_t>(rank());
    if (lambda.size() != nn) throw std::invalid_argument("weight has wrong length");
    const auto& m = mats_[w];
    Weight r(nn, 0);
    for (size_t i = 0; i < nn; ++i)
        for (size_t j = 0; j < nn; ++j) r[i] += m[i * nn + j] * lambda[j];
    return r;
}

Weight WeylGroup::simple_root(int i) const {
    Weight a(static_cast<size_t>(rank()));
    for (int k = 0; k < rank(); ++k) a[static_cast<size_t>(k)] = cd_.cartan[static_cast<size_t>(k)][static_cast<size_t>(i)];
    return a;
}

void WeylGroup::build_roots() {
    const int n = rank();
    std::deque<int> queue;
    for (int i = 0; i < n; ++i) {
        Root r;
        r.coords = simple_root(i);
        r.root_coords.assign(static_cast<size_t>(n), 0);
        r.root_coords[static_cast<size_t>(i)] = 1;
        r.positive = true;
        r.w = 0;
        r.i = i;
        if (root_index_.count(r.coords)) continue;
        root_index_.emplace(r.coords, static_cast<int>(roots_.size()));
        queue.push_back(static_cast<int>(roots_.size()));
        roots_.push_back(std::move(r));
    }
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        for (int j = 0; j < n; ++j) {
            Root r = roots_[static_cast<size_t>(id)];
            int c = r.coords[static_cast<size_t>(j)];
            if (c == 0) continue;
            for (int k = 0; k < n; ++k) r.coords[static_cast<size_t>(k)] -= c * cd_.cartan[static_cast<size_t>(k)][static_cast<size_t>(j)];
            r.root_coords[static_cast<size_t>(j)] -= c;
            if (root_index_.count(r.coords)) continue;
            r.positive = std::all_of(r.root_coords.begin(), r.root_coords.end(), [](int x) { return x >= 0; });
            r.w = lmul(j, r.w);
            root_index_.emplace(r.coords, static_cast<int>(roots_.size()));
            queue.push_back(static_cast<int>(roots_.size()));
            roots_.push_back(std::move(r));
        }
    }
    neg_.resize(roots_.size());
    for (size_t k = 0; k < roots_.size(); ++k) {
        Weight m = roots_[k].coords;
        for (auto& x : m) x = -x;
        neg_[k] = root_index_.at(m);
    }
}

std::vector<int> WeylGroup::positive_root_ids() const {
    std::vector<int> out;
    for (size_t k = 0; k < roots_.size(); ++k)
        if (roots_[k].positive) out.push_back(static_cast<int>(k));
    // order by height, then coordinates, for stable output
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        const auto& ra = roots_[static_cast<size_t>(a)].root_coords;
        const auto& rb = roots_[static_cast<size_t>(b)].root_coords;
        int ha = 0, hb = 0;
        for (int x : ra) ha += x;
        for (int x : rb) hb += x;
        if (ha != hb) return ha < hb;
        return ra > rb;
    });
    return out;
}

int WeylGroup::root_id(const Weight& coords) const {
    auto it = root_index_.find(coords);
    return it == root_index_.end() ? -1 : it->second;
}

int WeylGroup::act_root(Elem w, int id) const { return root_index_.at(act(w, roots_[static_cast<size_t>(id)].coords)); }

Elem WeylGroup::reflection(int root) const {
    if (root < 0 || static_cast<size_t>(root) >= roots_.size()) throw std::invalid_argument("not a root");
    const Root& r = roots_[static_cast<size_t>(root)];
    return mul(mul(r.w, simple(r.i)), inverse(r.w));
}

std::vector<int> WeylGroup::inversions(Elem w) const {
    std::vector<int> out;
    for (int id : positive_root_ids())
        if (!roots_[static_cast<size_t>(act_root(w, id))].positive) out.push_back(id);
    return out;
}

void WeylGroup::build_bruhat() {
    const size_t N = size();
    const size_t words = (N + 63) / 64;
    lower_.assign(N, std::vector<uint64_t>(words, 0));
    lower_[0][0] = 1;
    for (Elem w : by_length_) {
        if (w == 0) continue;
        int s = 0;
        while (!right_descent(w, s)) ++s;
        Elem x = rmul(w, s);
        auto& bits = lower_[w];
        const auto& lx = lower_[x];
        for (size_t u = 0; u < N; ++u) {
            Elem us = rmul(static_cast<Elem>(u), s);
            Elem m = len_[us] < len_[u] ? us : static_cast<Elem>(u);
            if ((lx[m >> 6] >> (m & 63)) & 1U) bits[u >> 6] |= uint64_t(1) << (u & 63);
        }
    }
}

bool WeylGroup::leq(Elem u, Elem w) const {
    if (lower_.empty()) throw std::runtime_error("Bruhat order not precomputed for a group this large");
    return (lower_[w][u >> 6] >> (u & 63)) & 1U;
}

std::vector<Elem> WeylGroup::lower_interval(Elem w) const {
    std::vector<Elem> out;
    for (Elem u : by_length_)
        if (leq(u, w)) out.push_back(u);
    return out;
}

std::vector<Elem> WeylGroup::parabolic_subgroup(Subset J) const {
    std::vector<Elem> out;
    for (Elem w : by_length_) {
        bool ok = true;
        for (int i : words_[w]) ok = ok && in(J, i);
        if (ok) out.push_back(w);
    }
    return out;
}

Elem WeylGroup::longest(Subset J) const { return parabolic_subgroup(J).back(); }

bool WeylGroup::is_min_rep(Elem w, Subset J) const {
    for (int i = 0; i < rank(); ++i)
        if (in(J, i) && right_descent(w, i)) return false;
    return true;
}

std::vector<Elem> WeylGroup::min_reps(Subset J) const {
    std::vector<Elem> out;
    for (Elem w : by_length_)
        if (is_min_rep(w, J)) out.push_back(w);
    return out;
}

Elem WeylGroup::min_rep(Elem w, Subset J) const {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < rank(); ++i) {
            if (in(J, i) && right_descent(w, i)) {
                w = rmul(w, i);
                changed = true;
            }
        }
    }
    return w;
}

Elem WeylGroup::w_rel(Subset J, Subset Jp) const {
    if ((Jp & ~J) != 0) throw std::invalid_argument("J' is not contained in J");
    return mul(longest(J), longest(Jp));
}

std::vector<Elem> WeylGroup::relative_reps(Subset J, Subset Jp) const {
    if ((Jp & ~J) != 0) throw std::invalid_argument("J' is not contained in J");
    std::vector<Elem> out;
    for (Elem w : parabolic_subgroup(J))
        if (is_min_rep(w, Jp)) out.push_back(w);
    return out;
}

std::vector<int> WeylGroup::parabolic_positive_roots(Subset J) const {
    std::vector<int> out;
    for (int id : positive_root_ids()) {
        const auto& rc = roots_[static_cast<size_t>(id)].root_coords;
        bool ok = true;
        for (int k = 0; k < rank(); ++k)
            if (rc[static_cast<size_t>(k)] != 0 && !in(J, k)) ok = false;
        if (ok) out.push_back(id);
    }
    return out;
}

std::vector<int> WeylGroup::poincare(Subset J) const {
    std::vector<int> c;
    for (Elem w : parabolic_subgroup(J)) {
        auto l = static_cast<size_t>(len_[w]);
        if (c.size() <= l) c.resize(l + 1, 0);
        ++c[l];
    }
    return c;
}

std::vector<int> WeylGroup::one_line(Elem w) const {
    if (!cd_.is_type_A()) throw std::logic_error("one-line notation needs type A");
    std::vector<int> p(static_cast<size_t>(rank() + 1));
    for (size_t k = 0; k < p.size(); ++k) p[k] = static_cast<int>(k) + 1;
    for (int i : words_[w]) std::swap(p[static_cast<size_t>(i)], p[static_cast<size_t>(i) + 1]);
    return p;
}

Elem WeylGroup::from_one_line(const std::vector<int>& perm) const {
    if (!cd_.is_type_A() || perm.size() != static_cast<size_t>(rank() + 1))
        throw std::invalid_argument("permutation does not match the group");
    std::vector<int> p = perm;
    std::vector<int> seen(p.size(), 0);
    for (int x : p) {
        if (x < 1 || x > static_cast<int>(p.size()) || seen[static_cast<size_t>(x - 1)]++)
            throw std::invalid_argument("not a permutation");
    }
    // Bubble sort from the right records a word for w^{-1}... collect swaps on positions.
    Word rev;
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            if (p[i] > p[i + 1]) {
                std::swap(p[i], p[i + 1]);
                rev.push_back(static_cast<int>(i));
                swapped = true;
            }
        }
    }
    // w s_{i1} ... s_{ik} = e, so w = s_{ik} ... s_{i1}.
    std::reverse(rev.begin(), rev.end());
    return from_word(rev);
}

std::string WeylGroup::word_str(Elem w) const {
    if (words_[w].empty()) return "e";
    std::string s;
    for (size_t k = 0; k < words_[w].size(); ++k) {
        if (k) s += ",";
        s += "s" + std::to_string(words_[w][k] + 1);
    }
    return s;
}

std::string WeylGroup::str(Elem w) const {
    if (!cd_.is_type_A()) return word_str(w);
    auto p = one_line(w);
    std::string s = "[";
    for (size_t k = 0; k < p.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(p[k]);
    }
    return s + "]";
}

Elem WeylGroup::parse(const std::string& s0) const {
    std::string s;
    for (char c : s0)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty() || s == "e" || s == "id") return 0;
    if (s.front() == '[') {
        if (s.back() != ']') throw std::invalid_argument("bad permutation: " + s0);
        std::vector<int> perm;
        std::stringstream ss(s.substr(1, s.size() - 2));
        std::string tok;
        while (std::getline(ss, tok, ',')) perm.push_back(std::stoi(tok));
        return from_one_line(perm);
    }
    Word w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty() && (tok[0] == 's' || tok[0] == 'S')) tok = tok.substr(1);
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
            throw std::invalid_argument("bad word: " + s0);
        w.push_back(std::stoi(tok) - 1);
    }
    return from_word(w);
}

std::string subset_str(Subset J) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < 32; ++i) {
        if ((J >> i) & 1U) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
    }
    return s + "}";
}

Subset parse_subset(const std::string& s0, int rank) {
    std::string s;
    for (char c : s0)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}') s += c;
    Subset J = 0;
    if (s.empty()) return J;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int i = std::stoi(tok);
        if (i < 1 || i > rank) throw std::invalid_argument("subset index out of range: " + tok);
        J |= Subset(1) << (i - 1);
    }
    return J;
}

}  // namespace kls
