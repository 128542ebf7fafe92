#pragma once

// Finite root systems and Weyl groups given by a Cartan matrix.
//
// Weights are integer vectors in fundamental-weight coordinates; the simple
// root alpha_i is column i of the Cartan matrix.  Simple reflections are
// indexed 0..n-1 internally and printed 1-based.  Group elements are
// enumerated once and referred to by dense ids (Elem); id 0 is the identity.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace kls {

using Weight = std::vector<int>;
using Elem = uint32_t;
using Subset = uint32_t;  // bit i set <=> simple reflection s_{i+1} in the subset
using Word = std::vector<int>;

struct CartanData {
    int rank = 0;
    std::vector<std::vector<int>> cartan;
    std::string type_label;

    static CartanData type_A(int n);
    static CartanData type_B(int n);
    static CartanData type_C(int n);
    static CartanData type_D(int n);
    static CartanData type_G2();
    // "A3", "B2", ... ; throws on unknown labels.
    static CartanData from_label(const std::string& label);
    static CartanData from_matrix(std::vector<std::vector<int>> a, std::string label);

    bool is_type_A() const { return !type_label.empty() && type_label[0] == 'A'; }
};

struct Root {
    Weight coords;       // fundamental-weight coordinates
    Weight root_coords;  // simple-root coordinates
    bool positive = false;
    Elem w = 0;  // root = w(alpha_i)
    int i = 0;
};

class WeylGroup {
   public:
    static constexpr size_t kDefaultCap = 50000;

    explicit WeylGroup(CartanData cd, size_t cap = kDefaultCap);

    const CartanData& cartan() const { return cd_; }
    int rank() const { return cd_.rank; }
    size_t size() const { return len_.size(); }
    Elem e() const { return 0; }
    Elem w0() const { return w0_; }

    int length(Elem w) const { return len_[w]; }
    int sign(Elem w) const { return (len_[w] & 1) ? -1 : 1; }
    const Word& word(Elem w) const { return words_[w]; }
    Elem rmul(Elem w, int i) const { return right_[w * static_cast<size_t>(rank()) + static_cast<size_t>(i)]; }
    Elem lmul(int i, Elem w) const { return left_[w * static_cast<size_t>(rank()) + static_cast<size_t>(i)]; }
    bool right_descent(Elem w, int i) const { return len_[rmul(w, i)] < len_[w]; }
    bool left_descent(Elem w, int i) const { return len_[lmul(i, w)] < len_[w]; }
    Elem inverse(Elem w) const { return inv_[w]; }
    Elem mul(Elem u, Elem v) const;
    Elem from_word(const Word& word) const;
    Elem simple(int i) const { return rmul(0, i); }

    const std::vector<int>& matrix(Elem w) const { return mats_[w]; }  // row-major n x n
    Weight act(Elem w, const Weight& lambda) const;

    // Roots.
    const std::vector<Root>& roots() const { return roots_; }
    std::vector<int> positive_root_ids() const;
    int root_id(const Weight& coords) const;  // -1 when not a root
    int negate_root(int id) const { return neg_[static_cast<size_t>(id)]; }
    int act_root(Elem w, int id) const;
    Elem reflection(int root) const;
    std::vector<int> inversions(Elem w) const;  // positive roots sent to negative ones
    Weight simple_root(int i) const;

    // Bruhat order (precomputed lower intervals).
    bool leq(Elem u, Elem w) const;
    std::vector<Elem> lower_interval(Elem w) const;

    // Parabolic data.
    static bool in(Subset J, int i) { return (J >> i) & 1U; }
    Subset full() const { return rank() >= 32 ? ~Subset(0) : (Subset(1) << rank()) - 1; }
    std::vector<Elem> parabolic_subgroup(Subset J) const;
    Elem longest(Subset J) const;
    bool is_min_rep(Elem w, Subset J) const;
    std::vector<Elem> min_reps(Subset J) const;
    Elem min_rep(Elem w, Subset J) const;
    // w_J w_{J'}; throws if J' is not contained in J.
    Elem w_rel(Subset J, Subset Jp) const;
    // W_J intersect W^{J'}.
    std::vector<Elem> relative_reps(Subset J, Subset Jp) const;
    // Positive roots in the span of {alpha_j : j in J}.
    std::vector<int> parabolic_positive_roots(Subset J) const;
    // Coefficients of sum_{v in W_J} t^{l(v)}.
    std::vector<int> poincare(Subset J) const;

    // Elements in all-lengths order, sorted by (length, id).
    const std::vector<Elem>& by_length() const { return by_length_; }

    // Type-A one-line notation (1-based values).
    std::vector<int> one_line(Elem w) const;
    Elem from_one_line(const std::vector<int>& perm) const;

    // One-line notation in type A, s-word otherwise.
    std::string str(Elem w) const;
    std::string word_str(Elem w) const;
    // Accepts "e", "s2,s1,s3", "2,1,3", or "[3,4,1,2]" in type A.
    Elem parse(const std::string& s) const;

    bool has_bruhat() const { return !lower_.empty(); }

   private:
    struct VecHash {
        size_t operator()(const std::vector<int>& v) const;
    };

    void enumerate(size_t cap);
    void build_roots();
    void build_bruhat();

    CartanData cd_;
    std::vector<std::vector<int>> mats_;
    std::unordered_map<std::vector<int>, Elem, VecHash> index_;
    std::vector<int> len_;
    std::vector<Word> words_;
    std::vector<Elem> right_, left_, inv_;
    std::vector<Elem> table_;  // full multiplication table when small
    std::vector<Elem> by_length_;
    Elem w0_ = 0;

    std::vector<Root> roots_;
    std::unordered_map<std::vector<int>, int, VecHash> root_index_;
    std::vector<int> neg_;

    std::vector<std::vector<uint64_t>> lower_;  // bitsets
};

std::string subset_str(Subset J);  // "{1,3}"
Subset parse_subset(const std::string& s, int rank);

}  // namespace kls
