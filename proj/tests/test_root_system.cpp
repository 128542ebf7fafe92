#include <set>

#include "doctest.h"
#include "kls/root_system.hpp"

using namespace kls;

namespace {

// Set of elements expressible as subwords of the given word.
std::set<Elem> subword_closure(const WeylGroup& W, const Word& w) {
    std::set<Elem> out;
    size_t k = w.size();
    for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
        Elem x = 0;
        for (size_t i = 0; i < k; ++i)
            if ((mask >> i) & 1U) x = W.rmul(x, w[i]);
        out.insert(x);
    }
    return out;
}

}  // namespace

TEST_CASE("weyl_ops") {
    WeylGroup A2(CartanData::type_A(2));
    Elem x = A2.from_word({0, 1, 0}), y = A2.from_word({1, 0, 1});
    CHECK(x == y);
    CHECK(A2.length(x) == 3);
    CHECK(x == A2.w0());
    WeylGroup A3(CartanData::type_A(3));
    CHECK(A3.size() == 24);
    for (Elem w = 0; w < A3.size(); ++w) {
        CHECK(A3.mul(w, A3.inverse(w)) == A3.e());
        CHECK(static_cast<int>(A3.word(w).size()) == A3.length(w));
        CHECK(A3.from_word(A3.word(w)) == w);
        CHECK(A3.sign(w) == ((A3.length(w) % 2) ? -1 : 1));
    }
    CHECK(WeylGroup(CartanData::type_B(3)).size() == 48);
    CHECK(WeylGroup(CartanData::type_D(4)).size() == 192);
    CHECK(WeylGroup(CartanData::type_G2()).size() == 12);
    CHECK_THROWS(WeylGroup(CartanData::type_A(5), 100));
}

TEST_CASE("type A one-line notation") {
    WeylGroup A3(CartanData::type_A(3));
    Elem w = A3.parse("s2,s1,s3,s2");
    CHECK(A3.str(w) == "[3,4,1,2]");
    CHECK(A3.parse("[3,4,1,2]") == w);
    for (Elem u = 0; u < A3.size(); ++u) {
        CHECK(A3.from_one_line(A3.one_line(u)) == u);
        auto p = A3.one_line(u);
        for (int i = 0; i < 3; ++i) CHECK(A3.right_descent(u, i) == (p[static_cast<size_t>(i)] > p[static_cast<size_t>(i) + 1]));
    }
}

TEST_CASE("bruhat_leq") {
    WeylGroup A2(CartanData::type_A(2));
    for (Elem w = 0; w < A2.size(); ++w) CHECK(A2.leq(A2.e(), w));
    CHECK(A2.leq(A2.simple(0), A2.from_word({0, 1})));
    CHECK(!A2.leq(A2.simple(1), A2.simple(0)));

    WeylGroup A3(CartanData::type_A(3));
    for (Elem w = 0; w < A3.size(); ++w) {
        auto low = subword_closure(A3, A3.word(w));
        for (Elem u = 0; u < A3.size(); ++u) {
            CHECK(A3.leq(u, w) == (low.count(u) > 0));
            if (A3.leq(u, w) && A3.leq(w, u)) CHECK(u == w);
            if (A3.leq(u, w)) CHECK(A3.length(u) <= A3.length(w));
        }
    }
}

TEST_CASE("positive_roots and reflections") {
    WeylGroup A1(CartanData::type_A(1));
    CHECK(A1.positive_root_ids().size() == 1);
    WeylGroup A2(CartanData::type_A(2));
    auto pos = A2.positive_root_ids();
    REQUIRE(pos.size() == 3);
    CHECK(A2.roots()[static_cast<size_t>(pos[0])].root_coords == Weight{1, 0});
    CHECK(A2.roots()[static_cast<size_t>(pos[1])].root_coords == Weight{0, 1});
    CHECK(A2.roots()[static_cast<size_t>(pos[2])].root_coords == Weight{1, 1});
    CHECK(A2.reflection(pos[0]) == A2.simple(0));
    CHECK(A2.reflection(pos[2]) == A2.from_word({0, 1, 0}));
    WeylGroup A3(CartanData::type_A(3));
    CHECK(A3.positive_root_ids().size() == 6);
    CHECK(static_cast<int>(A3.positive_root_ids().size()) == A3.length(A3.w0()));
    for (size_t r = 0; r < A3.roots().size(); ++r) {
        Elem s = A3.reflection(static_cast<int>(r));
        CHECK(A3.mul(s, s) == A3.e());
        CHECK(A3.act_root(s, static_cast<int>(r)) == A3.negate_root(static_cast<int>(r)));
    }
    // s_alpha fixes weights orthogonal to alpha: in A2, omega_1 - omega_2 pairs to zero with alpha_1 + alpha_2.
    CHECK(A2.act(A2.reflection(pos[2]), Weight{1, -1}) == Weight{1, -1});
    CHECK_THROWS(A2.reflection(99));
}

TEST_CASE("inversions") {
    WeylGroup A2(CartanData::type_A(2));
    CHECK(A2.inversions(A2.e()).empty());
    CHECK(A2.inversions(A2.w0()).size() == 3);
    auto inv = A2.inversions(A2.from_word({0, 1}));
    std::set<Weight> got;
    for (int id : inv) got.insert(A2.roots()[static_cast<size_t>(id)].root_coords);
    CHECK(got == std::set<Weight>{{0, 1}, {1, 1}});
    WeylGroup A3(CartanData::type_A(3));
    for (Elem w = 0; w < A3.size(); ++w) {
        CHECK(static_cast<int>(A3.inversions(w).size()) == A3.length(w));
        CHECK(A3.length(A3.mul(A3.w0(), w)) == A3.length(A3.w0()) - A3.length(w));
    }
}

TEST_CASE("parabolic_data") {
    WeylGroup A2(CartanData::type_A(2));
    CHECK(A2.min_reps(0).size() == 6);
    CHECK(A2.longest(0) == A2.e());
    CHECK(A2.poincare(0) == std::vector<int>{1});
    CHECK(A2.min_reps(1).size() == 3);
    CHECK(A2.poincare(1) == std::vector<int>{1, 1});

    WeylGroup A3(CartanData::type_A(3));
    const Subset J = 0b101;
    CHECK(A3.longest(J) == A3.from_word({0, 2}));
    // Oracle: length-minimal element of each coset w W_J.
    auto WJ = A3.parabolic_subgroup(J);
    std::set<Elem> reps;
    for (Elem w = 0; w < A3.size(); ++w) {
        Elem best = w;
        for (Elem v : WJ) {
            Elem x = A3.mul(w, v);
            if (A3.length(x) < A3.length(best)) best = x;
        }
        reps.insert(best);
    }
    auto mr = A3.min_reps(J);
    CHECK(std::set<Elem>(mr.begin(), mr.end()) == reps);

    // w_{J/J'} is the maximum of W_J intersect W^{J'}, for every J' in J.
    for (Subset Jb = 0; Jb < 8; ++Jb) {
        for (Subset Jp = 0; Jp < 8; ++Jp) {
            if (Jp & ~Jb) {
                CHECK_THROWS(A3.w_rel(Jb, Jp));
                continue;
            }
            Elem x = A3.w_rel(Jb, Jp);
            auto rr = A3.relative_reps(Jb, Jp);
            CHECK(std::find(rr.begin(), rr.end(), x) != rr.end());
            for (Elem y : rr) CHECK(A3.length(y) <= A3.length(x));
        }
    }
    // Unique factorisation w = u v.
    for (Subset Jb = 0; Jb < 8; ++Jb) {
        for (Elem w = 0; w < A3.size(); ++w) {
            Elem u = A3.min_rep(w, Jb);
            Elem v = A3.mul(A3.inverse(u), w);
            auto sub = A3.parabolic_subgroup(Jb);
            CHECK(std::find(sub.begin(), sub.end(), v) != sub.end());
            CHECK(A3.length(w) == A3.length(u) + A3.length(v));
        }
    }
}
