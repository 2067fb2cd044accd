#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "modrep/linalg.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace modrep;
using namespace modrep::la;

namespace {

// independent oracle: enumerate the span of a generator list by closure
std::set<Vec> bruteSpan(const PGroup& A, const std::vector<Vec>& gens) {
    std::set<Vec> s;
    s.insert(A.zero());
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Vec> cur(s.begin(), s.end());
        for (const auto& x : cur)
            for (const auto& g : gens) {
                Vec y = A.add(x, A.reduce(g));
                if (s.insert(y).second) changed = true;
            }
    }
    return s;
}

std::set<Vec> asSet(const std::vector<Vec>& v) { return std::set<Vec>(v.begin(), v.end()); }

}  // namespace

TEST_CASE("howell: identity matrix is fixed") {
    PGroup A(2, {2, 2});
    auto s = SpanBasis::span(A, {{1, 0}, {0, 1}});
    CHECK(s.size() == 16);
    CHECK(s.naturalRows() == std::vector<Vec>{{1, 0}, {0, 1}});
}

TEST_CASE("howell: [[2]] over Z/4 already canonical") {
    PGroup A(2, {2});
    auto s = SpanBasis::span(A, {{2}});
    CHECK(s.naturalRows() == std::vector<Vec>{{2}});
    CHECK(s.size() == 2);
}

TEST_CASE("howell: span of [[1,1],[2,0]] over (Z/4)^2 has order 8, span preserved") {
    PGroup A(2, {2, 2});
    std::vector<Vec> gens = {{1, 1}, {2, 0}};
    auto s = SpanBasis::span(A, gens);
    CHECK(s.size() == 8);
    CHECK(asSet(s.elementsNatural()) == bruteSpan(A, gens));
}

TEST_CASE("howell: idempotent and canonical under span-preserving shuffles") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        PGroup A(trial % 2 ? 2 : 3, {1 + (int)(rng() % 3), 1 + (int)(rng() % 3), 1 + (int)(rng() % 2)});
        std::vector<Vec> gens;
        int ng = 1 + rng() % 4;
        for (int i = 0; i < ng; ++i) {
            Vec g(A.rank());
            for (int j = 0; j < A.rank(); ++j) g[j] = rng() % A.coordMod(j);
            gens.push_back(g);
        }
        auto s = SpanBasis::span(A, gens);
        // span again from the canonical rows: identical
        auto s2 = SpanBasis::span(A, s.naturalRows());
        CHECK(s == s2);
        // add redundant combinations: same canonical form
        auto gens3 = gens;
        if (!gens.empty()) {
            gens3.push_back(A.add(gens[0], gens[rng() % gens.size()]));
            gens3.push_back(A.smul(3, gens[rng() % gens.size()]));
        }
        std::shuffle(gens3.begin(), gens3.end(), rng);
        CHECK(SpanBasis::span(A, gens3) == s);
        if (s.size() <= 4096) CHECK(asSet(s.elementsNatural()) == bruteSpan(A, gens));
    }
}

TEST_CASE("kernel/image: multiplication by 2 on Z/4") {
    PGroup A(2, {2});
    GrpMap f(A, A, Mat::fromRows({{2}}, 1));
    auto k = kernel(f);
    CHECK(k.size() == 2);
    CHECK(k.contains({2}));
    auto im = image(f);
    CHECK(im.size() == 2);
    CHECK(im.contains({2}));
    CHECK_FALSE(im.contains({1}));
}

TEST_CASE("kernel: zero map and reduction map") {
    PGroup Z4(2, {2}), Z2(2, {1});
    CHECK(kernel(GrpMap::zero(Z4, Z4)).size() == 4);
    GrpMap red(Z4, Z2, Mat::fromRows({{1}}, 1));
    auto k = kernel(red);
    CHECK(k.size() == 2);
    CHECK(k.contains({2}));
}

TEST_CASE("cokernel of mult-by-2 on Z/4 is Z/2") {
    PGroup A(2, {2});
    GrpMap f(A, A, Mat::fromRows({{2}}, 1));
    auto ck = cokernelOfMap(f);
    CHECK(ck.group.exps == std::vector<int>{1});
    // projection kills exactly the image {0,2}
    CHECK(ck.group.isZero(ck.proj.apply({2})));
    CHECK_FALSE(ck.group.isZero(ck.proj.apply({1})));
    // section gives coset representatives
    Vec q = ck.proj.apply({3});
    Vec r = ck.section(q);
    CHECK(ck.proj.apply(r) == q);
}

TEST_CASE("preimage of {0} under reduction Z/4->Z/2 is {0,2}") {
    PGroup Z4(2, {2}), Z2(2, {1});
    GrpMap red(Z4, Z2, Mat::fromRows({{1}}, 1));
    auto pre = preimage(red, SpanBasis::zero(Z2));
    CHECK(pre.size() == 2);
    CHECK(pre.contains({2}));
}

TEST_CASE("solve: deterministic choice and no-solution") {
    PGroup A(2, {2});
    GrpMap f(A, A, Mat::fromRows({{2}}, 1));
    auto x = solve(f, {2});
    REQUIRE(x.has_value());
    CHECK(*x == Vec{1});  // first in howell-ordered transversal, not 3
    CHECK_FALSE(solve(f, {1}).has_value());
    CHECK(*solve(GrpMap::identity(A), {3}) == Vec{3});
}

TEST_CASE("hom_group orders: closed-form product formula") {
    PGroup Z4(2, {2}), Z2(2, {1});
    CHECK(homGroup(Z4, Z2).group.order() == 2);
    CHECK(homGroup(Z2, Z4).group.order() == 2);
    PGroup M(2, {2, 1});
    CHECK(homGroup(M, Z4).group.order() == 8);
    // generator of Hom(Z/2, Z/4) is 1 -> 2
    auto h = homGroup(Z2, Z4);
    GrpMap g = h.mapOf({1});
    CHECK(g.apply({1}) == Vec{2});

    std::mt19937 rng(99);
    for (int t = 0; t < 50; ++t) {
        i64 p = (t % 3 == 0) ? 3 : 2;
        int ra = 1 + rng() % 3, rb = 1 + rng() % 3;
        std::vector<int> ea(ra), eb(rb);
        for (auto& e : ea) e = 1 + rng() % 3;
        for (auto& e : eb) e = 1 + rng() % 3;
        PGroup A(p, ea), B(p, eb);
        i64 expect = 1;
        for (int i = 0; i < rb; ++i)
            for (int j = 0; j < ra; ++j) expect *= ipow(p, std::min(ea[j], eb[i]));
        CHECK(homGroup(A, B).group.order() == expect);
    }
}

TEST_CASE("property: |kernel|*|image| = |domain| on random maps") {
    std::mt19937 rng(4242);
    for (int t = 0; t < 80; ++t) {
        i64 p = (t % 2) ? 2 : 3;
        int ra = 1 + rng() % 3, rb = 1 + rng() % 3;
        std::vector<int> ea(ra), eb(rb);
        for (auto& e : ea) e = 1 + rng() % 3;
        for (auto& e : eb) e = 1 + rng() % 2;
        PGroup A(p, ea), B(p, eb);
        auto h = homGroup(A, B);
        Vec coords(h.group.rank());
        for (int j = 0; j < h.group.rank(); ++j) coords[j] = rng() % h.group.coordMod(j);
        GrpMap f = h.mapOf(coords);
        CHECK(f.wellDefined());
        CHECK(kernel(f).size() * image(f).size() == A.order());
        CHECK(preimage(f, image(f)).size() == A.order());
        // additivity by exhaustion on small groups
        if (A.order() <= 64) {
            auto elems = A.elements();
            for (size_t i = 0; i < elems.size(); i += 3)
                for (size_t j = 0; j < elems.size(); j += 5)
                    CHECK(f.apply(A.add(elems[i], elems[j])) == B.add(f.apply(elems[i]), f.apply(elems[j])));
        }
        // solve returns a valid solution for b in the image
        auto imEls = image(f).elementsNatural();
        for (size_t i = 0; i < imEls.size(); i += std::max<size_t>(1, imEls.size() / 7)) {
            auto x = solve(f, imEls[i]);
            REQUIRE(x.has_value());
            CHECK(f.apply(*x) == B.reduce(imEls[i]));
        }
    }
}

TEST_CASE("kernel is exactly {x : f(x)=0} by exhaustion") {
    std::mt19937 rng(777);
    for (int t = 0; t < 30; ++t) {
        i64 p = 2;
        PGroup A(p, {2, 1 + (int)(rng() % 2)}), B(p, {1 + (int)(rng() % 2)});
        auto h = homGroup(A, B);
        Vec coords(h.group.rank());
        for (int j = 0; j < h.group.rank(); ++j) coords[j] = rng() % h.group.coordMod(j);
        GrpMap f = h.mapOf(coords);
        auto k = kernel(f);
        i64 cnt = 0;
        for (const auto& x : A.elements()) {
            bool z = B.isZero(f.apply(x));
            CHECK(k.contains(x) == z);
            if (z) ++cnt;
        }
        CHECK(cnt == k.size());
    }
}

TEST_CASE("subgroupView decomposes a subgroup into cyclic factors") {
    PGroup A(2, {2, 2, 1});
    auto s = SpanBasis::span(A, {{1, 1, 0}, {2, 0, 1}});
    auto sv = subgroupView(s);
    i64 o = 1;
    for (int e : sv.group.exps) o *= ipow(2, e);
    CHECK(o == s.size());
    // inclusion hits exactly the subgroup; coords invert it
    std::set<Vec> hit;
    for (const auto& c : sv.group.elements()) {
        Vec x = sv.incl.apply(c);
        CHECK(s.contains(x));
        hit.insert(x);
        CHECK(sv.coords(x) == c);
    }
    CHECK((i64)hit.size() == s.size());
}

TEST_CASE("intersect and join agree with brute force") {
    std::mt19937 rng(31337);
    for (int t = 0; t < 40; ++t) {
        PGroup A(2, {2, 2});
        auto rv = [&]() {
            Vec g(A.rank());
            for (int j = 0; j < A.rank(); ++j) g[j] = rng() % A.coordMod(j);
            return g;
        };
        auto s1 = SpanBasis::span(A, {rv(), rv()});
        auto s2 = SpanBasis::span(A, {rv()});
        auto bi = s1.intersect(s2);
        std::set<Vec> e1 = asSet(s1.elementsNatural()), e2 = asSet(s2.elementsNatural());
        std::set<Vec> want;
        std::set_intersection(e1.begin(), e1.end(), e2.begin(), e2.end(), std::inserter(want, want.begin()));
        CHECK(asSet(bi.elementsNatural()) == want);
        CHECK(bi.subsetOf(s1));
        CHECK(bi.subsetOf(s2));
        auto j = s1.join(s2);
        CHECK(s1.subsetOf(j));
        CHECK(s2.subsetOf(j));
    }
}

TEST_CASE("mixed-exponent ambient: subgroups of Z/4 + Z/2") {
    PGroup A(2, {2, 1});
    // the graph of the reduction map: {(x, x mod 2)}
    auto s = SpanBasis::span(A, {{1, 1}});
    CHECK(s.size() == 4);
    CHECK(s.contains({2, 0}));
    CHECK(s.contains({3, 1}));
    CHECK_FALSE(s.contains({1, 0}));
    auto ck = cokernel(s);
    CHECK(ck.group.order() == 2);
}

TEST_CASE("rank-zero group edge cases") {
    PGroup Z(2, {});
    CHECK(Z.order() == 1);
    CHECK(Z.elements().size() == 1);
    PGroup Z4(2, {2});
    GrpMap f = GrpMap::zero(Z, Z4);
    CHECK(image(f).size() == 1);
    auto ck = cokernel(SpanBasis::full(Z4));
    CHECK(ck.group.order() == 1);
    auto sv = subgroupView(SpanBasis::zero(Z4));
    CHECK(sv.group.order() == 1);
}
