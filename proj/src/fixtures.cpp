#include "modrep/fixtures.hpp"

namespace modrep::fix {

using alg::RModule;
using alg::Ring;
using la::GrpMap;
using la::Mat;
using la::PGroup;
using la::Vec;

Ring ringOl(i64 p, int l) {
    PGroup add(p, {l});
    return alg::makeRing(add, {{{1}}}, {1});
}

RModule moduleOi(const Ring& Ol, int i) {
    RModule M;
    M.ring = Ol;
    M.add = PGroup(Ol->p(), {i});
    M.action.emplace_back(M.add, M.add, Mat::identity(1), false);
    M.validate();
    return M;
}

Ring ringQuiver(i64 q) {
    // basis v1, v2, e with v2 e = e, e v1 = e and all other products of
    // distinct idempotent/arrow pairs zero
    PGroup add(q, {1, 1, 1});
    auto z = add.zero();
    std::vector<std::vector<Vec>> m(3, std::vector<Vec>(3, z));
    m[0][0] = {1, 0, 0};  // v1 v1
    m[1][1] = {0, 1, 0};  // v2 v2
    m[1][2] = {0, 0, 1};  // v2 e
    m[2][0] = {0, 0, 1};  // e v1
    return alg::makeRing(add, m, {1, 1, 0});
}

RModule quiverM1(const Ring& R) {
    // R v1 = span{v1, e}
    RModule M;
    M.ring = R;
    M.add = PGroup(R->p(), {1, 1});
    M.action.emplace_back(M.add, M.add, Mat::fromRows({{1, 0}, {0, 0}}, 2), false);  // v1
    M.action.emplace_back(M.add, M.add, Mat::fromRows({{0, 0}, {0, 1}}, 2), false);  // v2
    M.action.emplace_back(M.add, M.add, Mat::fromRows({{0, 0}, {1, 0}}, 2), false);  // e
    M.validate();
    return M;
}

RModule quiverM2(const Ring& R) {
    RModule M;
    M.ring = R;
    M.add = PGroup(R->p(), {1});
    M.action.emplace_back(M.add, M.add, Mat::fromRows({{0}}, 1), false);  // v1
    M.action.emplace_back(M.add, M.add, Mat::fromRows({{1}}, 1), false);  // v2
    M.action.emplace_back(M.add, M.add, Mat::fromRows({{0}}, 1), false);  // e
    M.validate();
    return M;
}

Ring ringThreeMod(i64 p) {
    PGroup add(p, {1, 1, 1});  // 1, x, y
    auto z = add.zero();
    std::vector<std::vector<Vec>> m(3, std::vector<Vec>(3, z));
    m[0][0] = {1, 0, 0};
    m[0][1] = {0, 1, 0};
    m[0][2] = {0, 0, 1};
    m[1][0] = {0, 1, 0};
    m[2][0] = {0, 0, 1};
    return alg::makeRing(add, m, {1, 0, 0});
}

RModule threeModM(const Ring& R, int which) {
    RModule M;
    M.ring = R;
    if (which == 1) return alg::regularModule(R);
    if (which == 2) {
        // R/(x): basis 1, y
        M.add = PGroup(R->p(), {1, 1});
        M.action.emplace_back(M.add, M.add, Mat::identity(2), false);                // 1
        M.action.emplace_back(M.add, M.add, Mat(2, 2), false);                       // x
        M.action.emplace_back(M.add, M.add, Mat::fromRows({{0, 0}, {1, 0}}, 2), false);  // y
        M.validate();
        return M;
    }
    M.add = PGroup(R->p(), {1});
    M.action.emplace_back(M.add, M.add, Mat::identity(1), false);
    M.action.emplace_back(M.add, M.add, Mat(1, 1), false);
    M.action.emplace_back(M.add, M.add, Mat(1, 1), false);
    M.validate();
    return M;
}

Ring ringCycle2(i64 q) {
    // basis v1, v2, a (1 -> 2), b (2 -> 1); radical square zero
    PGroup add(q, {1, 1, 1, 1});
    auto z = add.zero();
    std::vector<std::vector<Vec>> m(4, std::vector<Vec>(4, z));
    m[0][0] = {1, 0, 0, 0};  // v1 v1
    m[1][1] = {0, 1, 0, 0};  // v2 v2
    m[1][2] = {0, 0, 1, 0};  // v2 a
    m[2][0] = {0, 0, 1, 0};  // a v1
    m[0][3] = {0, 0, 0, 1};  // v1 b
    m[3][1] = {0, 0, 0, 1};  // b v2
    return alg::makeRing(add, m, {1, 1, 0, 0});
}

RModule cycle2M(const Ring& R, int which) {
    RModule M;
    M.ring = R;
    M.add = PGroup(R->p(), {1, 1});
    if (which == 1) {
        // R v1 = span{v1, a}
        M.action.emplace_back(M.add, M.add, Mat::fromRows({{1, 0}, {0, 0}}, 2), false);  // v1
        M.action.emplace_back(M.add, M.add, Mat::fromRows({{0, 0}, {0, 1}}, 2), false);  // v2
        M.action.emplace_back(M.add, M.add, Mat::fromRows({{0, 0}, {1, 0}}, 2), false);  // a
        M.action.emplace_back(M.add, M.add, Mat(2, 2), false);                           // b
    } else {
        // R v2 = span{v2, b}
        M.action.emplace_back(M.add, M.add, Mat::fromRows({{0, 0}, {0, 1}}, 2), false);  // v1
        M.action.emplace_back(M.add, M.add, Mat::fromRows({{1, 0}, {0, 0}}, 2), false);  // v2
        M.action.emplace_back(M.add, M.add, Mat(2, 2), false);                           // a
        M.action.emplace_back(M.add, M.add, Mat::fromRows({{0, 0}, {1, 0}}, 2), false);  // b
    }
    M.validate();
    return M;
}

RModule modulePow(const RModule& M, int n) {
    if (n == 0) {
        RModule Z;
        Z.ring = M.ring;
        Z.add = PGroup(M.add.p, {});
        for (int i = 0; i < M.ring->rank(); ++i) Z.action.push_back(GrpMap::zero(Z.add, Z.add));
        return Z;
    }
    std::vector<const RModule*> parts(n, &M);
    return alg::moduleDirectSum(parts).sum;
}

RModule freeModule(const Ring& R, int n) { return modulePow(alg::regularModule(R), n); }

}  // namespace modrep::fix
