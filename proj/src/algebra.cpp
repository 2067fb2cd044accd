#include "modrep/algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

namespace modrep::alg {

using la::GrpMap;
using la::Mat;
using la::PGroup;
using la::SpanBasis;
using la::Vec;

namespace {

i64 mod_norm(i64 x, i64 m) {
    if (m == 1) return 0;
    x %= m;
    if (x < 0) x += m;
    return x;
}

GrpMap mapFromColumns(const PGroup& dom, const PGroup& cod, const std::vector<Vec>& cols, bool validate = true) {
    Mat m(cod.rank(), dom.rank());
    for (int j = 0; j < dom.rank(); ++j)
        for (int i = 0; i < cod.rank(); ++i) m.at(i, j) = cols[j][i];
    return GrpMap(dom, cod, std::move(m), validate);
}

// ---- small F_p linear algebra --------------------------------------------

struct FpMat {
    int r = 0, c = 0;
    std::vector<int> a;
    FpMat(int r_, int c_) : r(r_), c(c_), a(static_cast<size_t>(r_) * c_, 0) {}
    int& at(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
    int at(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }
};

int fpInv(int x, i64 p) { return static_cast<int>(la::invMod(x, p)); }

// kernel basis of A x = 0 over F_p
std::vector<std::vector<int>> fpKernel(FpMat A, i64 p) {
    int r = A.r, c = A.c;
    std::vector<int> pivotAt(c, -1);
    int row = 0;
    for (int col = 0; col < c && row < r; ++col) {
        int sel = -1;
        for (int i = row; i < r; ++i)
            if (mod_norm(A.at(i, col), p)) { sel = i; break; }
        if (sel < 0) continue;
        for (int j = 0; j < c; ++j) std::swap(A.at(sel, j), A.at(row, j));
        int inv = fpInv(static_cast<int>(mod_norm(A.at(row, col), p)), p);
        for (int j = 0; j < c; ++j) A.at(row, j) = static_cast<int>(mod_norm((i64)A.at(row, j) * inv, p));
        for (int i = 0; i < r; ++i) {
            if (i == row) continue;
            int f = static_cast<int>(mod_norm(A.at(i, col), p));
            if (!f) continue;
            for (int j = 0; j < c; ++j) A.at(i, j) = static_cast<int>(mod_norm(A.at(i, j) - (i64)f * A.at(row, j), p));
        }
        pivotAt[col] = row;
        ++row;
    }
    std::vector<std::vector<int>> basis;
    for (int col = 0; col < c; ++col) {
        if (pivotAt[col] >= 0) continue;
        std::vector<int> v(c, 0);
        v[col] = 1;
        for (int j = 0; j < c; ++j)
            if (pivotAt[j] >= 0) v[j] = static_cast<int>(mod_norm(-(i64)A.at(pivotAt[j], col), p));
        basis.push_back(std::move(v));
    }
    return basis;
}

int fpRank(FpMat A, i64 p) {
    int r = A.r, c = A.c, row = 0;
    for (int col = 0; col < c && row < r; ++col) {
        int sel = -1;
        for (int i = row; i < r; ++i)
            if (mod_norm(A.at(i, col), p)) { sel = i; break; }
        if (sel < 0) continue;
        for (int j = 0; j < c; ++j) std::swap(A.at(sel, j), A.at(row, j));
        i64 inv = fpInv(static_cast<int>(mod_norm(A.at(row, col), p)), p);
        for (int j = 0; j < c; ++j) A.at(row, j) = static_cast<int>(mod_norm(A.at(row, j) * inv, p));
        for (int i = row + 1; i < r; ++i) {
            int f = static_cast<int>(mod_norm(A.at(i, col), p));
            if (!f) continue;
            for (int j = 0; j < c; ++j) A.at(i, j) = static_cast<int>(mod_norm(A.at(i, j) - (i64)f * A.at(row, j), p));
        }
        ++row;
    }
    return row;
}

// ---- F_p[t] ---------------------------------------------------------------

using Poly = std::vector<int>;  // low to high, normalized

Poly polyTrim(Poly f, i64 p) {
    for (auto& x : f) x = static_cast<int>(mod_norm(x, p));
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int polyDeg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly polyMul(const Poly& f, const Poly& g, i64 p) {
    if (f.empty() || g.empty()) return {};
    Poly h(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) h[i + j] = static_cast<int>(mod_norm(h[i + j] + (i64)f[i] * g[j], p));
    return polyTrim(h, p);
}

Poly polyAdd(Poly f, const Poly& g, i64 p) {
    if (f.size() < g.size()) f.resize(g.size(), 0);
    for (size_t i = 0; i < g.size(); ++i) f[i] = static_cast<int>(mod_norm(f[i] + g[i], p));
    return polyTrim(f, p);
}

Poly polySub(Poly f, const Poly& g, i64 p) {
    if (f.size() < g.size()) f.resize(g.size(), 0);
    for (size_t i = 0; i < g.size(); ++i) f[i] = static_cast<int>(mod_norm(f[i] - g[i], p));
    return polyTrim(f, p);
}

Poly polyMod(Poly f, const Poly& g, i64 p) {
    f = polyTrim(f, p);
    int dg = polyDeg(g);
    int lcInv = fpInv(g.back(), p);
    while (polyDeg(f) >= dg) {
        int df = polyDeg(f);
        int c = static_cast<int>(mod_norm((i64)f.back() * lcInv, p));
        for (int i = 0; i <= dg; ++i) f[df - dg + i] = static_cast<int>(mod_norm(f[df - dg + i] - (i64)c * g[i], p));
        f = polyTrim(f, p);
        if (f.empty()) break;
    }
    return f;
}

Poly polyDiv(Poly f, const Poly& g, i64 p) {
    f = polyTrim(f, p);
    int dg = polyDeg(g);
    int lcInv = fpInv(g.back(), p);
    Poly q(std::max<int>(polyDeg(f) - dg + 1, 0), 0);
    while (polyDeg(f) >= dg) {
        int df = polyDeg(f);
        int c = static_cast<int>(mod_norm((i64)f.back() * lcInv, p));
        q[df - dg] = c;
        for (int i = 0; i <= dg; ++i) f[df - dg + i] = static_cast<int>(mod_norm(f[df - dg + i] - (i64)c * g[i], p));
        f = polyTrim(f, p);
        if (f.empty()) break;
    }
    return polyTrim(q, p);
}

Poly polyGcd(Poly a, Poly b, i64 p) {
    a = polyTrim(a, p);
    b = polyTrim(b, p);
    while (!b.empty()) {
        Poly r = polyMod(a, b, p);
        a = b;
        b = r;
    }
    if (!a.empty()) {
        int inv = fpInv(a.back(), p);
        for (auto& x : a) x = static_cast<int>(mod_norm((i64)x * inv, p));
    }
    return a;
}

// a*u + b*v = 1 for coprime u,v
void polyExtGcd(const Poly& u, const Poly& v, i64 p, Poly& a, Poly& b) {
    Poly r0 = u, r1 = v, a0 = {1}, a1 = {}, b0 = {}, b1 = {1};
    while (!r1.empty()) {
        Poly q = polyDiv(r0, r1, p);
        Poly r2 = polySub(r0, polyMul(q, r1, p), p);
        Poly a2 = polySub(a0, polyMul(q, a1, p), p);
        Poly b2 = polySub(b0, polyMul(q, b1, p), p);
        r0 = r1; r1 = r2;
        a0 = a1; a1 = a2;
        b0 = b1; b1 = b2;
    }
    int inv = fpInv(r0.back(), p);
    a = a0;
    b = b0;
    for (auto& x : a) x = static_cast<int>(mod_norm((i64)x * inv, p));
    for (auto& x : b) x = static_cast<int>(mod_norm((i64)x * inv, p));
}

Poly polyPowMod(Poly base, i64 e, const Poly& m, i64 p) {
    Poly r = {1};
    base = polyMod(base, m, p);
    while (e > 0) {
        if (e & 1) r = polyMod(polyMul(r, base, p), m, p);
        base = polyMod(polyMul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

// split a squarefree monic non-irreducible polynomial into coprime factors
std::pair<Poly, Poly> polySplitSquarefree(const Poly& m, i64 p, std::mt19937& rng) {
    int d = polyDeg(m);
    Poly x = {0, 1};
    Poly h = x;
    for (int k = 1; k <= d / 2; ++k) {
        h = polyPowMod(h, p, m, p);  // t^{p^k} mod m
        Poly g = polyGcd(polySub(h, x, p), m, p);
        if (polyDeg(g) > 0 && polyDeg(g) < d) return {g, polyDiv(m, g, p)};
    }
    // all irreducible factors share a degree d0; find it
    int d0 = 0;
    {
        Poly hh = x;
        for (int k = 1; k <= d; ++k) {
            hh = polyPowMod(hh, p, m, p);
            if (polyGcd(polySub(hh, x, p), m, p) == m) { d0 = k; break; }
        }
    }
    if (d0 == 0 || d0 == d) throw InvalidInput("polySplitSquarefree: irreducible input");
    for (int tries = 0; tries < 500; ++tries) {
        Poly a(d, 0);
        for (auto& c : a) c = static_cast<int>(rng() % p);
        a = polyTrim(a, p);
        if (polyDeg(a) < 0) continue;
        Poly g = polyGcd(a, m, p);
        if (polyDeg(g) > 0 && polyDeg(g) < d) return {g, polyDiv(m, g, p)};
        if (p > 2) {
            i64 e = (ipow(p, d0) - 1) / 2;
            g = polyGcd(polySub(polyPowMod(a, e, m, p), {1}, p), m, p);
        } else {
            Poly b = polyMod(a, m, p), acc = b;
            for (int k = 1; k < d0; ++k) {
                b = polyMod(polyMul(b, b, p), m, p);
                acc = polyAdd(acc, b, p);
            }
            g = polyGcd(acc, m, p);
        }
        if (polyDeg(g) > 0 && polyDeg(g) < d) return {g, polyDiv(m, g, p)};
    }
    throw InvalidInput("polySplitSquarefree: splitting failed");
}

}  // namespace

// ---- FiniteAlgebra ---------------------------------------------------------

Vec FiniteAlgebra::mul(const Vec& x, const Vec& y) const {
    const int r = rank();
    std::vector<i128> acc(r, 0);
    for (int i = 0; i < r; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < r; ++j) {
            if (y[j] == 0) continue;
            i64 cij = (i64)((i128)x[i] * y[j] % add.mod());
            const Vec& t = mult[i][j];
            for (int u = 0; u < r; ++u) acc[u] += (i128)cij * t[u];
        }
    }
    Vec out(r);
    for (int u = 0; u < r; ++u) out[u] = mod_norm((i64)(acc[u] % add.coordMod(u)), add.coordMod(u));
    return out;
}

GrpMap FiniteAlgebra::leftMul(const Vec& x) const {
    std::vector<Vec> cols;
    for (int j = 0; j < rank(); ++j) cols.push_back(mul(x, add.unit(j)));
    return mapFromColumns(add, add, cols, false);
}

GrpMap FiniteAlgebra::rightMul(const Vec& x) const {
    std::vector<Vec> cols;
    for (int j = 0; j < rank(); ++j) cols.push_back(mul(add.unit(j), x));
    return mapFromColumns(add, add, cols, false);
}

bool FiniteAlgebra::isUnit(const Vec& x) const {
    // finite rings are Dedekind-finite; surjectivity of left multiplication
    // mod p decides invertibility
    GrpMap L = leftMul(x);
    FpMat A(rank(), rank());
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) A.at(i, j) = static_cast<int>(mod_norm(L.m.at(i, j), p()));
    return fpRank(A, p()) == rank();
}

void FiniteAlgebra::validate() const {
    const int r = rank();
    if ((int)mult.size() != r) throw InvalidInput("algebra: mult table shape");
    for (int i = 0; i < r; ++i) {
        if ((int)mult[i].size() != r) throw InvalidInput("algebra: mult table shape");
        for (int j = 0; j < r; ++j) {
            const Vec& t = mult[i][j];
            if ((int)t.size() != r) throw InvalidInput("algebra: mult entry shape");
            for (int u = 0; u < r; ++u) {
                i64 needI = ipow(p(), std::max(0, add.exps[u] - add.exps[i]));
                i64 needJ = ipow(p(), std::max(0, add.exps[u] - add.exps[j]));
                if (mod_norm(t[u], needI) != 0 || mod_norm(t[u], needJ) != 0)
                    throw InvalidInput("algebra: structure constants not bilinear over coordinate orders");
            }
        }
    }
    for (int i = 0; i < r; ++i) {
        if (mul(unit, add.unit(i)) != add.unit(i) || mul(add.unit(i), unit) != add.unit(i))
            throw InvalidInput("algebra: unit fails");
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                if (mul(mul(add.unit(i), add.unit(j)), add.unit(k)) != mul(add.unit(i), mul(add.unit(j), add.unit(k))))
                    throw InvalidInput("algebra: associativity fails");
    }
    if (r > 0 && !add.isZero(add.smul(ipow(p(), l()), unit))) throw InvalidInput("algebra: p^l * 1 != 0");
}

Ring makeRing(PGroup add, std::vector<std::vector<Vec>> mult, Vec unit) {
    auto r = std::make_shared<FiniteAlgebra>();
    r->add = std::move(add);
    for (auto& row : mult)
        for (auto& v : row) v = r->add.reduce(v);
    r->mult = std::move(mult);
    r->unit = r->add.reduce(unit);
    r->validate();
    return r;
}

// ---- RModule ---------------------------------------------------------------

GrpMap RModule::actionOf(const Vec& r) const {
    GrpMap f = GrpMap::zero(add, add);
    for (int i = 0; i < ring->rank(); ++i)
        if (r[i]) f = f.add(action[i].scaled(r[i]));
    return f;
}

Vec RModule::act(const Vec& r, const Vec& m) const { return actionOf(r).apply(m); }

void RModule::validate() const {
    const auto& R = *ring;
    if ((int)action.size() != R.rank()) throw InvalidInput("module: one action map per ring generator required");
    for (int i = 0; i < R.rank(); ++i) {
        if (!(action[i].dom == add) || !(action[i].cod == add)) throw InvalidInput("module: action shape");
        if (!action[i].wellDefined()) throw InvalidInput("module: action map not well defined");
        if (!action[i].scaled(ipow(R.p(), R.add.exps[i])).isZero())
            throw InvalidInput("module: action not bilinear over ring coordinate orders");
    }
    for (int i = 0; i < R.rank(); ++i)
        for (int j = 0; j < R.rank(); ++j) {
            GrpMap lhs = actionOf(R.mul(R.add.unit(i), R.add.unit(j)));
            GrpMap rhs = action[i].compose(action[j]);
            if (!(lhs.m == rhs.m)) throw InvalidInput("module: action does not respect multiplication");
        }
    if (!(actionOf(R.unit).m == GrpMap::identity(add).m)) throw InvalidInput("module: unit does not act as identity");
}

RModule regularModule(const Ring& R) {
    RModule M;
    M.ring = R;
    M.add = R->add;
    for (int i = 0; i < R->rank(); ++i) M.action.push_back(R->leftMul(R->add.unit(i)));
    return M;
}

bool sameRing(const RModule& M, const RModule& N) {
    if (M.ring == N.ring) return true;
    return M.ring->add == N.ring->add && M.ring->mult == N.ring->mult && M.ring->unit == N.ring->unit;
}

ModuleSum moduleDirectSum(const std::vector<const RModule*>& parts) {
    if (parts.empty()) throw InvalidInput("moduleDirectSum: empty");
    ModuleSum s;
    s.sum.ring = parts[0]->ring;
    PGroup add(parts[0]->add.p, {});
    for (auto* m : parts) {
        s.offset.push_back(add.rank());
        s.ranks.push_back(m->add.rank());
        add = la::directSum(add, m->add);
    }
    s.sum.add = add;
    for (int i = 0; i < parts[0]->ring->rank(); ++i) {
        Mat big(add.rank(), add.rank());
        int off = 0;
        for (auto* m : parts) {
            const Mat& blk = m->action[i].m;
            for (int u = 0; u < blk.r; ++u)
                for (int v = 0; v < blk.c; ++v) big.at(off + u, off + v) = blk.at(u, v);
            off += m->add.rank();
        }
        s.sum.action.emplace_back(add, add, std::move(big), false);
    }
    return s;
}

GrpMap ModuleSum::inclusion(int t, const RModule& part) const {
    Mat m(sum.add.rank(), part.add.rank());
    for (int j = 0; j < ranks[t]; ++j) m.at(offset[t] + j, j) = 1;
    return GrpMap(part.add, sum.add, std::move(m), false);
}

GrpMap ModuleSum::projection(int t, const RModule& part) const {
    Mat m(part.add.rank(), sum.add.rank());
    for (int j = 0; j < ranks[t]; ++j) m.at(j, offset[t] + j) = 1;
    return GrpMap(sum.add, part.add, std::move(m), false);
}

// ---- hom spaces -------------------------------------------------------------

RHom homR(const RModule& M, const RModule& N) {
    if (!sameRing(M, N)) throw InvalidInput("homR: ring mismatch");
    RHom h;
    h.src = M;
    h.dst = N;
    h.hom = la::homGroup(M.add, N.add);
    const int ng = M.ring->rank();
    if (h.hom.group.rank() == 0) {
        h.carrier = SpanBasis::zero(h.hom.group);
        return h;
    }
    PGroup codStack(h.hom.group.p, {});
    for (int i = 0; i < ng; ++i) codStack = la::directSum(codStack, h.hom.group);
    std::vector<Vec> cols;
    for (int t = 0; t < h.hom.group.rank(); ++t) {
        GrpMap e = h.hom.mapOf(h.hom.group.unit(t));
        Vec col;
        for (int i = 0; i < ng; ++i) {
            GrpMap d = e.compose(M.action[i]).add(N.action[i].compose(e).scaled(-1));
            Vec c = h.hom.coordsOf(d);
            col.insert(col.end(), c.begin(), c.end());
        }
        cols.push_back(std::move(col));
    }
    if (ng == 0) {
        h.carrier = SpanBasis::full(h.hom.group);
        return h;
    }
    GrpMap sys = mapFromColumns(h.hom.group, codStack, cols, false);
    h.carrier = la::kernel(sys);
    return h;
}

GrpMap RHom::basisMap(int i) const { return hom.mapOf(carrier.naturalRow(i)); }

std::vector<GrpMap> RHom::basisMaps() const {
    std::vector<GrpMap> v;
    for (int i = 0; i < carrier.nrows(); ++i) v.push_back(basisMap(i));
    return v;
}

bool RHom::contains(const GrpMap& f) const { return carrier.contains(hom.coordsOf(f)); }

bool isRLinear(const RModule& M, const RModule& N, const GrpMap& f) {
    for (int i = 0; i < M.ring->rank(); ++i) {
        GrpMap a = f.compose(M.action[i]);
        GrpMap b = N.action[i].compose(f);
        if (!(a.m == b.m)) return false;
    }
    return true;
}

bool isModuleIso(const GrpMap& f) {
    auto a = f.dom.exps, b = f.cod.exps;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
    if (f.dom.rank() == 0) return true;
    const i64 p = f.dom.p;
    FpMat A(f.cod.rank(), f.dom.rank());
    for (int i = 0; i < f.cod.rank(); ++i)
        for (int j = 0; j < f.dom.rank(); ++j) A.at(i, j) = static_cast<int>(mod_norm(f.m.at(i, j), p));
    return fpRank(A, p) == f.cod.rank();
}

EndAlgebra endAlgebra(const RModule& M) {
    EndAlgebra ea;
    ea.M = M;
    RHom h = homR(M, M);
    ea.hom = h.hom;
    ea.view = la::subgroupView(h.carrier);
    const int r = ea.view.group.rank();
    std::vector<GrpMap> gens;
    for (int t = 0; t < r; ++t) gens.push_back(ea.hom.mapOf(ea.view.incl.apply(ea.view.group.unit(t))));
    std::vector<std::vector<Vec>> mult(r, std::vector<Vec>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) mult[i][j] = ea.view.coords(ea.hom.coordsOf(gens[i].compose(gens[j])));
    Vec unit = ea.view.coords(ea.hom.coordsOf(GrpMap::identity(M.add)));
    ea.E = makeRing(ea.view.group, std::move(mult), std::move(unit));
    return ea;
}

GrpMap EndAlgebra::toMap(const Vec& e) const { return hom.mapOf(view.incl.apply(e)); }

Vec EndAlgebra::fromMap(const GrpMap& f) const { return view.coords(hom.coordsOf(f)); }

// ---- radical ----------------------------------------------------------------

namespace {

struct FpAlgebra {
    int r = 0;
    i64 p = 2;
    std::vector<std::vector<std::vector<int>>> mm;

    std::vector<int> mulv(const std::vector<int>& x, const std::vector<int>& y) const {
        std::vector<i64> acc(r, 0);
        for (int i = 0; i < r; ++i) {
            if (!x[i]) continue;
            for (int j = 0; j < r; ++j) {
                if (!y[j]) continue;
                i64 cij = (i64)x[i] * y[j] % p;
                for (int u = 0; u < r; ++u) acc[u] += cij * mm[i][j][u];
            }
        }
        std::vector<int> out(r);
        for (int u = 0; u < r; ++u) out[u] = static_cast<int>(mod_norm(acc[u], p));
        return out;
    }

    FpMat leftMulMat(const std::vector<int>& x) const {
        FpMat A(r, r);
        for (int j = 0; j < r; ++j) {
            std::vector<int> e(r, 0);
            e[j] = 1;
            auto col = mulv(x, e);
            for (int i = 0; i < r; ++i) A.at(i, j) = col[i];
        }
        return A;
    }
};

// dense multiply mod m (small modulus)
FpMat matMulMod(const FpMat& A, const FpMat& B, i64 m) {
    FpMat C(A.r, B.c);
    for (int i = 0; i < A.r; ++i)
        for (int k = 0; k < A.c; ++k) {
            if (!A.at(i, k)) continue;
            for (int j = 0; j < B.c; ++j)
                C.at(i, j) = static_cast<int>(mod_norm(C.at(i, j) + (i64)A.at(i, k) * B.at(k, j), m));
        }
    return C;
}

// tr(Y^{p^i})/p^i mod p for the {0..p-1} integer lift Y of the mod-p matrix;
// on the chain subspaces of the Friedl-Ronyai method the trace is divisible
// by p^i, so working mod p^{i+1} is exact
int semitrace(const FpMat& Ymodp, i64 pi, i64 p) {
    const i64 m = pi * p;
    FpMat R(Ymodp.r, Ymodp.r);
    for (int i = 0; i < R.r; ++i) R.at(i, i) = 1;
    FpMat A = Ymodp;
    i64 e = pi;
    while (e > 0) {
        if (e & 1) R = matMulMod(R, A, m);
        A = matMulMod(A, A, m);
        e >>= 1;
    }
    i64 t = 0;
    for (int i = 0; i < R.r; ++i) t += R.at(i, i);
    t = mod_norm(t, m);
    if (t % pi != 0) throw InvalidInput("radical: semitrace not divisible (chain invariant broken)");
    return static_cast<int>(mod_norm(t / pi, p));
}

// Friedl-Ronyai chain: V_0 = B, V_{i+1} = {x in V_i : tr(Y(xy)^{p^i})/p^i = 0
// mod p for all y in V_i}, traces taken over integer lifts; stabilizes at
// Rad(B) once p^i reaches dim B.
std::vector<std::vector<int>> fpRadical(const FpAlgebra& B) {
    const int r = B.r;
    const i64 p = B.p;
    std::vector<std::vector<int>> basis;
    for (int i = 0; i < r; ++i) {
        std::vector<int> e(r, 0);
        e[i] = 1;
        basis.push_back(e);
    }
    for (i64 pk = 1; pk <= r; pk *= p) {
        if (basis.empty()) break;
        const int d = static_cast<int>(basis.size());
        FpMat T(d, d);
        for (int b = 0; b < d; ++b)
            for (int a = 0; a < d; ++a) {
                auto prod = B.mulv(basis[a], basis[b]);
                T.at(b, a) = semitrace(B.leftMulMat(prod), pk, p);
            }
        auto ker = fpKernel(T, p);
        std::vector<std::vector<int>> next;
        for (const auto& c : ker) {
            std::vector<int> v(r, 0);
            for (int a = 0; a < d; ++a) {
                if (!c[a]) continue;
                for (int u = 0; u < r; ++u) v[u] = static_cast<int>(mod_norm(v[u] + (i64)c[a] * basis[a][u], p));
            }
            next.push_back(std::move(v));
        }
        basis = std::move(next);
    }
    return basis;
}

FpAlgebra modPAlgebra(const FiniteAlgebra& A) {
    FpAlgebra B;
    B.r = A.rank();
    B.p = A.p();
    B.mm.assign(B.r, std::vector<std::vector<int>>(B.r));
    for (int i = 0; i < B.r; ++i)
        for (int j = 0; j < B.r; ++j) {
            std::vector<int> v(B.r);
            for (int u = 0; u < B.r; ++u) v[u] = static_cast<int>(mod_norm(A.mult[i][j][u], B.p));
            B.mm[i][j] = std::move(v);
        }
    return B;
}

}  // namespace

SpanBasis jacobsonRadical(const Ring& A) {
    FpAlgebra B = modPAlgebra(*A);
    auto radB = fpRadical(B);
    std::vector<Vec> gens;
    for (const auto& v : radB) gens.emplace_back(v.begin(), v.end());
    for (int j = 0; j < A->rank(); ++j) gens.push_back(A->add.smul(A->p(), A->add.unit(j)));
    return SpanBasis::span(A->add, gens);
}

QuotAlgebra quotientAlgebra(const Ring& A, const SpanBasis& ideal) {
    for (const auto& g : ideal.naturalRows())
        for (int i = 0; i < A->rank(); ++i)
            if (!ideal.contains(A->mul(A->add.unit(i), g)) || !ideal.contains(A->mul(g, A->add.unit(i))))
                throw InvalidInput("quotientAlgebra: not a two-sided ideal");
    QuotAlgebra qa;
    qa.ck = la::cokernel(ideal);
    const int r = qa.ck.group.rank();
    std::vector<std::vector<Vec>> mult(r, std::vector<Vec>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            mult[i][j] =
                qa.ck.proj.apply(A->mul(qa.ck.section(qa.ck.group.unit(i)), qa.ck.section(qa.ck.group.unit(j))));
    qa.Q = makeRing(qa.ck.group, std::move(mult), qa.ck.proj.apply(A->unit));
    return qa;
}

// ---- fields -----------------------------------------------------------------

Vec Field::inv(const Vec& a) const {
    int i = indexOf(a);
    if (invTable[i] < 0) throw InvalidInput("Field::inv of zero");
    return el(invTable[i]);
}

int Field::trace(const Vec& a) const {
    GrpMap L = A->leftMul(a);
    i64 t = 0;
    for (int i = 0; i < A->rank(); ++i) t += L.m.at(i, i);
    return static_cast<int>(mod_norm(t, p()));
}

Field asField(const Ring& A) {
    Field F;
    F.A = A;
    F.deg = A->rank();
    if (F.deg == 0) throw InvalidInput("asField: zero algebra");
    for (int e : A->add.exps)
        if (e != 1) throw InvalidInput("asField: additive group not elementary abelian");
    i64 q = A->add.order();
    if (q > 65536) throw CapError("asField: field too large to tabulate");
    F.elems = A->add.elements();
    F.invTable.assign(q, -1);
    for (i64 i = 0; i < q; ++i) {
        if (F.invTable[i] >= 0) continue;
        for (i64 j = 0; j < q; ++j)
            if (A->mul(F.elems[i], F.elems[j]) == A->unit) {
                F.invTable[i] = static_cast<int>(j);
                F.invTable[j] = static_cast<int>(i);
                break;
            }
    }
    for (i64 i = 0; i < q; ++i) {
        bool isz = A->add.isZero(F.elems[i]);
        if (!isz && F.invTable[i] < 0) throw InvalidInput("asField: non-invertible nonzero element");
    }
    for (int i = 0; i < A->rank(); ++i)
        for (int j = 0; j < A->rank(); ++j)
            if (A->mul(A->add.unit(i), A->add.unit(j)) != A->mul(A->add.unit(j), A->add.unit(i)))
                throw InvalidInput("asField: not commutative");
    return F;
}

LocalData localData(const RModule& M) {
    LocalData ld;
    ld.module = M;
    ld.end = endAlgebra(M);
    ld.radical = jacobsonRadical(ld.end.E);
    ld.quot = quotientAlgebra(ld.end.E, ld.radical);
    ld.residue = asField(ld.quot.Q);
    return ld;
}

Vec LocalData::residueOf(const GrpMap& f) const { return quot.ck.proj.apply(end.fromMap(f)); }

GrpMap LocalData::liftResidue(const Vec& e) const { return end.toMap(quot.ck.section(e)); }

// ---- decomposition ----------------------------------------------------------

namespace {

struct Piece {
    RModule mod;
    GrpMap incl, proj;
};

Poly minPolyOf(const Ring& Q, const Vec& x) {
    const i64 p = Q->p();
    const int r = Q->rank();
    std::vector<Vec> pows;
    pows.push_back(Q->unit);
    Vec cur = Q->unit;
    for (int d = 1; d <= r + 1; ++d) {
        cur = Q->mul(cur, x);
        // try to express cur in span(pows): gaussian solve over F_p
        FpMat Aug(r, d + 1);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < d; ++j) Aug.at(i, j) = static_cast<int>(mod_norm(pows[j][i], p));
            Aug.at(i, d) = static_cast<int>(mod_norm(cur[i], p));
        }
        int row = 0;
        std::vector<int> colPivRow(d, -1);
        for (int col = 0; col < d && row < r; ++col) {
            int sel = -1;
            for (int i = row; i < r; ++i)
                if (Aug.at(i, col)) { sel = i; break; }
            if (sel < 0) continue;
            for (int j = 0; j <= d; ++j) std::swap(Aug.at(sel, j), Aug.at(row, j));
            int inv = fpInv(Aug.at(row, col), p);
            for (int j = 0; j <= d; ++j) Aug.at(row, j) = static_cast<int>(mod_norm((i64)Aug.at(row, j) * inv, p));
            for (int i = 0; i < r; ++i) {
                if (i == row || !Aug.at(i, col)) continue;
                int f = Aug.at(i, col);
                for (int j = 0; j <= d; ++j) Aug.at(i, j) = static_cast<int>(mod_norm(Aug.at(i, j) - (i64)f * Aug.at(row, j), p));
            }
            colPivRow[col] = row;
            ++row;
        }
        bool consistent = true;
        for (int i = row; i < r; ++i)
            if (Aug.at(i, d)) { consistent = false; break; }
        if (!consistent) {
            pows.push_back(cur);
            continue;
        }
        Poly m(d + 1, 0);
        m[d] = 1;
        for (int col = 0; col < d; ++col)
            if (colPivRow[col] >= 0) m[col] = static_cast<int>(mod_norm(-(i64)Aug.at(colPivRow[col], d), p));
        return polyTrim(m, p);
    }
    throw InvalidInput("minPolyOf: failed");
}

Vec evalPolyAt(const Ring& Q, const Poly& f, const Vec& x) {
    Vec acc = Q->add.zero();
    Vec power = Q->unit;
    for (size_t j = 0; j < f.size(); ++j) {
        if (f[j]) acc = Q->add.add(acc, Q->add.smul(f[j], power));
        power = Q->mul(power, x);
    }
    return acc;
}

// nontrivial idempotent in a semisimple F_p-algebra, or nullopt when it is a
// field (so the module above it is indecomposable)
std::optional<Vec> semisimpleIdempotent(const Ring& Q) {
    const i64 p = Q->p();
    const int r = Q->rank();
    if (r == 1) return std::nullopt;
    std::mt19937 rng(20240601u);
    std::vector<Vec> zbasis;
    {
        FpMat A(r * r, r);
        for (int t = 0; t < r; ++t) {
            Vec e = Q->add.unit(t);
            for (int i = 0; i < r; ++i) {
                Vec d = Q->add.sub(Q->mul(e, Q->add.unit(i)), Q->mul(Q->add.unit(i), e));
                for (int u = 0; u < r; ++u) A.at(i * r + u, t) = static_cast<int>(mod_norm(d[u], p));
            }
        }
        for (const auto& c : fpKernel(A, p)) zbasis.emplace_back(c.begin(), c.end());
    }
    const bool commutative = (int)zbasis.size() == r;
    {
        // Berlekamp kernel of the center: z -> z^p - z is additive there
        const int d = static_cast<int>(zbasis.size());
        FpMat A(r, d);
        for (int t = 0; t < d; ++t) {
            Vec z = Q->add.reduce(zbasis[t]);
            Vec zp = z;
            for (i64 k = 1; k < p; ++k) zp = Q->mul(zp, z);
            Vec diff = Q->add.sub(zp, z);
            for (int u = 0; u < r; ++u) A.at(u, t) = static_cast<int>(mod_norm(diff[u], p));
        }
        auto ker = fpKernel(A, p);
        if ((int)ker.size() > 1) {
            for (const auto& c : ker) {
                Vec z = Q->add.zero();
                for (int t = 0; t < (int)c.size(); ++t)
                    if (c[t]) z = Q->add.add(z, Q->add.smul(c[t], Q->add.reduce(zbasis[t])));
                Poly m = minPolyOf(Q, z);
                if (polyDeg(m) < 2) continue;
                for (i64 c0 = 0; c0 < p; ++c0) {
                    Poly lin = {static_cast<int>(mod_norm(-c0, p)), 1};
                    if (!polyMod(m, lin, p).empty()) continue;
                    Poly rest = polyDiv(m, lin, p);
                    Poly a, b;
                    polyExtGcd(lin, rest, p, a, b);
                    Vec e = evalPolyAt(Q, polyMul(a, lin, p), z);
                    if (!Q->add.isZero(e) && e != Q->unit && Q->mul(e, e) == e) return e;
                }
            }
        }
    }
    if (commutative) return std::nullopt;
    i64 total = Q->add.order();
    if (total > 65536) throw CapError("semisimpleIdempotent: algebra too large for deterministic scan");
    for (i64 idx = 1; idx < total; ++idx) {
        Vec x = Q->add.elementAt(idx);
        Poly m = minPolyOf(Q, x);
        if (polyDeg(m) < 2) continue;
        Poly u, v;
        try {
            std::tie(u, v) = polySplitSquarefree(m, p, rng);
        } catch (const InvalidInput&) {
            continue;
        }
        Poly a, b;
        polyExtGcd(u, v, p, a, b);
        Vec e = evalPolyAt(Q, polyMul(a, u, p), x);
        if (!Q->add.isZero(e) && e != Q->unit && Q->mul(e, e) == e) return e;
    }
    throw InvalidInput("semisimpleIdempotent: deterministic scan found no idempotent in a non-commutative algebra");
}

void splitRec(const RModule& M, const GrpMap& incl, const GrpMap& proj, std::vector<Piece>& out) {
    if (M.add.rank() == 0) return;
    EndAlgebra ea = endAlgebra(M);
    SpanBasis J = jacobsonRadical(ea.E);
    QuotAlgebra qa = quotientAlgebra(ea.E, J);
    std::optional<Vec> ebar = semisimpleIdempotent(qa.Q);
    if (!ebar) {
        out.push_back({M, incl, proj});
        return;
    }
    Vec e = qa.ck.section(*ebar);
    for (int guard = 0;; ++guard) {
        Vec e2 = ea.E->mul(e, e);
        if (e2 == e) break;
        if (guard > 64) throw InvalidInput("idempotent lifting did not converge");
        Vec e3 = ea.E->mul(e2, e);
        e = ea.E->add.sub(ea.E->add.smul(3, e2), ea.E->add.smul(2, e3));
    }
    GrpMap f1 = ea.toMap(e);
    GrpMap f2 = ea.toMap(ea.E->add.sub(ea.E->unit, e));
    for (const GrpMap& f : {f1, f2}) {
        SpanBasis img = la::image(f);
        la::SubgroupView sv;
        RModule sub = submoduleAsModule(M, img, &sv);
        if (sub.add.rank() == 0) continue;
        std::vector<Vec> cols;
        for (int j = 0; j < M.add.rank(); ++j) cols.push_back(sv.coords(f.apply(M.add.unit(j))));
        GrpMap pr = mapFromColumns(M.add, sub.add, cols, false);
        splitRec(sub, incl.compose(sv.incl), pr.compose(proj), out);
    }
}

std::vector<i64> moduleFingerprint(const RModule& m) {
    std::vector<i64> f;
    f.push_back(m.add.order());
    for (int e : m.add.exps) f.push_back(e);
    for (const auto& a : m.action)
        for (i64 x : a.m.a) f.push_back(x);
    return f;
}

}  // namespace

std::vector<Summand> decomposeIndecomposable(const RModule& M) {
    FullDecomposition d = decomposeFull(M);
    std::vector<Summand> out;
    for (size_t t = 0; t < d.types.size(); ++t) out.push_back({d.types[t], static_cast<int>(d.pieceIdx[t].size())});
    return out;
}

GrpMap inverseIso(const GrpMap& f) {
    std::vector<Vec> cols;
    for (int j = 0; j < f.cod.rank(); ++j) {
        auto x = la::solve(f, f.cod.unit(j));
        if (!x) throw InvalidInput("inverseIso: map not surjective");
        cols.push_back(*x);
    }
    GrpMap g = mapFromColumns(f.cod, f.dom, cols, false);
    if (!(g.compose(f).m == GrpMap::identity(f.dom).m) || !(f.compose(g).m == GrpMap::identity(f.cod).m))
        throw InvalidInput("inverseIso: inverse verification failed");
    return g;
}

FullDecomposition decomposeFull(const RModule& M) {
    std::vector<Piece> pieces;
    splitRec(M, GrpMap::identity(M.add), GrpMap::identity(M.add), pieces);
    FullDecomposition d;
    std::vector<int> typeOf(pieces.size(), -1);
    for (size_t p = 0; p < pieces.size(); ++p) {
        for (size_t t = 0; t < d.types.size(); ++t)
            if (isIsomorphic(pieces[p].mod, d.types[t])) {
                typeOf[p] = static_cast<int>(t);
                break;
            }
        if (typeOf[p] < 0) {
            typeOf[p] = static_cast<int>(d.types.size());
            d.types.push_back(pieces[p].mod);
        }
    }
    // canonical order of types
    std::vector<int> perm(d.types.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        return moduleFingerprint(d.types[a]) < moduleFingerprint(d.types[b]);
    });
    std::vector<int> inew(d.types.size());
    for (size_t t = 0; t < perm.size(); ++t) inew[perm[t]] = static_cast<int>(t);
    std::vector<RModule> sorted;
    for (int t : perm) sorted.push_back(d.types[t]);
    d.types = std::move(sorted);
    d.pieceIdx.assign(d.types.size(), {});
    for (size_t p = 0; p < pieces.size(); ++p) {
        int t = inew[typeOf[p]];
        auto w = isIsomorphic(pieces[p].mod, d.types[t]);
        if (!w) throw TheoremViolation("decomposeFull: type witness vanished");
        d.pieceIdx[t].push_back(static_cast<int>(d.pieces.size()));
        d.pieces.push_back({pieces[p].mod, pieces[p].incl, pieces[p].proj, t, *w});
    }
    return d;
}

std::optional<GrpMap> isIsomorphic(const RModule& M, const RModule& N) {
    if (!sameRing(M, N)) throw InvalidInput("isIsomorphic: ring mismatch");
    auto a = M.add.exps, b = N.add.exps;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
    if (M.add.rank() == 0) return GrpMap::zero(M.add, N.add);
    RHom h = homR(M, N);
    for (int i = 0; i < h.ngens(); ++i) {
        GrpMap f = h.basisMap(i);
        if (isModuleIso(f)) return f;
    }
    for (int i = 0; i < h.ngens(); ++i)
        for (int j = i + 1; j < h.ngens(); ++j) {
            GrpMap f = h.basisMap(i).add(h.basisMap(j));
            if (isModuleIso(f)) return f;
        }
    std::vector<Piece> pm, pn;
    splitRec(M, GrpMap::identity(M.add), GrpMap::identity(M.add), pm);
    splitRec(N, GrpMap::identity(N.add), GrpMap::identity(N.add), pn);
    if (pm.size() != pn.size()) return std::nullopt;
    if (pm.size() <= 1) return std::nullopt;  // indecomposable: basis scan already decided
    std::vector<bool> used(pn.size(), false);
    GrpMap acc = GrpMap::zero(M.add, N.add);
    for (auto& x : pm) {
        bool matched = false;
        for (size_t j = 0; j < pn.size(); ++j) {
            if (used[j]) continue;
            auto w = isIsomorphic(x.mod, pn[j].mod);
            if (w) {
                used[j] = true;
                acc = acc.add(pn[j].incl.compose(w->compose(x.proj)));
                matched = true;
                break;
            }
        }
        if (!matched) return std::nullopt;
    }
    if (!isModuleIso(acc)) throw TheoremViolation("Krull-Schmidt reassembly failed to give an isomorphism");
    return acc;
}

// ---- left/right maximal morphisms --------------------------------------------

namespace {

LMSpace maximalMorphisms(const std::vector<RModule>& ctx, const std::vector<LocalData>& locals, int j, int i, bool left) {
    LMSpace lm;
    lm.ambient = homR(ctx[j], ctx[i]);
    const auto& H = lm.ambient.hom;
    const int n = static_cast<int>(ctx.size());
    std::vector<std::vector<GrpMap>> radMaps;
    for (int k = 0; k < n; ++k) {
        std::vector<GrpMap> gens;
        if (left) {
            if (k != i) gens = homR(ctx[i], ctx[k]).basisMaps();
            else
                for (const auto& row : locals[i].radical.naturalRows()) gens.push_back(locals[i].end.toMap(row));
        } else {
            if (k != j) gens = homR(ctx[k], ctx[j]).basisMaps();
            else
                for (const auto& row : locals[j].radical.naturalRows()) gens.push_back(locals[j].end.toMap(row));
        }
        radMaps.push_back(std::move(gens));
    }
    std::vector<la::HomGroup> homKs;
    PGroup stacked(H.group.p, {});
    for (int k = 0; k < n; ++k) {
        la::HomGroup hk = left ? la::homGroup(ctx[j].add, ctx[k].add) : la::homGroup(ctx[k].add, ctx[i].add);
        for (size_t t = 0; t < radMaps[k].size(); ++t) stacked = la::directSum(stacked, hk.group);
        homKs.push_back(hk);
    }
    SpanBasis K = SpanBasis::full(H.group);
    if (stacked.rank() > 0 && H.group.rank() > 0) {
        std::vector<Vec> cols;
        for (int t = 0; t < H.group.rank(); ++t) {
            GrpMap f = H.mapOf(H.group.unit(t));
            Vec col;
            for (int k = 0; k < n; ++k)
                for (const auto& g : radMaps[k]) {
                    GrpMap comp = left ? g.compose(f) : f.compose(g);
                    Vec c = homKs[k].coordsOf(comp);
                    col.insert(col.end(), c.begin(), c.end());
                }
            cols.push_back(std::move(col));
        }
        K = la::kernel(mapFromColumns(H.group, stacked, cols, false));
    }
    K = K.intersect(lm.ambient.carrier);
    if (j == i) {
        std::vector<Vec> radCoords;
        for (const auto& row : locals[i].radical.naturalRows()) radCoords.push_back(H.coordsOf(locals[i].end.toMap(row)));
        K = K.intersect(SpanBasis::span(H.group, radCoords));
    }
    lm.carrier = K;
    const Field& E = locals[i].residue;
    i64 sz = K.size();
    int d = 0;
    i64 acc = 1;
    while (acc < sz) {
        acc *= E.q();
        ++d;
    }
    if (acc != sz) throw TheoremViolation("maximal-morphism space size is not a power of |E_i|");
    lm.dim = d;
    std::vector<GrpMap> basis;
    SpanBasis spanSoFar = SpanBasis::zero(H.group);
    for (int t = 0; t < K.nrows() && (int)basis.size() < d; ++t) {
        Vec row = K.naturalRow(t);
        if (spanSoFar.contains(row)) continue;
        GrpMap f = H.mapOf(row);
        basis.push_back(f);
        std::vector<Vec> gens = spanSoFar.naturalRows();
        for (i64 ei = 0; ei < E.q(); ++ei) {
            GrpMap lift = locals[i].liftResidue(E.el(ei));
            GrpMap scaledMap = lift.compose(f);
            gens.push_back(H.coordsOf(scaledMap));
        }
        spanSoFar = SpanBasis::span(H.group, gens);
    }
    if ((int)basis.size() != d) throw TheoremViolation("could not extract an E_i-basis of the maximal-morphism space");
    lm.basisOverE = std::move(basis);
    return lm;
}

}  // namespace

LMSpace lmMorphisms(const std::vector<RModule>& ctx, const std::vector<LocalData>& locals, int j, int i) {
    return maximalMorphisms(ctx, locals, j, i, true);
}

LMSpace rmMorphisms(const std::vector<RModule>& ctx, const std::vector<LocalData>& locals, int j, int i) {
    return maximalMorphisms(ctx, locals, j, i, false);
}

// ---- submodules ---------------------------------------------------------------

SpanBasis submoduleClosure(const RModule& M, const std::vector<Vec>& gens) {
    SpanBasis S = SpanBasis::span(M.add, gens);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Vec> next = S.naturalRows();
        for (const auto& r : S.naturalRows())
            for (const auto& a : M.action) {
                Vec y = a.apply(r);
                if (!S.contains(y)) {
                    next.push_back(y);
                    changed = true;
                }
            }
        if (changed) S = SpanBasis::span(M.add, next);
    }
    return S;
}

std::vector<SpanBasis> allSubmodules(const RModule& M, i64 cap) {
    if (cap <= 0) cap = limits().max_submodules;
    std::map<std::string, SpanBasis> cyclics;
    for (const auto& m : M.add.elements()) {
        if (M.add.isZero(m)) continue;
        SpanBasis c = submoduleClosure(M, {m});
        cyclics.emplace(c.key(), c);
    }
    std::map<std::string, SpanBasis> all;
    SpanBasis z = SpanBasis::zero(M.add);
    all.emplace(z.key(), z);
    std::vector<SpanBasis> queue = {z};
    while (!queue.empty()) {
        SpanBasis s = queue.back();
        queue.pop_back();
        for (const auto& [k, c] : cyclics) {
            SpanBasis t = s.join(c);
            if (all.emplace(t.key(), t).second) {
                if ((i64)all.size() > cap) throw CapError("allSubmodules: submodule count exceeds cap");
                queue.push_back(t);
            }
        }
    }
    std::vector<SpanBasis> out;
    for (auto& [k, v] : all) out.push_back(v);
    std::sort(out.begin(), out.end(), [](const SpanBasis& a, const SpanBasis& b) {
        return std::make_tuple(a.size(), a.key()) < std::make_tuple(b.size(), b.key());
    });
    return out;
}

RModule quotientModule(const RModule& M, const SpanBasis& S, la::Cokernel* ckOut) {
    la::Cokernel ck = la::cokernel(S);
    RModule Q;
    Q.ring = M.ring;
    Q.add = ck.group;
    for (const auto& a : M.action) {
        std::vector<Vec> cols;
        for (int j = 0; j < Q.add.rank(); ++j) cols.push_back(ck.proj.apply(a.apply(ck.section(Q.add.unit(j)))));
        Q.action.push_back(mapFromColumns(Q.add, Q.add, cols, false));
    }
    if (ckOut) *ckOut = ck;
    return Q;
}

RModule submoduleAsModule(const RModule& M, const SpanBasis& S, la::SubgroupView* svOut) {
    la::SubgroupView sv = la::subgroupView(S);
    RModule U;
    U.ring = M.ring;
    U.add = sv.group;
    for (const auto& a : M.action) {
        std::vector<Vec> cols;
        for (int j = 0; j < U.add.rank(); ++j) cols.push_back(sv.coords(a.apply(sv.incl.apply(U.add.unit(j)))));
        U.action.push_back(mapFromColumns(U.add, U.add, cols, false));
    }
    if (svOut) *svOut = sv;
    return U;
}

// ---- tilde ring ----------------------------------------------------------------

TildeData buildTildeRing(const RModule& M, const GrpMap& xMap) {
    const Ring& R = M.ring;
    const int r = R->rank();
    const PGroup& Ra = R->add;
    PGroup tensor(Ra.p, {});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) tensor.exps.push_back(std::min(Ra.exps[i], Ra.exps[j]));
    PGroup addT = la::directSum(Ra, tensor);
    const int rt = addT.rank();
    auto tIdx = [&](int i, int j) { return r + i * r + j; };
    std::vector<std::vector<Vec>> mult(rt, std::vector<Vec>(rt, addT.zero()));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Vec v = addT.zero();
            const Vec& prod = R->mult[i][j];
            for (int u = 0; u < r; ++u) v[u] = prod[u];
            mult[i][j] = addT.reduce(v);
        }
    for (int s = 0; s < r; ++s)
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                Vec v1 = addT.zero();
                const Vec& si = R->mult[s][i];
                for (int t = 0; t < r; ++t) v1[tIdx(t, j)] = si[t];
                mult[s][tIdx(i, j)] = addT.reduce(v1);
                Vec v2 = addT.zero();
                const Vec& js = R->mult[j][s];
                for (int t = 0; t < r; ++t) v2[tIdx(i, t)] = js[t];
                mult[tIdx(i, j)][s] = addT.reduce(v2);
            }
    Vec unit = addT.zero();
    for (int u = 0; u < r; ++u) unit[u] = R->unit[u];
    TildeData td;
    td.tilde = makeRing(addT, std::move(mult), unit);
    td.xMap = xMap;
    RModule Mt;
    Mt.ring = td.tilde;
    Mt.add = M.add;
    for (int i = 0; i < r; ++i) Mt.action.push_back(M.action[i]);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) Mt.action.push_back(M.action[i].compose(xMap).compose(M.action[j]));
    Mt.validate();
    td.moduleTilde = Mt;
    return td;
}

}  // namespace modrep::alg
