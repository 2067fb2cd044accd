#include "modrep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace modrep::la {

namespace {

i64 mod_norm(i64 x, i64 m) {
    if (m == 1) return 0;
    x %= m;
    if (x < 0) x += m;
    return x;
}

int log_p(i64 n, i64 p) {
    int l = 0;
    while (n > 1) { n /= p; ++l; }
    return l;
}

bool rowIsZero(const Vec& v) {
    for (i64 x : v)
        if (x != 0) return false;
    return true;
}

void rowSubMul(Vec& s, i64 q, const Vec& r, i64 m) {
    for (size_t j = 0; j < s.size(); ++j) s[j] = mod_norm(s[j] - (i128)q % m * r[j] % m, m);
}

void rowScale(Vec& s, i64 c, i64 m) {
    for (auto& x : s) x = mod_norm((i128)x * c % m, m);
}

}  // namespace

void Mat::setRow(int i, const Vec& v) {
    for (int j = 0; j < c; ++j) at(i, j) = v[j];
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::fromRows(const std::vector<Vec>& rows, int ncols) {
    Mat m(static_cast<int>(rows.size()), ncols);
    for (int i = 0; i < m.r; ++i) m.setRow(i, rows[i]);
    return m;
}

i64 invMod(i64 u, i64 mod) {
    // extended euclid; u must be a unit
    i64 a = mod_norm(u, mod), b = mod, x0 = 1, x1 = 0;
    while (b != 0) {
        i64 q = a / b;
        i64 t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
    }
    if (a != 1) throw InvalidInput("invMod: not a unit");
    return mod_norm(x0, mod);
}

int PGroup::lmax() const {
    int l = 0;
    for (int e : exps) l = std::max(l, e);
    return l;
}

i64 PGroup::order() const {
    if (log2Order() > 62) throw CapError("group order exceeds 2^62");
    i64 o = 1;
    for (int e : exps) {
        o *= ipow(p, e);
        if (o > limits().max_group_order) throw CapError("group order exceeds cap");
    }
    return o;
}

double PGroup::log2Order() const {
    double s = 0;
    for (int e : exps) s += e * std::log2((double)p);
    return s;
}

Vec PGroup::unit(int j) const {
    Vec v = zero();
    v[j] = 1;
    return v;
}

Vec PGroup::reduce(Vec v) const {
    for (int j = 0; j < rank(); ++j) v[j] = mod_norm(v[j], coordMod(j));
    return v;
}

bool PGroup::isZero(const Vec& v) const {
    for (int j = 0; j < rank(); ++j)
        if (mod_norm(v[j], coordMod(j)) != 0) return false;
    return true;
}

Vec PGroup::add(const Vec& x, const Vec& y) const {
    Vec v(rank());
    for (int j = 0; j < rank(); ++j) v[j] = mod_norm(x[j] + y[j], coordMod(j));
    return v;
}

Vec PGroup::sub(const Vec& x, const Vec& y) const {
    Vec v(rank());
    for (int j = 0; j < rank(); ++j) v[j] = mod_norm(x[j] - y[j], coordMod(j));
    return v;
}

Vec PGroup::neg(const Vec& x) const {
    Vec v(rank());
    for (int j = 0; j < rank(); ++j) v[j] = mod_norm(-x[j], coordMod(j));
    return v;
}

Vec PGroup::smul(i64 c, const Vec& x) const {
    Vec v(rank());
    for (int j = 0; j < rank(); ++j) v[j] = mod_norm((i128)c * x[j] % coordMod(j), coordMod(j));
    return v;
}

i64 PGroup::indexOf(const Vec& v) const {
    i64 idx = 0;
    for (int j = 0; j < rank(); ++j) idx = idx * coordMod(j) + mod_norm(v[j], coordMod(j));
    return idx;
}

Vec PGroup::elementAt(i64 idx) const {
    Vec v(rank());
    for (int j = rank() - 1; j >= 0; --j) {
        v[j] = idx % coordMod(j);
        idx /= coordMod(j);
    }
    return v;
}

std::vector<Vec> PGroup::elements() const {
    i64 n = order();
    std::vector<Vec> out;
    out.reserve(n);
    for (i64 i = 0; i < n; ++i) out.push_back(elementAt(i));
    return out;
}

PGroup directSum(const PGroup& A, const PGroup& B) {
    if (A.rank() && B.rank() && A.p != B.p) throw InvalidInput("directSum: prime mismatch");
    PGroup S;
    S.p = A.rank() ? A.p : B.p;
    S.exps = A.exps;
    S.exps.insert(S.exps.end(), B.exps.begin(), B.exps.end());
    return S;
}

PGroup directPow(const PGroup& A, int n) {
    PGroup S;
    S.p = A.p;
    for (int i = 0; i < n; ++i) S.exps.insert(S.exps.end(), A.exps.begin(), A.exps.end());
    return S;
}

GrpMap::GrpMap(PGroup d, PGroup c, Mat mm, bool validate) : dom(std::move(d)), cod(std::move(c)), m(std::move(mm)) {
    if (m.r != cod.rank() || m.c != dom.rank()) throw InvalidInput("GrpMap: shape mismatch");
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) m.at(i, j) = mod_norm(m.at(i, j), cod.coordMod(i));
    if (validate && !wellDefined()) throw InvalidInput("GrpMap: not well defined (divisibility fails)");
}

bool GrpMap::wellDefined() const {
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) {
            int need = std::max(0, cod.exps[i] - dom.exps[j]);
            if (mod_norm(m.at(i, j), ipow(dom.p, need)) != 0) return false;
        }
    return true;
}

Vec GrpMap::apply(const Vec& x) const {
    Vec y(cod.rank(), 0);
    for (int i = 0; i < cod.rank(); ++i) {
        i128 s = 0;
        for (int j = 0; j < dom.rank(); ++j) s += (i128)m.at(i, j) * x[j];
        y[i] = mod_norm((i64)(s % cod.coordMod(i)), cod.coordMod(i));
    }
    return y;
}

GrpMap GrpMap::compose(const GrpMap& inner) const {
    if (!(inner.cod == dom)) throw InvalidInput("compose: domain mismatch");
    Mat r(cod.rank(), inner.dom.rank());
    for (int i = 0; i < cod.rank(); ++i)
        for (int k = 0; k < inner.dom.rank(); ++k) {
            i128 s = 0;
            for (int j = 0; j < dom.rank(); ++j) s += (i128)m.at(i, j) * inner.m.at(j, k);
            r.at(i, k) = mod_norm((i64)(s % cod.coordMod(i)), cod.coordMod(i));
        }
    return GrpMap(inner.dom, cod, std::move(r), false);
}

GrpMap GrpMap::add(const GrpMap& g) const {
    Mat r = m;
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) r.at(i, j) = mod_norm(r.at(i, j) + g.m.at(i, j), cod.coordMod(i));
    return GrpMap(dom, cod, std::move(r), false);
}

GrpMap GrpMap::scaled(i64 c) const {
    Mat r = m;
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) r.at(i, j) = mod_norm((i128)c * r.at(i, j) % cod.coordMod(i), cod.coordMod(i));
    return GrpMap(dom, cod, std::move(r), false);
}

bool GrpMap::isZero() const {
    for (i64 x : m.a)
        if (x != 0) return false;
    return true;
}

GrpMap GrpMap::zero(const PGroup& d, const PGroup& c) { return GrpMap(d, c, Mat(c.rank(), d.rank()), false); }

GrpMap GrpMap::identity(const PGroup& A) { return GrpMap(A, A, Mat::identity(A.rank()), false); }

Mat GrpMap::lifted(int L) const {
    i64 N = ipow(dom.p, L);
    Mat r(m.r, m.c);
    for (int i = 0; i < m.r; ++i) {
        i64 s = ipow(dom.p, L - cod.exps[i]);
        for (int j = 0; j < m.c; ++j) r.at(i, j) = mod_norm((i128)s * m.at(i, j) % N, N);
    }
    return r;
}

Mat howellForm(const Mat& rowsIn, i64 mod, i64 p) {
    if (mod == 1 || rowsIn.c == 0) return Mat(0, rowsIn.c);
    const int L = log_p(mod, p);
    std::vector<Vec> work;
    for (int i = 0; i < rowsIn.r; ++i) {
        Vec v = rowsIn.row(i);
        for (auto& x : v) x = mod_norm(x, mod);
        if (!rowIsZero(v)) work.push_back(std::move(v));
    }
    std::vector<Vec> out;
    std::vector<int> pivcol, pivval;
    for (int col = 0; col < rowsIn.c; ++col) {
        int best = -1, bestv = L + 1;
        for (size_t i = 0; i < work.size(); ++i) {
            if (work[i][col] == 0) continue;
            int v = valuation(work[i][col], p, L);
            if (v < bestv) { bestv = v; best = static_cast<int>(i); }
        }
        if (best < 0) continue;
        Vec r = work[best];
        work.erase(work.begin() + best);
        i64 piv = ipow(p, bestv);
        rowScale(r, invMod(r[col] / piv, mod), mod);
        for (auto& s : work) {
            if (s[col] == 0) continue;
            rowSubMul(s, s[col] / piv, r, mod);
        }
        work.erase(std::remove_if(work.begin(), work.end(), rowIsZero), work.end());
        if (bestv > 0) {
            Vec ann = r;
            rowScale(ann, mod / piv, mod);
            if (!rowIsZero(ann)) work.push_back(std::move(ann));
        }
        out.push_back(std::move(r));
        pivcol.push_back(col);
        pivval.push_back(bestv);
    }
    // reduce entries above each pivot modulo the pivot
    for (size_t k = 1; k < out.size(); ++k) {
        i64 piv = ipow(p, pivval[k]);
        for (size_t i = 0; i < k; ++i) {
            i64 q = out[i][pivcol[k]] / piv;
            if (q != 0) rowSubMul(out[i], q, out[k], mod);
        }
    }
    return Mat::fromRows(out, rowsIn.c);
}

namespace {

// reduce v against Howell rows h (pivot columns looked up on the fly),
// returning the reduced vector; coeffs, when non-null, receives the
// multiplier used for each row
Vec howellReduce(Vec v, const Mat& h, i64 mod, i64 p, int L, Vec* coeffs) {
    if (coeffs) coeffs->assign(h.r, 0);
    for (int k = 0; k < h.r; ++k) {
        int pc = -1;
        for (int j = 0; j < h.c; ++j)
            if (h.at(k, j) != 0) { pc = j; break; }
        if (pc < 0) continue;
        i64 piv = h.at(k, pc);  // p^v by canonical form
        if (v[pc] == 0) continue;
        int vv = valuation(piv, p, L);
        i64 q = v[pc] / ipow(p, vv);
        if (q == 0) continue;
        Vec hr = h.row(k);
        rowSubMul(v, q, hr, mod);
        if (coeffs) (*coeffs)[k] = q;
    }
    return v;
}

Vec scaleUp(const PGroup& A, const Vec& natural) {
    Vec v(A.rank());
    i64 N = A.mod();
    for (int j = 0; j < A.rank(); ++j) v[j] = mod_norm((i128)natural[j] * A.scale(j) % N, N);
    return v;
}

Vec scaleDown(const PGroup& A, const Vec& scaled) {
    Vec v(A.rank());
    for (int j = 0; j < A.rank(); ++j) {
        if (scaled[j] % A.scale(j) != 0) throw InvalidInput("scaleDown: vector not in scaled image");
        v[j] = mod_norm(scaled[j] / A.scale(j), A.coordMod(j));
    }
    return v;
}

}  // namespace

SpanBasis SpanBasis::span(const PGroup& ambient, const std::vector<Vec>& naturalGens) {
    Mat rows(static_cast<int>(naturalGens.size()), ambient.rank());
    for (size_t i = 0; i < naturalGens.size(); ++i) rows.setRow(static_cast<int>(i), scaleUp(ambient, naturalGens[i]));
    SpanBasis s;
    s.ambient = ambient;
    s.rows = howellForm(rows, ambient.mod(), ambient.p);
    return s;
}

SpanBasis SpanBasis::zero(const PGroup& ambient) {
    SpanBasis s;
    s.ambient = ambient;
    s.rows = Mat(0, ambient.rank());
    return s;
}

SpanBasis SpanBasis::full(const PGroup& ambient) {
    std::vector<Vec> gens;
    for (int j = 0; j < ambient.rank(); ++j) gens.push_back(ambient.unit(j));
    return span(ambient, gens);
}

i64 SpanBasis::size() const {
    const int L = ambient.lmax();
    i64 s = 1;
    for (int k = 0; k < rows.r; ++k) {
        int pc = -1;
        for (int j = 0; j < rows.c; ++j)
            if (rows.at(k, j) != 0) { pc = j; break; }
        int v = valuation(rows.at(k, pc), ambient.p, L);
        s *= ipow(ambient.p, L - v);
        if (s > limits().max_group_order) throw CapError("subgroup size exceeds cap");
    }
    return s;
}

bool SpanBasis::contains(const Vec& natural) const {
    Vec v = howellReduce(scaleUp(ambient, natural), rows, ambient.mod(), ambient.p, ambient.lmax(), nullptr);
    return rowIsZero(v);
}

Vec SpanBasis::naturalRow(int i) const { return scaleDown(ambient, rows.row(i)); }

std::vector<Vec> SpanBasis::naturalRows() const {
    std::vector<Vec> out;
    for (int i = 0; i < rows.r; ++i) out.push_back(naturalRow(i));
    return out;
}

std::vector<Vec> SpanBasis::elementsNatural() const {
    i64 n = size();
    const int L = ambient.lmax();
    std::vector<i64> orders(rows.r);
    for (int k = 0; k < rows.r; ++k) {
        int pc = 0;
        while (rows.at(k, pc) == 0) ++pc;
        orders[k] = ipow(ambient.p, L - valuation(rows.at(k, pc), ambient.p, L));
    }
    std::vector<Vec> out;
    out.reserve(n);
    Vec ctr(rows.r, 0);
    while (true) {
        Vec acc = ambient.zero();
        for (int k = 0; k < rows.r; ++k)
            if (ctr[k]) acc = ambient.add(acc, ambient.smul(ctr[k], naturalRow(k)));
        out.push_back(acc);
        int k = rows.r - 1;
        while (k >= 0) {
            if (++ctr[k] < orders[k]) break;
            ctr[k] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return out;
}

SpanBasis SpanBasis::join(const SpanBasis& other) const {
    Mat stack(rows.r + other.rows.r, rows.c);
    for (int i = 0; i < rows.r; ++i) stack.setRow(i, rows.row(i));
    for (int i = 0; i < other.rows.r; ++i) stack.setRow(rows.r + i, other.rows.row(i));
    SpanBasis s;
    s.ambient = ambient;
    s.rows = howellForm(stack, ambient.mod(), ambient.p);
    return s;
}

SpanBasis SpanBasis::intersect(const SpanBasis& other) const {
    // left kernel of [S; T]: pairs (a,b) with a*S = -b*T; intersection = {a*S}
    const i64 N = ambient.mod();
    const int n = ambient.rank(), k1 = rows.r, k2 = other.rows.r;
    Mat aug(k1 + k2, n + k1 + k2);
    for (int i = 0; i < k1; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = rows.at(i, j);
        aug.at(i, n + i) = 1;
    }
    for (int i = 0; i < k2; ++i) {
        for (int j = 0; j < n; ++j) aug.at(k1 + i, j) = other.rows.at(i, j);
        aug.at(k1 + i, n + k1 + i) = 1;
    }
    Mat h = howellForm(aug, N, ambient.p);
    std::vector<Vec> gens;  // scaled-coordinate generators of the intersection
    for (int i = 0; i < h.r; ++i) {
        bool zfront = true;
        for (int j = 0; j < n; ++j)
            if (h.at(i, j) != 0) { zfront = false; break; }
        if (!zfront) continue;
        Vec g(n, 0);
        for (int t = 0; t < k1; ++t) {
            i64 cft = h.at(i, n + t);
            if (!cft) continue;
            for (int j = 0; j < n; ++j) g[j] = mod_norm(g[j] + (i128)cft * rows.at(t, j) % N, N);
        }
        gens.push_back(std::move(g));
    }
    SpanBasis s;
    s.ambient = ambient;
    s.rows = howellForm(Mat::fromRows(gens, n), N, ambient.p);
    return s;
}

bool SpanBasis::subsetOf(const SpanBasis& other) const {
    for (int i = 0; i < rows.r; ++i) {
        Vec v = howellReduce(rows.row(i), other.rows, ambient.mod(), ambient.p, ambient.lmax(), nullptr);
        if (!rowIsZero(v)) return false;
    }
    return true;
}

std::string SpanBasis::key() const {
    std::ostringstream os;
    os << rows.r << ';';
    for (i64 x : rows.a) os << x << ',';
    return os.str();
}

namespace {

// rows of [C | I] howellized; C = lifted(f)^T so that the left kernel of C is
// the set of t with f(t mod exps) = 0
struct AugHowell {
    Mat h;
    int leftCols;
};

AugHowell augmentedHowell(const Mat& C, i64 N, i64 p) {
    Mat aug(C.r, C.c + C.r);
    for (int i = 0; i < C.r; ++i) {
        for (int j = 0; j < C.c; ++j) aug.at(i, j) = C.at(i, j);
        aug.at(i, C.c + i) = 1;
    }
    AugHowell a;
    a.h = howellForm(aug, N, p);
    a.leftCols = C.c;
    return a;
}

}  // namespace

SpanBasis kernel(const GrpMap& f) {
    const int L = std::max(f.dom.lmax(), f.cod.lmax());
    const i64 N = ipow(f.dom.p, L);
    if (f.dom.rank() == 0) return SpanBasis::zero(f.dom);
    Mat lift = f.lifted(L);
    // C rows = columns of lift
    Mat C(f.dom.rank(), f.cod.rank());
    for (int i = 0; i < lift.r; ++i)
        for (int j = 0; j < lift.c; ++j) C.at(j, i) = lift.at(i, j);
    AugHowell a = augmentedHowell(C, N, f.dom.p);
    std::vector<Vec> gens;
    for (int i = 0; i < a.h.r; ++i) {
        bool zfront = true;
        for (int j = 0; j < a.leftCols; ++j)
            if (a.h.at(i, j) != 0) { zfront = false; break; }
        if (!zfront) continue;
        Vec t(f.dom.rank());
        for (int j = 0; j < f.dom.rank(); ++j) t[j] = a.h.at(i, a.leftCols + j);
        gens.push_back(f.dom.reduce(t));
    }
    // relation vectors p^{e_j} e_j are solutions too but reduce to 0 naturally
    return SpanBasis::span(f.dom, gens);
}

SpanBasis image(const GrpMap& f) {
    std::vector<Vec> gens;
    for (int j = 0; j < f.dom.rank(); ++j) gens.push_back(f.apply(f.dom.unit(j)));
    return SpanBasis::span(f.cod, gens);
}

std::optional<Vec> solve(const GrpMap& f, const Vec& b) {
    const int L = std::max(f.dom.lmax(), f.cod.lmax());
    const i64 N = ipow(f.dom.p, L);
    if (f.cod.isZero(b)) return f.dom.zero();
    if (f.dom.rank() == 0) return std::nullopt;
    Mat lift = f.lifted(L);
    Mat C(f.dom.rank(), f.cod.rank());
    for (int i = 0; i < lift.r; ++i)
        for (int j = 0; j < lift.c; ++j) C.at(j, i) = lift.at(i, j);
    AugHowell a = augmentedHowell(C, N, f.dom.p);
    // scaled target
    Vec bs(f.cod.rank());
    for (int i = 0; i < f.cod.rank(); ++i) bs[i] = mod_norm((i128)b[i] * ipow(f.dom.p, L - f.cod.exps[i]) % N, N);
    // reduce bs against the left block of the howell rows
    Vec coeffs(a.h.r, 0);
    Vec v = bs;
    for (int k = 0; k < a.h.r; ++k) {
        int pc = -1;
        for (int j = 0; j < a.leftCols; ++j)
            if (a.h.at(k, j) != 0) { pc = j; break; }
        if (pc < 0) continue;  // row supported on augmentation only
        // check this really is the row's pivot (nothing earlier in augmented part matters)
        i64 piv = a.h.at(k, pc);
        int vv = valuation(piv, f.dom.p, L);
        if (v[pc] == 0) continue;
        i64 q = v[pc] / ipow(f.dom.p, vv);
        if (q == 0) continue;
        coeffs[k] = q;
        for (int j = 0; j < a.leftCols; ++j) v[j] = mod_norm(v[j] - (i128)q * a.h.at(k, j) % N, N);
    }
    if (!rowIsZero(v)) return std::nullopt;
    Vec t(f.dom.rank(), 0);
    for (int k = 0; k < a.h.r; ++k) {
        if (!coeffs[k]) continue;
        for (int j = 0; j < f.dom.rank(); ++j) t[j] = mod_norm(t[j] + (i128)coeffs[k] * a.h.at(k, a.leftCols + j) % N, N);
    }
    Vec x = f.dom.reduce(t);
    if (f.apply(x) != f.cod.reduce(b)) return std::nullopt;
    return x;
}

SpanBasis preimage(const GrpMap& f, const SpanBasis& S) {
    Cokernel ck = cokernel(S);
    return kernel(ck.proj.compose(f));
}

Smith smithLocal(Mat A, i64 mod, i64 p, int L) {
    Smith s;
    const int m = A.r, k = A.c;
    s.U = Mat::identity(m);
    s.Uinv = Mat::identity(m);
    int t = 0;
    auto rowOpU = [&](int dst, i64 q, int src) {
        // row_dst -= q*row_src on A and U; Uinv col_src += q*col_dst
        for (int j = 0; j < k; ++j) A.at(dst, j) = mod_norm(A.at(dst, j) - (i128)q * A.at(src, j) % mod, mod);
        for (int j = 0; j < m; ++j) s.U.at(dst, j) = mod_norm(s.U.at(dst, j) - (i128)q * s.U.at(src, j) % mod, mod);
        for (int i = 0; i < m; ++i) s.Uinv.at(i, src) = mod_norm(s.Uinv.at(i, src) + (i128)q * s.Uinv.at(i, dst) % mod, mod);
    };
    while (t < m && t < k) {
        int bi = -1, bj = -1, bv = L + 1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < k; ++j) {
                if (A.at(i, j) == 0) continue;
                int v = valuation(A.at(i, j), p, L);
                if (v < bv) { bv = v; bi = i; bj = j; }
            }
        if (bi < 0) break;
        // swap rows t,bi (track), swap cols t,bj (untracked)
        if (bi != t) {
            for (int j = 0; j < k; ++j) std::swap(A.at(t, j), A.at(bi, j));
            for (int j = 0; j < m; ++j) std::swap(s.U.at(t, j), s.U.at(bi, j));
            for (int i = 0; i < m; ++i) std::swap(s.Uinv.at(i, t), s.Uinv.at(i, bi));
        }
        if (bj != t)
            for (int i = 0; i < m; ++i) std::swap(A.at(i, t), A.at(i, bj));
        i64 piv = ipow(p, bv);
        i64 u = A.at(t, t) / piv;
        i64 ui = invMod(u, mod);
        // scale row t by ui
        for (int j = 0; j < k; ++j) A.at(t, j) = mod_norm((i128)A.at(t, j) * ui % mod, mod);
        for (int j = 0; j < m; ++j) s.U.at(t, j) = mod_norm((i128)s.U.at(t, j) * ui % mod, mod);
        for (int i = 0; i < m; ++i) s.Uinv.at(i, t) = mod_norm((i128)s.Uinv.at(i, t) * u % mod, mod);
        for (int i = t + 1; i < m; ++i) {
            if (A.at(i, t) == 0) continue;
            rowOpU(i, A.at(i, t) / piv, t);
        }
        for (int j = t + 1; j < k; ++j) {
            if (A.at(t, j) == 0) continue;
            i64 q = A.at(t, j) / piv;
            for (int i = 0; i < m; ++i) A.at(i, j) = mod_norm(A.at(i, j) - (i128)q * A.at(i, t) % mod, mod);
        }
        s.vals.push_back(bv);
        ++t;
    }
    return s;
}

Cokernel cokernel(const SpanBasis& S) {
    const PGroup& B = S.ambient;
    const int m = B.rank();
    const i64 N = B.mod();
    const int L = B.lmax();
    // relation columns: generators of S (natural) and p^{f_i} e_i
    int k = S.nrows() + m;
    Mat A(m, k);
    for (int t = 0; t < S.nrows(); ++t) {
        Vec g = S.naturalRow(t);
        for (int i = 0; i < m; ++i) A.at(i, t) = g[i];
    }
    for (int i = 0; i < m; ++i) A.at(i, S.nrows() + i) = mod_norm(ipow(B.p, B.exps[i]), N);
    Smith sm = smithLocal(A, N, B.p, L);
    std::vector<int> qexp(m, L);  // missing pivots mean relation p^L = 0, i.e. full factor
    for (size_t t = 0; t < sm.vals.size(); ++t) qexp[t] = sm.vals[t];
    std::vector<int> keep;
    for (int t = 0; t < m; ++t)
        if (qexp[t] >= 1) keep.push_back(t);
    Cokernel ck;
    ck.group.p = B.p;
    for (int t : keep) ck.group.exps.push_back(qexp[t]);
    Mat proj(static_cast<int>(keep.size()), m);
    for (size_t r = 0; r < keep.size(); ++r)
        for (int j = 0; j < m; ++j) proj.at(static_cast<int>(r), j) = sm.U.at(keep[r], j);
    ck.proj = GrpMap(B, ck.group, std::move(proj));
    ck.sectionCols = Mat(m, static_cast<int>(keep.size()));
    for (size_t c = 0; c < keep.size(); ++c)
        for (int i = 0; i < m; ++i) ck.sectionCols.at(i, static_cast<int>(c)) = sm.Uinv.at(i, keep[c]);
    return ck;
}

Vec Cokernel::section(const Vec& q) const {
    const PGroup& B = proj.dom;
    Vec x(B.rank(), 0);
    for (int i = 0; i < B.rank(); ++i) {
        i128 s = 0;
        for (int c = 0; c < group.rank(); ++c) s += (i128)sectionCols.at(i, c) * q[c];
        x[i] = mod_norm((i64)(s % B.coordMod(i)), B.coordMod(i));
    }
    return x;
}

Cokernel cokernelOfMap(const GrpMap& f) { return cokernel(image(f)); }

SubgroupView subgroupView(const SpanBasis& S) {
    const PGroup& B = S.ambient;
    const int k = S.nrows();
    const int L = B.lmax();
    const i64 N = B.mod();
    SubgroupView sv;
    if (k == 0) {
        sv.group = PGroup(B.p, {});
        sv.incl = GrpMap(sv.group, B, Mat(B.rank(), 0), false);
        return sv;
    }
    // phi: (Z/p^L)^k -> B, t -> sum t_i * gen_i ; S ≅ (Z/p^L)^k / ker(phi)
    PGroup free(B.p, std::vector<int>(k, L));
    Mat phiM(B.rank(), k);
    for (int t = 0; t < k; ++t) {
        Vec g = S.naturalRow(t);
        for (int i = 0; i < B.rank(); ++i) phiM.at(i, t) = g[i];
    }
    GrpMap phi(free, B, phiM);
    SpanBasis K = kernel(phi);
    Mat A(k, K.nrows());
    for (int t = 0; t < K.nrows(); ++t) {
        Vec g = K.naturalRow(t);
        for (int i = 0; i < k; ++i) A.at(i, t) = g[i];
    }
    Smith sm = smithLocal(A, N, B.p, L);
    std::vector<int> qexp(k, L);
    for (size_t t = 0; t < sm.vals.size(); ++t) qexp[t] = sm.vals[t];
    std::vector<int> keep;
    for (int t = 0; t < k; ++t)
        if (qexp[t] >= 1) keep.push_back(t);
    sv.group.p = B.p;
    for (int t : keep) sv.group.exps.push_back(qexp[t]);
    Mat inclM(B.rank(), static_cast<int>(keep.size()));
    for (size_t c = 0; c < keep.size(); ++c) {
        // generator = phi(Uinv * e_{keep[c]})
        Vec t(k);
        for (int i = 0; i < k; ++i) t[i] = sm.Uinv.at(i, keep[c]);
        Vec g = phi.apply(t);
        for (int i = 0; i < B.rank(); ++i) inclM.at(i, static_cast<int>(c)) = g[i];
    }
    sv.incl = GrpMap(sv.group, B, std::move(inclM));
    return sv;
}

Vec SubgroupView::coords(const Vec& naturalAmbientElt) const {
    auto x = solve(incl, naturalAmbientElt);
    if (!x) throw InvalidInput("SubgroupView::coords: element not in subgroup");
    return *x;
}

HomGroup homGroup(const PGroup& A, const PGroup& B) {
    if (A.rank() && B.rank() && A.p != B.p) throw InvalidInput("homGroup: prime mismatch");
    HomGroup h;
    h.dom = A;
    h.cod = B;
    h.group.p = A.rank() ? A.p : B.p;
    for (int i = 0; i < B.rank(); ++i)
        for (int j = 0; j < A.rank(); ++j) h.group.exps.push_back(std::min(A.exps[j], B.exps[i]));
    return h;
}

GrpMap HomGroup::mapOf(const Vec& coords) const {
    Mat m(cod.rank(), dom.rank());
    int t = 0;
    for (int i = 0; i < cod.rank(); ++i)
        for (int j = 0; j < dom.rank(); ++j, ++t) {
            i64 s = ipow(dom.p, std::max(0, cod.exps[i] - dom.exps[j]));
            m.at(i, j) = mod_norm((i128)s * coords[t] % cod.coordMod(i), cod.coordMod(i));
        }
    return GrpMap(dom, cod, std::move(m), false);
}

Vec HomGroup::coordsOf(const GrpMap& f) const {
    Vec c(group.rank());
    int t = 0;
    for (int i = 0; i < cod.rank(); ++i)
        for (int j = 0; j < dom.rank(); ++j, ++t) {
            i64 s = ipow(dom.p, std::max(0, cod.exps[i] - dom.exps[j]));
            if (f.m.at(i, j) % s != 0) throw InvalidInput("coordsOf: map not well defined");
            c[t] = mod_norm(f.m.at(i, j) / s, group.coordMod(t));
        }
    return c;
}

}  // namespace modrep::la

namespace modrep {
Limits& limits() {
    static Limits l;
    return l;
}
}  // namespace modrep
