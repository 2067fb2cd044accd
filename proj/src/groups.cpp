#include "modrep/groups.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace modrep::grp {

using la::GrpMap;
using la::Mat;
using la::PGroup;
using la::Vec;

namespace {

constexpr int kTableCap = 2048;

i64 mod_norm(i64 x, i64 m) {
    x %= m;
    if (x < 0) x += m;
    return x;
}

std::string matKey(const Mat& m) {
    std::ostringstream os;
    os << m.r << 'x' << m.c << ':';
    for (i64 x : m.a) os << x << ',';
    return os.str();
}

Mat composeMats(const PGroup& sp, const Mat& A, const Mat& B) {
    const int n = sp.rank();
    Mat C(n, n);
    for (int i = 0; i < n; ++i) {
        const i64 m = sp.coordMod(i);
        for (int j = 0; j < n; ++j) {
            i128 s = 0;
            for (int t = 0; t < n; ++t) s += (i128)A.at(i, t) * B.at(t, j);
            C.at(i, j) = mod_norm((i64)(s % m), m);
        }
    }
    return C;
}

Mat reduceMat(const PGroup& sp, Mat m) {
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) m.at(i, j) = mod_norm(m.at(i, j), sp.coordMod(i));
    return m;
}

// ---- F_ell polynomial helpers (ell can exceed int range of small p kit) ----

using LPoly = std::vector<i64>;

LPoly lpTrim(LPoly f, i64 q) {
    for (auto& x : f) x = mod_norm(x, q);
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

LPoly lpMul(const LPoly& f, const LPoly& g, i64 q) {
    if (f.empty() || g.empty()) return {};
    LPoly h(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) h[i + j] = mod_norm(h[i + j] + (i128)f[i] * g[j] % q, q);
    return lpTrim(h, q);
}

LPoly lpMod(LPoly f, const LPoly& g, i64 q) {
    f = lpTrim(f, q);
    const int dg = static_cast<int>(g.size()) - 1;
    i64 lcInv = la::invMod(g.back(), q);
    while ((int)f.size() - 1 >= dg) {
        int df = static_cast<int>(f.size()) - 1;
        i64 c = (i128)f.back() * lcInv % q;
        for (int i = 0; i <= dg; ++i) f[df - dg + i] = mod_norm(f[df - dg + i] - (i128)c * g[i] % q, q);
        f = lpTrim(f, q);
        if (f.empty()) break;
    }
    return f;
}

LPoly lpDiv(LPoly f, const LPoly& g, i64 q) {
    f = lpTrim(f, q);
    const int dg = static_cast<int>(g.size()) - 1;
    i64 lcInv = la::invMod(g.back(), q);
    LPoly out(std::max<int>((int)f.size() - dg, 0), 0);
    while ((int)f.size() - 1 >= dg) {
        int df = static_cast<int>(f.size()) - 1;
        i64 c = (i128)f.back() * lcInv % q;
        out[df - dg] = c;
        for (int i = 0; i <= dg; ++i) f[df - dg + i] = mod_norm(f[df - dg + i] - (i128)c * g[i] % q, q);
        f = lpTrim(f, q);
        if (f.empty()) break;
    }
    return lpTrim(out, q);
}

LPoly lpGcd(LPoly a, LPoly b, i64 q) {
    a = lpTrim(a, q);
    b = lpTrim(b, q);
    while (!b.empty()) {
        LPoly r = lpMod(a, b, q);
        a = b;
        b = r;
    }
    if (!a.empty()) {
        i64 inv = la::invMod(a.back(), q);
        for (auto& x : a) x = (i128)x * inv % q;
    }
    return a;
}

LPoly lpPowMod(LPoly base, i64 e, const LPoly& m, i64 q) {
    LPoly r = {1};
    base = lpMod(base, m, q);
    while (e > 0) {
        if (e & 1) r = lpMod(lpMul(r, base, q), m, q);
        base = lpMod(lpMul(base, base, q), m, q);
        e >>= 1;
    }
    return r;
}

// all roots of a polynomial that splits into distinct linear factors
void lpRoots(const LPoly& f, i64 q, std::mt19937& rng, std::vector<i64>& out) {
    if (f.size() <= 1) return;
    if (f.size() == 2) {
        out.push_back(mod_norm(-(i128)f[0] * la::invMod(f[1], q) % q, q));
        return;
    }
    for (int tries = 0; tries < 200; ++tries) {
        i64 a = rng() % q;
        LPoly shifted = {a, 1};  // x + a
        LPoly g = lpPowMod(shifted, (q - 1) / 2, f, q);
        if (g.empty()) continue;
        g[0] = mod_norm(g[0] - 1, q);
        g = lpTrim(g, q);
        LPoly d = lpGcd(g, f, q);
        if (d.size() > 1 && d.size() < f.size()) {
            lpRoots(d, q, rng, out);
            lpRoots(lpDiv(f, d, q), q, rng, out);
            return;
        }
    }
    throw InvalidInput("lpRoots: failed to split a totally split polynomial");
}

bool isPrime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

i64 powMod(i64 b, i64 e, i64 m) {
    i64 r = 1;
    b = mod_norm(b, m);
    while (e > 0) {
        if (e & 1) r = (i128)r * b % m;
        b = (i128)b * b % m;
        e >>= 1;
    }
    return r;
}

}  // namespace

int FiniteGroup::mul(int a, int b) const {
    if (!table.empty()) return table[a][b];
    Mat c = composeMats(space, mats[a], mats[b]);
    auto it = matIndex.find(matKey(c));
    if (it == matIndex.end()) throw InvalidInput("FiniteGroup::mul: product escaped the element set");
    return it->second;
}

int FiniteGroup::pow(int a, i64 e) const {
    int r = idIdx, b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

i64 FiniteGroup::elementOrder(int a) const {
    i64 o = 1;
    int x = a;
    while (x != idIdx) {
        x = mul(x, a);
        ++o;
    }
    return o;
}

i64 FiniteGroup::exponent() const {
    i64 e = 1;
    for (int a = 0; a < order(); ++a) e = std::lcm(e, elementOrder(a));
    return e;
}

int FiniteGroup::indexOfMat(const Mat& m) const {
    auto it = matIndex.find(matKey(reduceMat(space, m)));
    return it == matIndex.end() ? -1 : it->second;
}

GrpMap FiniteGroup::asMap(int a) const { return GrpMap(space, space, mats[a], false); }

FiniteGroup FiniteGroup::fromMats(const PGroup& space, std::vector<Mat> mats) {
    FiniteGroup G;
    G.space = space;
    for (auto& m : mats) m = reduceMat(space, m);
    std::sort(mats.begin(), mats.end(), [](const Mat& a, const Mat& b) { return a.a < b.a; });
    mats.erase(std::unique(mats.begin(), mats.end()), mats.end());
    G.mats = std::move(mats);
    const int n = static_cast<int>(G.mats.size());
    for (int i = 0; i < n; ++i) G.matIndex[matKey(G.mats[i])] = i;
    Mat id = Mat::identity(space.rank());
    auto it = G.matIndex.find(matKey(reduceMat(space, id)));
    if (it == G.matIndex.end()) throw InvalidInput("fromMats: identity missing");
    G.idIdx = it->second;
    if (n <= kTableCap) {
        G.table.assign(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Mat c = composeMats(space, G.mats[a], G.mats[b]);
                auto jt = G.matIndex.find(matKey(c));
                if (jt == G.matIndex.end()) throw InvalidInput("fromMats: not closed under composition");
                G.table[a][b] = jt->second;
            }
    }
    G.invTable.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        if (G.invTable[a] >= 0) continue;
        for (int b = 0; b < n; ++b)
            if (G.mul(a, b) == G.idIdx) {
                G.invTable[a] = b;
                G.invTable[b] = a;
                break;
            }
        if (G.invTable[a] < 0) throw InvalidInput("fromMats: missing inverse");
    }
    return G;
}

FiniteGroup FiniteGroup::fromTable(std::vector<std::vector<int>> table, int id) {
    FiniteGroup G;
    G.table = std::move(table);
    G.idIdx = id;
    const int n = static_cast<int>(G.table.size());
    G.invTable.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (G.table[a][b] == id) {
                G.invTable[a] = b;
                break;
            }
    for (int a = 0; a < n; ++a)
        if (G.invTable[a] < 0) throw InvalidInput("fromTable: missing inverse");
    return G;
}

FiniteGroup enumerateAut(const alg::RModule& M) {
    alg::RHom h = alg::homR(M, M);
    if (h.carrier.size() > limits().max_unit_group) throw CapError("enumerateAut: endomorphism ring too large");
    std::vector<Mat> mats;
    for (const auto& c : h.carrier.elementsNatural()) {
        GrpMap f = h.hom.mapOf(c);
        if (alg::isModuleIso(f)) mats.push_back(f.m);
    }
    return FiniteGroup::fromMats(M.add, std::move(mats));
}

i64 autOrderOnly(const alg::RModule& M) {
    alg::RHom h = alg::homR(M, M);
    if (h.carrier.size() > limits().max_unit_group) throw CapError("autOrderOnly: endomorphism ring too large");
    i64 n = 0;
    for (const auto& c : h.carrier.elementsNatural())
        if (alg::isModuleIso(h.hom.mapOf(c))) ++n;
    return n;
}

std::vector<int> closure(const FiniteGroup& G, std::vector<int> gens) {
    std::set<int> seen(gens.begin(), gens.end());
    seen.insert(G.idIdx);
    std::vector<int> queue(seen.begin(), seen.end());
    while (!queue.empty()) {
        int x = queue.back();
        queue.pop_back();
        for (int g : gens) {
            int y = G.mul(x, g);
            if (seen.insert(y).second) queue.push_back(y);
        }
    }
    return std::vector<int>(seen.begin(), seen.end());
}

std::vector<int> smallGeneratingSet(const FiniteGroup& G) {
    std::vector<int> gens;
    std::vector<int> cl = {G.idIdx};
    std::set<int> clSet(cl.begin(), cl.end());
    while ((int)cl.size() < G.order()) {
        int pick = -1;
        for (int a = 0; a < G.order(); ++a)
            if (!clSet.count(a)) { pick = a; break; }
        gens.push_back(pick);
        cl = closure(G, gens);
        clSet = std::set<int>(cl.begin(), cl.end());
    }
    return gens;
}

Subgroup makeSubgroup(const FiniteGroup& G, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Subgroup H;
    H.parent = &G;
    H.elems = elems;
    const int n = static_cast<int>(elems.size());
    for (int i = 0; i < n; ++i) H.fromParent[elems[i]] = i;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int c = G.mul(elems[a], elems[b]);
            auto it = H.fromParent.find(c);
            if (it == H.fromParent.end()) throw InvalidInput("makeSubgroup: not closed");
            t[a][b] = it->second;
        }
    auto idIt = H.fromParent.find(G.idIdx);
    if (idIt == H.fromParent.end()) throw InvalidInput("makeSubgroup: identity missing");
    H.group = FiniteGroup::fromTable(std::move(t), idIt->second);
    H.toParent = elems;
    return H;
}

ConjClasses conjClasses(const FiniteGroup& G) {
    const int n = G.order();
    std::vector<int> gens = smallGeneratingSet(G);
    std::vector<int> cls(n, -1);
    std::vector<std::vector<int>> classes;
    for (int a = 0; a < n; ++a) {
        if (cls[a] >= 0) continue;
        std::vector<int> orbit = {a};
        cls[a] = static_cast<int>(classes.size());
        std::vector<int> queue = {a};
        while (!queue.empty()) {
            int x = queue.back();
            queue.pop_back();
            for (int g : gens) {
                int y = G.mul(G.mul(g, x), G.inv(g));
                if (cls[y] < 0) {
                    cls[y] = cls[a];
                    orbit.push_back(y);
                    queue.push_back(y);
                }
            }
        }
        classes.push_back(std::move(orbit));
    }
    // order: identity class first, then by (size, minimal element)
    const int k = static_cast<int>(classes.size());
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> minEl(k);
    for (int c = 0; c < k; ++c) minEl[c] = *std::min_element(classes[c].begin(), classes[c].end());
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        bool ia = cls[G.idIdx] == a, ib = cls[G.idIdx] == b;
        if (ia != ib) return ia;
        if (classes[a].size() != classes[b].size()) return classes[a].size() < classes[b].size();
        return minEl[a] < minEl[b];
    });
    ConjClasses out;
    out.classOf.assign(n, -1);
    std::vector<int> inew(k);
    for (int c = 0; c < k; ++c) inew[perm[c]] = c;
    out.rep.resize(k);
    out.size.resize(k);
    for (int c = 0; c < k; ++c) {
        out.rep[c] = minEl[perm[c]];
        out.size[c] = static_cast<i64>(classes[perm[c]].size());
    }
    for (int a = 0; a < n; ++a) out.classOf[a] = inew[cls[a]];
    out.invClass.resize(k);
    for (int c = 0; c < k; ++c) out.invClass[c] = out.classOf[G.inv(out.rep[c])];
    return out;
}

i64 chooseEll(i64 exponent, i64 order, i64 extraModulus) {
    i64 m = std::lcm(exponent, extraModulus);
    for (i64 ell = m + 1;; ell += m) {
        if (ell <= 2 * order) continue;
        if (isPrime(ell)) return ell;
        if (ell > (1LL << 40)) throw CapError("chooseEll: no suitable prime found below bound");
    }
}

CharTable dixonCharTable(const FiniteGroup& G, i64 ellFixed, i64 extraModulus) {
    CharTable T;
    T.cls = conjClasses(G);
    const int k = T.cls.n();
    const i64 n = G.order();
    const i64 e = G.exponent();
    T.ell = ellFixed ? ellFixed : chooseEll(e, n, extraModulus);
    const i64 q = T.ell;
    if ((q - 1) % e != 0) throw InvalidInput("dixonCharTable: ell-1 not divisible by the exponent");
    if (extraModulus > 1 && (q - 1) % extraModulus != 0)
        throw InvalidInput("dixonCharTable: ell-1 not divisible by the requested root order");
    // primitive root -> canonical p-th root of unity when requested
    if (extraModulus > 1) {
        for (i64 g = 2; g < q; ++g) {
            bool prim = true;
            i64 m = q - 1;
            for (i64 d = 2; d * d <= m; ++d)
                if (m % d == 0) {
                    while (m % d == 0) m /= d;
                    if (powMod(g, (q - 1) / d, q) == 1) { prim = false; break; }
                }
            if (m > 1 && powMod(g, (q - 1) / m, q) == 1) prim = false;
            if (prim) {
                T.zetaP = powMod(g, (q - 1) / extraModulus, q);
                break;
            }
        }
    }
    if (k == 1) {
        T.degrees = {1};
        T.values = {{1}};
        return T;
    }
    // class element lists
    std::vector<std::vector<int>> classEls(k);
    for (int a = 0; a < n; ++a) classEls[T.cls.classOf[a]].push_back(a);
    // class-algebra structure constants a[i][j][kk]
    std::vector<std::vector<std::vector<i64>>> A(k, std::vector<std::vector<i64>>(k, std::vector<i64>(k, 0)));
    for (int i = 0; i < k; ++i)
        for (int x : classEls[i])
            for (int kk = 0; kk < k; ++kk) {
                int y = G.mul(G.inv(x), T.cls.rep[kk]);
                A[i][T.cls.classOf[y]][kk] += 1;
            }
    // split the simultaneous eigenspaces of the class matrices over F_ell
    std::mt19937 rng(987654321u);
    std::vector<std::vector<Vec>> spaces;  // list of bases; vectors of length k
    {
        std::vector<Vec> full;
        for (int i = 0; i < k; ++i) {
            Vec v(k, 0);
            v[i] = 1;
            full.push_back(v);
        }
        spaces.push_back(full);
    }
    auto allDimOne = [&]() {
        for (auto& s : spaces)
            if (s.size() > 1) return false;
        return true;
    };
    for (int i = 1; i < k && !allDimOne(); ++i) {
        std::vector<std::vector<Vec>> next;
        for (auto& S : spaces) {
            const int d = static_cast<int>(S.size());
            if (d == 1) {
                next.push_back(S);
                continue;
            }
            // images M_i * S and the matrix R of the action in basis S
            std::vector<Vec> img(d, Vec(k, 0));
            for (int c = 0; c < d; ++c)
                for (int j = 0; j < k; ++j) {
                    i128 s = 0;
                    for (int kk = 0; kk < k; ++kk) s += (i128)(A[i][j][kk] % q) * S[c][kk];
                    img[c][j] = mod_norm((i64)(s % q), q);
                }
            // solve S * R = img: gaussian elimination with S's columns
            // build matrix with columns S and solve for each img column
            std::vector<Vec> R(d, Vec(d, 0));  // R[c] = coords of img[c]
            {
                // row reduce [S | img]
                std::vector<Vec> rows(k, Vec(d + d, 0));
                for (int r = 0; r < k; ++r) {
                    for (int c = 0; c < d; ++c) rows[r][c] = S[c][r];
                    for (int c = 0; c < d; ++c) rows[r][d + c] = img[c][r];
                }
                int row = 0;
                std::vector<int> pivOfCol(d, -1);
                for (int col = 0; col < d && row < k; ++col) {
                    int sel = -1;
                    for (int r = row; r < k; ++r)
                        if (rows[r][col] != 0) { sel = r; break; }
                    if (sel < 0) throw InvalidInput("dixon: subspace basis not independent");
                    std::swap(rows[sel], rows[row]);
                    i64 inv = la::invMod(rows[row][col], q);
                    for (auto& x : rows[row]) x = (i128)x * inv % q;
                    for (int r = 0; r < k; ++r) {
                        if (r == row || rows[r][col] == 0) continue;
                        i64 f = rows[r][col];
                        for (int c2 = 0; c2 < d + d; ++c2) rows[r][c2] = mod_norm(rows[r][c2] - (i128)f * rows[row][c2] % q, q);
                    }
                    pivOfCol[col] = row;
                    ++row;
                }
                for (int r = row; r < k; ++r)
                    for (int c = 0; c < d; ++c)
                        if (rows[r][d + c] != 0) throw InvalidInput("dixon: M_i image escapes subspace");
                for (int col = 0; col < d; ++col)
                    for (int c = 0; c < d; ++c) R[c][col] = rows[pivOfCol[col]][d + c];
            }
            // characteristic polynomial of R by interpolation of det(cI - R)
            LPoly charpoly;
            {
                std::vector<i64> xs, ys;
                for (i64 c = 0; c <= d; ++c) {
                    std::vector<Vec> Mt(d, Vec(d, 0));
                    for (int r2 = 0; r2 < d; ++r2)
                        for (int c2 = 0; c2 < d; ++c2) Mt[r2][c2] = mod_norm((r2 == c2 ? c : 0) - R[c2][r2], q);
                    // determinant mod q
                    i64 det = 1;
                    for (int col = 0; col < d && det != 0; ++col) {
                        int sel = -1;
                        for (int r2 = col; r2 < d; ++r2)
                            if (Mt[r2][col] != 0) { sel = r2; break; }
                        if (sel < 0) { det = 0; break; }
                        if (sel != col) {
                            std::swap(Mt[sel], Mt[col]);
                            det = mod_norm(-det, q);
                        }
                        det = (i128)det * Mt[col][col] % q;
                        i64 inv = la::invMod(Mt[col][col], q);
                        for (int r2 = col + 1; r2 < d; ++r2) {
                            if (Mt[r2][col] == 0) continue;
                            i64 f = (i128)Mt[r2][col] * inv % q;
                            for (int c2 = col; c2 < d; ++c2) Mt[r2][c2] = mod_norm(Mt[r2][c2] - (i128)f * Mt[col][c2] % q, q);
                        }
                    }
                    xs.push_back(c);
                    ys.push_back(det);
                }
                // Lagrange interpolation
                charpoly.assign(d + 1, 0);
                for (int t = 0; t <= d; ++t) {
                    LPoly num = {1};
                    i64 den = 1;
                    for (int s = 0; s <= d; ++s) {
                        if (s == t) continue;
                        num = lpMul(num, {mod_norm(-xs[s], q), 1}, q);
                        den = (i128)den * mod_norm(xs[t] - xs[s], q) % q;
                    }
                    i64 coef = (i128)ys[t] * la::invMod(den, q) % q;
                    for (size_t u = 0; u < num.size(); ++u) charpoly[u] = mod_norm(charpoly[u] + (i128)coef * num[u] % q, q);
                }
                charpoly = lpTrim(charpoly, q);
            }
            // distinct eigenvalues: roots of the squarefree split part
            LPoly xq = lpPowMod({0, 1}, q, charpoly, q);
            if (!xq.empty() || true) {
                LPoly diff = xq;
                // diff = x^q - x mod charpoly
                if (diff.size() < 2) diff.resize(2, 0);
                diff[1] = mod_norm(diff[1] - 1, q);
                diff = lpTrim(diff, q);
                LPoly sqf = diff.empty() ? charpoly : lpGcd(diff, charpoly, q);
                if (sqf.size() <= 1) throw InvalidInput("dixon: no eigenvalues in F_ell");
                std::vector<i64> roots;
                lpRoots(sqf, q, rng, roots);
                std::sort(roots.begin(), roots.end());
                for (i64 lam : roots) {
                    // kernel of (R - lam I) acting on coords
                    std::vector<Vec> Mt(d, Vec(d, 0));
                    for (int r2 = 0; r2 < d; ++r2)
                        for (int c2 = 0; c2 < d; ++c2) Mt[r2][c2] = mod_norm(R[c2][r2] - (r2 == c2 ? lam : 0), q);
                    // gaussian kernel
                    std::vector<int> pivotAt(d, -1);
                    int row = 0;
                    for (int col = 0; col < d && row < d; ++col) {
                        int sel = -1;
                        for (int r2 = row; r2 < d; ++r2)
                            if (Mt[r2][col] != 0) { sel = r2; break; }
                        if (sel < 0) continue;
                        std::swap(Mt[sel], Mt[row]);
                        i64 inv = la::invMod(Mt[row][col], q);
                        for (auto& x : Mt[row]) x = (i128)x * inv % q;
                        for (int r2 = 0; r2 < d; ++r2) {
                            if (r2 == row || Mt[r2][col] == 0) continue;
                            i64 f = Mt[r2][col];
                            for (int c2 = 0; c2 < d; ++c2) Mt[r2][c2] = mod_norm(Mt[r2][c2] - (i128)f * Mt[row][c2] % q, q);
                        }
                        pivotAt[col] = row;
                        ++row;
                    }
                    std::vector<Vec> base;
                    for (int col = 0; col < d; ++col) {
                        if (pivotAt[col] >= 0) continue;
                        Vec coord(d, 0);
                        coord[col] = 1;
                        for (int c2 = 0; c2 < d; ++c2)
                            if (pivotAt[c2] >= 0) coord[c2] = mod_norm(-Mt[pivotAt[c2]][col], q);
                        // to ambient coordinates
                        Vec amb(k, 0);
                        for (int c2 = 0; c2 < d; ++c2) {
                            if (!coord[c2]) continue;
                            for (int r2 = 0; r2 < k; ++r2) amb[r2] = mod_norm(amb[r2] + (i128)coord[c2] * S[c2][r2] % q, q);
                        }
                        base.push_back(std::move(amb));
                    }
                    if (base.empty()) throw InvalidInput("dixon: eigenvalue without eigenvector");
                    next.push_back(std::move(base));
                }
            }
        }
        spaces = std::move(next);
    }
    if (!allDimOne()) throw InvalidInput("dixon: eigenspace splitting did not separate characters");
    // normalize and recover degrees/values
    std::vector<std::pair<i64, ClassFn>> rows;
    for (auto& S : spaces) {
        Vec v = S[0];
        if (v[0] == 0) throw InvalidInput("dixon: eigenvector vanishes at the identity class");
        i64 inv0 = la::invMod(v[0], q);
        for (auto& x : v) x = (i128)x * inv0 % q;
        i64 s = 0;
        for (int kk = 0; kk < k; ++kk)
            s = mod_norm(s + (i128)v[kk] * v[T.cls.invClass[kk]] % q * la::invMod(T.cls.size[kk] % q, q) % q, q);
        i64 rhs = (i128)mod_norm(n, q) * la::invMod(s, q) % q;
        i64 deg = -1;
        for (i64 dcand = 1; dcand * dcand <= n; ++dcand)
            if ((i128)dcand * dcand % q == rhs) { deg = dcand; break; }
        if (deg < 0) throw InvalidInput("dixon: degree recovery failed");
        ClassFn chi(k);
        for (int kk = 0; kk < k; ++kk)
            chi[kk] = (i128)deg * v[kk] % q * la::invMod(T.cls.size[kk] % q, q) % q;
        rows.push_back({deg, chi});
    }
    std::sort(rows.begin(), rows.end());
    for (auto& [d, chi] : rows) {
        T.degrees.push_back(d);
        T.values.push_back(chi);
    }
    // sanity: orthogonality and degree sum
    i64 sum = 0;
    for (i64 d : T.degrees) sum += d * d;
    if (sum != n) throw InvalidInput("dixon: degree squares do not sum to |G|");
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t) {
            i64 ip = innerProduct(T, T.values[s], T.values[t]);
            if (ip != (s == t ? 1 : 0)) throw InvalidInput("dixon: row orthogonality failed");
        }
    return T;
}

i64 innerProduct(const CharTable& T, const ClassFn& a, const ClassFn& b) {
    const i64 q = T.ell;
    i64 n = 0;
    for (i64 s : T.cls.size) n += s;
    i64 acc = 0;
    for (int kk = 0; kk < T.cls.n(); ++kk)
        acc = mod_norm(acc + (i128)(T.cls.size[kk] % q) * a[kk] % q * b[T.cls.invClass[kk]] % q, q);
    acc = (i128)acc * la::invMod(mod_norm(n, q), q) % q;
    return acc > q / 2 ? acc - q : acc;
}

ClassFn productFn(const CharTable& T, const ClassFn& a, const ClassFn& b) {
    ClassFn c(T.cls.n());
    for (int kk = 0; kk < T.cls.n(); ++kk) c[kk] = (i128)a[kk] * b[kk] % T.ell;
    return c;
}

ClassFn addFn(const CharTable& T, const ClassFn& a, const ClassFn& b, i64 coefB) {
    ClassFn c(T.cls.n());
    for (int kk = 0; kk < T.cls.n(); ++kk) c[kk] = mod_norm(a[kk] + (i128)coefB * b[kk] % T.ell, T.ell);
    return c;
}

i64 fixedCount(const Action& a, int g) {
    i64 f = 0;
    for (i64 x = 0; x < a.npoints; ++x)
        if (a.apply(g, x) == x) ++f;
    return f;
}

ClassFn permCharacter(const Action& a, const ConjClasses& cls) {
    ClassFn out(cls.n());
    for (int kk = 0; kk < cls.n(); ++kk) out[kk] = fixedCount(a, cls.rep[kk]);
    return out;
}

i64 orbitCount(const Action& a) {
    i64 total = 0;
    const int n = a.G->order();
    for (int g = 0; g < n; ++g) total += fixedCount(a, g);
    if (total % n != 0) throw InvalidInput("orbitCount: Burnside sum not divisible");
    return total / n;
}

std::vector<std::vector<i64>> orbits(const Action& a) {
    std::vector<int> gens = smallGeneratingSet(*a.G);
    std::vector<i64> orbitOf(a.npoints, -1);
    std::vector<std::vector<i64>> out;
    for (i64 x = 0; x < a.npoints; ++x) {
        if (orbitOf[x] >= 0) continue;
        i64 id = static_cast<i64>(out.size());
        std::vector<i64> orb = {x};
        orbitOf[x] = id;
        std::vector<i64> queue = {x};
        while (!queue.empty()) {
            i64 y = queue.back();
            queue.pop_back();
            for (int g : gens) {
                i64 z = a.apply(g, y);
                if (orbitOf[z] < 0) {
                    orbitOf[z] = id;
                    orb.push_back(z);
                    queue.push_back(z);
                }
            }
        }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

i64 orbitsOnProduct(const Action& a, const Action& b) {
    i64 total = 0;
    const int n = a.G->order();
    for (int g = 0; g < n; ++g) total += fixedCount(a, g) * fixedCount(b, g);
    if (total % n != 0) throw InvalidInput("orbitsOnProduct: Burnside sum not divisible");
    return total / n;
}

i64 multiplicityIn(const CharTable& T, int irr, const ClassFn& fn) {
    i64 m = innerProduct(T, fn, T.values[irr]);
    return m;
}

ClassFn inducedClassFn(const CharTable& TG, const Subgroup& H, const CharTable& TH, const ClassFn& chiH) {
    const FiniteGroup& G = *H.parent;
    const i64 q = TG.ell;
    if (TH.ell != q) throw InvalidInput("inducedClassFn: mismatched F_ell");
    ClassFn out(TG.cls.n(), 0);
    i64 hInv = la::invMod(mod_norm(H.group.order(), q), q);
    for (int kk = 0; kk < TG.cls.n(); ++kk) {
        int z = TG.cls.rep[kk];
        i64 acc = 0;
        for (int x = 0; x < G.order(); ++x) {
            int y = G.mul(G.mul(G.inv(x), z), x);
            auto it = H.fromParent.find(y);
            if (it == H.fromParent.end()) continue;
            acc = mod_norm(acc + chiH[TH.cls.classOf[it->second]], q);
        }
        out[kk] = (i128)acc * hInv % q;
    }
    return out;
}

ClassFn restrictedClassFn(const CharTable& TG, const ClassFn& chiG, const Subgroup& H, const CharTable& TH) {
    ClassFn out(TH.cls.n());
    for (int kk = 0; kk < TH.cls.n(); ++kk) out[kk] = chiG[TG.cls.classOf[H.toParent[TH.cls.rep[kk]]]];
    return out;
}

i64 fixedSpaceDim(const CharTable& TG, const ClassFn& chi, const std::vector<int>& subgroupElems) {
    const i64 q = TG.ell;
    i64 acc = 0;
    for (int h : subgroupElems) acc = mod_norm(acc + chi[TG.cls.classOf[h]], q);
    acc = (i128)acc * la::invMod(mod_norm((i64)subgroupElems.size(), q), q) % q;
    return acc > q / 2 ? acc - q : acc;
}

IwahoriCert iwahoriDecomposition(const FiniteGroup& G, const std::vector<std::pair<int, int>>& blocks) {
    IwahoriCert cert;
    auto blockOf = [&](int coord) {
        for (size_t b = 0; b < blocks.size(); ++b)
            if (coord >= blocks[b].first && coord < blocks[b].first + blocks[b].second) return static_cast<int>(b);
        throw InvalidInput("iwahori: coordinate outside blocks");
    };
    const int n = G.space.rank();
    for (int g = 0; g < G.order(); ++g) {
        const Mat& m = G.mats[g];
        bool diag = true, upper = true, lower = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int bi = blockOf(i), bj = blockOf(j);
                i64 v = m.at(i, j);
                i64 idv = (i == j) ? 1 : 0;
                if (bi != bj && v != 0) diag = false;
                if (bi == bj && v != idv) { upper = false; lower = false; }
                if (bi > bj && v != 0) upper = false;
                if (bi < bj && v != 0) lower = false;
            }
        if (diag) cert.L.push_back(g);
        if (upper) cert.U.push_back(g);
        if (lower) cert.Ubar.push_back(g);
    }
    std::set<int> prod;
    for (int u : cert.U)
        for (int l : cert.L)
            for (int ub : cert.Ubar) prod.insert(G.mul(G.mul(u, l), ub));
    cert.bijective = (i64)cert.U.size() * cert.L.size() * cert.Ubar.size() == G.order() && (i64)prod.size() == G.order();
    return cert;
}

}  // namespace modrep::grp
