#pragma once

// Canonical-form linear algebra over Z/p^l and between finite abelian
// p-groups. Subgroups are kept in Howell normal form over Z/p^{max exponent},
// in scaled coordinates (coordinate j multiplied by p^{lmax-e_j}), which makes
// two subgroups equal iff their stored rows are identical.

#include "modrep/base.hpp"

#include <optional>
#include <vector>

namespace modrep::la {

using Vec = std::vector<i64>;

struct Mat {
    int r = 0, c = 0;
    std::vector<i64> a;

    Mat() = default;
    Mat(int r_, int c_) : r(r_), c(c_), a(static_cast<size_t>(r_) * c_, 0) {}

    i64& at(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
    i64 at(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }
    Vec row(int i) const { return Vec(a.begin() + static_cast<size_t>(i) * c, a.begin() + static_cast<size_t>(i + 1) * c); }
    void setRow(int i, const Vec& v);
    static Mat identity(int n);
    static Mat fromRows(const std::vector<Vec>& rows, int ncols);
    bool operator==(const Mat&) const = default;
};

struct PGroup {
    i64 p = 2;
    std::vector<int> exps;

    PGroup() = default;
    PGroup(i64 p_, std::vector<int> e) : p(p_), exps(std::move(e)) {}

    int rank() const { return static_cast<int>(exps.size()); }
    int lmax() const;
    i64 mod() const { return ipow(p, lmax()); }
    i64 coordMod(int j) const { return ipow(p, exps[j]); }
    i64 scale(int j) const { return ipow(p, lmax() - exps[j]); }
    i64 order() const;  // throws CapError past limits().max_group_order
    double log2Order() const;

    Vec zero() const { return Vec(exps.size(), 0); }
    Vec unit(int j) const;
    Vec reduce(Vec v) const;
    bool isZero(const Vec& v) const;
    Vec add(const Vec& x, const Vec& y) const;
    Vec sub(const Vec& x, const Vec& y) const;
    Vec neg(const Vec& x) const;
    Vec smul(i64 c, const Vec& x) const;

    // dense indexing of all elements, mixed radix with the last coordinate fastest
    i64 indexOf(const Vec& v) const;
    Vec elementAt(i64 idx) const;
    std::vector<Vec> elements() const;

    bool operator==(const PGroup&) const = default;
};

PGroup directSum(const PGroup& A, const PGroup& B);
PGroup directPow(const PGroup& A, int n);

struct GrpMap {
    PGroup dom, cod;
    Mat m;  // cod.rank x dom.rank, entry (i,j) reduced mod p^{f_i}

    GrpMap() = default;
    GrpMap(PGroup d, PGroup c, Mat mm, bool validate = true);

    Vec apply(const Vec& x) const;
    bool wellDefined() const;
    GrpMap compose(const GrpMap& inner) const;  // this after inner
    GrpMap add(const GrpMap& g) const;
    GrpMap scaled(i64 c) const;
    bool isZero() const;

    static GrpMap zero(const PGroup& d, const PGroup& c);
    static GrpMap identity(const PGroup& A);

    // (i,j) entry scaled to act on unconstrained Z/p^L vectors: p^{L-f_i} m_ij
    Mat lifted(int L) const;
    bool operator==(const GrpMap&) const = default;
};

// Canonical Howell normal form of the row span of `rows` over Z/mod
// (mod = p^L). Zero rows are dropped; result is the unique canonical
// generating matrix of the span.
Mat howellForm(const Mat& rows, i64 mod, i64 p);

struct SpanBasis {
    PGroup ambient;
    Mat rows;  // Howell form in scaled coordinates

    static SpanBasis span(const PGroup& ambient, const std::vector<Vec>& naturalGens);
    static SpanBasis zero(const PGroup& ambient);
    static SpanBasis full(const PGroup& ambient);

    int nrows() const { return rows.r; }
    i64 size() const;
    bool contains(const Vec& natural) const;
    Vec naturalRow(int i) const;
    std::vector<Vec> naturalRows() const;
    std::vector<Vec> elementsNatural() const;
    SpanBasis join(const SpanBasis& other) const;
    SpanBasis intersect(const SpanBasis& other) const;
    bool subsetOf(const SpanBasis& other) const;
    bool isZero() const { return rows.r == 0; }
    std::string key() const;  // hashable identity
    bool operator==(const SpanBasis&) const = default;
};

SpanBasis kernel(const GrpMap& f);
SpanBasis image(const GrpMap& f);
std::optional<Vec> solve(const GrpMap& f, const Vec& b);
SpanBasis preimage(const GrpMap& f, const SpanBasis& S);

// ambient/S with a cyclic-factor decomposition, the projection map and a
// coset-representative section
struct Cokernel {
    PGroup group;
    GrpMap proj;      // ambient -> group
    Mat sectionCols;  // ambient.rank x group.rank
    Vec section(const Vec& q) const;
};
Cokernel cokernel(const SpanBasis& S);
Cokernel cokernelOfMap(const GrpMap& f);

// a subgroup re-presented as a standalone PGroup with chosen cyclic generators
struct SubgroupView {
    PGroup group;
    GrpMap incl;  // group -> ambient
    Vec coords(const Vec& naturalAmbientElt) const;
};
SubgroupView subgroupView(const SpanBasis& S);

// the group of all additive maps A -> B, coordinate (i,j) of order p^{min(e_j,f_i)}
struct HomGroup {
    PGroup group;
    PGroup dom, cod;
    GrpMap mapOf(const Vec& coords) const;
    Vec coordsOf(const GrpMap& f) const;
};
HomGroup homGroup(const PGroup& A, const PGroup& B);

// Smith form over the local ring Z/p^L: U*A*W = diag(p^vals), only U tracked.
// vals padded with L for missing pivots up to min(r,c) is NOT done; callers
// treat absent diagonal entries as p^L.
struct Smith {
    std::vector<int> vals;  // ascending valuations of pivots
    Mat U, Uinv;            // r x r
};
Smith smithLocal(Mat A, i64 mod, i64 p, int L);

i64 invMod(i64 u, i64 mod);

}  // namespace modrep::la
