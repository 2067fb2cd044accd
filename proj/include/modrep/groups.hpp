#pragma once

// Finite groups as explicit endomorphism-matrix or table groups, conjugacy
// classes, exact Dixon character tables over F_ell, permutation characters,
// orbit counting and induced/restricted class functions.

#include "modrep/algebra.hpp"

#include <functional>
#include <string>
#include <unordered_map>

namespace modrep::grp {

struct FiniteGroup {
    // matrix-backed groups act on `space`; abstract groups carry only a table
    la::PGroup space;
    std::vector<la::Mat> mats;
    std::vector<std::vector<int>> table;  // empty above the table cap
    std::vector<int> invTable;
    int idIdx = 0;
    std::unordered_map<std::string, int> matIndex;

    int order() const { return table.empty() ? static_cast<int>(mats.size()) : static_cast<int>(table.size()); }
    int mul(int a, int b) const;
    int inv(int a) const { return invTable[a]; }
    int pow(int a, i64 e) const;
    i64 elementOrder(int a) const;
    i64 exponent() const;
    int indexOfMat(const la::Mat& m) const;
    la::GrpMap asMap(int a) const;

    static FiniteGroup fromMats(const la::PGroup& space, std::vector<la::Mat> mats);
    static FiniteGroup fromTable(std::vector<std::vector<int>> table, int id);
};

// all units of End_R(M), elements ordered by matrix lex order
FiniteGroup enumerateAut(const alg::RModule& M);
i64 autOrderOnly(const alg::RModule& M);  // count without storing elements

std::vector<int> closure(const FiniteGroup& G, std::vector<int> gens);
std::vector<int> smallGeneratingSet(const FiniteGroup& G);

struct Subgroup {
    const FiniteGroup* parent = nullptr;
    std::vector<int> elems;          // parent indices, sorted
    FiniteGroup group;               // abstract copy with its own table
    std::vector<int> toParent;       // group index -> parent index
    std::unordered_map<int, int> fromParent;
    bool containsParentIdx(int g) const { return fromParent.count(g) != 0; }
};
Subgroup makeSubgroup(const FiniteGroup& G, std::vector<int> elems);

struct ConjClasses {
    std::vector<int> rep;
    std::vector<i64> size;
    std::vector<int> classOf;
    std::vector<int> invClass;
    int n() const { return static_cast<int>(rep.size()); }
};
ConjClasses conjClasses(const FiniteGroup& G);

// class functions are vectors of F_ell residues indexed by class
using ClassFn = std::vector<i64>;

struct CharTable {
    i64 ell = 0;
    i64 zetaP = 0;  // primitive p-th root of unity in F_ell when requested
    ConjClasses cls;
    std::vector<i64> degrees;
    std::vector<ClassFn> values;

    int n() const { return static_cast<int>(degrees.size()); }
    i64 valueAt(int irr, int elementIdx) const { return values[irr][cls.classOf[elementIdx]]; }
};

// smallest prime ell = 1 mod lcm(exponent, extraModulus) with ell > 2*order
i64 chooseEll(i64 exponent, i64 order, i64 extraModulus);

CharTable dixonCharTable(const FiniteGroup& G, i64 ellFixed = 0, i64 extraModulus = 1);

// exact integer inner product of two class functions whose true values are
// algebraic integers with |.| bounded by |G| (symmetric lift)
i64 innerProduct(const CharTable& T, const ClassFn& a, const ClassFn& b);
ClassFn productFn(const CharTable& T, const ClassFn& a, const ClassFn& b);
ClassFn addFn(const CharTable& T, const ClassFn& a, const ClassFn& b, i64 coefB = 1);

struct Action {
    const FiniteGroup* G = nullptr;
    i64 npoints = 0;
    std::function<i64(int, i64)> apply;  // (group element index, point) -> point
};

i64 fixedCount(const Action& a, int g);
ClassFn permCharacter(const Action& a, const ConjClasses& cls);
i64 orbitCount(const Action& a);
std::vector<std::vector<i64>> orbits(const Action& a);
i64 orbitsOnProduct(const Action& a, const Action& b);

i64 multiplicityIn(const CharTable& T, int irr, const ClassFn& permOrClassFn);

// induction/restriction through an explicit subgroup
ClassFn inducedClassFn(const CharTable& TG, const Subgroup& H, const CharTable& TH, const ClassFn& chiH);
ClassFn restrictedClassFn(const CharTable& TG, const ClassFn& chiG, const Subgroup& H, const CharTable& TH);

// dim V^H = <Res_H chi, 1>
i64 fixedSpaceDim(const CharTable& TG, const ClassFn& chi, const std::vector<int>& subgroupElems);

struct IwahoriCert {
    std::vector<int> U, L, Ubar;
    bool bijective = false;
};
// blocks = (coordinate offset, rank) per ordered isotypic block of the module
IwahoriCert iwahoriDecomposition(const FiniteGroup& G, const std::vector<std::pair<int, int>>& blocks);

}  // namespace modrep::grp
