#pragma once

// Finite O_l-algebras given by structure constants, their finite modules,
// R-linear hom spaces, Jacobson radicals, indecomposable decomposition and
// left/right-maximal morphisms.

#include "modrep/linalg.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace modrep::alg {

struct FiniteAlgebra;
using Ring = std::shared_ptr<const FiniteAlgebra>;

struct FiniteAlgebra {
    la::PGroup add;
    std::vector<std::vector<la::Vec>> mult;  // mult[i][j] = b_i * b_j
    la::Vec unit;

    i64 p() const { return add.p; }
    int l() const { return add.lmax(); }
    int rank() const { return add.rank(); }

    la::Vec mul(const la::Vec& x, const la::Vec& y) const;
    la::GrpMap leftMul(const la::Vec& x) const;
    la::GrpMap rightMul(const la::Vec& x) const;
    bool isUnit(const la::Vec& x) const;  // invertible element
    void validate() const;                // structure constants well formed, associative, unital
};

Ring makeRing(la::PGroup add, std::vector<std::vector<la::Vec>> mult, la::Vec unit);

struct RModule {
    Ring ring;
    la::PGroup add;
    std::vector<la::GrpMap> action;  // one endomorphism per ring additive generator

    la::GrpMap actionOf(const la::Vec& r) const;
    la::Vec act(const la::Vec& r, const la::Vec& m) const;
    void validate() const;
    i64 order() const { return add.order(); }
};

RModule regularModule(const Ring& R);  // R as a left module over itself
bool sameRing(const RModule& M, const RModule& N);

struct ModuleSum {
    RModule sum;
    std::vector<int> offset;  // coordinate offset of each summand
    std::vector<int> ranks;
    la::GrpMap inclusion(int t, const RModule& part) const;
    la::GrpMap projection(int t, const RModule& part) const;
};
ModuleSum moduleDirectSum(const std::vector<const RModule*>& parts);

// Hom_R(M,N) as a subgroup of the group of all additive maps
struct RHom {
    RModule src, dst;
    la::HomGroup hom;
    la::SpanBasis carrier;

    int ngens() const { return carrier.nrows(); }
    la::GrpMap basisMap(int i) const;
    std::vector<la::GrpMap> basisMaps() const;
    bool contains(const la::GrpMap& f) const;
    i64 size() const { return carrier.size(); }
};
RHom homR(const RModule& M, const RModule& N);

bool isRLinear(const RModule& M, const RModule& N, const la::GrpMap& f);
bool isModuleIso(const la::GrpMap& f);  // additive bijectivity via mod-p surjectivity

// End_R(M) re-presented as an abstract algebra, with both directions of the
// identification
struct EndAlgebra {
    Ring E;
    RModule M;
    la::HomGroup hom;
    la::SubgroupView view;

    la::GrpMap toMap(const la::Vec& e) const;
    la::Vec fromMap(const la::GrpMap& f) const;
};
EndAlgebra endAlgebra(const RModule& M);

// Jacobson radical of a finite algebra, as a subgroup of the additive group.
// pA is always contained in it; the char-p part is found by the iterated
// Frobenius-trace method on A/pA.
la::SpanBasis jacobsonRadical(const Ring& A);

// quotient algebra A/I for a two-sided ideal I
struct QuotAlgebra {
    Ring Q;
    la::Cokernel ck;  // additive quotient data; ck.proj maps A.add onto Q->add
};
QuotAlgebra quotientAlgebra(const Ring& A, const la::SpanBasis& ideal);

// finite field presented by structure constants over F_p
struct Field {
    Ring A;
    int deg = 0;
    std::vector<la::Vec> elems;
    std::vector<int> invTable;  // by element index

    i64 p() const { return A->p(); }
    i64 q() const { return ipow(p(), deg); }
    int indexOf(const la::Vec& x) const { return static_cast<int>(A->add.indexOf(x)); }
    la::Vec el(int i) const { return A->add.elementAt(i); }
    la::Vec one() const { return A->unit; }
    la::Vec mul(const la::Vec& a, const la::Vec& b) const { return A->mul(a, b); }
    la::Vec inv(const la::Vec& a) const;
    int trace(const la::Vec& a) const;  // Tr_{E/F_p} in [0,p)
};
Field asField(const Ring& A);  // validates commutativity and invertibility

struct LocalData {
    RModule module;
    EndAlgebra end;
    la::SpanBasis radical;  // J_i inside end.E->add
    Field residue;          // E_i = End/J_i
    QuotAlgebra quot;
    la::Vec residueOf(const la::GrpMap& f) const;   // End(M) -> E_i
    la::GrpMap liftResidue(const la::Vec& e) const; // any preimage
};
LocalData localData(const RModule& M);  // requires End_R(M) local

struct Summand {
    RModule module;      // abstract copy of the summand
    int multiplicity;
};
std::vector<Summand> decomposeIndecomposable(const RModule& M);

// decomposition retaining the embeddings, for rebuilding M canonically
struct FullDecomposition {
    struct Piece {
        RModule mod;
        la::GrpMap incl, proj;  // into/from M
        int type;
        la::GrpMap toType;      // iso piece -> types[type]
    };
    std::vector<RModule> types;  // canonical order
    std::vector<std::vector<int>> pieceIdx;  // per type
    std::vector<Piece> pieces;
};
FullDecomposition decomposeFull(const RModule& M);

la::GrpMap inverseIso(const la::GrpMap& f);  // of a bijective GrpMap

std::optional<la::GrpMap> isIsomorphic(const RModule& M, const RModule& N);

// {0} together with all left-maximal morphisms M_j -> M_i inside the context,
// as a subgroup of the additive hom group; also an E_i-vector space
struct LMSpace {
    RHom ambient;           // Hom_R(M_j, M_i)
    la::SpanBasis carrier;  // coords in ambient.hom.group
    int dim;                // over E_i
    std::vector<la::GrpMap> basisOverE;  // dim chosen E_i-basis maps
};
LMSpace lmMorphisms(const std::vector<RModule>& ctx, const std::vector<LocalData>& locals, int j, int i);
LMSpace rmMorphisms(const std::vector<RModule>& ctx, const std::vector<LocalData>& locals, int j, int i);

// submodule machinery (used both for R-modules and, through End(+M_i), for
// objects of C_{+1})
la::SpanBasis submoduleClosure(const RModule& M, const std::vector<la::Vec>& gens);
std::vector<la::SpanBasis> allSubmodules(const RModule& M, i64 cap = 0);
RModule quotientModule(const RModule& M, const la::SpanBasis& S, la::Cokernel* ckOut = nullptr);
RModule submoduleAsModule(const RModule& M, const la::SpanBasis& S, la::SubgroupView* svOut = nullptr);

// R~ = R + RxR with x^2 = 0, together with M~ = M carrying the extended
// action where x acts through the chosen left-maximal maps along a cycle
struct TildeData {
    Ring tilde;
    RModule moduleTilde;
    la::GrpMap xMap;  // the assembled action of x on M
};
TildeData buildTildeRing(const RModule& M, const la::GrpMap& xMap);

}  // namespace modrep::alg
