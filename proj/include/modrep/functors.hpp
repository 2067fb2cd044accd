#pragma once

// The category C_{+1} of additive functors on C = <M_1,...,M_n>, handled
// through the equivalence with modules over R' = End_R(M_1 + ... + M_n).
// Functor objects carry both a projective presentation
//   Hom(Y,-) --f*--> Hom(X,-) --> F --> 0       (f : X -> Y)
// and the R'-module F(M^); evaluation runs on the presentation, lattice and
// isomorphism questions run on the module.

#include "modrep/algebra.hpp"
#include "modrep/groups.hpp"

#include <memory>

namespace modrep::fun {

struct Context {
    std::vector<alg::RModule> parts;  // pairwise non-isomorphic indecomposables
    std::vector<alg::LocalData> locals;
    alg::ModuleSum hat;     // M^ = one copy of each part
    alg::EndAlgebra endHat;  // R'

    int n() const { return static_cast<int>(parts.size()); }
    const alg::Ring& rprime() const { return endHat.E; }
    la::Vec idem(int i) const;  // eps_i as an R'-element
    // iota_j . f . pi_i as an R'-element, for an R-hom f : parts[i] -> parts[j]
    la::Vec embedHom(int i, int j, const la::GrpMap& f) const;
    // M^ (and its n-th powers) as an R'-module
    alg::RModule hatModule() const;
};
std::shared_ptr<Context> makeContext(std::vector<alg::RModule> parts);

// a module re-presented as a sum of context parts, with an iso to the input
struct Instance {
    std::shared_ptr<Context> ctx;
    std::vector<int> mult;
    alg::RModule M;  // canonical copy: parts[0]^{a_0} + ... in order
    alg::ModuleSum layout;
    la::GrpMap toOriginal, fromOriginal;
};
Instance makeInstance(const alg::RModule& Morig);

struct FunctorObj;
using FunctorPtr = std::shared_ptr<const FunctorObj>;

struct Eval {
    la::PGroup grp;  // F(M) as an abelian group, quotient coordinates
    alg::RHom homXM;
    la::SubgroupView vx;
    la::Cokernel ck;

    i64 size() const { return grp.order(); }
    la::Vec classOf(const la::GrpMap& psiXtoM) const;
    la::GrpMap repOf(const la::Vec& q) const;
};

struct FunctorObj {
    std::shared_ptr<Context> ctx;
    std::vector<int> xMult, yMult;
    alg::RModule X, Y;
    alg::ModuleSum xLayout, yLayout;
    la::GrpMap f;      // X -> Y
    alg::RModule N;    // F(M^) over R'
    Eval evalHat;      // evaluation at M^

    i64 sizeAtHat() const { return N.add.order(); }
};

FunctorPtr homFunctor(const std::shared_ptr<Context>& ctx, const std::vector<int>& xMult);
FunctorPtr zeroFunctor(const std::shared_ptr<Context>& ctx);
// minimal presentation of an arbitrary R'-module (projective cover route)
FunctorPtr functorFromModule(const std::shared_ptr<Context>& ctx, const alg::RModule& N);
FunctorPtr directSum(const FunctorObj& F, const FunctorObj& G);

Eval evaluate(const FunctorObj& F, const alg::RModule& M);
// F(u) : F(M) -> F(M') for an R-hom u : M -> M'
la::GrpMap evalMap(const FunctorObj& F, const Eval& atM, const Eval& atM2, const la::GrpMap& u);
// [psi] -> [psi . alpha], defined for alpha in A_F
la::GrpMap evalPrecompose(const FunctorObj& F, const Eval& ev, const la::GrpMap& alphaOnX);

// the R'-submodule lattice of N = F(M^)
std::vector<la::SpanBasis> subfunctors(const FunctorObj& F, i64 cap = 0);

// evaluation of a subfunctor W of F at M, as a subgroup of F(M)
la::SpanBasis subfunctorEval(const FunctorObj& F, const Eval& atM, const alg::RModule& M, const la::SpanBasis& W);

std::optional<la::GrpMap> isoFunctors(const FunctorObj& F, const FunctorObj& G);

struct Subquotient {
    FunctorPtr functor;
    la::SpanBasis inner, outer;  // witness pair inside N_G
};
// all subquotients of F up to isomorphism (includes 0 and F itself)
std::vector<Subquotient> subquotientsUpToIso(const FunctorObj& F, i64 cap = 0);
bool isSubquotient(const FunctorObj& F, const FunctorObj& G);  // F =< G
bool isStrictSubquotient(const FunctorObj& F, const FunctorObj& G);

std::vector<FunctorPtr> simpleFunctors(const std::shared_ptr<Context>& ctx);

struct AutF {
    grp::FiniteGroup autX;
    std::vector<int> aElems, bElems;  // A_F, B_F as autX indices
    grp::FiniteGroup Q;               // A_F / B_F
    std::vector<int> cosetRep;        // Q index -> autX index
    std::unordered_map<int, int> cosetOf;

    int order() const { return Q.order(); }
};
AutF autFunctor(const FunctorObj& F);
// alpha_M: the (left) action of Q on F(M), [psi] -> [psi . rep(alpha)^{-1}]
grp::Action autFAction(const AutF& A, const FunctorObj& F, const Eval& ev);

// number of isomorphism classes of indecomposable summands of N_F
int suppSize(const FunctorObj& F);

}  // namespace modrep::fun
