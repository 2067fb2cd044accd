#include "modrep/functors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace modrep::fun {

using alg::RModule;
using la::GrpMap;
using la::Mat;
using la::PGroup;
using la::SpanBasis;
using la::Vec;

namespace {

GrpMap mapFromColumns(const PGroup& dom, const PGroup& cod, const std::vector<Vec>& cols, bool validate = false) {
    Mat m(cod.rank(), dom.rank());
    for (int j = 0; j < dom.rank(); ++j)
        for (int i = 0; i < cod.rank(); ++i) m.at(i, j) = cols[j][i];
    return GrpMap(dom, cod, std::move(m), validate);
}

RModule buildSumModule(const std::shared_ptr<Context>& ctx, const std::vector<int>& mult, alg::ModuleSum* layoutOut) {
    std::vector<const RModule*> parts;
    for (int i = 0; i < ctx->n(); ++i)
        for (int c = 0; c < mult[i]; ++c) parts.push_back(&ctx->parts[i]);
    if (parts.empty()) {
        RModule Z;
        Z.ring = ctx->parts[0].ring;
        Z.add = PGroup(ctx->parts[0].add.p, {});
        for (int i = 0; i < Z.ring->rank(); ++i) Z.action.push_back(GrpMap::zero(Z.add, Z.add));
        if (layoutOut) *layoutOut = alg::ModuleSum{Z, {}, {}};
        return Z;
    }
    alg::ModuleSum s = alg::moduleDirectSum(parts);
    if (layoutOut) *layoutOut = s;
    return s.sum;
}

}  // namespace

la::Vec Context::idem(int i) const {
    GrpMap inc = hat.inclusion(i, parts[i]);
    GrpMap prj = hat.projection(i, parts[i]);
    return endHat.fromMap(inc.compose(prj));
}

la::Vec Context::embedHom(int i, int j, const GrpMap& f) const {
    GrpMap inc = hat.inclusion(j, parts[j]);
    GrpMap prj = hat.projection(i, parts[i]);
    return endHat.fromMap(inc.compose(f).compose(prj));
}

alg::RModule Context::hatModule() const {
    RModule H;
    H.ring = endHat.E;
    H.add = hat.sum.add;
    for (int t = 0; t < endHat.E->rank(); ++t) H.action.push_back(endHat.toMap(endHat.E->add.unit(t)));
    return H;
}

std::shared_ptr<Context> makeContext(std::vector<alg::RModule> parts) {
    auto ctx = std::make_shared<Context>();
    ctx->parts = std::move(parts);
    for (size_t i = 0; i < ctx->parts.size(); ++i) {
        ctx->locals.push_back(alg::localData(ctx->parts[i]));
        for (size_t j = 0; j < i; ++j)
            if (alg::isIsomorphic(ctx->parts[i], ctx->parts[j]))
                throw InvalidInput("makeContext: parts must be pairwise non-isomorphic");
    }
    std::vector<const RModule*> ptrs;
    for (const auto& m : ctx->parts) ptrs.push_back(&m);
    ctx->hat = alg::moduleDirectSum(ptrs);
    ctx->endHat = alg::endAlgebra(ctx->hat.sum);
    return ctx;
}

Instance makeInstance(const alg::RModule& Morig) {
    alg::FullDecomposition d = alg::decomposeFull(Morig);
    Instance inst;
    inst.ctx = makeContext(d.types);
    inst.mult.assign(d.types.size(), 0);
    for (size_t t = 0; t < d.types.size(); ++t) inst.mult[t] = static_cast<int>(d.pieceIdx[t].size());
    inst.M = buildSumModule(inst.ctx, inst.mult, &inst.layout);
    // assemble the isomorphisms with the original module
    GrpMap to = GrpMap::zero(inst.M.add, Morig.add);
    GrpMap from = GrpMap::zero(Morig.add, inst.M.add);
    int slot = 0;
    for (size_t t = 0; t < d.types.size(); ++t)
        for (int c = 0; c < inst.mult[t]; ++c, ++slot) {
            const auto& piece = d.pieces[d.pieceIdx[t][c]];
            GrpMap fromType = alg::inverseIso(piece.toType);  // types[t] -> piece
            GrpMap inc = inst.layout.inclusion(slot, inst.ctx->parts[t]);
            GrpMap prj = inst.layout.projection(slot, inst.ctx->parts[t]);
            to = to.add(piece.incl.compose(fromType).compose(prj));
            from = from.add(inc.compose(piece.toType).compose(piece.proj));
        }
    inst.toOriginal = to;
    inst.fromOriginal = from;
    if (!alg::isModuleIso(inst.toOriginal)) throw TheoremViolation("makeInstance: reassembly is not an isomorphism");
    return inst;
}

la::Vec Eval::classOf(const GrpMap& psiXtoM) const { return ck.proj.apply(vx.coords(homXM.hom.coordsOf(psiXtoM))); }

GrpMap Eval::repOf(const Vec& q) const { return homXM.hom.mapOf(vx.incl.apply(ck.section(q))); }

Eval evaluate(const FunctorObj& F, const RModule& M) {
    Eval ev;
    ev.homXM = alg::homR(F.X, M);
    ev.vx = la::subgroupView(ev.homXM.carrier);
    // image of f^*: psi . f for psi in Hom(Y, M)
    alg::RHom homYM = alg::homR(F.Y, M);
    std::vector<Vec> img;
    for (int t = 0; t < homYM.ngens(); ++t) {
        GrpMap comp = homYM.basisMap(t).compose(F.f);
        img.push_back(ev.vx.coords(ev.homXM.hom.coordsOf(comp)));
    }
    ev.ck = la::cokernel(SpanBasis::span(ev.vx.group, img));
    ev.grp = ev.ck.group;
    return ev;
}

GrpMap evalMap(const FunctorObj& F, const Eval& atM, const Eval& atM2, const GrpMap& u) {
    (void)F;
    std::vector<Vec> cols;
    for (int j = 0; j < atM.grp.rank(); ++j) {
        GrpMap rep = atM.repOf(atM.grp.unit(j));
        cols.push_back(atM2.classOf(u.compose(rep)));
    }
    return mapFromColumns(atM.grp, atM2.grp, cols);
}

// [psi] -> [psi . alpha] on F(M), defined when alpha lies in A_F
GrpMap evalPrecompose(const FunctorObj& F, const Eval& ev, const GrpMap& alphaOnX) {
    (void)F;
    std::vector<Vec> cols;
    for (int j = 0; j < ev.grp.rank(); ++j) {
        GrpMap rep = ev.repOf(ev.grp.unit(j));
        cols.push_back(ev.classOf(rep.compose(alphaOnX)));
    }
    return mapFromColumns(ev.grp, ev.grp, cols);
}

namespace {

FunctorPtr buildFunctor(const std::shared_ptr<Context>& ctx, std::vector<int> xMult, std::vector<int> yMult, GrpMap f) {
    auto F = std::make_shared<FunctorObj>();
    F->ctx = ctx;
    F->xMult = std::move(xMult);
    F->yMult = std::move(yMult);
    F->X = buildSumModule(ctx, F->xMult, &F->xLayout);
    F->Y = buildSumModule(ctx, F->yMult, &F->yLayout);
    F->f = std::move(f);
    F->evalHat = evaluate(*F, ctx->hat.sum);
    // R'-module structure on F(M^)
    F->N.ring = ctx->rprime();
    F->N.add = F->evalHat.grp;
    for (int t = 0; t < ctx->rprime()->rank(); ++t) {
        GrpMap a = ctx->endHat.toMap(ctx->rprime()->add.unit(t));
        F->N.action.push_back(evalMap(*F, F->evalHat, F->evalHat, a));
    }
    return F;
}

}  // namespace

FunctorPtr homFunctor(const std::shared_ptr<Context>& ctx, const std::vector<int>& xMult) {
    alg::ModuleSum xl;
    RModule X = buildSumModule(ctx, xMult, &xl);
    alg::ModuleSum yl;
    RModule Y = buildSumModule(ctx, std::vector<int>(ctx->n(), 0), &yl);
    return buildFunctor(ctx, xMult, std::vector<int>(ctx->n(), 0), GrpMap::zero(X.add, Y.add));
}

FunctorPtr zeroFunctor(const std::shared_ptr<Context>& ctx) {
    return homFunctor(ctx, std::vector<int>(ctx->n(), 0));
}

FunctorPtr directSum(const FunctorObj& F, const FunctorObj& G) {
    std::vector<int> xm(F.ctx->n()), ym(F.ctx->n());
    for (int i = 0; i < F.ctx->n(); ++i) {
        xm[i] = F.xMult[i] + G.xMult[i];
        ym[i] = F.yMult[i] + G.yMult[i];
    }
    // the sum presentation: block map on reordered sums; build explicitly by
    // placing F's X-copies before G's within each part index
    alg::ModuleSum xl, yl;
    auto ctx = F.ctx;
    RModule X = buildSumModule(ctx, xm, &xl);
    RModule Y = buildSumModule(ctx, ym, &yl);
    auto slotBase = [&](const std::vector<int>& mf, const std::vector<int>& mg, int part, bool isG) {
        // slot index in the combined sum where this part's copies start
        int s = 0;
        for (int i = 0; i < part; ++i) s += mf[i] + mg[i];
        if (isG) s += mf[part];
        return s;
    };
    auto embed = [&](const FunctorObj& H, bool isG, const std::vector<int>& mf, const std::vector<int>& mg,
                     const alg::ModuleSum& bigLayout, const RModule& big, bool yside) {
        const std::vector<int>& hm = yside ? H.yMult : H.xMult;
        const alg::ModuleSum& hl = yside ? H.yLayout : H.xLayout;
        const RModule& hmod = yside ? H.Y : H.X;
        GrpMap inc = GrpMap::zero(hmod.add, big.add);
        int hslot = 0;
        for (int i = 0; i < F.ctx->n(); ++i)
            for (int c = 0; c < hm[i]; ++c, ++hslot) {
                int bigSlot = slotBase(mf, mg, i, isG) + c;
                inc = inc.add(bigLayout.inclusion(bigSlot, F.ctx->parts[i]).compose(hl.projection(hslot, F.ctx->parts[i])));
            }
        return inc;
    };
    GrpMap incFX = embed(F, false, F.xMult, G.xMult, xl, X, false);
    GrpMap incGX = embed(G, true, F.xMult, G.xMult, xl, X, false);
    GrpMap incFY = embed(F, false, F.yMult, G.yMult, yl, Y, true);
    GrpMap incGY = embed(G, true, F.yMult, G.yMult, yl, Y, true);
    // f on the sum: transfer via sections (the embeddings are injections with
    // left inverses given by the analogous projections)
    // build projection big X -> F.X
    auto project = [&](const FunctorObj& H, bool isG, const std::vector<int>& mf, const std::vector<int>& mg,
                       const alg::ModuleSum& bigLayout, const RModule& big, bool yside) {
        const std::vector<int>& hm = yside ? H.yMult : H.xMult;
        const alg::ModuleSum& hl = yside ? H.yLayout : H.xLayout;
        const RModule& hmod = yside ? H.Y : H.X;
        GrpMap prj = GrpMap::zero(big.add, hmod.add);
        int hslot = 0;
        for (int i = 0; i < F.ctx->n(); ++i)
            for (int c = 0; c < hm[i]; ++c, ++hslot) {
                int bigSlot = slotBase(mf, mg, i, isG) + c;
                prj = prj.add(hl.inclusion(hslot, F.ctx->parts[i]).compose(bigLayout.projection(bigSlot, F.ctx->parts[i])));
            }
        return prj;
    };
    GrpMap fSum = incFY.compose(F.f).compose(project(F, false, F.xMult, G.xMult, xl, X, false))
                      .add(incGY.compose(G.f).compose(project(G, true, F.xMult, G.xMult, xl, X, false)));
    (void)incFX;
    (void)incGX;
    return buildFunctor(F.ctx, xm, ym, fSum);
}

std::vector<SpanBasis> subfunctors(const FunctorObj& F, i64 cap) { return alg::allSubmodules(F.N, cap); }

SpanBasis subfunctorEval(const FunctorObj& F, const Eval& atM, const RModule& M, const SpanBasis& W) {
    // span of F(u)(w) over u in Hom_R(M^, M) and w in W
    alg::RHom uhom = alg::homR(F.ctx->hat.sum, M);
    std::vector<Vec> gens;
    for (int t = 0; t < uhom.ngens(); ++t) {
        GrpMap Fu = evalMap(F, F.evalHat, atM, uhom.basisMap(t));
        for (const auto& w : W.naturalRows()) gens.push_back(Fu.apply(w));
    }
    return SpanBasis::span(atM.grp, gens);
}

std::optional<GrpMap> isoFunctors(const FunctorObj& F, const FunctorObj& G) { return alg::isIsomorphic(F.N, G.N); }

namespace {

std::vector<i64> isoFingerprint(const Context& ctx, const RModule& N) {
    std::vector<i64> f;
    f.push_back(N.add.order());
    auto ex = N.add.exps;
    std::sort(ex.begin(), ex.end());
    for (int e : ex) f.push_back(e);
    // per-idempotent component orders |eps_i N|
    for (int i = 0; i < ctx.n(); ++i) {
        GrpMap ei = N.actionOf(ctx.idem(i));
        f.push_back(la::image(ei).size());
    }
    return f;
}

}  // namespace

std::vector<Subquotient> subquotientsUpToIso(const FunctorObj& F, i64 cap) {
    auto subs = subfunctors(F, cap);
    std::vector<Subquotient> out;
    std::vector<std::vector<i64>> prints;
    for (const auto& outer : subs) {
        la::SubgroupView svo;
        RModule O = alg::submoduleAsModule(F.N, outer, &svo);
        auto innerCands = alg::allSubmodules(O, cap);
        for (const auto& innerO : innerCands) {
            RModule Q = alg::quotientModule(O, innerO);
            // translate inner back to N coordinates
            std::vector<Vec> innerGens;
            for (const auto& r : innerO.naturalRows()) innerGens.push_back(svo.incl.apply(r));
            SpanBasis inner = SpanBasis::span(F.N.add, innerGens);
            auto fp = isoFingerprint(*F.ctx, Q);
            bool dup = false;
            for (size_t t = 0; t < out.size(); ++t) {
                if (prints[t] != fp) continue;
                if (alg::isIsomorphic(out[t].functor->N, Q)) {
                    dup = true;
                    break;
                }
            }
            if (dup) continue;
            Subquotient sq;
            sq.functor = functorFromModule(F.ctx, Q);
            sq.inner = inner;
            sq.outer = outer;
            out.push_back(std::move(sq));
            prints.push_back(std::move(fp));
        }
    }
    std::sort(out.begin(), out.end(), [](const Subquotient& a, const Subquotient& b) {
        if (a.functor->sizeAtHat() != b.functor->sizeAtHat()) return a.functor->sizeAtHat() < b.functor->sizeAtHat();
        return a.outer.key() < b.outer.key();
    });
    return out;
}

bool isSubquotient(const FunctorObj& F, const FunctorObj& G) {
    if (F.N.add.order() > G.N.add.order()) return false;
    auto subs = alg::allSubmodules(G.N);
    // outer descending, inner ascending, first match wins
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
        const auto& outer = *it;
        if (outer.size() < F.N.add.order()) continue;
        la::SubgroupView svo;
        RModule O = alg::submoduleAsModule(G.N, outer, &svo);
        for (const auto& innerO : alg::allSubmodules(O)) {
            if (outer.size() != innerO.size() * F.N.add.order()) continue;
            RModule Q = alg::quotientModule(O, innerO);
            if (alg::isIsomorphic(Q, F.N)) return true;
        }
    }
    return false;
}

bool isStrictSubquotient(const FunctorObj& F, const FunctorObj& G) {
    if (alg::isIsomorphic(F.N, G.N)) return false;
    return isSubquotient(F, G);
}

namespace {

// choose homogeneous generators lifting an E_i-basis of the top of N
struct CoverData {
    std::vector<int> mult;           // copies of part i
    std::vector<Vec> gens;           // elements of N, grouped by part order
    std::vector<int> genPart;
};

CoverData coverGenerators(const Context& ctx, const RModule& N) {
    CoverData cd;
    cd.mult.assign(ctx.n(), 0);
    // top = N / J(R')N
    SpanBasis JN = SpanBasis::zero(N.add);
    {
        std::vector<Vec> gens;
        auto Jrows = alg::jacobsonRadical(ctx.rprime()).naturalRows();
        for (const auto& j : Jrows) {
            GrpMap aj = N.actionOf(j);
            for (int t = 0; t < N.add.rank(); ++t) gens.push_back(aj.apply(N.add.unit(t)));
        }
        JN = alg::submoduleClosure(N, gens);
    }
    la::Cokernel top = la::cokernel(JN);
    for (int i = 0; i < ctx.n(); ++i) {
        GrpMap ei = N.actionOf(ctx.idem(i));
        SpanBasis eiN = la::image(ei);
        // project eps_i N to the top, pick generators until the joint span of
        // the picked elements covers the eps_i part of the top
        std::vector<Vec> pickedImgs;
        SpanBasis coveredTop = SpanBasis::zero(top.group);
        // target size: |eps_i top|
        GrpMap eiTop = GrpMap::zero(top.group, top.group);
        {
            std::vector<Vec> cols;
            for (int j = 0; j < top.group.rank(); ++j) cols.push_back(top.proj.apply(ei.apply(top.section(top.group.unit(j)))));
            eiTop = mapFromColumns(top.group, top.group, cols);
        }
        i64 target = la::image(eiTop).size();
        i64 qi = ctx.locals[i].residue.q();
        int ci = 0;
        for (i64 acc = 1; acc < target; acc *= qi) ++ci;
        for (const auto& x : eiN.elementsNatural()) {
            if (cd.mult[i] >= ci) break;
            Vec xt = top.proj.apply(x);
            if (top.group.isZero(xt) || coveredTop.contains(xt)) continue;
            // extend the covered span by the R'-submodule generated by x, projected
            std::vector<Vec> newGens = coveredTop.naturalRows();
            SpanBasis sub = alg::submoduleClosure(N, {x});
            for (const auto& r : sub.naturalRows()) newGens.push_back(top.proj.apply(r));
            coveredTop = SpanBasis::span(top.group, newGens);
            cd.gens.push_back(x);
            cd.genPart.push_back(i);
            ++cd.mult[i];
        }
        if (cd.mult[i] != ci) throw TheoremViolation("coverGenerators: could not lift an E_i-basis of the top");
    }
    return cd;
}

// the R'-module Hom_R(X, M^) with postcomposition action, plus helpers
struct ProjModule {
    alg::RHom hom;       // Hom_R(X, M^)
    la::SubgroupView vx;
    RModule mod;         // over R'

    GrpMap mapOfCoord(const Vec& c) const { return hom.hom.mapOf(vx.incl.apply(c)); }
    Vec coordOfMap(const GrpMap& g) const { return vx.coords(hom.hom.coordsOf(g)); }
};

ProjModule projModule(const Context& ctx, const RModule& X) {
    ProjModule pm;
    pm.hom = alg::homR(X, ctx.hat.sum);
    pm.vx = la::subgroupView(pm.hom.carrier);
    pm.mod.ring = ctx.rprime();
    pm.mod.add = pm.vx.group;
    for (int t = 0; t < ctx.rprime()->rank(); ++t) {
        GrpMap a = ctx.endHat.toMap(ctx.rprime()->add.unit(t));
        std::vector<Vec> cols;
        for (int j = 0; j < pm.vx.group.rank(); ++j) cols.push_back(pm.coordOfMap(a.compose(pm.mapOfCoord(pm.vx.group.unit(j)))));
        pm.mod.action.push_back(mapFromColumns(pm.vx.group, pm.vx.group, cols));
    }
    return pm;
}

}  // namespace

FunctorPtr functorFromModule(const std::shared_ptr<Context>& ctx, const RModule& N) {
    if (N.add.rank() == 0) return zeroFunctor(ctx);
    CoverData cov = coverGenerators(*ctx, N);
    alg::ModuleSum xl;
    RModule X = buildSumModule(ctx, cov.mult, &xl);
    ProjModule PX = projModule(*ctx, X);
    // cover map h : Hom_R(X, M^) -> N, psi -> sum act(psi_{slot} . pi_i)(gen_slot)
    std::vector<Vec> cols;
    for (int j = 0; j < PX.mod.add.rank(); ++j) {
        GrpMap psi = PX.mapOfCoord(PX.mod.add.unit(j));
        Vec acc = N.add.zero();
        int slot = 0;
        for (int i = 0; i < ctx->n(); ++i)
            for (int c = 0; c < cov.mult[i]; ++c, ++slot) {
                GrpMap comp = psi.compose(xl.inclusion(slot, ctx->parts[i])).compose(ctx->hat.projection(i, ctx->parts[i]));
                // comp : M^ -> M^, an element of R'
                Vec r = ctx->endHat.fromMap(comp);
                acc = N.add.add(acc, N.actionOf(r).apply(cov.gens[slot]));
            }
        cols.push_back(acc);
    }
    GrpMap h = mapFromColumns(PX.mod.add, N.add, cols);
    if (la::image(h).size() != N.add.order()) throw TheoremViolation("functorFromModule: cover map not surjective");
    SpanBasis K = la::kernel(h);
    if (K.size() == 1) {
        // projective: F = Hom(X, -)
        auto F = homFunctor(ctx, cov.mult);
        return F;
    }
    // cover the kernel: K as an R'-module
    la::SubgroupView svK;
    RModule Kmod = alg::submoduleAsModule(PX.mod, K, &svK);
    CoverData covK = coverGenerators(*ctx, Kmod);
    alg::ModuleSum ylTmp;
    RModule Y = buildSumModule(ctx, covK.mult, &ylTmp);
    // f : X -> Y, component for Y-slot (j,c): the kernel generator as a map X -> M_j
    std::vector<GrpMap> comps;
    {
        int slot = 0;
        for (int j = 0; j < ctx->n(); ++j)
            for (int c = 0; c < covK.mult[j]; ++c, ++slot) {
                Vec kappaCoords = svK.incl.apply(covK.gens[slot]);
                GrpMap kappa = PX.mapOfCoord(kappaCoords);  // X -> M^, lands in eps_j part
                GrpMap comp = ctx->hat.projection(j, ctx->parts[j]).compose(kappa);
                comps.push_back(comp);
            }
    }
    GrpMap f = GrpMap::zero(X.add, Y.add);
    {
        int slot = 0;
        for (int j = 0; j < ctx->n(); ++j)
            for (int c = 0; c < covK.mult[j]; ++c, ++slot)
                f = f.add(ylTmp.inclusion(slot, ctx->parts[j]).compose(comps[slot]));
    }
    auto F = buildFunctor(ctx, cov.mult, covK.mult, f);
    // construction invariant: the rebuilt module matches the input
    if (!alg::isIsomorphic(F->N, N)) throw TheoremViolation("functorFromModule: presentation does not rebuild the module");
    return F;
}

std::vector<FunctorPtr> simpleFunctors(const std::shared_ptr<Context>& ctx) {
    std::vector<FunctorPtr> out;
    RModule reg = alg::regularModule(ctx->rprime());
    for (int i = 0; i < ctx->n(); ++i) {
        // P_i = R' eps_i, S_i = P_i / J P_i
        SpanBasis Pi = alg::submoduleClosure(reg, {ctx->idem(i)});
        la::SubgroupView sv;
        RModule PiMod = alg::submoduleAsModule(reg, Pi, &sv);
        std::vector<Vec> jgens;
        for (const auto& j : alg::jacobsonRadical(ctx->rprime()).naturalRows())
            for (int t = 0; t < PiMod.add.rank(); ++t) {
                Vec inReg = ctx->rprime()->mul(j, sv.incl.apply(PiMod.add.unit(t)));
                jgens.push_back(sv.coords(inReg));
            }
        SpanBasis JPi = alg::submoduleClosure(PiMod, jgens);
        RModule Si = alg::quotientModule(PiMod, JPi);
        out.push_back(functorFromModule(ctx, Si));
    }
    return out;
}

AutF autFunctor(const FunctorObj& F) {
    AutF A;
    A.autX = grp::enumerateAut(F.X);
    ProjModule PX = projModule(*F.ctx, F.X);
    // kernel of the cover map p: in evaluation terms the kernel subgroup of
    // Hom(X,M^) is the image of f^*
    alg::RHom homYhat = alg::homR(F.Y, F.ctx->hat.sum);
    std::vector<Vec> img;
    for (int t = 0; t < homYhat.ngens(); ++t) img.push_back(PX.coordOfMap(homYhat.basisMap(t).compose(F.f)));
    SpanBasis K = SpanBasis::span(PX.mod.add, img);
    // A_F = {alpha : K . alpha = K}
    for (int g = 0; g < A.autX.order(); ++g) {
        GrpMap alpha = A.autX.asMap(g);
        bool keeps = true;
        for (const auto& r : K.naturalRows()) {
            GrpMap m = PX.mapOfCoord(r).compose(alpha);
            if (!K.contains(PX.coordOfMap(m))) { keeps = false; break; }
        }
        if (keeps) A.aElems.push_back(g);
    }
    // B_F = {1 + g f : g : Y -> X}
    alg::RHom homYX = alg::homR(F.Y, F.X);
    std::set<int> bset;
    for (const auto& gc : homYX.carrier.elementsNatural()) {
        GrpMap g = homYX.hom.mapOf(gc);
        GrpMap one = GrpMap::identity(F.X.add);
        GrpMap cand = one.add(g.compose(F.f));
        int idx = A.autX.indexOfMat(cand.m);
        if (idx < 0) throw TheoremViolation("autFunctor: 1+gf is not invertible");
        bset.insert(idx);
    }
    A.bElems.assign(bset.begin(), bset.end());
    // quotient group A_F / B_F
    std::map<int, int> elemCoset;  // autX idx -> coset id
    std::vector<std::vector<int>> cosets;
    for (int a : A.aElems) {
        if (elemCoset.count(a)) continue;
        int id = static_cast<int>(cosets.size());
        std::vector<int> cs;
        for (int b : A.bElems) {
            int ab = A.autX.mul(a, b);
            elemCoset[ab] = id;
            cs.push_back(ab);
        }
        std::sort(cs.begin(), cs.end());
        cosets.push_back(cs);
        A.cosetRep.push_back(cs.front());
    }
    // use minimal element as representative, then rebuild ids deterministically
    const int q = static_cast<int>(cosets.size());
    std::vector<int> order(q);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return cosets[x].front() < cosets[y].front(); });
    std::vector<int> newId(q);
    for (int t = 0; t < q; ++t) newId[order[t]] = t;
    std::vector<int> reps(q);
    for (int t = 0; t < q; ++t) reps[newId[t]] = cosets[t].front();
    for (auto& [el, cs] : elemCoset) cs = newId[cs];
    A.cosetRep = reps;
    for (auto& [el, cs] : elemCoset) A.cosetOf[el] = cs;
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) table[x][y] = elemCoset.at(A.autX.mul(A.cosetRep[x], A.cosetRep[y]));
    A.Q = grp::FiniteGroup::fromTable(std::move(table), elemCoset.at(A.autX.idIdx));
    return A;
}

grp::Action autFAction(const AutF& A, const FunctorObj& F, const Eval& ev) {
    // precompute permutations through [psi] -> [psi . rep^{-1}]
    auto perms = std::make_shared<std::vector<std::vector<i64>>>();
    perms->resize(A.Q.order());
    const i64 n = ev.size();
    for (int a = 0; a < A.Q.order(); ++a) {
        GrpMap alphaInv = A.autX.asMap(A.autX.inv(A.cosetRep[a]));
        GrpMap step = evalPrecompose(F, ev, alphaInv);
        (*perms)[a].resize(n);
        for (i64 x = 0; x < n; ++x) (*perms)[a][x] = ev.grp.indexOf(step.apply(ev.grp.elementAt(x)));
    }
    grp::Action act;
    act.G = &A.Q;
    act.npoints = n;
    act.apply = [perms](int g, i64 x) { return (*perms)[g][x]; };
    return act;
}

int suppSize(const FunctorObj& F) {
    if (F.N.add.rank() == 0) return 0;
    return static_cast<int>(alg::decomposeIndecomposable(F.N).size());
}

}  // namespace modrep::fun
