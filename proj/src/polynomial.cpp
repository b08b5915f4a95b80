#include "grpoly/polynomial.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "grpoly/builders.hpp"
#include "grpoly/equivalence.hpp"

namespace grpoly {

namespace {

uint64_t pack2(int a, int b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
           static_cast<uint32_t>(b);
}

bool is_point(const FinGroupoid& g) {
    return g.num_objects() == 1 && g.num_morphisms() == 1;
}

void check_leg(ValidationReport& rep, const GroupoidMap& m, const GroupoidPtr& src,
               const GroupoidPtr& tgt, const std::string& leg) {
    if (m.source.get() != src.get()) {
        rep.ok = false;
        rep.errors.push_back("leg " + leg + " does not start at its assigned groupoid");
        return;
    }
    if (m.target.get() != tgt.get()) {
        rep.ok = false;
        rep.errors.push_back("leg " + leg + " does not land in its assigned groupoid");
        return;
    }
    auto mr = validate_map(m);
    for (auto& p : mr.errors) rep.errors.push_back("leg " + leg + ": " + p);
    rep.ok = rep.ok && mr.ok;
}

void check_cell_between(ValidationReport& rep, const TwoCell& c, const GroupoidMap& lhs,
                        const GroupoidMap& rhs, const std::string& name) {
    if (!maps_equal(c.lhs, lhs) || !maps_equal(c.rhs, rhs)) {
        rep.ok = false;
        rep.errors.push_back("cell " + name + " does not connect the required composites");
        return;
    }
    auto cr = validate_two_cell(c);
    for (auto& p : cr.errors) rep.errors.push_back("cell " + name + ": " + p);
    rep.ok = rep.ok && cr.ok;
}

// Comparison functor from the corner into the homotopy pullback of (f, g),
// with components taken from the supplied filler.
GroupoidMap corner_comparison(const PullbackResult& pb, const GroupoidMap& left,
                              const GroupoidMap& right, const std::vector<int>& comp) {
    std::map<std::array<int, 3>, int> oidx, midx;
    for (size_t i = 0; i < pb.obj_key.size(); ++i) oidx[pb.obj_key[i]] = static_cast<int>(i);
    for (size_t i = 0; i < pb.mor_key.size(); ++i) midx[pb.mor_key[i]] = static_cast<int>(i);
    const FinGroupoid& src = *left.source;
    GroupoidMap ind;
    ind.source = left.source;
    ind.target = pb.apex;
    ind.ob.resize(src.num_objects());
    for (int o = 0; o < src.num_objects(); ++o)
        ind.ob[o] = oidx.at({left.ob[o], right.ob[o], comp[o]});
    ind.mor.resize(src.num_morphisms());
    for (int m = 0; m < src.num_morphisms(); ++m)
        ind.mor[m] = midx.at({ind.ob[src.src(m)], left.mor[m], right.mor[m]});
    return ind;
}

}  // namespace

ValidationReport validate_polynomial(const PolyDiagram& P) {
    ValidationReport rep;
    if (!P.I || !P.E || !P.B || !P.J) {
        rep.ok = false;
        rep.errors.push_back("diagram is missing a groupoid");
        return rep;
    }
    rep.merge(validate_groupoid(*P.I));
    rep.merge(validate_groupoid(*P.E));
    rep.merge(validate_groupoid(*P.B));
    rep.merge(validate_groupoid(*P.J));
    check_leg(rep, P.s, P.E, P.I, "s");
    check_leg(rep, P.p, P.E, P.B, "p");
    check_leg(rep, P.t, P.B, P.J, "t");
    return rep;
}

bool is_one_variable(const PolyDiagram& P) {
    return is_point(*P.I) && is_point(*P.J);
}

PolyDiagram identity_polynomial() {
    auto pt = trivial_groupoid();
    PolyDiagram P;
    P.I = P.E = P.B = P.J = pt;
    P.s = P.p = P.t = identity_map(pt);
    P.truncation = 1;
    return P;
}

PolyDiagram from_span(const GroupoidMap& f, const GroupoidMap& g) {
    if (f.source.get() != g.source.get())
        throw validation_error("from_span: the two legs start at different groupoids");
    PolyDiagram P;
    P.I = f.target;
    P.E = f.source;
    P.B = f.source;
    P.J = g.target;
    P.s = f;
    P.p = identity_map(f.source);
    P.t = g;
    return P;
}

FamilyOver extend(const PolyDiagram& P, const FamilyOver& x, ProdMode mode,
                  const Caps& caps) {
    if (x.base.get() != P.I.get())
        throw validation_error("extend: the family must live over the diagram input");
    // Work over a skeleton of the slot groupoid and cut the pulled-back family
    // down to one object per class: the strict section enumeration in the
    // dependent product is exponential in redundant isomorphic lifts, and the
    // result is only pinned down up to equivalence anyway.
    std::vector<int> reps;
    for (int c = 0; c < P.E->num_components(); ++c)
        reps.push_back(P.E->component_rep(c));
    auto sk = full_subgroupoid(P.E, reps, P.E->name() + "_sk");
    auto s2 = compose_maps(P.s, sk.incl);
    auto p2 = compose_maps(P.p, sk.incl);
    auto bc = base_change(s2, x, caps);
    std::vector<int> freps;
    for (int c = 0; c < bc.fam.total->num_components(); ++c)
        freps.push_back(bc.fam.total->component_rep(c));
    auto fsk = full_subgroupoid(bc.fam.total, freps, bc.fam.total->name() + "_sk");
    FamilyOver fam;
    fam.base = bc.fam.base;
    fam.total = fsk.g;
    fam.proj = compose_maps(bc.fam.proj, fsk.incl);
    auto z = dep_prod(p2, fam, mode, caps);
    return dep_sum(P.t, z);
}

std::pair<bool, FibreReport> is_combinatorial(const PolyDiagram& P, const Caps& caps) {
    FibreReport rep;
    bool all = true;
    const FinGroupoid& B = *P.B;
    for (int c = 0; c < B.num_components(); ++c) {
        FibreReport::Entry e;
        e.base_obj = B.component_rep(c);
        auto fib = homotopy_fibre(P.p, e.base_obj, caps);
        const FinGroupoid& F = *fib.gpd;
        e.components = F.num_components();
        e.strictly_discrete = F.num_morphisms() == F.num_objects();
        e.trivial_auts = true;
        for (int k = 0; k < F.num_components(); ++k)
            if (F.loops(F.component_rep(k)).size() != 1) {
                e.trivial_auts = false;
                break;
            }
        all = all && e.trivial_auts;
        rep.entries.push_back(e);
    }
    return {all, rep};
}

ValidationReport validate_square(const PolySquare& sq) {
    ValidationReport rep;
    rep.merge(validate_polynomial(sq.from));
    rep.merge(validate_polynomial(sq.to));
    if (!rep.ok) return rep;
    if (sq.from.I.get() != sq.to.I.get() || sq.from.J.get() != sq.to.J.get()) {
        rep.ok = false;
        rep.errors.push_back("the two diagrams do not share their endpoints");
        return rep;
    }
    check_leg(rep, sq.eMap, sq.from.E, sq.to.E, "positions");
    check_leg(rep, sq.bMap, sq.from.B, sq.to.B, "shapes");
    if (!rep.ok) return rep;
    check_cell_between(rep, sq.mid, compose_maps(sq.to.p, sq.eMap),
                       compose_maps(sq.bMap, sq.from.p), "middle");
    check_cell_between(rep, sq.cellI, compose_maps(sq.to.s, sq.eMap), sq.from.s, "input");
    check_cell_between(rep, sq.cellJ, compose_maps(sq.to.t, sq.bMap), sq.from.t, "output");
    return rep;
}

bool is_homotopy_cartesian(const PolySquare& sq, const Caps& caps) {
    auto v = validate_square(sq);
    if (!v.ok)
        throw validation_error("is_homotopy_cartesian: " +
                               (v.errors.empty() ? std::string("invalid square")
                                                   : v.errors.front()));
    auto pb = homotopy_pullback(sq.to.p, sq.bMap, caps);
    auto ind = corner_comparison(pb, sq.eMap, sq.from.p, sq.mid.comp);
    if (!validate_map(ind).ok) return false;
    return is_equivalence_functor(ind).ok;
}

PolyMapResult apply_poly_morphism(const PolySquare& sq, const FamilyOver& x,
                                  ProdMode mode, const Caps& caps) {
    if (!is_homotopy_cartesian(sq, caps))
        throw validation_error("apply_poly_morphism: square is not homotopy cartesian");
    if (x.base.get() != sq.from.I.get())
        throw validation_error("apply_poly_morphism: the family must live over the shared input");

    const FinGroupoid& I = *sq.from.I;
    const FinGroupoid& Et = *sq.to.E;
    const FinGroupoid& Bf = *sq.from.B;
    const FinGroupoid& Bt = *sq.to.B;

    auto bcF = base_change(sq.from.s, x, caps);
    auto bcT = base_change(sq.to.s, x, caps);
    std::optional<DepProd> dpF(std::in_place, sq.from.p, bcF.fam, mode, caps);
    std::optional<DepProd> dpT(std::in_place, sq.to.p, bcT.fam, mode, caps);
    if (mode == ProdMode::Auto && dpF->discrete_mode() != dpT->discrete_mode()) {
        dpF.emplace(sq.from.p, bcF.fam, ProdMode::General, caps);
        dpT.emplace(sq.to.p, bcT.fam, ProdMode::General, caps);
    }

    // Map of the pulled back families covering the position map: the input
    // part is kept, the comparison morphism absorbs the input cell.
    std::map<std::array<int, 3>, int> toidx, tmidx;
    for (size_t i = 0; i < bcT.pb.obj_key.size(); ++i)
        toidx[bcT.pb.obj_key[i]] = static_cast<int>(i);
    for (size_t i = 0; i < bcT.pb.mor_key.size(); ++i)
        tmidx[bcT.pb.mor_key[i]] = static_cast<int>(i);
    GroupoidMap W;
    W.source = bcF.fam.total;
    W.target = bcT.fam.total;
    W.ob.resize(bcF.pb.obj_key.size());
    for (size_t o = 0; o < bcF.pb.obj_key.size(); ++o) {
        const auto& k = bcF.pb.obj_key[o];
        W.ob[o] = toidx.at({sq.eMap.ob[k[0]], k[1], I.compose(k[2], sq.cellI.comp[k[0]])});
    }
    W.mor.resize(bcF.pb.mor_key.size());
    for (size_t m = 0; m < bcF.pb.mor_key.size(); ++m) {
        const auto& k = bcF.pb.mor_key[m];
        W.mor[m] = tmidx.at({W.ob[k[0]], sq.eMap.mor[k[1]], k[2]});
    }

    // Per shape: comparison of the strict position fibres, with quasi-inverses
    // for reading sections back across it.
    std::vector<GroupoidMap> G(Bf.num_objects());
    std::vector<QuasiInverse> qi(Bf.num_objects());
    for (int b = 0; b < Bf.num_objects(); ++b) {
        const auto& FF = dpF->fibre(b);
        const auto& FT = dpT->fibre(sq.bMap.ob[b]);
        GroupoidMap g;
        g.source = FF.gpd;
        g.target = FT.gpd;
        g.ob.resize(FF.obj_key.size());
        for (size_t o = 0; o < FF.obj_key.size(); ++o) {
            int ep = FF.obj_key[o][0];
            int beta = Bt.compose(sq.bMap.mor[FF.obj_key[o][1]], sq.mid.comp[ep]);
            g.ob[o] = FT.obj_idx.at(pack2(sq.eMap.ob[ep], beta));
        }
        g.mor.resize(FF.mor_key.size());
        for (size_t m = 0; m < FF.mor_key.size(); ++m)
            g.mor[m] = FT.mor_idx.at(
                pack2(g.ob[FF.mor_key[m][0]], sq.eMap.mor[FF.mor_key[m][1]]));
        G[b] = g;
        qi[b] = quasi_inverse(g);
    }

    auto transfer = [&](int bp, const DepProd::Section& sp) {
        const auto& FT = dpT->fibre(sq.bMap.ob[bp]);
        DepProd::Section s;
        s.obj.resize(FT.obj_key.size());
        s.mor.resize(FT.mor_key.size());
        for (size_t z = 0; z < FT.obj_key.size(); ++z) {
            int wp = qi[bp].psi.ob[z];
            int gamma = FT.mor_key[qi[bp].eps.comp[z]][1];
            const auto& so = sp.obj[wp];
            s.obj[z] = {W.ob[so[0]], Et.compose(gamma, sq.eMap.mor[so[1]])};
        }
        for (size_t m = 0; m < FT.mor_key.size(); ++m)
            s.mor[m] = W.mor[sp.mor[qi[bp].psi.mor[m]]];
        return s;
    };

    GroupoidPtr Zf = dpF->family().total;
    GroupoidMap M;
    M.source = Zf;
    M.target = dpT->family().total;
    M.ob.resize(Zf->num_objects());
    for (int z = 0; z < Zf->num_objects(); ++z) {
        int bp = dpF->z_key(z)[0];
        auto sec = transfer(bp, dpF->section(bp, dpF->z_key(z)[1]));
        int si = dpT->find_section(sq.bMap.ob[bp], sec);
        if (si < 0)
            throw std::logic_error("apply_poly_morphism: transferred section not found");
        M.ob[z] = dpT->z_object(sq.bMap.ob[bp], si);
    }
    const FinGroupoid& Yf = *bcF.fam.total;
    M.mor.resize(Zf->num_morphisms());
    for (int m = 0; m < Zf->num_morphisms(); ++m) {
        const auto& zm = dpF->z_morphism(m);
        int bp1 = dpF->z_key(zm.src)[0];
        int bp2 = dpF->z_key(zm.tgt)[0];
        int tau = sq.bMap.mor[zm.tau];
        int tauinv = Bt.inverse(tau);
        int taupinv = Bf.inverse(zm.tau);
        const auto& sp1 = dpF->section(bp1, dpF->z_key(zm.src)[1]);
        const auto& FT2 = dpT->fibre(sq.bMap.ob[bp2]);
        const FinGroupoid& F1 = *dpT->fibre(sq.bMap.ob[bp1]).gpd;
        const FinGroupoid& FF1 = *dpF->fibre(bp1).gpd;
        std::vector<int> delta(FT2.obj_key.size());
        for (size_t z = 0; z < FT2.obj_key.size(); ++z) {
            int wp = qi[bp2].psi.ob[z];
            int w = dpT->transport_obj(tauinv, static_cast<int>(z));
            int tnu2 = dpT->transport_mor(tauinv, qi[bp2].eps.comp[z]);
            int tv = F1.compose(F1.inverse(tnu2), qi[bp1].eps.comp[w]);
            int back = dpF->transport_obj(taupinv, wp);
            int chi = -1;
            for (int c : FF1.hom(qi[bp1].psi.ob[w], back))
                if (G[bp1].mor[c] == tv) {
                    chi = c;
                    break;
                }
            if (chi < 0)
                throw std::logic_error("apply_poly_morphism: no matching fibre morphism");
            delta[z] = W.mor[Yf.compose(zm.delta[wp], sp1.mor[chi])];
        }
        int mi = dpT->find_z_morphism(M.ob[zm.src], tau, delta);
        if (mi < 0)
            throw std::logic_error("apply_poly_morphism: image morphism not found");
        M.mor[m] = mi;
    }

    PolyMapResult res;
    res.src_ext = dep_sum(sq.from.t, dpF->family());
    res.tgt_ext = dep_sum(sq.to.t, dpT->family());
    res.map = M;
    res.over_j.lhs = compose_maps(res.tgt_ext.proj, M);
    res.over_j.rhs = res.src_ext.proj;
    res.over_j.comp.resize(Zf->num_objects());
    for (int z = 0; z < Zf->num_objects(); ++z)
        res.over_j.comp[z] = sq.cellJ.comp[dpF->z_key(z)[0]];
    return res;
}

PolyDiagram compose1(const PolyDiagram& outer, const PolyDiagram& inner,
                     const Caps& caps) {
    auto vo = validate_polynomial(outer);
    auto vi = validate_polynomial(inner);
    if (!vo.ok || !vi.ok)
        throw validation_error("compose1: invalid diagram");
    if (!is_one_variable(outer) || !is_one_variable(inner))
        throw validation_error("compose1: both diagrams must be one-variable");

    // Inner shapes fed through the outer diagram give the composite shapes:
    // an outer shape with an inner shape chosen in every slot.
    FamilyOver shapes;
    shapes.base = outer.I;
    shapes.total = inner.B;
    shapes.proj = constant_map(inner.B, outer.I, 0);
    auto bc = base_change(outer.s, shapes, caps);
    DepProd dp(outer.p, bc.fam, ProdMode::Auto, caps);
    GroupoidPtr Bn = dp.family().total;

    // Slots of a composite shape: pairs (shape, slot of its outer part).
    auto repQ = factor_as_fibration(outer.p, caps);
    auto U = strict_pullback(dp.family().proj, repQ.fibration, caps);

    // The inner shape sitting in a slot, read off the stored section.
    const FinGroupoid& Yg = *bc.fam.total;
    const auto& toInner = bc.pb.to_right;
    const FinGroupoid& Ua = *U.apex;
    GroupoidMap Phi;
    Phi.source = U.apex;
    Phi.target = inner.B;
    Phi.ob.resize(Ua.num_objects());
    auto slot_index = [&](int u) {
        int z = U.obj_key[u][0];
        int w = U.obj_key[u][1];
        int a = dp.z_key(z)[0];
        return dp.fibre(a).obj_idx.at(pack2(repQ.obj_key[w][0], repQ.obj_key[w][1]));
    };
    for (int u = 0; u < Ua.num_objects(); ++u) {
        int z = U.obj_key[u][0];
        const auto& sec = dp.section(dp.z_key(z)[0], dp.z_key(z)[1]);
        Phi.ob[u] = toInner.ob[sec.obj[slot_index(u)][0]];
    }
    Phi.mor.resize(Ua.num_morphisms());
    for (int m = 0; m < Ua.num_morphisms(); ++m) {
        int u1 = Ua.src(m);
        int u2 = Ua.tgt(m);
        int zmor = U.mor_key[m][0];
        int wmor = U.mor_key[m][1];
        const auto& zm = dp.z_morphism(zmor);
        int a1 = dp.z_key(zm.src)[0];
        const auto& sec1 = dp.section(a1, dp.z_key(zm.src)[1]);
        int alphaE = repQ.mor_key[wmor][1];
        int fm = dp.fibre(a1).mor_idx.at(pack2(slot_index(u1), alphaE));
        Phi.mor[m] = toInner.mor[Yg.compose(zm.delta[slot_index(u2)], sec1.mor[fm])];
    }

    // Positions: inner positions of the shape in a chosen slot.
    auto repP = factor_as_fibration(inner.p, caps);
    auto En = strict_pullback(Phi, repP.fibration, caps);
    GroupoidMap unfold;
    unfold.source = repP.total;
    unfold.target = inner.E;
    unfold.ob.resize(repP.obj_key.size());
    for (size_t o = 0; o < repP.obj_key.size(); ++o) unfold.ob[o] = repP.obj_key[o][0];
    unfold.mor.resize(repP.mor_key.size());
    for (size_t m = 0; m < repP.mor_key.size(); ++m) unfold.mor[m] = repP.mor_key[m][1];

    PolyDiagram comp;
    comp.I = inner.I;
    comp.J = outer.J;
    comp.B = Bn;
    comp.E = En.apex;
    comp.p = compose_maps(U.to_left, En.to_left);
    comp.s = compose_maps(inner.s, compose_maps(unfold, En.to_right));
    comp.t = compose_maps(outer.t, dp.family().proj);
    comp.truncation = -1;
    return comp;
}

FamilyOver rebase_point_family(const FamilyOver& fam, GroupoidPtr base) {
    if (!is_point(*fam.base))
        throw validation_error("rebase_point_family: the family base is not a point");
    if (!is_point(*base))
        throw validation_error("rebase_point_family: the new base is not a point");
    FamilyOver out;
    out.base = base;
    out.total = fam.total;
    out.proj = constant_map(fam.total, base, 0);
    return out;
}

BCSquare square_from_cospan(const GroupoidMap& phi, const GroupoidMap& beta,
                            const Caps& caps) {
    if (phi.target.get() != beta.target.get())
        throw validation_error("square_from_cospan: the legs land in different groupoids");
    auto pb = homotopy_pullback(phi, beta, caps);
    BCSquare sq;
    sq.P = pb.apex;
    sq.X = phi.source;
    sq.Y = beta.source;
    sq.A = phi.target;
    sq.alpha = pb.to_left;
    sq.psi = pb.to_right;
    sq.phi = phi;
    sq.beta = beta;
    sq.filler = pb.cmp;
    return sq;
}

namespace {

bool families_match(const FamilyOver& a, const FamilyOver& b, const Caps& caps) {
    if (!(a.total->cardinality() == b.total->cardinality())) return false;
    if (!equivalent(a.total, b.total, caps).equivalent) return false;
    const FinGroupoid& base = *a.base;
    for (int c = 0; c < base.num_components(); ++c) {
        int r = base.component_rep(c);
        auto fa = homotopy_fibre(a.proj, r, caps);
        auto fb = homotopy_fibre(b.proj, r, caps);
        if (!(fa.gpd->cardinality() == fb.gpd->cardinality())) return false;
    }
    return true;
}

}  // namespace

BCReport beck_chevalley_check(const BCSquare& sq, const FamilyOver& on_y,
                              const FamilyOver& on_x, const Caps& caps) {
    ValidationReport rep;
    check_leg(rep, sq.alpha, sq.P, sq.X, "corner to the right");
    check_leg(rep, sq.psi, sq.P, sq.Y, "corner downward");
    check_leg(rep, sq.phi, sq.X, sq.A, "right leg");
    check_leg(rep, sq.beta, sq.Y, sq.A, "bottom leg");
    if (rep.ok)
        check_cell_between(rep, sq.filler, compose_maps(sq.phi, sq.alpha),
                           compose_maps(sq.beta, sq.psi), "filler");
    if (!rep.ok)
        throw validation_error("beck_chevalley_check: " + rep.errors.front());
    if (on_y.base.get() != sq.Y.get())
        throw validation_error("beck_chevalley_check: first family must live over the bottom corner");
    if (on_x.base.get() != sq.X.get())
        throw validation_error("beck_chevalley_check: second family must live over the right corner");

    auto pb = homotopy_pullback(sq.phi, sq.beta, caps);
    auto ind = corner_comparison(pb, sq.alpha, sq.psi, sq.filler.comp);
    if (!is_equivalence_functor(ind).ok)
        throw validation_error("beck_chevalley_check: square is not homotopy cartesian");

    BCReport out;
    auto sum_lhs = dep_sum(sq.alpha, base_change(sq.psi, on_y, caps).fam);
    auto sum_rhs = base_change(sq.phi, dep_sum(sq.beta, on_y), caps).fam;
    out.sum_left = sum_lhs.total->cardinality();
    out.sum_right = sum_rhs.total->cardinality();
    out.sum_ok = families_match(sum_lhs, sum_rhs, caps);

    auto prod_lhs = base_change(sq.beta, dep_prod(sq.phi, on_x, ProdMode::Auto, caps), caps).fam;
    auto prod_rhs = dep_prod(sq.psi, base_change(sq.alpha, on_x, caps).fam,
                             ProdMode::Auto, caps);
    out.prod_left = prod_lhs.total->cardinality();
    out.prod_right = prod_rhs.total->cardinality();
    out.prod_ok = families_match(prod_lhs, prod_rhs, caps);
    return out;
}

}  // namespace grpoly
