"""The monotone inequality rules applied by the propagation engine.

Each rule reads current intervals and flags, and emits candidate bounds
through the engine's tightener; every inequality is propagated in each
direction in which it constrains a quantity.  Rules are deliberately
one-sided where their statement is one-sided (for instance R10 requires the
fibration on the second leg); the symmetric consequence is available by
declaring the reversed pair, which R1 then links.

Rule ids are stable and appear verbatim in derivation traces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .graph import (
    Composition,
    FactorizationThrough,
    FibrewiseEquivalence,
    HomotopyEquiv,
    MapNode,
    Precomposition,
    ProblemGraph,
    ProductPairing,
    SYNC_NO,
    SYNC_UNKNOWN,
    SYNC_YES,
)
from .intervals import ExtNat, INF, Interval, ONE, ZERO, shifted_ceil_div, shifted_product


@dataclass(frozen=True)
class Rule:
    rule_id: str
    anchor: str
    apply: Callable[[ProblemGraph, "object"], None]


def _pairs(graph: ProblemGraph):
    for pid in sorted(graph.pairs):
        yield pid, graph.pairs[pid]


def _maps(graph: ProblemGraph):
    for mid in sorted(graph.maps):
        yield mid, graph.maps[mid]


def _q(node, quantity: str) -> Interval:
    return node.quantities[quantity]


def _has_section(m: MapNode) -> bool:
    return m.has_strict_section or m.has_homotopy_section


# R1 ---------------------------------------------------------------------------


def _r1_symmetry(graph: ProblemGraph, t) -> None:
    index = graph.pair_index()
    for pid, pair in _pairs(graph):
        twin_id = index.get((pair.g, pair.f))
        if twin_id is None or twin_id == pid or twin_id < pid:
            continue
        twin = graph.pairs[twin_id]
        for q in ("TC", "TCH"):
            t.equate("R1", pid, q, twin_id, q)
        if pair.sync != twin.sync:
            if SYNC_UNKNOWN not in (pair.sync, twin.sync):
                t.contradiction("R1", f"pairs {pid} and {twin_id} declare opposite"
                                " synchronizability")
            decided = pair.sync if pair.sync != SYNC_UNKNOWN else twin.sync
            pair.sync = decided
            twin.sync = decided
            t.mark_changed()


# R2 ---------------------------------------------------------------------------


def _r2_target_division(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        _, _, z = graph.pair_spaces(pair)
        tcz = _q(z, "TC")
        tcp = _q(pair, "TC")
        sp = _q(pair, "secprod")
        prem = (t.premise(z.id, "TC"), t.premise(pid, "secprod"))
        t.bound("R2", pid, "TC", lo=shifted_ceil_div(tcz.lo, sp.hi), premises=prem)
        t.bound("R2", z.id, "TC", hi=shifted_product(tcp.hi, sp.hi),
                premises=(t.premise(pid, "TC"), t.premise(pid, "secprod")))
        t.bound("R2", pid, "secprod", lo=shifted_ceil_div(tcz.lo, tcp.hi),
                premises=(t.premise(z.id, "TC"), t.premise(pid, "TC")))


# R3 ---------------------------------------------------------------------------


def _r3_secprod_subadditive(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        _, _, z = graph.pair_spaces(pair)
        if not z.normal_products:
            continue
        f, g = graph.pair_maps(pair)
        t.bound("R3", pid, "secprod",
                hi=_q(f, "sec").hi + _q(g, "sec").hi,
                premises=(t.premise(f.id, "sec"), t.premise(g.id, "sec")),
                conditions=(f"{z.id}.normal_products",))


# R4 ---------------------------------------------------------------------------


def _r4_sections_force_target(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        if not (f.has_strict_section and g.has_strict_section):
            continue
        _, _, z = graph.pair_spaces(pair)
        conds = (f"{f.id}.has_strict_section", f"{g.id}.has_strict_section")
        t.bound("R4", pid, "secprod", hi=ZERO, conditions=conds)
        t.bound("R4", pid, "TC", lo=_q(z, "TC").lo,
                premises=(t.premise(z.id, "TC"),), conditions=conds)


# R5 / R6 / R24 -----------------------------------------------------------------


def _product_normal(graph: ProblemGraph, rel: ProductPairing) -> bool:
    left = graph.pairs[rel.left_pair]
    right = graph.pairs[rel.right_pair]
    spaces = set()
    for pair in (left, right):
        f, g = graph.pair_maps(pair)
        spaces.add(f.domain)
        spaces.add(g.domain)
    return all(graph.spaces[s].normal_products for s in spaces)


def _r5_product_subadditive(graph: ProblemGraph, t) -> None:
    for rel in graph.relations:
        if not isinstance(rel, ProductPairing) or not _product_normal(graph, rel):
            continue
        prod, left, right = rel.product_pair, rel.left_pair, rel.right_pair
        tl = _q(graph.pairs[left], "TC")
        tr = _q(graph.pairs[right], "TC")
        tp = _q(graph.pairs[prod], "TC")
        conds = ("normal products",)
        t.bound("R5", prod, "TC", hi=tl.hi + tr.hi,
                premises=(t.premise(left, "TC"), t.premise(right, "TC")),
                conditions=conds)
        t.bound("R5", left, "TC", lo=tp.lo.saturating_sub(tr.hi),
                premises=(t.premise(prod, "TC"), t.premise(right, "TC")),
                conditions=conds)
        t.bound("R5", right, "TC", lo=tp.lo.saturating_sub(tl.hi),
                premises=(t.premise(prod, "TC"), t.premise(left, "TC")),
                conditions=conds)


def _r6_product_lower(graph: ProblemGraph, t) -> None:
    for rel in graph.relations:
        if not isinstance(rel, ProductPairing):
            continue
        prod, left, right = rel.product_pair, rel.left_pair, rel.right_pair
        tp = _q(graph.pairs[prod], "TC")
        for factor in (left, right):
            t.bound("R6", prod, "TC", lo=_q(graph.pairs[factor], "TC").lo,
                    premises=(t.premise(factor, "TC"),))
            t.bound("R6", factor, "TC", hi=tp.hi, premises=(t.premise(prod, "TC"),))


def _r24_product_zero_factor(graph: ProblemGraph, t) -> None:
    for rel in graph.relations:
        if not isinstance(rel, ProductPairing) or not _product_normal(graph, rel):
            continue
        prod, left, right = rel.product_pair, rel.left_pair, rel.right_pair
        if _q(graph.pairs[right], "TC").hi == ZERO:
            t.equate("R24", prod, "TC", left, "TC",
                     conditions=(f"TC({right}) = 0", "normal products"))
        if _q(graph.pairs[left], "TC").hi == ZERO:
            t.equate("R24", prod, "TC", right, "TC",
                     conditions=(f"TC({left}) = 0", "normal products"))


# R7 / R8 / R17 -----------------------------------------------------------------


def _r7_postcompose(graph: ProblemGraph, t) -> None:
    for rel in graph.relations:
        if not isinstance(rel, Composition):
            continue
        post, base = rel.post_pair, rel.base_pair
        if rel.has_retraction:
            t.equate("R7", post, "TC", base, "TC", conditions=("retraction declared",))
        else:
            t.bound("R7", post, "TC", hi=_q(graph.pairs[base], "TC").hi,
                    premises=(t.premise(base, "TC"),))
            t.bound("R7", base, "TC", lo=_q(graph.pairs[post], "TC").lo,
                    premises=(t.premise(post, "TC"),))


def _sec_product_hi(graph: ProblemGraph, u: MapNode, v: MapNode) -> ExtNat:
    """Sound upper bound for sec(u x v): 0 from global sections, otherwise
    subadditivity when the codomain product is normal."""
    su = _q(u, "sec").hi
    sv = _q(v, "sec").hi
    if su == ZERO and sv == ZERO:
        return ZERO
    cu = graph.spaces[u.codomain]
    cv = graph.spaces[v.codomain]
    if cu.normal_products and cv.normal_products:
        return su + sv
    return INF


def _r8_precompose(graph: ProblemGraph, t) -> None:
    for rel in graph.relations:
        if not isinstance(rel, Precomposition):
            continue
        pre, base = rel.pre_pair, rel.base_pair
        u = graph.maps[rel.u_map]
        v = graph.maps[rel.v_map]
        sec_uv = _sec_product_hi(graph, u, v)
        prem = (t.premise(u.id, "sec"), t.premise(v.id, "sec"))
        t.bound("R8", base, "TC",
                hi=shifted_product(_q(graph.pairs[pre], "TC").hi, sec_uv),
                premises=prem + (t.premise(pre, "TC"),))
        t.bound("R8", pre, "TC",
                lo=shifted_ceil_div(_q(graph.pairs[base], "TC").lo, sec_uv),
                premises=prem + (t.premise(base, "TC"),))
        if u.fibration and v.fibration:
            conds = (f"{u.id}.fibration", f"{v.id}.fibration")
            if _has_section(u) and _has_section(v):
                t.equate("R8", pre, "TC", base, "TC",
                         conditions=conds + ("sections on u and v",))
            else:
                t.bound("R8", pre, "TC", hi=_q(graph.pairs[base], "TC").hi,
                        premises=(t.premise(base, "TC"),), conditions=conds)


def _r17_composition_tch(graph: ProblemGraph, t) -> None:
    for rel in graph.relations:
        if isinstance(rel, Composition):
            derived, base = rel.post_pair, rel.base_pair
        elif isinstance(rel, Precomposition):
            derived, base = rel.pre_pair, rel.base_pair
        else:
            continue
        t.bound("R17", derived, "TCH", hi=_q(graph.pairs[base], "TCH").hi,
                premises=(t.premise(base, "TCH"),))
        t.bound("R17", base, "TCH", lo=_q(graph.pairs[derived], "TCH").lo,
                premises=(t.premise(derived, "TCH"),))


# R10 ---------------------------------------------------------------------------


def _r10_collaboration(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        if not (g.fibration and g.surjective):
            continue
        conds = (f"{g.id}.fibration", f"{g.id}.surjective")
        t.bound("R10", pid, "TC", hi=_q(f, "TC").hi,
                premises=(t.premise(f.id, "TC"),), conditions=conds)
        t.bound("R10", f.id, "TC", lo=_q(pair, "TC").lo,
                premises=(t.premise(pid, "TC"),), conditions=conds)


# R11 ---------------------------------------------------------------------------


def _r11_homotopy_below_strict(graph: ProblemGraph, t) -> None:
    for mid, m in _maps(graph):
        if m.fibration:
            t.equate("R11", mid, "TCH", mid, "TC", conditions=(f"{mid}.fibration",))
        else:
            t.bound("R11", mid, "TCH", hi=_q(m, "TC").hi,
                    premises=(t.premise(mid, "TC"),))
            t.bound("R11", mid, "TC", lo=_q(m, "TCH").lo,
                    premises=(t.premise(mid, "TCH"),))
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        if f.fibration and g.fibration:
            t.equate("R11", pid, "TCH", pid, "TC",
                     conditions=(f"{f.id}.fibration", f"{g.id}.fibration"))
        else:
            t.bound("R11", pid, "TCH", hi=_q(pair, "TC").hi,
                    premises=(t.premise(pid, "TC"),))
            t.bound("R11", pid, "TC", lo=_q(pair, "TCH").lo,
                    premises=(t.premise(pid, "TCH"),))


# R12 ---------------------------------------------------------------------------


def _r12_homotopic_distance(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        if "D" not in pair.quantities:
            continue
        x, _, _ = graph.pair_spaces(pair)
        d = _q(pair, "D")
        tch = _q(pair, "TCH")
        t.bound("R12", pid, "TCH", lo=d.lo, premises=(t.premise(pid, "D"),))
        t.bound("R12", pid, "D", hi=tch.hi, premises=(t.premise(pid, "TCH"),))
        if x.normal_products:
            tcx = _q(x, "TC")
            conds = (f"{x.id}.normal_products",)
            t.bound("R12", pid, "TCH", hi=d.hi + tcx.hi,
                    premises=(t.premise(pid, "D"), t.premise(x.id, "TC")),
                    conditions=conds)
            t.bound("R12", pid, "D", lo=tch.lo.saturating_sub(tcx.hi),
                    premises=(t.premise(pid, "TCH"), t.premise(x.id, "TC")),
                    conditions=conds)
            t.bound("R12", x.id, "TC", lo=tch.lo.saturating_sub(d.hi),
                    premises=(t.premise(pid, "TCH"), t.premise(pid, "D")),
                    conditions=conds)


# R13 ---------------------------------------------------------------------------


def _r13_factor_homotopy_bounds(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        for m in (f, g):
            t.bound("R13", pid, "TCH", hi=_q(m, "TCH").hi,
                    premises=(t.premise(m.id, "TCH"),))
            t.bound("R13", m.id, "TCH", lo=_q(pair, "TCH").lo,
                    premises=(t.premise(pid, "TCH"),))


# R14 ---------------------------------------------------------------------------


def _r14_target_and_cat_bounds(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        _, _, z = graph.pair_spaces(pair)
        tch = _q(pair, "TCH")
        t.bound("R14", pid, "TCH", hi=_q(z, "TC").hi,
                premises=(t.premise(z.id, "TC"),))
        t.bound("R14", z.id, "TC", lo=tch.lo, premises=(t.premise(pid, "TCH"),))
        if not z.path_connected:
            continue
        conds = (f"{z.id}.path_connected",)
        for m in (f, g):
            t.bound("R14", pid, "TCH", lo=_q(m, "cat").lo,
                    premises=(t.premise(m.id, "cat"),), conditions=conds)
            t.bound("R14", m.id, "cat", hi=tch.hi,
                    premises=(t.premise(pid, "TCH"),), conditions=conds)
        t.bound("R14", pid, "TCH", hi=_q(pair, "catprod").hi,
                premises=(t.premise(pid, "catprod"),), conditions=conds)
        t.bound("R14", pid, "catprod", lo=tch.lo,
                premises=(t.premise(pid, "TCH"),), conditions=conds)


# R15 / R16 / R20 ---------------------------------------------------------------


def _r15_zero_iff_null(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        _, _, z = graph.pair_spaces(pair)
        if not z.path_connected:
            continue
        conds = (f"{z.id}.path_connected",)
        catf = _q(f, "cat")
        catg = _q(g, "cat")
        if catf.hi == ZERO and catg.hi == ZERO:
            t.bound("R15", pid, "TCH", hi=ZERO,
                    premises=(t.premise(f.id, "cat"), t.premise(g.id, "cat")),
                    conditions=conds)
        if ONE <= catf.lo or ONE <= catg.lo:
            t.bound("R15", pid, "TCH", lo=ONE,
                    premises=(t.premise(f.id, "cat"), t.premise(g.id, "cat")),
                    conditions=conds)
        if _q(pair, "TCH").hi == ZERO:
            for m in (f, g):
                t.bound("R15", m.id, "cat", hi=ZERO,
                        premises=(t.premise(pid, "TCH"),), conditions=conds)


def _r16_one_null_gives_cat(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        _, _, z = graph.pair_spaces(pair)
        if not z.path_connected:
            continue
        if _q(f, "cat").hi == ZERO:
            t.equate("R16", pid, "TCH", g.id, "cat",
                     conditions=(f"{f.id} nullhomotopic", f"{z.id}.path_connected"))
        if _q(g, "cat").hi == ZERO:
            t.equate("R16", pid, "TCH", f.id, "cat",
                     conditions=(f"{g.id} nullhomotopic", f"{z.id}.path_connected"))


def _r20_zero_forces_null(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        if ONE <= _q(f, "cat").lo or ONE <= _q(g, "cat").lo:
            t.bound("R20", pid, "TC", lo=ONE,
                    premises=(t.premise(f.id, "cat"), t.premise(g.id, "cat")))
        if _q(pair, "TC").hi == ZERO:
            for m in (f, g):
                t.bound("R20", m.id, "cat", hi=ZERO,
                        premises=(t.premise(pid, "TC"),))


# R18 / R19 ---------------------------------------------------------------------


def _r18_right_inverses(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        if f.has_right_homotopy_inverse and g.has_right_homotopy_inverse:
            _, _, z = graph.pair_spaces(pair)
            t.equate("R18", pid, "TCH", z.id, "TC",
                     conditions=(f"{f.id}.has_right_homotopy_inverse",
                                 f"{g.id}.has_right_homotopy_inverse"))


def _r19_hgroup_difference(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        if "catdelta" not in pair.quantities:
            continue
        _, _, z = graph.pair_spaces(pair)
        if z.h_group and z.path_connected:
            t.equate("R19", pid, "TCH", pid, "catdelta",
                     conditions=(f"{z.id}.h_group", f"{z.id}.path_connected"))


# R21 ---------------------------------------------------------------------------


def _r21_synchronizability(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        x = graph.spaces[f.domain]
        if pair.images_disjoint and pair.sync != SYNC_NO:
            if pair.sync == SYNC_YES:
                t.contradiction("R21", f"pair {pid} has disjoint images but was"
                                " declared synchronizable")
            pair.sync = SYNC_NO
            t.mark_changed()
        if pair.sync != SYNC_NO:
            inferred_yes = False
            if f.surjective and x.path_connected and g.is_identity:
                inferred_yes = True
            elif f.surjective and x.path_connected and g.surjective and g.fibration:
                inferred_yes = True
            else:
                for rel in graph.relations:
                    if isinstance(rel, FactorizationThrough) and \
                            rel.outer_pair == pid and \
                            graph.pairs[rel.inner_pair].sync == SYNC_YES:
                        inferred_yes = True
                        break
            if inferred_yes:
                if pair.sync == SYNC_NO:
                    t.contradiction("R21", f"pair {pid} inferred synchronizable but"
                                    " declared not synchronizable")
                if pair.sync != SYNC_YES:
                    pair.sync = SYNC_YES
                    t.mark_changed()
        if pair.sync == SYNC_NO:
            t.bound("R21", pid, "TC", lo=INF,
                    conditions=(f"{pid} not synchronizable",))


# R22 / R23 ---------------------------------------------------------------------


def _r22_secat_below_sec(graph: ProblemGraph, t) -> None:
    for mid, m in _maps(graph):
        if m.fibration:
            t.equate("R22", mid, "secat", mid, "sec",
                     conditions=(f"{mid}.fibration",))
        else:
            t.bound("R22", mid, "secat", hi=_q(m, "sec").hi,
                    premises=(t.premise(mid, "sec"),))
            t.bound("R22", mid, "sec", lo=_q(m, "secat").lo,
                    premises=(t.premise(mid, "secat"),))


def _r23_identity_leg(graph: ProblemGraph, t) -> None:
    for mid, m in _maps(graph):
        if m.is_identity:
            z = m.codomain
            t.equate("R23", mid, "TC", z, "TC", conditions=(f"{mid}.is_identity",))
            t.equate("R23", mid, "TCH", z, "TC", conditions=(f"{mid}.is_identity",))
            t.equate("R23", mid, "cat", z, "cat", conditions=(f"{mid}.is_identity",))
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        if g.is_identity:
            t.equate("R23", pid, "TC", f.id, "TC", conditions=(f"{g.id}.is_identity",))
            t.equate("R23", pid, "TCH", f.id, "TCH", conditions=(f"{g.id}.is_identity",))
        if f.is_identity:
            t.equate("R23", pid, "TC", g.id, "TC", conditions=(f"{f.id}.is_identity",))
            t.equate("R23", pid, "TCH", g.id, "TCH", conditions=(f"{f.id}.is_identity",))


# R25 / R26 ---------------------------------------------------------------------


def _r25_homotopy_invariance(graph: ProblemGraph, t) -> None:
    for rel in graph.relations:
        if isinstance(rel, HomotopyEquiv):
            t.equate("R25", rel.pair_a, "TCH", rel.pair_b, "TCH",
                     conditions=("legwise homotopy declared",))


def _r26_triangle(graph: ProblemGraph, t) -> None:
    index = graph.pair_index()
    for pid, pair in _pairs(graph):
        if "D" not in pair.quantities:
            continue
        f, g = graph.pair_maps(pair)
        x = graph.spaces[f.domain]
        if not x.normal_products:
            continue
        for hid in sorted(graph.maps):
            h = graph.maps[hid]
            if h.domain != f.domain or h.codomain != f.codomain:
                continue
            left = index.get((pair.f, hid))
            right = index.get((hid, pair.g))
            if left is None or right is None:
                continue
            tl = _q(graph.pairs[left], "TCH")
            tr = _q(graph.pairs[right], "TCH")
            conds = (f"{x.id}.normal_products",)
            t.bound("R26", pid, "TCH", hi=tl.hi + tr.hi,
                    premises=(t.premise(left, "TCH"), t.premise(right, "TCH")),
                    conditions=conds)
            t.bound("R26", left, "TCH",
                    lo=_q(pair, "TCH").lo.saturating_sub(tr.hi),
                    premises=(t.premise(pid, "TCH"), t.premise(right, "TCH")),
                    conditions=conds)
            t.bound("R26", right, "TCH",
                    lo=_q(pair, "TCH").lo.saturating_sub(tl.hi),
                    premises=(t.premise(pid, "TCH"), t.premise(left, "TCH")),
                    conditions=conds)


# R27 / R28 / R29 ---------------------------------------------------------------


def _r27_sectioned_fibration(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        if g.fibration and _has_section(g):
            t.equate("R27", pid, "TC", f.id, "TC",
                     conditions=(f"{g.id}.fibration", f"{g.id} has a section"))


def _r28_sectioned_other_leg(graph: ProblemGraph, t) -> None:
    for pid, pair in _pairs(graph):
        f, g = graph.pair_maps(pair)
        if not (g.fibration and f.has_homotopy_section):
            continue
        conds = (f"{g.id}.fibration", f"{f.id}.has_homotopy_section")
        if f.fibration:
            t.equate("R28", pid, "TC", g.id, "TC",
                     conditions=conds + (f"{f.id}.fibration",))
        else:
            t.bound("R28", pid, "TC", lo=_q(g, "TC").lo,
                    premises=(t.premise(g.id, "TC"),), conditions=conds)
            t.bound("R28", g.id, "TC", hi=_q(pair, "TC").hi,
                    premises=(t.premise(pid, "TC"),), conditions=conds)


def _r29_fibrewise_equivalence(graph: ProblemGraph, t) -> None:
    for rel in graph.relations:
        if not isinstance(rel, FibrewiseEquivalence):
            continue
        shared_g = graph.maps[graph.pairs[rel.pair_a].g]
        if shared_g.fibration:
            t.equate("R29", rel.pair_a, "TC", rel.pair_b, "TC",
                     conditions=(f"{shared_g.id}.fibration",
                                 "fibrewise equivalence declared"))


RULES: tuple[Rule, ...] = (
    Rule("R1", "symmetry: TC(f,g) = TC(g,f) and TCH(f,g) = TCH(g,f)", _r1_symmetry),
    Rule("R2", "(TC(f,g)+1)*(sec(fxg)+1) >= TC(Z)+1", _r2_target_division),
    Rule("R3", "sec(fxg) <= sec(f) + sec(g) over a normal codomain product",
         _r3_secprod_subadditive),
    Rule("R4", "strict global sections on both legs force TC(f,g) >= TC(Z)",
         _r4_sections_force_target),
    Rule("R5", "TC(fxf',gxg') <= TC(f,g) + TC(f',g') over normal products",
         _r5_product_subadditive),
    Rule("R6", "TC(fxf',gxg') >= max(TC(f,g), TC(f',g'))", _r6_product_lower),
    Rule("R7", "TC(w.f, w.g) <= TC(f,g); equal given a compatible retraction",
         _r7_postcompose),
    Rule("R8", "(TC(f.u,g.v)+1)*(sec(uxv)+1) >= TC(f,g)+1; fibration legs reverse it",
         _r8_precompose),
    Rule("R9", "cup-length of the difference classes bounds TC and TCH from below",
         lambda graph, t: None),
    Rule("R10", "second leg a surjective fibration: TC(f,g) <= TC(f)",
         _r10_collaboration),
    Rule("R11", "TCH <= TC, with equality when the legs are fibrations",
         _r11_homotopy_below_strict),
    Rule("R12", "same domain: D(f,g) <= TCH(f,g) <= D(f,g) + TC(X) (normal X)",
         _r12_homotopic_distance),
    Rule("R13", "TCH(f,g) <= min(TCH(f), TCH(g))", _r13_factor_homotopy_bounds),
    Rule("R14", "TCH(f,g) <= TC(Z); path-connected Z: max(cat f, cat g) <= TCH(f,g)"
         " <= cat(fxg)", _r14_target_and_cat_bounds),
    Rule("R15", "path-connected Z: TCH(f,g) = 0 exactly when both legs are"
         " nullhomotopic", _r15_zero_iff_null),
    Rule("R16", "one leg nullhomotopic over path-connected Z: TCH(f,g) = cat of"
         " the other leg", _r16_one_null_gives_cat),
    Rule("R17", "pre- and post-composition never raise TCH", _r17_composition_tch),
    Rule("R18", "right homotopy inverses on both legs: TCH(f,g) = TC(Z)",
         _r18_right_inverses),
    Rule("R19", "H-group target: TCH(f,g) equals the supplied cat of the"
         " difference map", _r19_hgroup_difference),
    Rule("R20", "TC(f,g) = 0 forces both legs nullhomotopic", _r20_zero_forces_null),
    Rule("R21", "synchronizability: disjoint images force no; surjection and"
         " fibration patterns force yes; no forces TC = inf", _r21_synchronizability),
    Rule("R22", "secat(f) <= sec(f), equal for fibrations", _r22_secat_below_sec),
    Rule("R23", "identity leg: pair quantities match the other leg's quantities",
         _r23_identity_leg),
    Rule("R24", "product with a TC-zero factor keeps TC unchanged (normal products)",
         _r24_product_zero_factor),
    Rule("R25", "legwise homotopic pairs share TCH", _r25_homotopy_invariance),
    Rule("R26", "same-domain triangle: TCH(f,g) <= TCH(f,h) + TCH(h,g) (normal"
         " domain)", _r26_triangle),
    Rule("R27", "second leg a fibration with a section: TC(f,g) = TC(f)",
         _r27_sectioned_fibration),
    Rule("R28", "second leg a fibration, first with a homotopy section:"
         " TC(f,g) >= TC(g); both fibrations give equality", _r28_sectioned_other_leg),
    Rule("R29", "fibrewise-equivalent first legs over a fibration share TC",
         _r29_fibrewise_equivalence),
)

RULE_IDS: tuple[str, ...] = tuple(r.rule_id for r in RULES)
RULES_BY_ID: dict[str, Rule] = {r.rule_id: r for r in RULES}
ANCHORS: dict[str, str] = {r.rule_id: r.anchor for r in RULES}
