"""Fixpoint propagation with derivation traces.

propagate sweeps the rule table in a fixed order until no interval tightens.
Every tightening is recorded as a DerivationStep with premise snapshots, so a
bound can later be explained by the minimal chain of steps that produced it.
All rules are monotone interval operators, so the fixpoint does not depend on
the sweep order; the order is fixed purely for reproducible traces.
"""

from __future__ import annotations

from .algebra import tensor_product
from .cuplength import LcpResult, lcp_subspace_iteration
from .errors import ContradictionDetected, GraphValidationError, IterationLimitExceeded
from .fields import CoefficientField
from .graph import DerivationStep, Premise, ProblemGraph, SYNC_NO
from .homs import bar_generators
from .intervals import EmptyIntervalError, ExtNat, INF, Interval
from .rules import ANCHORS, RULES, RULES_BY_ID, RULE_IDS


class Tightener:
    """Applies candidate bounds to the graph and records the steps."""

    def __init__(self, graph: ProblemGraph):
        self.graph = graph
        self.steps: list[DerivationStep] = []
        self.changed = False

    def premise(self, node_id: str, quantity: str) -> Premise:
        node = self.graph.node(node_id)
        return Premise(node_id, quantity, node.quantities[quantity])

    def _apply(self, rule: str, node_id: str, quantity: str, candidate: Interval,
               premises: tuple[Premise, ...], conditions: tuple[str, ...]) -> None:
        node = self.graph.node(node_id)
        current = node.quantities[quantity]
        try:
            met = current.meet(candidate)
        except EmptyIntervalError as exc:
            raise ContradictionDetected(
                f"rule {rule} tightens {quantity}({node_id}) to the empty"
                f" interval: current {current}, candidate {candidate}",
                trace=self.graph.trace + self.steps,
                node=node_id, quantity=quantity) from exc
        if met == current:
            return
        step = DerivationStep(
            index=len(self.graph.trace) + len(self.steps),
            rule=rule, anchor=ANCHORS[rule], node=node_id, quantity=quantity,
            old=current, new=met, premises=premises, conditions=conditions)
        node.quantities[quantity] = met
        self.steps.append(step)
        self.changed = True

    def bound(self, rule: str, node_id: str, quantity: str, *,
              lo: ExtNat | None = None, hi: ExtNat | None = None,
              premises: tuple[Premise, ...] = (),
              conditions: tuple[str, ...] = ()) -> None:
        candidate = Interval(lo if lo is not None else ExtNat(0),
                             hi if hi is not None else INF)
        self._apply(rule, node_id, quantity, candidate, premises, conditions)

    def equate(self, rule: str, node_a: str, qty_a: str, node_b: str, qty_b: str,
               conditions: tuple[str, ...] = ()) -> None:
        a = self.graph.node(node_a).quantities[qty_a]
        b = self.graph.node(node_b).quantities[qty_b]
        self._apply(rule, node_a, qty_a, b, (self.premise(node_b, qty_b),), conditions)
        self._apply(rule, node_b, qty_b,
                    self.graph.node(node_a).quantities[qty_a],
                    (self.premise(node_a, qty_a),), conditions)

    def contradiction(self, rule: str, message: str) -> None:
        raise ContradictionDetected(f"rule {rule}: {message}",
                                    trace=self.graph.trace + self.steps)

    def mark_changed(self) -> None:
        """Record a non-interval state change (a sync flag) so the sweep
        loop keeps going until those stabilize too."""
        self.changed = True


def propagate(graph: ProblemGraph, max_iterations: int = 50,
              rule_order: list[str] | None = None
              ) -> tuple[ProblemGraph, list[DerivationStep]]:
    """Run all rules to a fixpoint; returns the graph and the new steps.

    rule_order, when given, must be a permutation of the rule ids; the
    fixpoint is the same for every order (the rules are monotone), only the
    trace differs.
    """
    graph.prepare()
    if rule_order is None:
        order = list(RULE_IDS)
    else:
        if sorted(rule_order) != sorted(RULE_IDS):
            raise GraphValidationError("rule_order must be a permutation of the rule ids")
        order = list(rule_order)

    tightener = Tightener(graph)
    try:
        for _ in range(max_iterations):
            tightener.changed = False
            for rule_id in order:
                RULES_BY_ID[rule_id].apply(graph, tightener)
            if not tightener.changed:
                break
        else:
            raise IterationLimitExceeded(
                f"no fixpoint within {max_iterations} iterations")
    finally:
        graph.trace.extend(tightener.steps)
    return graph, tightener.steps


def bound_from_cohomology(graph: ProblemGraph, pair_id: str
                          ) -> list[DerivationStep]:
    """Compute the cup-length of the difference classes for one pair and
    raise the lower bounds of TC and TCH accordingly (rule R9).

    Requires induced homs on both maps and loaded cohomology on the three
    spaces; returns the recorded steps (empty when nothing tightened).
    """
    graph.prepare()
    pair = graph.pairs.get(pair_id)
    if pair is None:
        raise GraphValidationError(f"unknown pair {pair_id!r}")
    result = pair_lcp(graph, pair_id)
    if result is None:
        return []
    tightener = Tightener(graph)
    lo = ExtNat(result.value)
    conds = (f"lcp = {result.value}",)
    tightener.bound("R9", pair_id, "TC", lo=lo, conditions=conds)
    tightener.bound("R9", pair_id, "TCH", lo=lo, conditions=conds)
    graph.trace.extend(tightener.steps)
    return tightener.steps


def pair_lcp(graph: ProblemGraph, pair_id: str) -> LcpResult | None:
    """Cup-length data for a pair, or None when the algebra side is missing.

    The result is cached on the graph; witnesses are reported through the
    source labels of the generating classes.
    """
    cached = graph.lcp_results.get(pair_id)
    if cached is not None:
        return cached
    pair = graph.pairs[pair_id]
    f, g = graph.pair_maps(pair)
    x, y, z = graph.pair_spaces(pair)
    if f.induced is None or g.induced is None:
        return None
    if x.cohomology is None or y.cohomology is None or z.cohomology is None:
        return None
    if f.induced.source is not z.cohomology or f.induced.target is not x.cohomology:
        raise GraphValidationError(
            f"induced hom of {f.id} does not run from the codomain cohomology"
            " to the domain cohomology")
    if g.induced.source is not z.cohomology or g.induced.target is not y.cohomology:
        raise GraphValidationError(
            f"induced hom of {g.id} does not run from the codomain cohomology"
            " to the domain cohomology")
    ambient = tensor_product(x.cohomology, y.cohomology)
    gens = bar_generators(f.induced, g.induced, ambient)
    result = lcp_subspace_iteration(gens)
    graph.lcp_results[pair_id] = result
    graph.lcp_generators[pair_id] = gens
    return result


def explain(graph: ProblemGraph, node_id: str, quantity: str
            ) -> list[DerivationStep]:
    """Minimal sub-trace justifying the current lo and hi of one quantity,
    in dependency order.  Empty when only input assertions touched it."""
    node = graph.node(node_id)
    if quantity not in node.quantities:
        raise GraphValidationError(f"node {node_id!r} has no quantity {quantity!r}")

    def last_setter(nid: str, qty: str, bound: str, before: int) -> DerivationStep | None:
        for step in reversed(graph.trace):
            if step.index >= before or step.node != nid or step.quantity != qty:
                continue
            if bound == "lo" and step.new.lo != step.old.lo:
                return step
            if bound == "hi" and step.new.hi != step.old.hi:
                return step
        return None

    horizon = len(graph.trace)
    seen: set[int] = set()
    stack = []
    for bound in ("lo", "hi"):
        step = last_setter(node_id, quantity, bound, horizon)
        if step is not None:
            stack.append(step)
    chain: dict[int, DerivationStep] = {}
    while stack:
        step = stack.pop()
        if step.index in seen:
            continue
        seen.add(step.index)
        chain[step.index] = step
        for premise in step.premises:
            for bound in ("lo", "hi"):
                justifier = last_setter(premise.node, premise.quantity, bound,
                                        step.index)
                if justifier is not None and justifier.index not in seen:
                    stack.append(justifier)
    return [chain[i] for i in sorted(chain)]


def check_consistency(graph: ProblemGraph) -> list[str]:
    """Re-validate type invariants and flag implications; report-only."""
    out: list[str] = []
    for table in (graph.spaces, graph.maps, graph.pairs):
        for nid, node in table.items():
            for q, iv in node.quantities.items():
                if not iv.lo <= iv.hi:
                    out.append(f"{q}({nid}): empty interval {iv}")
    for sid, space in graph.spaces.items():
        if space.cohomology is not None:
            f: CoefficientField = space.cohomology.field
            if not f.is_valid():
                out.append(f"space {sid}: coefficient field {f.describe()}"
                           " has a non-prime modulus")
        if space.contractible:
            for q in ("cat", "TC"):
                if space.quantities[q] != Interval.exactly(0):
                    out.append(f"space {sid}: contractible but {q} = "
                               f"{space.quantities[q]}")
    for mid, m in graph.maps.items():
        if m.domain not in graph.spaces or m.codomain not in graph.spaces:
            out.append(f"map {mid}: dangling domain or codomain")
        if m.is_identity and not (m.fibration and m.surjective and m.has_strict_section):
            out.append(f"map {mid}: identity without its implied flags"
                       " (graph not prepared?)")
        if m.nullhomotopic is True and not m.quantities["cat"].hi == ExtNat(0):
            out.append(f"map {mid}: nullhomotopic but cat hi is"
                       f" {m.quantities['cat'].hi}")
    for pid, pair in graph.pairs.items():
        if pair.f not in graph.maps or pair.g not in graph.maps:
            out.append(f"pair {pid}: dangling map reference")
            continue
        f, g = graph.pair_maps(pair)
        if f.codomain != g.codomain:
            out.append(f"pair {pid}: legs have different codomains")
        if pair.sync == SYNC_NO and pair.quantities["TC"] != Interval.exactly(None):
            out.append(f"pair {pid}: not synchronizable but TC = "
                       f"{pair.quantities['TC']}")
    return out
