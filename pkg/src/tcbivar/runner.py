"""Build a problem graph from a parsed document, solve it, answer queries."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import catalog
from .dsl import (
    Combo,
    DslSemanticError,
    MapDecl,
    ProblemDocument,
    QuantityRef,
    SpaceDecl,
)
from .engine import bound_from_cohomology, check_consistency, explain, pair_lcp, propagate
from .errors import ContradictionDetected, GraphValidationError
from .fields import CoefficientField
from .graph import (
    Composition,
    FactorizationThrough,
    FibrewiseEquivalence,
    HomotopyEquiv,
    PairNode,
    Precomposition,
    ProblemGraph,
    ProductPairing,
    SYNC_NO,
    SYNC_YES,
)
from .homs import HomVerificationError, make_hom
from .intervals import Interval
from .report import Report, assertion_to_json, step_to_json


@dataclass(frozen=True)
class RunOptions:
    literature_facts: bool = True
    max_iterations: int = 50
    include_timings: bool = False


def _space_from_decl(decl: SpaceDecl, field: CoefficientField):
    spec = catalog.SpaceSpec(decl.kind, n=decl.n, base=decl.base)
    node = catalog.instantiate_space(decl.id, spec, field)
    for flag in decl.flags:
        if flag == "normal":
            node.normal_products = True
        elif flag == "not_normal":
            node.normal_products = False
        elif flag == "not_path_connected":
            node.path_connected = False
        elif flag == "h_group":
            node.h_group = True
        elif flag == "anr":
            node.is_anr = True
    return node, spec


def _build_on_basis_hom(decl: MapDecl, domain, codomain):
    za = codomain.cohomology
    xa = domain.cohomology
    if za is None or xa is None:
        raise DslSemanticError(
            f"map {decl.id}: on_basis needs cohomology on both spaces",
            decl.line, 1)
    provided = dict(decl.images)
    if len(provided) != len(decl.images):
        raise DslSemanticError(f"map {decl.id}: duplicate basis label in on_basis",
                               decl.line, 1)
    missing = [lbl for lbl in za.labels if lbl not in provided]
    extra = [lbl for lbl in provided if lbl not in za.index_by_label]
    if missing or extra:
        detail = []
        if missing:
            detail.append(f"missing images for {', '.join(missing)}")
        if extra:
            detail.append(f"unknown labels {', '.join(extra)}")
        raise DslSemanticError(f"map {decl.id}: {'; '.join(detail)}", decl.line, 1)
    images = []
    for lbl in za.labels:
        combo: Combo = provided[lbl]
        terms = {}
        for coeff, term_label in combo.terms:
            idx = xa.index_by_label.get(term_label)
            if idx is None:
                raise DslSemanticError(
                    f"map {decl.id}: image of {lbl} uses unknown basis label"
                    f" {term_label!r}", decl.line, 1)
            terms[idx] = terms.get(idx, 0) + coeff
        images.append(xa.element(terms))
    try:
        return make_hom(za, xa, images)
    except HomVerificationError as exc:
        raise DslSemanticError(f"map {decl.id}: invalid induced hom: {exc}",
                               decl.line, 1) from exc


def _map_from_decl(decl: MapDecl, graph: ProblemGraph,
                   specs: dict[str, catalog.SpaceSpec]):
    domain = graph.spaces[decl.domain]
    codomain = graph.spaces[decl.codomain]
    kind_map = {"degree": "sphere_degree", "powers": "torus_powers"}
    kind = kind_map.get(decl.kind, decl.kind)
    if kind == "on_basis":
        node = catalog.instantiate_map(decl.id, catalog.MapSpec.abstract(),
                                       domain, codomain)
        node.kind = "on_basis"
        node.induced = _build_on_basis_hom(decl, domain, codomain)
    else:
        if kind == "sphere_degree":
            spec = catalog.MapSpec.sphere_degree(decl.k)
        elif kind == "torus_powers":
            spec = catalog.MapSpec.torus_powers(decl.exponents)
        elif kind == "projection":
            spec = catalog.MapSpec.projection(decl.factor)
        elif kind == "constant":
            spec = catalog.MapSpec.constant(decl.label)
        else:
            spec = catalog.MapSpec(kind)
        try:
            node = catalog.instantiate_map(decl.id, spec, domain, codomain,
                                           specs.get(decl.domain),
                                           specs.get(decl.codomain))
        except GraphValidationError as exc:
            raise DslSemanticError(str(exc), decl.line, 1) from exc
    for flag in decl.flags:
        if flag == "fibration":
            node.fibration = True
        elif flag == "surjective":
            node.surjective = True
        elif flag == "nullhomotopic":
            node.nullhomotopic = True
        elif flag == "not_nullhomotopic":
            node.nullhomotopic = False
        elif flag == "strict_section":
            node.has_strict_section = True
        elif flag == "homotopy_section":
            node.has_homotopy_section = True
        elif flag == "right_homotopy_inverse":
            node.has_right_homotopy_inverse = True
    return node


def build_graph(doc: ProblemDocument, options: RunOptions
                ) -> tuple[ProblemGraph, CoefficientField, list[str]]:
    """Instantiate catalog objects and load facts; user asserts come later."""
    if doc.field_decl is None:
        if doc.is_empty:
            return ProblemGraph(), CoefficientField.rationals(), []
        raise DslSemanticError("missing field declaration", 1, 1)
    field = CoefficientField.rationals() if doc.field_decl.kind == "Q" \
        else CoefficientField.prime_field(doc.field_decl.p)
    graph = ProblemGraph()
    warnings: list[str] = []
    specs: dict[str, catalog.SpaceSpec] = {}
    for sdecl in doc.spaces:
        try:
            node, spec = _space_from_decl(sdecl, field)
            specs[sdecl.id] = spec
            graph.add_space(node)
        except GraphValidationError as exc:
            raise DslSemanticError(str(exc), sdecl.line, 1) from exc
    for mdecl in doc.maps:
        try:
            graph.add_map(_map_from_decl(mdecl, graph, specs))
        except GraphValidationError as exc:
            raise DslSemanticError(str(exc), mdecl.line, 1) from exc
    for pdecl in doc.pairs:
        pair = PairNode(pdecl.id, pdecl.f, pdecl.g)
        if "images_disjoint" in pdecl.flags:
            pair.images_disjoint = True
        if "not_synchronizable" in pdecl.flags:
            pair.sync = SYNC_NO
        if "synchronizable" in pdecl.flags:
            pair.sync = SYNC_YES
        try:
            graph.add_pair(pair)
        except GraphValidationError as exc:
            raise DslSemanticError(str(exc), pdecl.line, 1) from exc
    for rdecl in doc.relations:
        ids = rdecl.ids
        try:
            if rdecl.kind == "product":
                graph.add_relation(ProductPairing(ids[0], ids[1], ids[2]))
            elif rdecl.kind == "postcompose":
                graph.add_relation(Composition(ids[0], ids[2], w_map=ids[1],
                                               has_retraction=rdecl.retraction))
            elif rdecl.kind == "precompose":
                graph.add_relation(Precomposition(ids[0], ids[1], ids[2], ids[3]))
            elif rdecl.kind == "homotopic":
                graph.add_relation(HomotopyEquiv(ids[0], ids[1]))
            elif rdecl.kind == "fibrewise":
                graph.add_relation(FibrewiseEquivalence(ids[0], ids[1]))
            else:
                graph.add_relation(FactorizationThrough(ids[0], ids[1]))
        except GraphValidationError as exc:
            raise DslSemanticError(str(exc), rdecl.line, 1) from exc
    return graph, field, warnings


def apply_facts(graph: ProblemGraph, options: RunOptions) -> list[str]:
    """Tighten intervals from attached facts; literature facts warn."""
    warnings = []
    for table in (graph.spaces, graph.maps, graph.pairs):
        for nid in sorted(table):
            node = table[nid]
            for fact in node.facts:
                if fact.source_kind == "literature" and not options.literature_facts:
                    continue
                if fact.source_kind == "literature":
                    warnings.append(
                        f"literature fact used: {fact.quantity}({nid}) ="
                        f" {fact.interval} ({fact.note})")
                graph.assert_quantity(nid, fact.quantity, fact.interval,
                                      f"{fact.source_kind}: {fact.note}")
    return warnings


def _resolve_quantity(graph: ProblemGraph, ref: QuantityRef) -> tuple[str, str]:
    """Resolve a quantity reference to (node id, quantity key)."""
    if len(ref.args) == 2:
        index = graph.pair_index()
        pid = index.get((ref.args[0], ref.args[1]))
        if pid is None:
            raise DslSemanticError(
                f"no declared pair with maps ({ref.args[0]}, {ref.args[1]})",
                ref.line, 1)
        node_id = pid
    else:
        node_id = ref.args[0]
    node = graph.node(node_id)
    quantity = ref.name
    if quantity == "catdelta":
        if not isinstance(node, PairNode):
            raise DslSemanticError("catdelta applies to pairs only", ref.line, 1)
        node.quantities.setdefault("catdelta", Interval.full())
    if quantity not in node.quantities:
        raise DslSemanticError(
            f"{quantity} is not a quantity of {node_id}", ref.line, 1)
    return node_id, quantity


def apply_asserts(graph: ProblemGraph, doc: ProblemDocument) -> None:
    for stmt in doc.asserts:
        node_id, quantity = _resolve_quantity(graph, stmt.ref)
        if stmt.op == "<=":
            interval = Interval(hi=stmt.value)
        elif stmt.op == ">=":
            interval = Interval(lo=stmt.value)
        else:
            interval = Interval(stmt.value, stmt.value)
        graph.assert_quantity(node_id, quantity, interval,
                              f"assert: {stmt.ref.render()} {stmt.op} {stmt.value}")


def _contradiction_payload(graph: ProblemGraph, exc: ContradictionDetected) -> dict:
    return {
        "message": str(exc),
        "node": exc.node,
        "quantity": exc.quantity,
        "trace": [step_to_json(s) for s in exc.trace],
        "assertions": [assertion_to_json(a) for a in graph.assertions],
    }


def run(doc: ProblemDocument, options: RunOptions = RunOptions()) -> Report:
    """Full pipeline: build, load facts and asserts, bound, propagate, answer.

    A detected contradiction yields a report with status "contradiction" and
    the locating trace instead of raising.
    """
    t_start = time.perf_counter()
    graph, field, warnings = build_graph(doc, options)
    report = Report(field=field.describe())
    report.warnings.extend(warnings)
    if doc.field_decl is None:
        return report

    try:
        graph.prepare()
        report.warnings.extend(apply_facts(graph, options))
        apply_asserts(graph, doc)
        for pid in sorted(graph.pairs):
            bound_from_cohomology(graph, pid)
        propagate(graph, max_iterations=options.max_iterations)
    except ContradictionDetected as exc:
        report.status = "contradiction"
        report.contradiction = _contradiction_payload(graph, exc)
        report.inputs = [assertion_to_json(a) for a in graph.assertions]
        return report

    report.inputs = [assertion_to_json(a) for a in graph.assertions]
    for query in doc.queries:
        if query.kind == "facts":
            entries = []
            for a in graph.assertions:
                if a.source.startswith(("recorded:", "literature:", "derived:")):
                    entry = assertion_to_json(a)
                    entries.append(entry)
            report.results.append({"query": "facts", "facts": entries})
        elif query.kind == "lcp":
            result = pair_lcp(graph, query.pair)
            if result is None:
                raise DslSemanticError(
                    f"pair {query.pair} has no induced homs or cohomology to"
                    " run the cup-length bound", query.line, 1)
            gens = graph.lcp_generators[query.pair]
            witness = [gens.source_labels[i] for i in result.witness]
            report.results.append({
                "query": "lcp",
                "pair": query.pair,
                "value": result.value,
                "witness": witness,
                "witness_product": str(result.witness_product),
            })
        else:
            node_id, quantity = _resolve_quantity(graph, query.ref)
            interval = graph.node(node_id).quantities[quantity]
            steps = [step_to_json(s) for s in explain(graph, node_id, quantity)]
            entry = {
                "query": query.kind,
                "quantity": query.ref.render(),
                "node": node_id,
                "key": quantity,
            }
            if query.kind == "bounds":
                entry.update(interval.to_json())
            entry["steps"] = steps
            report.results.append(entry)
    report.timings["total_s"] = time.perf_counter() - t_start
    violations = check_consistency(graph)
    for v in violations:
        report.warnings.append(f"consistency: {v}")
    return report
