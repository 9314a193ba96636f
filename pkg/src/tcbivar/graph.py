"""Problem graphs: spaces, maps, cospan pairs, relations, and their intervals.

Every node carries a dictionary of quantity intervals initialized to [0, inf];
declared flags, catalog facts and user assertions tighten them before rule
propagation.  Ids share a single namespace across node kinds so quantity
references like TC(P) resolve without further qualification.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import GradedAlgebra
from .errors import ContradictionDetected, GraphValidationError
from .homs import GradedHom
from .intervals import EmptyIntervalError, Interval

SPACE_QUANTITIES = ("cat", "TC")
MAP_QUANTITIES = ("sec", "secat", "cat", "TC", "TCH")
PAIR_QUANTITIES = ("TC", "TCH", "secprod", "catprod")

SYNC_YES = "yes"
SYNC_NO = "no"
SYNC_UNKNOWN = "unknown"


@dataclass(frozen=True)
class KnownFact:
    """Literature- or catalog-sourced interval for one quantity of one node.

    source_kind is "recorded" for values fixed by the worked examples this
    toolkit reproduces, "literature" for classical values quoted from the
    wider literature, and "derived" for values recomputed by the toolkit.
    """

    quantity: str
    interval: Interval
    source_kind: str
    note: str

    def __post_init__(self):
        if self.source_kind not in ("recorded", "literature", "derived"):
            raise GraphValidationError(f"unknown fact source {self.source_kind!r}")
        if not self.note:
            raise GraphValidationError("fact source note must be non-empty")


@dataclass
class SpaceNode:
    id: str
    path_connected: bool = True
    contractible: bool = False
    h_group: bool = False
    normal_products: bool = False
    is_anr: bool = False
    cohomology: GradedAlgebra | None = None
    facts: list[KnownFact] = dc_field(default_factory=list)
    quantities: dict[str, Interval] = dc_field(default_factory=dict)

    def __post_init__(self):
        for q in SPACE_QUANTITIES:
            self.quantities.setdefault(q, Interval.full())


@dataclass
class MapNode:
    id: str
    domain: str
    codomain: str
    fibration: bool = False
    surjective: bool = False
    nullhomotopic: bool | None = None
    has_strict_section: bool = False
    has_homotopy_section: bool = False
    has_right_homotopy_inverse: bool = False
    is_identity: bool = False
    induced: GradedHom | None = None
    kind: str = ""
    facts: list[KnownFact] = dc_field(default_factory=list)
    quantities: dict[str, Interval] = dc_field(default_factory=dict)

    def __post_init__(self):
        for q in MAP_QUANTITIES:
            self.quantities.setdefault(q, Interval.full())


@dataclass
class PairNode:
    id: str
    f: str
    g: str
    sync: str = SYNC_UNKNOWN
    images_disjoint: bool = False
    facts: list[KnownFact] = dc_field(default_factory=list)
    quantities: dict[str, Interval] = dc_field(default_factory=dict)

    def __post_init__(self):
        for q in PAIR_QUANTITIES:
            self.quantities.setdefault(q, Interval.full())


# structural relations ----------------------------------------------------------


@dataclass(frozen=True)
class Composition:
    """post = (w . f, w . g) for the base pair (f, g)."""

    post_pair: str
    base_pair: str
    w_map: str | None = None
    has_retraction: bool = False


@dataclass(frozen=True)
class Precomposition:
    """pre = (f . u, g . v) for the base pair (f, g)."""

    pre_pair: str
    base_pair: str
    u_map: str
    v_map: str


@dataclass(frozen=True)
class ProductPairing:
    """product = (f x f', g x g') built from left = (f, g), right = (f', g')."""

    product_pair: str
    left_pair: str
    right_pair: str


@dataclass(frozen=True)
class HomotopyEquiv:
    """The maps of pair_a are homotopic to the maps of pair_b, legwise."""

    pair_a: str
    pair_b: str


@dataclass(frozen=True)
class FactorizationThrough:
    """outer = (i . f', i . g') where inner = (f', g') lands in a subspace."""

    outer_pair: str
    inner_pair: str


@dataclass(frozen=True)
class FibrewiseEquivalence:
    """pair_a = (f, g) and pair_b = (f', g) with f, f' fibrewise equivalent."""

    pair_a: str
    pair_b: str


Relation = (Composition | Precomposition | ProductPairing | HomotopyEquiv
            | FactorizationThrough | FibrewiseEquivalence)


@dataclass(frozen=True)
class Premise:
    node: str
    quantity: str
    interval: Interval


@dataclass(frozen=True)
class DerivationStep:
    """One interval tightening: rule, conclusion, and premise snapshots."""

    index: int
    rule: str
    anchor: str
    node: str
    quantity: str
    old: Interval
    new: Interval
    premises: tuple[Premise, ...] = ()
    conditions: tuple[str, ...] = ()


@dataclass(frozen=True)
class InputAssertion:
    """A pre-propagation tightening: flag implication, fact, or user assert."""

    node: str
    quantity: str
    interval: Interval
    source: str


class ProblemGraph:
    """Mutable container for one propagation problem."""

    def __init__(self):
        self.spaces: dict[str, SpaceNode] = {}
        self.maps: dict[str, MapNode] = {}
        self.pairs: dict[str, PairNode] = {}
        self.relations: list[Relation] = []
        self.assertions: list[InputAssertion] = []
        self.trace: list[DerivationStep] = []
        self.lcp_results: dict[str, object] = {}
        self.lcp_generators: dict[str, object] = {}
        self._prepared = False

    # construction ---------------------------------------------------------

    def _claim_id(self, node_id: str) -> None:
        if node_id in self.spaces or node_id in self.maps or node_id in self.pairs:
            raise GraphValidationError(f"duplicate id {node_id!r}")

    def add_space(self, node: SpaceNode) -> SpaceNode:
        self._claim_id(node.id)
        self.spaces[node.id] = node
        return node

    def add_map(self, node: MapNode) -> MapNode:
        self._claim_id(node.id)
        if node.domain not in self.spaces:
            raise GraphValidationError(f"map {node.id}: unknown domain {node.domain!r}")
        if node.codomain not in self.spaces:
            raise GraphValidationError(f"map {node.id}: unknown codomain {node.codomain!r}")
        if node.is_identity and node.domain != node.codomain:
            raise GraphValidationError(
                f"map {node.id}: identity must have equal domain and codomain")
        self.maps[node.id] = node
        return node

    def add_pair(self, node: PairNode) -> PairNode:
        self._claim_id(node.id)
        f = self.maps.get(node.f)
        g = self.maps.get(node.g)
        if f is None or g is None:
            raise GraphValidationError(f"pair {node.id}: unknown map id")
        if f.codomain != g.codomain:
            raise GraphValidationError(
                f"pair {node.id}: maps {node.f} and {node.g} have different codomains")
        if f.domain == g.domain:
            node.quantities.setdefault("D", Interval.full())
        self.pairs[node.id] = node
        return node

    def add_relation(self, relation: Relation) -> Relation:
        self._check_relation(relation)
        self.relations.append(relation)
        return relation

    def _require_pair(self, pair_id: str, context: str) -> PairNode:
        node = self.pairs.get(pair_id)
        if node is None:
            raise GraphValidationError(f"{context}: unknown pair {pair_id!r}")
        return node

    def _check_relation(self, relation: Relation) -> None:
        if isinstance(relation, Composition):
            self._require_pair(relation.post_pair, "composition")
            self._require_pair(relation.base_pair, "composition")
            if relation.w_map is not None and relation.w_map not in self.maps:
                raise GraphValidationError(f"composition: unknown map {relation.w_map!r}")
        elif isinstance(relation, Precomposition):
            pre = self._require_pair(relation.pre_pair, "precomposition")
            base = self._require_pair(relation.base_pair, "precomposition")
            for mid in (relation.u_map, relation.v_map):
                if mid not in self.maps:
                    raise GraphValidationError(f"precomposition: unknown map {mid!r}")
            u = self.maps[relation.u_map]
            v = self.maps[relation.v_map]
            if u.codomain != self.maps[base.f].domain or \
                    v.codomain != self.maps[base.g].domain:
                raise GraphValidationError(
                    "precomposition: u, v codomains must match the base pair domains")
            if self.maps[pre.f].domain != u.domain or self.maps[pre.g].domain != v.domain:
                raise GraphValidationError(
                    "precomposition: pre pair domains must match u, v domains")
        elif isinstance(relation, ProductPairing):
            for pid in (relation.product_pair, relation.left_pair, relation.right_pair):
                self._require_pair(pid, "product pairing")
        elif isinstance(relation, (HomotopyEquiv, FibrewiseEquivalence)):
            a = self._require_pair(relation.pair_a, "pair equivalence")
            b = self._require_pair(relation.pair_b, "pair equivalence")
            fa, ga = self.maps[a.f], self.maps[a.g]
            fb, gb = self.maps[b.f], self.maps[b.g]
            if fa.codomain != fb.codomain:
                raise GraphValidationError("pair equivalence: codomains differ")
            if isinstance(relation, FibrewiseEquivalence) and a.g != b.g:
                raise GraphValidationError(
                    "fibrewise equivalence: pairs must share their second map")
            if isinstance(relation, HomotopyEquiv):
                if fa.domain != fb.domain or ga.domain != gb.domain:
                    raise GraphValidationError("homotopy equivalence: domains differ")
        elif isinstance(relation, FactorizationThrough):
            self._require_pair(relation.outer_pair, "factorization")
            self._require_pair(relation.inner_pair, "factorization")
        else:
            raise GraphValidationError(f"unknown relation type {relation!r}")

    # lookup ----------------------------------------------------------------

    def node(self, node_id: str):
        for table in (self.spaces, self.maps, self.pairs):
            if node_id in table:
                return table[node_id]
        raise GraphValidationError(f"unknown node {node_id!r}")

    def pair_maps(self, pair: PairNode) -> tuple[MapNode, MapNode]:
        return self.maps[pair.f], self.maps[pair.g]

    def pair_spaces(self, pair: PairNode) -> tuple[SpaceNode, SpaceNode, SpaceNode]:
        """(domain of f, domain of g, common codomain)."""
        f, g = self.pair_maps(pair)
        return self.spaces[f.domain], self.spaces[g.domain], self.spaces[f.codomain]

    def pair_index(self) -> dict[tuple[str, str], str]:
        return {(p.f, p.g): pid for pid, p in self.pairs.items()}

    # assertions -------------------------------------------------------------

    def assert_quantity(self, node_id: str, quantity: str, interval: Interval,
                        source: str) -> bool:
        """Meet a node quantity with an asserted interval; True if it tightened."""
        node = self.node(node_id)
        current = node.quantities.get(quantity)
        if current is None:
            raise GraphValidationError(
                f"node {node_id!r} has no quantity {quantity!r}")
        try:
            met = current.meet(interval)
        except EmptyIntervalError as exc:
            raise ContradictionDetected(
                f"assertion {source!r} on {quantity}({node_id}) conflicts with"
                f" the current interval {current}: {exc}",
                trace=self.trace, node=node_id, quantity=quantity) from exc
        if met == current:
            return False
        node.quantities[quantity] = met
        self.assertions.append(InputAssertion(node_id, quantity, met, source))
        return True

    def supply_catdelta(self, pair_id: str, interval: Interval, source: str) -> None:
        pair = self._require_pair(pair_id, "catdelta")
        pair.quantities.setdefault("catdelta", Interval.full())
        self.assert_quantity(pair_id, "catdelta", interval, source)

    # preparation ------------------------------------------------------------

    def prepare(self) -> None:
        """Validate and apply flag implications; idempotent."""
        if self._prepared:
            return
        for sid in sorted(self.spaces):
            space = self.spaces[sid]
            if space.contractible:
                space.path_connected = True
                self.assert_quantity(sid, "cat", Interval.exactly(0),
                                     f"flag: {sid} contractible")
                self.assert_quantity(sid, "TC", Interval.exactly(0),
                                     f"flag: {sid} contractible")
        for mid in sorted(self.maps):
            m = self.maps[mid]
            if m.is_identity:
                m.fibration = True
                m.surjective = True
                m.has_strict_section = True
                m.has_right_homotopy_inverse = True
            if m.has_strict_section:
                m.has_homotopy_section = True
                self.assert_quantity(mid, "sec", Interval.exactly(0),
                                     f"flag: {mid} has a strict global section")
            domain = self.spaces[m.domain]
            codomain = self.spaces[m.codomain]
            if domain.contractible or codomain.contractible:
                if m.nullhomotopic is None:
                    m.nullhomotopic = True
            if m.nullhomotopic is True:
                self.assert_quantity(mid, "cat", Interval.at_most(0),
                                     f"flag: {mid} nullhomotopic")
            elif m.nullhomotopic is False:
                self.assert_quantity(mid, "cat", Interval.at_least(1),
                                     f"flag: {mid} not nullhomotopic")
        for pid in sorted(self.pairs):
            pair = self.pairs[pid]
            if pair.sync == SYNC_NO:
                self.assert_quantity(pid, "TC", Interval.exactly(None),
                                     f"flag: {pid} declared not synchronizable")
        self._prepared = True

    def clone(self) -> "ProblemGraph":
        """Copy with fresh quantity dicts; algebra/hom objects are shared."""
        import copy

        out = ProblemGraph()
        for sid, s in self.spaces.items():
            out.spaces[sid] = copy.copy(s)
            out.spaces[sid].quantities = dict(s.quantities)
            out.spaces[sid].facts = list(s.facts)
        for mid, m in self.maps.items():
            out.maps[mid] = copy.copy(m)
            out.maps[mid].quantities = dict(m.quantities)
            out.maps[mid].facts = list(m.facts)
        for pid, p in self.pairs.items():
            out.pairs[pid] = copy.copy(p)
            out.pairs[pid].quantities = dict(p.quantities)
            out.pairs[pid].facts = list(p.facts)
        out.relations = list(self.relations)
        out.assertions = list(self.assertions)
        out.trace = list(self.trace)
        out.lcp_results = dict(self.lcp_results)
        out.lcp_generators = dict(self.lcp_generators)
        out._prepared = self._prepared
        return out

    def snapshot(self) -> dict[tuple[str, str], Interval]:
        """All quantity intervals plus sync states, for fixpoint comparison."""
        out: dict[tuple[str, str], Interval] = {}
        for table in (self.spaces, self.maps, self.pairs):
            for nid, node in table.items():
                for q, iv in node.quantities.items():
                    out[(nid, q)] = iv
        for pid, pair in self.pairs.items():
            out[(pid, "__sync__")] = pair.sync
        return out
