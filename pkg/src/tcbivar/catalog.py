"""Built-in parametric spaces and maps, with cohomology and recorded facts.

Spaces know their cohomology rings and classical invariant values; maps know
their flags and, where defined, the induced hom on cohomology (contravariant:
a map X -> Z induces a hom from the codomain ring to the domain ring).

Facts carry a provenance kind: "recorded" values are the exact worked values
this toolkit reproduces, "literature" values are the classical topological
complexity and LS category of spheres and tori, and can be disabled for
purist runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    GradedAlgebra,
    exterior_algebra,
    trivial_algebra,
    truncated_polynomial,
    wedge_circles_algebra,
)
from .errors import GraphValidationError
from .fields import CoefficientField
from .graph import KnownFact, MapNode, PairNode, ProblemGraph, SpaceNode, SYNC_NO
from .homs import GradedHom, collapse_hom, identity_hom, make_hom
from .intervals import Interval


@dataclass(frozen=True)
class SpaceSpec:
    """Parametric space kinds addressable from the DSL."""

    kind: str
    n: int = 0
    base: str | None = None
    label: str = ""

    KINDS = ("point", "contractible", "sphere", "torus", "wedge_circles",
             "pathspace", "abstract")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise GraphValidationError(f"unknown space kind {self.kind!r}")
        if self.kind in ("sphere", "torus", "wedge_circles") and self.n < 1:
            raise GraphValidationError(f"{self.kind} needs a parameter >= 1")

    @classmethod
    def point(cls):
        return cls("point")

    @classmethod
    def contractible(cls, label: str = ""):
        return cls("contractible", label=label)

    @classmethod
    def sphere(cls, n: int):
        return cls("sphere", n=n)

    @classmethod
    def torus(cls, n: int):
        return cls("torus", n=n)

    @classmethod
    def wedge_circles(cls, k: int):
        return cls("wedge_circles", n=k)

    @classmethod
    def pathspace(cls, base: str):
        return cls("pathspace", base=base)

    @classmethod
    def abstract(cls):
        return cls("abstract")


@dataclass(frozen=True)
class MapSpec:
    """Parametric map kinds addressable from the DSL."""

    kind: str
    k: int = 0
    exponents: tuple[int, ...] = ()
    permutation: tuple[int, ...] = ()
    factor: int = 0
    label: str = ""

    KINDS = ("identity", "constant", "sphere_degree", "torus_powers",
             "projection", "inclusion", "path_fibration", "abstract")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise GraphValidationError(f"unknown map kind {self.kind!r}")

    @classmethod
    def identity(cls):
        return cls("identity")

    @classmethod
    def constant(cls, label: str = ""):
        return cls("constant", label=label)

    @classmethod
    def sphere_degree(cls, k: int):
        return cls("sphere_degree", k=k)

    @classmethod
    def torus_powers(cls, exponents, permutation=None):
        exponents = tuple(exponents)
        if permutation is None:
            permutation = tuple(range(len(exponents)))
        else:
            permutation = tuple(permutation)
            if sorted(permutation) != list(range(len(exponents))):
                raise GraphValidationError(
                    "coordinate permutation must permute 0..n-1")
        return cls("torus_powers", exponents=exponents, permutation=permutation)

    @classmethod
    def projection(cls, factor: int):
        return cls("projection", factor=factor)

    @classmethod
    def inclusion(cls):
        return cls("inclusion")

    @classmethod
    def path_fibration(cls):
        return cls("path_fibration")

    @classmethod
    def abstract(cls):
        return cls("abstract")


# recorded values cross-checked by the test suite ------------------------------

RECORDED_SPACE_FACTS: dict[tuple[str, int, str], tuple[int, int]] = {
    ("sphere", 1, "TC"): (1, 1),
    ("sphere", 2, "TC"): (2, 2),
}


def _space_facts(spec: SpaceSpec) -> list[KnownFact]:
    facts: list[KnownFact] = []
    if spec.kind == "sphere":
        source = "recorded" if (spec.kind, spec.n, "TC") in RECORDED_SPACE_FACTS \
            else "literature"
        tc = 1 if spec.n % 2 == 1 else 2
        facts.append(KnownFact("TC", Interval.exactly(tc), source,
                               f"TC(S^{spec.n}) = {tc}"))
        facts.append(KnownFact("cat", Interval.exactly(1), "literature",
                               f"cat(S^{spec.n}) = 1"))
    elif spec.kind == "torus":
        facts.append(KnownFact("TC", Interval.exactly(spec.n), "literature",
                               f"TC(T^{spec.n}) = {spec.n}"))
        facts.append(KnownFact("cat", Interval.exactly(spec.n), "literature",
                               f"cat(T^{spec.n}) = {spec.n}"))
    elif spec.kind == "wedge_circles" and spec.n >= 2:
        facts.append(KnownFact("TC", Interval.exactly(2), "literature",
                               f"TC of a wedge of {spec.n} circles = 2"))
        facts.append(KnownFact("cat", Interval.exactly(1), "literature",
                               f"cat of a wedge of {spec.n} circles = 1"))
    elif spec.kind == "wedge_circles":
        facts.append(KnownFact("TC", Interval.exactly(1), "literature",
                               "a wedge of one circle is a circle"))
        facts.append(KnownFact("cat", Interval.exactly(1), "literature",
                               "a wedge of one circle is a circle"))
    return facts


def space_algebra(spec: SpaceSpec, field: CoefficientField) -> GradedAlgebra | None:
    if spec.kind == "sphere":
        if spec.n % 2 == 1:
            return exterior_algebra(field, [spec.n])
        return truncated_polynomial(field, spec.n, 1)
    if spec.kind == "torus":
        return exterior_algebra(field, [1] * spec.n)
    if spec.kind == "wedge_circles":
        return wedge_circles_algebra(field, spec.n)
    if spec.kind in ("point", "contractible", "pathspace"):
        return trivial_algebra(field)
    return None  # abstract spaces carry no ring


def instantiate_space(space_id: str, spec: SpaceSpec,
                      field: CoefficientField) -> SpaceNode:
    """Build a SpaceNode with cohomology, flags and attached facts.

    Every catalog space is path-connected and metrizable, hence flagged for
    normal products; point, contractible and path spaces are contractible.
    """
    node = SpaceNode(
        space_id,
        path_connected=True,
        contractible=spec.kind in ("point", "contractible", "pathspace"),
        h_group=spec.kind == "torus" or (spec.kind == "sphere" and spec.n == 1),
        normal_products=spec.kind != "abstract",  # metrizable kinds only
        is_anr=spec.kind != "abstract",
        cohomology=space_algebra(spec, field),
    )
    node.facts.extend(_space_facts(spec))
    return node


def _torus_powers_hom(zalg: GradedAlgebra, xalg: GradedAlgebra,
                      exponents: tuple[int, ...],
                      permutation: tuple[int, ...]) -> GradedHom:
    """Induced hom of the coordinatewise power map: the i-th generator of the
    codomain pulls back to exponents[i] times generator permutation[i], and
    monomials extend multiplicatively."""
    n = len(exponents)
    gen_images = []
    for i in range(n):
        gen_label = "u" if n == 1 else f"u{permutation[i] + 1}"
        gen_images.append(xalg.by_label(gen_label).scale(exponents[i]))
    images = []
    for idx in range(zalg.dim):
        label = zalg.labels[idx]
        if label == "1":
            images.append(xalg.one())
            continue
        img = xalg.one()
        for i in range(n):
            gen_label = "u" if n == 1 else f"u{i + 1}"
            if gen_label in label:
                img = img * gen_images[i]
        images.append(img)
    return make_hom(zalg, xalg, images)


def instantiate_map(map_id: str, spec: MapSpec, domain: SpaceNode,
                    codomain: SpaceNode,
                    domain_spec: SpaceSpec | None = None,
                    codomain_spec: SpaceSpec | None = None) -> MapNode:
    """Build a MapNode with kind-specific flags and induced hom.

    Coordinate power maps with nonzero exponents and nonzero-degree circle
    maps are coverings, hence flagged as surjective fibrations.
    """
    node = MapNode(map_id, domain.id, codomain.id, kind=spec.kind)
    za = codomain.cohomology
    xa = domain.cohomology

    if spec.kind == "identity":
        if domain.id != codomain.id:
            raise GraphValidationError(
                f"map {map_id}: identity needs equal domain and codomain")
        node.is_identity = True
        node.fibration = True
        node.surjective = True
        node.has_strict_section = True
        node.has_homotopy_section = True
        node.has_right_homotopy_inverse = True
        if za is not None:
            node.induced = identity_hom(za)
    elif spec.kind == "constant":
        node.nullhomotopic = True
        if za is not None and xa is not None:
            node.induced = collapse_hom(za, xa)
    elif spec.kind == "sphere_degree":
        if codomain_spec is None or codomain_spec.kind != "sphere" or \
                domain_spec != codomain_spec:
            raise GraphValidationError(
                f"map {map_id}: degree maps need equal sphere domain and codomain")
        node.surjective = spec.k != 0
        node.nullhomotopic = spec.k == 0
        if codomain_spec.n == 1 and spec.k != 0:
            node.fibration = True  # z -> z^k is a covering of the circle
        if za is not None and xa is not None:
            images = [xa.one(), xa.by_label("u").scale(spec.k)]
            node.induced = make_hom(za, xa, images)
    elif spec.kind == "torus_powers":
        if codomain_spec is None or codomain_spec.kind != "torus" or \
                domain_spec != codomain_spec:
            raise GraphValidationError(
                f"map {map_id}: coordinate powers need equal torus domain and"
                " codomain")
        if len(spec.exponents) != codomain_spec.n:
            raise GraphValidationError(
                f"map {map_id}: expected {codomain_spec.n} exponents,"
                f" got {len(spec.exponents)}")
        all_nonzero = all(e != 0 for e in spec.exponents)
        node.surjective = all_nonzero
        node.fibration = all_nonzero  # product of circle coverings
        # zero exponents everywhere give a constant map; any nonzero exponent
        # acts nontrivially on degree-one cohomology
        node.nullhomotopic = all(e == 0 for e in spec.exponents)
        if za is not None and xa is not None:
            node.induced = _torus_powers_hom(za, xa, spec.exponents,
                                             spec.permutation)
    elif spec.kind == "projection":
        node.fibration = True
        node.surjective = True
        node.has_strict_section = True
        node.has_homotopy_section = True
    elif spec.kind == "inclusion":
        pass  # no flags are implied in general
    elif spec.kind == "path_fibration":
        if not domain.contractible:
            raise GraphValidationError(
                f"map {map_id}: the path fibration needs a path-space domain")
        node.fibration = True
        node.surjective = True
        node.nullhomotopic = True
        if za is not None and xa is not None:
            node.induced = collapse_hom(za, xa)
    elif spec.kind == "abstract":
        pass
    return node


# ready-made problem graphs ------------------------------------------------------


def _fact_assert(graph: ProblemGraph, node_id: str, fact: KnownFact) -> None:
    graph.node(node_id).facts.append(fact)


def _sphere_deg_2_3(field: CoefficientField) -> ProblemGraph:
    g = ProblemGraph()
    spec = SpaceSpec.sphere(2)
    s2 = g.add_space(instantiate_space("S2", spec, field))
    g.add_map(instantiate_map("f", MapSpec.sphere_degree(2), s2, s2, spec, spec))
    g.add_map(instantiate_map("g", MapSpec.sphere_degree(3), s2, s2, spec, spec))
    g.add_pair(PairNode("P", "f", "g"))
    return g


def _torus_5_mixed(field: CoefficientField) -> ProblemGraph:
    g = ProblemGraph()
    spec = SpaceSpec.torus(5)
    t5 = g.add_space(instantiate_space("T5", spec, field))
    g.add_map(instantiate_map("f", MapSpec.torus_powers([2, 3, 2, 4, 1]),
                              t5, t5, spec, spec))
    g.add_map(instantiate_map("g", MapSpec.torus_powers([1, 2, 3, 1, 4]),
                              t5, t5, spec, spec))
    g.add_pair(PairNode("P", "f", "g"))
    return g


def _iconic_circle(field: CoefficientField) -> ProblemGraph:
    # squaring maps of the circle into the plane, with opposite signs; the
    # strict value 1 is recorded, the homotopy value follows from the
    # contractible target
    g = ProblemGraph()
    s1_spec = SpaceSpec.sphere(1)
    c_spec = SpaceSpec.contractible("complex plane")
    s1 = g.add_space(instantiate_space("S1", s1_spec, field))
    c = g.add_space(instantiate_space("C", c_spec, field))
    for mid in ("f", "g"):
        node = instantiate_map(mid, MapSpec.abstract(), s1, c)
        node.induced = collapse_hom(c.cohomology, s1.cohomology)
        g.add_map(node)
    pair = g.add_pair(PairNode("P", "f", "g"))
    pair.facts.append(KnownFact("TC", Interval.exactly(1), "recorded",
                                "strict synchronization value of the signed"
                                " squaring pair on the circle"))
    return g


def _constant_distinct(field: CoefficientField) -> ProblemGraph:
    g = ProblemGraph()
    pt = SpaceSpec.point()
    s1 = SpaceSpec.sphere(1)
    x = g.add_space(instantiate_space("X", pt, field))
    y = g.add_space(instantiate_space("Y", pt, field))
    z = g.add_space(instantiate_space("Z", s1, field))
    g.add_map(instantiate_map("f", MapSpec.constant("a"), x, z, pt, s1))
    g.add_map(instantiate_map("g", MapSpec.constant("b"), y, z, pt, s1))
    pair = g.add_pair(PairNode("P", "f", "g"))
    pair.images_disjoint = True
    return g


def _collaboration_s2(field: CoefficientField) -> ProblemGraph:
    # first leg: the projection from S2 x S1, declared only through its
    # fibration, surjectivity and non-nullhomotopy flags so the upper bound
    # must route through the homotopy invariant; second leg: path fibration
    g = ProblemGraph()
    s2_spec = SpaceSpec.sphere(2)
    s2 = g.add_space(instantiate_space("S2", s2_spec, field))
    d = g.add_space(instantiate_space("D", SpaceSpec.abstract(), field))
    d.normal_products = True
    e = g.add_space(instantiate_space("E", SpaceSpec.pathspace("S2"), field))
    f = instantiate_map("f", MapSpec.abstract(), d, s2)
    f.fibration = True
    f.surjective = True
    f.nullhomotopic = False
    g.add_map(f)
    g.add_map(instantiate_map("g", MapSpec.path_fibration(), e, s2))
    g.add_pair(PairNode("P", "f", "g"))
    _fact_assert(g, "f", KnownFact("TC", Interval.exactly(2), "recorded",
                                   "TC of the projection equals TC(S^2) = 2"))
    _fact_assert(g, "g", KnownFact("TC", Interval.exactly(1), "recorded",
                                   "TC of the path fibration over S^2 = 1"))
    return g


def _wedge_nonsync(field: CoefficientField) -> ProblemGraph:
    # the two circle inclusions into a wedge: images meet only at the
    # basepoint, and any synchronized pair of paths would be forced into it,
    # so the pair is declared not synchronizable
    g = ProblemGraph()
    s1 = SpaceSpec.sphere(1)
    w = SpaceSpec.wedge_circles(2)
    a = g.add_space(instantiate_space("A", s1, field))
    b = g.add_space(instantiate_space("B", s1, field))
    z = g.add_space(instantiate_space("W", w, field))
    f = instantiate_map("f", MapSpec.inclusion(), a, z)
    f.nullhomotopic = False
    g.add_map(f)
    gg = instantiate_map("g", MapSpec.inclusion(), b, z)
    gg.nullhomotopic = False
    g.add_map(gg)
    pair = g.add_pair(PairNode("P", "f", "g"))
    pair.sync = SYNC_NO
    return g


def _sphere_in_r3(field: CoefficientField) -> ProblemGraph:
    g = ProblemGraph()
    s2_spec = SpaceSpec.sphere(2)
    r3_spec = SpaceSpec.contractible("R^3")
    s2 = g.add_space(instantiate_space("S2", s2_spec, field))
    r3 = g.add_space(instantiate_space("R3", r3_spec, field))
    inc = instantiate_map("inc", MapSpec.inclusion(), s2, r3)
    inc.induced = collapse_hom(r3.cohomology, s2.cohomology)
    g.add_map(inc)
    pair = g.add_pair(PairNode("P", "inc", "inc"))
    pair.facts.append(KnownFact("TC", Interval.exactly(2), "recorded",
                                "strict value for the doubled sphere inclusion"
                                " equals TC(S^2) = 2"))
    return g


def builtin_instances(field: CoefficientField | None = None
                      ) -> dict[str, ProblemGraph]:
    """Ready-made graphs for the recorded worked examples."""
    field = field or CoefficientField.rationals()
    return {
        "sphere-deg-2-3": _sphere_deg_2_3(field),
        "torus-5-mixed": _torus_5_mixed(field),
        "iconic-circle": _iconic_circle(field),
        "constant-distinct": _constant_distinct(field),
        "collaboration-s2": _collaboration_s2(field),
        "wedge-nonsync": _wedge_nonsync(field),
        "sphere-in-r3": _sphere_in_r3(field),
    }
