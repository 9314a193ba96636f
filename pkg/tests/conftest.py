from __future__ import annotations

import random

import pytest

from tcbivar.algebra import embed_left, embed_right, exterior_algebra, tensor_product
from tcbivar.fields import CoefficientField
from tcbivar.homs import ZeroDivisorSet, make_hom


@pytest.fixture
def rationals() -> CoefficientField:
    return CoefficientField.rationals()


@pytest.fixture
def f2() -> CoefficientField:
    return CoefficientField.prime_field(2)


def powers_hom(alg, exponents):
    """Induced hom of a coordinatewise power map on an exterior algebra:
    generator i scales by exponents[i], monomials extend multiplicatively."""
    n = len(exponents)
    images = []
    for idx in range(alg.dim):
        label = alg.labels[idx]
        if label == "1":
            images.append(alg.one())
            continue
        coeff = 1
        for i in range(n):
            gen = "u" if n == 1 else f"u{i + 1}"
            if gen in label:
                coeff *= exponents[i]
        images.append(alg.basis_element(idx).scale(coeff))
    return make_hom(alg, alg, images)


def random_bar_set(rng: random.Random, n: int, field: CoefficientField,
                   span: int = 5) -> ZeroDivisorSet:
    """Random difference classes a*(u (x) 1) - b*(1 (x) u) over the positive
    basis of the rank-n exterior algebra, coefficients in [-span, span]."""
    alg = exterior_algebra(field, [1] * n)
    square = tensor_product(alg, alg)
    gens, labels = [], []
    for i in alg.positive_indices():
        u = alg.basis_element(i)
        bar = embed_left(u, square).scale(rng.randint(-span, span)) \
            - embed_right(u, square).scale(rng.randint(-span, span))
        if not bar.is_zero():
            gens.append(bar)
            labels.append(alg.labels[i])
    return ZeroDivisorSet(square, tuple(gens), tuple(labels))


def random_catalog_graph(rng: random.Random):
    """Small random problem graph assembled from catalog pieces, with facts
    applied the way the runner applies them."""
    from tcbivar.catalog import MapSpec, SpaceSpec, instantiate_map, instantiate_space
    from tcbivar.graph import PairNode, ProblemGraph

    field = CoefficientField.rationals()
    g = ProblemGraph()
    specs = {}
    for i in range(rng.randint(2, 3)):
        spec = rng.choice([SpaceSpec.sphere(1), SpaceSpec.sphere(2),
                           SpaceSpec.torus(2), SpaceSpec.point(),
                           SpaceSpec.contractible()])
        sid = f"S{i}"
        specs[sid] = spec
        g.add_space(instantiate_space(sid, spec, field))
    sids = sorted(g.spaces)
    maps = []
    for i in range(rng.randint(2, 4)):
        dom = rng.choice(sids)
        cod = rng.choice(sids)
        mid = f"m{i}"
        if dom == cod and rng.random() < 0.4:
            node = instantiate_map(mid, MapSpec.identity(), g.spaces[dom],
                                   g.spaces[cod], specs[dom], specs[cod])
        elif rng.random() < 0.4:
            node = instantiate_map(mid, MapSpec.constant(), g.spaces[dom],
                                   g.spaces[cod], specs[dom], specs[cod])
        else:
            node = instantiate_map(mid, MapSpec.abstract(), g.spaces[dom],
                                   g.spaces[cod])
            node.fibration = rng.random() < 0.5
            node.surjective = rng.random() < 0.5
            if rng.random() < 0.3:
                node.nullhomotopic = False
        g.add_map(node)
        maps.append(node)
    by_codomain: dict[str, list[str]] = {}
    for m in maps:
        by_codomain.setdefault(m.codomain, []).append(m.id)
    p = 0
    for cod, mids in sorted(by_codomain.items()):
        for _ in range(rng.randint(1, 2)):
            g.add_pair(PairNode(f"P{p}", rng.choice(mids), rng.choice(mids)))
            p += 1
    g.prepare()
    for table in (g.spaces, g.maps, g.pairs):
        for nid in sorted(table):
            for fact in table[nid].facts:
                g.assert_quantity(nid, fact.quantity, fact.interval, fact.note)
    return g
