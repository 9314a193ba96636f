from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcbivar.algebra import (
    UnknownBasisLabel,
    embed_left,
    embed_right,
    exterior_algebra,
    tensor_product,
    truncated_polynomial,
)
from tcbivar.cuplength import (
    IllPosedGenerators,
    coefficient_of,
    lcp_bruteforce,
    lcp_subspace_iteration,
)
from tcbivar.fields import CoefficientField
from tcbivar.homs import ZeroDivisorSet, bar_generators, identity_hom, make_hom

from conftest import powers_hom, random_bar_set

Q = CoefficientField.rationals()
F2 = CoefficientField.prime_field(2)


def sphere_pair(field, deg_f: int, deg_g: int):
    s2 = truncated_polynomial(field, 2, 1)
    t = tensor_product(s2, s2)
    f = make_hom(s2, s2, [s2.one(), s2.by_label("u").scale(deg_f)])
    g = make_hom(s2, s2, [s2.one(), s2.by_label("u").scale(deg_g)])
    return bar_generators(f, g, t), t


def torus_pair(field):
    t5 = exterior_algebra(field, [1] * 5)
    tt = tensor_product(t5, t5)
    f = powers_hom(t5, [2, 3, 2, 4, 1])
    g = powers_hom(t5, [1, 2, 3, 1, 4])
    return bar_generators(f, g, tt), tt


def test_sphere_2_3_over_q():
    gens, _ = sphere_pair(Q, 2, 3)
    result = lcp_subspace_iteration(gens)
    assert result.value == 2
    a = gens.generators[0]
    a2 = a * a
    assert coefficient_of(a2, "u⊗u") == Fraction(-12)
    assert (a2 * a).is_zero()


def test_sphere_2_3_over_f2_drops_to_one():
    gens, _ = sphere_pair(F2, 2, 3)
    assert lcp_subspace_iteration(gens).value == 1
    assert lcp_bruteforce(gens) == 1


def test_torus_five_fold_product():
    gens, _ = torus_pair(Q)
    result = lcp_subspace_iteration(gens)
    assert result.value == 5
    # the recorded coefficients of the product of the five degree-one classes
    prod = None
    for label in ("u1", "u2", "u3", "u4", "u5"):
        g = gens.generators[gens.source_labels.index(label)]
        prod = g if prod is None else prod * g
    assert coefficient_of(prod, "(u1u2u3u4u5)⊗1") == Fraction(48)
    assert coefficient_of(prod, "1⊗(u1u2u3u4u5)") == Fraction(-24)
    # every 6-fold product vanishes: the iteration certified it by reaching
    # the zero subspace at level 6; double-check one explicit product
    assert (prod * gens.generators[0]).is_zero()


def test_empty_generator_set():
    t = tensor_product(exterior_algebra(Q, [1]), exterior_algebra(Q, [1]))
    empty = ZeroDivisorSet(t, (), ())
    result = lcp_subspace_iteration(empty)
    assert result.value == 0
    assert result.witness == ()
    assert lcp_bruteforce(empty) == 0


def test_circle_identity_pair():
    s1 = exterior_algebra(Q, [1])
    t = tensor_product(s1, s1)
    gens = bar_generators(identity_hom(s1), identity_hom(s1), t)
    # ubar != 0 but ubar^2 = 0 by the sign cancellation; cross-checked by the
    # brute-force oracle
    assert lcp_subspace_iteration(gens).value == 1
    assert lcp_bruteforce(gens) == 1


def test_single_nilpotent_generator():
    s2 = truncated_polynomial(Q, 2, 1)
    t = tensor_product(s2, s2)
    u = s2.by_label("u")
    bar = embed_left(u, t) - embed_right(u, t)
    gens = ZeroDivisorSet(t, (bar,), ("u",))
    # bar^2 = -2 u(x)u != 0 over Q; bar^3 = 0
    assert lcp_subspace_iteration(gens).value == 2
    # over F2 the square is -2 u(x)u = 0
    s2p = truncated_polynomial(F2, 2, 1)
    tp = tensor_product(s2p, s2p)
    up = s2p.by_label("u")
    barp = embed_left(up, tp) - embed_right(up, tp)
    gensp = ZeroDivisorSet(tp, (barp,), ("u",))
    assert lcp_subspace_iteration(gensp).value == 1
    assert lcp_bruteforce(gensp) == 1


def test_witness_reproduces_product():
    gens, _ = torus_pair(Q)
    result = lcp_subspace_iteration(gens)
    assert len(result.witness) == result.value
    prod = None
    for idx in result.witness:
        g = gens.generators[idx]
        prod = g if prod is None else prod * g
    assert prod == result.witness_product
    assert not prod.is_zero()


def test_degree_zero_generator_rejected():
    t = tensor_product(exterior_algebra(Q, [1]), exterior_algebra(Q, [1]))
    with pytest.raises((IllPosedGenerators, ValueError)):
        ZeroDivisorSet(t, (t.one(),), ("1",))


def test_inhomogeneous_generator_rejected():
    s = exterior_algebra(Q, [1, 1])
    t = tensor_product(s, s)
    mixed = embed_left(s.by_label("u1"), t) + \
        embed_left(s.by_label("u1u2"), t)
    with pytest.raises((IllPosedGenerators, ValueError)):
        ZeroDivisorSet(t, (mixed,), ("u1",))


def test_oracle_equivalence_randomized():
    rng = random.Random(2024)
    for trial in range(60):
        n = rng.randint(1, 4)
        field = Q if trial % 2 == 0 else F2
        gens = random_bar_set(rng, n, field)
        assert lcp_subspace_iteration(gens).value == lcp_bruteforce(gens)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
                min_size=1, max_size=3),
       st.booleans())
@settings(deadline=None, max_examples=60)
def test_oracle_equivalence_property(coeff_pairs, over_f2):
    field = F2 if over_f2 else Q
    alg = exterior_algebra(field, [1] * len(coeff_pairs))
    square = tensor_product(alg, alg)
    gens, labels = [], []
    gen_coeffs = dict(enumerate(coeff_pairs))
    for i in alg.positive_indices():
        u = alg.basis_element(i)
        # extend the generator coefficients multiplicatively over monomials
        a = b = 1
        for k, (ca, cb) in gen_coeffs.items():
            gen = "u" if len(coeff_pairs) == 1 else f"u{k + 1}"
            if gen in alg.labels[i]:
                a *= ca
                b *= cb
        bar = embed_left(u, square).scale(a) - embed_right(u, square).scale(b)
        if not bar.is_zero():
            gens.append(bar)
            labels.append(alg.labels[i])
    gen_set = ZeroDivisorSet(square, tuple(gens), tuple(labels))
    assert lcp_subspace_iteration(gen_set).value == lcp_bruteforce(gen_set)


def test_bruteforce_cap_limits_search():
    gens, _ = sphere_pair(Q, 2, 3)
    assert lcp_bruteforce(gens, cap=1) == 1
    assert lcp_bruteforce(gens, cap=4) == 2


def test_coefficient_of_unknown_label():
    gens, _ = sphere_pair(Q, 2, 3)
    with pytest.raises(UnknownBasisLabel):
        coefficient_of(gens.generators[0], "bogus")


def test_coefficient_of_zero_element():
    s2 = truncated_polynomial(Q, 2, 1)
    t = tensor_product(s2, s2)
    assert coefficient_of(t.zero(), "u⊗u") == Fraction(0)
