from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

from tcbivar.algebra import (
    ConstructionError,
    InvariantViolation,
    MismatchedAlgebras,
    UnknownBasisLabel,
    GradedAlgebra,
    algebra_violations,
    embed_left,
    embed_right,
    exterior_algebra,
    random_element,
    tensor_product,
    trivial_algebra,
    truncated_polynomial,
    verify_algebra,
    wedge_circles_algebra,
)
from tcbivar.fields import CoefficientField

Q = CoefficientField.rationals()


# constructors --------------------------------------------------------------


def test_exterior_smallest_case():
    alg = exterior_algebra(Q, [1])
    assert alg.labels == ("1", "u")
    assert alg.dim == 2
    u = alg.by_label("u")
    assert (u * u).is_zero()


def test_exterior_five_generators():
    alg = exterior_algebra(Q, [1, 1, 1, 1, 1])
    assert alg.dim == 32
    assert alg.top_degree == 5
    top = alg.by_label("u1")
    for i in range(2, 6):
        top = top * alg.by_label(f"u{i}")
    assert not top.is_zero()
    assert top == alg.by_label("u1u2u3u4u5")


def test_exterior_anticommutativity():
    alg = exterior_algebra(Q, [1, 1])
    u1, u2 = alg.by_label("u1"), alg.by_label("u2")
    assert u2 * u1 == -(u1 * u2)


def test_exterior_binomial_dimension_counts():
    for n in range(1, 6):
        alg = exterior_algebra(Q, [1] * n)
        for k in range(n + 1):
            assert sum(1 for d in alg.degrees if d == k) == comb(n, k)


def test_exterior_rejects_even_degree():
    with pytest.raises(ConstructionError):
        exterior_algebra(Q, [2])
    with pytest.raises(ConstructionError):
        exterior_algebra(Q, [1, 4, 1])


def test_truncated_polynomial_sphere():
    s2 = truncated_polynomial(Q, 2, 1)
    assert s2.labels == ("1", "u")
    u = s2.by_label("u")
    assert (u * u).is_zero()


def test_truncated_polynomial_height_two():
    alg = truncated_polynomial(Q, 2, 2)
    assert alg.labels == ("1", "u", "u^2")
    u = alg.by_label("u")
    assert u * u == alg.by_label("u^2")
    assert (u * u * u).is_zero()


def test_truncated_polynomial_mod_two():
    f2 = CoefficientField.prime_field(2)
    alg = truncated_polynomial(f2, 2, 1)
    assert alg.labels == ("1", "u")
    u = alg.by_label("u")
    assert u + u == alg.zero()


def test_truncated_rejects_odd_degree():
    with pytest.raises(ConstructionError):
        truncated_polynomial(Q, 3, 1)


def test_wedge_circles():
    alg = wedge_circles_algebra(Q, 2)
    a1, a2 = alg.by_label("a1"), alg.by_label("a2")
    assert (a1 * a2).is_zero()
    assert (a1 * a1).is_zero()
    verify_algebra(alg)


# multiplication -------------------------------------------------------------


def test_unit_law_random():
    rng = random.Random(5)
    alg = exterior_algebra(Q, [1, 1, 1])
    for _ in range(20):
        a = random_element(alg, rng)
        assert alg.one() * a == a
        assert a * alg.one() == a


def test_cross_terms_cancel():
    # (u1 + u2)^2 = 0: squares vanish and cross terms cancel in pairs
    alg = exterior_algebra(Q, [1, 1])
    s = alg.by_label("u1") + alg.by_label("u2")
    assert (s * s).is_zero()


def test_mismatched_algebras_rejected():
    a = exterior_algebra(Q, [1])
    b = exterior_algebra(Q, [1])
    with pytest.raises(MismatchedAlgebras):
        a.by_label("u") * b.by_label("u")


def test_exact_rational_arithmetic():
    alg = truncated_polynomial(Q, 2, 3)
    rng = random.Random(17)
    for _ in range(50):
        a = alg.element({i: Fraction(rng.randint(-10**12, 10**12),
                                     rng.randint(1, 10**9))
                         for i in range(alg.dim)})
        b = alg.element({i: Fraction(rng.randint(-10**12, 10**12),
                                     rng.randint(1, 10**9))
                         for i in range(alg.dim)})
        assert (a + b) - b == a


# tensor products ------------------------------------------------------------


def test_tensor_koszul_sign_even():
    s2 = truncated_polynomial(Q, 2, 1)
    t = tensor_product(s2, s2)
    u = s2.by_label("u")
    left = embed_left(u, t)
    right = embed_right(u, t)
    # deg u = 2: (1 (x) u)(u (x) 1) = +(u (x) u)
    assert right * left == t.by_label("u⊗u")
    assert left * right == t.by_label("u⊗u")


def test_tensor_koszul_sign_odd():
    s1 = exterior_algebra(Q, [1])
    t = tensor_product(s1, s1)
    u = s1.by_label("u")
    left = embed_left(u, t)
    right = embed_right(u, t)
    # deg u = 1: (1 (x) u)(u (x) 1) = -(u (x) u)
    assert right * left == -(left * right)
    assert left * right == t.by_label("u⊗u")


def test_tensor_dimension():
    t5 = exterior_algebra(Q, [1] * 5)
    tt = tensor_product(t5, t5)
    assert tt.dim == 1024


def test_tensor_field_mismatch():
    a = exterior_algebra(Q, [1])
    b = exterior_algebra(CoefficientField.prime_field(2), [1])
    with pytest.raises(MismatchedAlgebras):
        tensor_product(a, b)


def test_embed_requires_matching_factor():
    a = exterior_algebra(Q, [1])
    other = exterior_algebra(Q, [1])
    t = tensor_product(a, a)
    with pytest.raises(MismatchedAlgebras):
        embed_left(other.by_label("u"), t)
    assert embed_left(a.zero(), t).is_zero()
    assert embed_right(a.zero(), t).is_zero()


def test_tensor_labels_row_major():
    s2 = truncated_polynomial(Q, 2, 1)
    t = tensor_product(s2, s2)
    assert t.labels == ("1⊗1", "1⊗u", "u⊗1", "u⊗u")


# invariant suite -------------------------------------------------------------


@pytest.mark.parametrize("make", [
    lambda: exterior_algebra(Q, [1]),
    lambda: exterior_algebra(Q, [1, 1, 1]),
    lambda: exterior_algebra(Q, [1, 3]),
    lambda: exterior_algebra(CoefficientField.prime_field(2), [1, 1]),
    lambda: truncated_polynomial(Q, 2, 1),
    lambda: truncated_polynomial(Q, 4, 3),
    lambda: truncated_polynomial(CoefficientField.prime_field(5), 2, 2),
    lambda: trivial_algebra(Q),
    lambda: wedge_circles_algebra(Q, 3),
    lambda: tensor_product(truncated_polynomial(Q, 2, 1),
                           truncated_polynomial(Q, 2, 1)),
    lambda: tensor_product(exterior_algebra(Q, [1, 1]),
                           exterior_algebra(Q, [1, 1])),
    lambda: tensor_product(exterior_algebra(Q, [1]),
                           truncated_polynomial(Q, 2, 2)),
])
def test_constructor_outputs_pass_invariants(make):
    verify_algebra(make())


def test_large_tensor_sampled_invariants():
    t5 = exterior_algebra(Q, [1] * 5)
    tt = tensor_product(t5, t5)
    assert algebra_violations(tt, rng=random.Random(3), pair_limit=800,
                              triple_limit=400) == []


def test_randomized_ring_axioms():
    rng = random.Random(23)
    algebras = [
        exterior_algebra(Q, [1, 1, 1]),
        tensor_product(exterior_algebra(Q, [1, 1]), exterior_algebra(Q, [1])),
        truncated_polynomial(CoefficientField.prime_field(3), 2, 3),
    ]
    for alg in algebras:
        for _ in range(60):
            a = random_element(alg, rng)
            b = random_element(alg, rng)
            c = random_element(alg, rng)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c


def test_graded_commutativity_on_homogeneous_parts():
    rng = random.Random(29)
    alg = tensor_product(exterior_algebra(Q, [1, 1]), exterior_algebra(Q, [1]))
    by_degree: dict[int, list[int]] = {}
    for i, d in enumerate(alg.degrees):
        by_degree.setdefault(d, []).append(i)
    for _ in range(80):
        da, db = rng.choice(list(by_degree)), rng.choice(list(by_degree))
        a = alg.element({i: rng.randint(-4, 4) for i in by_degree[da]})
        b = alg.element({i: rng.randint(-4, 4) for i in by_degree[db]})
        ab = a * b
        ba = b * a
        if (da * db) % 2 == 1:
            assert ab == -ba
        else:
            assert ab == ba


# mutation detection -----------------------------------------------------------


def _corrupt(alg: GradedAlgebra, i: int, j: int, replacement) -> GradedAlgebra:
    table = dict(alg.materialize_table())
    table[(i, j)] = replacement
    return GradedAlgebra.from_table(alg.field, list(zip(alg.labels, alg.degrees)),
                                    table, name="corrupted", verify=False)


def test_single_offdiagonal_corruption_always_rejected():
    # corrupting one off-diagonal entry breaks graded commutativity against
    # its mirror, so verification must fail for every such flip
    alg = exterior_algebra(Q, [1, 1])
    rng = random.Random(31)
    for _ in range(40):
        i = rng.randrange(alg.dim)
        j = rng.randrange(alg.dim)
        if i == j:
            continue
        row = alg.basis_product(i, j)
        if row:
            k, c = row[0]
            bad = ((k, c + 1),)
        else:
            d = alg.degrees[i] + alg.degrees[j]
            targets = [k for k, deg in enumerate(alg.degrees) if deg == d]
            if not targets:
                continue
            bad = ((targets[0], Fraction(1)),)
        corrupted = _corrupt(alg, i, j, bad)
        assert algebra_violations(corrupted) != []


def test_unit_row_corruption_rejected():
    alg = truncated_polynomial(Q, 2, 2)
    corrupted = _corrupt(alg, 0, 1, ((1, Fraction(2)),))
    with pytest.raises(InvariantViolation):
        verify_algebra(corrupted)


def test_corruption_verdict_matches_bruteforce_axiom_scan():
    # random single-entry corruptions: the verifier's verdict must agree with
    # a from-scratch axiom evaluation (some corruptions are benign rescalings)
    alg = truncated_polynomial(Q, 2, 2)
    rng = random.Random(37)
    for _ in range(30):
        i = rng.randrange(alg.dim)
        j = rng.randrange(alg.dim)
        d = alg.degrees[i] + alg.degrees[j]
        targets = [k for k, deg in enumerate(alg.degrees) if deg == d]
        if not targets:
            continue
        bad = ((targets[0], Fraction(rng.randint(1, 3))),)
        corrupted = _corrupt(alg, i, j, bad)
        violations = algebra_violations(corrupted)
        # independent scan: evaluate the axioms directly on the table
        def clean(i2, j2):
            return corrupted.basis_product(i2, j2)
        ok = True
        n = alg.dim
        for x in range(n):
            if clean(0, x) != ((x, Fraction(1)),) or clean(x, 0) != ((x, Fraction(1)),):
                ok = False
        for x in range(n):
            for y in range(n):
                sign = -1 if (alg.degrees[x] * alg.degrees[y]) % 2 else 1
                if clean(x, y) != tuple((k, sign * c) for k, c in clean(y, x)):
                    ok = False
                for z in range(n):
                    bx, by, bz = (corrupted.basis_element(t) for t in (x, y, z))
                    if (bx * by) * bz != bx * (by * bz):
                        ok = False
        assert (violations == []) == ok


def test_unknown_label():
    alg = exterior_algebra(Q, [1])
    with pytest.raises(UnknownBasisLabel):
        alg.by_label("nope")
