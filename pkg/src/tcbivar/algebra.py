"""Finite-dimensional graded-commutative algebras with exact arithmetic.

An algebra is given by an ordered basis (label, degree) with the unit at
index 0, plus a structure map sending a basis pair (i, j) to the sparse
expansion of b_i * b_j.  Constructors cover the rings needed downstream:
exterior algebras on odd generators, truncated polynomial rings on one even
generator, the trivial ring, the degree-one ring of a wedge of circles, and
the signed tensor product

    (a (x) b) * (a' (x) b') = (-1)^(deg b * deg a') (a a' (x) b b'),

which is the only place a sign convention enters.  All values are immutable
after construction and safe to share.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .fields import CoefficientField


class AlgebraError(ValueError):
    """Base class for algebra construction and usage errors."""


class ConstructionError(AlgebraError):
    """A constructor was asked for a mathematically inconsistent algebra."""


class MismatchedAlgebras(AlgebraError):
    """Operands belong to different algebras; this signals a caller bug."""


class UnknownBasisLabel(AlgebraError):
    """A label does not name any basis element of the algebra."""


class InvariantViolation(AlgebraError):
    """A structure table fails the graded-algebra axioms."""


# sparse rows are tuples of (basis index, nonzero scalar), sorted by index
SparseRow = tuple[tuple[int, object], ...]


@dataclass(frozen=True)
class AlgebraElement:
    """Sparse exact-coefficient vector over the owning algebra's basis."""

    algebra: "GradedAlgebra"
    terms: tuple[tuple[int, object], ...]

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, index: int):
        for i, c in self.terms:
            if i == index:
                return c
        return self.algebra.field.zero()

    def degree(self) -> int | None:
        """Common degree of all terms, or None if zero or inhomogeneous."""
        degs = {self.algebra.degrees[i] for i, _ in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self) -> bool:
        return self.is_zero() or self.degree() is not None

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same(other)
        f = self.algebra.field
        acc = dict(self.terms)
        for i, c in other.terms:
            s = f.add(acc.get(i, f.zero()), c)
            if f.is_zero(s):
                acc.pop(i, None)
            else:
                acc[i] = s
        return AlgebraElement(self.algebra, tuple(sorted(acc.items())))

    def __neg__(self) -> "AlgebraElement":
        f = self.algebra.field
        return AlgebraElement(self.algebra, tuple((i, f.neg(c)) for i, c in self.terms))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, scalar) -> "AlgebraElement":
        f = self.algebra.field
        s = f.coerce(scalar)
        if f.is_zero(s):
            return self.algebra.zero()
        return AlgebraElement(self.algebra, tuple((i, f.mul(c, s)) for i, c in self.terms))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same(other)
        alg = self.algebra
        f = alg.field
        acc: dict[int, object] = {}
        zero = f.zero()
        for i, ci in self.terms:
            for j, cj in other.terms:
                row = alg.basis_product(i, j)
                if not row:
                    continue
                cij = f.mul(ci, cj)
                for k, ck in row:
                    s = f.add(acc.get(k, zero), f.mul(cij, ck))
                    if f.is_zero(s):
                        acc.pop(k, None)
                    else:
                        acc[k] = s
        return AlgebraElement(alg, tuple(sorted(acc.items())))

    def _check_same(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra:
            raise MismatchedAlgebras(
                f"elements of {self.algebra.name} and {other.algebra.name} cannot be combined")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        f = self.algebra.field
        parts = []
        for i, c in self.terms:
            label = self.algebra.labels[i]
            if c == f.one():
                parts.append(label)
            else:
                parts.append(f"{f.scalar_str(c)}*{label}")
        return " + ".join(parts)

    __repr__ = __str__


_ATOMIC_LABEL = re.compile(r"[A-Za-z]+[0-9]*")


def _tensor_label(left: str, right: str) -> str:
    def wrap(s: str) -> str:
        if s == "1" or _ATOMIC_LABEL.fullmatch(s):
            return s
        return f"({s})"

    return f"{wrap(left)}⊗{wrap(right)}"


class GradedAlgebra:
    """Graded-commutative algebra over an exact field, basis plus structure map.

    The structure map is evaluated lazily and cached, which keeps large tensor
    algebras cheap; ``materialize_table`` forces the full table when a test
    needs to corrupt or inspect it.
    """

    def __init__(self, field: CoefficientField, basis: Iterable[tuple[str, int]],
                 mul_fn: Callable[[int, int], SparseRow], name: str = "algebra",
                 left_factor: "GradedAlgebra | None" = None,
                 right_factor: "GradedAlgebra | None" = None):
        basis = tuple(basis)
        if not basis:
            raise ConstructionError("empty basis")
        if basis[0][1] != 0:
            raise ConstructionError("basis element 0 must be the degree-0 unit")
        if sum(1 for _, d in basis if d == 0) != 1:
            raise ConstructionError("degree-0 component must be one-dimensional")
        if any(d < 0 for _, d in basis):
            raise ConstructionError("negative degree in basis")
        labels = tuple(l for l, _ in basis)
        if len(set(labels)) != len(labels):
            raise ConstructionError("duplicate basis labels")
        self.field = field
        self.labels = labels
        self.degrees = tuple(d for _, d in basis)
        self.name = name
        self.top_degree = max(self.degrees)
        self.index_by_label = {l: i for i, l in enumerate(labels)}
        self.left_factor = left_factor
        self.right_factor = right_factor
        self._mul_fn = mul_fn
        self._mul_cache: dict[tuple[int, int], SparseRow] = {}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_product(self, i: int, j: int) -> SparseRow:
        key = (i, j)
        row = self._mul_cache.get(key)
        if row is None:
            row = self._mul_fn(i, j)
            self._mul_cache[key] = row
        return row

    # element factories ------------------------------------------------------

    def element(self, terms) -> AlgebraElement:
        """Build an element from {index: coefficient}; zeros are dropped."""
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        f = self.field
        acc: dict[int, object] = {}
        for i, c in items:
            if not 0 <= i < self.dim:
                raise AlgebraError(f"basis index {i} out of range for {self.name}")
            c = f.coerce(c)
            if f.is_zero(c):
                continue
            s = f.add(acc.get(i, f.zero()), c)
            if f.is_zero(s):
                acc.pop(i, None)
            else:
                acc[i] = s
        return AlgebraElement(self, tuple(sorted(acc.items())))

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, ())

    def one(self) -> AlgebraElement:
        return self.element({0: 1})

    def basis_element(self, i: int) -> AlgebraElement:
        return self.element({i: 1})

    def by_label(self, label: str) -> AlgebraElement:
        i = self.index_by_label.get(label)
        if i is None:
            raise UnknownBasisLabel(f"{self.name} has no basis element {label!r}")
        return self.basis_element(i)

    def positive_indices(self) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d > 0]

    def materialize_table(self) -> dict[tuple[int, int], SparseRow]:
        n = self.dim
        return {(i, j): self.basis_product(i, j) for i in range(n) for j in range(n)}

    @classmethod
    def from_table(cls, field: CoefficientField, basis: Iterable[tuple[str, int]],
                   table: dict[tuple[int, int], SparseRow], name: str = "table algebra",
                   verify: bool = True) -> "GradedAlgebra":
        alg = cls(field, basis, lambda i, j: table[(i, j)], name=name)
        if verify:
            verify_algebra(alg)
        return alg

    def __repr__(self) -> str:
        return f"<GradedAlgebra {self.name}, dim {self.dim}, over {self.field.describe()}>"


# constructors ----------------------------------------------------------------


def exterior_algebra(field: CoefficientField, generator_degrees: list[int],
                     labels: list[str] | None = None) -> GradedAlgebra:
    """Exterior algebra on odd-degree generators, square-free monomial basis.

    The basis consists of the 2^n square-free monomials ordered by (degree,
    generator mask); u_i^2 = 0 and u_j u_i = -u_i u_j.
    """
    degs = list(generator_degrees)
    if not degs:
        raise ConstructionError("exterior algebra needs at least one generator")
    for d in degs:
        if d < 1 or d % 2 == 0:
            raise ConstructionError(
                f"exterior generator degree must be odd and >= 1, got {d}")
    n = len(degs)
    if labels is None:
        labels = ["u"] if n == 1 else [f"u{i + 1}" for i in range(n)]
    elif len(labels) != n:
        raise ConstructionError("one label per generator required")

    def mask_label(mask: int) -> str:
        if mask == 0:
            return "1"
        return "".join(labels[i] for i in range(n) if mask >> i & 1)

    def mask_degree(mask: int) -> int:
        return sum(degs[i] for i in range(n) if mask >> i & 1)

    masks = sorted(range(1 << n), key=lambda m: (mask_degree(m), m))
    index_of_mask = {m: i for i, m in enumerate(masks)}
    basis = [(mask_label(m), mask_degree(m)) for m in masks]
    one = field.one()
    neg_one = field.neg(one)

    def mul(i: int, j: int) -> SparseRow:
        mi, mj = masks[i], masks[j]
        if mi & mj:
            return ()
        # sign: one factor of (-1)^(deg_a * deg_b) per transposed generator
        # pair; all degrees odd, so each inversion contributes -1
        inversions = 0
        for a in range(n):
            if mj >> a & 1:
                inversions += bin(mi >> (a + 1)).count("1")
        coeff = one if inversions % 2 == 0 else neg_one
        return ((index_of_mask[mi | mj], coeff),)

    return GradedAlgebra(field, basis, mul,
                         name=f"ext({','.join(map(str, degs))})")


def truncated_polynomial(field: CoefficientField, degree: int, height: int) -> GradedAlgebra:
    """k[u]/(u^(height+1)) with |u| even: basis 1, u, ..., u^height."""
    if degree < 2 or degree % 2 != 0:
        raise ConstructionError(
            f"truncated polynomial generator degree must be even and >= 2, got {degree};"
            " use exterior_algebra for odd degrees")
    if height < 1:
        raise ConstructionError(f"height must be >= 1, got {height}")
    basis = [("1", 0), ("u", degree)]
    basis += [(f"u^{e}", degree * e) for e in range(2, height + 1)]
    one = field.one()

    def mul(i: int, j: int) -> SparseRow:
        e = i + j
        if e > height:
            return ()
        return ((e, one),)

    return GradedAlgebra(field, basis, mul, name=f"trunc({degree};{height})")


def trivial_algebra(field: CoefficientField) -> GradedAlgebra:
    """The ground field in degree 0 (cohomology of a contractible space)."""
    return GradedAlgebra(field, [("1", 0)], lambda i, j: ((0, field.one()),),
                         name="trivial")


def wedge_circles_algebra(field: CoefficientField, k: int) -> GradedAlgebra:
    """k degree-1 classes with every positive-degree product zero."""
    if k < 1:
        raise ConstructionError(f"need k >= 1 circles, got {k}")
    basis = [("1", 0)] + [(f"a{i + 1}", 1) for i in range(k)]
    one = field.one()

    def mul(i: int, j: int) -> SparseRow:
        if i == 0:
            return ((j, one),)
        if j == 0:
            return ((i, one),)
        return ()

    return GradedAlgebra(field, basis, mul, name=f"wedge({k})")


def tensor_product(left: GradedAlgebra, right: GradedAlgebra) -> GradedAlgebra:
    """Signed tensor product; basis pairs are ordered row-major in (left, right)."""
    if left.field != right.field:
        raise MismatchedAlgebras(
            f"tensor factors over different fields: {left.field.describe()}"
            f" vs {right.field.describe()}")
    field = left.field
    dim_r = right.dim
    basis = []
    for la, da in zip(left.labels, left.degrees):
        for lb, db in zip(right.labels, right.degrees):
            basis.append((_tensor_label(la, lb), da + db))

    def mul(i: int, j: int) -> SparseRow:
        i1, j1 = divmod(i, dim_r)
        i2, j2 = divmod(j, dim_r)
        sign_neg = (right.degrees[j1] * left.degrees[i2]) % 2 == 1
        out = []
        for k1, c1 in left.basis_product(i1, i2):
            for k2, c2 in right.basis_product(j1, j2):
                c = field.mul(c1, c2)
                if sign_neg:
                    c = field.neg(c)
                out.append((k1 * dim_r + k2, c))
        return tuple(sorted(out))

    return GradedAlgebra(field, basis, mul,
                         name=f"{left.name}(x){right.name}",
                         left_factor=left, right_factor=right)


def embed_left(a: AlgebraElement, tensor: GradedAlgebra) -> AlgebraElement:
    """a maps to a (x) 1."""
    if tensor.left_factor is not a.algebra:
        raise MismatchedAlgebras(
            f"{tensor.name} is not a tensor with left factor {a.algebra.name}")
    dim_r = tensor.right_factor.dim
    return AlgebraElement(tensor, tuple((i * dim_r, c) for i, c in a.terms))


def embed_right(a: AlgebraElement, tensor: GradedAlgebra) -> AlgebraElement:
    """a maps to 1 (x) a."""
    if tensor.right_factor is not a.algebra:
        raise MismatchedAlgebras(
            f"{tensor.name} is not a tensor with right factor {a.algebra.name}")
    return AlgebraElement(tensor, tuple(a.terms))


def tensor_elem(a: AlgebraElement, b: AlgebraElement, tensor: GradedAlgebra) -> AlgebraElement:
    """The decomposable element a (x) b."""
    if tensor.left_factor is not a.algebra or tensor.right_factor is not b.algebra:
        raise MismatchedAlgebras(f"{tensor.name} does not combine these factors")
    f = tensor.field
    dim_r = tensor.right_factor.dim
    terms = {}
    for i, ca in a.terms:
        for j, cb in b.terms:
            terms[i * dim_r + j] = f.mul(ca, cb)
    return tensor.element(terms)


# axiom verification -----------------------------------------------------------


def algebra_violations(alg: GradedAlgebra, rng: random.Random | None = None,
                       pair_limit: int = 4096, triple_limit: int = 8000) -> list[str]:
    """Check the graded-algebra axioms; returns human-readable violations.

    Unit, degree-additivity and graded-commutativity scan basis pairs;
    associativity scans triples.  Scans are exhaustive below the limits and
    randomized samples of the same size above them.
    """
    f = alg.field
    n = alg.dim
    out: list[str] = []

    for j in range(n):
        if alg.basis_product(0, j) != ((j, f.one()),):
            out.append(f"unit law fails on 1*b{j}")
        if alg.basis_product(j, 0) != ((j, f.one()),):
            out.append(f"unit law fails on b{j}*1")

    if n * n <= pair_limit:
        pairs = itertools.product(range(n), range(n))
    else:
        rng = rng or random.Random(0)
        pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(pair_limit))
    for i, j in pairs:
        row = alg.basis_product(i, j)
        want = alg.degrees[i] + alg.degrees[j]
        for k, c in row:
            if alg.degrees[k] != want:
                out.append(f"degree additivity fails on ({i},{j}): term {k}")
                break
        sign_neg = (alg.degrees[i] * alg.degrees[j]) % 2 == 1
        mirrored = tuple((k, f.neg(c) if sign_neg else c)
                         for k, c in alg.basis_product(j, i))
        if row != mirrored:
            out.append(f"graded commutativity fails on ({i},{j})")

    if n ** 3 <= triple_limit:
        triples = itertools.product(range(n), range(n), range(n))
    else:
        rng = rng or random.Random(0)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                   for _ in range(triple_limit))
    for i, j, k in triples:
        bi, bj, bk = alg.basis_element(i), alg.basis_element(j), alg.basis_element(k)
        if (bi * bj) * bk != bi * (bj * bk):
            out.append(f"associativity fails on ({i},{j},{k})")

    return out


def verify_algebra(alg: GradedAlgebra, rng: random.Random | None = None,
                   pair_limit: int = 4096, triple_limit: int = 8000) -> None:
    violations = algebra_violations(alg, rng=rng, pair_limit=pair_limit,
                                    triple_limit=triple_limit)
    if violations:
        raise InvariantViolation("; ".join(violations[:5]))


def random_element(alg: GradedAlgebra, rng: random.Random,
                   coeff_range: tuple[int, int] = (-9, 9),
                   sparsity: float = 0.5) -> AlgebraElement:
    """Random sparse element with integer coefficients, for axiom tests."""
    terms = {}
    for i in range(alg.dim):
        if rng.random() < sparsity:
            terms[i] = rng.randint(*coeff_range)
    return alg.element(terms)
