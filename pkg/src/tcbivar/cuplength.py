"""Cup-length of a spanned set: largest m with a nonzero m-fold product.

The main routine iterates subspaces V_1 = span(gens) and
V_(m+1) = span{v * g : v in V_m, g in gens} with exact row reduction, so the
returned value k certifies both that some k-fold product is nonzero (the
witness) and that every (k+1)-fold product vanishes (the iteration reached the
zero subspace).  A brute-force enumerator over generator multisets serves as
an independent oracle: reordering homogeneous factors only changes signs, and
scalar combinations expand multilinearly into generator products, so multisets
of generators suffice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraElement, GradedAlgebra, UnknownBasisLabel
from .homs import ZeroDivisorSet


class IllPosedGenerators(ValueError):
    """A generator is inhomogeneous or of degree zero; the iteration would
    not be degree-bounded."""


@dataclass(frozen=True)
class LcpResult:
    """value = largest number of factors in a nonzero product; witness lists
    the generator indices of one such product (empty when value is 0)."""

    value: int
    witness: tuple[int, ...]
    witness_product: AlgebraElement


class _Echelon:
    """Sparse row-echelon accumulator with deterministic pivoting: rows are
    reduced in insertion order and pivot on their least nonzero column."""

    def __init__(self, field):
        self.field = field
        self.rows: dict[int, dict[int, object]] = {}

    def insert(self, element: AlgebraElement) -> bool:
        """Reduce an element against the current rows; returns True if it
        contributes a new pivot (i.e. was independent)."""
        f = self.field
        row = dict(element.terms)
        while row:
            piv = min(row)
            existing = self.rows.get(piv)
            if existing is None:
                inv = f.inv(row[piv])
                normalized = {j: f.mul(c, inv) for j, c in row.items()}
                self.rows[piv] = normalized
                return True
            c = row[piv]
            for j, v in existing.items():
                s = f.sub(row.get(j, f.zero()), f.mul(c, v))
                if f.is_zero(s):
                    row.pop(j, None)
                else:
                    row[j] = s
        return False


def _validate(gens: ZeroDivisorSet) -> None:
    for g, label in zip(gens.generators, gens.source_labels):
        d = g.degree()
        if d is None or d < 1:
            raise IllPosedGenerators(
                f"generator for {label} must be homogeneous of positive degree")


def lcp_subspace_iteration(gens: ZeroDivisorSet) -> LcpResult:
    """Exact cup-length with a witness, via subspace iteration.

    At each level a spanning subset of pure products is kept (the products
    whose rows introduced new pivots), so the witness really is a product of
    generators and not a linear combination.
    """
    _validate(gens)
    ambient = gens.ambient
    if not gens.generators:
        return LcpResult(0, (), ambient.zero())

    echelon = _Echelon(ambient.field)
    level: list[tuple[tuple[int, ...], AlgebraElement]] = []
    for idx, g in enumerate(gens.generators):
        if echelon.insert(g):
            level.append(((idx,), g))
    if not level:
        return LcpResult(0, (), ambient.zero())

    m = 1
    # each factor raises degree by >= 1, so levels beyond the top degree vanish
    while m <= ambient.top_degree:
        echelon = _Echelon(ambient.field)
        nxt: list[tuple[tuple[int, ...], AlgebraElement]] = []
        for word, v in level:
            for idx, g in enumerate(gens.generators):
                p = v * g
                if p.is_zero():
                    continue
                if echelon.insert(p):
                    nxt.append((word + (idx,), p))
        if not nxt:
            break
        level = nxt
        m += 1
    word, product = level[0]
    return LcpResult(m, word, product)


def lcp_bruteforce(gens: ZeroDivisorSet, cap: int | None = None) -> int:
    """Oracle: enumerate generator multisets up to size cap and return the
    largest size with a nonzero product.

    Complete whenever cap >= top degree of the ambient algebra (the default),
    since every factor has degree >= 1.  Extensions of a zero partial product
    stay zero, so the search prunes on zero.
    """
    _validate(gens)
    ambient = gens.ambient
    if cap is None:
        cap = ambient.top_degree
    n = len(gens.generators)
    if n == 0 or cap < 1:
        return 0

    best = 0

    def extend(start: int, product: AlgebraElement, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if size == cap:
            return
        for idx in range(start, n):
            p = product * gens.generators[idx] if size else gens.generators[idx]
            if p.is_zero():
                continue
            extend(idx, p, size + 1)

    extend(0, ambient.one(), 0)
    return best


def coefficient_of(product: AlgebraElement, basis_label: str):
    """Stored coefficient of the named basis element (0 if absent)."""
    alg: GradedAlgebra = product.algebra
    index = alg.index_by_label.get(basis_label)
    if index is None:
        raise UnknownBasisLabel(f"{alg.name} has no basis element {basis_label!r}")
    return product.coefficient(index)
