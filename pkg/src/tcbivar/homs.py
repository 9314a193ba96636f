"""Degree-preserving multiplicative maps and zero-divisor generator sets.

A hom is stored by its images on the full basis of the source, which makes
verification a finite scan: unit preservation, degree preservation, and
multiplicativity over all basis pairs.  The bar-generator construction turns
two homs F, G out of the same source into the difference classes

    ubar = F(u) (x) 1  -  1 (x) G(u)

indexed over the positive-degree basis of the source; their span is the image
of F* - G* and is what the cup-length bound consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraElement,
    GradedAlgebra,
    MismatchedAlgebras,
    embed_left,
    embed_right,
    tensor_elem,
)


class HomVerificationError(ValueError):
    """A basis image table fails one of the hom axioms."""


class UnitNotPreserved(HomVerificationError):
    pass


class DegreeViolation(HomVerificationError):
    pass


class MultiplicativityViolation(HomVerificationError):
    pass


@dataclass(frozen=True)
class GradedHom:
    """Multiplicative degree-preserving map, given on the whole source basis."""

    source: GradedAlgebra
    target: GradedAlgebra
    images: tuple[AlgebraElement, ...]

    def apply(self, a: AlgebraElement) -> AlgebraElement:
        if a.algebra is not self.source:
            raise MismatchedAlgebras(
                f"element of {a.algebra.name} fed to a hom from {self.source.name}")
        out = self.target.zero()
        for i, c in a.terms:
            out = out + self.images[i].scale(c)
        return out

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        return self.apply(a)


def make_hom(source: GradedAlgebra, target: GradedAlgebra,
             basis_images, verify: bool = True) -> GradedHom:
    """Build a hom from one image per source basis element, then verify it.

    Verification is exhaustive over basis pairs.  Failures raise a distinct
    error per axiom, naming the offending basis element or pair.
    """
    images = tuple(basis_images)
    if len(images) != source.dim:
        raise HomVerificationError(
            f"expected {source.dim} basis images, got {len(images)}")
    for img in images:
        if img.algebra is not target:
            raise MismatchedAlgebras("hom image lies in the wrong algebra")
    hom = GradedHom(source, target, images)
    if verify:
        verify_hom(hom)
    return hom


def verify_hom(hom: GradedHom) -> None:
    source, target, images = hom.source, hom.target, hom.images
    if images[0] != target.one():
        raise UnitNotPreserved(f"image of unit is {images[0]}, not 1")
    for i, img in enumerate(images):
        if img.is_zero():
            continue
        if img.degree() != source.degrees[i]:
            raise DegreeViolation(
                f"image of basis element {source.labels[i]} (degree"
                f" {source.degrees[i]}) is not homogeneous of that degree")
    for i in range(source.dim):
        for j in range(source.dim):
            lhs = hom.apply(source.basis_element(i) * source.basis_element(j))
            rhs = images[i] * images[j]
            if lhs != rhs:
                raise MultiplicativityViolation(
                    f"multiplicativity fails on basis pair"
                    f" ({source.labels[i]}, {source.labels[j]})")


def identity_hom(alg: GradedAlgebra) -> GradedHom:
    return GradedHom(alg, alg, tuple(alg.basis_element(i) for i in range(alg.dim)))


def collapse_hom(source: GradedAlgebra, target: GradedAlgebra) -> GradedHom:
    """1 maps to 1, every positive-degree basis element maps to 0."""
    images = [target.one()]
    images += [target.zero()] * (source.dim - 1)
    return GradedHom(source, target, tuple(images))


def tensor_hom(fstar: GradedHom, gstar: GradedHom,
               source_tensor: GradedAlgebra, target_tensor: GradedAlgebra,
               verify: bool = False) -> GradedHom:
    """The hom b_i (x) b_j maps to fstar(b_i) (x) gstar(b_j).

    No sign appears: the left factor maps to the left factor and the right to
    the right, so terms are never transposed.  A naive sign-on-every-swap
    implementation would double-apply the tensor sign rule.
    """
    if source_tensor.left_factor is not fstar.source or \
            source_tensor.right_factor is not gstar.source:
        raise MismatchedAlgebras("source tensor does not combine the hom sources")
    if target_tensor.left_factor is not fstar.target or \
            target_tensor.right_factor is not gstar.target:
        raise MismatchedAlgebras("target tensor does not combine the hom targets")
    dim_r = gstar.source.dim
    images = []
    for idx in range(source_tensor.dim):
        i, j = divmod(idx, dim_r)
        images.append(tensor_elem(fstar.images[i], gstar.images[j], target_tensor))
    hom = GradedHom(source_tensor, target_tensor, tuple(images))
    if verify:
        verify_hom(hom)
    return hom


@dataclass(frozen=True)
class ZeroDivisorSet:
    """Homogeneous positive-degree classes in a tensor algebra, with the
    source basis label each generator came from."""

    ambient: GradedAlgebra
    generators: tuple[AlgebraElement, ...]
    source_labels: tuple[str, ...]

    def __post_init__(self):
        for g, label in zip(self.generators, self.source_labels):
            if g.algebra is not self.ambient:
                raise MismatchedAlgebras("generator outside the ambient algebra")
            d = g.degree()
            if d is None or d < 1:
                raise ValueError(
                    f"generator for {label} is not homogeneous of positive degree")


def zero_divisor_generators(zalg: GradedAlgebra, zz: GradedAlgebra) -> ZeroDivisorSet:
    """One generator u (x) 1 - 1 (x) u per positive-degree basis element u."""
    if zz.left_factor is not zalg or zz.right_factor is not zalg:
        raise MismatchedAlgebras(f"{zz.name} is not the square tensor of {zalg.name}")
    gens = []
    labels = []
    for i in zalg.positive_indices():
        u = zalg.basis_element(i)
        gens.append(embed_left(u, zz) - embed_right(u, zz))
        labels.append(zalg.labels[i])
    return ZeroDivisorSet(zz, tuple(gens), tuple(labels))


def bar_generators(fstar: GradedHom, gstar: GradedHom,
                   xy: GradedAlgebra) -> ZeroDivisorSet:
    """Difference classes fstar(u) (x) 1 - 1 (x) gstar(u) over the positive
    basis of the common source; zero generators are dropped (the span, hence
    the cup-length, is unchanged)."""
    if fstar.source is not gstar.source:
        raise MismatchedAlgebras("the two homs must share their source algebra")
    if xy.left_factor is not fstar.target or xy.right_factor is not gstar.target:
        raise MismatchedAlgebras(
            f"{xy.name} is not the tensor of the hom targets")
    zalg = fstar.source
    gens = []
    labels = []
    for i in zalg.positive_indices():
        u = zalg.basis_element(i)
        bar = embed_left(fstar.apply(u), xy) - embed_right(gstar.apply(u), xy)
        if bar.is_zero():
            continue
        gens.append(bar)
        labels.append(zalg.labels[i])
    return ZeroDivisorSet(xy, tuple(gens), tuple(labels))
