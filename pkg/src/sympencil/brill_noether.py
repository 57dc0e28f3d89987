"""Brill-Noether bookkeeping for linear systems on pencil fibres.

Virtual dimensions of the loci of degree-r, dimension-s linear systems on a
genus-g curve, the codimension predicate used to rule residual systems out
generically, the Abel-Jacobi fibre-dimension profiles in the high-degree
range, and the section count on an irreducible one-node fibre.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class BNQuery:
    """A query for systems of degree r and projective dimension s on a
    genus-g curve."""

    g: int
    r: int
    s: int

    def __post_init__(self):
        if self.g < 2:
            raise ValueError("genus must be at least 2")
        if self.s < 0:
            raise ValueError("system dimension s must be nonnegative")


def rho(q: BNQuery) -> int:
    """Virtual dimension rho = g - (s+1)(g - r + s)."""
    return q.g - (q.s + 1) * (q.g - q.r + q.s)


def eh_predicate(q: BNQuery) -> bool:
    """Whether the locus of curves carrying such a system has codimension
    greater than one in moduli: true iff rho < -1."""
    return rho(q) < -1


@dataclass(frozen=True)
class AbelJacobiFibres:
    """Fibre-dimension profile of the degree-r Abel-Jacobi map."""

    generic_dim: int
    jump_dim: Optional[int]
    jump_locus_degree: Optional[int]
    descriptor: str


def abel_jacobi_fibre_dims(g: int, r: int) -> AbelJacobiFibres:
    """Fibre dimensions of Sym^r -> Pic^r for r in the ample range r > g-1.

    Generic fibres are projective spaces of dimension r - g; the dimension
    jumps by exactly one over a locus identified with the symmetric product
    of degree 2g - 2 - r, which is a point at r = 2g - 2 and empty beyond.
    """
    if g < 2:
        raise ValueError("genus must be at least 2")
    if r <= g - 1:
        raise ValueError(
            f"degree r = {r} is not above g - 1 = {g - 1}; "
            "outside the ample regime"
        )
    generic = r - g
    jump_degree = 2 * g - 2 - r
    if jump_degree < 0:
        return AbelJacobiFibres(
            generic_dim=generic,
            jump_dim=None,
            jump_locus_degree=None,
            descriptor="empty",
        )
    if jump_degree == 0:
        descriptor = "point"
    else:
        descriptor = f"Sym^{jump_degree} of the fibre"
    return AbelJacobiFibres(
        generic_dim=generic,
        jump_dim=generic + 1,
        jump_locus_degree=jump_degree,
        descriptor=descriptor,
    )


def singular_fibre_h0(d: int, g: int) -> int:
    """Sections of a generic degree-d line bundle on an irreducible
    one-node curve of arithmetic genus g: d - g + 1.

    One less than the normalization's count; the node imposes a single
    generic gluing condition s(p) = lambda * s(q).
    """
    if g < 1:
        raise ValueError("arithmetic genus must be at least 1 for a node")
    return d - g + 1
