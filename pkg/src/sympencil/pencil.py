"""Pencil numerology: fibre genus, base and critical point counts, fibre
degrees, index formulas, and the conservative surface-count decision rules.

A degree-k pencil on a lattice is pure bookkeeping here: the fibre class is
k times the primitive integral multiple of omega, the genus comes from
adjunction, base points from the self-intersection, and the critical-fibre
count from the Euler-characteristic identity for a fibration with nodal
members, e(X) + N = 2(2 - 2g) + delta.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .gromov import CohomologyProfile, gromov_invariant
from .lattice import FourManifoldLattice, HomologyClass, blow_up, twist


@dataclass(frozen=True)
class PencilData:
    """Numerical shadow of a degree-k pencil on a lattice."""

    lattice: FourManifoldLattice
    k: int
    fibre_class: HomologyClass
    genus: int
    base_points: int
    critical_fibres: int


def primitive_symplectic_class(x: FourManifoldLattice) -> tuple[int, ...]:
    """The primitive integral class on the ray of omega."""
    denlcm = 1
    for q in x.omega:
        denlcm = denlcm * q.denominator // math.gcd(denlcm, q.denominator)
    ints = [(q * denlcm).numerator for q in x.omega]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        raise ValueError("omega is zero")
    return tuple(v // g for v in ints)


def build_pencil(x: FourManifoldLattice, k: int) -> PencilData:
    """Degree-k pencil data: W = k * (primitive omega), genus by adjunction,
    N = W.W base points, and the critical-fibre count delta.

    Warns when the fibre genus comes out below 2, where the high-degree
    asymptotics the construction is meant for do not yet apply.
    """
    if k < 1:
        raise ValueError("pencil degree k must be positive")
    w0 = primitive_symplectic_class(x)
    w = tuple(k * v for v in w0)
    n = x.square(w)
    if n <= 0:
        raise ValueError("fibre class must have positive square")
    two_g_minus_2 = x.k_dot(w) + n
    if two_g_minus_2 % 2:
        raise ValueError("adjunction gave an odd 2g - 2; K is not characteristic")
    genus = two_g_minus_2 // 2 + 1
    if genus < 0:
        raise ValueError(f"negative fibre genus {genus}")
    delta = x.euler + n - (4 - 4 * genus)
    if delta < 0:
        raise ValueError(
            f"critical-fibre count delta = {delta} is negative; "
            "inconsistent input lattice"
        )
    if genus < 2:
        warnings.warn(
            f"fibre genus {genus} < 2 at degree k = {k}; "
            "the high-degree regime needs larger k",
            stacklevel=2,
        )
    return PencilData(
        lattice=x,
        k=k,
        fibre_class=HomologyClass(x, w),
        genus=genus,
        base_points=n,
        critical_fibres=delta,
    )


def fibre_degree(pencil: PencilData, a: Sequence[int]) -> int:
    """Intersection r of the twisted class with a pencil fibre.

    In the lattice blown up at the N base points the fibre becomes
    i(W) - sum E_j and the class becomes i(a) + sum E_j, so the pairing is
    a.W + N. Evaluated in closed form; `fibre_degree_blowup_route` does the
    same computation on the actual blown-up lattice for cross-checking.
    """
    x = pencil.lattice
    return int(x.pairing(a, pencil.fibre_class.coords)) + pencil.base_points


def fibre_degree_blowup_route(pencil: PencilData, a: Sequence[int]) -> int:
    """`fibre_degree` computed literally on the blown-up lattice.

    Materializes the blow-up at all N base points, so only sensible for
    small pencils; exists as the independent route for tests.
    """
    xp = blow_up(pencil.lattice, pencil.base_points)
    twisted = twist(xp, a)
    fibre = list(pencil.fibre_class.coords) + [-1] * pencil.base_points
    return int(xp.pairing(twisted, fibre))


def residual_fibre_degree(pencil: PencilData, a: Sequence[int]) -> int:
    """Fibre degree of the untwisted residual class i(K - a); together with
    fibre_degree(a) it fills out 2g - 2."""
    x = pencil.lattice
    residual = [k - v for k, v in zip(x.canonical, a)]
    return int(x.pairing(residual, pencil.fibre_class.coords))


def ratio_convergence(
    x: FourManifoldLattice, a: Sequence[int], k_range: Iterable[int]
) -> list[tuple[int, Fraction]]:
    """Table of (k, (2g - 2)/r) for the pencils of the given degrees.

    Exact rationals; the ratio tends to 1 because the genus grows
    quadratically while the twist contribution of the class is linear.
    """
    out = []
    for k in k_range:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            p = build_pencil(x, k)
        r = fibre_degree(p, a)
        if r == 0:
            raise ValueError(f"fibre degree vanishes at k = {k}; ratio undefined")
        out.append((k, Fraction(2 * p.genus - 2, r)))
    return out


def virtual_dim(x: FourManifoldLattice, a: Sequence[int]) -> int:
    """(a.a - K.a)/2; an integer because K is characteristic."""
    return HomologyClass(x, tuple(a)).virtual_dim()


def family_index(x: FourManifoldLattice, a: Sequence[int]) -> int:
    """Index (a.a - K.a)/2 + (b+ + 1 - b1)/2 of the deformation problem of
    the class in the family over the pencil base."""
    parity = x.b_plus + 1 - x.b1
    if parity % 2:
        raise ValueError(
            f"half-integer family index: b+ + 1 - b1 = {parity} is odd"
        )
    return virtual_dim(x, a) + parity // 2


def picard_vertical_index(x: FourManifoldLattice) -> int:
    """Real index 1 + b1 - b+ of the vertical tangent complex over the
    degree-r Picard fibration; equals 2 - 2*family_index(X, 0)."""
    return 1 + x.b1 - x.b_plus


@dataclass(frozen=True)
class SectionSpaceDim:
    """Dimension report for holomorphic sections of the fibrewise canonical
    family, with the Jacobian torus dimension R riding along."""

    dimension: Fraction
    jacobian_dim: int
    integral: bool

    def as_int(self) -> int:
        if not self.integral:
            raise ValueError(f"dimension {self.dimension} is not an integer")
        return self.dimension.numerator


def sections_of_fK_dim(b_plus: int, b1: int) -> SectionSpaceDim:
    """Expected section-space dimension: (b+ - 1)/2 for even b1 and
    (b+ - 2)/2 for odd b1, flagged rather than rejected when the parity
    leaves it non-integral."""
    if b_plus < 1:
        raise ValueError("b+ must be at least 1")
    if b1 < 0:
        raise ValueError("b1 must be nonnegative")
    if b1 % 2 == 0:
        dim = Fraction(b_plus - 1, 2)
        r = b1 // 2
    else:
        dim = Fraction(b_plus - 2, 2)
        r = (b1 - 1) // 2
    return SectionSpaceDim(
        dimension=dim, jacobian_dim=r, integral=(dim.denominator == 1)
    )


@dataclass(frozen=True)
class SurfaceCountVerdict:
    """Outcome of the conservative count decision, with its justification."""

    kind: str  # Zero | PlusMinusOne | BinomialValue | Unknown
    reason: str
    value: Optional[int] = None
    context: dict = field(default_factory=dict)


def count_decision(
    x: FourManifoldLattice,
    a: Sequence[int],
    profile: Optional[CohomologyProfile] = None,
) -> SurfaceCountVerdict:
    """Decide the standard surface count of a class from quoted hypotheses.

    Rules are applied in a fixed order and the first match wins; a
    non-Unknown verdict is only ever emitted when its hypothesis holds on
    the supplied numbers, which ride along in the context.
    """
    coords = tuple(int(v) for v in a)
    if profile is not None and profile.divisor.coords != coords:
        raise ValueError("supplied profile is for a different class")
    d = virtual_dim(x, coords)
    a_omega = x.omega_dot(coords)
    k_omega = x.omega_dot(x.canonical)
    a_sq = x.square(coords)
    ka = x.k_dot(coords)
    high_b_plus = x.b_plus > 1 + x.b1
    context = {
        "virtual_dim": d,
        "a_sq": int(a_sq),
        "k_dot_a": int(ka),
        "a_omega": str(a_omega),
        "k_omega": str(k_omega),
        "b_plus": x.b_plus,
        "b1": x.b1,
    }

    if d < 0:
        return SurfaceCountVerdict(
            kind="Zero",
            reason="virtual dimension (a.a - K.a)/2 is negative, so the "
            "moduli space is empty and the count is 0",
            context=context,
        )
    if high_b_plus and a_sq != ka:
        return SurfaceCountVerdict(
            kind="Zero",
            reason="b+ > 1 + b1 and a.a != K.a: counts on lattices of "
            "simple type vanish away from the diagonal a.a = K.a",
            context=context,
        )
    if high_b_plus and (a_omega < 0 or a_omega > k_omega):
        return SurfaceCountVerdict(
            kind="Zero",
            reason="b+ > 1 + b1 and a.omega outside [0, K.omega]: a nonzero "
            "count forces 0 <= a.omega <= K.omega",
            context=context,
        )
    if x.b_plus == 1 and x.b1 == 0 and a_omega > 0 and a_sq > ka:
        context["section_torus_dim"] = x.b1 // 2
        return SurfaceCountVerdict(
            kind="PlusMinusOne",
            reason="b+ = 1, b1 = 0, a.omega > 0 and a.a > K.a: the count "
            "of such a class is +/-1",
            context=context,
        )
    is_zero = all(v == 0 for v in coords)
    is_canonical = coords == x.canonical
    if high_b_plus and (is_zero or is_canonical):
        return SurfaceCountVerdict(
            kind="PlusMinusOne",
            reason="the zero and canonical classes on a lattice with "
            "b+ > 1 + b1 count +/-1",
            context=context,
        )
    if profile is not None:
        value = gromov_invariant(profile, d)
        context["h0"] = profile.h0
        context["h1"] = profile.h1
        context["h2"] = profile.h2
        return SurfaceCountVerdict(
            kind="BinomialValue",
            reason="binomial obstruction formula evaluated on the supplied "
            "section dimensions",
            value=value,
            context=context,
        )
    return SurfaceCountVerdict(
        kind="Unknown",
        reason="no decisive hypothesis applies to this class",
        context=context,
    )
