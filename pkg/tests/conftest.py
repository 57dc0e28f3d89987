"""Shared fixtures and sample generators for the test suite."""

from functools import lru_cache

from sympencil.catalog import elliptic_like, spin_model
from sympencil.gromov import CohomologyProfile
from sympencil.lattice import HomologyClass


@lru_cache(maxsize=None)
def elliptic(n: int):
    return elliptic_like(n)


@lru_cache(maxsize=None)
def spin(n: int):
    return spin_model(n)


# Classes of virtual dimension r on the elliptic-like lattices, written as
# (a, b) with a sitting at the first +1 slot and b at the first -1 slot:
# the virtual dimension is (a^2 - b^2 - 3a + b)/2.
CLASS_FOR_R = {0: (3, 0), 1: (4, 2), 2: (4, 1)}


def class_of_virtual_dim(x, n: int, r: int) -> HomologyClass:
    a, b = CLASS_FOR_R[r]
    coords = [0] * x.b2
    coords[0] = a
    coords[2 * n - 1] = b
    d = HomologyClass(x, tuple(coords))
    assert d.virtual_dim() == r
    return d


def profile_pair_sample(rng):
    """One random vanishing-regime profile together with its virtual dim.

    The regime matching the duality statement: h1 = 0 and chi_h >= r + 2,
    so that both the profile and its dual make sense as linear systems cut
    down by r point conditions.
    """
    r = rng.choice((0, 1, 2))
    n = rng.randint(r + 2, 12)
    x = elliptic(n)
    d = class_of_virtual_dim(x, n, r)
    chi = n + r
    h0 = rng.randint(0, chi)
    return CohomologyProfile(h0, 0, chi - h0, d), r


def spin_half_canonical_profile(n: int) -> CohomologyProfile:
    """The self-dual (n, 0, n) profile of K/2 on the spin model."""
    x = spin(n)
    half_k = tuple(c // 2 for c in x.canonical)
    return CohomologyProfile(n, 0, n, HomologyClass(x, half_k))
