"""Named consequence checks over a single lattice.

Bundles the minimality bound, the b+ = 1 homeomorphism classification,
the hypothesis gate for deforming symplectic forms into the canonical
class, per-class surface-count decisions, and the spin parity signature
into uniform self-certifying reports: every verdict can be re-derived
from the numbers the report carries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .gromov import gr_parity
from .lattice import (
    FourManifoldLattice,
    classify_b_plus_one,
    is_even_form,
    minimality_inequality,
)
from .pencil import count_decision

Number = Union[int, str, bool]


def _num(value) -> Number:
    f = Fraction(value)
    return int(f) if f.denominator == 1 else str(f)


@dataclass(frozen=True)
class CheckReport:
    """One named check: verdict plus the hypotheses and numbers behind it."""

    check_name: str
    verdict: str  # "pass" | "fail" | "not-applicable"
    cited_hypotheses: tuple[str, ...]
    numbers: dict


def _minimality_report(x: FourManifoldLattice) -> CheckReport:
    name = "minimality_bound"
    cited = ("declared minimal", "b_plus > 1 + b1", "2e + 3sigma >= 0")
    if not (x.minimal and x.b_plus > 1 + x.b1):
        return CheckReport(name, "not-applicable", cited, {
            "minimal": x.minimal,
            "b_plus": x.b_plus,
            "b1": x.b1,
        })
    holds = minimality_inequality(x)
    return CheckReport(name, "pass" if holds else "fail", cited, {
        "two_e_plus_3sigma": x.two_e_plus_3sigma,
        "b_plus": x.b_plus,
        "b1": x.b1,
    })


def _classification_report(x: FourManifoldLattice) -> CheckReport:
    name = "b_plus_one_classification"
    cited = ("b_plus = 1", "b1 = 0", "K.omega < 0", "b_minus <= 8")
    k_omega = x.omega_dot(x.canonical)
    if not (x.b_plus == 1 and x.b1 == 0 and k_omega < 0):
        return CheckReport(name, "not-applicable", cited, {
            "b_plus": x.b_plus,
            "b1": x.b1,
            "k_omega": _num(k_omega),
        })
    outcome = classify_b_plus_one(x)
    numbers = {
        "b_minus": outcome.b_minus,
        "two_e_plus_3sigma": outcome.two_e_plus_3sigma,
        "even": outcome.even,
        "k_omega": _num(k_omega),
    }
    if outcome.verdict == "rejected":
        return CheckReport(name, "fail", cited, numbers)
    numbers["homeo_type"] = outcome.homeo_type
    return CheckReport(name, "pass", cited, numbers)


def _inflation_report(x: FourManifoldLattice) -> CheckReport:
    name = "inflation_hypotheses"
    cited = ("declared minimal", "b_plus = 1", "K.K > 0", "K.omega > 0")
    k_omega = x.omega_dot(x.canonical)
    numbers = {
        "k_squared": x.k_squared,
        "k_omega": _num(k_omega),
        "b_plus": x.b_plus,
    }
    if not (x.minimal and x.b_plus == 1):
        return CheckReport(name, "not-applicable", cited, numbers)
    ok = x.k_squared > 0 and k_omega > 0
    return CheckReport(name, "pass" if ok else "fail", cited, numbers)


def _spin_parity_report(x: FourManifoldLattice) -> CheckReport:
    name = "spin_parity"
    cited = ("even intersection form", "K.K = 0", "b1 = 0",
             "b_plus = 3 mod 4")
    even = is_even_form(x)
    numbers = {
        "even": even,
        "k_squared": x.k_squared,
        "b_plus": x.b_plus,
        "b1": x.b1,
    }
    if not (even and x.k_squared == 0 and x.b1 == 0 and x.b_plus % 4 == 3):
        return CheckReport(name, "not-applicable", cited, numbers)
    n = (x.b_plus + 1) // 4
    numbers["n"] = n
    numbers["parity"] = "odd" if gr_parity(n) else "even"
    numbers["homotopy_k3_range"] = x.b_plus == 3
    return CheckReport(name, "pass", cited, numbers)


def _count_report(x: FourManifoldLattice, coords: tuple[int, ...]) -> CheckReport:
    verdict = count_decision(x, coords)
    name = "surface_count[" + ",".join(str(c) for c in coords) + "]"
    numbers = dict(verdict.context)
    numbers["decision"] = verdict.kind
    if verdict.value is not None:
        numbers["value"] = verdict.value
    status = "not-applicable" if verdict.kind == "Unknown" else "pass"
    return CheckReport(name, status, (verdict.reason,), numbers)


def run_all(
    x: FourManifoldLattice,
    classes: Optional[Iterable[Sequence[int]]] = None,
) -> list[CheckReport]:
    """Run every applicable check on the lattice, plus a surface-count
    decision for each supplied class; reports come back sorted by name."""
    reports = [
        _minimality_report(x),
        _classification_report(x),
        _inflation_report(x),
        _spin_parity_report(x),
    ]
    for cand in classes or ():
        reports.append(_count_report(x, tuple(int(c) for c in cand)))
    reports.sort(key=lambda rep: rep.check_name)
    return reports


def general_type_classes(
    x: FourManifoldLattice,
    candidates: Iterable[Sequence[int]],
) -> list[tuple[int, ...]]:
    """Filter candidate classes by the numeric constraints a nonzero
    count imposes on a minimal general-type lattice.

    Keeps a class only if 0 <= a.omega <= K.omega, a.a = K.a, and the
    two-class restriction (a.a)(K.K) <= (K.a)^2 from the signature of
    the form on span(a, K) all hold.  These are necessary conditions:
    anything eliminated is certainly count-zero aside from 0 and K,
    while survivors are merely not excluded by arithmetic.
    """
    if not x.minimal:
        raise ValueError("filter needs a declared-minimal lattice")
    k_omega = x.omega_dot(x.canonical)
    if not (x.k_squared > 0 and k_omega > 0 and x.b_plus > 1 + x.b1):
        raise ValueError(
            "lattice does not satisfy the declared general-type flags "
            "(K.K > 0, K.omega > 0, b_plus > 1 + b1)"
        )
    survivors = []
    for cand in candidates:
        coords = tuple(int(v) for v in cand)
        a_omega = x.omega_dot(coords)
        if a_omega < 0 or a_omega > k_omega:
            continue
        a_sq = x.square(coords)
        ka = x.k_dot(coords)
        if a_sq != ka:
            continue
        if a_sq * x.k_squared > ka * ka:
            continue
        survivors.append(coords)
    return survivors
