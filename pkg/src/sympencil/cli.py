"""Command-line front end: every operation behind one executable.

All commands emit JSON by default (canonical form: sorted keys, compact
separators, one trailing newline), so identical invocations are
byte-identical; ``--format text`` renders the same structure as key:
value lines.  Exit codes: 0 success, 1 a computed check failed, 2 input
or usage error.  Seeded commands default to seed 1729.  The ``hilb``
command reads the worker count from the SYMPENCIL_WORKERS environment
variable; its output does not depend on it.
"""

from __future__ import annotations

import json
import os
import warnings
from fractions import Fraction
from typing import Optional

import click

from . import brill_noether, hilb
from .applications import run_all
from .catalog import format_rational, lattice_from_dict, manifold_fields
from .gromov import duality_check, gromov_invariant, serre_dual, vanishing_profile
from .lattice import FourManifoldLattice, is_even_form
from .pencil import (
    build_pencil,
    count_decision,
    fibre_degree,
    residual_fibre_degree,
    virtual_dim,
)

DEFAULT_SEED = 1729
WORKERS_ENV = "SYMPENCIL_WORKERS"


def _num(value):
    return format_rational(Fraction(value))


def _emit(payload, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, sort_keys=True, separators=(",", ":")))
        return
    for line in _text_lines(payload):
        click.echo(line)


def _text_lines(payload, prefix: str = ""):
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            name = f"{prefix}{key}"
            if isinstance(value, (dict, list)):
                yield from _text_lines(value, prefix=f"{name}.")
            else:
                yield f"{name}: {value}"
    elif isinstance(payload, list):
        if all(not isinstance(v, (dict, list)) for v in payload):
            yield f"{prefix.rstrip('.')}: {', '.join(str(v) for v in payload)}"
        else:
            for i, value in enumerate(payload):
                yield from _text_lines(value, prefix=f"{prefix}{i}.")
    else:
        yield f"{prefix.rstrip('.')}: {payload}"


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"{path} is not valid JSON: {exc}")


def _load_lattice(path: str) -> FourManifoldLattice:
    data = _load_json(path)
    try:
        return lattice_from_dict(data)
    except ValueError as exc:
        raise click.UsageError(f"{path}: {exc}")


def _parse_class(text: str, width: Optional[int] = None) -> tuple[int, ...]:
    try:
        coords = tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise click.UsageError(f"class {text!r} is not a comma-separated integer list")
    if width is not None and len(coords) != width:
        raise click.UsageError(
            f"class has {len(coords)} coordinates, lattice rank is {width}"
        )
    return coords


_format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="json",
    show_default=True, help="Report rendering.",
)


@click.group()
@click.version_option(package_name="sympencil")
def main():
    """Exact invariants of symplectic surface counting: lattices, section
    profiles, pencils, linear systems, and matrix-model certification."""


@main.command("manifold-check")
@click.argument("manifold", type=click.Path(exists=True, dir_okay=False))
@_format_option
@click.pass_context
def manifold_check(ctx, manifold, fmt):
    """Validate a manifold file and report its characteristic numbers."""
    data = _load_json(manifold)
    try:
        fields = manifold_fields(data)
    except ValueError as exc:
        raise click.UsageError(f"{manifold}: {exc}")
    try:
        x = FourManifoldLattice(**fields)
    except ValueError as exc:
        _emit({
            "command": "manifold-check",
            "label": fields["label"],
            "valid": False,
            "error": str(exc),
        }, fmt)
        ctx.exit(1)
    _emit({
        "command": "manifold-check",
        "label": x.label,
        "valid": True,
        "b1": x.b1,
        "b2": x.b2,
        "b_plus": x.b_plus,
        "b_minus": x.b_minus,
        "euler": x.euler,
        "signature": x.signature,
        "two_e_plus_3sigma": x.two_e_plus_3sigma,
        "k_squared": x.k_squared,
        "chi_h": _num(x.chi_h),
        "even_form": is_even_form(x),
        "minimal": x.minimal,
        "citations": [
            "K.K = 2e + 3sigma",
            "K = diag(Q) mod 2 (characteristic vector)",
            "chi_h = (e + sigma)/4",
        ],
    }, fmt)


def _profile_from_flags(x, coords, h0, h2):
    try:
        return vanishing_profile(x, coords, h0, h2)
    except ValueError as exc:
        raise click.UsageError(str(exc))


@main.command("gromov")
@click.argument("manifold", type=click.Path(exists=True, dir_okay=False))
@click.option("--class", "class_", required=True,
              help="Divisor class, comma-separated integers.")
@click.option("--h0", required=True, type=int,
              help="Sections of the class.")
@click.option("--h2", required=True, type=int,
              help="Sections of the residual class K - D.")
@_format_option
def gromov_cmd(manifold, class_, h0, h2, fmt):
    """Surface count of a class from its two section dimensions."""
    x = _load_lattice(manifold)
    coords = _parse_class(class_, x.b2)
    profile = _profile_from_flags(x, coords, h0, h2)
    r = virtual_dim(x, coords)
    value = gromov_invariant(profile, r) if r >= 0 else 0
    _emit({
        "command": "gromov",
        "label": x.label,
        "class": list(coords),
        "h0": profile.h0,
        "h1": profile.h1,
        "h2": profile.h2,
        "chi": profile.chi,
        "virtual_dim": r,
        "invariant": value,
        "citations": [
            "chi = chi_h + (a.a - K.a)/2",
            "invariant = binom(r - h2, h0 - 1 - r); 0 when r < 0 or h0 = 0",
        ],
    }, fmt)


@main.command("duality")
@click.argument("manifold", type=click.Path(exists=True, dir_okay=False))
@click.option("--class", "class_", required=True,
              help="Divisor class, comma-separated integers.")
@click.option("--h0", required=True, type=int,
              help="Sections of the class.")
@click.option("--h2", required=True, type=int,
              help="Sections of the residual class K - D.")
@_format_option
@click.pass_context
def duality_cmd(ctx, manifold, class_, h0, h2, fmt):
    """Check |count(D)| = |count(K - D)| for a section profile."""
    x = _load_lattice(manifold)
    coords = _parse_class(class_, x.b2)
    profile = _profile_from_flags(x, coords, h0, h2)
    r = virtual_dim(x, coords)
    if r < 0:
        raise click.UsageError(
            f"virtual dimension {r} is negative; the duality check needs r >= 0"
        )
    dual = serre_dual(profile)
    value = gromov_invariant(profile, r)
    dual_value = gromov_invariant(dual, r)
    ok = duality_check(profile, r)
    _emit({
        "command": "duality",
        "label": x.label,
        "class": list(coords),
        "profile": {"h0": profile.h0, "h1": profile.h1, "h2": profile.h2},
        "dual_profile": {"h0": dual.h0, "h1": dual.h1, "h2": dual.h2},
        "virtual_dim": r,
        "invariant": value,
        "dual_invariant": dual_value,
        "magnitudes_equal": ok,
        "citations": [
            "dual section dims (h2, h1, h0) live on K - a",
            "|count(a)| = |count(K - a)| at equal virtual dimension",
        ],
    }, fmt)
    if not ok:
        ctx.exit(1)


@main.command("pencil")
@click.argument("manifold", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", required=True, type=int,
              help="Multiple of the primitive symplectic class to use as fibre.")
@click.option("--class", "class_", default=None,
              help="Optional class whose fibre degrees to report.")
@_format_option
def pencil_cmd(manifold, k, class_, fmt):
    """Pencil numerology: fibre genus, base points, critical fibres."""
    x = _load_lattice(manifold)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            pencil = build_pencil(x, k)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    payload = {
        "command": "pencil",
        "label": x.label,
        "k": k,
        "fibre_class": [int(c) for c in pencil.fibre_class.coords],
        "genus": pencil.genus,
        "base_points": pencil.base_points,
        "critical_fibres": pencil.critical_fibres,
        "citations": [
            "2g - 2 = K.W + W.W",
            "delta = e + W.W + 4g - 4",
        ],
    }
    if class_ is not None:
        coords = _parse_class(class_, x.b2)
        r = fibre_degree(pencil, coords)
        resid = residual_fibre_degree(pencil, coords)
        payload["class"] = list(coords)
        payload["fibre_degree"] = r
        payload["residual_degree"] = resid
        payload["degree_sum"] = r + resid
        payload["citations"].append("degree(a) + degree(K - a) = 2g - 2")
    _emit(payload, fmt)


@main.command("count")
@click.argument("manifold", type=click.Path(exists=True, dir_okay=False))
@click.option("--class", "class_", required=True,
              help="Class to decide, comma-separated integers.")
@_format_option
def count_cmd(manifold, class_, fmt):
    """Decide a standard surface count from quoted hypotheses."""
    x = _load_lattice(manifold)
    coords = _parse_class(class_, x.b2)
    verdict = count_decision(x, coords)
    _emit({
        "command": "count",
        "label": x.label,
        "class": list(coords),
        "kind": verdict.kind,
        "reason": verdict.reason,
        "value": verdict.value,
        "context": verdict.context,
        "citations": [verdict.reason],
    }, fmt)


@main.command("bn")
@click.option("--g", "g", required=True, type=int, help="Curve genus.")
@click.option("--r", "r", required=True, type=int, help="System degree.")
@click.option("--s", "s", required=True, type=int, help="System dimension.")
@_format_option
def bn_cmd(g, r, s, fmt):
    """Virtual dimension of degree-r, dimension-s systems on genus g."""
    try:
        query = brill_noether.BNQuery(g, r, s)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    rho = brill_noether.rho(query)
    _emit({
        "command": "bn",
        "g": g,
        "r": r,
        "s": s,
        "rho": rho,
        "excess_codimension": brill_noether.eh_predicate(query),
        "citations": [
            "rho = g - (s+1)(g - r + s)",
            "excess codimension in moduli iff rho < -1",
        ],
    }, fmt)


@main.command("aj-fibres")
@click.option("--g", "g", required=True, type=int, help="Curve genus.")
@click.option("--r", "r", required=True, type=int, help="Divisor degree.")
@_format_option
def aj_fibres_cmd(g, r, fmt):
    """Fibre dimensions of the degree-r divisor-to-line-bundle map."""
    try:
        prof = brill_noether.abel_jacobi_fibre_dims(g, r)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit({
        "command": "aj-fibres",
        "g": g,
        "r": r,
        "generic_dim": prof.generic_dim,
        "jump_dim": prof.jump_dim,
        "jump_locus_degree": prof.jump_locus_degree,
        "descriptor": prof.descriptor,
        "citations": [
            "generic fibre dimension r - g",
            "jump by one over the degree 2g - 2 - r symmetric product",
        ],
    }, fmt)


@main.command("hilb")
@click.option("--r", "r", required=True, type=int, help="Matrix size.")
@click.option("--samples", required=True, type=int, help="Samples to certify.")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True,
              help="Base seed; sample i uses seed + i.")
@click.option("--stratum", type=click.Choice(hilb.STRATA), default="smooth",
              show_default=True, help="Stratum to sample.")
@_format_option
@click.pass_context
def hilb_cmd(ctx, r, samples, seed, stratum, fmt):
    """Certify the kernel dimension r^2 + 1 on sampled matrix models."""
    workers_text = os.environ.get(WORKERS_ENV, "1")
    try:
        workers = int(workers_text)
        if workers < 1:
            raise ValueError
    except ValueError:
        raise click.UsageError(
            f"{WORKERS_ENV}={workers_text!r} is not a positive integer"
        )
    try:
        report = hilb.certify_stratum(stratum, r, samples, seed=seed,
                                      workers=workers)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit({
        "command": "hilb",
        "stratum": report.stratum,
        "r": report.r,
        "samples": report.samples,
        "seed": seed,
        "failures": report.failures,
        "kernel_dims_observed": list(report.kernel_dims_observed),
        "expected_kernel_dim": report.expected_kernel_dim,
        "passed": report.passed,
        "citations": [
            "kernel of (C1, C2, mu) -> (C1 B2 + B1 C2 - mu I, B2 C1 + C2 B1 - mu I) "
            "has dimension r^2 + 1 at every point",
        ],
    }, fmt)
    if not report.passed:
        ctx.exit(1)


@main.command("classify")
@click.argument("manifold", type=click.Path(exists=True, dir_okay=False))
@click.option("--classes", "classes_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON file with an array of class vectors to decide.")
@_format_option
@click.pass_context
def classify_cmd(ctx, manifold, classes_path, fmt):
    """Run every applicable named check; exit 1 if any check fails."""
    x = _load_lattice(manifold)
    classes = []
    if classes_path is not None:
        data = _load_json(classes_path)
        if not isinstance(data, list) or any(
            not isinstance(row, list)
            or any(not isinstance(v, int) or isinstance(v, bool) for v in row)
            for row in data
        ):
            raise click.UsageError(
                f"{classes_path} must hold a JSON array of integer arrays"
            )
        for row in data:
            if len(row) != x.b2:
                raise click.UsageError(
                    f"class {row} has {len(row)} coordinates, lattice rank is {x.b2}"
                )
        classes = [tuple(row) for row in data]
    try:
        reports = run_all(x, classes)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    payload = [
        {
            "check_name": rep.check_name,
            "verdict": rep.verdict,
            "cited_hypotheses": list(rep.cited_hypotheses),
            "numbers": rep.numbers,
        }
        for rep in reports
    ]
    _emit(payload, fmt)
    if any(rep.verdict == "fail" for rep in reports):
        ctx.exit(1)


if __name__ == "__main__":
    main()
