"""Batch command line: JSON job documents in, exact results out.

A job is a single JSON object (stdin or ``--file``), optionally overridden
by flat flags for scripting.  Results are deterministic JSON documents with
rationals rendered as ``num/den`` strings; ``--format plain`` and
``--format latex`` provide human- and TeX-readable polynomial renderings.
Timing goes to stderr so stdout stays byte-identical across runs.

Exit codes: 0 success, 2 input error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .abelian import (
    AcyclicData,
    CurveQuotProblem,
    acyclic_volume,
    symmetric_power_volume,
)
from .exterior import AltForm
from .grothendieck import grothendieck_degree
from .localization import (
    QuotProblem,
    WeightVector,
    default_weights,
    quot_volume,
    verify_weight_independence,
)
from .scalars import TPoly

__all__ = ["JobSpec", "InputError", "parse_jobspec", "run_job", "sweep", "main"]

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COMPUTE = 3

COMMANDS = (
    "abelian-volume",
    "acyclic-volume",
    "quot-volume",
    "grothendieck-degree",
    "verify",
    "sweep",
)

TTILDE_CHAR = "\U0001d531"  # fraktur t, used only in plain rendering


class InputError(Exception):
    """Schema violation; carries a pointer to the offending field."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"at {field_name!r}: {message}")
        self.field_name = field_name


# ---------------------------------------------------------------------------
# exact-rational (de)serialization

def parse_fraction(value, field_name: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(field_name, "expected a rational 'num/den' string or integer")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(field_name, f"bad rational literal {value!r}: {exc}") from None
    raise InputError(field_name, "expected a rational 'num/den' string or integer")


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _require_int(value, field_name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(field_name, "expected an integer")
    return value


def _require_int_list(value, field_name: str) -> tuple[int, ...]:
    if not isinstance(value, (list, tuple)):
        raise InputError(field_name, "expected a list of integers")
    return tuple(_require_int(x, f"{field_name}[{i}]") for i, x in enumerate(value))


# ---------------------------------------------------------------------------
# polynomial rendering

def poly_coefficients(p: TPoly) -> list[str]:
    """Ascending coefficient list; index k is the degree-k coefficient."""
    return [format_fraction(c) for c in p.coeffs] or [format_fraction(Fraction(0))]


def render_plain(p: TPoly) -> str:
    return p._plain(var=TTILDE_CHAR)


def _latex_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(abs(c.numerator))
    return rf"\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def render_latex(p: TPoly) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coefficient(k)
        if c == 0:
            continue
        if k == 0:
            body = _latex_coeff(c)
        else:
            tpow = r"\mathfrak{t}" if k == 1 else rf"\mathfrak{{t}}^{{{k}}}"
            mag = _latex_coeff(c)
            body = tpow if abs(c) == 1 else mag + tpow
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def volume_document(p: TPoly) -> dict:
    return {"variable": "ttilde", "coefficients": poly_coefficients(p)}


# ---------------------------------------------------------------------------
# job specification

@dataclass
class JobSpec:
    command: str
    out_format: str = "json"
    g: int | None = None
    r: int | None = None
    l: tuple[int, ...] | None = None
    d: int | None = None
    n: int | None = None
    t_mode: str = "ttilde-symbolic"
    t_value: Fraction | None = None
    vol_X: Fraction | None = None
    pi_probe: Fraction | None = None
    weights: tuple[WeightVector, ...] | None = None
    suite: str | None = None
    # acyclic payload
    n_dim: int | None = None
    q: int | None = None
    deg_E: Fraction | None = None
    pairings: tuple[Fraction, ...] | None = None
    h: tuple[tuple[Fraction, ...], ...] | None = None
    kappa: dict[tuple[int, int], AltForm] | None = None
    # sweep ranges
    g_values: tuple[int, ...] | None = None
    d_values: tuple[int, ...] | None = None
    l_partitions: tuple[tuple[int, ...], ...] | None = None
    echo: dict = field(default_factory=dict)


def _parse_t_section(doc: dict, spec: JobSpec):
    t = doc.get("t")
    if t is None:
        return
    if not isinstance(t, dict):
        raise InputError("t", "expected an object")
    mode = t.get("mode", "ttilde-symbolic")
    if mode not in ("ttilde-symbolic", "ttilde-value", "physical-t"):
        raise InputError("t.mode", f"unknown mode {mode!r}")
    spec.t_mode = mode
    if "value" in t:
        spec.t_value = parse_fraction(t["value"], "t.value")
    if "vol_X" in t:
        spec.vol_X = parse_fraction(t["vol_X"], "t.vol_X")
    if "pi_probe" in t:
        spec.pi_probe = parse_fraction(t["pi_probe"], "t.pi_probe")
        if spec.pi_probe == 0:
            raise InputError("t.pi_probe", "pi probe must be nonzero")
    if mode == "ttilde-value" and spec.t_value is None:
        raise InputError("t.value", "required for mode 'ttilde-value'")
    if mode == "physical-t":
        if spec.t_value is None:
            raise InputError("t.value", "required for mode 'physical-t'")
        if spec.vol_X is None:
            raise InputError("t.vol_X", "required for mode 'physical-t'")


def _parse_weights(doc: dict, spec: JobSpec):
    ws = doc.get("weights")
    if ws is None:
        return
    if not isinstance(ws, list) or not all(isinstance(v, list) for v in ws):
        raise InputError("weights", "expected a list of weight vectors")
    parsed = []
    for vi, vec in enumerate(ws):
        entries = tuple(parse_fraction(x, f"weights[{vi}][{k}]") for k, x in enumerate(vec))
        try:
            parsed.append(WeightVector(entries))
        except ValueError as exc:
            raise InputError(f"weights[{vi}]", str(exc)) from None
    spec.weights = tuple(parsed)


def _parse_kappa(value, q: int) -> dict[tuple[int, int], AltForm]:
    if not isinstance(value, list):
        raise InputError("kappa", "expected a list of {i, s, terms} objects")
    out: dict[tuple[int, int], AltForm] = {}
    for idx, entry in enumerate(value):
        if not isinstance(entry, dict):
            raise InputError(f"kappa[{idx}]", "expected an object")
        i = _require_int(entry.get("i"), f"kappa[{idx}].i")
        s = _require_int(entry.get("s"), f"kappa[{idx}].s")
        terms = entry.get("terms")
        if not isinstance(terms, list):
            raise InputError(f"kappa[{idx}].terms", "expected a list")
        form_terms = {}
        for ti, term in enumerate(terms):
            if not isinstance(term, dict):
                raise InputError(f"kappa[{idx}].terms[{ti}]", "expected an object")
            indices = _require_int_list(term.get("indices"), f"kappa[{idx}].terms[{ti}].indices")
            coeff = parse_fraction(term.get("coeff"), f"kappa[{idx}].terms[{ti}].coeff")
            form_terms[indices] = coeff
        try:
            out[(i, s)] = AltForm(q, form_terms)
        except ValueError as exc:
            raise InputError(f"kappa[{idx}]", str(exc)) from None
    return out


def parse_jobspec(doc: dict) -> JobSpec:
    """Validate a job document and normalize it into a JobSpec."""
    if not isinstance(doc, dict):
        raise InputError("$", "input document must be a JSON object")
    if doc.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise InputError("schema", f"unsupported schema version {doc.get('schema')!r}")
    command = doc.get("command")
    if command not in COMMANDS:
        raise InputError("command", f"expected one of {', '.join(COMMANDS)}")
    out_format = doc.get("format", "json")
    if out_format not in ("json", "latex", "plain"):
        raise InputError("format", "expected one of json, latex, plain")
    spec = JobSpec(command=command, out_format=out_format, echo=doc)

    for name in ("g", "r", "d", "n", "n_dim", "q"):
        if doc.get(name) is not None:
            setattr(spec, name, _require_int(doc[name], name))
    if doc.get("l") is not None:
        spec.l = _require_int_list(doc["l"], "l")
    _parse_t_section(doc, spec)
    _parse_weights(doc, spec)

    if command == "verify":
        spec.suite = doc.get("suite", "weight-independence")
        if spec.suite != "weight-independence":
            raise InputError("suite", f"unknown suite {spec.suite!r}")

    if command == "acyclic-volume":
        for name in ("n_dim", "q"):
            if getattr(spec, name) is None:
                raise InputError(name, "required for acyclic-volume")
        if doc.get("deg_E") is None:
            raise InputError("deg_E", "required for acyclic-volume")
        spec.deg_E = parse_fraction(doc["deg_E"], "deg_E")
        pairings = doc.get("pairings")
        if not isinstance(pairings, list):
            raise InputError("pairings", "expected a list of rationals (s = 0..n_dim)")
        spec.pairings = tuple(
            parse_fraction(x, f"pairings[{i}]") for i, x in enumerate(pairings)
        )
        h = doc.get("h")
        if not isinstance(h, list) or not all(isinstance(row, list) for row in h):
            raise InputError("h", "expected a 2q x 2q matrix")
        spec.h = tuple(
            tuple(parse_fraction(x, f"h[{i}][{j}]") for j, x in enumerate(row))
            for i, row in enumerate(h)
        )
        spec.kappa = _parse_kappa(doc.get("kappa", []), spec.q)
    elif command == "sweep":
        if doc.get("g_values") is not None:
            spec.g_values = _require_int_list(doc["g_values"], "g_values")
        if doc.get("d_values") is not None:
            spec.d_values = _require_int_list(doc["d_values"], "d_values")
        if doc.get("l_partitions") is not None:
            lp = doc["l_partitions"]
            if not isinstance(lp, list):
                raise InputError("l_partitions", "expected a list of integer lists")
            spec.l_partitions = tuple(
                _require_int_list(part, f"l_partitions[{i}]") for i, part in enumerate(lp)
            )

    _check_required(spec)
    return spec


def _check_required(spec: JobSpec):
    needed: dict[str, tuple[str, ...]] = {
        "abelian-volume": ("g", "l", "d"),
        "acyclic-volume": (),
        "quot-volume": ("g", "r", "l", "d"),
        "grothendieck-degree": ("g", "r", "l", "d", "n"),
        "verify": ("g", "r", "l", "d"),
        "sweep": ("r",),
    }
    for name in needed[spec.command]:
        if getattr(spec, name) is None:
            raise InputError(name, f"required for {spec.command}")
    if spec.command == "abelian-volume" and len(spec.l) != 1:
        raise InputError("l", "abelian-volume takes a single degree [deg_E0]")
    if spec.command in ("quot-volume", "grothendieck-degree", "verify"):
        if len(spec.l) != spec.r:
            raise InputError("l", f"expected {spec.r} entries, got {len(spec.l)}")
    if spec.command == "sweep":
        if spec.g is None and spec.g_values is None:
            raise InputError("g", "sweep needs g or g_values")
        if spec.d is None and spec.d_values is None:
            raise InputError("d", "sweep needs d or d_values")
        if spec.l is None and spec.l_partitions is None:
            raise InputError("l", "sweep needs l or l_partitions")
        for i, part in enumerate(spec.l_partitions or ()):
            if len(part) != spec.r:
                raise InputError(f"l_partitions[{i}]", f"expected {spec.r} entries")
        if spec.l is not None and len(spec.l) != spec.r:
            raise InputError("l", f"expected {spec.r} entries, got {len(spec.l)}")


# ---------------------------------------------------------------------------
# t-mode reporting

def _t_report(spec: JobSpec, volume: TPoly, dim: int, base_dim: int = 1) -> dict | None:
    if spec.t_mode == "ttilde-symbolic":
        return None
    if spec.t_mode == "ttilde-value":
        return {
            "mode": "ttilde-value",
            "ttilde": format_fraction(spec.t_value),
            "value": format_fraction(volume(spec.t_value)),
        }
    # physical-t: ttilde = (n-1)! t vol_X / (2 pi), n the base dimension
    # (the factorial is 1 on a curve); pi stays symbolic unless a rational
    # probe is supplied, and probe results are not exact.
    fact = math.factorial(base_dim - 1)
    report = {
        "mode": "physical-t",
        "t": format_fraction(spec.t_value),
        "vol_X": format_fraction(spec.vol_X),
        "substitution": f"ttilde = {fact}*t*vol_X/(2*pi)",
        "unnormalized_factor": f"(4*pi^2)^{dim}",
        "exact": False,
    }
    if spec.pi_probe is not None:
        ttilde = fact * spec.t_value * spec.vol_X / (2 * spec.pi_probe)
        report["pi_probe"] = format_fraction(spec.pi_probe)
        report["ttilde_at_probe"] = format_fraction(ttilde)
        report["value_at_probe"] = format_fraction(volume(ttilde))
        report["unnormalized_at_probe"] = format_fraction(
            (4 * spec.pi_probe ** 2) ** dim * volume(ttilde)
        )
    else:
        report["note"] = "supply t.pi_probe for a numeric evaluation"
    return report


# ---------------------------------------------------------------------------
# command handlers

def _default_verify_weights(r: int) -> tuple[WeightVector, ...]:
    """Three deterministic candidates: 1..r, the first r primes, and a seeded
    pseudo-random distinct rational vector."""
    primes = []
    k = 2
    while len(primes) < r:
        if all(k % p for p in primes):
            primes.append(k)
        k += 1
    rng = random.Random(20201)
    rand: list[Fraction] = []
    while len(rand) < r:
        cand = Fraction(rng.randint(-60, 60), rng.randint(1, 12))
        if cand not in rand:
            rand.append(cand)
    return (
        default_weights(r),
        WeightVector(tuple(Fraction(p) for p in primes)),
        WeightVector(tuple(rand)),
    )


def _result_skeleton(spec: JobSpec) -> dict:
    return {"schema": SCHEMA_VERSION, "input": spec.echo}


def _attach_volume(result: dict, spec: JobSpec, volume: TPoly, dim: int, base_dim: int = 1):
    result["volume"] = volume_document(volume)
    t_report = _t_report(spec, volume, dim, base_dim)
    if t_report is not None:
        result["t"] = t_report
    if spec.out_format == "latex":
        result["latex"] = render_latex(volume)


def _quot_problem(spec: JobSpec) -> QuotProblem:
    return QuotProblem(g=spec.g, r=spec.r, l=spec.l, d=spec.d)


def run_job(spec: JobSpec) -> dict:
    """Execute one job and return the result document."""
    result = _result_skeleton(spec)
    command = spec.command

    if command == "abelian-volume":
        problem = CurveQuotProblem(g=spec.g, deg_E=spec.l[0] - spec.d, d=spec.d)
        volume = symmetric_power_volume(problem)
        _attach_volume(result, spec, volume, dim=spec.d)
        result["unnormalized"] = {"expression": f"(4*pi^2)^{spec.d} * volume"}
        if spec.pi_probe is not None:
            result["unnormalized"]["factor_at_pi_probe"] = format_fraction(
                (4 * spec.pi_probe ** 2) ** spec.d
            )
        return result

    if command == "acyclic-volume":
        data = AcyclicData(
            n=spec.n_dim,
            q=spec.q,
            deg_E=spec.deg_E,
            pairings=spec.pairings,
            h=spec.h,
            kappa_forms=spec.kappa or {},
        )
        volume = acyclic_volume(data)
        _attach_volume(result, spec, volume, dim=data.dimension, base_dim=data.n)
        return result

    if command == "quot-volume":
        problem = _quot_problem(spec)
        if spec.weights is not None and len(spec.weights) != 1:
            raise InputError("weights", "quot-volume takes a single weight vector")
        w = spec.weights[0] if spec.weights else None
        if w is not None and len(w.w) != spec.r:
            raise InputError("weights[0]", f"expected {spec.r} weights")
        volume = quot_volume(problem, w)
        _attach_volume(result, spec, volume, dim=spec.r * spec.d)
        return result

    if command == "grothendieck-degree":
        problem = _quot_problem(spec)
        volume = quot_volume(problem)
        result["volume"] = volume_document(volume)
        result["degree"] = grothendieck_degree(problem, spec.n)
        if spec.out_format == "latex":
            result["latex"] = render_latex(volume)
        return result

    if command == "verify":
        problem = _quot_problem(spec)
        candidates = spec.weights if spec.weights else _default_verify_weights(spec.r)
        if len(candidates) < 2:
            raise InputError("weights", "verify needs at least two weight vectors")
        for vi, w in enumerate(candidates):
            if len(w.w) != spec.r:
                raise InputError(f"weights[{vi}]", f"expected {spec.r} weights")
        report = verify_weight_independence(problem, candidates)
        result["verify"] = {
            "suite": "weight-independence",
            "pass": report.passed,
            "candidates": len(candidates),
            "volumes": [
                {
                    "weights": [format_fraction(x) for x in w.w],
                    "coefficients": poly_coefficients(v),
                }
                for w, v in report.volumes
            ],
        }
        return result

    if command == "sweep":
        return sweep(spec)

    raise InputError("command", f"unhandled command {command!r}")  # pragma: no cover


def sweep(spec: JobSpec) -> dict:
    """One volume row per (g, d, l-partition), in deterministic range order."""
    result = _result_skeleton(spec)
    gs = spec.g_values if spec.g_values is not None else (spec.g,)
    ds = spec.d_values if spec.d_values is not None else (spec.d,)
    partitions = spec.l_partitions if spec.l_partitions is not None else (spec.l,)
    rows = []
    for g in gs:
        for d in ds:
            for part in partitions:
                problem = QuotProblem(g=g, r=spec.r, l=part, d=d)
                volume = quot_volume(problem)
                row = {
                    "g": g,
                    "r": spec.r,
                    "d": d,
                    "l": list(part),
                    "volume": volume_document(volume),
                }
                if spec.out_format == "latex":
                    row["latex"] = render_latex(volume)
                rows.append(row)
    result["rows"] = rows
    return result


# ---------------------------------------------------------------------------
# plain-text rendering of result documents

def _poly_from_document(doc: dict) -> TPoly:
    return TPoly([Fraction(c) for c in doc["coefficients"]])


def render_result_plain(result: dict) -> str:
    lines = []
    if "volume" in result:
        lines.append(f"volume = {render_plain(_poly_from_document(result['volume']))}")
    if "t" in result:
        t = result["t"]
        if t["mode"] == "ttilde-value":
            lines.append(f"value at {TTILDE_CHAR} = {t['ttilde']}: {t['value']}")
        else:
            lines.append(f"substitution: {t['substitution']} (not exact in pi)")
            if "value_at_probe" in t:
                lines.append(
                    f"value at pi = {t['pi_probe']}, t = {t['t']}, vol_X = {t['vol_X']}: "
                    f"{t['value_at_probe']}"
                )
    if "degree" in result:
        lines.append(f"degree = {result['degree']}")
    if "verify" in result:
        v = result["verify"]
        lines.append(
            f"{v['suite']}: {'pass' if v['pass'] else 'FAIL'} ({v['candidates']} candidates)"
        )
    for row in result.get("rows", ()):
        poly = render_plain(_poly_from_document(row["volume"]))
        lines.append(
            f"g={row['g']} r={row['r']} d={row['d']} l={tuple(row['l'])}: {poly}"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing and entry point

def _build_argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quotvol",
        description="Exact Quot-space volumes and Grothendieck degrees.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--file", help="read the JSON job document from this path")
    parser.add_argument("--g", type=int)
    parser.add_argument("--r", type=int)
    parser.add_argument("--l", help="comma-separated degrees, e.g. 1,1")
    parser.add_argument("--d", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--ttilde", help="evaluate the volume at this rational point")
    parser.add_argument("--format", choices=("json", "latex", "plain"))
    return parser


def _load_document(args) -> dict:
    doc: dict = {}
    if args.file:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError("file", str(exc)) from None
    elif not sys.stdin.isatty():
        text = sys.stdin.read()
    else:
        text = ""
    text = text.strip()
    if text:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError("$", f"invalid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise InputError("$", "input document must be a JSON object")
    doc["command"] = args.command
    if args.g is not None:
        doc["g"] = args.g
    if args.r is not None:
        doc["r"] = args.r
    if args.l is not None:
        try:
            doc["l"] = [int(x) for x in args.l.split(",")]
        except ValueError:
            raise InputError("l", f"bad degree list {args.l!r}") from None
    if args.d is not None:
        doc["d"] = args.d
    if args.n is not None:
        doc["n"] = args.n
    if args.ttilde is not None:
        t = dict(doc.get("t") or {})
        t["mode"] = "ttilde-value"
        t["value"] = args.ttilde
        doc["t"] = t
    if args.format is not None:
        doc["format"] = args.format
    return doc


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_argparser().parse_args(argv)
    started = time.perf_counter()
    try:
        doc = _load_document(args)
        spec = parse_jobspec(doc)
    except InputError as exc:
        print(f"input error {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        result = run_job(spec)
    except InputError as exc:
        print(f"input error {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ArithmeticError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE

    if spec.out_format == "plain":
        print(render_result_plain(result))
    else:
        print(json.dumps(result, indent=2))
    print(f"wall_time_s={time.perf_counter() - started:.6f}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
