"""Command-line interface.

Subcommands: expand, components, decompose, verify, ehrhart, mixed, compare.
Given the same flags (including --seed) the report is byte-identical run to
run. Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bodygroup as bg
from . import polytope as pk
from . import valuations as vv
from . import verify_suite as vs
from .errors import ConvexValError, ParseError
from .rationals import rat, rat_str


def parse_polytope(path: str) -> pk.Polytope:
    """Load a polytope file, pruning redundant vertices to the canonical hull."""
    P, _ = parse_polytope_with_notices(path)
    return P


def parse_polytope_with_notices(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    try:
        P = pk.polytope_from_obj(obj)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    notices = []
    if len(P.vertices) != len(obj["vertices"]):
        dropped = len(obj["vertices"]) - len(P.vertices)
        notices.append(f"pruned {dropped} redundant vertex(es) to the canonical hull")
    return P, notices


def parse_formal_sum(path: str) -> bg.FormalSum:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    try:
        return bg.sum_from_obj(obj)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _parse_rat(text: str) -> Fraction:
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from exc


def _parse_basis(text: str) -> pk.SimplexBasis:
    vectors = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        vectors.append(tuple(_parse_rat(c) for c in chunk.split(",")))
    if not vectors:
        raise ParseError("--basis needs at least one vector")
    try:
        return pk.simplex_basis(vectors)
    except ConvexValError as exc:
        raise ParseError(f"--basis: {exc}") from exc


_NAMED_PROBES = {
    "unit_cube": pk.unit_cube,
    "std_simplex": pk.standard_simplex,
    "asym_simplex": pk.asymmetric_simplex,
}


def _parse_valuation(token: str, ambient: int) -> vv.ValuationDescriptor:
    token = token.strip()
    if token == "volume":
        return vv.volume_valuation()
    if token == "euler":
        return vv.euler_valuation()
    if token == "lattice":
        return vv.lattice_valuation()
    if token.startswith("probe:"):
        name = token.split(":", 1)[1]
        maker = _NAMED_PROBES.get(name)
        if maker is None:
            raise ParseError(
                f"unknown probe {name!r}; choose from {sorted(_NAMED_PROBES)}"
            )
        return vv.probe_volume(maker(ambient), name)
    if token.startswith("support:"):
        coords = token.split(":", 1)[1]
        return vv.support_valuation(tuple(_parse_rat(c) for c in coords.split(",")))
    raise ParseError(f"unknown valuation {token!r}")


def _parse_panel(tokens: str | None, ambient: int):
    if tokens is None:
        return vv.default_panel(ambient)
    return tuple(_parse_valuation(tok, ambient) for tok in tokens.split(",") if tok.strip())


# ---------------------------------------------------------------------------
# report rendering: one ordered dict per command, mirrored in text and JSON


def _emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(value, list):
            if not value:
                return
            for item in value:
                lines.append(f"{prefix}: {item}")
        else:
            lines.append(f"{prefix} = {value}")

    for key, value in report.items():
        walk(str(key), value)
    return "\n".join(lines) + "\n"


def _fmt_sum(s: bg.FormalSum) -> str:
    return str(s)


def _signature_obj(sig: bg.PanelSignature):
    return {key: rat_str(value) for key, value in sig.entries}


# ---------------------------------------------------------------------------
# subcommands


def _one_input(args) -> str:
    if len(args.input) != 1:
        raise ParseError("this command takes exactly one --input PATH")
    return args.input[0]


def _cmd_expand(args) -> tuple[int, dict]:
    P, notices = parse_polytope_with_notices(_one_input(args))
    val = _parse_valuation(args.valuation, P.ambient_dim)
    probe = None
    if args.probe is not None:
        maker = _NAMED_PROBES.get(args.probe)
        if maker is None:
            raise ParseError(f"unknown probe {args.probe!r}")
        probe = maker(P.ambient_dim)
    expansion = vv.expansion_of_dilation(val, P, probe=probe, degree=args.degree)
    coeffs = expansion.scalar_coefficients()
    report = {
        "command": "expand",
        "input": args.input[0],
        "notices": notices,
        "valuation": val.key(),
        "degree": expansion.degree,
        "coefficients": {f"f_{i}": rat_str(c) for i, c in enumerate(coeffs)},
        "summary": " ".join(f"f_{i}={rat_str(c)}" for i, c in enumerate(coeffs)),
    }
    return 0, report


def _cmd_components(args) -> tuple[int, dict]:
    P, notices = parse_polytope_with_notices(_one_input(args))
    panel = _parse_panel(args.panel, P.ambient_dim)
    comps = bg.mcmullen_components(P, degree=args.degree)
    report = {
        "command": "components",
        "input": args.input[0],
        "notices": notices,
        "dimension": pk.dim(P),
        "components": {
            f"e_{i}": {
                "sum": _fmt_sum(c),
                "signature": _signature_obj(bg.panel_signature(c, panel)),
            }
            for i, c in enumerate(comps)
        },
    }
    return 0, report


def _cmd_decompose(args) -> tuple[int, dict]:
    basis = _parse_basis(args.basis)
    a = _parse_rat(args.a)
    b = _parse_rat(args.b)
    pieces = pk.decomposition_pieces(basis, a, b)
    verdict = pk.verify_decomposition(basis, a, b)
    report = {
        "command": "decompose",
        "basis": [",".join(rat_str(c) for c in v) for v in basis.vectors],
        "a": rat_str(a),
        "b": rat_str(b),
        "cells": {
            f"cell_{i}": {"vertices": repr(c), "volume": rat_str(pk.volume(c))}
            for i, c in enumerate(pieces.cells)
        },
        "seams": {f"seam_{i + 1}": repr(s) for i, s in enumerate(pieces.seams)},
        "checks": {
            "volume_additive": verdict.volume_additive,
            "cover": verdict.cover,
            "cells_inside": verdict.cells_inside,
            "seams_match": verdict.seams_match,
            "seams_lower_dim": verdict.seams_lower_dim,
        },
        "result": "pass" if verdict.ok else "fail",
    }
    return (0 if verdict.ok else 1), report


def _cmd_verify(args) -> tuple[int, dict]:
    results = vs.run_all(args.seed)
    report = {
        "command": "verify",
        "seed": args.seed,
        "suites": {
            r.name: {
                "checks": r.checks,
                "result": "pass" if r.ok else "fail",
                "failures": r.failures[:5],
            }
            for r in results
        },
        "result": "pass" if all(r.ok for r in results) else "fail",
    }
    return (0 if all(r.ok for r in results) else 1), report


def _cmd_ehrhart(args) -> tuple[int, dict]:
    P, notices = parse_polytope_with_notices(_one_input(args))
    top = int(args.lam) if args.lam is not None else 6
    counts = {
        str(lam): pk.lattice_count(pk.dilate(P, lam)) for lam in range(top + 1)
    }
    expansion = vv.ehrhart_expansion(P, degree=args.degree)
    coeffs = expansion.scalar_coefficients()
    report = {
        "command": "ehrhart",
        "input": args.input[0],
        "notices": notices,
        "counts": counts,
        "coefficients": {f"f_{i}": rat_str(c) for i, c in enumerate(coeffs)},
    }
    return 0, report


def _cmd_mixed(args) -> tuple[int, dict]:
    if len(args.input) != 2:
        raise ParseError("mixed needs --input P.json --input Q.json")
    P = parse_polytope(args.input[0])
    Q = parse_polytope(args.input[1])
    mv = vv.mixed_volume_2d(P, Q)
    expansion = vv.expansion_of_dilation(vv.volume_valuation(), P, probe=Q)
    linear = expansion.components[0].at_ones
    ok = linear == 2 * mv
    report = {
        "command": "mixed",
        "inputs": list(args.input),
        "mixed_volume": rat_str(mv),
        "expansion_linear_coefficient": rat_str(linear),
        "cross_check": "pass" if ok else "fail",
    }
    return (0 if ok else 1), report


def _cmd_compare(args) -> tuple[int, dict]:
    if len(args.input) != 2:
        raise ParseError("compare needs --input s1.json --input s2.json")
    s1 = parse_formal_sum(args.input[0])
    s2 = parse_formal_sum(args.input[1])
    ambient = None
    for s in (s1, s2):
        for poly, _ in s.terms:
            ambient = poly.ambient_dim if ambient is None else ambient
    if ambient is None:
        ambient = 1
    panel = _parse_panel(args.panel, ambient)
    cmp = bg.panel_compare(s1, s2, panel)
    report = {
        "command": "compare",
        "inputs": list(args.input),
        "panel": [val.key() for val in panel],
        "result": "equal_on_panel" if cmp.equal_on_panel else "distinguished",
    }
    if not cmp.equal_on_panel:
        report["witness"] = {
            "valuation": cmp.witness,
            "left": rat_str(cmp.left),
            "right": rat_str(cmp.right),
        }
    return (0 if cmp.equal_on_panel else 1), report


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexval",
        description="Exact valuations, dilation expansions, and graded polytope classes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inputs=0):
        if inputs:
            p.add_argument(
                "--input",
                action="append",
                default=[],
                metavar="PATH",
                help="input file (repeat for two-input commands)",
            )
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("expand", help="expansion of a valuation under dilation")
    common(p, 1)
    p.add_argument("--valuation", default="volume")
    p.add_argument("--probe", default=None, help="named probe added before dilating")
    p.add_argument("--degree", type=int, default=None)

    p = sub.add_parser("components", help="graded components of a polytope class")
    common(p, 1)
    p.add_argument("--panel", default=None, help="comma-separated valuation tokens")
    p.add_argument("--degree", type=int, default=None)

    p = sub.add_parser("decompose", help="staircase simplex decomposition report")
    common(p)
    p.add_argument("--basis", required=True, help="semicolon-separated vectors")
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="1")

    p = sub.add_parser("verify", help="run the seeded verification suites")
    common(p)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("ehrhart", help="lattice counts of integer dilates")
    common(p, 1)
    p.add_argument("--lambda", dest="lam", default=None, help="largest dilation")
    p.add_argument("--degree", type=int, default=None)

    p = sub.add_parser("mixed", help="planar mixed volume and its cross-check")
    common(p, 2)

    p = sub.add_parser("compare", help="panel comparison of two formal sums")
    common(p, 2)
    p.add_argument("--panel", default=None)

    return parser


_HANDLERS = {
    "expand": _cmd_expand,
    "components": _cmd_components,
    "decompose": _cmd_decompose,
    "verify": _cmd_verify,
    "ehrhart": _cmd_ehrhart,
    "mixed": _cmd_mixed,
    "compare": _cmd_compare,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        code, report = _HANDLERS[args.command](args)
    except ConvexValError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    sys.stdout.write(_emit(report, args.format))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
