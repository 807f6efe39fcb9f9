"""Command-line reports for root systems, gradations, Koszul data, metrics.

Every subcommand builds one structured payload; the human-readable text and
the ``--json`` output are two renderings of that same payload, so they cannot
drift apart.  Exit codes: 0 success, 1 domain error (including failed
verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from fractions import Fraction as Q
from pathlib import Path

from .chevalley import chevalley_constants
from .errors import DomainError
from .gradation import (
    CrossingSet,
    SatakeDiagram,
    catalog_lookup,
    catalog_names,
    enumerate_crossings,
    grade_from_crossing,
    load_diagram,
    orbit_dimension,
    satake_violations,
)
from .koszul import (
    einstein_structure,
    kernel_is_g0,
    kernel_of,
    koszul_coefficients,
    koszul_form,
    two_form_from_weight,
)
from .paracomplex import (
    determinant_identity_residual,
    einstein_residual,
    fit_lambda,
    grid_points,
    parse_potential_config,
)
from .rootsys import (
    SimpleType,
    build_root_system,
    format_coeffs,
    weight_in_pi_basis,
)
from .verify import run_sweep

SCHEMA = "parakahler-report/1"


@dataclass
class Report:
    """One command's echo, inputs, payload, and verification summary."""

    command: str
    inputs: dict
    payload: dict
    checks: list[dict]

    def digest(self) -> str:
        canonical = json.dumps(self.inputs, sort_keys=True, default=str)
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "digest": self.digest(),
            "payload": self.payload,
            "checks": self.checks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def render_text(self) -> str:
        lines = [f"{self.command}  [digest {self.digest()}]"]
        _render(self.payload, lines, indent=1)
        if self.checks:
            lines.append("checks:")
            for check in self.checks:
                mark = "pass" if check["ok"] else "FAIL"
                lines.append(f"  [{mark}] {check['name']}")
        return "\n".join(lines)


def _render(value, lines: list[str], indent: int, key: str | None = None) -> None:
    pad = "  " * indent
    label = f"{key}: " if key is not None else ""
    if isinstance(value, dict):
        if key is not None:
            lines.append(f"{pad}{key}:")
        for k, v in value.items():
            _render(v, lines, indent + (key is not None), k)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        lines.append(f"{pad}{key}:")
        item_pad = "  " * (indent + 1)
        for item in value:
            lines.append(item_pad + "  ".join(f"{k}={v}" for k, v in item.items()))
    elif isinstance(value, list) and value and isinstance(value[0], list):
        lines.append(f"{pad}{key}:")
        item_pad = "  " * (indent + 1)
        for item in value:
            lines.append(item_pad + ", ".join(str(v) for v in item))
    elif isinstance(value, list):
        lines.append(f"{pad}{label}{', '.join(str(v) for v in value)}")
    else:
        lines.append(f"{pad}{label}{value}")


def _rat(x) -> str:
    return str(Q(x))


def _weight_payload(rs, xi) -> dict:
    pi = weight_in_pi_basis(rs, xi)
    return {
        "alpha_basis": format_coeffs(xi.coords),
        "alpha_coeffs": [_rat(c) for c in xi.coords],
        "pi_basis": format_coeffs(pi, symbol="pi"),
        "pi_coeffs": [_rat(c) for c in pi],
    }


def _parse_cross(text: str) -> CrossingSet:
    try:
        nodes = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise DomainError(f"--cross expects 1-based node indices, got {text!r}")
    return CrossingSet(frozenset(nodes))


def _resolve_satake(name: str) -> SatakeDiagram:
    path = Path(name)
    if path.is_file():
        diagram, _ = load_diagram(path)
        return diagram
    return catalog_lookup(name)


# -- subcommands -------------------------------------------------------------------


def cmd_roots(args) -> Report:
    stype = SimpleType(args.family.upper(), args.rank)
    rs = build_root_system(stype)
    prod_ok = all(
        rs.coroot_pairing(rs.weights[i], j + 1) == (i == j)
        for i in range(rs.rank)
        for j in range(rs.rank)
    )
    payload = {
        "type": str(stype),
        "cartan_matrix": [list(row) for row in rs.cartan],
        "symmetrizers": list(rs.d),
        "positive_root_count": len(rs.positive_roots),
        "positive_roots": [str(r) for r in rs.positive_roots],
        "highest_root": str(rs.highest_root),
        "fundamental_weights": [str(w) for w in rs.weights],
    }
    checks = [{"name": "weights inverse to cartan matrix", "ok": prod_ok}]
    return Report("roots", {"type": str(stype)}, payload, checks)


def cmd_gradations(args) -> Report:
    stype = SimpleType(args.family.upper(), args.rank)
    rs = build_root_system(stype)
    crossings = (
        [_parse_cross(args.cross)] if args.cross else enumerate_crossings(rs.rank)
    )
    rows = []
    for crossing in crossings:
        g = grade_from_crossing(rs, crossing)
        rows.append(
            {
                "crossed": crossing.sorted(),
                "depth": g.depth,
                "orbit_dimension": orbit_dimension(g),
                "dim_g0": rs.rank + 2 * len(g.zero_degree_positive()),
            }
        )
    payload = {"type": str(stype), "gradations": rows}
    inputs = {"type": str(stype), "cross": args.cross or "all"}
    return Report("gradations", inputs, payload, [])


def _koszul_payload(rs, crossing: CrossingSet) -> tuple[dict, list[dict]]:
    g = grade_from_crossing(rs, crossing)
    psi = koszul_form(g)
    acoef = koszul_coefficients(g)
    rho = two_form_from_weight(rs, psi)
    payload = {
        "type": str(rs.type),
        "crossed": crossing.sorted(),
        "depth": g.depth,
        "orbit_dimension": orbit_dimension(g),
        "psi": _weight_payload(rs, psi),
        "coefficients": [
            {"node": i, "a": a, "b": a - 2} for i, a in sorted(acoef.items())
        ],
        "rho": [
            {"root": str(r), "coefficient": _rat(rho.coeffs[r])}
            for r in rs.positive_roots
        ],
        "degree_zero_positive": [str(r) for r in g.zero_degree_positive()],
    }
    checks = [
        {"name": "kernel of d(psi) equals g_0", "ok": kernel_is_g0(rho, g)},
        {
            "name": "rho positive off g_0",
            "ok": all(
                rho.coeffs[r] > 0 for r in g.nonzero_positive()
            ),
        },
    ]
    return payload, checks


def cmd_koszul(args) -> Report:
    stype = SimpleType(args.family.upper(), args.rank)
    rs = build_root_system(stype)
    crossing = _parse_cross(args.cross)
    inputs = {
        "type": str(stype),
        "cross": crossing.sorted(),
        "satake": args.satake,
    }
    diagram = _resolve_satake(args.satake) if args.satake else None
    if diagram is not None:
        if diagram.type != stype:
            raise DomainError(
                f"Satake diagram {args.satake} is of type {diagram.type}, "
                f"not {stype}"
            )
        problems = satake_violations(diagram, crossing)
        if problems:
            raise DomainError(
                "crossing is inconsistent with the Satake diagram: "
                + "; ".join(problems)
            )
    payload, checks = _koszul_payload(rs, crossing)
    if diagram is not None:
        payload["satake"] = {
            "name": args.satake,
            "black": sorted(diagram.black),
            "arrows": [list(p) for p in sorted(diagram.arrows)],
        }
    return Report("koszul", inputs, payload, checks)


def cmd_rho(args) -> Report:
    stype = SimpleType(args.family.upper(), args.rank)
    rs = build_root_system(stype)
    crossing = _parse_cross(args.cross)
    g = grade_from_crossing(rs, crossing)
    rho = two_form_from_weight(rs, koszul_form(g))
    kernel = kernel_of(rho, g)
    payload = {
        "type": str(stype),
        "crossed": crossing.sorted(),
        "rho": [
            {"root": str(r), "coefficient": _rat(rho.coeffs[r])}
            for r in rs.positive_roots
        ],
        "kernel_basis": [bi.label() for bi in kernel],
        "kernel_dimension": len(kernel),
    }
    checks = [{"name": "kernel of d(psi) equals g_0", "ok": kernel_is_g0(rho, g)}]
    return Report("rho", {"type": str(stype), "cross": crossing.sorted()}, payload, checks)


def cmd_einstein(args) -> Report:
    stype = SimpleType(args.family.upper(), args.rank)
    rs = build_root_system(stype)
    crossing = _parse_cross(args.cross)
    lam = Q(args.lam)
    g = grade_from_crossing(rs, crossing)
    L = chevalley_constants(rs)
    es = einstein_structure(g, L, lam)
    pos, neg = es.signature()
    entries = []
    for i, bi in enumerate(es.basis):
        for j in range(i, len(es.basis)):
            if es.metric[i][j]:
                entries.append(
                    {
                        "x": bi.label(),
                        "y": es.basis[j].label(),
                        "value": _rat(es.metric[i][j]),
                    }
                )
    payload = {
        "type": str(stype),
        "crossed": crossing.sorted(),
        "lambda": _rat(lam),
        "orbit_dimension": orbit_dimension(g),
        "k_plus": [str(r) for r in g.nonzero_roots() if g.ksign(r) > 0],
        "k_minus": [str(r) for r in g.nonzero_roots() if g.ksign(r) < 0],
        "metric_basis": [bi.label() for bi in es.basis],
        "metric_entries": entries,
        "signature": [pos, neg],
    }
    checks = [
        {"name": "neutral signature", "ok": pos == neg == orbit_dimension(g) // 2},
    ]
    inputs = {"type": str(stype), "cross": crossing.sorted(), "lambda": _rat(lam)}
    return Report("einstein", inputs, payload, checks)


def cmd_verify(args) -> Report:
    result = run_sweep(args.max_rank)
    payload = {
        "max_rank": args.max_rank,
        "types": result["types"],
        "algebras": result["algebras"],
        "gradations": result["gradations"],
        "failures": result["failures"],
    }
    checks = [{"name": "all oracle checks", "ok": result["all_ok"]}]
    return Report("verify", {"max_rank": args.max_rank}, payload, checks)


def cmd_potential(args) -> Report:
    text = Path(args.config).read_text()
    potential, options = parse_potential_config(text)
    pts = grid_points(
        potential, options["extent"], options["grid"], options["margin"]
    )
    if not pts:
        raise DomainError("no admissible sample points in the requested grid")
    center = min(pts, key=lambda p: sum(c * c for c in p))
    if options["lambda"] is not None:
        lam = float(options["lambda"])
        lam_source = "config"
    else:
        lam = fit_lambda(potential, center)
        lam_source = "fitted"
    residual = einstein_residual(potential, lam, pts)
    det_residual = max(
        determinant_identity_residual(potential, p, axis=0) for p in pts[:5]
    )
    payload = {
        "config": str(args.config),
        "kind": potential.kind,
        "n": potential.n,
        "builtin": potential.builtin,
        "points": len(pts),
        "lambda": lam,
        "lambda_source": lam_source,
        "einstein_residual": residual,
        "determinant_identity_residual": det_residual,
    }
    checks = [
        {"name": "einstein residual below 1e-5", "ok": residual < 1e-5},
        {"name": "determinant identity below 1e-7", "ok": det_residual < 1e-7},
    ]
    return Report("potential", {"config": str(args.config)}, payload, checks)


def cmd_catalog(args) -> Report:
    if args.name:
        diagram = catalog_lookup(args.name)
        payload = {
            "name": args.name,
            "type": str(diagram.type),
            "black": sorted(diagram.black),
            "arrows": [list(p) for p in sorted(diagram.arrows)],
        }
        return Report("catalog", {"name": args.name}, payload, [])
    payload = {"names": catalog_names()}
    return Report("catalog", {"name": None}, payload, [])


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parakahler",
        description="Invariant para-Kahler Einstein structures on adjoint orbits.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, cross_required=True):
        p.add_argument("family", help="simple type family letter A..G")
        p.add_argument("rank", type=int, help="rank of the simple type")
        if cross_required is not None:
            p.add_argument(
                "--cross",
                required=cross_required,
                help="comma list of crossed nodes, 1-based",
            )
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("roots", help="positive roots and fundamental weights")
    p.add_argument("family")
    p.add_argument("rank", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("gradations", help="gradations from crossing sets")
    common(p, cross_required=False)
    p.set_defaults(fn=cmd_gradations)

    p = sub.add_parser("koszul", help="Koszul form and symplectic coefficients")
    common(p)
    p.add_argument("--satake", help="catalog name or diagram file to check")
    p.set_defaults(fn=cmd_koszul)

    p = sub.add_parser("rho", help="two-form coefficients and kernel")
    common(p)
    p.set_defaults(fn=cmd_rho)

    p = sub.add_parser("einstein", help="invariant Einstein metric data")
    common(p)
    p.add_argument(
        "--lambda",
        dest="lam",
        default="1",
        help="Einstein constant as a rational p/q",
    )
    p.set_defaults(fn=cmd_einstein)

    p = sub.add_parser("verify", help="run the exact oracle sweep")
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("potential", help="numeric chart pipeline from a config")
    p.add_argument("config")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_potential)

    p = sub.add_parser("catalog", help="bundled Satake diagrams")
    p.add_argument("name", nargs="?")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.fn(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(report.to_json() if args.json else report.render_text())
    if any(not check["ok"] for check in report.checks):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
