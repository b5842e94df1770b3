"""Command line front end.

Subcommands: ``spectrum``, ``energy``, ``verify``, ``scan``, ``subdivide``.
Graphs arrive as a graph6 literal, a file path, ``-`` for stdin, or a
``gen:kind:n`` generator token.  All commands enforce the package-wide
convention that graphs are connected with every degree positive.

Exit codes:
    0  success (and, for verify/scan, everything held)
    1  the run completed but a verification or scan found a failure
    2  unusable input: bad arguments, malformed graph text, unknown generator
    3  convention violation: isolated vertex or disconnected graph
    4  numerical failure inside the eigensolver
    5  a check's precondition does not hold for the given graph

Output is deterministic byte for byte: floats render at 12 significant
digits and no timing or environment data is printed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    ConvergenceError,
    DisconnectedGraphError,
    GraphFormatError,
    IsolatedVertexError,
    PreconditionError,
)
from .graphs import (
    ENUMERATION_MAX_ORDER,
    GENERATOR_KINDS,
    Graph,
    encode_graph6,
    format_edge_list,
    generate,
    is_connected,
    parse_edge_list,
    parse_graph6,
    subdivision,
)
from .identities import (
    SCAN_CHECKS,
    VerificationReport,
    classify_distinct_count,
    scan_small_graphs,
    verify_eigenvalue_correspondence,
    verify_k_distinct_identity,
    verify_local_conditions,
    verify_subdivision_charpoly,
    verify_subdivision_energy,
)
from .linalg import CLUSTER_TOL, cluster_distinct, symmetric_eigenvalues
from .spectra import (
    normalized_laplacian,
    normalized_signless_laplacian,
    randic_energy,
    randic_index,
    randic_matrix,
)

MATRIX_CHOICES = ("randic", "laplacian", "signless", "all")
VERIFY_CHOICES = SCAN_CHECKS + ("all",)


def fmt(x: float) -> str:
    """Render a float at 12 significant digits (the package-wide contract)."""
    return f"{x:.12g}"


def _round12(x: float) -> float:
    """Round to 12 significant digits so JSON output is byte-stable."""
    return float(fmt(x))


def _json_ready(value):
    if isinstance(value, float):
        return _round12(value)
    if isinstance(value, dict):
        return {k: _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    return value


def emit_json(payload: dict) -> None:
    print(json.dumps(_json_ready(payload), sort_keys=True))


# ---------------------------------------------------------------------------
# Input handling
# ---------------------------------------------------------------------------


def _generate_from_token(token: str) -> Graph:
    parts = token.split(":")
    # parts[0] == "gen" guaranteed by the caller
    if len(parts) < 2 or not parts[1]:
        raise GraphFormatError("generator token must look like gen:kind:n")
    kind = parts[1]
    if kind not in GENERATOR_KINDS:
        raise GraphFormatError(
            f"unknown generator {kind!r}; choices: {', '.join(GENERATOR_KINDS)}"
        )
    if kind == "petersen":
        if len(parts) > 2 and parts[2] not in ("", "10"):
            raise GraphFormatError("gen:petersen has a fixed order of 10")
        return generate("petersen")
    if len(parts) != 3:
        raise GraphFormatError(f"generator {kind!r} needs an order, e.g. gen:{kind}:5")
    try:
        n = int(parts[2])
    except ValueError:
        raise GraphFormatError(f"generator order {parts[2]!r} is not an integer") from None
    try:
        return generate(kind, n)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def _parse_text(text: str, fmt_name: str) -> Graph:
    if fmt_name == "graph6":
        return parse_graph6(text)
    if fmt_name == "edges":
        return parse_edge_list(text)
    # auto: several tokens can only be an edge list; one purely numeric
    # token is an order-only edge list; anything else reads as graph6
    tokens = text.split()
    if not tokens:
        raise GraphFormatError("empty graph input")
    if len(tokens) > 1 or tokens[0].isdigit():
        return parse_edge_list(text)
    return parse_graph6(text)


def load_graph(token: str, fmt_name: str = "auto") -> Graph:
    """Resolve one graph argument: stdin, generator, file, or literal."""
    if token == "-":
        return _parse_text(sys.stdin.read(), fmt_name)
    if token.startswith("gen:"):
        return _generate_from_token(token)
    path = Path(token)
    if path.is_file():
        try:
            text = path.read_text()
        except OSError as exc:
            raise GraphFormatError(f"cannot read {token}: {exc}") from None
        return _parse_text(text, fmt_name)
    return _parse_text(token, fmt_name)


def require_convention(g: Graph) -> None:
    """Connected with all degrees positive; everything here assumes it."""
    if g.n == 0:
        raise IsolatedVertexError("graph has no vertices")
    for i, d in enumerate(g.degrees):
        if d == 0:
            raise IsolatedVertexError(f"vertex {i} has degree zero")
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")


def _graph_header(g: Graph) -> list[str]:
    return [f"order {g.n}", f"size {g.m}", f"graph6 {encode_graph6(g)}"]


def _graph_payload(g: Graph) -> dict:
    return {"order": g.n, "size": g.m, "graph6": encode_graph6(g)}


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _spectrum_block(name: str, matrix) -> tuple[list[str], dict]:
    values = symmetric_eigenvalues(matrix)
    distinct, mults = cluster_distinct(values, CLUSTER_TOL)
    lines = [
        f"matrix {name}",
        "eigenvalues " + " ".join(fmt(v) for v in values),
        "distinct "
        + " ".join(f"{fmt(v)}x{m}" for v, m in zip(distinct, mults)),
    ]
    payload = {
        "eigenvalues": values.tolist(),
        "distinct": list(distinct),
        "multiplicities": list(mults),
    }
    return lines, payload


def cmd_spectrum(args) -> int:
    g = load_graph(args.graph, args.format)
    require_convention(g)
    builders = {
        "randic": randic_matrix,
        "laplacian": normalized_laplacian,
        "signless": normalized_signless_laplacian,
    }
    names = list(builders) if args.matrix == "all" else [args.matrix]
    lines = _graph_header(g)
    payload: dict = {"graph": _graph_payload(g), "spectra": {}}
    for name in names:
        block, data = _spectrum_block(name, builders[name](g))
        lines.extend(block)
        payload["spectra"][name] = data
    if args.json:
        emit_json({"command": "spectrum", **payload})
    else:
        print("\n".join(lines))
    return 0


def cmd_energy(args) -> int:
    g = load_graph(args.graph, args.format)
    require_convention(g)
    energy = randic_energy(g)
    index = randic_index(g)
    if args.json:
        emit_json(
            {
                "command": "energy",
                "graph": _graph_payload(g),
                "randic_energy": energy,
                "randic_index": index,
            }
        )
    else:
        lines = _graph_header(g)
        lines.append(f"randic_energy {fmt(energy)}")
        lines.append(f"randic_index {fmt(index)}")
        print("\n".join(lines))
    return 0


def _run_verify_check(name: str, g: Graph) -> dict:
    """One named check as a plain dict: name, passed, residuals, extras."""
    if name == "classification":
        cls = classify_distinct_count(g)
        return {
            "name": name,
            "passed": cls.consistent,
            "residuals": {},
            "detail": cls.detail,
        }
    runner = {
        "charpoly": verify_subdivision_charpoly,
        "correspondence": verify_eigenvalue_correspondence,
        "energy": verify_subdivision_energy,
        "identity": verify_k_distinct_identity,
        "local": verify_local_conditions,
    }[name]
    report: VerificationReport = runner(g)
    out = {
        "name": name,
        "passed": report.passed,
        "tolerance": report.tolerance,
        "residuals": dict(report.residuals),
    }
    if report.values:
        out["values"] = dict(report.values)
    if report.detail:
        out["detail"] = report.detail
    return out


def cmd_verify(args) -> int:
    g = load_graph(args.graph, args.format)
    require_convention(g)
    if args.check == "all":
        names = ["charpoly", "correspondence", "energy", "identity", "classification"]
        distinct, _ = cluster_distinct(symmetric_eigenvalues(randic_matrix(g)), CLUSTER_TOL)
        if len(distinct) == 3:
            names.append("local")
    else:
        names = [args.check]
    rows = [_run_verify_check(name, g) for name in names]
    all_passed = all(row["passed"] for row in rows)
    if args.json:
        emit_json(
            {
                "command": "verify",
                "graph": _graph_payload(g),
                "checks": rows,
                "passed": all_passed,
            }
        )
    else:
        lines = _graph_header(g)
        for row in rows:
            lines.append(f"check {row['name']} {'PASS' if row['passed'] else 'FAIL'}")
            for key in sorted(row["residuals"]):
                lines.append(f"  {key} {fmt(row['residuals'][key])}")
            if "values" in row:
                for key in sorted(row["values"]):
                    lines.append(f"  {key} {fmt(row['values'][key])}")
            if "detail" in row:
                lines.append(f"  note {row['detail']}")
        lines.append(f"result {'PASS' if all_passed else 'FAIL'}")
        print("\n".join(lines))
    return 0 if all_passed else 1


def cmd_scan(args) -> int:
    if args.order == ENUMERATION_MAX_ORDER and not args.allow_large:
        raise GraphFormatError(
            f"order {ENUMERATION_MAX_ORDER} scans roughly 2.1 million edge subsets; "
            "pass --allow-large to confirm"
        )
    checks = tuple(args.checks.split(",")) if args.checks else SCAN_CHECKS
    try:
        summary = scan_small_graphs(
            args.order, checks=checks, jobs=args.jobs, rank_energy=args.rank_energy
        )
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    if args.json:
        payload = {
            "command": "scan",
            "order": summary.order,
            "checks": list(summary.checks),
            "graph_count": summary.graph_count,
            "counterexamples": [
                {"graph6": c.graph6, "check": c.check, "residuals": dict(c.residuals)}
                for c in summary.counterexamples
            ],
            "worst_residuals": dict(summary.worst_residuals),
            "passed": summary.passed,
        }
        if summary.lowest_energy is not None:
            payload["lowest_energy"] = {
                "graph6": summary.lowest_energy[0],
                "value": summary.lowest_energy[1],
            }
            payload["highest_energy"] = {
                "graph6": summary.highest_energy[0],
                "value": summary.highest_energy[1],
            }
        emit_json(payload)
    else:
        lines = [
            f"order {summary.order}",
            f"graphs {summary.graph_count}",
            "checks " + ",".join(summary.checks),
        ]
        for key in sorted(summary.worst_residuals):
            lines.append(f"worst {key} {fmt(summary.worst_residuals[key])}")
        if summary.lowest_energy is not None:
            lines.append(
                f"lowest_energy {fmt(summary.lowest_energy[1])} {summary.lowest_energy[0]}"
            )
            lines.append(
                f"highest_energy {fmt(summary.highest_energy[1])} {summary.highest_energy[0]}"
            )
        lines.append(f"counterexamples {len(summary.counterexamples)}")
        for c in summary.counterexamples[:20]:
            worst_key = max(c.residuals, key=c.residuals.get) if c.residuals else ""
            lines.append(f"  {c.graph6} {c.check} {worst_key}")
        lines.append(f"result {'PASS' if summary.passed else 'FAIL'}")
        print("\n".join(lines))
    return 0 if summary.passed else 1


def cmd_subdivide(args) -> int:
    g = load_graph(args.graph, args.format)
    require_convention(g)
    s = subdivision(g)
    if args.json:
        emit_json(
            {
                "command": "subdivide",
                "graph": _graph_payload(g),
                "subdivision": _graph_payload(s),
            }
        )
    elif args.output == "edges":
        print(format_edge_list(s), end="")
    else:
        print(encode_graph6(s))
    return 0


# ---------------------------------------------------------------------------
# Parser and dispatch
# ---------------------------------------------------------------------------


def _add_graph_arg(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "graph",
        help="graph6 literal, file path, '-' for stdin, or gen:kind:n "
        "(kinds: complete, path, cycle, star, petersen)",
    )
    sub.add_argument(
        "--format",
        choices=("auto", "graph6", "edges"),
        default="auto",
        help="how to read file/stdin/literal input (default: auto-detect)",
    )
    sub.add_argument("--json", action="store_true", help="emit one JSON object")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randic",
        description="Spectra and verified identities of the degree-normalized "
        "adjacency matrix R = D^(-1/2) A D^(-1/2).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues of R, I-R, or I+R")
    _add_graph_arg(p)
    p.add_argument("--matrix", choices=MATRIX_CHOICES, default="randic")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("energy", help="sum of |eigenvalues| of R, plus the edge index")
    _add_graph_arg(p)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("verify", help="check structural identities on one graph")
    _add_graph_arg(p)
    p.add_argument(
        "--check",
        choices=VERIFY_CHOICES,
        default="all",
        help="which identity to check (default: all applicable)",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="verify identities over every connected graph of one order")
    p.add_argument("--order", type=int, required=True, help="graph order, 2..7")
    p.add_argument(
        "--checks",
        default="",
        help="comma-separated subset of: " + ",".join(SCAN_CHECKS),
    )
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument(
        "--rank-energy",
        action="store_true",
        help="also report the graphs of smallest and largest energy",
    )
    p.add_argument(
        "--allow-large",
        action="store_true",
        help="permit the order-7 scan (about 2.1 million edge subsets)",
    )
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("subdivide", help="place one new vertex on every edge")
    _add_graph_arg(p)
    p.add_argument(
        "--output",
        choices=("graph6", "edges"),
        default="graph6",
        help="output format (default graph6)",
    )
    p.set_defaults(func=cmd_subdivide)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IsolatedVertexError, DisconnectedGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
