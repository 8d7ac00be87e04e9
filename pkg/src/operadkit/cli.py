"""Command-line driver: enumeration, maps, verification suites, export.

All input and output is UTF-8 JSON lines, except DOT export.  Exit codes:
0 success, 1 a verification check failed, 2 usage error, 3 an enumeration
budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterable

from . import barratt_eccles as be
from . import bv
from . import configurations as cfg
from . import graphs
from . import lattice_paths as lp
from . import monoidal_trees as mt
from . import suites
from .limits import DEFAULT_CAPS, BudgetError, Caps

USAGE_ERROR = 2
CHECK_FAILURE = 1
BUDGET_EXCEEDED = 3


class UsageError(ValueError):
    pass


def _parse_caps(raw: str | None) -> Caps:
    if not raw:
        return DEFAULT_CAPS
    values = {}
    for part in raw.split(","):
        if not part:
            continue
        key, _, raw = part.partition("=")
        if not raw:
            raise UsageError(f"cap {part!r} is not of the form key=value")
        field = key.strip().replace("-", "_")
        if field not in DEFAULT_CAPS.__dataclass_fields__:
            raise UsageError(f"unknown cap {key!r}")
        values[field] = int(raw)
    return DEFAULT_CAPS.scaled(**values)


def _vertices(raw: str) -> tuple[str, ...]:
    names = tuple(v for v in raw.split(",") if v)
    if not names:
        raise UsageError("--vertices must name at least one label")
    return names


def _emit(records: Iterable[dict], out: str | None) -> None:
    lines = (json.dumps(r, sort_keys=True) for r in records)
    if out:
        Path(out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        for line in lines:
            print(line)


def _read_json(path: str | None) -> dict:
    text = Path(path).read_text(encoding="utf-8") if path else sys.stdin.read()
    return json.loads(text)


def cmd_enumerate(args: argparse.Namespace) -> int:
    caps = _parse_caps(args.caps)
    names = _vertices(args.vertices)
    n = args.n
    model = args.model
    if model == "graphs":
        records = [
            graphs.graph_to_json(g)
            for g in graphs.enumerate_graphs(names, n, args.variant, caps=caps)
        ]
    elif model == "trees":
        records = [
            mt.tree_to_json(t) for t in mt.enumerate_trees(names, n, caps=caps)
        ]
    elif model == "paths":
        records = [
            lp.path_to_json(x) for x in lp.enumerate_paths(names, n, caps=caps)
        ]
    elif model == "besimplices":
        sset = be.enumerate_gamma_n(names, n, caps=caps)
        levels = sset.simplices
        if args.max_dim is not None:
            levels = levels[: args.max_dim + 1]
        records = [be.simplex_to_json(s) for level in levels for s in level]
    elif model == "welements":
        records = [
            bv.welement_to_json(x)
            for x in bv.enumerate_welements(
                names, n, max_internal=args.max_internal, caps=caps
            )
        ]
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown model {model!r}")
    _emit(records, args.out)
    return 0


_MAPS = {
    "psi": lambda data, n: graphs.graph_to_json(
        cfg.psi(cfg.points_from_json(data))
    ),
    "phi": lambda data, n: graphs.graph_to_json(
        cfg.phi(cfg.cubes_from_json(data))
    ),
    "gamma_be": lambda data, n: graphs.graph_to_json(
        be.be_gamma(be.simplex_from_json(data), n)
    ),
    "gamma_lp": lambda data, n: graphs.graph_to_json(
        lp.lp_gamma(lp.path_from_json(data), n)
    ),
    "mu": lambda data, n: graphs.graph_to_json(
        mt.mu(mt.tree_from_json(data), n)
    ),
    "phi_M": lambda data, n: mt.tree_to_json(
        cfg.phi_M(cfg.cubes_from_json(data))
    ),
}


def cmd_map(args: argparse.Namespace) -> int:
    data = _read_json(args.input)
    record = _MAPS[args.map](data, args.n)
    _emit([record], args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    caps = _parse_caps(args.caps)
    try:
        report = suites.run_suite(
            args.suite,
            seed=args.seed,
            caps=caps,
            recompute_oracles=args.recompute_oracles,
        )
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    payload = report.to_json()
    lines = [json.dumps(c, sort_keys=True) for c in payload["checks"]]
    summary = {
        k: v for k, v in payload.items() if k != "checks"
    }
    lines.append(json.dumps(summary, sort_keys=True))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.report_dir:
        directory = Path(args.report_dir)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / f"{args.suite}.jsonl").write_text(text, encoding="utf-8")
        _render_report_figure(report, directory / f"{args.suite}.png")
    return 0 if report.passed else CHECK_FAILURE


def _render_report_figure(report: suites.SuiteReport, target: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [c.name for c in report.checks]
    times = [max(c.seconds, 1e-6) for c in report.checks]
    colors = ["#2a9d4e" if c.passed else "#c03a2b" for c in report.checks]
    height = max(2.0, 0.45 * len(names) + 1.2)
    fig, ax = plt.subplots(figsize=(8, height))
    ax.barh(range(len(names)), times, color=colors)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    status = "all checks passed" if report.passed else "checks FAILED"
    ax.set_title(f"{report.suite}: {status} (seed {report.seed})")
    fig.tight_layout()
    fig.savefig(target, dpi=150)
    plt.close(fig)


_KINDS = {
    "vertices": ("graph", graphs.graph_from_json, graphs.graph_to_json),
    "letters": ("path", lp.path_from_json, lp.path_to_json),
    "orders": ("besimplex", be.simplex_from_json, be.simplex_to_json),
    "points": ("points", cfg.points_from_json, cfg.points_to_json),
    "cubes": ("cubes", cfg.cubes_from_json, cfg.cubes_to_json),
    "tree": ("welement", bv.welement_from_json, bv.welement_to_json),
}


def _detect_kind(data: dict):
    for marker, handlers in _KINDS.items():
        if marker in data:
            return handlers
    if "leaf" in data or "label" in data:
        return ("tree", mt.tree_from_json, mt.tree_to_json)
    raise UsageError("cannot detect the record kind from its keys")


def cmd_export(args: argparse.Namespace) -> int:
    data = _read_json(args.input)
    kind, reader, writer = _detect_kind(data)
    value = reader(data)
    if args.format == "json":
        record = writer(value)
        text = json.dumps(record, sort_keys=True, indent=2) + "\n"
    else:
        if kind != "graph":
            raise UsageError("DOT export is only defined for graphs")
        text = graphs.graph_to_dot(value) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="operadkit",
        description="enumerate combinatorial operad models, map between them, "
        "verify structural properties, export records",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="list model elements as JSON lines")
    p_enum.add_argument(
        "model", choices=["graphs", "trees", "paths", "besimplices", "welements"]
    )
    p_enum.add_argument("--vertices", required=True, help="comma-separated labels")
    p_enum.add_argument("--n", type=int, default=2, help="weight/label bound")
    p_enum.add_argument(
        "--variant", choices=[graphs.ACYCLIC, graphs.EXTENDED], default=graphs.ACYCLIC
    )
    p_enum.add_argument("--max-internal", type=int, default=2)
    p_enum.add_argument(
        "--max-dim", type=int, default=None, help="truncate besimplices above this dimension"
    )
    p_enum.add_argument("--caps", help="override caps, e.g. max_vertices=6")
    p_enum.add_argument("--out", help="write JSON lines to a file")
    p_enum.set_defaults(func=cmd_enumerate)

    p_map = sub.add_parser("map", help="apply a comparison map to one record")
    p_map.add_argument("map", choices=sorted(_MAPS))
    p_map.add_argument("--in", dest="input", help="input JSON file (default stdin)")
    p_map.add_argument("--n", type=int, default=None, help="weight bound of the image")
    p_map.add_argument("--out", help="write the result to a file")
    p_map.set_defaults(func=cmd_map)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("suite", choices=sorted(suites.SUITES))
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--caps", help="override caps, e.g. max_cells=500000")
    p_verify.add_argument(
        "--recompute-oracles",
        action="store_true",
        help="rederive frozen expected counts through independent oracles",
    )
    p_verify.add_argument("--out", help="write the JSONL report to a file")
    p_verify.add_argument(
        "--report-dir",
        help="also write <suite>.jsonl and a <suite>.png check chart here",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_export = sub.add_parser("export", help="re-serialise one record")
    p_export.add_argument("--in", dest="input", help="input JSON file (default stdin)")
    p_export.add_argument("--format", choices=["json", "dot"], default="json")
    p_export.add_argument("--out", help="write to a file")
    p_export.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET_EXCEEDED
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
