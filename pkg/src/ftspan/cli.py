"""Command-line front end: ftspan {gen,build,verify,metrics,pack,replay-analysis,experiment}.

Exit codes: 0 success, 2 a verification failed, 3 an enumeration budget was
exceeded, 4 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import generators
from .budget import Budget, BudgetExceeded
from .graph import (
    GraphFormatError,
    WeightedMultigraph,
    dump_graph,
    is_connected,
    lightness,
    load_graph,
    mst,
    weighted_girth,
)
from .greedy import build_greedy, competition_level
from .oracles import is_ft_spanner
from .packing import PackingError, pack_forests, verify_packing
from .polytime import DEFAULT_C_CONST, DEFAULT_THRESHOLD, build_poly, build_poly_eta
from .preserver import EXACT, MODES, competitive_lightness, preserver_for
from .replay import HOST_MODES, build_host_graphs, chain_rows

EXIT_OK = 0
EXIT_VERIFY_FAIL = 2
EXIT_BUDGET = 3
EXIT_BAD_INPUT = 4

CSV_SCHEMA_VERSION = 1
CSV_COLUMNS = [
    "schema_version",
    "row_key",
    "family",
    "params",
    "algo",
    "k",
    "f",
    "eta",
    "seed",
    "n",
    "m",
    "status",
    "error",
    "spanner_size",
    "spanner_weight",
    "mst_weight",
    "lightness",
    "preserver_weight",
    "preserver_mode",
    "ell_f",
    "ell_2f_minus_1",
    "ell_2f",
    "ft_verdict",
]
REPLAY_COLUMNS = ["forest_index", "w_T", "w_HT", "mean_w_H3", "girth_check"]


class BadInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _text(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float) and value == float("inf"):
        return "inf"
    if isinstance(value, dict):
        return {str(k): _text(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_text(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_text(v) for v in value)
    return value


def _dump(payload: dict, output: str | None) -> None:
    text = json.dumps(_text(payload), sort_keys=True, indent=2) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_graph(path: str | None) -> WeightedMultigraph:
    if path is None or path == "-":
        return load_graph(sys.stdin.read())
    try:
        return load_graph(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise BadInput(f"cannot read {path}: {exc}") from exc


def _read_edge_ids(path: str, g: WeightedMultigraph) -> frozenset[int]:
    """Edge ids from a build report, a JSON list, or whitespace-separated integers."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise BadInput(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = text.split()
    if isinstance(data, dict):
        data = data.get("spanner", {}).get("edge_ids", data.get("edge_ids"))
    try:
        ids = frozenset(int(x) for x in data)
    except (TypeError, ValueError) as exc:
        raise BadInput(f"{path} does not hold a list of edge ids") from exc
    if any(not 0 <= i < g.m for i in ids):
        raise BadInput(f"{path} names edge ids outside 0..{g.m - 1}")
    return ids


def _seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("FTSPAN_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise BadInput(f"FTSPAN_SEED must be an integer, got {env!r}") from exc


def _stretch(args: argparse.Namespace) -> dict[str, Any]:
    if args.k0 is not None:
        if args.k is not None:
            raise BadInput("give either --k or --k0/--eps, not both")
        eps = args.eps if args.eps is not None else Fraction(0)
        k = (1 + eps) * (2 * args.k0 - 1)
        return {"k": k, "k0": args.k0, "eps": eps}
    if args.k is None:
        raise BadInput("a stretch is required: --k or --k0 [--eps]")
    if args.eps is not None:
        raise BadInput("--eps only applies together with --k0")
    return {"k": args.k}


def _budget(args: argparse.Namespace) -> Budget:
    return Budget(
        max_fault_sets=args.budget_fault_sets,
        max_subset_edges=args.budget_subset_edges,
        max_cyclomatic=args.budget_cyclomatic,
        max_search_nodes=args.budget_search_nodes,
    )


def _add_common(p: argparse.ArgumentParser, stretch: bool = True) -> None:
    p.add_argument("--input", help="edge-list file (default: stdin)")
    p.add_argument("--output", help="write here instead of stdout")
    p.add_argument("--seed", type=int, help="RNG seed (fallback: FTSPAN_SEED, then 0)")
    if stretch:
        p.add_argument("--k", type=_fraction, help="stretch")
        p.add_argument("--k0", type=int, help="stretch as (1 + eps)(2 k0 - 1)")
        p.add_argument("--eps", type=_fraction, help="epsilon for --k0")
    p.add_argument("--budget-fault-sets", type=int, default=Budget.max_fault_sets)
    p.add_argument("--budget-subset-edges", type=int, default=Budget.max_subset_edges)
    p.add_argument("--budget-cyclomatic", type=int, default=Budget.max_cyclomatic)
    p.add_argument("--budget-search-nodes", type=int, default=Budget.max_search_nodes)


def _instance(g: WeightedMultigraph, source: str | None) -> dict[str, Any]:
    return {"n": g.n, "m": g.m, "source": source or "-"}


def run_build(
    g: WeightedMultigraph,
    algo: str,
    k: Fraction,
    f: int,
    competition: str = "2f",
    eta: Fraction | None = None,
    preserver_mode: str = EXACT,
    seed: int = 0,
    threshold: Fraction = DEFAULT_THRESHOLD,
    c_const: float = DEFAULT_C_CONST,
    verify: bool = False,
    report_f: Sequence[int] = (),
    budget: Budget = Budget(),
) -> dict[str, Any]:
    """Build a spanner and return the report body (without instance metadata)."""
    out: dict[str, Any] = {}
    checks: dict[str, Any] = {}
    if algo == "greedy":
        result = build_greedy(g, k, f, competition, eta, preserver_mode, budget)
        h, choice = result.h, result.preserver
        out["blocking_set"] = result.blocking.to_list()
        if f == 0:
            girth, _ = weighted_girth(h)
            checks["weighted_girth"] = {
                "value": girth,
                "bound": k + 1,
                "verdict": "pass" if girth > k + 1 else "fail",
            }
    elif algo in ("poly", "poly-eta"):
        if algo == "poly":
            result = build_poly(g, k, f, c_const, preserver_mode, seed, threshold, budget)
        else:
            if eta is None:
                raise BadInput("--algo poly-eta needs --eta")
            result = build_poly_eta(g, k, f, eta, c_const, preserver_mode, seed, threshold, budget)
        h, choice = result.h, result.preserver
        out["host_log"] = result.host_log_json()
        out["sampling"] = {
            "samples": result.samples,
            "p_sample": result.p_sample,
            "threshold": result.threshold,
            "votes_needed": result.votes_needed,
            "packing_level": result.packing.level,
        }
    else:
        raise BadInput(f"unknown algorithm {algo!r}")
    out["spanner"] = {"edge_ids": sorted(h.edge_ids), "size": len(h), "weight": h.weight()}
    out["preserver"] = {
        "edge_ids": sorted(choice.q.edge_ids),
        "f": choice.f,
        "mode": choice.mode,
        "fell_back": choice.fell_back,
        "weight": choice.weight,
    }
    if is_connected(g) and g.m:
        out["lightness"] = lightness(h, g)
        out["mst_weight"] = mst(g).weight()
        levels = sorted({choice.f, *report_f})
        ratios = {}
        for level in levels:
            if level == choice.f:
                ratios[str(level)] = {
                    "value": h.weight() / choice.weight,
                    "preserver_weight": choice.weight,
                    "mode": choice.mode,
                    "f": level,
                    "fell_back": choice.fell_back,
                }
            else:
                other = preserver_for(g, level, preserver_mode, budget)
                ratios[str(level)] = {
                    "value": h.weight() / other.weight,
                    "preserver_weight": other.weight,
                    "mode": other.mode,
                    "f": level,
                    "fell_back": other.fell_back,
                }
        out["competitive_lightness"] = ratios
    if verify:
        checks["ft_spanner"] = is_ft_spanner(h, g, k, f, budget).to_dict()
    out["verification"] = checks
    return out


def _failed(checks: dict[str, Any]) -> bool:
    return any(c.get("verdict") == "fail" for c in checks.values())


def cmd_gen(args: argparse.Namespace) -> int:
    family = args.family
    if family == "triangle":
        g = generators.gen_triangle(args.W)
    elif family == "cycle-chords":
        g = generators.gen_cycle_chords(args.n, args.k, args.chord_eps)
    elif family == "cloud-cycle":
        g = generators.gen_cloud_cycle(args.m, args.f, args.k, args.chord_eps)
    elif family == "cloud-blowup":
        base = _read_graph(args.input) if args.input else generators.gen_cycle(args.n)
        g = generators.gen_cloud_blowup(base, args.f, args.c)
    else:
        g = generators.gen_random(args.n, args.edge_prob, (args.wmin, args.wmax), _seed(args))
    text = dump_graph(g)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    stretch = _stretch(args)
    seed = _seed(args)
    started = time.perf_counter()
    body = run_build(
        g,
        args.algo,
        stretch["k"],
        args.f,
        args.competition,
        args.eta,
        args.preserver,
        seed,
        args.threshold,
        args.c_const,
        args.verify,
        args.report_f,
        _budget(args),
    )
    report = {
        "instance": _instance(g, args.input),
        "algorithm": {
            "algo": args.algo,
            **stretch,
            "f": args.f,
            "eta": args.eta,
            "competition": args.competition,
            "preserver_mode": args.preserver,
            "seed": seed,
            "threshold": args.threshold,
            "c_const": args.c_const,
        },
        **body,
    }
    if args.timing:
        report["wall_clock_seconds"] = round(time.perf_counter() - started, 6)
    _dump(report, args.output)
    return EXIT_VERIFY_FAIL if _failed(body["verification"]) else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    stretch = _stretch(args)
    h = g.subgraph(_read_edge_ids(args.spanner, g))
    report = is_ft_spanner(h, g, stretch["k"], args.f, _budget(args))
    _dump(report.to_dict(), args.output)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def cmd_metrics(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    h = g.subgraph(_read_edge_ids(args.spanner, g)) if args.spanner else g.full()
    budget = _budget(args)
    report: dict[str, Any] = {
        "instance": _instance(g, args.input),
        "spanner": {"size": len(h), "weight": h.weight()},
        "mst_weight": mst(g).weight(),
        "lightness": lightness(h, g),
        "competitive_lightness": {
            str(f): competitive_lightness(h, g, f, args.preserver, budget).to_dict()
            for f in sorted(set(args.f_values))
        },
    }
    _dump(report, args.output)
    return EXIT_OK


def cmd_pack(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    if args.level < 1:
        raise BadInput("--level must be positive")
    pf = args.preserver_f if args.preserver_f is not None else args.level - 1
    choice = preserver_for(g, pf, args.preserver, _budget(args))
    packing = pack_forests(choice.q, args.level)
    report = verify_packing(packing, choice.q, args.level)
    payload = {
        **packing.to_dict(),
        "preserver": {"f": pf, "mode": choice.mode, "edge_ids": sorted(choice.q.edge_ids)},
        "verification": report.to_dict(),
    }
    _dump(payload, args.output)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def cmd_replay(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    stretch = _stretch(args)
    k = stretch["k"]
    budget = _budget(args)
    result = build_greedy(g, k, args.f, args.competition, args.eta, args.preserver, budget)
    level = competition_level(args.f, args.competition, args.eta) + 1
    packing = pack_forests(result.q, level)
    hosts = build_host_graphs(result.h, result.q, result.blocking, packing, args.mode)
    p = Fraction(1, args.f) if args.f > 0 else Fraction(1)
    rows = chain_rows(hosts, packing, result.blocking, k, p, args.trials, _seed(args))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=REPLAY_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.output:
        Path(args.output).write_text(buf.getvalue(), encoding="utf-8")
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_VERIFY_FAIL if any(r["girth_check"] == "fail" for r in rows) else EXIT_OK


# -- experiment sweeps ---------------------------------------------------------

FAMILY_PARAMS = {
    "triangle": ("W",),
    "cycle-chords": ("n", "k", "eps"),
    "cloud-cycle": ("m", "f", "k", "eps"),
    "cloud-blowup": ("base", "f", "c"),
    "random": ("n", "edge_prob", "wmin", "wmax", "graph_seed"),
}


def _generate(family: str, params: dict[str, Any]) -> WeightedMultigraph:
    if family == "triangle":
        return generators.gen_triangle(params["W"])
    if family == "cycle-chords":
        return generators.gen_cycle_chords(int(params["n"]), params["k"], params["eps"])
    if family == "cloud-cycle":
        return generators.gen_cloud_cycle(int(params["m"]), int(params["f"]), params["k"], params["eps"])
    if family == "cloud-blowup":
        base = generators.gen_cycle(int(params["base"]))
        return generators.gen_cloud_blowup(base, int(params["f"]), int(params["c"]))
    if family == "random":
        return generators.gen_random(
            int(params["n"]),
            float(params["edge_prob"]),
            (int(params.get("wmin", 1)), int(params.get("wmax", 10))),
            int(params.get("graph_seed", 0)),
        )
    raise BadInput(f"unknown family {family!r}")


def expand_matrix(config: dict[str, Any]) -> list[dict[str, Any]]:
    """One run description per (matrix entry, grid point)."""
    runs = []
    for entry in config.get("matrix", []):
        family = entry["family"]
        if family not in FAMILY_PARAMS:
            raise BadInput(f"unknown family {family!r}")
        grid = entry.get("grid", {})
        names = sorted(grid)
        for values in itertools.product(*(grid[name] for name in names)):
            params = dict(zip(names, values))
            for name in ("k", "f"):
                if name not in params:
                    raise BadInput(f"grid for {family} lacks {name!r}")
            algo = entry.get("algo", "greedy")
            eta = entry.get("eta")
            key = "|".join(
                [family, algo, f"eta={eta}"] + [f"{name}={params[name]}" for name in names]
            )
            runs.append(
                {
                    "row_key": key,
                    "family": family,
                    "params": params,
                    "algo": algo,
                    "eta": eta,
                    "competition": entry.get("competition", "2f"),
                    "preserver": entry.get("preserver", EXACT),
                    "verify": bool(entry.get("verify", False)),
                }
            )
    return runs


def run_row(run: dict[str, Any], seed: int, budget: Budget) -> dict[str, Any]:
    params = run["params"]
    row: dict[str, Any] = {name: "" for name in CSV_COLUMNS}
    row.update(
        schema_version=CSV_SCHEMA_VERSION,
        row_key=run["row_key"],
        family=run["family"],
        params=json.dumps(params, sort_keys=True),
        algo=run["algo"],
        k=str(Fraction(params["k"])),
        f=int(params["f"]),
        eta="" if run["eta"] is None else str(run["eta"]),
        seed=seed,
    )
    try:
        g = _generate(run["family"], params)
        row.update(n=g.n, m=g.m)
        k = Fraction(params["k"])
        f = int(params["f"])
        eta = None if run["eta"] is None else Fraction(run["eta"])
        body = run_build(
            g, run["algo"], k, f, run["competition"], eta, run["preserver"], seed,
            verify=False, report_f=(), budget=budget,
        )
        h_weight = Fraction(body["spanner"]["weight"])
        row.update(
            spanner_size=body["spanner"]["size"],
            spanner_weight=str(h_weight),
            mst_weight=str(body["mst_weight"]),
            lightness=str(body["lightness"]),
            preserver_weight=str(body["preserver"]["weight"]),
            preserver_mode=body["preserver"]["mode"] + ("-fallback" if body["preserver"]["fell_back"] else ""),
        )
        for column, level in (("ell_f", f), ("ell_2f_minus_1", 2 * f - 1), ("ell_2f", 2 * f)):
            if level < 0:
                continue
            choice = preserver_for(g, level, run["preserver"], budget)
            suffix = "" if choice.mode == run["preserver"] else "*"
            row[column] = str(h_weight / choice.weight) + suffix
        if run["verify"]:
            try:
                h = g.subgraph(body["spanner"]["edge_ids"])
                row["ft_verdict"] = is_ft_spanner(h, g, k, f, budget).verdict
            except BudgetExceeded:
                row["ft_verdict"] = "skipped-budget"
        row["status"] = "ok"
    except (BudgetExceeded, PackingError, ValueError, BadInput, KeyError) as exc:
        row["status"] = "error"
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _read_rows(path: Path) -> list[dict[str, str]]:
    if not path.exists() or path.stat().st_size == 0:
        return []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_COLUMNS:
            raise BadInput(f"{path} has a different column layout; refusing to resume")
        return list(reader)


def cmd_experiment(args: argparse.Namespace) -> int:
    try:
        config = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read config {args.config}: {exc}") from exc
    seed = args.seed if args.seed is not None else int(config.get("seed", _seed(args)))
    runs = expand_matrix(config)
    out = Path(args.output) if args.output else None
    existing = _read_rows(out) if out else []
    done = {row["row_key"] for row in existing}
    budget = _budget(args)
    fresh = [run_row(run, seed, budget) for run in runs if run["row_key"] not in done]
    rows = sorted([*existing, *fresh], key=lambda r: r["row_key"])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if out:
        tmp = out.with_suffix(out.suffix + ".tmp")
        tmp.write_text(buf.getvalue(), encoding="utf-8")
        tmp.replace(out)
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ftspan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate an instance in edge-list format")
    p.add_argument("--family", required=True, choices=generators.FAMILIES)
    p.add_argument("--W", type=_fraction, default=Fraction(10))
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--f", type=int, default=1)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--k", type=_fraction, default=Fraction(2))
    p.add_argument("--chord-eps", type=_fraction, default=Fraction(1, 4))
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--wmin", type=int, default=1)
    p.add_argument("--wmax", type=int, default=10)
    p.add_argument("--input", help="base graph for cloud-blowup (default: unit n-cycle)")
    p.add_argument("--output")
    p.add_argument("--seed", type=int)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("build", help="build a fault-tolerant spanner and report metrics")
    _add_common(p)
    p.add_argument("--algo", choices=("greedy", "poly", "poly-eta"), default="greedy")
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--eta", type=_fraction)
    p.add_argument("--competition", choices=("2f", "2+eta"), default="2f")
    p.add_argument("--preserver", choices=MODES, default=EXACT)
    p.add_argument("--threshold", type=_fraction, default=DEFAULT_THRESHOLD)
    p.add_argument("--c-const", type=float, default=DEFAULT_C_CONST)
    p.add_argument("--report-f", type=int, nargs="*", default=[], help="extra competition levels to report")
    p.add_argument("--verify", action="store_true", help="run the exhaustive fault-tolerance check")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds in the report")
    p.set_defaults(handler=cmd_build)

    p = sub.add_parser("verify", help="exhaustively check a spanner")
    _add_common(p)
    p.add_argument("--spanner", required=True, help="build report, JSON id list, or plain id list")
    p.add_argument("--f", type=int, required=True)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("metrics", help="lightness and competitive lightness of a subgraph")
    _add_common(p, stretch=False)
    p.add_argument("--spanner", help="subgraph edge ids (default: the whole graph)")
    p.add_argument("--f", dest="f_values", type=int, nargs="+", default=[0])
    p.add_argument("--preserver", choices=MODES, default=EXACT)
    p.set_defaults(handler=cmd_metrics)

    p = sub.add_parser("pack", help="forest packing of a connectivity preserver")
    _add_common(p, stretch=False)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--preserver-f", type=int, help="fault parameter of the preserver (default: level - 1)")
    p.add_argument("--preserver", choices=MODES, default=EXACT)
    p.set_defaults(handler=cmd_pack)

    p = sub.add_parser("replay-analysis", help="per-forest host-graph and subsampling chain table")
    _add_common(p)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--eta", type=_fraction)
    p.add_argument("--competition", choices=("2f", "2+eta"), default="2f")
    p.add_argument("--preserver", choices=MODES, default=EXACT)
    p.add_argument("--mode", choices=HOST_MODES, default="single")
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(handler=cmd_replay)

    p = sub.add_parser("experiment", help="run a parameter sweep into a CSV file")
    p.add_argument("--config", required=True, help="JSON sweep description")
    p.add_argument("--output", help="CSV path; existing rows are kept and skipped")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget-fault-sets", type=int, default=Budget.max_fault_sets)
    p.add_argument("--budget-subset-edges", type=int, default=Budget.max_subset_edges)
    p.add_argument("--budget-cyclomatic", type=int, default=Budget.max_cyclomatic)
    p.add_argument("--budget-search-nodes", type=int, default=Budget.max_search_nodes)
    p.set_defaults(handler=cmd_experiment)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_BAD_INPUT
    try:
        return args.handler(args)
    except BudgetExceeded as exc:
        print(f"ftspan: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PackingError as exc:
        print(f"ftspan: packing failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    except (BadInput, GraphFormatError, ValueError) as exc:
        print(f"ftspan: bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
