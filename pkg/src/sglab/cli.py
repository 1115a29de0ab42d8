"""Command-line entry point.

Subcommands:

* ``example-2-1``  block-swap battery (weak generator limit, law failure)
* ``example-2-3``  Cayley battery (resolvent limit without semigroup limit)
* ``remark``       integral representations and the k-power sweep
* ``tk-matrix``    condition checks over the shipped instance suite
* ``converge``     ad-hoc convergence measurement of a named family

Machine-readable output (JSON report, or CSV for ``converge``) goes to
the destination path or standard output; human-readable summaries go to
standard error.  Exit codes: 0 all claim rows pass, 1 a claim row failed,
2 configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time


from .experiments import (
    ConfigError,
    ExperimentConfig,
    run_example_2_1,
    run_example_2_3,
    run_remark_representations,
)
from .linalg import identity, zero_operator
from .operators import block_swap, cayley_generator, contraction_v, rescaled_generator
from .reporting import convergence_csv, dump_json
from .topology import default_test_set, measure_convergence
from .trotter_kato import default_suite, run_suite

EXPERIMENTS = {
    "example-2-1": run_example_2_1,
    "example-2-3": run_example_2_3,
    "remark": run_remark_representations,
}

CONVERGE_FAMILIES = ("block-swap", "rescaled-swap", "cayley", "scalar")


def _parse_int_list(text: str) -> tuple[int, ...]:
    """'2,4,8' -> (2,4,8); '2:16' -> 2..16; '2:16:2' -> 2,4,...,16."""
    text = text.strip()
    if ":" in text:
        parts = [int(v) for v in text.split(":")]
        if len(parts) == 2:
            lo, hi, step = parts[0], parts[1], 1
        elif len(parts) == 3:
            lo, hi, step = parts
        else:
            raise ValueError(f"bad range {text!r}")
        return tuple(range(lo, hi + 1, step))
    return tuple(int(v) for v in text.split(","))


def _parse_complex_list(text: str) -> tuple[complex, ...]:
    return tuple(complex(v.strip()) for v in text.split(","))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sglab",
        description="operator-semigroup approximation laboratory",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sp):
        sp.add_argument("--config", metavar="PATH",
                        help="JSON file with ExperimentConfig fields")
        sp.add_argument("--output", choices=("json", "csv"), default="json")
        sp.add_argument("--dest", default="-", metavar="PATH",
                        help="output path, '-' for stdout")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--n-grid", default=None, metavar="LIST",
                        help="e.g. 2,4,8,16 or 2:16")
        sp.add_argument("--D", type=int, default=None)
        sp.add_argument("--p", type=float, default=None)
        sp.add_argument("--t-max", type=float, default=None)
        sp.add_argument("--t-points", type=int, default=None)
        sp.add_argument("--lambda-grid", default=None, metavar="LIST",
                        help="e.g. 1,1.5,2 or 1,2,1+1j")
        sp.add_argument("--quad-nodes", type=int, default=None)
        sp.add_argument("--contour-nodes", type=int, default=None)
        sp.add_argument("--verbose", action="store_true",
                        help="per-row timing on standard error")

    for name in ("example-2-1", "example-2-3", "remark", "tk-matrix"):
        add_common(sub.add_parser(name))

    conv = sub.add_parser("converge")
    add_common(conv)
    conv.add_argument("--family", choices=CONVERGE_FAMILIES, required=True)
    conv.add_argument("--n", default="2:16", metavar="RANGE",
                      help="n values, e.g. 2:16 or 2,4,8")
    conv.add_argument("--topology", choices=("norm", "strong", "weak"),
                      default="weak")
    return parser


def _config_from_args(args, defaults: ExperimentConfig) -> ExperimentConfig:
    values = dataclasses.asdict(defaults)
    values["tolerances"] = defaults.tolerances
    explicit_dim = False
    if args.config:
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except OSError as exc:
            raise ConfigError("config", f"cannot read {args.config}: {exc}")
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"invalid JSON in {args.config}: {exc}")
        if not isinstance(file_cfg, dict):
            raise ConfigError("config", "top level must be an object")
        known = {f.name for f in dataclasses.fields(ExperimentConfig)}
        for key, val in file_cfg.items():
            if key not in known:
                raise ConfigError(key, "unknown config field")
            if key == "lambda_grid":
                val = tuple(
                    complex(v[0], v[1]) if isinstance(v, list) else complex(v)
                    for v in val
                )
            elif key in ("n_grid", "t_grid", "k_list", "dunford_t"):
                val = tuple(val)
            elif key == "tolerances":
                from .experiments import ToleranceLadder

                val = ToleranceLadder(**val)
            if key == "D":
                explicit_dim = True
            values[key] = val
    if args.seed is not None:
        values["seed"] = args.seed
    if args.n_grid is not None:
        values["n_grid"] = _parse_int_list(args.n_grid)
    if args.D is not None:
        values["D"] = args.D
        explicit_dim = True
    if not explicit_dim:
        values["D"] = None  # re-derive 2 * max(n_grid)
    if args.p is not None:
        values["p"] = args.p
    if args.t_max is not None or args.t_points is not None:
        t_max = args.t_max if args.t_max is not None else 5.0
        pts = args.t_points if args.t_points is not None else 101
        if pts < 1:
            raise ConfigError("t_grid", "needs at least one point")
        values["t_grid"] = tuple(
            t_max * i / max(1, pts - 1) for i in range(pts)
        )
    if args.lambda_grid is not None:
        try:
            values["lambda_grid"] = _parse_complex_list(args.lambda_grid)
        except ValueError as exc:
            raise ConfigError("lambda_grid", str(exc))
    if args.quad_nodes is not None:
        values["quad_nodes"] = args.quad_nodes
    if args.contour_nodes is not None:
        values["contour_nodes"] = args.contour_nodes
    try:
        return ExperimentConfig(**values)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError("config", str(exc))


def _emit(text: str, dest: str) -> None:
    if dest == "-":
        sys.stdout.write(text)
    else:
        try:
            with open(dest, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise ConfigError("dest", f"cannot write {dest}: {exc}")


def _tk_matrix_report(cfg: ExperimentConfig) -> dict:
    suite = default_suite(p=cfg.p, seed=cfg.seed, n_grid=cfg.n_grid)
    result = run_suite(suite)
    from .reporting import to_jsonable

    rows = []
    for key, ok in sorted(result.pattern.items()):
        kind, imp = key.split(":")
        rows.append({
            "claim": key,
            "statement": (
                f"implication {imp} stays consistent on every instance"
                if kind == "consistent"
                else f"a named instance witnesses that {imp} fails"
            ),
            "measured": result.matrix.get(imp),
            "witnesses": list(result.counterexample_instances.get(imp, ())),
            "passed": ok,
        })
    report = {
        "schema": 1,
        "kind": "tk-matrix",
        "config": to_jsonable(cfg),
        "environment": {
            "float": "IEEE-754 binary64",
            "package": "sglab 0.1.0",
            "seed": cfg.seed,
        },
        "matrix": result.matrix,
        "counterexample_instances": {
            k: list(v) for k, v in result.counterexample_instances.items()
        },
        "instances": [
            {
                "name": r.instance,
                "mode": r.mode,
                "growth_bound_ok": r.growth_bound_ok,
                "domain_note": r.domain_note,
                "conditions": {
                    c: {
                        "verdict": res.verdict,
                        "delta": list(res.measurement.delta),
                        "n_grid": list(res.measurement.n_grid),
                        "measurement_verdict": str(res.measurement.verdict),
                        "witness": to_jsonable(res.witness),
                        "notes": list(res.notes),
                    }
                    for c, res in r.conditions.items()
                },
                "lambda_uniformity": {
                    "verdict": str(r.lambda_uniformity.verdict),
                    "delta": list(r.lambda_uniformity.delta),
                    "grid": to_jsonable(list(r.lambda_uniformity.grid)),
                },
            }
            for r in result.reports
        ],
        "rows": rows,
        "passed": result.pattern_ok(),
    }
    return report


def _print_matrix_summary(report: dict) -> None:
    order = ("a", "b", "c", "d")
    sys.stderr.write("implication matrix (row P, column Q: P => Q):\n")
    mark = {"consistent": "ok", "counterexample-found": "XX", "untested": "--"}
    sys.stderr.write("      " + "".join(f"{q:>6}" for q in order) + "\n")
    for p_cond in order:
        cells = []
        for q in order:
            if p_cond == q:
                cells.append("     .")
            else:
                cells.append(f"{mark[report['matrix'][f'{p_cond}=>{q}']]:>6}")
        sys.stderr.write(f"   {p_cond:>3}" + "".join(cells) + "\n")
    for key, insts in sorted(report["counterexample_instances"].items()):
        sys.stderr.write(f"   {key} refuted by: {', '.join(insts)}\n")


def _run_converge(args) -> int:
    cfg = _config_from_args(args, ExperimentConfig(name="converge"))
    try:
        n_grid = _parse_int_list(args.n)
    except ValueError as exc:
        raise ConfigError("n", str(exc))
    if not n_grid or any(n < 1 for n in n_grid):
        raise ConfigError("n", "needs positive integers")
    D = cfg.D if args.D is not None else 2 * max(n_grid)
    if D < 2 * max(n_grid) and args.family != "scalar":
        raise ConfigError("D", f"must be >= 2 * max(n) = {2 * max(n_grid)}")
    tests = default_test_set(D, cfg.p, cfg.seed)
    if args.family == "block-swap":
        seq = {n: block_swap(n, D) for n in n_grid}
        limit = zero_operator(D)
    elif args.family == "rescaled-swap":
        seq = {n: rescaled_generator(n, D) for n in n_grid}
        limit = -1.0 * identity(D)
    elif args.family == "cayley":
        seq = {n: cayley_generator(contraction_v(n, D)) for n in n_grid if n >= 2}
        limit = -1.0 * identity(D)
        if not seq:
            raise ConfigError("n", "cayley family needs n >= 2")
    else:
        seq = {n: (-(1.0 + 1.0 / n)) * identity(D) for n in n_grid}
        limit = -1.0 * identity(D)
    report = measure_convergence(seq, limit, args.topology, tests)
    if args.output == "csv":
        _emit(convergence_csv(report), args.dest)
    else:
        payload = {
            "schema": 1,
            "kind": "converge",
            "family": args.family,
            "topology": args.topology,
            "D": D,
            "p": cfg.p,
            "seed": cfg.seed,
            "report": report,
        }
        _emit(dump_json(payload), args.dest)
    sys.stderr.write(
        f"converge {args.family} [{args.topology}]: {report.verdict}\n"
    )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, matching the config-error code.
        return int(exc.code or 0)
    try:
        if args.subcommand == "converge":
            return _run_converge(args)
        if args.subcommand == "tk-matrix":
            cfg = _config_from_args(args, ExperimentConfig(name="tk-matrix"))
            t0 = time.perf_counter()
            report = _tk_matrix_report(cfg)
            if args.verbose:
                sys.stderr.write(
                    f"tk-matrix suite in {time.perf_counter() - t0:.2f}s\n"
                )
            if args.output == "csv":
                raise ConfigError(
                    "output",
                    "csv is for convergence tables; use the converge "
                    "subcommand or json output",
                )
            _emit(dump_json(report), args.dest)
            _print_matrix_summary(report)
            if not report["passed"]:
                for row in report["rows"]:
                    if not row["passed"]:
                        sys.stderr.write(f"FAILED: {row['claim']}\n")
                return 1
            return 0
        # experiment subcommands
        runner = EXPERIMENTS[args.subcommand]
        defaults = (
            ExperimentConfig.for_remark()
            if args.subcommand == "remark"
            else ExperimentConfig(name=args.subcommand)
        )
        cfg = _config_from_args(args, defaults)
        if args.output == "csv":
            raise ConfigError(
                "output",
                "csv is for convergence tables; use the converge subcommand "
                "or json output",
            )
        t0 = time.perf_counter()
        report = runner(cfg)
        if args.verbose:
            sys.stderr.write(
                f"{args.subcommand} in {time.perf_counter() - t0:.2f}s\n"
            )
        payload = dump_json(report)
        _emit(payload, args.dest)
        failed = [r for r in report.rows if not r.passed]
        sys.stderr.write(
            f"{args.subcommand}: {len(report.rows) - len(failed)}/"
            f"{len(report.rows)} rows pass\n"
        )
        if failed:
            for row in failed:
                sys.stderr.write(f"FAILED: {row.claim}: {row.statement}\n")
            return 1
        return 0
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
