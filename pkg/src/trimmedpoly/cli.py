"""Batch command-line front end.

Subcommands: eval, interp, roundtrip, bench, selftest. Exit codes:
0 success, 1 usage or validation failure, 2 property failure. Diagnostics
go to stderr, data to the requested files.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .algo import (
    EvalTable,
    Grid,
    naive_trimmed_eval,
    run_counted,
    trimmed_eval,
    trimmed_interp,
    yates_eval,
)
from .combinat import CapacityError, ebc, ebc_cum, enumerate_trimmed, rank, unrank
from .field import PrimeModulus
from .jsonio import (
    eval_table_from_dict,
    eval_table_to_dict,
    grid_from_dict,
    sparse_poly_from_dict,
    sparse_poly_to_dict,
)
from .linalg import ZeroPivotError, build_vandermonde, lu_decompose
from .poly import ValidationError, from_sparse, random_poly, to_sparse

BENCH_HEADER = "algo,n,d,D,p,N,wall_time_ns,mul,add,inv,mul_per_Nn"
_BENCH_ALGOS = {
    "trimmed": trimmed_eval,
    "naive": naive_trimmed_eval,
    "yates": yates_eval,
}


class _Parser(argparse.ArgumentParser):
    """argparse maps usage errors to exit code 2; this artifact uses 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _fail(message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    return 1


def _read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        obj = json.load(handle)
    if not isinstance(obj, dict):
        raise ValidationError(f"{path}: top-level JSON value must be an object")
    return obj


def _write_json(path: str, obj: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(obj, handle, indent=2)
        handle.write("\n")


def cmd_eval(args) -> int:
    try:
        poly = from_sparse(sparse_poly_from_dict(_read_json(args.poly)))
        if args.grid is not None:
            grid = grid_from_dict(_read_json(args.grid))
        elif args.grid_gen == "seq":
            grid = Grid.sequential(poly.modulus, poly.n, poly.d)
        else:
            grid = Grid.random(poly.modulus, poly.n, poly.d, args.seed)
        table = trimmed_eval(poly, grid)
        _write_json(args.out, eval_table_to_dict(table))
    except (ValidationError, CapacityError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        return _fail(str(exc))
    return 0


def cmd_interp(args) -> int:
    try:
        table = eval_table_from_dict(_read_json(args.evals))
        grid = grid_from_dict(_read_json(args.grid))
        poly = trimmed_interp(table, grid)
        _write_json(args.out, sparse_poly_to_dict(to_sparse(poly)))
    except (ValidationError, CapacityError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        return _fail(str(exc))
    return 0


def cmd_roundtrip(args) -> int:
    try:
        modulus = PrimeModulus(args.prime)
        if args.n < 0 or args.d < 1 or args.D < 0 or args.trials < 0:
            raise ValidationError(
                "need n >= 0, d >= 1, D >= 0 and trials >= 0")
        ebc_cum(args.n, args.D, args.d)  # capacity guard before any trial
    except (ValidationError, CapacityError, ValueError) as exc:
        return _fail(str(exc))
    for trial in range(args.trials):
        trial_seed = args.seed + trial
        poly = random_poly(args.n, args.d, args.D, modulus, trial_seed)
        grid = Grid.random(modulus, args.n, args.d, trial_seed)
        table = trimmed_eval(poly, grid)
        ok = naive_trimmed_eval(poly, grid) == table
        if ok:
            values = list(table.values)
            if args.corrupt and values:
                values[0] = (values[0] + 1) % modulus.p
                table = EvalTable(modulus, table.n, table.d, table.D, values)
            ok = trimmed_interp(table, grid) == poly
        if not ok:
            sys.stderr.write(
                f"trial {trial} failed: rerun with --seed {trial_seed} "
                f"--trials 1\n")
            return 2
        print(f"trial {trial}: ok")
    return 0


def _parse_range(text: str, key: str) -> list[int]:
    values = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo_text, hi_text = chunk.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValidationError(f"{key}: empty range {chunk!r}")
            values.extend(range(lo, hi + 1))
        else:
            values.append(int(chunk))
    if not values or min(values) < 1:
        raise ValidationError(f"{key}: values must be >= 1")
    return values


def parse_sweep(spec: str) -> list[tuple[int, int, int]]:
    """Instance list from a spec like ``n=2..8;d=1,2;D=nd/4,nd/2,nd``.

    Assignments are separated by ';'. n and d take single values, comma
    lists, or ``lo..hi`` ranges. D takes the tokens nd, nd/2, nd/4
    (fractions round up) or explicit integers.
    """
    ns = ds = dtokens = None
    for assign in spec.split(";"):
        assign = assign.strip()
        if not assign:
            continue
        if "=" not in assign:
            raise ValidationError(f"sweep entry {assign!r} is not key=value")
        key, _, value = assign.partition("=")
        key = key.strip()
        if key == "n":
            ns = _parse_range(value, "n")
        elif key == "d":
            ds = _parse_range(value, "d")
        elif key == "D":
            dtokens = [tok.strip() for tok in value.split(",") if tok.strip()]
        else:
            raise ValidationError(f"unknown sweep key {key!r}")
    if not ns or not ds or not dtokens:
        raise ValidationError("sweep must assign n, d and D")
    instances = []
    for n in ns:
        for d in ds:
            budgets = []
            for tok in dtokens:
                if tok == "nd":
                    budgets.append(n * d)
                elif tok == "nd/2":
                    budgets.append(-(-n * d // 2))
                elif tok == "nd/4":
                    budgets.append(-(-n * d // 4))
                else:
                    try:
                        budgets.append(int(tok))
                    except ValueError:
                        raise ValidationError(
                            f"D token {tok!r} is not nd, nd/2, nd/4 or an "
                            f"integer") from None
            seen = set()
            for D in budgets:
                if D < 0:
                    raise ValidationError(f"negative D = {D} in sweep")
                if D not in seen:
                    seen.add(D)
                    instances.append((n, d, D))
    return instances


def cmd_bench(args) -> int:
    try:
        algos = [a.strip() for a in args.algos.split(",") if a.strip()]
        if not algos:
            raise ValidationError("empty algorithm list")
        for name in algos:
            if name not in _BENCH_ALGOS:
                raise ValidationError(
                    f"unknown algorithm {name!r}; choose from "
                    f"{sorted(_BENCH_ALGOS)}")
        instances = parse_sweep(args.sweep)
        modulus = PrimeModulus(args.prime)
    except (ValidationError, ValueError) as exc:
        return _fail(str(exc))
    lines = [BENCH_HEADER]
    for n, d, D in instances:
        if modulus.p < d + 1:
            sys.stderr.write(
                f"skip n={n} d={d} D={D}: p={modulus.p} < d+1\n")
            continue
        try:
            size = ebc_cum(n, D, d)
        except CapacityError:
            sys.stderr.write(
                f"skip n={n} d={d} D={D}: table size exceeds 2^63\n")
            continue
        poly = random_poly(n, d, D, modulus, args.seed + _instance_seed(n, d, D))
        grid = Grid.sequential(modulus, n, d)
        for name in algos:
            if name == "yates" and D != n * d:
                sys.stderr.write(
                    f"skip yates for n={n} d={d} D={D}: needs D = n*d\n")
                continue
            start = time.perf_counter_ns()
            _, counter = run_counted(_BENCH_ALGOS[name], poly, grid)
            elapsed = time.perf_counter_ns() - start
            ratio = counter.mul_count / (size * n)
            lines.append(
                f"{name},{n},{d},{D},{modulus.p},{size},{elapsed},"
                f"{counter.mul_count},{counter.add_count},"
                f"{counter.inv_count},{ratio:.6f}")
    try:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as exc:
        return _fail(str(exc))
    return 0


def _instance_seed(n: int, d: int, D: int) -> int:
    """Stable per-instance seed offset so sweeps are reproducible."""
    return ((n * 131 + d) * 131 + D) * 131


# Embedded invariant suites for `selftest`.

def _suite_extended_pascal() -> None:
    for n in range(1, 7):
        for d in range(1, 5):
            for k in range(n * d + 1):
                window = sum(ebc(n - 1, k - j, d) for j in range(d + 1))
                assert ebc(n, k, d) == window, (n, k, d)
            for D in range(n * d + 1):
                split = sum(ebc_cum(n - 1, D - i, d) for i in range(d + 1))
                assert ebc_cum(n, D, d) == split, (n, D, d)


def _suite_lu_reconstruction() -> None:
    import random as _random

    rng = _random.Random(7)
    for p in (101, 65537):
        modulus = PrimeModulus(p)
        for d in range(1, 7):
            nodes = rng.sample(range(p), d + 1)
            van = build_vandermonde(nodes, modulus)
            fac = lu_decompose(van)
            assert fac.L @ fac.U == van, (p, nodes)
        try:
            lu_decompose(build_vandermonde([1, 1, 2], modulus))
        except ZeroPivotError:
            pass
        else:
            raise AssertionError("duplicate nodes must fail to decompose")


def _suite_rank_unrank() -> None:
    for n in range(1, 5):
        for d in range(1, 4):
            for D in range(n * d + 1):
                for position, exps in enumerate(enumerate_trimmed(n, d, D)):
                    assert rank(exps, n, d, D) == position
                    assert unrank(position, n, d, D) == exps


def _suite_yates_consistency() -> None:
    modulus = PrimeModulus(17)
    for n in range(1, 4):
        for d in range(1, 3):
            poly = random_poly(n, d, n * d, modulus, seed=n * 10 + d)
            grid = Grid.random(modulus, n, d, seed=n + d)
            assert yates_eval(poly, grid) == trimmed_eval(poly, grid)


_SUITES = (
    ("extended-pascal", _suite_extended_pascal),
    ("lu-reconstruction", _suite_lu_reconstruction),
    ("rank-unrank", _suite_rank_unrank),
    ("yates-consistency", _suite_yates_consistency),
)


def cmd_selftest(args) -> int:
    results = {}
    for name, suite in _SUITES:
        try:
            suite()
            results[name] = True
        except Exception:
            results[name] = False
    if args.json:
        print(json.dumps(results))
    else:
        for name, ok in results.items():
            print(f"suite {name}: {'pass' if ok else 'FAIL'}")
    failed = [name for name, ok in results.items() if not ok]
    if failed:
        sys.stderr.write(f"failed suites: {', '.join(failed)}\n")
        return 2
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="trimmedpoly",
                     description="Trimmed-grid polynomial evaluation and "
                                 "interpolation over prime fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a polynomial on a grid")
    p_eval.add_argument("--poly", required=True, help="polynomial JSON file")
    grid_src = p_eval.add_mutually_exclusive_group(required=True)
    grid_src.add_argument("--grid", help="grid JSON file")
    grid_src.add_argument("--grid-gen", choices=("seq", "rand"),
                          help="generate the grid instead of loading one")
    p_eval.add_argument("--seed", type=int, default=0,
                        help="seed for --grid-gen rand")
    p_eval.add_argument("--out", required=True, help="output table JSON file")
    p_eval.set_defaults(func=cmd_eval)

    p_interp = sub.add_parser("interp",
                              help="interpolate a polynomial from a table")
    p_interp.add_argument("--evals", required=True,
                          help="evaluation table JSON file")
    p_interp.add_argument("--grid", required=True, help="grid JSON file")
    p_interp.add_argument("--out", required=True,
                          help="output polynomial JSON file")
    p_interp.set_defaults(func=cmd_interp)

    p_round = sub.add_parser("roundtrip",
                             help="random eval/interp consistency trials")
    p_round.add_argument("--n", type=int, required=True)
    p_round.add_argument("--d", type=int, required=True)
    p_round.add_argument("--D", type=int, required=True)
    p_round.add_argument("--prime", type=int, required=True)
    p_round.add_argument("--seed", type=int, default=0)
    p_round.add_argument("--trials", type=int, required=True)
    p_round.add_argument("--corrupt", action="store_true",
                         help="harness self-test: corrupt each table and "
                              "expect failure")
    p_round.set_defaults(func=cmd_roundtrip)

    p_bench = sub.add_parser("bench", help="operation-count scaling sweep")
    p_bench.add_argument("--sweep", required=True,
                         help="e.g. 'n=2..8;d=1,2;D=nd/4,nd/2,nd'")
    p_bench.add_argument("--algos", required=True,
                         help="comma list from: trimmed,naive,yates")
    p_bench.add_argument("--prime", type=int, default=65537)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", required=True, help="output CSV file")
    p_bench.set_defaults(func=cmd_bench)

    p_self = sub.add_parser("selftest", help="run embedded invariant suites")
    p_self.add_argument("--json", action="store_true",
                        help="machine-readable pass/fail map")
    p_self.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
