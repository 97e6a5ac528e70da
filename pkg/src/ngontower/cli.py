"""Command-line front end.

Subcommands: build, verify, tables, compile, render, constructible.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import sys
from dataclasses import dataclass

from .invariant_sets import InvalidFactor, build_invariant_sets
from .residues import KNOWN_FERMAT_PRIMES, FermatParams, InvalidN

USAGE_ERROR = 2
VERIFY_ERROR = 1


@dataclass
class RunConfig:
    n: int = 0
    schedule: str = "pruned"
    precision: int | None = None
    factor: int = 3
    assume_fermat_prime: bool = False
    out: str | None = None
    kind: str | None = None
    i: int | None = None
    j: int | None = None
    m: int | None = None
    max_vertices: int = 0
    oracle: bool = True


def _params_or_exit(cfg: RunConfig) -> FermatParams:
    try:
        return FermatParams.from_n(cfg.n, assume_prime=cfg.assume_fermat_prime)
    except InvalidN as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def cmd_build(cfg: RunConfig) -> int:
    from .report import render_report
    from .tower import SignAmbiguous, VerificationFailure, build_tower
    from .towerfile import dump_tower
    from .verify import OracleMismatch, oracle_check_tower

    _params_or_exit(cfg)
    try:
        tower = build_tower(
            cfg.n,
            kind=cfg.schedule,
            precision=cfg.precision,
            factor=cfg.factor,
            assume_prime=cfg.assume_fermat_prime,
        )
        if cfg.oracle and tower.nodes:
            oracle_check_tower(tower)
    except (VerificationFailure, SignAmbiguous, OracleMismatch) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return VERIFY_ERROR
    except InvalidFactor as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if cfg.out:
        dump_tower(tower, cfg.out)
        print(f"tower written to {cfg.out}")
    print(render_report(tower))
    return 0


def cmd_verify(args) -> int:
    from .towerfile import load_tower
    from .verify import verify_tower

    tower = load_tower(args.tower)
    failures = verify_tower(tower, precision=args.precision, oracle=not args.no_oracle)
    if failures:
        for f in failures:
            print(f"FAIL: {f}", file=sys.stderr)
        return VERIFY_ERROR
    print(
        f"tower for n={tower.params.n} verified: {len(tower.nodes)} nodes, "
        f"oracle-checked {tower.report.oracle_checked if tower.report else 0} product expressions"
    )
    return 0


def _emit_combination(comb) -> str:
    terms = [f"{c}*G{k}" for k, c in comb.terms()]
    return " + ".join([str(comb.constant)] + terms)


def cmd_tables(cfg: RunConfig) -> int:
    from .report import f_sign_sets
    from .period_algebra import set_product, set_square
    from .splitting import mu_groups, mu_table
    from .tower import CosineCache

    params = _params_or_exit(cfg)
    table = build_invariant_sets(params, factor=cfg.factor)
    kind = cfg.kind
    if kind == "sets":
        for row in table.sets:
            print(" ".join(str(p) for p in row))
    elif kind == "product":
        if cfg.i is None or cfg.j is None:
            print("error: --kind product needs --i and --j", file=sys.stderr)
            return USAGE_ERROR
        print(_emit_combination(set_product(cfg.i, cfg.j, table)))
    elif kind == "square":
        if cfg.i is None:
            print("error: --kind square needs --i", file=sys.stderr)
            return USAGE_ERROR
        print(_emit_combination(set_square(cfg.i, table)))
    elif kind == "mu":
        if cfg.m is None:
            print("error: --kind mu needs --m", file=sys.stderr)
            return USAGE_ERROR
        for k, v in enumerate(mu_table(cfg.m, table), start=1):
            print(f"{k} {v}")
    elif kind == "ksets":
        if cfg.m is None:
            print("error: --kind ksets needs --m", file=sys.stderr)
            return USAGE_ERROR
        for mult, ks in mu_groups(cfg.m, table).items():
            print(f"K({mult},{1 << cfg.m}) = {' '.join(str(k) for k in ks)}")
    elif kind == "signs":
        cache = CosineCache(params, table, cfg.precision or 128)
        for step, greater in f_sign_sets(table, cache).items():
            if cfg.m is not None and step != cfg.m:
                continue
            print(f"step {step}: {' '.join(str(j) for j in sorted(greater))}")
    else:
        print(f"error: unknown table kind {kind!r}", file=sys.stderr)
        return USAGE_ERROR
    return 0


def cmd_compile(args) -> int:
    from .construction import compile_to_arith, dump_arith, dump_geom, lower_to_geom
    from .towerfile import load_tower

    tower = load_tower(args.tower)
    prog = compile_to_arith(tower)
    if args.target == "arith":
        dump_arith(prog, args.out)
    else:
        geom = lower_to_geom(prog, tower.precision)
        dump_geom(geom, args.out)
    print(f"{args.target} program written to {args.out} ({prog.sqrt_count()} square roots)")
    return 0


def cmd_render(args) -> int:
    from .construction import emit_svg
    from .towerfile import load_tower

    tower = load_tower(args.tower)
    if tower.nodes and tower.nodes[-1].value_left is None:
        print("error: tower has no stored values; rebuild it", file=sys.stderr)
        return USAGE_ERROR
    if tower.report is None or tower.report.p1 is None:
        from .tower import evaluate_tower

        evaluate_tower(tower, tower.precision)
    svg = emit_svg(tower, max_vertices=args.max_vertices)
    with open(args.out, "w") as fh:
        fh.write(svg)
    print(f"svg written to {args.out}")
    return 0


def cmd_constructible(args) -> int:
    n = args.n
    if n < 3:
        print(f"error: need n >= 3, got {n}", file=sys.stderr)
        return USAGE_ERROR
    rest = n
    twos = 0
    while rest % 2 == 0:
        rest //= 2
        twos += 1
    used = []
    for p in KNOWN_FERMAT_PRIMES:
        if rest % p == 0:
            used.append(p)
            rest //= p
    factorization = " * ".join(([f"2^{twos}"] if twos else []) + [str(p) for p in used])
    if rest == 1:
        print(f"yes: {n} = {factorization or '1'} (distinct known Fermat primes)")
    else:
        print(f"no: {n} leaves factor {rest} after 2^{twos} * {used or 1}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ngontower",
        description="Quadratic towers and straightedge/compass programs for regular "
        "n-gons with Fermat-prime n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="derive, verify and store a tower")
    p_build.add_argument("--n", type=int, required=True)
    p_build.add_argument("--schedule", choices=("full", "pruned"), default="pruned")
    p_build.add_argument("--precision", type=int, default=None, help="mantissa bits")
    p_build.add_argument("--factor", type=int, default=3)
    p_build.add_argument("--assume-fermat-prime", action="store_true")
    p_build.add_argument("--no-oracle", action="store_true", help="skip exact product checks")
    p_build.add_argument("--out", default=None)

    p_verify = sub.add_parser("verify", help="re-check a stored tower")
    p_verify.add_argument("--tower", required=True)
    p_verify.add_argument("--precision", type=int, default=None)
    p_verify.add_argument("--no-oracle", action="store_true")

    p_tables = sub.add_parser("tables", help="print derivation tables")
    p_tables.add_argument("--n", type=int, required=True)
    p_tables.add_argument(
        "--kind", required=True, choices=("sets", "product", "square", "mu", "ksets", "signs")
    )
    p_tables.add_argument("--i", type=int, default=None)
    p_tables.add_argument("--j", type=int, default=None)
    p_tables.add_argument("--m", type=int, default=None)
    p_tables.add_argument("--factor", type=int, default=3)
    p_tables.add_argument("--precision", type=int, default=None)
    p_tables.add_argument("--assume-fermat-prime", action="store_true")

    p_compile = sub.add_parser("compile", help="lower a tower to a program")
    p_compile.add_argument("--tower", required=True)
    p_compile.add_argument("--target", choices=("arith", "geom"), required=True)
    p_compile.add_argument("--out", required=True)

    p_render = sub.add_parser("render", help="emit an SVG drawing")
    p_render.add_argument("--tower", required=True)
    p_render.add_argument("--out", required=True)
    p_render.add_argument("--max-vertices", type=int, default=0)

    p_constr = sub.add_parser("constructible", help="Gauss-Wantzel check for any n")
    p_constr.add_argument("n", type=int)

    args = parser.parse_args(argv)
    if args.command == "build":
        cfg = RunConfig(
            n=args.n,
            schedule=args.schedule,
            precision=args.precision,
            factor=args.factor,
            assume_fermat_prime=args.assume_fermat_prime,
            out=args.out,
            oracle=not args.no_oracle,
        )
        return cmd_build(cfg)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "tables":
        cfg = RunConfig(
            n=args.n,
            factor=args.factor,
            precision=args.precision,
            assume_fermat_prime=args.assume_fermat_prime,
            kind=args.kind,
            i=args.i,
            j=args.j,
            m=args.m,
        )
        return cmd_tables(cfg)
    if args.command == "compile":
        return cmd_compile(args)
    if args.command == "render":
        return cmd_render(args)
    if args.command == "constructible":
        return cmd_constructible(args)
    return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
