"""Command-line entry point.

Exit codes: 0 success or verified, 1 bad coloring or falsified
certificate, 2 parameter error, 3 inconclusive or budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bounds as bnd
from . import constructions as con
from .certificate import emit_certificate, load_certificate
from .coloring import ChainColoring
from .errors import CertificateParseError, ParameterError, VerificationError
from .extractor import extract_monochromatic_diamond
from .lattice import (
    chain_count_formula, enumerate_t_chains, format_mask, level_of_embedding_bound_e, parse_target,
    parse_targets,
)
from .lubell import excluded_levels, lubell, max_lubell_P_free, ramsey_upper_by_lubell
from .search import INCONCLUSIVE, Certificate, RamseyInstance, compute_ramsey_number

EXIT_OK, EXIT_BAD, EXIT_PARAM, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAM, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _emit_rows(args, header, rows):
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    table = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(str(r[i])) for r in table) for i in range(len(header))]
    for row in table:
        print("  ".join(str(c).rjust(w) for c, w in zip(row, widths)))


def _instance(args) -> RamseyInstance:
    targets = parse_targets(args.targets)
    if args.k is not None:
        if len(targets) == 1:
            targets = targets * args.k
        elif len(targets) != args.k:
            raise ParameterError(f"--k {args.k} but {len(targets)} targets given")
    return RamseyInstance(tuple(targets), args.t, args.mode)


# --- subcommands --------------------------------------------------------------------

def cmd_chains(args) -> int:
    print(chain_count_formula(args.n, args.t))
    if args.enumerate:
        for ch in enumerate_t_chains(args.n, args.t):
            print(" < ".join(format_mask(s) for s in ch))
    return EXIT_OK


def _excluded(args) -> set[int]:
    ex = set()
    if args.exclude_levels:
        ex |= excluded_levels(args.N, args.exclude_levels)
    if args.exclude_sets:
        ex |= set(args.exclude_sets)
    return ex


def cmd_lubell(args) -> int:
    if args.action == "value":
        family = set(args.sets or [])
        if args.levels:
            family |= excluded_levels(args.N, args.levels)
        print(_frac(lubell(args.N, family)))
        return EXIT_OK
    poset = parse_target(args.target)
    excluded = _excluded(args)
    if args.action == "max":
        res = max_lubell_P_free(args.N, poset, excluded, args.budget_nodes, args.budget_secs)
        print(f"L = {_frac(res.value)} ({res.status}, {res.nodes} nodes)")
        print("family:", " ".join(format_mask(s) for s in res.family))
        if res.status != "exact":
            print(f"upper bound: {_frac(res.upper_bound)}")
            return EXIT_INCONCLUSIVE
        return EXIT_OK
    crit = ramsey_upper_by_lubell(poset, args.k, args.N, excluded, args.source, s=args.s,
                                  node_budget=args.budget_nodes, time_budget=args.budget_secs)
    print(f"k*L = {_frac(crit.lhs)}  vs  N+1-lu(Q) = {_frac(crit.rhs)}  ({crit.source})")
    print(crit.verdict)
    if crit.certified:
        print(f"R_{args.k}(B|{poset.label}) <= {args.N}")
    return EXIT_OK if crit.certified else EXIT_BAD


def _write_cert(cert: Certificate, path: str) -> str:
    emit_certificate(cert, path)
    return path


def cmd_search(args) -> int:
    inst = _instance(args)
    res = compute_ramsey_number(inst, args.n_max, args.budget_nodes, args.budget_secs,
                                symmetry=not args.no_symmetry, n_min=args.n_min)
    for n, v in sorted(res.verdicts.items()):
        extra = f" (budget: {v.stats.budget_hit})" if v.status == INCONCLUSIVE else ""
        print(f"B_{n}: {v.status}, {v.stats.nodes} nodes, group {v.stats.group}{extra}")
    paths = []
    if args.emit_cert:
        if res.lower_certificate is not None:
            paths.append(_write_cert(res.lower_certificate, f"{args.emit_cert}.lower.cert"))
        if res.upper_certificate is not None:
            paths.append(_write_cert(res.upper_certificate, f"{args.emit_cert}.upper.cert"))
    if res.value is not None:
        print(f"R = {res.value}")
    elif res.status == INCONCLUSIVE:
        print(f"R >= {res.lower_bound} (inconclusive at B_{res.lower_bound})")
    else:
        print(f"R > {args.n_max}")
    for p in paths:
        print(f"certificate: {p}")
    return EXIT_OK if res.value is not None else EXIT_INCONCLUSIVE


def cmd_verify(args) -> int:
    try:
        cert = load_certificate(Path(args.cert), rerun_exhaustion=args.rerun)
    except VerificationError as exc:
        print(f"FALSIFIED: {exc}")
        if exc.verdict is not None and exc.verdict.witness is not None:
            w = exc.verdict.witness
            print(f"witness (color {exc.verdict.color}):", " ".join(format_mask(s) for s in w.images))
        return EXIT_BAD
    except CertificateParseError as exc:
        print(f"MALFORMED: {exc}")
        return EXIT_BAD
    what = "re-run" if cert.kind == "exhaustion" and args.rerun else "checked"
    print(f"VERIFIED {cert.kind} for {cert.instance} at B_{cert.host_n} ({what})")
    return EXIT_OK


def _emit_construction(args, instance: RamseyInstance, coloring: ChainColoring) -> int:
    cert = Certificate("good-coloring", instance, coloring.host_n, coloring)
    try:
        text = emit_certificate(cert, args.out)
    except VerificationError as exc:
        print(f"coloring is not good: {exc}")
        return EXIT_BAD
    if args.out:
        print(f"certificate: {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "level-block":
        targets = parse_targets(args.targets)
        if args.e:
            e_values = args.e
        else:
            e_values = []
            for p in targets:
                e, verified = level_of_embedding_bound_e(p, args.probe_cap)
                if not verified:
                    raise ParameterError(f"e({p.label}) not verified within N <= {args.probe_cap}; pass --e")
                e_values.append(e)
        coloring = con.level_block_coloring(len(targets), e_values)
        return _emit_construction(args, RamseyInstance(tuple(targets), 1, args.mode), coloring)
    if kind == "matching":
        coloring = con.matching_lower_coloring(args.k, args.s)
        inst = RamseyInstance((parse_target(f"matching:{args.s}"),) * args.k, 1, "weak")
        return _emit_construction(args, inst, coloring)
    if kind == "diamond":
        coloring = con.diamond_lower_coloring(args.k, args.r)
        inst = RamseyInstance((parse_target(f"diamond:{args.r}"),) * args.k, 1, "strong")
        return _emit_construction(args, inst, coloring)
    # lll
    if args.seed is None:
        raise ParameterError("construct lll needs --seed")
    targets = parse_targets(args.targets)
    inst = RamseyInstance(tuple(targets), args.t, args.mode)
    params = bnd.LLLParameters.from_targets(targets, args.t)
    coloring, tries = con.sample_good_coloring(inst, params, args.host_n, args.seed, args.attempts)
    if coloring is None:
        print(f"no good coloring in {args.attempts} samples")
        return EXIT_INCONCLUSIVE
    print(f"# good coloring found at sample {tries}")
    return _emit_construction(args, inst, coloring)


def cmd_bounds(args) -> int:
    kind = args.kind
    if kind == "lll":
        params = bnd.LLLParameters.from_targets(parse_targets(args.targets), args.t)
        rows = []
        for n in args.hosts:
            v = bnd.lll_threshold_check(params, n)
            rows.append([n, v.verdict, f"{v.first_margin[0]:.6g}", f"{v.second_margin[0]:.6g}",
                         v.precision, "yes" if v.trivial_coloring else "no"])
        _emit_rows(args, ["n", "verdict", "margin1", "margin2", "prec", "trivial"], rows)
        return EXIT_OK
    if kind == "strong-lower":
        res = bnd.strong_lower_bound(args.k, args.t, args.dims)
        print(f"N* = {res.value}  (arm {res.arm}; arms {res.first_arm}, {res.second_arm})")
        return EXIT_OK
    if kind == "recurrence":
        rows = bnd.comparison_table(args.k_max, args.m_max)
        _emit_rows(args, ["k", "m", "halving", "linear"], rows)
        return EXIT_OK
    if kind == "ct":
        res = bnd.c_t_upper_bound(args.m, args.n, args.N, args.t)
        value = "vacuous" if res.value is None else _frac(res.value)
        flag = " (vacuous as a probability)" if res.vacuous and res.value is not None else ""
        src = "exact counts" if res.exact_counts else "counting bound"
        print(f"c_t <= {value}{flag}  [{src}]")
        return EXIT_OK
    lo, hi = bnd.diamond_bounds(args.k, args.r)
    print(f"{lo} <= R <= {hi}")
    return EXIT_OK


def cmd_extract(args) -> int:
    if args.cert:
        cert = load_certificate(Path(args.cert))
        if cert.coloring is None:
            raise ParameterError("certificate carries no coloring")
        coloring = cert.coloring
    else:
        if args.seed is None:
            raise ParameterError("pass --cert or --seed")
        n = bnd.diamond_bounds(args.k, args.r)[1]
        if n > 22:
            raise ParameterError(f"B_{n} is too large to sample")
        rng = np.random.default_rng(args.seed)
        colors = rng.integers(1, args.k + 1, size=1 << n)
        coloring = ChainColoring(n, 1, args.k, tuple(int(c) for c in colors))
    ex = extract_monochromatic_diamond(args.k, args.r, coloring, strict=not args.loose)
    print(f"color {ex.color}, levels {ex.indices}")
    for s in ex.embedding.images:
        print(f"{s}\t{format_mask(s)}")
    return EXIT_OK


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def _common(suppress):
        # flags are accepted before or after the subcommand; the copy on each
        # subcommand suppresses its defaults so it never clobbers the top level
        c = argparse.ArgumentParser(add_help=False)
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        c.add_argument("--seed", type=int, default=d(None))
        c.add_argument("--format", choices=("text", "csv"), default=d("text"))
        c.add_argument("--jobs", type=int, default=d(1), help="worker count (searches run serially)")
        c.add_argument("-v", "--verbose", action="store_true", default=d(False))
        return c

    common = _common(True)

    p = _Parser(prog="posetramsey", description=__doc__.splitlines()[0], parents=[_common(False)])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("chains", parents=[common], help="count t-chains of B_n")
    s.add_argument("n", type=int)
    s.add_argument("t", type=int)
    s.add_argument("--enumerate", action="store_true")
    s.set_defaults(func=cmd_chains)

    s = sub.add_parser("lubell", parents=[common], help="Lubell values and the Lubell upper-bound test")
    s.add_argument("action", choices=("value", "max", "criterion"))
    s.add_argument("N", type=int)
    s.add_argument("--sets", type=_int_list, help="family members as base-10 masks")
    s.add_argument("--levels", type=_int_list, help="add whole levels to the family")
    s.add_argument("--target", default="matching:2")
    s.add_argument("--exclude-levels", type=_int_list)
    s.add_argument("--exclude-sets", type=_int_list)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--source", choices=("exact", "lemma34", "lemma35"), default="exact")
    s.add_argument("--s", type=int)
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--budget-secs", type=float)
    s.set_defaults(func=cmd_lubell)

    s = sub.add_parser("search", parents=[common], help="exact Ramsey number search")
    s.add_argument("--k", type=int)
    s.add_argument("--t", type=int, default=1)
    s.add_argument("--mode", choices=("weak", "strong"), default="weak")
    s.add_argument("--targets", required=True)
    s.add_argument("--n-min", type=int, default=1)
    s.add_argument("--n-max", type=int, default=5)
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--budget-secs", type=float)
    s.add_argument("--no-symmetry", action="store_true")
    s.add_argument("--emit-cert", metavar="PREFIX")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify", parents=[common], help="re-verify a certificate file")
    s.add_argument("cert")
    s.add_argument("--rerun", action="store_true", help="repeat the search behind an exhaustion record")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("construct", parents=[common], help="emit a lower-bound coloring certificate")
    s.add_argument("kind", choices=("level-block", "matching", "diamond", "lll"))
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--s", type=int, default=2)
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--targets", default="chain:3,chain:3")
    s.add_argument("--e", type=_int_list)
    s.add_argument("--probe-cap", type=int, default=5)
    s.add_argument("--mode", choices=("weak", "strong"), default="weak")
    s.add_argument("--t", type=int, default=2)
    s.add_argument("--host-n", type=int, default=2)
    s.add_argument("--attempts", type=int, default=10000)
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("bounds", parents=[common], help="closed-form bound calculators")
    s.add_argument("kind", choices=("lll", "strong-lower", "recurrence", "diamond", "ct"))
    s.add_argument("--targets", default="chain:2,chain:6")
    s.add_argument("--t", type=int, default=2)
    s.add_argument("--hosts", type=_int_list, default=[1, 2, 4, 8], help="host sizes for lll")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--dims", type=_int_list, default=[2, 2, 2])
    s.add_argument("--k-max", type=int, default=10)
    s.add_argument("--m-max", type=int, default=6)
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--N", type=int, default=2)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("extract-diamond", parents=[common], help="find a monochromatic induced diamond")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--cert")
    s.add_argument("--loose", action="store_true", help="accept hosts larger than required")
    s.set_defaults(func=cmd_extract)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
