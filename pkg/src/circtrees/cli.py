"""Command-line front end: single counts, method comparison, sweeps,
convergence tables.

stdout carries data only (one JSON object for `count`/`compare`, CSV for
`sweep`/`converge`); diagnostics go to stderr. Exit codes: 0 success,
1 method disagreement in `compare`, 2 invalid spec or arguments,
3 precision budget exhausted.

Counts are always serialized as decimal strings, since they outgrow native
integer widths almost immediately. The exact cofactor and eigenvalue-product
methods are refused above N = 2000 vertices: they scale like N^3 and exist
as cross-checks for the closed forms, not as production paths.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass
from typing import Sequence

import gmpy2

from .closedform import (
    asymptotic_ratio,
    asymptotic_relative_error,
    cycle_power_count,
    digraph_beta_product,
    digraph_closed_form,
    digraph_two_generator,
)
from .graphs import (
    CyclePowerSpec,
    CyclePowerVariant,
    DirectedCirculantSpec,
    cycle_power_instance,
    is_structurally_zero,
    reduce_to_instance,
)
from .intervals import IntervalField, PrecisionBudget, PrecisionExhausted
from .oracle import eigenvalue_product_count, matrix_tree_count

ORACLE_SIZE_LIMIT = 2000

DIGRAPH_METHODS = ("theorem1", "theorem2", "betaproduct", "matrix-tree", "eigenproduct")
CYCLE_METHODS = ("cycle-power", "matrix-tree", "eigenproduct")


def _decimal(n: int) -> str:
    # via GMP: counts routinely exceed CPython's int-to-str digit limit
    return str(gmpy2.mpz(n))


# ---------------------------------------------------------------------------
# argument parsing helpers
# ---------------------------------------------------------------------------

def _parse_ints(text: str, what: str) -> list[int]:
    """Accept '4', '1,3,5' or '1..6' (inclusive range)."""
    text = text.strip()
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse {what} range {text!r}; use N, A,B,C or A..B") from None


def _parse_digraph(text: str) -> DirectedCirculantSpec:
    parts = text.split(",")
    if len(parts) < 4:
        raise ValueError(f"--digraph needs beta,n,p,g1[,g2...]; got {text!r}")
    try:
        nums = [int(tok) for tok in parts]
    except ValueError:
        raise ValueError(f"non-integer field in --digraph {text!r}") from None
    return DirectedCirculantSpec(nums[0], nums[1], nums[2], tuple(nums[3:]))


def _parse_variant(token: str) -> CyclePowerVariant:
    for variant in CyclePowerVariant:
        if token == variant.value:
            return variant
    raise ValueError(f"power must be 'n' or 'n-1', got {token!r}")


def _parse_cycle_power(text: str) -> CyclePowerSpec:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"--cycle-power needs beta,n,{{n|n-1}}; got {text!r}")
    try:
        beta, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"non-integer field in --cycle-power {text!r}") from None
    return CyclePowerSpec(beta, n, _parse_variant(parts[2]))


def _budget(args: argparse.Namespace) -> PrecisionBudget:
    return PrecisionBudget(start_bits=args.bits_start, cap_bits=args.bits_cap)


# ---------------------------------------------------------------------------
# method dispatch
# ---------------------------------------------------------------------------

@dataclass
class MethodOutcome:
    count: int
    bits_used: int
    reason: str | None = None


def _oracle_guard(size: int) -> None:
    if size > ORACLE_SIZE_LIMIT:
        raise ValueError(
            f"N = {size} exceeds the exact-oracle limit of {ORACLE_SIZE_LIMIT}; "
            "cofactor and eigenvalue-product methods are cubic in N - use a "
            "closed-form method for large instances"
        )


def _run_method(method: str, spec, budget: PrecisionBudget) -> MethodOutcome:
    if isinstance(spec, DirectedCirculantSpec):
        zero, why = is_structurally_zero(spec)
        if method == "theorem1":
            count = digraph_closed_form(spec, budget)
            return MethodOutcome(count, count.bits_used, why.value if zero else None)
        if method == "theorem2":
            count = digraph_two_generator(spec, budget)
            return MethodOutcome(count, count.bits_used, why.value if zero else None)
        if method == "betaproduct":
            count = digraph_beta_product(spec, budget)
            not_coprime = math.gcd(spec.p, spec.n) != 1
            return MethodOutcome(
                count, count.bits_used, "gcd(p,n)!=1" if not_coprime else None
            )
        if method == "matrix-tree":
            inst = reduce_to_instance(spec)
            _oracle_guard(inst.size)
            count = matrix_tree_count(inst)
            return MethodOutcome(count, 0)
        if method == "eigenproduct":
            inst = reduce_to_instance(spec)
            _oracle_guard(inst.size)
            count = eigenvalue_product_count(inst, budget)
            return MethodOutcome(count, count.bits_used)
        raise ValueError(f"method {method!r} does not apply to a digraph spec")
    if method == "cycle-power":
        count = cycle_power_count(spec, budget)
        return MethodOutcome(count, count.bits_used)
    if method == "matrix-tree":
        inst = cycle_power_instance(spec)
        _oracle_guard(inst.size)
        count = matrix_tree_count(inst)
        return MethodOutcome(count, 0)
    if method == "eigenproduct":
        inst = cycle_power_instance(spec)
        _oracle_guard(inst.size)
        count = eigenvalue_product_count(inst, budget)
        return MethodOutcome(count, count.bits_used)
    raise ValueError(f"method {method!r} does not apply to a cycle-power spec")


def _spec_json(spec) -> dict:
    if isinstance(spec, DirectedCirculantSpec):
        return {
            "family": "digraph",
            "beta": spec.beta,
            "n": spec.n,
            "p": spec.p,
            "gammas": list(spec.gammas),
        }
    return {
        "family": "cycle-power",
        "beta": spec.beta,
        "n": spec.n,
        "power": spec.variant.value,
    }


def _applicable_methods(spec) -> list[str]:
    if isinstance(spec, DirectedCirculantSpec):
        methods = ["theorem1"]
        if spec.d == 2:
            methods.append("theorem2")
        methods += ["betaproduct", "matrix-tree", "eigenproduct"]
        return methods
    return list(CYCLE_METHODS)


def _method_report(method: str, spec, budget, with_timing: bool) -> dict:
    start = time.perf_counter()
    outcome = _run_method(method, spec, budget)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    report = {
        "method": method,
        "count": _decimal(outcome.count),
        "certified": True,
        "bits_used": outcome.bits_used,
    }
    if outcome.reason is not None:
        report["reason"] = outcome.reason
    if with_timing:
        report["elapsed_ms"] = round(elapsed_ms, 3)
    return report


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _spec_from_args(args: argparse.Namespace):
    if args.digraph is not None:
        return _parse_digraph(args.digraph)
    return _parse_cycle_power(args.cycle_power)


def cmd_count(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    method = args.method or _applicable_methods(spec)[0]
    if method not in _applicable_methods(spec):
        raise ValueError(f"method {method!r} does not apply to this spec")
    report = {"spec": _spec_json(spec)}
    report.update(_method_report(method, spec, _budget(args), not args.no_timings))
    print(json.dumps(report))
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    budget = _budget(args)
    size = spec.size
    entries = []
    counts = set()
    for method in _applicable_methods(spec):
        if method in ("matrix-tree", "eigenproduct") and size > ORACLE_SIZE_LIMIT:
            entries.append(
                {"method": method, "skipped": f"N = {size} exceeds oracle limit {ORACLE_SIZE_LIMIT}"}
            )
            continue
        entry = _method_report(method, spec, budget, not args.no_timings)
        counts.add(entry["count"])
        entries.append(entry)
    agree = len(counts) <= 1
    print(json.dumps({"spec": _spec_json(spec), "methods": entries, "agree": agree}))
    return 0 if agree else 1


def _parse_digraph_family(text: str) -> tuple[int | None, int, tuple[int, ...]]:
    """Family string beta,n,p,g1[,g2...] where the n slot is the literal
    letter 'n' and the beta slot may be 'b' (swept via --beta)."""
    parts = text.split(",")
    if len(parts) < 4:
        raise ValueError(f"--digraph-family needs beta,n,p,g1[,g2...]; got {text!r}")
    if parts[1] != "n":
        raise ValueError("the n slot of a digraph family must be the letter 'n'")
    beta = None if parts[0] == "b" else int(parts[0])
    p = int(parts[2])
    gammas = tuple(int(tok) for tok in parts[3:])
    return beta, p, gammas


def _parse_cycle_family(text: str) -> tuple[int | None, CyclePowerVariant]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"--cycle-power-family needs beta,{{n|n-1}}; got {text!r}")
    beta = None if parts[0] == "b" else int(parts[0])
    return beta, _parse_variant(parts[1])


def cmd_sweep(args: argparse.Namespace) -> int:
    budget = _budget(args)
    ns = _parse_ints(args.n, "--n")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.digraph_family is not None:
        beta_fixed, p, gammas = _parse_digraph_family(args.digraph_family)
        specs_cols = ["beta", "n", "p", "gammas"]
        make = lambda beta, n: DirectedCirculantSpec(beta, n, p, gammas)
        row_of = lambda s: [s.beta, s.n, s.p, ";".join(map(str, s.gammas))]
    else:
        beta_fixed, variant = _parse_cycle_family(args.cycle_power_family)
        specs_cols = ["beta", "n", "power"]
        make = lambda beta, n: CyclePowerSpec(beta, n, variant)
        row_of = lambda s: [s.beta, s.n, s.variant.value]
    if beta_fixed is None:
        if args.beta is None:
            raise ValueError("family has a 'b' placeholder; provide --beta")
        betas = _parse_ints(args.beta, "--beta")
    else:
        if args.beta is not None:
            raise ValueError("--beta given but the family has a fixed beta")
        betas = [beta_fixed]
    header = specs_cols + ["count"]
    if not args.no_timings:
        header.append("elapsed_ms")
    writer.writerow(header)
    for beta in betas:
        for n in ns:
            spec = make(beta, n)
            method = args.method or _applicable_methods(spec)[0]
            if method not in _applicable_methods(spec):
                raise ValueError(f"method {method!r} does not apply to this family")
            start = time.perf_counter()
            outcome = _run_method(method, spec, budget)
            elapsed_ms = (time.perf_counter() - start) * 1000.0
            row = row_of(spec) + [_decimal(outcome.count)]
            if not args.no_timings:
                row.append(f"{elapsed_ms:.3f}")
            writer.writerow(row)
    return 0


def cmd_converge(args: argparse.Namespace) -> int:
    budget = _budget(args)
    beta, variant = _parse_cycle_family(args.cycle_power_family)
    if beta is None:
        raise ValueError("converge needs a fixed beta in the family")
    ns = sorted(_parse_ints(args.n, "--n"))
    F = IntervalField(128)
    from fractions import Fraction as _Fr

    sign = 1 if variant is CyclePowerVariant.POWER_N else -1
    target = F.from_rational(_Fr(sign * beta, 2)).exp().mid_float()
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["n", "ratio", "target", "relative_error"])
    for n in ns:
        ratio = float(asymptotic_ratio(beta, n, variant, budget))
        err = asymptotic_relative_error(beta, n, variant, budget)
        writer.writerow([n, f"{ratio:.12g}", f"{target:.12g}", f"{err:.12g}"])
    return 0


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circtrees",
        description="Spanning-tree and arborescence counts for circulant "
        "digraphs with linearly growing generators and for cycle power graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--bits-start", type=int, default=128,
                       help="starting working precision in bits (default 128)")
        p.add_argument("--bits-cap", type=int, default=65536,
                       help="precision cap in bits (default 65536)")
        p.add_argument("--no-timings", action="store_true",
                       help="omit elapsed-time fields (byte-deterministic output)")

    def add_family(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--digraph", metavar="B,N,P,G1[,G2...]",
                           help="directed circulant spec beta,n,p,gammas")
        group.add_argument("--cycle-power", metavar="B,N,{n|n-1}",
                           help="cycle power spec beta,n,power")

    p_count = sub.add_parser("count", help="count one spec with one method")
    add_family(p_count)
    p_count.add_argument("--method", choices=sorted(set(DIGRAPH_METHODS + CYCLE_METHODS)),
                         help="counting method (default: closed form for the family)")
    add_common(p_count)
    p_count.set_defaults(func=cmd_count)

    p_cmp = sub.add_parser("compare", help="run every applicable method and check agreement")
    add_family(p_cmp)
    add_common(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    p_sweep = sub.add_parser("sweep", help="CSV of counts over a parameter range")
    family = p_sweep.add_mutually_exclusive_group(required=True)
    family.add_argument("--digraph-family", metavar="B,n,P,G1[,G2...]",
                        help="digraph family with literal 'n' (and optionally 'b') placeholders")
    family.add_argument("--cycle-power-family", metavar="B,{n|n-1}",
                        help="cycle power family; n comes from --n")
    p_sweep.add_argument("--n", required=True, help="n values: N, A,B,C or A..B")
    p_sweep.add_argument("--beta", help="beta values when the family uses the 'b' placeholder")
    p_sweep.add_argument("--method", choices=sorted(set(DIGRAPH_METHODS + CYCLE_METHODS)),
                         help="counting method (default: closed form)")
    add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_conv = sub.add_parser("converge",
                            help="CSV table of the ratio to the large-n estimate")
    p_conv.add_argument("--cycle-power-family", required=True, metavar="B,{n|n-1}")
    p_conv.add_argument("--n", required=True, help="n values: N, A,B,C or A..B")
    add_common(p_conv)
    p_conv.set_defaults(func=cmd_converge)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which matches the invalid-spec code
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PrecisionExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
