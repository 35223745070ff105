"""Command line front end: ``hsplab <command> [args] [--seed S --mode M --trials T --json]``.

Randomness comes from numpy's PCG64 generator. Trial ``t`` of a run seeded
with ``s`` uses ``numpy.random.default_rng([s, t])``, so trials are
independent streams and results do not depend on thread scheduling.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import errors
from . import numtheory as nt
from .algorithms import (
    DlogConfig,
    FactorConfig,
    constant_oracle,
    deutsch_jozsa,
    discrete_log,
    factor,
    graph_iso_harness,
    load_graph,
    random_balanced_oracle,
    random_simon_oracle,
    simon_driver,
    stabilizer_report,
)
from .fourier import dft_matrix, qft_circuit, weak_fourier_sampling_distribution
from .groups import character_table, group_from_name, is_normal, subgroup_closure
from .hsp import HiddenSubgroupInstance, ShorConfig, reconstruct_normal_subgroup, solve_order_shor, solve_period_zn
from .trace import RunTrace, _plain

EXIT_CODES = [
    (0, "success"),
    (1, "unexpected internal error"),
    (2, "usage error or invalid argument"),
    (errors.NoFactor.exit_code, "NoFactor: input is prime"),
    (errors.NotPrime.exit_code, "NotPrime: modulus is not prime"),
    (errors.ScaleExceeded.exit_code, "ScaleExceeded: input beyond brute-force scale"),
    (errors.BudgetExhausted.exit_code, "BudgetExhausted: round budget spent without a verified answer"),
    (errors.PromiseViolation.exit_code, "PromiseViolation: oracle breaks the hidden-subgroup promise"),
    (errors.InvalidGenerator.exit_code, "InvalidGenerator: g is not a primitive root"),
    (errors.NotConnected.exit_code, "NotConnected: graph input is disconnected"),
    (errors.HSPError.exit_code, "other domain error"),
    (errors.NotInvertible.exit_code, "NotInvertible"),
    (errors.NotCoprime.exit_code, "NotCoprime: a shares a factor with N"),
    (errors.UnsupportedGroup.exit_code, "UnsupportedGroup: unknown group name"),
    (errors.RangeError.exit_code, "RangeError: oracle value out of range"),
]

EPILOG = "exit codes:\n" + "\n".join(f"  {code:>2}  {text}" for code, text in EXIT_CODES)


def _bits(s: str) -> str:
    if not s or set(s) - {"0", "1"}:
        raise argparse.ArgumentTypeError(f"{s!r} is not a bit string")
    return s


def _pow2(s: str) -> int:
    v = int(s)
    if v < 2 or v & (v - 1):
        raise argparse.ArgumentTypeError(f"{s} is not a power of two")
    return v


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def parse_oracle(spec: str, N: int):
    """Builtin period oracles: ``mod:r``, ``modexp:a:M`` and ``const``."""
    parts = spec.split(":")
    try:
        if parts[0] == "mod" and len(parts) == 2:
            r = int(parts[1])
            if r < 1 or N % r:
                raise ValueError(f"mod:{r} needs r dividing N={N}")
            return lambda x: x % r
        if parts[0] == "modexp" and len(parts) == 3:
            a, M = int(parts[1]), int(parts[2])
            r = nt.multiplicative_order(a, M).r
            if N % r:
                raise ValueError(f"order {r} of {a} mod {M} does not divide N={N}")
            return lambda x: nt.mod_exp(a, x, M)
        if parts[0] == "const" and len(parts) == 1:
            return lambda x: 0
    except errors.NotCoprime:
        raise
    except ValueError as exc:
        raise ValueError(f"bad oracle spec {spec!r}: {exc}") from None
    raise ValueError(f"bad oracle spec {spec!r}; expected mod:r, modexp:a:M or const")


# each runner: (args, rng) -> (payload, trace or None)

def run_factor(args, rng):
    shor = ShorConfig(q=args.q, mode=args.mode)
    k, trace = factor(args.N, rng, FactorConfig(max_attempts=args.attempts, force_a=args.a, shor=shor))
    return {"N": args.N, "factor": k, "factors": sorted([k, args.N // k])}, trace


def run_dlog(args, rng):
    y, trace = discrete_log(args.p, args.g, args.x, rng, DlogConfig(mode=args.mode, ft=args.ft))
    return {"p": args.p, "g": args.g, "x": args.x, "y": y, "rounds": trace.verdict["rounds"]}, trace


def run_period(args, rng):
    f = parse_oracle(args.oracle, args.N)
    trace = RunTrace("period", choices={"N": args.N, "oracle": args.oracle, "mode": args.mode})
    r = solve_period_zn(args.N, f, rng, budget=args.budget, mode=args.mode, trace=trace)
    trace.verdict = r
    return {"N": args.N, "oracle": args.oracle, "period": r, "rounds": len(trace.rounds)}, trace


def run_order(args, rng):
    trace = RunTrace("order", choices={"N": args.N, "a": args.a, "mode": args.mode})
    cfg = ShorConfig(q=args.q, mode=args.mode)
    r = solve_order_shor(args.N, args.a, rng, cfg, trace=trace)
    trace.verdict = r
    return {"N": args.N, "a": args.a, "order": r, "rounds": len(trace.rounds)}, trace


def run_simon(args, rng):
    n = args.n
    if args.random:
        xi = int(rng.integers(1 << n))
    else:
        if len(args.xi) != n:
            raise ValueError(f"--xi must have {n} bits")
        xi = int(args.xi, 2)
    f = random_simon_oracle(n, xi, rng)
    found, trace = simon_driver(n, f, rng, mode=args.mode)
    expected = "injective" if xi == 0 else format(xi, f"0{n}b")
    result = found if isinstance(found, str) else format(found, f"0{n}b")
    return {"n": n, "xi": result, "expected": expected, "samples": len(trace.rounds)}, trace


def run_dj(args, rng):
    n = args.n
    table = constant_oracle(n, args.value) if args.constant else random_balanced_oracle(n, rng)
    verdict, trace = deutsch_jozsa(n, table, rng)
    truth = "constant" if args.constant else "balanced"
    return {"n": n, "verdict": verdict, "expected": truth, "oracle_calls": trace.oracle_calls}, trace


def run_wfs(args, rng):
    G = group_from_name(args.group)
    gens = [g for g in (args.subgroup or "").split(",") if g]
    K = subgroup_closure(G, [G.coerce(g) for g in gens])
    table = character_table(G)
    p = weak_fourier_sampling_distribution(G, K)
    payload = {
        "group": G.name,
        "order": G.order,
        "subgroup": [G.name_of(k) for k in K.sorted_elements()],
        "normal": is_normal(G, K),
        "distribution": {lab: round(float(v), 12) for lab, v in zip(table.labels, p)},
    }
    trace = RunTrace("wfs", choices={"group": G.name, "generators": gens, "mode": args.mode})
    if payload["normal"]:
        inst = HiddenSubgroupInstance.from_subgroup(G, K, rng)
        found = reconstruct_normal_subgroup(G, inst, rng, mode=args.mode, trace=trace)
        payload["reconstructed"] = [G.name_of(k) for k in found.sorted_elements()]
    trace.verdict = payload.get("reconstructed")
    return payload, trace


def run_graphiso(args, rng):
    A, B = load_graph(args.fileA), load_graph(args.fileB)
    verdict, trace = graph_iso_harness(A, B, rng, trials=args.samples)
    report, _ = stabilizer_report(A, B)
    return {
        "n": A.n,
        "verdict": verdict,
        "fact": report.fact,
        "group_order": report.group_order,
        "stabilizer_order": report.stabilizer_order,
        "stabilizer_in_swap_coset": report.in_swap_coset,
    }, trace


def run_qft_check(args, rng):
    n = args.n
    seq = qft_circuit(n)
    dev = float(np.abs(seq.unitary() - dft_matrix(1 << n)).max())
    bound = n * (n + 1) // 2 + n // 2
    return {
        "n": n,
        "max_deviation": dev,
        "ok": dev <= 1e-10,
        "gates": len(seq),
        "gate_bound": bound,
        "gate_counts": dict(sorted(seq.counts().items())),
    }, None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--seed", type=int, default=0, help="64-bit seed for the PCG64 generator (default 0)")
    g.add_argument("--mode", choices=("exact", "simulate"), default="simulate",
                   help="simulate the full statevector or sample the exact outcome distribution")
    g.add_argument("--trials", type=_positive, default=1, help="independent repetitions, run on worker threads")
    g.add_argument("--json", action="store_true", help="emit one JSON document")
    g.add_argument("--verbose", action="store_true", help="include the full run trace")
    g.add_argument("--q", type=_pow2, default=None, help="override the order-finding register size (power of 2)")

    parser = argparse.ArgumentParser(
        prog="hsplab",
        description="Hidden subgroup algorithms on an exact statevector simulator.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_, epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        return p

    p = add("factor", run_factor, "find a nontrivial factor of N")
    p.add_argument("N", type=int)
    p.add_argument("--a", type=int, default=None, help="base for the first attempt")
    p.add_argument("--attempts", type=_positive, default=24)

    p = add("dlog", run_dlog, "discrete logarithm of x to base g modulo prime p")
    p.add_argument("p", type=int)
    p.add_argument("g", type=int)
    p.add_argument("x", type=int)
    p.add_argument("--ft", choices=("exact", "pow2"), default="exact",
                   help="transform modulo p-1 or modulo the least power of two above it")

    p = add("period", run_period, "period of a builtin oracle on Z_N")
    p.add_argument("N", type=int)
    p.add_argument("--oracle", required=True, help="mod:r | modexp:a:M | const")
    p.add_argument("--budget", type=_positive, default=64)

    p = add("order", run_order, "multiplicative order of a modulo N")
    p.add_argument("N", type=int)
    p.add_argument("a", type=int)

    p = add("simon", run_simon, "recover the hidden XOR mask of a random Simon oracle")
    p.add_argument("n", type=int)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--xi", type=_bits, help="hidden mask as n bits (all zeros means injective)")
    grp.add_argument("--random", action="store_true", help="draw the mask uniformly")

    p = add("dj", run_dj, "Deutsch-Jozsa on a constant or random balanced function")
    p.add_argument("n", type=int)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--constant", action="store_true")
    grp.add_argument("--balanced", action="store_true")
    p.add_argument("--value", type=int, choices=(0, 1), default=0, help="value of the constant function")

    p = add("wfs", run_wfs, "weak Fourier sampling distribution for a subgroup")
    p.add_argument("group", help="D<n>, S<n>, Z<n> or Z<a>xZ<b>...")
    p.add_argument("--subgroup", default="", help="comma-separated generator names (e.g. r2,s)")

    p = add("graphiso", run_graphiso, "graph isomorphism through the swap-extended stabilizer")
    p.add_argument("fileA")
    p.add_argument("fileB")
    p.add_argument("--samples", type=_positive, default=16, help="stabilizer samples per trial")

    p = add("qft-check", run_qft_check, "compare the QFT gate circuit with the dense DFT")
    p.add_argument("n", type=int)
    return parser


def _run_trials(args):
    def one(t):
        rng = np.random.default_rng([args.seed, t])
        payload, trace = args.func(args, rng)
        if args.verbose and trace is not None:
            payload["trace"] = trace.to_dict()
        return _plain(payload)

    if args.trials == 1:
        return [one(0)]
    workers = min(args.trials, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = dict(zip(range(args.trials), pool.map(one, range(args.trials))))
    return [results[t] for t in range(args.trials)]


def _text(payload: dict, indent: str = "") -> list[str]:
    lines = []
    for key, val in payload.items():
        if isinstance(val, dict) and key != "trace":
            lines.append(f"{indent}{key}:")
            lines.extend(_text(val, indent + "  "))
        elif key == "trace":
            lines.append(f"{indent}trace: {json.dumps(val, sort_keys=True)}")
        elif isinstance(val, list):
            lines.append(f"{indent}{key}: {' '.join(map(str, val))}")
        else:
            lines.append(f"{indent}{key}: {val}")
    return lines


def render(args, results: list) -> str:
    head = {"command": args.command, "seed": args.seed, "mode": args.mode}
    if args.json:
        doc = {**head, "result": results[0]} if len(results) == 1 else {**head, "trials": results}
        return json.dumps(doc, sort_keys=True)
    lines = _text(head)
    if len(results) == 1:
        lines += _text(results[0])
    else:
        for t, res in enumerate(results):
            lines.append(f"trial {t}:")
            lines += _text(res, "  ")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        results = _run_trials(args)
    except errors.HSPError as exc:
        print(f"hsplab {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"hsplab {args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hsplab {args.command}: {exc}", file=sys.stderr)
        return 2
    print(render(args, results))
    return 0


if __name__ == "__main__":
    sys.exit(main())
