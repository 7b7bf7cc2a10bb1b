"""Command-line front end; every invocation prints one JSON envelope.

Envelope keys: ``command``, ``inputs`` (parsed parameters), ``result``,
``truncation`` and ``version``. Keys are sorted and floats are written with
12 significant digits so identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import __version__
from .density import DEFAULT_ARTIN_PMAX, InvalidBase, artin_A, artin_spec, delta_mod
from .empirical import (
    DEFAULT_PMAX,
    classical_baseline,
    compare,
    load_or_build,
)
from .singular import (
    DEFAULT_KMAX,
    DEFAULT_QMAX,
    classical_rho,
    congruence_table,
    euler_constant,
    ksum_constant,
    nonfactorization_witness,
    positivity,
    sigma_d,
    triple_spec,
)
from .splitting import moree_identity_check

DEFAULT_SIEVE_LIMIT = 2 * 10**6

# positional parameter names per subcommand, in argv order
POSITIONALS: Dict[str, List[str]] = {
    "spec": ["a"],
    "delta": ["a", "x", "q"],
    "constant": ["a1", "a2", "a3", "n"],
    "crosscheck": ["a1", "a2", "a3", "n"],
    "table": ["a"],
    "positivity": ["a1", "a2", "a3", "n"],
    "verify": ["a1", "a2", "a3", "n"],
    "moree": ["a", "q", "b"],
    "nonfact-demo": [],
    "rho": ["n", "p"],
}


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def normalize(obj):
    """Make ``obj`` JSON-ready with fixed float formatting."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return _fraction_str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return normalize(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def envelope(command: str, inputs: dict, result, truncation: Optional[dict] = None) -> str:
    body = {
        "command": command,
        "inputs": inputs,
        "result": result,
        "truncation": truncation or {},
        "version": __version__,
    }
    return json.dumps(normalize(body), sort_keys=True)


def argv_from_inputs(command: str, inputs: dict) -> List[str]:
    """Rebuild an argv list that parses back to ``inputs``."""
    argv = [command]
    for name in POSITIONALS[command]:
        if inputs.get(name) is not None:
            argv.append(str(inputs[name]))
    for key in sorted(inputs):
        if key in POSITIONALS[command]:
            continue
        value = inputs[key]
        flag = "--" + key.replace("_", "-")
        if value is True:
            argv.append(flag)
        elif value is False or value is None:
            continue
        else:
            argv += [flag, str(value)]
    return argv


def _parse_range(text: str) -> range:
    parts = [int(v) for v in text.split(":")]
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3 or parts[2] <= 0:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected lo:hi[:step]")
    return range(parts[0], parts[1], parts[2])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artin-goldbach", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    threads = max(1, os.cpu_count() or 1)

    p = sub.add_parser("spec", help="discriminant and power index of a base")
    p.add_argument("a", type=int)

    p = sub.add_parser("delta", help="density of primes = x mod q with primitive root a")
    p.add_argument("a", type=int)
    p.add_argument("x", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--artin-pmax", type=int, default=DEFAULT_ARTIN_PMAX)

    for name in ("constant", "crosscheck"):
        p = sub.add_parser(name, help="Artin factor C_a(n)" if name == "constant"
                           else "Euler product against the k-sum")
        for arg in ("a1", "a2", "a3", "n"):
            p.add_argument(arg, type=int)
        p.add_argument("--pmax", type=int, default=DEFAULT_PMAX)
        p.add_argument("--artin-pmax", type=int, default=DEFAULT_ARTIN_PMAX)
        p.add_argument("--threads", type=int, default=threads)
        if name == "crosscheck":
            p.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
            p.add_argument("--qmax", type=int, default=DEFAULT_QMAX)

    p = sub.add_parser("table", help="admissible n mod lcm(6, |Delta|) for (a, a, a)")
    p.add_argument("a", type=int)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("positivity", help="is C_a(n) > 0")
    for arg in ("a1", "a2", "a3", "n"):
        p.add_argument(arg, type=int)

    p = sub.add_parser("verify", help="count representations and compare with C_a(n) n^2")
    for arg in ("a1", "a2", "a3"):
        p.add_argument(arg, type=int)
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--sieve-limit", type=int, default=None)
    p.add_argument("--exclude-small", action="store_true")
    p.add_argument("--classical-baseline", action="store_true")
    p.add_argument("--pmax", type=int, default=DEFAULT_PMAX)
    p.add_argument("--threads", type=int, default=threads)
    p.add_argument("--cache", default=None)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--n-range", default=None)

    p = sub.add_parser("moree", help="truncated Lenstra sum against the closed-form density")
    p.add_argument("a", type=int)
    p.add_argument("q", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--kmax", type=int, default=1000)
    p.add_argument("--artin-pmax", type=int, default=DEFAULT_ARTIN_PMAX)

    sub.add_parser("nonfact-demo", help="non-factorization example for a = (-15)^5")

    p = sub.add_parser("rho", help="classical local factor rho_p(n)")
    p.add_argument("n", type=int)
    p.add_argument("p", type=int)
    return parser


def _euler_result(triple, n, pmax, artin_pmax):
    est = euler_constant(triple, n, pmax, artin_pmax)
    return est, {
        "value": est.value,
        "sigma_D": sigma_d(triple, n, triple.D),
        "D": triple.D,
        "rational_part": float(est.rational_part),
        "artin_product": est.transcendental_part.value,
        "artin_error": est.transcendental_part.error_bound,
        "tail_estimate": est.tail_estimate,
    }


def _cmd_spec(args):
    s = artin_spec(args.a)
    return {"a": s.a, "delta": s.delta, "h": s.h}, {}


def _cmd_delta(args):
    s = artin_spec(args.a)
    if args.q < 1:
        raise ValueError("q must be positive")
    ratio = delta_mod(s, args.x, args.q)
    A = artin_A(s, args.artin_pmax)
    return ({"ratio": ratio, "A": A.value, "delta": float(ratio) * A.value,
             "error_bound": float(ratio) * A.error_bound},
            {"artin_pmax": args.artin_pmax})


def _cmd_constant(args):
    triple = triple_spec(args.a1, args.a2, args.a3)
    _, res = _euler_result(triple, args.n, args.pmax, args.artin_pmax)
    return res, {"pmax": args.pmax, "artin_pmax": args.artin_pmax}


def _cmd_crosscheck(args):
    triple = triple_spec(args.a1, args.a2, args.a3)
    est, res = _euler_result(triple, args.n, args.pmax, args.artin_pmax)
    ks = ksum_constant(triple, args.n, args.kmax, args.qmax)
    gap = abs(ks.value - est.value) / est.value if est.value else math.inf
    return ({"euler": res, "ksum": ks.value, "ksum_tail_estimate": ks.tail_estimate,
             "relative_gap": gap},
            {"pmax": args.pmax, "artin_pmax": args.artin_pmax, "kmax": args.kmax, "qmax": args.qmax})


def _cmd_table(args):
    tab = congruence_table(args.a)
    return {"modulus": tab.modulus, "residues": list(tab.residues)}, {}


def _cmd_positivity(args):
    ok, witness = positivity(triple_spec(args.a1, args.a2, args.a3), args.n)
    return {"positive": ok, "witness": witness}, {}


def _cmd_verify(args):
    if args.n is None and args.n_range is None:
        raise ValueError("verify needs n or --n-range")
    ns = list(_parse_range(args.n_range)) if args.n_range else [args.n]
    triple = triple_spec(args.a1, args.a2, args.a3)
    limit = args.sieve_limit if args.sieve_limit is not None else max(max(ns), DEFAULT_SIEVE_LIMIT)
    data = load_or_build(triple.bases, limit, args.cache)
    rows = []
    for n in ns:
        rep = compare(triple, n, data, args.pmax, args.exclude_small, args.threads)
        row = rep.as_dict()
        if args.classical_baseline:
            row["classical"] = classical_baseline(n, data, args.pmax, args.threads)
        rows.append(row)
    result = rows[0] if args.n_range is None else {"reports": rows}
    return result, {"pmax": args.pmax, "sieve_limit": data.limit}


def _cmd_moree(args):
    s = artin_spec(args.a)
    partial, target, gap = moree_identity_check(s, args.q, args.b, args.kmax, args.artin_pmax)
    return ({"partial": partial, "target": target, "gap": gap,
             "delta_ratio": delta_mod(s, args.b, args.q)},
            {"kmax": args.kmax, "artin_pmax": args.artin_pmax})


def _cmd_nonfact(args):
    return nonfactorization_witness(), {}


def _cmd_rho(args):
    if args.p < 2:
        raise ValueError("p must be a prime >= 2")
    r = classical_rho(args.n, args.p)
    return {"value": r, "float": float(r)}, {}


COMMANDS = {
    "spec": _cmd_spec,
    "delta": _cmd_delta,
    "constant": _cmd_constant,
    "crosscheck": _cmd_crosscheck,
    "table": _cmd_table,
    "positivity": _cmd_positivity,
    "verify": _cmd_verify,
    "moree": _cmd_moree,
    "nonfact-demo": _cmd_nonfact,
    "rho": _cmd_rho,
}


def _csv(command: str, result) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if command == "table":
        w.writerow(["modulus", "residue"])
        for r in result["residues"]:
            w.writerow([result["modulus"], r])
    else:
        rows = result["reports"] if "reports" in result else [result]
        w.writerow(["n", "V", "raw_count", "predicted", "ratio"])
        for row in normalize(rows):
            w.writerow([row["n"], row["V"], row["raw_count"], row.get("predicted"), row["ratio"]])
    return buf.getvalue()


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    inputs = {k: v for k, v in vars(args).items() if k != "command"}
    try:
        result, truncation = COMMANDS[args.command](args)
    except (InvalidBase, ValueError, KeyError, ArithmeticError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if getattr(args, "csv", False):
        stdout.write(_csv(args.command, normalize(result)))
    else:
        stdout.write(envelope(args.command, inputs, result, truncation) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
