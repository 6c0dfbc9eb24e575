"""Command-line entry point.

Exit codes: 0 success (and, for ``verify``/``stats``/``an``, no set larger
than 3 was seen), 1 counterexample found, 2 usage or range error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import __version__
from .census import CensusReport, ChainMember, build_report, default_workers, verify_conjecture
from .chains import aset_chain, chain_iter, descend
from .polyseq import f_coeffs, f_eval, g_coeffs, g_eval
from .unity import (
    aset_brute,
    aset_fast,
    correct_root_count,
    factorize,
    literal_root_count,
    paper_upper_bound,
    sqrt_units,
)

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2

CSV_HEADER = ("n", "k", "i", "predecessor")


def natural(text: str) -> int:
    if not text.isdigit() or not text.isascii():
        raise argparse.ArgumentTypeError(f"expected a decimal natural number, got {text!r}")
    return int(text)


def positive(text: str) -> int:
    v = natural(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a value >= 1")
    return v


def members_csv(members: Sequence[ChainMember]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for m in sorted(members, key=lambda m: (m.value, m.k, m.i)):
        w.writerow((m.value, m.k, m.i, m.predecessor))
    return buf.getvalue()


def read_members_csv(path: str | Path) -> list[ChainMember]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValueError(f"{path}: expected header {','.join(CSV_HEADER)}")
        return [ChainMember(int(r["n"]), int(r["k"]), int(r["i"]), int(r["predecessor"])) for r in reader]


def report_table(r: CensusReport) -> str:
    hist = ", ".join(f"|A|={s}: {c}" for s, c in sorted(r.histogram.items())) or "-"
    lines = [
        f"x                    {r.x}",
        f"chains scanned       {r.chains_scanned}",
        f"members (total)      {r.members_total}",
        f"members (distinct)   {r.members_distinct}",
        f"T_x                  {r.t_x}  (bound {r.t_x_bound:.3f}, {'ok' if r.t_x_within_bound else 'EXCEEDED'})",
        f"histogram            {hist}",
        f"max |A(n)|           {r.max_size} at n={r.max_size_at}",
        f"average B            {r.average_b} = {float(r.average_b):.9f}"
        f"  (bound {r.b_bound:.9f}, {'ok' if r.b_within_bound else 'EXCEEDED'})",
        f"elapsed              {r.elapsed:.3f} s",
    ]
    for value, coords in r.duplicates:
        where = ", ".join(str(c) for c in coords)
        lines.append(f"COUNTEREXAMPLE n={value} lies in chains {where}; |A(n)| = {2 + len(coords)}")
    status = "OK" if r.holds else "COUNTEREXAMPLE"
    lines.append(
        f"RESULT: {status} x={r.x} t_x={r.t_x} duplicates={len(r.duplicates)} max_size={r.max_size}"
    )
    return "\n".join(lines) + "\n"


def emit_report(report: CensusReport, fmt: str) -> bytes:
    if fmt == "json":
        return report.to_json().encode()
    if fmt == "csv":
        return members_csv(report.members).encode()
    if fmt == "table":
        return report_table(report).encode()
    raise ValueError(f"unknown report format {fmt!r}")


def _dump_json(obj: object, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def cmd_an(args: argparse.Namespace, out: TextIO) -> int:
    engine = {"brute": aset_brute, "fast": aset_fast, "chain": aset_chain}[args.method]
    res = engine(args.n)
    if args.json:
        _dump_json({"n": res.n, "elements": list(res.elements), "size": len(res), "method": res.method}, out)
    else:
        out.write(f"{res}\n")
    return EXIT_COUNTEREXAMPLE if len(res) > 3 else EXIT_OK


def cmd_roots(args: argparse.Namespace, out: TextIO) -> int:
    n = args.n
    roots = sqrt_units(n)
    info = {
        "n": n,
        "factors": [list(pe) for pe in factorize(n).factors],
        "roots": roots,
        "count": correct_root_count(n),
        "literal_count": literal_root_count(n),
        "upper_bound": paper_upper_bound(n),
        "literal_upper_bound": paper_upper_bound(n, literal=True),
    }
    if args.json:
        _dump_json(info, out)
    else:
        out.write(f"square roots of 1 mod {n}: {', '.join(map(str, roots))} (count {len(roots)})\n")
        out.write(f"displayed-formula count {info['literal_count']}\n")
        out.write(f"|A(n)| bound min(#roots, sigma0(n^2-1)) = {info['upper_bound']}"
                  f" (2^w form: {info['literal_upper_bound']})\n")
    return EXIT_OK


def cmd_chain(args: argparse.Namespace, out: TextIO) -> int:
    k = args.k
    if k < 3:
        raise ValueError(f"chain generator k must be >= 3, got {k}")
    if args.limit is not None:
        rows = [(c.i, v) for c, v in chain_iter(k, args.limit)]
    else:
        rows = [(i, g_eval(i, k)) for i in range(2, 2 + args.count)]
    if args.json:
        _dump_json({"k": k, "members": [{"i": i, "value": str(v) if v > 2**53 else v} for i, v in rows]}, out)
    else:
        for i, v in rows:
            out.write(f"G_{i}({k}) = {v}\n")
    return EXIT_OK


def cmd_descend(args: argparse.Namespace, out: TextIO) -> int:
    trace = descend(args.a, args.n)
    if args.json:
        _dump_json({"z": trace.z, "steps": [list(s) for s in trace.steps], "k": trace.coord.k, "i": trace.coord.i}, out)
    else:
        out.write(f"{trace}\n")
    return EXIT_OK


def cmd_poly(args: argparse.Namespace, out: TextIO) -> int:
    coeffs, evaluate = (g_coeffs, g_eval) if args.family == "g" else (f_coeffs, f_eval)
    p = coeffs(args.index)
    name = args.family.upper()
    if args.json:
        d: dict[str, object] = {"family": name, "index": args.index, "coeffs": list(p.coeffs)}
        if args.at is not None:
            d["value"] = evaluate(args.index, args.at)
        _dump_json(d, out)
    else:
        out.write(f"{name}_{args.index}(x) = {p}\n")
        if args.at is not None:
            out.write(f"{name}_{args.index}({args.at}) = {evaluate(args.index, args.at)}\n")
    return EXIT_OK


def _census(args: argparse.Namespace) -> CensusReport:
    if getattr(args, "inject_members", None):
        return build_report(args.x, read_members_csv(args.inject_members))
    return verify_conjecture(args.x, workers=args.workers)


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    report = _census(args)
    if args.dump:
        Path(args.dump).write_bytes(emit_report(report, "csv"))
    if args.json_path == "-":
        out.write(report.to_json())
    else:
        if args.json_path:
            Path(args.json_path).write_bytes(emit_report(report, "json"))
        out.write(report_table(report))
    return EXIT_OK if report.holds else EXIT_COUNTEREXAMPLE


def cmd_stats(args: argparse.Namespace, out: TextIO) -> int:
    report = _census(args)
    if args.json:
        d = report.to_dict()
        d["t_x_within_bound"] = report.t_x_within_bound
        d["b_within_bound"] = report.b_within_bound
        _dump_json(d, out)
    else:
        out.write(report_table(report))
    return EXIT_OK if report.holds else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="unitychain", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("an", help="compute A(n)")
    s.add_argument("n", type=natural)
    s.add_argument("--method", choices=("brute", "fast", "chain"), default="fast")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_an)

    s = sub.add_parser("roots", help="square roots of 1 mod n and the size bound")
    s.add_argument("n", type=natural)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("chain", help="members of the chain C_k")
    s.add_argument("k", type=natural)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--limit", type=natural, help="list members <= LIMIT")
    g.add_argument("--count", type=positive, default=10, help="list the first COUNT members")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_chain)

    s = sub.add_parser("descend", help="descend from a in A(n) to (1, z)")
    s.add_argument("a", type=natural)
    s.add_argument("n", type=natural)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_descend)

    s = sub.add_parser("poly", help="coefficients / values of G_i or F_i")
    s.add_argument("family", choices=("g", "f"))
    s.add_argument("index", type=natural)
    s.add_argument("--at", type=natural, help="evaluate at this point")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_poly)

    s = sub.add_parser("verify", help="check |A(n)| <= 3 for all n <= X via chain collisions")
    s.add_argument("--max", dest="x", type=natural, required=True)
    s.add_argument("--workers", type=positive, default=default_workers(),
                   help="worker processes (default: $UNITYCHAIN_WORKERS or 1)")
    s.add_argument("--dump", metavar="PATH", help="write members as CSV")
    s.add_argument("--json", dest="json_path", metavar="PATH", help="write the JSON report ('-' for stdout)")
    s.add_argument("--inject-members", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="T_x, histogram and average |A(n)| for n <= X")
    s.add_argument("x", type=natural)
    s.add_argument("--workers", type=positive, default=default_workers())
    s.add_argument("--json", action="store_true")
    s.add_argument("--inject-members", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_stats)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    try:
        parser = build_parser()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args, out)
    except (ValueError, ArithmeticError, MemoryError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
