"""Command-line front end.

Subcommands: analyze, normalize, verify, word, orbits.  Exit status is 0 on
success, 1 when a verification fails, 2 on usage or parse errors and 3 when
the map lies outside the classification scope.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .classify import ConsistencyError, NoNormalForm, WitnessKind, analyze, detect, normal_form
from .corpus import random_standard_map
from .dynamics import DynamicsError, find_symmetric_orbits
from .maps import (
    GeneralisedStandardMap,
    MapError,
    ScopeError,
    cyclic_reduce,
    letter_class,
    reduce_word,
    word_of_standard_form,
)
from .parse import ParseError, parse_candidate, parse_map
from .report import change_doc, change_text, map_doc, report_document, to_json, to_text
from .verify import check_reversing, check_symmetry, element_order

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SCOPE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_map(args) -> GeneralisedStandardMap:
    if args.expr:
        return parse_map(args.expr)
    if not args.map:
        raise UsageError("give --map PATH or --expr TEXT")
    try:
        text = Path(args.map).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.map}: {exc.strerror}") from None
    return parse_map(text)


def _interval(text: str):
    try:
        a, b = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("interval must look like A:B") from None
    if not a < b:
        raise argparse.ArgumentTypeError("interval needs A < B")
    return a, b


def _emit(doc, fmt: str, text: str, out):
    if fmt == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(text + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_analyze(args, out) -> int:
    if args.random:
        rng = random.Random(args.seed)
        maps = [random_standard_map(rng) for _ in range(args.count)]
    else:
        maps = [_load_map(args)]
    reports = [analyze(L) for L in maps]
    if args.format == "json":
        docs = [report_document(r) for r in reports]
        payload = docs[0] if not args.random else {"schema_version": 1, "seed": args.seed, "reports": docs}
        out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write("\n\n".join(to_text(r) for r in reports) + "\n")
    return EXIT_OK


def cmd_normalize(args, out) -> int:
    L = _load_map(args)
    nf = normal_form(L, detect(L))
    doc = {"schema_version": 1, "input": map_doc(L), "row": nf.row.value,
           "change": change_doc(nf.change), "normal_form": map_doc(nf.map)}
    text = f"{nf.map}\nrow {nf.row.value}; change {change_text(nf.change)}"
    _emit(doc, args.format, text, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    L = _load_map(args)
    F = parse_candidate(args.candidate)
    Lm = L.to_planar()
    if args.relation == "symmetry":
        ok = check_symmetry(F, Lm)
    else:
        ok = check_reversing(F, Lm)
    order = element_order(F, args.max_order)
    doc = {"schema_version": 1, "input": map_doc(L), "candidate": args.candidate,
           "relation": args.relation, "result": "PASS" if ok else "FAIL", "order": order}
    text = f"{'PASS' if ok else 'FAIL'}: {args.relation} relation; order {order if order else 'infinite or > ' + str(args.max_order)}"
    _emit(doc, args.format, text, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_word(args, out) -> int:
    L = _load_map(args)
    sw = word_of_standard_form(L)
    red = reduce_word(sw.word)
    u, h = cyclic_reduce(sw.word)
    letters = [{"name": n, "class": letter_class(g).value, "letter": str(g)}
               for n, g in zip(sw.names, sw.word)]
    doc = {"schema_version": 1, "input": map_doc(L), "type": sw.type.value, "word": list(sw.names),
           "letters": letters, "reduced_length": len(red),
           "pattern": [c.value for c in red.pattern()],
           "cyclically_reduced": len(u) == 0, "conjugator_length": len(u)}
    lines = [sw.label()]
    lines += [f"  {d['name']:<3} {d['class']:<4} {d['letter']}" for d in letters]
    lines.append(f"reduced length {len(red)}; pattern {' '.join(doc['pattern'])}; "
                 f"{'cyclically reduced' if len(u) == 0 else f'conjugate of a length-{len(h)} word'}")
    _emit(doc, args.format, "\n".join(lines), out)
    return EXIT_OK


def cmd_orbits(args, out) -> int:
    L = _load_map(args)
    report = analyze(L)
    invols = [w for w in report.witnesses
              if w.kind is WitnessKind.REVERSING and w.order_info.value == "involution"]
    if args.witness:
        invols = [w for w in invols if w.name == args.witness]
    if not invols:
        raise UsageError("no involutory reversing symmetry available" +
                         (f" named {args.witness}" if args.witness else ""))
    W = invols[0]
    search = find_symmetric_orbits(L, W.map, args.period, args.interval, args.tol, samples=args.samples)
    for d in search.diagnostics:
        print(f"note: {d}", file=sys.stderr)
    print(f"# {len(search.orbits)} symmetric orbit(s) of period {args.period} via {W.name}; "
          f"Fix = {search.start_curve.describe()}", file=sys.stderr)
    stream = open(args.output, "w", newline="") if args.output else out
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["k", "x", "y"])
        for orb in search.orbits:
            for k, x, y in orb.as_rows():
                writer.writerow([k, repr(float(x)), repr(float(y))])
    finally:
        if args.output:
            stream.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyrev", description="Symmetries and reversibility of polynomial maps "
                                 "x' = x + p1(y), y' = y + p2(x').")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def with_map(p, fmt=True):
        p.add_argument("--map", metavar="PATH", help="map definition file")
        p.add_argument("--expr", "-e", metavar="TEXT", help='inline definition, e.g. "p1 = -y; p2 = 2*x - 2*x^2"')
        if fmt:
            p.add_argument("--format", choices=("json", "text"), default="text")
        return p

    a = with_map(sub.add_parser("analyze", help="full symmetry analysis"))
    a.add_argument("--random", action="store_true", help="analyze random maps instead of --map")
    a.add_argument("--count", type=int, default=5)
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=cmd_analyze)

    n = with_map(sub.add_parser("normalize", help="normal form and the affine change reaching it"))
    n.set_defaults(func=cmd_normalize)

    v = with_map(sub.add_parser("verify", help="check a candidate (reversing) symmetry exactly"))
    v.add_argument("--candidate", required=True, help='e.g. "x -> x, y -> -y + 2*x - 2*x^2"')
    v.add_argument("--relation", choices=("symmetry", "reversing"), default="reversing")
    v.add_argument("--max-order", type=int, default=12)
    v.set_defaults(func=cmd_verify)

    w = with_map(sub.add_parser("word", help="factor the map into affine and elementary letters"))
    w.set_defaults(func=cmd_word)

    o = with_map(sub.add_parser("orbits", help="symmetric periodic orbits as CSV"), fmt=False)
    o.add_argument("--period", type=int, required=True)
    o.add_argument("--interval", type=_interval, default=(-2.0, 2.0), metavar="A:B")
    o.add_argument("--tol", type=float, default=1e-10)
    o.add_argument("--samples", type=int, default=4001)
    o.add_argument("--witness", help="name of the reversing involution to use (default: first)")
    o.add_argument("--output", "-o", metavar="PATH", help="CSV file (default stdout)")
    o.set_defaults(func=cmd_orbits)
    return ap


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    # let "--interval -2:2" through; argparse would take -2:2 for an option
    for i in range(len(argv) - 1):
        if argv[i] == "--interval":
            argv[i:i + 2] = [f"--interval={argv[i + 1]}"]
            break
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args, out)
    except ScopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except (ParseError, UsageError, NoNormalForm, MapError, DynamicsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:  # pragma: no cover - would be a bug
        print(f"internal error: {exc}", file=sys.stderr)
        return 70


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
