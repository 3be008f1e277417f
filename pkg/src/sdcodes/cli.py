"""Command-line front end: ``sdcodes <subcommand> ...``.

Codes are referenced by catalog id (``C46``, ``N56.7``, ``S44.1.24`` ...) or
by path to a code file.  Exit status: 0 success, 1 verification failure,
2 usage, parse, precondition or budget errors.

``--format rows`` prints one tab-separated record per result with a fixed
field order; ``--threads`` (default from ``SDCODES_THREADS``) sets the
enumeration thread count, which never changes any output.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import catalog
from .codes import (
    AtLeast,
    LinearCode,
    ParityClass,
    bounds,
    is_self_dual,
    min_weight,
    parity_class,
    weight_enumerator,
)
from .constructions import (
    enumerate_self_dual_neighbors,
    extend_odd,
    n1_n3_neighbors,
    neighbor,
    neighbor_multi,
    sample_self_dual_neighbors,
    subtract,
)
from .equivalence import DEFAULT_BUDGET, partition_classes
from .errors import BudgetExceeded, CodeError, ParseError, PreconditionError
from .gf2core import BitVector
from .shadow import s_extremality, shadow_decomposition


class _Out:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def text(self, line: str) -> None:
        if self.fmt == "text":
            print(line)

    def row(self, *fields) -> None:
        if self.fmt == "rows":
            print("\t".join(str(f) for f in fields))


def _params(c: LinearCode) -> str:
    d = min_weight(c) if c.k else 0
    return f"[{c.n},{c.k},{d}]"


def _write(c: LinearCode, path: str | Path, comments=()) -> None:
    Path(path).write_text(catalog.render_code(c, comments))


def _vectors(args, n: int) -> list[BitVector]:
    out = []
    for s in args.support or []:
        out += catalog.parse_supports(s, n)
    if args.supports_file:
        out += catalog.parse_supports(Path(args.supports_file).read_text(), n)
    if not out:
        raise ParseError("no vector given; use --support or --supports-file")
    return out


def cmd_info(args, out: _Out) -> int:
    c = catalog.load_code(args.code)
    sd = is_self_dual(c)
    pc = parity_class(c) if sd else None
    d = min_weight(c) if c.k else None
    out.text(f"[{c.n},{c.k},{d}]  self-dual: {'yes' if sd else 'no'}" + (f"  {pc}" if pc else ""))
    out.row("info", c.n, c.k, d, int(sd), pc or "-")
    return 0


def cmd_verify(args, out: _Out) -> int:
    expected = {}
    for key in ("n", "k", "d"):
        v = getattr(args, f"expect_{key}")
        if v is not None:
            expected[key] = v
    if args.code in catalog.ENTRIES and not expected:
        rep = catalog.verify_entry(args.code)
    else:
        rep = catalog.verify_code(catalog.load_code(args.code), expected, args.code)
    out.text(str(rep))
    for name, exp, got, ok in rep.checks:
        out.row("check", rep.id, name, exp, got, "pass" if ok else "fail")
    return 0 if rep.passed else 1


def cmd_shadow(args, out: _Out) -> int:
    c = catalog.load_code(args.code)
    sd = shadow_decomposition(c)
    we = sd.shadow_weight_enumerator()
    out.text(f"d(S)={we.min_nonzero_weight()}")
    out.text(f"C0: [{sd.c0.n},{sd.c0.k}]")
    out.text(f"rep1: {sd.rep1}\nrep2: {sd.rep2}\nrep3: {sd.rep3}")
    out.text(f"shadow weight enumerator: {we}")
    out.row("shadow", c.n, we.min_nonzero_weight(), sd.rep1, sd.rep2, sd.rep3,
            ",".join(map(str, we.counts)))
    return 0


def cmd_sextremal(args, out: _Out) -> int:
    c = catalog.load_code(args.code)
    r = s_extremality(c)
    out.text(str(r))
    out.row("sextremal", c.n, c.k, r.d, r.d_shadow, r.bound, int(r.exceptional),
            "yes" if r.s_extremal else "no")
    return 0


def cmd_minweight(args, out: _Out) -> int:
    c = catalog.load_code(args.code)
    d = min_weight(c, early_abort_at=args.abort_at)
    if isinstance(d, AtLeast):
        out.text(f"d >= {d.threshold}")
    elif args.abort_at is not None:
        out.text(f"d <= {d} (witness below {args.abort_at})")
    else:
        out.text(f"d = {d}")
    out.row("minweight", c.n, c.k, d)
    return 0


def cmd_wenum(args, out: _Out) -> int:
    c = catalog.load_code(args.code)
    we = weight_enumerator(c)
    out.text(str(we))
    for w, cnt in we.nonzero().items():
        out.row("wenum", w, cnt)
    return 0


def cmd_neighbor(args, out: _Out) -> int:
    c = catalog.load_code(args.code)
    xs = _vectors(args, c.n)
    nb = neighbor(c, xs[0]) if len(xs) == 1 else neighbor_multi(c, xs)
    out.text(f"neighbor {_params(nb)}")
    out.row("neighbor", nb.n, nb.k, min_weight(nb))
    if args.output:
        _write(nb, args.output, [f"neighbor of {args.code}"])
    return 0


def cmd_neighbors_enum(args, out: _Out) -> int:
    c = catalog.load_code(args.code)
    kept: list[LinearCode] = []

    def keep(nb: LinearCode) -> bool:
        if args.filter_d is None:
            return True
        return not isinstance(min_weight(nb, early_abort_at=args.filter_d), int)

    if args.sample is not None:
        total = sample_self_dual_neighbors(c, args.sample, seed=args.seed, filter=keep,
                                           visitor=kept.append)
        mode = "sampled"
    else:
        total = enumerate_self_dual_neighbors(c, filter=keep, visitor=kept.append)
        mode = "exhaustive"
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for i, nb in enumerate(kept, start=1):
        d = min_weight(nb)
        out.text(f"neighbor {i}: [{nb.n},{nb.k},{d}]")
        out.row("neighbor", i, nb.n, nb.k, d, ",".join(str(v) for v in nb.gen))
        if out_dir:
            _write(nb, out_dir / f"neighbor-{i}.code")
    out.text(f"{len(kept)} neighbors listed ({total} generated, {mode})")
    out.row("total", total, len(kept), mode)
    return 0


def cmd_n1n3(args, out: _Out) -> int:
    c = catalog.load_code(args.code)
    pair = n1_n3_neighbors(c)
    for name, nb in (("N1", pair.n1), ("N3", pair.n3)):
        if parity_class(nb) is ParityClass.SINGLY_EVEN:
            r = s_extremality(nb)
            out.text(f"{name}: {r}")
            out.row(name, nb.n, nb.k, r.d, r.d_shadow, "yes" if r.s_extremal else "no")
        else:
            out.text(f"{name}: doubly even {_params(nb)}")
            out.row(name, nb.n, nb.k, min_weight(nb), "-", "doubly-even")
        if args.output:
            _write(nb, f"{args.output}.{name}.code", [f"{name} neighbor of {args.code}"])
    return 0


def cmd_subtract(args, out: _Out) -> int:
    c = catalog.load_code(args.code)
    s = subtract(c, args.i, args.j)
    path = args.output or f"S{s.n}.{args.i}.{args.j}.code"
    _write(s, path, [f"{args.code} with coordinates {args.i}, {args.j} subtracted"])
    out.text(f"{_params(s)} written to {path}")
    out.row("subtract", s.n, s.k, min_weight(s), path)
    return 0


def cmd_extend(args, out: _Out) -> int:
    c = catalog.load_code(args.code)
    t = _vectors(args, c.n)
    e = extend_odd(c, t[0])
    out.text(f"extension {_params(e)}")
    out.row("extend", e.n, e.k, min_weight(e))
    if args.output:
        _write(e, args.output, [f"extension of {args.code}"])
    return 0


def cmd_classify(args, out: _Out) -> int:
    codes = [catalog.load_code(ref) for ref in args.codes]
    part = partition_classes(codes, budget=args.budget)
    out.text(f"{len(part.classes)} classes")
    for cls in part.classes:
        names = [args.codes[i] for i in cls]
        out.text(f"{names[0]}: " + " ".join(names))
        out.row("class", names[0], ",".join(names))
    out.text("unresolved pairs:" + ("" if part.unresolved else " none"))
    for a, b in part.unresolved:
        out.text(f"  {args.codes[a]} {args.codes[b]}")
        out.row("unresolved", args.codes[a], args.codes[b])
    return 0


def cmd_catalog(args, out: _Out) -> int:
    ids = args.ids or list(catalog.ENTRIES)
    status = 0
    for id in ids:
        e = catalog.entry(id)
        if args.verify:
            rep = catalog.verify_entry(id)
            status |= 0 if rep.passed else 1
            out.text(f"{id}: {'pass' if rep.passed else 'FAIL'}")
            out.row("entry", id, "pass" if rep.passed else "fail")
            if not rep.passed:
                for line in rep.lines():
                    out.text("  " + line)
        elif args.write:
            path = Path(args.write) / f"{id}.code"
            path.parent.mkdir(parents=True, exist_ok=True)
            _write(catalog.materialize(id), path, [e.citation])
            out.text(f"{id} -> {path}")
            out.row("entry", id, path)
        else:
            exp = e.expected
            out.text(f"{id}\t{e.kind}\t[{exp['n']},{exp['k']},{exp['d']}]\t{e.citation}")
            out.row("entry", id, e.kind, exp["n"], exp["k"], exp["d"])
    return status


def cmd_bounds(args, out: _Out) -> int:
    r = bounds(args.n, args.d)
    if args.d is not None and r.admissible is not None:
        out.text(f"{'admissible' if r.admissible else 'not admissible'} ({r.range_rule})")
    out.text(str(r))
    out.row("bounds", r.n, r.extremal_bound, r.d if r.d is not None else "-",
            r.shadow_bound if r.shadow_bound is not None else "-", int(r.exceptional),
            "-" if r.admissible is None else int(r.admissible))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sdcodes", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["text", "rows"], default="text")
    p.add_argument("--threads", type=int, default=None,
                   help="enumeration threads (default: $SDCODES_THREADS or all cores)")
    sub = p.add_subparsers(dest="command", required=True)

    def code_cmd(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("code", help="catalog id or code file")
        sp.set_defaults(fn=fn)
        return sp

    def vector_opts(sp):
        sp.add_argument("--support", action="append",
                        help="1-indexed support, e.g. '2,3,10' (repeatable)")
        sp.add_argument("--supports-file", help="file in support-list format")
        sp.add_argument("-o", "--output")

    code_cmd("info", cmd_info, "parameters and parity class")
    sp = code_cmd("verify", cmd_verify, "check self-duality and declared parameters")
    sp.add_argument("--expect-n", type=int)
    sp.add_argument("--expect-k", type=int)
    sp.add_argument("--expect-d", type=int)
    code_cmd("shadow", cmd_shadow, "shadow decomposition")
    code_cmd("sextremal", cmd_sextremal, "s-extremality test")
    sp = code_cmd("minweight", cmd_minweight, "minimum weight")
    sp.add_argument("--abort-at", type=int, default=None)
    code_cmd("wenum", cmd_wenum, "weight enumerator")
    vector_opts(code_cmd("neighbor", cmd_neighbor, "neighbor through one or more vectors"))
    sp = code_cmd("neighbors-enum", cmd_neighbors_enum, "enumerate self-dual neighbors")
    sp.add_argument("--filter-d", type=int, default=None,
                    help="keep neighbors with minimum weight >= this value")
    sp.add_argument("--sample", type=int, default=None,
                    help="use this many random functionals instead of all (non-exhaustive)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out-dir")
    sp = code_cmd("n1n3", cmd_n1n3, "the N1/N3 neighbors")
    sp.add_argument("-o", "--output", help="output prefix")
    sp = code_cmd("subtract", cmd_subtract, "subtract two coordinates")
    sp.add_argument("i", type=int)
    sp.add_argument("j", type=int)
    sp.add_argument("-o", "--output")
    vector_opts(code_cmd("extend", cmd_extend, "extension by an odd-weight vector"))
    sp = sub.add_parser("classify", help="partition codes into equivalence classes")
    sp.add_argument("codes", nargs="+")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(fn=cmd_classify)
    sp = sub.add_parser("catalog", help="list, verify or write catalog entries")
    sp.add_argument("ids", nargs="*")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--verify", action="store_true")
    g.add_argument("--write", metavar="DIR")
    sp.set_defaults(fn=cmd_catalog)
    sp = sub.add_parser("bounds", help="minimum-weight and shadow bounds")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, default=None)
    sp.set_defaults(fn=cmd_bounds)
    return p


def _set_threads(requested: int | None) -> None:
    import numba

    if requested is None:
        env = os.environ.get("SDCODES_THREADS")
        requested = int(env) if env else None
    if requested is not None:
        numba.set_num_threads(max(1, min(requested, numba.config.NUMBA_NUM_THREADS)))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _set_threads(args.threads)
        return args.fn(args, _Out(args.format))
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc}", file=sys.stderr)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
    except ParseError as exc:
        print(f"error: parse error: {exc}", file=sys.stderr)
    except BudgetExceeded as exc:
        print(f"error: budget exhausted: {exc}", file=sys.stderr)
    except PreconditionError as exc:
        print(f"error: precondition failed: {exc}", file=sys.stderr)
    except (CodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
