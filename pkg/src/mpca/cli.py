"""Command-line interface: ``mpca <command> ...``.

Arrays travel between commands as files in the canonical text format.
"""

from __future__ import annotations

import argparse
import hashlib
import logging
import sys
from pathlib import Path

from .array import PeriodicArray, canonical_bytes, correlation_report, parse, render, verify
from .field import FieldSpec, build_table, default_field
from .groups import GroupSpec
from .search import SearchConfig, default_workers, enumerate_arrays, enumerate_parallel
from .symmetry import (
    FAMILIES,
    Add,
    Linear,
    LinearMap,
    Mul,
    Translate,
    anchored_slice,
    orbit_closure_arrays,
)
from .welch import construct_welch, reproduce_paper_example

log = logging.getLogger("mpca")

# Largest search run without --force: (order - 2)! <= 10!
FEASIBLE_FREE_POSITIONS = 10


class CommandError(Exception):
    pass


def _read(path: str) -> PeriodicArray:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return parse(data)


def _write(arr: PeriodicArray, out) -> None:
    data = canonical_bytes(arr)
    if out in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def _file_name(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16] + ".mpca"


def _write_dir(out: str, blobs) -> int:
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    n = 0
    for data in blobs:
        (d / _file_name(data)).write_bytes(data)
        n += 1
    return n


def _report_verify(arr: PeriodicArray) -> bool:
    ok = verify(arr)
    print("PASS" if ok else "FAIL", file=sys.stderr)
    return ok


def _ints(text: str):
    return tuple(int(x) for x in text.split(","))


def _feasible(spec: GroupSpec, force: bool) -> None:
    if spec.order - 2 > FEASIBLE_FREE_POSITIONS and not force:
        raise CommandError(
            f"exhaustive search over {spec} walks up to {spec.order - 2}! leaves; pass --force to run it"
        )


def cmd_construct(args) -> int:
    if args.match_paper:
        hits = reproduce_paper_example()
        for fspec, e, _ in hits:
            print(f"MATCH poly={','.join(map(str, fspec.modulus))} logbase={e}  ({fspec.describe()})")
        if not hits:
            print("NO MATCH")
            return 1
        if args.out:
            _write(hits[0][2], args.out)
        return 0
    if not args.group:
        raise CommandError("--group is required")
    spec = GroupSpec.parse(args.group)
    if not spec.is_elementary:
        raise CommandError(f"Welch construction needs (Z_p)^m with p prime, got {spec}")
    p, m = spec.factors[0], spec.rank
    if args.poly == "auto":
        fspec = default_field(p, m)
    else:
        fspec = FieldSpec(p, m, _ints(args.poly))
    arr = construct_welch(build_table(fspec, args.logbase))
    log.info("modulus %s, log base alpha^%d", fspec.describe(), args.logbase)
    _write(arr, args.out)
    return 0 if _report_verify(arr) else 1


def cmd_verify(args) -> int:
    ok = verify(_read(args.file))
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


class _OpAction(argparse.Action):
    """Collects ``--add/--mul/--linear/--translate`` in command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        ops = getattr(namespace, "ops", None) or []
        ops.append((self.dest, values))
        namespace.ops = ops


def _build_op(kind: str, text: str, arr: PeriodicArray):
    if kind == "add":
        return Add(int(text))
    if kind == "mul":
        return Mul(int(text))
    if kind == "translate":
        return Translate(arr.spec.check(_ints(text)))
    spec = arr.spec
    if not spec.is_elementary:
        raise CommandError(f"--linear needs an elementary abelian group, got {spec}")
    return Linear(LinearMap.parse(spec.factors[0], text))


def cmd_apply(args) -> int:
    arr = _read(args.file)
    for kind, text in args.ops or []:
        arr = _build_op(kind, text, arr).apply(arr)
    _write(arr, args.out)
    if args.no_verify:
        return 0
    return 0 if _report_verify(arr) else 1


def cmd_correlate(args) -> int:
    arr = _read(args.file)
    rep = correlation_report(arr)
    h, s = rep.worst_shift
    print(f"PEAK {rep.peak}")
    print(f"MAX_OFF_PEAK {rep.max_off_peak}")
    print(f"WORST_SHIFT {','.join(map(str, h))} {s}")
    return 0


def cmd_render(args) -> int:
    arr = _read(args.file)
    if args.two_d:
        if arr.spec.rank != 2:
            raise CommandError(f"--2d needs a rank-2 group, got {arr.spec}")
        print(render(arr))
    else:
        sys.stdout.write(canonical_bytes(arr).decode())
    return 0


def cmd_enumerate(args) -> int:
    spec = GroupSpec.parse(args.group)
    _feasible(spec, args.force)
    cfg = SearchConfig(spec, args.anchor, args.split_depth, args.task)
    collect = not args.count_only
    if args.task is not None:
        blobs = []
        sink = (lambda a: blobs.append(canonical_bytes(a))) if collect else None
        count = enumerate_arrays(cfg, sink)
    elif args.split_depth > 0 or args.checkpoint:
        count, blobs = enumerate_parallel(cfg, args.workers, collect=collect, checkpoint=args.checkpoint)
    else:
        blobs = []
        sink = (lambda a: blobs.append(canonical_bytes(a))) if collect else None
        count = enumerate_arrays(cfg, sink)
    if args.out and collect:
        _write_dir(args.out, blobs)
    print(f"COUNT {count} {count * spec.modulus}")
    return 0


def _welch_seed(spec: GroupSpec) -> PeriodicArray:
    return construct_welch(build_table(default_field(spec.factors[0], spec.rank)))


def _families(text: str):
    fams = [f for f in text.split(",") if f] if text else []
    for f in fams:
        if f not in FAMILIES:
            raise CommandError(f"unknown generator family {f!r}; choose from {','.join(FAMILIES)}")
    return fams


def cmd_orbit(args) -> int:
    if args.seed:
        seeds = [_read(path) for path in args.seed]
    elif args.group:
        spec = GroupSpec.parse(args.group)
        if not spec.is_elementary:
            raise CommandError(f"no Welch seed exists over {spec}; pass --seed")
        seeds = [_welch_seed(spec)]
    else:
        raise CommandError("pass --group or --seed")
    arrays = orbit_closure_arrays(seeds, _families(args.gens), args.translations, args.workers)
    if args.anchored:
        arrays = anchored_slice(arrays, args.anchor)
    ok = True
    if not args.no_verify:
        bad = sum(not verify(a) for a in arrays)
        ok = bad == 0
        print(f"VERIFY {'PASS' if ok else 'FAIL'} {len(arrays) - bad}/{len(arrays)}")
    if args.out:
        _write_dir(args.out, (canonical_bytes(a) for a in arrays))
    print(f"ORBIT {len(arrays)}")
    return 0 if ok else 1


def compare_sets(spec: GroupSpec, workers=None):
    """Anchored enumeration vs the anchored slice of the Welch orbit.

    Non-elementary groups have no Welch seed, so their closure side is empty.
    """
    enumerated = set()
    enumerate_arrays(SearchConfig(spec), lambda a: enumerated.add(canonical_bytes(a)))
    if spec.is_elementary:
        orbit = orbit_closure_arrays([_welch_seed(spec)], FAMILIES, workers=workers)
        closure = {canonical_bytes(a) for a in anchored_slice(orbit)}
    else:
        closure = set()
    return enumerated, closure


def cmd_compare(args) -> int:
    spec = GroupSpec.parse(args.group)
    _feasible(spec, args.force)
    enumerated, closure = compare_sets(spec, args.workers)
    equal = enumerated == closure
    print(f"ENUMERATED {len(enumerated)}")
    print(f"CLOSURE {len(closure)}")
    print(f"SYMDIFF {len(enumerated ^ closure)}")
    print("EQUAL" if equal else "UNEQUAL")
    return 0 if equal else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mpca", description="Multidimensional periodic Costas arrays")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="Welch array over GF(p^m)")
    p.add_argument("--group", help="p repeated m times, e.g. 5,5")
    p.add_argument("--poly", default="auto", help="'auto' or c0,...,c{m-1} with x^m = sum c_i x^i")
    p.add_argument("--logbase", type=int, default=1, help="exponent e of the log base alpha^e")
    p.add_argument("--match-paper", action="store_true", help="search GF(25) parameters reproducing the 5x5 reference array")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="distinct difference check")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("apply", help="apply symmetry operations left to right")
    p.add_argument("file")
    for flag, help_text in (
        ("--add", "add s modulo order-1"),
        ("--mul", "multiply by a unit k modulo order-1"),
        ("--linear", 'matrix over Z_p, row-major "r00,r01;r10,r11"'),
        ("--translate", "shift the grid by c1,c2,..."),
    ):
        p.add_argument(flag, dest=flag[2:], action=_OpAction, metavar="ARG", help=help_text)
    p.add_argument("--out")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_apply, ops=None)

    p = sub.add_parser("correlate", help="periodic autocorrelation sweep")
    p.add_argument("file")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("render", help="print an array")
    p.add_argument("file")
    p.add_argument("--2d", dest="two_d", action="store_true", help="grid view, row 0 at the bottom")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("enumerate", help="exhaustive search for generic arrays")
    p.add_argument("--group", required=True)
    p.add_argument("--anchor", type=int, default=0)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--split-depth", type=int, default=0)
    p.add_argument("--task", type=int)
    p.add_argument("--out")
    p.add_argument("--force", action="store_true")
    p.add_argument("--checkpoint", help="resume file recording finished tasks")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("orbit", help="closure under symmetry generators")
    p.add_argument("--group")
    p.add_argument("--seed", action="append")
    p.add_argument("--gens", default=",".join(FAMILIES))
    p.add_argument("--translations", action="store_true")
    p.add_argument("--anchored", action="store_true")
    p.add_argument("--anchor", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("compare", help="enumeration vs Welch orbit closure")
    p.add_argument("--group", required=True)
    p.add_argument("--force", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "workers", None) is None and args.command == "enumerate":
        args.workers = default_workers()
    try:
        return args.func(args)
    except (CommandError, ValueError, OSError) as exc:
        print(f"mpca: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
