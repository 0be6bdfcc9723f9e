"""Periodic Costas arrays: value type, verifier, correlation, canonical text."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import groups
from .groups import Element, GroupSpec, StructureError

Shift = Tuple[Element, int]


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodicArray:
    """A permutation from the non-star grid points onto ``Z_{order-1}``.

    ``values`` is laid out by mixed-radix index and holds ``None`` in the
    star slot; ``star`` records the same position as a group element.
    """

    spec: GroupSpec
    star: Element
    values: Tuple[Optional[int], ...]

    def __post_init__(self):
        spec = self.spec
        star = spec.check(tuple(self.star))
        object.__setattr__(self, "star", star)
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if len(values) != spec.order:
            raise StructureError(f"expected {spec.order} slots, got {len(values)}")
        s = groups.index(spec, star)
        if values[s] is not None:
            raise StructureError("star slot must be empty")
        rest = [v for i, v in enumerate(values) if i != s]
        if any(v is None for v in rest):
            raise StructureError("only the star slot may be empty")
        if sorted(rest) != list(range(spec.modulus)):
            raise StructureError(f"values are not a permutation of 0..{spec.modulus - 1}")

    @classmethod
    def from_mapping(cls, spec: GroupSpec, star: Sequence[int], f: dict) -> "PeriodicArray":
        values = [None] * spec.order
        for a, v in f.items():
            values[groups.index(spec, a)] = v
        return cls(spec, tuple(star), tuple(values))

    @property
    def modulus(self) -> int:
        return self.spec.modulus

    @property
    def star_index(self) -> int:
        return groups.index(self.spec, self.star)

    @property
    def is_generic(self) -> bool:
        return self.star == self.spec.zero

    def __getitem__(self, a: Sequence[int]) -> Optional[int]:
        return self.values[groups.index(self.spec, a)]


def distinct_differences(spec: GroupSpec, star_index: int, values: Sequence[Optional[int]]) -> bool:
    """Index-level verifier shared by :func:`verify` and the search code."""
    n = spec.modulus
    table = groups.add_table(spec)
    for h in range(1, spec.order):
        seen = 0
        for a in range(spec.order):
            b = table[a][h]
            if a == star_index or b == star_index:
                continue
            bit = 1 << ((values[b] - values[a]) % n)
            if seen & bit:
                return False
            seen |= bit
    return True


def verify(arr: PeriodicArray) -> bool:
    """Distinct difference check over every nonzero shift."""
    return distinct_differences(arr.spec, arr.star_index, arr.values)


def autocorrelation(arr: PeriodicArray, shift: Shift) -> int:
    h, s = shift
    spec = arr.spec
    hi = groups.index(spec, h)
    table = groups.add_table(spec)
    star = arr.star_index
    n = arr.modulus
    vals = arr.values
    count = 0
    for a in range(spec.order):
        b = table[a][hi]
        if a != star and b != star and (vals[b] - vals[a] - s) % n == 0:
            count += 1
    return count


@dataclass(frozen=True)
class CorrelationReport:
    peak: int
    max_off_peak: int
    worst_shift: Shift


def correlation_report(arr: PeriodicArray) -> CorrelationReport:
    """Sweep every nonzero (grid shift, value shift) pair.

    Ties for the maximum go to the smallest ``index(h) * modulus + s``.
    """
    spec = arr.spec
    n = arr.modulus
    table = groups.add_table(spec)
    star = arr.star_index
    vals = arr.values
    peak = autocorrelation(arr, (spec.zero, 0))
    best, best_key = -1, None
    for hi in range(spec.order):
        counts = [0] * n
        for a in range(spec.order):
            b = table[a][hi]
            if a != star and b != star:
                counts[(vals[b] - vals[a]) % n] += 1
        for s in range(n):
            if hi == 0 and s == 0:
                continue
            if counts[s] > best:
                best, best_key = counts[s], (hi, s)
    hi, s = best_key
    return CorrelationReport(peak, best, (groups.unindex(spec, hi), s))


def canonical_bytes(arr: PeriodicArray) -> bytes:
    lines = [
        "MPCA " + " ".join(map(str, arr.spec.factors)),
        f"MOD {arr.modulus}",
        "STAR " + " ".join(map(str, arr.star)),
        "VALUES " + " ".join("*" if v is None else str(v) for v in arr.values),
    ]
    return ("\n".join(lines) + "\n").encode("utf-8")


def _ints(tokens, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer token in {what}") from None


def parse(data: bytes) -> PeriodicArray:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(str(exc)) from None
    lines = text.splitlines()
    if len(lines) != 4:
        raise ParseError(f"expected 4 lines, got {len(lines)}")
    fields = [line.split() for line in lines]
    for toks, key in zip(fields, ("MPCA", "MOD", "STAR", "VALUES")):
        if not toks or toks[0] != key:
            raise ParseError(f"expected a {key} line")
    try:
        spec = GroupSpec(tuple(_ints(fields[0][1:], "MPCA")))
    except StructureError as exc:
        raise ParseError(str(exc)) from None
    mod = _ints(fields[1][1:], "MOD")
    if mod != [spec.modulus]:
        raise ParseError(f"MOD must be {spec.modulus}")
    star = tuple(_ints(fields[2][1:], "STAR"))
    try:
        star_index = groups.index(spec, star)
    except StructureError as exc:
        raise ParseError(str(exc)) from None
    tokens = fields[3][1:]
    if len(tokens) != spec.order:
        raise ParseError(f"expected {spec.order} values, got {len(tokens)}")
    values = []
    for tok in tokens:
        if tok == "*":
            values.append(None)
            continue
        (v,) = _ints([tok], "VALUES")
        if not 0 <= v < spec.modulus:
            raise ParseError(f"value {v} out of range for modulus {spec.modulus}")
        values.append(v)
    if values[star_index] is not None:
        raise ParseError("missing star at the STAR position")
    if values.count(None) != 1:
        raise ParseError("exactly one '*' token is allowed")
    if len(set(values)) != len(values):
        raise ParseError("duplicate values")
    return PeriodicArray(spec, star, tuple(values))


def render(arr: PeriodicArray) -> str:
    """Plain text grid with row 0 at the bottom.

    Arrays of rank above 2 print one block per value of the leading
    coordinates; rank 1 prints a single line.
    """
    spec = arr.spec
    cells = ["*" if v is None else str(v) for v in arr.values]
    width = max(len(c) for c in cells)
    if spec.rank == 1:
        return " ".join(c.rjust(width) for c in cells)
    rows, cols = spec.factors[-2:]
    block = rows * cols
    out = []
    for start in range(0, spec.order, block):
        if spec.rank > 2:
            lead = groups.unindex(spec, start)[:-2]
            out.append("[" + ",".join(map(str, lead)) + ",:,:]")
        for i in reversed(range(rows)):
            row = cells[start + i * cols:start + (i + 1) * cols]
            out.append(" ".join(c.rjust(width) for c in row))
    return "\n".join(out)


def from_grid(rows: Sequence[Sequence]) -> PeriodicArray:
    """Inverse of :func:`render` for rank 2: rows listed top to bottom.

    The star cell may be given as ``None`` or ``"*"``.
    """
    rows = [list(r) for r in reversed(rows)]
    spec = GroupSpec((len(rows), len(rows[0])))
    values = []
    star = None
    for i, row in enumerate(rows):
        if len(row) != spec.factors[1]:
            raise StructureError("ragged grid")
        for j, v in enumerate(row):
            if v is None or v == "*":
                star = (i, j)
                values.append(None)
            else:
                values.append(int(v))
    if star is None:
        raise StructureError("grid has no star cell")
    return PeriodicArray(spec, star, tuple(values))
