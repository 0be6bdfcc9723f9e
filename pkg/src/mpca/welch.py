"""Welch arrays: the discrete logarithm laid out over GF(p^m) coordinates."""

from __future__ import annotations

from typing import List, Tuple

from .array import PeriodicArray, canonical_bytes, from_grid
from .field import FieldSpec, FieldTable, build_table, find_primitive_polys, totient
from math import gcd

# The 5x5 reference array, printed top row first (row index 4 down to 0).
REFERENCE_W = from_grid([
    [1, 17, 14, 15, 10],
    [7, 21, 23, 16, 20],
    [19, 8, 4, 11, 9],
    [13, 22, 3, 2, 5],
    ["*", 0, 6, 18, 12],
])


def construct_welch(table: FieldTable) -> PeriodicArray:
    """Place ``i`` at the coordinates of ``beta^i``; the star sits at zero."""
    spec = table.spec.group
    f = {coords: i for i, coords in enumerate(table.exp)}
    return PeriodicArray.from_mapping(spec, spec.zero, f)


def welch(p: int, m: int, modulus=None, log_base_exp: int = 1) -> PeriodicArray:
    """Convenience wrapper; ``modulus=None`` picks the smallest primitive one."""
    if modulus is None:
        modulus = find_primitive_polys(p, m)[0]
    return construct_welch(build_table(FieldSpec(p, m, tuple(modulus)), log_base_exp))


def unit_exponents(n: int) -> List[int]:
    return [e for e in range(1, n) if gcd(e, n) == 1] if n > 1 else [1]


def reproduce_paper_example() -> List[Tuple[FieldSpec, int, PeriodicArray]]:
    """Every (primitive modulus, log base) over GF(25) whose array is REFERENCE_W."""
    target = canonical_bytes(REFERENCE_W)
    hits = []
    for coeffs in find_primitive_polys(5, 2):
        fspec = FieldSpec(5, 2, coeffs)
        for e in unit_exponents(24):
            arr = construct_welch(build_table(fspec, e))
            if canonical_bytes(arr) == target:
                hits.append((fspec, e, arr))
    return hits
