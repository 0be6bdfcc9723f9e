"""Symmetry generators for periodic Costas arrays and orbit closure.

Value-side maps act on the entries (``f -> f + s``, ``f -> k f``); linear
maps move grid points (``f'(L a) = f(a)``); translations move the star.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterable, List, Optional, Sequence, Set, Tuple, Union

from . import groups
from .array import PeriodicArray, canonical_bytes
from .groups import Element, GroupSpec

Matrix = Tuple[Tuple[int, ...], ...]

FAMILIES = ("add", "mul", "g1", "g2")


class SymmetryError(ValueError):
    pass


class SingularMapError(SymmetryError):
    pass


def det_mod(entries: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in row] for row in entries]
    m = len(a)
    det = 1
    for c in range(m):
        pivot = next((r for r in range(c, m) if a[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for r in range(c + 1, m):
            factor = a[r][c] * inv % p
            if factor:
                a[r] = [(x - factor * y) % p for x, y in zip(a[r], a[c])]
    return det % p


def inverse_mod(entries: Sequence[Sequence[int]], p: int) -> Matrix:
    m = len(entries)
    a = [[x % p for x in row] + [int(i == r) for i in range(m)] for r, row in enumerate(entries)]
    for c in range(m):
        pivot = next((r for r in range(c, m) if a[r][c]), None)
        if pivot is None:
            raise SingularMapError("matrix is singular")
        a[c], a[pivot] = a[pivot], a[c]
        inv = pow(a[c][c], -1, p)
        a[c] = [x * inv % p for x in a[c]]
        for r in range(m):
            if r != c and a[r][c]:
                factor = a[r][c]
                a[r] = [(x - factor * y) % p for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[m:]) for row in a)


def matmul_mod(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]], p: int) -> Matrix:
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(len(y))) % p for j in range(len(y[0])))
        for i in range(len(x))
    )


@dataclass(frozen=True)
class LinearMap:
    """An invertible m x m matrix over Z_p acting on coordinate columns."""

    p: int
    entries: Matrix

    def __post_init__(self):
        entries = tuple(tuple(int(x) % self.p for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        m = len(entries)
        if m == 0 or any(len(row) != m for row in entries):
            raise SymmetryError("linear map must be a square matrix")
        d = det_mod(entries, self.p)
        if d == 0:
            raise SingularMapError(f"determinant is 0 mod {self.p}; {self} is not a permutation of the grid")

    @classmethod
    def parse(cls, p: int, text: str) -> "LinearMap":
        """Row-major ``"r00,r01;r10,r11"``."""
        try:
            rows = tuple(tuple(int(x) for x in row.split(",")) for row in text.split(";"))
        except ValueError:
            raise SymmetryError(f"bad matrix {text!r}") from None
        return cls(p, rows)

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def det(self) -> int:
        return det_mod(self.entries, self.p)

    @property
    def is_diagonal(self) -> bool:
        return all(x == 0 for i, row in enumerate(self.entries) for j, x in enumerate(row) if i != j)

    @property
    def is_unit_diagonal(self) -> bool:
        return all(self.entries[i][i] == 1 for i in range(self.m))

    def __call__(self, a: Sequence[int]) -> Element:
        return tuple(sum(x * y for x, y in zip(row, a)) % self.p for row in self.entries)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.p, matmul_mod(self.entries, other.entries, self.p))

    def inverse(self) -> "LinearMap":
        return LinearMap(self.p, inverse_mod(self.entries, self.p))

    def __str__(self):
        return ";".join(",".join(map(str, row)) for row in self.entries)


def diagonal(p: int, xs: Sequence[int]) -> LinearMap:
    m = len(xs)
    return LinearMap(p, tuple(tuple(xs[i] if i == j else 0 for j in range(m)) for i in range(m)))


def row_shear(p: int, x: int) -> LinearMap:
    """``(i, j) -> (i, j + x i)``: row i cyclically shifted right by ``x i``."""
    return LinearMap(p, ((1, 0), (x, 1)))


def column_shear(p: int, x: int) -> LinearMap:
    """``(i, j) -> (i + x j, j)``: column j cyclically shifted up by ``x j``."""
    return LinearMap(p, ((1, x), (0, 1)))


def shear(p: int, x1: int, x2: int) -> LinearMap:
    """``(i, j) -> (i + x2 j, j + x1 i)``; singular when ``x1 x2 = 1 mod p``."""
    return LinearMap(p, ((1, x2), (x1, 1)))


@dataclass(frozen=True)
class Add:
    s: int

    def apply(self, arr: PeriodicArray) -> PeriodicArray:
        return apply_add(arr, self.s)


@dataclass(frozen=True)
class Mul:
    k: int

    def apply(self, arr: PeriodicArray) -> PeriodicArray:
        return apply_mul(arr, self.k)


@dataclass(frozen=True)
class Linear:
    L: LinearMap

    def apply(self, arr: PeriodicArray) -> PeriodicArray:
        return apply_linear(arr, self.L)


@dataclass(frozen=True)
class Translate:
    v: Element

    def apply(self, arr: PeriodicArray) -> PeriodicArray:
        return apply_translate(arr, self.v)


SymmetryOp = Union[Add, Mul, Linear, Translate]


def apply_add(arr: PeriodicArray, s: int) -> PeriodicArray:
    n = arr.modulus
    if not 0 <= s < n:
        raise SymmetryError(f"additive shift {s} outside [0, {n})")
    return PeriodicArray(arr.spec, arr.star, tuple(None if v is None else (v + s) % n for v in arr.values))


def apply_mul(arr: PeriodicArray, k: int) -> PeriodicArray:
    n = arr.modulus
    g = gcd(k, n)
    if g != 1:
        raise SymmetryError(f"multiplier {k} is not a unit modulo {n} (gcd {g}); the result would not be a permutation")
    return PeriodicArray(arr.spec, arr.star, tuple(None if v is None else v * k % n for v in arr.values))


def _check_linear(spec: GroupSpec, L: LinearMap) -> None:
    if not spec.is_elementary:
        raise SymmetryError(f"linear maps need an elementary abelian group, got {spec}")
    if spec.factors[0] != L.p or spec.rank != L.m:
        raise SymmetryError(f"{L.m}x{L.m} map over Z_{L.p} does not fit {spec}")


def linear_permutation(spec: GroupSpec, L: LinearMap) -> Tuple[int, ...]:
    """``src`` with ``new[j] = old[src[j]]``, i.e. ``src = index o L^-1``."""
    _check_linear(spec, L)
    dst = [groups.index(spec, L(a)) for a in spec.elements()]
    src = [0] * spec.order
    for i, j in enumerate(dst):
        src[j] = i
    return tuple(src)


def apply_linear(arr: PeriodicArray, L: LinearMap) -> PeriodicArray:
    _check_linear(arr.spec, L)
    if not arr.is_generic:
        raise SymmetryError("linear maps apply to generic arrays only (star at 0)")
    src = linear_permutation(arr.spec, L)
    return PeriodicArray(arr.spec, arr.star, tuple(arr.values[i] for i in src))


def apply_translate(arr: PeriodicArray, v: Sequence[int]) -> PeriodicArray:
    spec = arr.spec
    vi = groups.index(spec, v)
    table = groups.add_table(spec)
    values = tuple(arr.values[table[i][vi]] for i in range(spec.order))
    return PeriodicArray(spec, groups.sub(spec, arr.star, tuple(v)), values)


def apply_ops(arr: PeriodicArray, ops: Iterable[SymmetryOp]) -> PeriodicArray:
    for op in ops:
        arr = op.apply(arr)
    return arr


def generator_instances(spec: GroupSpec, family: str) -> List[SymmetryOp]:
    n = spec.modulus
    if family == "add":
        return [Add(s) for s in range(n)]
    if family == "mul":
        return [Mul(k) for k in range(1, n) if gcd(k, n) == 1] or [Mul(1)]
    if family == "translate":
        return [Translate(v) for v in spec.elements()]
    if family not in ("g1", "g2"):
        raise SymmetryError(f"unknown generator family {family!r}")
    if not spec.is_elementary:
        raise SymmetryError(f"{family} needs an elementary abelian group, got {spec}")
    p, m = spec.factors[0], spec.rank
    if family == "g1":
        return [Linear(diagonal(p, xs)) for xs in product(range(1, p), repeat=m)]
    out = []
    off = [(i, j) for i in range(m) for j in range(m) if i != j]
    for vals in product(range(p), repeat=len(off)):
        entries = [[int(i == j) for j in range(m)] for i in range(m)]
        for (i, j), x in zip(off, vals):
            entries[i][j] = x
        if det_mod(entries, p):
            out.append(Linear(LinearMap(p, tuple(map(tuple, entries)))))
    return out


# Orbit closure works on flat integer tuples with the star encoded as the
# value ``modulus``, so every generator becomes either a value relabelling
# or a slot permutation.

Kernel = Tuple[str, Tuple[int, ...]]


def _kernel(spec: GroupSpec, op: SymmetryOp) -> Kernel:
    n = spec.modulus
    if isinstance(op, Add):
        if not 0 <= op.s < n:
            raise SymmetryError(f"additive shift {op.s} outside [0, {n})")
        return "v", tuple((v + op.s) % n for v in range(n)) + (n,)
    if isinstance(op, Mul):
        if gcd(op.k, n) != 1:
            raise SymmetryError(f"multiplier {op.k} is not a unit modulo {n}")
        return "v", tuple(v * op.k % n for v in range(n)) + (n,)
    if isinstance(op, Linear):
        return "i", linear_permutation(spec, op.L)
    table = groups.add_table(spec)
    vi = groups.index(spec, op.v)
    return "i", tuple(table[i][vi] for i in range(spec.order))


def _image(key: Tuple[int, ...], kernel: Kernel) -> Tuple[int, ...]:
    kind, t = kernel
    if kind == "v":
        return tuple([t[v] for v in key])
    return tuple([key[i] for i in t])


def _expand(args) -> List[Tuple[int, ...]]:
    chunk, kernels = args
    return [_image(key, k) for key in chunk for k in kernels]


def _to_key(arr: PeriodicArray) -> Tuple[int, ...]:
    n = arr.modulus
    return tuple(n if v is None else v for v in arr.values)


def _from_key(spec: GroupSpec, key: Tuple[int, ...]) -> PeriodicArray:
    n = spec.modulus
    star = groups.unindex(spec, key.index(n))
    return PeriodicArray(spec, star, tuple(None if v == n else v for v in key))


def orbit_closure_arrays(
    seeds: Sequence[PeriodicArray],
    gens: Iterable[str] = FAMILIES,
    translations: bool = False,
    workers: Optional[int] = None,
) -> List[PeriodicArray]:
    """Closed set as arrays, sorted by canonical bytes."""
    seeds = list(seeds)
    if not seeds:
        return []
    spec = seeds[0].spec
    for s in seeds:
        if s.spec != spec:
            raise SymmetryError("all seeds must share one group")
        if not s.is_generic:
            raise SymmetryError("orbit closure seeds must be generic (star at 0)")
    families = list(gens) + (["translate"] if translations else [])
    kernels = [_kernel(spec, op) for fam in families for op in generator_instances(spec, fam)]

    canon = {}

    def admit(key):
        if key in canon:
            return False
        canon[key] = canonical_bytes(_from_key(spec, key))
        return True

    frontier = [k for k in map(_to_key, seeds) if admit(k)]
    pool = ProcessPoolExecutor(workers) if workers and workers > 1 else None
    try:
        while frontier and kernels:
            frontier.sort(key=canon.__getitem__)
            if pool is None:
                images = _expand((frontier, kernels))
            else:
                size = -(-len(frontier) // (workers * 4))
                chunks = [frontier[i:i + size] for i in range(0, len(frontier), size)]
                images = [img for part in pool.map(_expand, [(c, kernels) for c in chunks]) for img in part]
            frontier = [img for img in images if admit(img)]
    finally:
        if pool is not None:
            pool.shutdown()
    return [_from_key(spec, k) for k in sorted(canon, key=canon.__getitem__)]


def orbit_closure(
    seeds: Sequence[PeriodicArray],
    gens: Iterable[str] = FAMILIES,
    translations: bool = False,
    workers: Optional[int] = None,
) -> Set[bytes]:
    """Least superset of ``seeds`` closed under every instance of ``gens``."""
    return {canonical_bytes(a) for a in orbit_closure_arrays(seeds, gens, translations, workers)}


def anchored_slice(arrays: Iterable[PeriodicArray], anchor: int = 0) -> List[PeriodicArray]:
    """Generic arrays whose first non-star position (index 1) holds ``anchor``."""
    return [a for a in arrays if a.is_generic and a.values[1] == anchor]
