"""Finite abelian groups as products of cyclic groups.

Elements are plain tuples of residues.  Grid positions are laid out in
mixed radix with ``coords[0]`` as the most significant digit, so the
index of a point in ``(Z_p)^m`` equals the base-p integer of the
polynomial it represents in GF(p^m).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from math import prod
from typing import Iterator, Sequence, Tuple

Element = Tuple[int, ...]


class StructureError(ValueError):
    """Raised for elements or indices that do not conform to a group."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    q = 2
    while q * q <= n:
        if n % q == 0:
            return False
        q += 1
    return True


@dataclass(frozen=True)
class GroupSpec:
    factors: Tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors or any(n < 2 for n in factors):
            raise StructureError(f"every cyclic factor must be >= 2, got {factors}")
        if prod(factors) < 4:
            raise StructureError(f"group order must be >= 4, got {prod(factors)}")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Build from a comma separated list such as ``"3,3"``."""
        try:
            return cls(tuple(int(tok) for tok in text.split(",")))
        except ValueError as exc:
            raise StructureError(f"bad group {text!r}: {exc}") from None

    @classmethod
    def elementary(cls, p: int, m: int) -> "GroupSpec":
        return cls((p,) * m)

    @cached_property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def modulus(self) -> int:
        """Size of the cyclic codomain, ``order - 1``."""
        return self.order - 1

    @property
    def is_elementary(self) -> bool:
        p = self.factors[0]
        return _is_prime(p) and all(n == p for n in self.factors)

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def __str__(self):
        return "x".join(f"Z{n}" for n in self.factors)

    def check(self, a: Sequence[int]) -> Element:
        if len(a) != self.rank:
            raise StructureError(f"element {tuple(a)} has {len(a)} coords, group {self} needs {self.rank}")
        for x, n in zip(a, self.factors):
            if not 0 <= x < n:
                raise StructureError(f"element {tuple(a)} out of range for {self}")
        return tuple(a)

    def elements(self) -> Iterator[Element]:
        """All elements in ascending index order."""
        return product(*(range(n) for n in self.factors))


def add(spec: GroupSpec, a: Sequence[int], b: Sequence[int]) -> Element:
    _conform(spec, a, b)
    return tuple((x + y) % n for x, y, n in zip(a, b, spec.factors))


def sub(spec: GroupSpec, a: Sequence[int], b: Sequence[int]) -> Element:
    _conform(spec, a, b)
    return tuple((x - y) % n for x, y, n in zip(a, b, spec.factors))


def neg(spec: GroupSpec, a: Sequence[int]) -> Element:
    _conform(spec, a)
    return tuple(-x % n for x, n in zip(a, spec.factors))


def _conform(spec: GroupSpec, *elems: Sequence[int]) -> None:
    for a in elems:
        if len(a) != spec.rank:
            raise StructureError(f"element {tuple(a)} does not match group {spec}")


def index(spec: GroupSpec, a: Sequence[int]) -> int:
    spec.check(a)
    i = 0
    for x, n in zip(a, spec.factors):
        i = i * n + x
    return i


def unindex(spec: GroupSpec, i: int) -> Element:
    if not 0 <= i < spec.order:
        raise StructureError(f"index {i} out of range for {spec} (order {spec.order})")
    coords = []
    for n in reversed(spec.factors):
        i, x = divmod(i, n)
        coords.append(x)
    return tuple(reversed(coords))


@lru_cache(maxsize=None)
def add_table(spec: GroupSpec) -> Tuple[Tuple[int, ...], ...]:
    """``add_table(spec)[i][j]`` is the index of ``unindex(i) + unindex(j)``."""
    elems = list(spec.elements())
    return tuple(tuple(index(spec, add(spec, a, b)) for b in elems) for a in elems)


@lru_cache(maxsize=None)
def sub_table(spec: GroupSpec) -> Tuple[Tuple[int, ...], ...]:
    """``sub_table(spec)[i][j]`` is the index of ``unindex(i) - unindex(j)``."""
    elems = list(spec.elements())
    return tuple(tuple(index(spec, sub(spec, a, b)) for b in elems) for a in elems)
