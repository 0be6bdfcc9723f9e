"""GF(p^m) arithmetic and exp/log tables over grid coordinates.

A field is given by a monic modulus ``x^m - (c_{m-1} x^{m-1} + ... + c_0)``,
stored as the coefficient list ``[c_0, ..., c_{m-1}]`` so that
``alpha^m = c_{m-1} alpha^{m-1} + ... + c_0``.

Internally an element is a tuple of polynomial coefficients, lowest power
first.  Grid coordinates run the other way: ``(a_1, ..., a_m)`` stands for
``a_1 alpha^{m-1} + ... + a_m``, which makes the mixed-radix index of a
grid point the base-p value of its polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Dict, List, Sequence, Tuple

from .groups import Element, GroupSpec, _is_prime

MAX_FIELD_SIZE = 2**20

Poly = Tuple[int, ...]


class FieldError(ValueError):
    pass


def prime_factors(n: int) -> List[int]:
    """Distinct prime divisors of ``n`` by trial division."""
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def totient(n: int) -> int:
    result = n
    for q in prime_factors(n):
        result -= result // q
    return result


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) % self.p for c in self.modulus))
        if not _is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.m < 1 or len(self.modulus) != self.m:
            raise FieldError(f"need {self.m} modulus coefficients, got {len(self.modulus)}")

    @property
    def size(self) -> int:
        return self.p**self.m

    @property
    def group(self) -> GroupSpec:
        return GroupSpec.elementary(self.p, self.m)

    def describe(self) -> str:
        terms = []
        for i in reversed(range(self.m)):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}{mono}"))
        rhs = " + ".join(terms) or "0"
        return f"x^{self.m} = {rhs} over GF({self.p})"


def mul(spec: FieldSpec, a: Poly, b: Poly) -> Poly:
    """Product of two elements given as low-first coefficient tuples."""
    p, m, c = spec.p, spec.m, spec.modulus
    acc = [0] * m
    # Horner over b's coefficients from the top: acc = acc*x + b_i*a
    for bi in reversed(b):
        top = acc[-1]
        acc = [0] + acc[:-1]
        if top:
            for k in range(m):
                acc[k] = (acc[k] + top * c[k]) % p
        if bi:
            for k in range(m):
                acc[k] = (acc[k] + bi * a[k]) % p
    return tuple(acc)


def power(spec: FieldSpec, a: Poly, e: int) -> Poly:
    result = one(spec)
    base = a
    while e:
        if e & 1:
            result = mul(spec, result, base)
        base = mul(spec, base, base)
        e >>= 1
    return result


def one(spec: FieldSpec) -> Poly:
    return (1,) + (0,) * (spec.m - 1)


def generator(spec: FieldSpec) -> Poly:
    """The class of ``x``; for m = 1 that is the residue ``c_0`` itself."""
    if spec.m == 1:
        return (spec.modulus[0],)
    return (0, 1) + (0,) * (spec.m - 2)


def to_coords(a: Poly) -> Element:
    return tuple(reversed(a))


def from_coords(coords: Sequence[int]) -> Poly:
    return tuple(reversed(tuple(coords)))


def poly_is_primitive(p: int, m: int, coeffs: Sequence[int]) -> bool:
    """True iff the root of the monic modulus has multiplicative order ``p^m - 1``.

    An element of that order cannot exist unless the quotient ring is a
    field, so irreducibility comes for free.
    """
    spec = FieldSpec(p, m, tuple(coeffs))
    n = spec.size - 1
    if spec.modulus[0] == 0:
        return False
    g = generator(spec)
    if power(spec, g, n) != one(spec):
        return False
    return all(power(spec, g, n // q) != one(spec) for q in prime_factors(n))


@lru_cache(maxsize=None)
def find_primitive_polys(p: int, m: int) -> Tuple[Tuple[int, ...], ...]:
    """All primitive moduli of degree ``m``, lexicographic in ``(c_0, ..., c_{m-1})``."""
    if not _is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError("degree must be >= 1")
    if p**m > MAX_FIELD_SIZE:
        raise FieldError(f"GF({p}^{m}) exceeds the size cap {MAX_FIELD_SIZE}")
    return tuple(c for c in product(range(p), repeat=m) if poly_is_primitive(p, m, c))


def default_field(p: int, m: int) -> FieldSpec:
    return FieldSpec(p, m, find_primitive_polys(p, m)[0])


@dataclass(frozen=True)
class FieldTable:
    spec: FieldSpec
    log_base_exp: int
    exp: Tuple[Element, ...]
    log: Dict[Element, int] = field(compare=False, repr=False)

    @property
    def modulus(self) -> int:
        return self.spec.size - 1


def build_table(spec: FieldSpec, log_base_exp: int = 1) -> FieldTable:
    """exp/log tables for the log base ``beta = alpha^log_base_exp``."""
    n = spec.size - 1
    if gcd(log_base_exp, n) != 1:
        raise FieldError(f"log base exponent {log_base_exp} is not coprime to {n}")
    if not poly_is_primitive(spec.p, spec.m, spec.modulus):
        raise FieldError(f"modulus {spec.describe()} is not primitive")
    beta = power(spec, generator(spec), log_base_exp % n)
    exp = []
    x = one(spec)
    for _ in range(n):
        exp.append(to_coords(x))
        x = mul(spec, x, beta)
    log = {c: i for i, c in enumerate(exp)}
    return FieldTable(spec, log_base_exp % n, tuple(exp), log)


def frobenius_matrix(spec: FieldSpec) -> Tuple[Tuple[int, ...], ...]:
    """Matrix of ``x -> x^p`` acting on coordinate column vectors."""
    m = spec.m
    cols = []
    for j in range(m):
        basis = [0] * m
        basis[j] = 1
        cols.append(to_coords(power(spec, from_coords(basis), spec.p)))
    return tuple(tuple(cols[j][i] for j in range(m)) for i in range(m))
