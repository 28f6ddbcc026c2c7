"""Quotient rings Z[x]/(f) for monic f, digit systems and backward division.

Elements of ``Z[x]/(f)`` are plain tuples of ``n = deg f`` integers (the
canonical representative of degree < n, ascending).  A digit system is a
monic modulus together with an ordered list of such elements; expansions
record digit *indices*, least significant first.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .intpoly import IntPoly, as_poly, format_poly

Element = tuple  # tuple[int, ...] of length deg f

DEFAULT_BUDGET = 10**6

IRREDUNDANT = "irredundant"
REDUNDANT = "redundant"
INCOMPLETE = "incomplete"

FINITE = "finite"
PERIODIC = "periodic"
BUDGET = "budget"


def default_budget() -> int:
    """Step budget, overridable through ``POLYRADIX_BUDGET``."""
    env = os.environ.get("POLYRADIX_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class DigitSetError(ValueError):
    """The operation needs an irredundant digit set."""


class QuotientRing:
    """The ring Z[x]/(f) for a monic f of degree >= 1 with f(0) != 0."""

    __slots__ = ("modulus", "n", "_f")

    def __init__(self, modulus):
        f = as_poly(modulus)
        if f.is_zero() or f.degree < 1:
            raise ValueError(f"modulus must be nonconstant, got {f}")
        if f.lc != 1:
            raise ValueError(f"modulus must be monic, got {f}")
        if f[0] == 0:
            raise ValueError(f"modulus must have nonzero constant term, got {f}")
        self.modulus = f
        self.n = f.degree
        self._f = f.coeffs

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("QuotientRing", self.modulus))

    def __repr__(self):
        return f"QuotientRing({self.modulus})"

    @property
    def zero(self) -> Element:
        return (0,) * self.n

    @property
    def one(self) -> Element:
        return (1,) + (0,) * (self.n - 1)

    @property
    def X(self) -> Element:
        return self.reduce(IntPoly.x())

    def reduce(self, p) -> Element:
        """Canonical representative of ``p`` (poly, int, text or sequence)."""
        if isinstance(p, tuple) and len(p) == self.n and all(isinstance(c, int) for c in p):
            return p
        if isinstance(p, int):
            return (p,) + (0,) * (self.n - 1)
        r = as_poly(p) % self.modulus
        c = r.coeffs
        return tuple(c) + (0,) * (self.n - len(c))

    def to_poly(self, e: Element) -> IntPoly:
        return IntPoly(e)

    def add(self, a: Element, b: Element) -> Element:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        return tuple(-x for x in a)

    def mul_x(self, a: Element) -> Element:
        top = a[-1]
        f = self._f
        return (-top * f[0],) + tuple(a[i - 1] - top * f[i] for i in range(1, self.n))

    def mul(self, a: Element, b: Element) -> Element:
        return self.reduce(IntPoly(a) * IntPoly(b))

    def format(self, e: Element, var: str = "X") -> str:
        return format_poly(e, var)


@dataclass(frozen=True)
class Expansion:
    """Outcome of iterated backward division from ``start``.

    ``digits`` are digit indices, least significant first.  For a periodic
    orbit they cover the pre-period followed by one traversal of the cycle,
    and ``cycle_digits`` holds the digits emitted along the cycle.
    """

    kind: str
    digits: tuple[int, ...]
    start: tuple = ()
    preperiod: tuple = ()
    cycle: tuple = ()
    cycle_digits: tuple[int, ...] = ()

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def length(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class DigitSystem:
    ring: QuotientRing
    digits: tuple[Element, ...]

    @classmethod
    def create(cls, modulus, digits: Iterable) -> DigitSystem:
        ring = modulus if isinstance(modulus, QuotientRing) else QuotientRing(modulus)
        return cls(ring, tuple(ring.reduce(d) for d in digits))

    @classmethod
    def classical(cls, modulus) -> DigitSystem:
        """Digits ``0, 1, ..., |f(0)| - 1``."""
        ring = modulus if isinstance(modulus, QuotientRing) else QuotientRing(modulus)
        return cls.create(ring, range(abs(ring.modulus[0])))

    @property
    def modulus(self) -> IntPoly:
        return self.ring.modulus

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def base(self) -> int:
        """``|f(0)|``, the index of ``X`` in the ring."""
        return abs(self.ring.modulus[0])

    def digit_polys(self) -> list[IntPoly]:
        return [IntPoly(d) for d in self.digits]

    def __str__(self):
        n = len(self.digits)
        if n > 5 and self.digits == tuple(self.ring.reduce(i) for i in range(n)):
            ds = f"0..{n - 1}"
        else:
            ds = ", ".join(self.ring.format(d) for d in self.digits)
        return f"(Z[x]/({self.modulus}), X, {{{ds}}})"

    @cached_property
    def classification(self) -> str:
        return digit_check(self)

    @cached_property
    def _lookup(self) -> dict[int, int]:
        if self.classification != IRREDUNDANT:
            raise DigitSetError(f"digit set is {self.classification}: {self}")
        c = self.base
        return {d[0] % c: i for i, d in enumerate(self.digits)}

    @cached_property
    def zero_index(self):
        z = self.ring.zero
        for i, d in enumerate(self.digits):
            if d == z:
                return i
        return None


def digit_check(ds: DigitSystem) -> str:
    """Classify the digit constants modulo ``|f(0)|``."""
    c = ds.base
    counts = Counter(d[0] % c for d in ds.digits)
    if len(counts) < c:
        return INCOMPLETE
    if any(v > 1 for v in counts.values()):
        return REDUNDANT
    return IRREDUNDANT


def backstep(ds: DigitSystem, e: Element) -> tuple[int, Element]:
    """One step of backward division: ``e = d + X * e'`` in Z[x]/(f)."""
    f = ds.ring._f
    c0 = f[0]
    idx = ds._lookup[e[0] % ds.base]
    d = ds.digits[idx]
    q = (e[0] - d[0]) // c0
    n = ds.n
    nxt = tuple(e[i + 1] - d[i + 1] - q * f[i + 1] for i in range(n - 1)) + (-q * f[n],)
    return idx, nxt


def expand(ds: DigitSystem, e, budget: int | None = None) -> Expansion:
    """Iterate :func:`backstep` until 0 is reached, a state repeats, or the
    budget runs out."""
    if budget is None:
        budget = default_budget()
    e = ds.ring.reduce(e)
    ds._lookup  # validate up front
    zero = ds.ring.zero
    state = e
    digits: list[int] = []
    seen: dict[Element, int] = {}
    states: list[Element] = []
    for _ in range(budget + 1):
        if state == zero:
            return Expansion(FINITE, tuple(digits), start=e)
        if state in seen:
            i = seen[state]
            return Expansion(
                PERIODIC,
                tuple(digits),
                start=e,
                preperiod=tuple(states[:i]),
                cycle=tuple(states[i:]),
                cycle_digits=tuple(digits[i:]),
            )
        seen[state] = len(states)
        states.append(state)
        idx, state = backstep(ds, state)
        digits.append(idx)
    return Expansion(BUDGET, tuple(digits), start=e)


def evaluate(ds: DigitSystem, digits: Sequence[int]) -> Element:
    """``sum(d_i * X**i)`` reduced mod f, for digit indices ``d_i``."""
    ring = ds.ring
    acc = ring.zero
    for idx in reversed(digits):
        if not 0 <= idx < len(ds.digits):
            raise IndexError(f"digit index {idx} out of range")
        acc = ring.add(ring.mul_x(acc), ds.digits[idx])
    return acc


def zero_expansion_length(ds: DigitSystem, budget: int | None = None):
    """Length of the shortest zero expansion, or None if there is none."""
    if budget is None:
        budget = default_budget()
    ds._lookup
    if ds.zero_index is not None:
        return 1
    zero = ds.ring.zero
    seen = {zero}
    state = zero
    for steps in range(1, budget + 1):
        _, state = backstep(ds, state)
        if state == zero:
            return steps
        if state in seen:
            return None
        seen.add(state)
    raise RuntimeError(f"zero orbit not resolved within {budget} steps")


def project(ds: DigitSystem, factor) -> DigitSystem:
    """Reduce every digit modulo a monic factor of the modulus (order and
    multiplicity kept)."""
    g = as_poly(factor)
    if g.lc != 1:
        raise ValueError(f"factor {g} is not monic")
    _, r = ds.modulus.divmod_monic(g)
    if not r.is_zero():
        raise ValueError(f"{g} does not divide {ds.modulus}")
    ring = QuotientRing(g)
    return DigitSystem(ring, tuple(ring.reduce(IntPoly(d)) for d in ds.digits))


def digits_as_values(ds: DigitSystem, digits: Sequence[int], var: str = "X") -> list[str]:
    return [ds.ring.format(ds.digits[i], var) for i in digits]
