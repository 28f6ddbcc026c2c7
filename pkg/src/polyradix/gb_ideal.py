"""Strong Groebner bases of two-generator ideals in Z[x] and their quotients.

For coprime f1, f2 the ideal I = (f1, f2) contains a nonzero integer and a
monic polynomial.  Its degreewise basis h_0, ..., h_m (deg h_k = k, leading
coefficient l_k, l_m = 1, l_k | l_{k-1}) is read off the Hermite normal form
of the coefficient rows x^i f1, x^j f2 truncated at a degree bound.  The bound
starts at the Sylvester size and grows until the basis certifies itself:
f1, f2 and every x * h_{k-1} reduce to zero.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .intpoly import IntPoly, as_poly, coprime_over_Q, format_poly


class NotCoprimeError(ValueError):
    pass


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(s, t, g)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s, next_s = 1, 0
    t, next_t = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        s, next_s = next_s, s - q * next_s
        t, next_t = next_t, t - q * next_t
        g, next_g = next_g, g - q * next_g
    if g < 0:
        s, t, g = -s, -t, -g
    return s, t, g


def hnf_by_degree(rows: list[list[int]], width: int) -> dict[int, list[int]]:
    """Echelon basis of the integer row lattice, pivoting on the highest
    nonzero column (= degree).  Returns ``{degree: row}`` with positive pivots.

    Rows are ascending coefficient lists of length ``width``.
    """
    basis: dict[int, list[int]] = {}
    for vec in rows:
        vec = list(vec)
        k = width - 1
        while k >= 0:
            if vec[k] == 0:
                k -= 1
                continue
            row = basis.get(k)
            if row is None:
                if vec[k] < 0:
                    vec = [-c for c in vec]
                basis[k] = vec
                break
            a, b = row[k], vec[k]
            if b % a == 0:
                q = b // a
                vec = [v - q * r for v, r in zip(vec, row)]
            else:
                s, t, g = xgcd(a, b)
                ag, bg = a // g, b // g
                new_row = [s * r + t * v for r, v in zip(row, vec)]
                vec = [ag * v - bg * r for r, v in zip(row, vec)]
                basis[k] = new_row
            k -= 1
    return basis


def _reduce_coeff(p: list[int], gens: list[list[int]], k: int) -> None:
    # bring coefficient k of p into [0, l_k) using h_k, in place
    h = gens[k]
    t = p[k] // h[k]
    if t:
        for i in range(k + 1):
            p[i] -= t * h[i]


@dataclass(frozen=True)
class StrongGB:
    """Degreewise strong Groebner basis of (f1, f2); ``gens[k]`` has degree k."""

    f1: IntPoly
    f2: IntPoly
    gens: tuple[IntPoly, ...]
    degree_bound: int

    @property
    def m(self) -> int:
        return len(self.gens) - 1

    @property
    def leading(self) -> tuple[int, ...]:
        return tuple(h.lc for h in self.gens)

    @property
    def multipliers(self) -> tuple[int, ...]:
        """``a_k = l_{k-1} / l_k`` for ``k = 1..m``."""
        lead = self.leading
        return tuple(lead[k - 1] // lead[k] for k in range(1, len(lead)))

    @property
    def minimal_indices(self) -> tuple[int, ...]:
        a = self.multipliers
        return (0,) + tuple(k for k in range(1, self.m + 1) if abs(a[k - 1]) != 1)

    @property
    def minimal(self) -> tuple[IntPoly, ...]:
        return tuple(self.gens[k] for k in self.minimal_indices)

    @property
    def is_unit_ideal(self) -> bool:
        return self.m == 0 and self.gens[0] == IntPoly((1,))

    def normal_form(self, p) -> IntPoly:
        return normal_form(p, self)

    def contains(self, p) -> bool:
        return normal_form(p, self).is_zero()

    def closure_relations(self) -> list[tuple[int, IntPoly]]:
        """For k = 1..m, the combination c with ``x*h_{k-1} + c == a_k*h_k``
        and c an integer combination of h_0..h_{k-1}."""
        out = []
        for k in range(1, self.m + 1):
            c = self.gens[k].scale(self.multipliers[k - 1]) - self.gens[k - 1].shift_up()
            out.append((self.multipliers[k - 1], c))
        return out


def _certifies(gens: list[list[int]], f1: IntPoly, f2: IntPoly) -> bool:
    m = len(gens) - 1
    monic = IntPoly(gens[m])
    for k in range(1, m + 1):
        if gens[k - 1][k - 1] % gens[k][k]:
            return False
    gb = StrongGB(f1, f2, tuple(IntPoly(g) for g in gens), 0)
    checks = [f1, f2] + [IntPoly(gens[k - 1]).shift_up() for k in range(1, m + 1)]
    return all(normal_form(p, gb).is_zero() for p in checks) and monic.lc == 1


def strong_gb(f1, f2) -> StrongGB:
    """Fully reduced degreewise basis of (f1, f2): every tail coefficient of
    ``h_k`` at degree j < k lies in [0, l_j), so the basis is unique."""
    f1, f2 = as_poly(f1), as_poly(f2)
    if f1.is_zero() or f2.is_zero():
        raise ValueError("strong_gb needs nonzero generators")
    if not coprime_over_Q(f1, f2):
        raise NotCoprimeError(f"{f1} and {f2} share a factor over Q")
    g = math.gcd(f1.content(), f2.content())
    if g != 1:
        # every element of I is then divisible by g, so I has no monic member
        raise ValueError(f"{f1} and {f2} share the content factor {g}; the ideal contains no monic polynomial")
    d1, d2 = f1.degree, f2.degree
    bound = max(d1 + d2 - 1, d1, d2, 0)
    cap = 4 * (d1 + d2) + 64
    while bound <= cap:
        width = bound + 1
        rows = []
        for f in (f1, f2):
            for i in range(bound - f.degree + 1):
                rows.append([0] * i + list(f.coeffs) + [0] * (width - i - len(f.coeffs)))
        basis = hnf_by_degree(rows, width)
        monic_degs = [k for k, r in basis.items() if r[k] == 1]
        if monic_degs and all(k in basis for k in range(min(monic_degs) + 1)):
            m = min(monic_degs)
            gens = [basis[k][: k + 1] for k in range(m + 1)]
            # full reduction of off-pivot entries
            for k in range(m + 1):
                for j in range(k - 1, -1, -1):
                    _reduce_coeff(gens[k], gens, j)
            if _certifies(gens, f1, f2):
                return StrongGB(f1, f2, tuple(IntPoly(g) for g in gens), bound)
        bound += 1
    raise RuntimeError(f"no certified strong Groebner basis for ({f1}, {f2}) below degree {cap}")


def normal_form(p, gb: StrongGB) -> IntPoly:
    """Canonical residue: degree < m, coefficient k in [0, l_k)."""
    p = as_poly(p)
    m = gb.m
    _, r = p.divmod_monic(gb.gens[m])
    c = list(r.coeffs) + [0] * (m - len(r.coeffs))
    gens = [list(h.coeffs) for h in gb.gens]
    for k in range(m - 1, -1, -1):
        _reduce_coeff(c, gens, k)
    return IntPoly(c)


def resultant_from_gb(gb: StrongGB) -> int:
    """``prod a_k**k``; only meaningful for coprime leading coefficients."""
    if math.gcd(gb.f1.lc, gb.f2.lc) != 1:
        raise ValueError(
            f"leading coefficients {gb.f1.lc} and {gb.f2.lc} are not coprime; "
            "the product formula does not apply"
        )
    out = 1
    for k, a in enumerate(gb.multipliers, start=1):
        out *= a**k
    return out


class FiniteQuotient:
    """The finite ring Z[x]/(f1, f2); residues are tuples of length m."""

    def __init__(self, gb: StrongGB):
        self.gb = gb
        self.radices = gb.leading[:-1]
        self.cardinality = math.prod(self.radices)

    def __repr__(self):
        return f"FiniteQuotient(({self.gb.f1}, {self.gb.f2}), radices={self.radices})"

    @property
    def m(self) -> int:
        return self.gb.m

    @property
    def zero(self) -> tuple:
        return (0,) * self.m

    @property
    def X(self) -> tuple:
        return self.reduce(IntPoly.x())

    @property
    def one(self) -> tuple:
        return self.reduce(1)

    def reduce(self, p) -> tuple:
        r = normal_form(p, self.gb).coeffs
        return tuple(r) + (0,) * (self.m - len(r))

    def elements(self) -> Iterator[tuple]:
        return itertools.product(*(range(l) for l in self.radices))

    def add(self, a: tuple, b: tuple) -> tuple:
        return self.reduce(IntPoly(a) + IntPoly(b))

    def mul(self, a: tuple, b: tuple) -> tuple:
        return self.reduce(IntPoly(a) * IntPoly(b))

    def mul_x(self, a: tuple) -> tuple:
        return self.reduce(IntPoly(a).shift_up())

    def is_unit(self, a: tuple) -> bool:
        """Multiplication by ``a`` is a bijection (checked by enumeration)."""
        a = self.reduce(IntPoly(a))
        images = {self.mul(a, s) for s in self.elements()}
        return len(images) == self.cardinality

    def format(self, a: tuple, var: str = "X") -> str:
        return format_poly(a, var)


def finite_quotient(gb: StrongGB) -> FiniteQuotient:
    return FiniteQuotient(gb)


def quotient_of(f1, f2) -> FiniteQuotient:
    return FiniteQuotient(strong_gb(f1, f2))


def period_S(d, fq: FiniteQuotient) -> int:
    """Eventual period of ``s_0 = d, s_{i+1} = X s_i + d`` in ``fq``."""
    d = fq.reduce(IntPoly(d) if isinstance(d, tuple) else d)
    seen: dict[tuple, int] = {}
    s = d
    i = 0
    while s not in seen:
        seen[s] = i
        s = fq.add(fq.mul_x(s), d)
        i += 1
    return i - seen[s]
