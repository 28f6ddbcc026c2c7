"""CRT for Z[x]/(f1 f2) and merging two digit systems into one.

``psi`` sends a residue mod f1*f2 to its pair of residues.  It is injective
for coprime moduli, and its image is the fibred product over Z[x]/(f1, f2):
pairs that agree modulo the ideal (f1, f2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cns import FEP, GENERATORS, decide_fep
from .gb_ideal import FiniteQuotient, period_S, strong_gb
from .intpoly import IntPoly, as_poly, coprime_over_Q, format_poly
from .quotient import (
    IRREDUNDANT,
    DigitSystem,
    Element,
    QuotientRing,
    digit_check,
    zero_expansion_length,
)


class NotIntegral(ValueError):
    """The pair has no preimage with integer coefficients."""


class MergeInconsistency(AssertionError):
    """A composite digit was not integral although condition (ii) held."""


def _monic_coprime(f1: IntPoly, f2: IntPoly) -> None:
    if f1.lc != 1 or f2.lc != 1:
        raise ValueError(f"moduli must be monic: {f1}, {f2}")
    if not coprime_over_Q(f1, f2):
        raise ValueError(f"moduli {f1} and {f2} are not coprime over Q")


def _residue(a: IntPoly, f: IntPoly) -> Element:
    c = (a % f).coeffs
    return tuple(c) + (0,) * (f.degree - len(c))


def psi(a, f1, f2) -> tuple[Element, Element]:
    a, f1, f2 = as_poly(a), as_poly(f1), as_poly(f2)
    _monic_coprime(f1, f2)
    return _residue(a, f1), _residue(a, f2)


def _solve_rational(rows: list[list[int]], rhs: list[int]) -> list[Fraction]:
    n = len(rows)
    m = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                t = m[i][col]
                m[i] = [a - t * b for a, b in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def psi_inverse(a1, a2, f1, f2) -> IntPoly:
    """The unique a with deg a < deg f1 + deg f2 and a = a_i mod f_i.

    Writes ``a = a1 + f1*t = a2 + f2*s`` and solves the nonsingular Sylvester
    system for (t, s); raises NotIntegral when the solution is not integral.
    """
    f1, f2 = as_poly(f1), as_poly(f2)
    _monic_coprime(f1, f2)
    a1 = as_poly(IntPoly(a1) if isinstance(a1, tuple) else a1) % f1
    a2 = as_poly(IntPoly(a2) if isinstance(a2, tuple) else a2) % f2
    d1, d2 = f1.degree, f2.degree
    N = d1 + d2
    # columns: t_0..t_{d2-1}, s_0..s_{d1-1}; equation f1*t - f2*s = a2 - a1
    cols = []
    for i in range(d2):
        cols.append(f1.shift_up(i))
    for j in range(d1):
        cols.append(-f2.shift_up(j))
    rows = [[c[k] for c in cols] for k in range(N)]
    diff = a2 - a1
    sol = _solve_rational(rows, [diff[k] for k in range(N)])
    if any(v.denominator != 1 for v in sol):
        raise NotIntegral(f"({a1}, {a2}) is not interpolable over Z modulo ({f1}, {f2})")
    t = IntPoly(int(v) for v in sol[:d2])
    return a1 + f1 * t


def in_W(components: Sequence, moduli: Sequence) -> bool:
    """Pairwise congruence modulo the ideals (f_i, f_j)."""
    moduli = [as_poly(f) for f in moduli]
    comps = [IntPoly(c) if isinstance(c, tuple) else as_poly(c) for c in components]
    if len(comps) != len(moduli):
        raise ValueError("one component per modulus required")
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            gb = strong_gb(moduli[i], moduli[j])
            if not gb.contains(comps[i] - comps[j]):
                return False
    return True


@dataclass
class Condition:
    holds: bool | None
    evidence: str = ""

    def __bool__(self):
        return bool(self.holds)


@dataclass
class MergeReport:
    f1: IntPoly
    f2: IntPoly
    cond_i: Condition
    cond_ii: Condition = field(default_factory=lambda: Condition(None, "not evaluated"))
    cond_iii: Condition = field(default_factory=lambda: Condition(None, "not evaluated"))
    cond_iv: Condition = field(default_factory=lambda: Condition(None, "not evaluated"))
    quotient_size: int | None = None
    d_tilde: tuple | None = None
    S: int | None = None
    L1: int | None = None
    L2: int | None = None
    L_merged: int | None = None
    merged: DigitSystem | None = None
    fep: bool | None = None

    @property
    def success(self) -> bool:
        return bool(self.cond_i and self.cond_ii and self.cond_iii and self.cond_iv and self.fep)

    def to_dict(self) -> dict:
        def cond(c: Condition):
            return {"holds": c.holds, "evidence": c.evidence}

        return {
            "modulus": str(self.f1 * self.f2),
            "factors": [str(self.f1), str(self.f2)],
            "cond_i": cond(self.cond_i),
            "cond_ii": cond(self.cond_ii),
            "cond_iii": cond(self.cond_iii),
            "cond_iv": cond(self.cond_iv),
            "quotient_size": self.quotient_size,
            "d_tilde": None if self.d_tilde is None else format_poly(self.d_tilde, "X"),
            "S": self.S,
            "L1": self.L1,
            "L2": self.L2,
            "L_merged": self.L_merged,
            "merged_digits": None
            if self.merged is None
            else [self.merged.ring.format(d) for d in self.merged.digits],
            "fep": self.fep,
        }


def merge_digit_systems(ds1: DigitSystem, ds2: DigitSystem) -> MergeReport:
    """Evaluate conditions (i)-(iv) and build psi^{-1}(N1 x N2)."""
    f1, f2 = ds1.modulus, ds2.modulus
    _monic_coprime(f1, f2)
    c1, c2 = digit_check(ds1), digit_check(ds2)
    ok_i = c1 == IRREDUNDANT and c2 == IRREDUNDANT
    report = MergeReport(f1, f2, Condition(ok_i, f"{c1} / {c2}"))
    if not ok_i:
        return report

    fq = FiniteQuotient(strong_gb(f1, f2))
    report.quotient_size = fq.cardinality
    residues = {fq.reduce(IntPoly(d)) for d in ds1.digits + ds2.digits}
    if len(residues) == 1:
        (d_tilde,) = residues
        report.d_tilde = d_tilde
        report.cond_ii = Condition(True, f"all digits = {fq.format(d_tilde)} mod ({f1}, {f2})")
    else:
        shown = ", ".join(sorted(fq.format(r) for r in residues))
        report.cond_ii = Condition(False, f"digit residues mod ({f1}, {f2}) are {{{shown}}}")

    w1, w2 = decide_fep(ds1, GENERATORS), decide_fep(ds2, GENERATORS)
    report.L1, report.L2 = w1.L, w2.L
    ok_iii = w1.verdict == FEP and w2.verdict == FEP
    report.cond_iii = Condition(ok_iii, f"{w1.verdict} (L1={w1.L}) / {w2.verdict} (L2={w2.L})")

    if report.cond_ii:
        report.S = period_S(report.d_tilde, fq)
        if ok_iii:
            g = math.gcd(report.L1, report.L2)
            report.cond_iv = Condition(g == report.S, f"gcd(L1, L2) = {g}, S = {report.S}")
        else:
            report.cond_iv = Condition(None, "zero expansion lengths unknown")

        ring = QuotientRing(f1 * f2)
        merged = []
        for d1 in ds1.digits:
            for d2 in ds2.digits:
                try:
                    merged.append(ring.reduce(psi_inverse(d1, d2, f1, f2)))
                except NotIntegral as exc:
                    raise MergeInconsistency(f"condition (ii) held but {exc}") from exc
        report.merged = DigitSystem(ring, tuple(merged))
        w = decide_fep(report.merged, GENERATORS)
        report.fep = w.verdict == FEP
        report.L_merged = zero_expansion_length(report.merged) if report.fep else None
        if report.cond_iii and report.cond_iv:
            if not report.fep or report.L_merged != math.gcd(report.L1, report.L2):
                raise MergeInconsistency(
                    f"conditions (i)-(iv) hold but the merged system gives FEP={report.fep}, L={report.L_merged}"
                )
    return report


@dataclass
class NecessaryReport:
    cardinality: int
    X: tuple
    S1: int
    possible: bool
    linear_root: int | None = None
    m: int | None = None
    primes: tuple[int, ...] = ()
    knuth: bool | None = None
    reason: str = ""


def prime_factors(m: int) -> tuple[int, ...]:
    m = abs(m)
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def necessary_conditions(f1, f2, fq: FiniteQuotient | None = None) -> NecessaryReport:
    """Can any unit d~ reach the maximal period S(d~) = |Z[x]/(f1, f2)|?"""
    f1, f2 = as_poly(f1), as_poly(f2)
    if fq is None:
        fq = FiniteQuotient(strong_gb(f1, f2))
    # S(u*1) = S(1) for a unit u, so one orbit decides
    S1 = period_S(1, fq)
    rep = NecessaryReport(fq.cardinality, fq.X, S1, S1 == fq.cardinality)
    rep.reason = f"S(1) = {S1}, |R12| = {fq.cardinality}"
    if f1.degree == 1 and math.gcd(f1.lc, f2.lc) == 1 and f1.lc == 1:
        a = -f1[0]
        m = abs(f2(a))
        rep.linear_root, rep.m = a, m
        rep.primes = prime_factors(m)
        bad = [p for p in rep.primes if (a - 1) % p]
        knuth = not bad and not (m % 4 == 0 and (a - 1) % 4)
        rep.knuth = knuth
        if bad:
            rep.reason += f"; a = {a} = {a % bad[0]} (mod {bad[0]})"
        elif m % 4 == 0 and (a - 1) % 4:
            rep.reason += f"; 4 | {m} but a = {a % 4} (mod 4)"
    return rep


def product_fep_check(ds1: DigitSystem, ds2: DigitSystem) -> bool:
    """FEP of the abstract direct product of two number systems."""
    L = []
    for ds in (ds1, ds2):
        w = decide_fep(ds, GENERATORS)
        if w.verdict != FEP:
            raise ValueError(f"factor {ds} is not a number system ({w.verdict})")
        L.append(w.L)
    return lengths_coprime(*L)


def lengths_coprime(L1: int, L2: int) -> bool:
    return math.gcd(L1, L2) == 1
