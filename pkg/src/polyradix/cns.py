"""Deciding the finite expansion property with a witness-set closure.

Write T for the backward-division state map.  If a set E of states contains
the start states and is closed under ``e -> T(e + d)`` for every digit d,
then every sum of an expandable element and an element of E is expandable
again (induction on the expansion length).  Hence, when the T-orbit of every
element of E reaches 0, all elements of the additive monoid generated by the
start states expand finitely.  With ``+-X^i`` as start states this is the
whole ring; with ``+-1`` it covers the integers only.

A single nonzero cycle of T is a certificate for the opposite verdict.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .intpoly import IntPoly, as_poly, count_positive_roots, is_expanding
from .quotient import (
    IRREDUNDANT,
    DigitSetError,
    DigitSystem,
    Element,
    backstep,
    zero_expansion_length,
)

GENERATORS = "generators"
UNITS = "units"

FEP = "FEP"
NOT_FEP = "NotFEP"
INCONCLUSIVE = "Inconclusive"

DEFAULT_MAX_STATES = 5_000_000
ORBIT_BUDGET = 100_000
# coefficient guard for moduli without a computable box
MAGNITUDE_GUARD = 10**12
PROBE_STATES = 5_000


class ClosureOverflow(RuntimeError):
    """Closure left its coefficient box or exceeded the state cap."""


@dataclass
class WitnessReport:
    verdict: str
    witness_size: int
    start: str
    cycles: list[tuple[tuple[Element, ...], tuple[int, ...]]] = field(default_factory=list)
    L: int | None = None
    expanding: bool = True
    reason: str = ""

    @property
    def is_fep(self) -> bool:
        return self.verdict == FEP


def start_states(ds: DigitSystem, start: str = GENERATORS) -> list[Element]:
    n = ds.n
    zero = (0,) * n
    if start == UNITS:
        one = ds.ring.one
        return [zero, one, ds.ring.neg(one)]
    if start != GENERATORS:
        raise ValueError(f"unknown start set {start!r}")
    out = [zero]
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        out.append(e)
        out.append(tuple(-c for c in e))
    return out


class _SuccessorDeltas:
    """The closure step, split into a state part and a digit part.

    Writing e0 = C*u + r (C = |f(0)|, 0 <= r < C), every ``T(e + d)`` equals
    ``shift(e) - s*u*shift(f) + delta`` where ``s = sign f(0)`` and delta only
    depends on r and d.  ``self[r]`` is the sorted tuple of distinct deltas,
    computed on first use.
    """

    def __init__(self, ds: DigitSystem):
        self.ds = ds
        f = ds.ring._f
        self.n = ds.n
        self.C = ds.base
        self.sgn = 1 if f[0] > 0 else -1
        self.fs = f[1 : self.n + 1]
        self.cache: dict[int, tuple] = {}
        consts = sorted(d[0] for d in ds.digits)
        self.consecutive = all(all(c == 0 for c in d[1:]) for d in ds.digits) and consts == list(
            range(consts[0], consts[0] + self.C)
        )

    def _delta(self, diff_tail, j):
        q = self.sgn * j
        n = self.n
        return tuple(diff_tail[i] - q * self.fs[i] for i in range(n - 1)) + (-q,)

    def __getitem__(self, r: int) -> tuple:
        out = self.cache.get(r)
        if out is not None:
            return out
        zeros = (0,) * (self.n - 1)
        if self.consecutive:
            # integer digits m..m+C-1: the carry (r + d - d')/C is 0 or 1
            js = (0, 1) if r else (0,)
            out = tuple(sorted(self._delta(zeros, j) for j in js))
        else:
            ds = self.ds
            lookup = ds._lookup
            C = self.C
            deltas = set()
            for d in ds.digits:
                dd = ds.digits[lookup[(r + d[0]) % C]]
                diff = [a - b for a, b in zip(d, dd)]
                j = (r + diff[0]) // C
                deltas.add(self._delta(diff[1:] + [0], j))
            out = tuple(sorted(deltas))
        self.cache[r] = out
        return out


def state_box(ds: DigitSystem, starts) -> int | None:
    """Max-norm bound for closure states of an expanding modulus.

    Each conjugate satisfies ``|s(T(e+d))| <= (|s(e)| + 2M)/|alpha|``, so the
    region ``|s| <= max(start, 2M/(|alpha|-1))`` is invariant; it is mapped
    back to coefficients through the inverse Vandermonde matrix and doubled.
    Returns None when the roots are too ill-conditioned to trust.
    """
    roots = np.roots(list(reversed(ds.modulus.coeffs)))
    n = ds.n
    if len(roots) != n or np.any(np.abs(roots) <= 1.0):
        return None
    V = np.vander(roots, n, increasing=True)
    if np.linalg.cond(V) > 1e10:
        return None
    emb = lambda e: np.abs(V @ np.array(e, dtype=float))
    M = np.max([emb(d) for d in ds.digits], axis=0)
    S = np.max([emb(s) for s in starts], axis=0)
    R = np.maximum(S, 2 * M / (np.abs(roots) - 1))
    Vinv = np.linalg.inv(V)
    bound = np.abs(Vinv) @ R
    return int(2 * math.ceil(float(np.max(bound))) + 2)


def witness_closure(ds: DigitSystem, start: str = GENERATORS, max_states: int = DEFAULT_MAX_STATES) -> set[Element]:
    """Smallest superset of the start states closed under ``e -> T(e + d)``."""
    if ds.classification != IRREDUNDANT:
        raise DigitSetError(f"witness closure needs an irredundant digit set: {ds}")
    f = ds.ring._f
    n = ds.n
    C = ds.base
    sgn = 1 if f[0] > 0 else -1
    deltas = _SuccessorDeltas(ds)
    starts = start_states(ds, start)
    box = state_box(ds, starts) if is_expanding(ds.modulus) else None
    limit = MAGNITUDE_GUARD if box is None else box
    fs = f[1 : n + 1]
    seen = set(starts)
    work = list(starts)
    while work:
        e = work.pop()
        u, r = divmod(e[0], C)
        su = sgn * u
        base = [e[i + 1] - su * fs[i] for i in range(n - 1)]
        base.append(-su)
        for delta in deltas[r]:
            t = tuple(b + x for b, x in zip(base, delta))
            if t not in seen:
                if max(map(abs, t)) > limit:
                    raise ClosureOverflow(f"state {t} left the box of radius {limit}")
                seen.add(t)
                work.append(t)
                if len(seen) > max_states:
                    raise ClosureOverflow(f"closure exceeded {max_states} states")
    return seen


class _Orbits:
    """Memoised orbit classification: True = reaches 0, False = enters a
    nonzero cycle."""

    def __init__(self, ds: DigitSystem, budget: int = ORBIT_BUDGET):
        self.ds = ds
        self.budget = budget
        self.zero = ds.ring.zero
        self.status: dict[Element, bool] = {self.zero: True}
        self.cycles: dict[Element, tuple[tuple[Element, ...], tuple[int, ...]]] = {}

    def classify(self, e: Element) -> bool | None:
        status = self.status
        if e in status:
            return status[e]
        path: list[Element] = []
        digits: list[int] = []
        index: dict[Element, int] = {}
        state = e
        while state not in status and state not in index:
            if len(path) > self.budget or max(map(abs, state)) > MAGNITUDE_GUARD:
                return None
            index[state] = len(path)
            path.append(state)
            idx, state = backstep(self.ds, state)
            digits.append(idx)
        if state in index:
            i = index[state]
            cyc = tuple(path[i:])
            labels = tuple(digits[i:])
            k = min(range(len(cyc)), key=lambda j: cyc[j])
            self.cycles[cyc[k]] = (cyc[k:] + cyc[:k], labels[k:] + labels[:k])
            verdict = False
        else:
            verdict = status[state]
        for s in path:
            status[s] = verdict
        return verdict


def _probe_states(ds: DigitSystem):
    # small states around 0, nearest first
    n = ds.n
    r = 1
    while (2 * r + 3) ** n <= PROBE_STATES:
        r += 1
    return sorted(itertools.product(range(-r, r + 1), repeat=n), key=lambda e: (max(map(abs, e)), e))


def root_inside_disk(f: IntPoly, margin: float = 1e-9) -> bool:
    """Some root has modulus < 1 - margin (floating point, with a margin)."""
    roots = np.roots(list(reversed(f.coeffs)))
    return bool(np.any(np.abs(roots) < 1 - margin))


def decide_fep(ds: DigitSystem, start: str = GENERATORS, max_states: int = DEFAULT_MAX_STATES) -> WitnessReport:
    expanding = is_expanding(ds.modulus)
    orbits = _Orbits(ds)
    if not expanding:
        # a contracting conjugate keeps expandable elements bounded while the
        # integers are not; otherwise look for a cycle near 0
        if root_inside_disk(ds.modulus):
            return WitnessReport(NOT_FEP, 0, start, expanding=False, reason="root inside the unit disk")
        for e in _probe_states(ds):
            orbits.classify(e)
            if orbits.cycles:
                return WitnessReport(NOT_FEP, 0, start, _sorted_cycles(orbits), expanding=False, reason="nonzero cycle")
    try:
        witness = witness_closure(ds, start, max_states=max_states)
    except ClosureOverflow as exc:
        # a nonzero cycle among the start states still settles the question
        for s in start_states(ds, start):
            orbits.classify(s)
        if orbits.cycles:
            return WitnessReport(NOT_FEP, 0, start, _sorted_cycles(orbits), expanding=expanding, reason=str(exc))
        return WitnessReport(INCONCLUSIVE, 0, start, expanding=expanding, reason=str(exc))
    undecided = 0
    for e in sorted(witness):
        if orbits.classify(e) is None:
            undecided += 1
    if orbits.cycles:
        return WitnessReport(NOT_FEP, len(witness), start, _sorted_cycles(orbits), expanding=expanding)
    if undecided:
        return WitnessReport(
            INCONCLUSIVE, len(witness), start, expanding=expanding, reason=f"{undecided} orbits exceeded the step budget"
        )
    L = zero_expansion_length(ds)
    return WitnessReport(FEP, len(witness), start, L=L, expanding=expanding)


def _sorted_cycles(orbits: _Orbits):
    return [orbits.cycles[k] for k in sorted(orbits.cycles)]


def is_cns(f, report: bool = False):
    """Classical CNS test: digits ``0..|f(0)|-1`` have the finite expansion
    property."""
    f = as_poly(f)
    if f.lc != 1 or f[0] == 0:
        raise ValueError(f"is_cns needs a monic polynomial with f(0) != 0, got {f}")
    if not is_expanding(f):
        rep = WitnessReport(NOT_FEP, 0, GENERATORS, expanding=False, reason="not expanding")
        return rep if report else False
    if count_positive_roots(f) > 0:
        rep = WitnessReport(NOT_FEP, 0, GENERATORS, reason="positive real root")
        return rep if report else False
    rep = decide_fep(DigitSystem.classical(f), GENERATORS)
    if rep.verdict == INCONCLUSIVE:
        raise RuntimeError(f"CNS test for {f} inconclusive: {rep.reason}")
    return rep if report else rep.verdict == FEP


def kovacs_sufficient(f) -> bool:
    """Monotone-coefficient test: ``c0 >= c1 >= ... >= c_{n-1} >= 1`` and
    ``c0 >= 2`` imply the CNS property unless f has a root of unity as a root.

    Monotone coefficients already keep every root on or outside the unit
    circle, so the exact expanding test rules out exactly those cases, as
    in (x + 1)(x^2 + 2).
    """
    f = as_poly(f)
    if f.lc != 1:
        raise ValueError(f"{f} is not monic")
    c = f.coeffs[:-1]
    if not c or c[0] < 2:
        return False
    if not (all(a >= b for a, b in zip(c, c[1:])) and c[-1] >= 1):
        return False
    return is_expanding(f)
