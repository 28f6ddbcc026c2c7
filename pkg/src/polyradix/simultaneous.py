"""Simultaneous digit systems on Z[x]/(f_1) x ... x Z[x]/(f_k).

One digit stream expands every component at once: the digit is picked by
the CRT on constant coefficients modulo prod |f_i(0)|, then each component
does its own backward division.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .cns import FEP, GENERATORS, INCONCLUSIVE, UNITS, WitnessReport, decide_fep, is_cns
from .gb_ideal import strong_gb
from .intpoly import IntPoly, as_poly, coprime_over_Q, resultant
from .quotient import (
    BUDGET,
    FINITE,
    PERIODIC,
    DigitSystem,
    Element,
    Expansion,
    QuotientRing,
    default_budget,
)

SimState = tuple  # tuple of Elements, one per modulus


def crt_int(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """The r in [0, prod m) with r = residues[i] mod moduli[i]."""
    r, M = 0, 1
    for a, m in zip(residues, moduli):
        t = ((a - r) * pow(M, -1, m)) % m
        r += M * t
        M *= m
    return r


@dataclass(frozen=True)
class SimSystem:
    moduli: tuple[IntPoly, ...]
    digit_reps: tuple[IntPoly, ...]

    def __post_init__(self):
        if not self.moduli:
            raise ValueError("need at least one modulus")
        for f in self.moduli:
            QuotientRing(f)  # monic, nonconstant, f(0) != 0
        consts = [abs(f[0]) for f in self.moduli]
        for (i, a), (j, b) in itertools.combinations(enumerate(consts), 2):
            if math.gcd(a, b) != 1:
                raise ValueError(f"constant terms of {self.moduli[i]} and {self.moduli[j]} are not coprime")
            if not coprime_over_Q(self.moduli[i], self.moduli[j]):
                raise ValueError(f"{self.moduli[i]} and {self.moduli[j]} are not coprime over Q")
        P = math.prod(consts)
        seen = {}
        for i, d in enumerate(self.digit_reps):
            r = d[0] % P
            if r in seen:
                raise ValueError(f"digits {self.digit_reps[seen[r]]} and {d} are congruent mod {P}")
            seen[r] = i
        if len(seen) != P:
            raise ValueError(f"{len(seen)} digits do not cover all {P} residues mod {P}")

    @classmethod
    def create(cls, moduli: Iterable, digits: Iterable) -> SimSystem:
        return cls(tuple(as_poly(f) for f in moduli), tuple(as_poly(d) for d in digits))

    @classmethod
    def classical(cls, bases: Iterable[int]) -> SimSystem:
        """Bases N_i (moduli x - N_i) with digits 0 .. prod |N_i| - 1."""
        bases = list(bases)
        P = math.prod(abs(N) for N in bases)
        return cls.create([IntPoly((-N, 1)) for N in bases], range(P))

    @property
    def k(self) -> int:
        return len(self.moduli)

    @cached_property
    def rings(self) -> tuple[QuotientRing, ...]:
        return tuple(QuotientRing(f) for f in self.moduli)

    @cached_property
    def consts(self) -> tuple[int, ...]:
        return tuple(abs(f[0]) for f in self.moduli)

    @cached_property
    def P(self) -> int:
        return math.prod(self.consts)

    @cached_property
    def _lookup(self) -> dict[int, int]:
        return {d[0] % self.P: i for i, d in enumerate(self.digit_reps)}

    @cached_property
    def _reduced_digits(self) -> tuple[tuple[Element, ...], ...]:
        # _reduced_digits[i][j]: digit j modulo f_i
        return tuple(tuple(ring.reduce(d) for d in self.digit_reps) for ring in self.rings)

    @property
    def zero(self) -> SimState:
        return tuple(ring.zero for ring in self.rings)

    def state(self, components: Sequence) -> SimState:
        if len(components) != self.k:
            raise ValueError(f"expected {self.k} components, got {len(components)}")
        return tuple(ring.reduce(c) for ring, c in zip(self.rings, components))

    def diagonal(self, a) -> SimState:
        return self.state([a] * self.k)

    def product_system(self) -> DigitSystem:
        """(Z[x]/(prod f_i), X, digit_reps)."""
        return DigitSystem.create(math.prod(self.moduli, start=IntPoly((1,))), self.digit_reps)

    def is_classical(self) -> bool:
        return all(d.degree <= 0 for d in self.digit_reps) and sorted(
            d[0] if not d.is_zero() else 0 for d in self.digit_reps
        ) == list(range(self.P))

    def format_state(self, s: SimState) -> str:
        parts = [str(c[0]) if len(c) == 1 else ring.format(c) for ring, c in zip(self.rings, s)]
        return "(" + ",".join(parts) + ")"

    def format_digit(self, idx: int) -> str:
        return str(self.digit_reps[idx])


def sim_step(sys: SimSystem, s: SimState) -> tuple[int, SimState]:
    """Shared digit by CRT on constant terms, then backward division per
    component: ``a_i = d + X * a_i'`` modulo f_i."""
    r = crt_int([c[0] for c in s], sys.consts)
    idx = sys._lookup[r]
    out = []
    for i, (ring, a) in enumerate(zip(sys.rings, s)):
        f = ring._f
        d = sys._reduced_digits[i][idx]
        q = (a[0] - d[0]) // f[0]
        n = ring.n
        out.append(tuple(a[j + 1] - d[j + 1] - q * f[j + 1] for j in range(n - 1)) + (-q * f[n],))
    return idx, tuple(out)


def sim_trajectory(sys: SimSystem, s: SimState, steps: int) -> list[tuple[SimState, int, SimState]]:
    out = []
    for _ in range(steps):
        idx, nxt = sim_step(sys, s)
        out.append((s, idx, nxt))
        s = nxt
    return out


def sim_expand(sys: SimSystem, s, budget: int | None = None) -> Expansion:
    if budget is None:
        budget = default_budget()
    s = sys.state(s) if not _is_state(sys, s) else s
    zero = sys.zero
    state = s
    digits: list[int] = []
    seen: dict[SimState, int] = {}
    states: list[SimState] = []
    for _ in range(budget + 1):
        if state == zero:
            return Expansion(FINITE, tuple(digits), start=s)
        if state in seen:
            i = seen[state]
            return Expansion(
                PERIODIC,
                tuple(digits),
                start=s,
                preperiod=tuple(states[:i]),
                cycle=tuple(states[i:]),
                cycle_digits=tuple(digits[i:]),
            )
        seen[state] = len(states)
        states.append(state)
        idx, state = sim_step(sys, state)
        digits.append(idx)
    return Expansion(BUDGET, tuple(digits), start=s)


def _is_state(sys: SimSystem, s) -> bool:
    return (
        isinstance(s, tuple)
        and len(s) == sys.k
        and all(isinstance(c, tuple) and len(c) == r.n for c, r in zip(s, sys.rings))
    )


def sim_evaluate(sys: SimSystem, digits: Sequence[int]) -> SimState:
    """Evaluate an LSB-first digit index string in every component."""
    out = []
    for i, ring in enumerate(sys.rings):
        acc = ring.zero
        for idx in reversed(digits):
            acc = ring.add(ring.mul_x(acc), sys._reduced_digits[i][idx])
        out.append(acc)
    return tuple(out)


@dataclass
class SimReport:
    pairwise: list[tuple[int, int, bool, int]]
    product: DigitSystem
    product_fep: WitnessReport
    integers_only: WitnessReport

    @property
    def pairwise_units(self) -> bool:
        return all(unit for _, _, unit, _ in self.pairwise)

    @property
    def verified(self) -> bool:
        return self.pairwise_units and self.product_fep.verdict == FEP

    @property
    def integers_verified(self) -> bool:
        return self.integers_only.verdict == FEP

    @property
    def inconclusive(self) -> bool:
        return INCONCLUSIVE in (self.product_fep.verdict, self.integers_only.verdict)

    def to_dict(self) -> dict:
        return {
            "pairwise": [
                {"i": i, "j": j, "unit_ideal": u, "abs_resultant": r} for i, j, u, r in self.pairwise
            ],
            "product_modulus": str(self.product.modulus),
            "product_fep": self.product_fep.verdict,
            "product_witness_size": self.product_fep.witness_size,
            "integers_only": self.integers_only.verdict,
            "verified": self.verified,
            "integers_verified": self.integers_verified,
        }


def verify_sim(sys: SimSystem) -> SimReport:
    """Full FEP on the product of rings holds iff every (f_i, f_j) is the
    unit ideal and the product digit system has FEP.  Integers alone expand
    iff they expand in the product system."""
    pairwise = []
    for i, j in itertools.combinations(range(sys.k), 2):
        gb = strong_gb(sys.moduli[i], sys.moduli[j])
        pairwise.append((i, j, gb.is_unit_ideal, abs(resultant(sys.moduli[i], sys.moduli[j]))))
    prod = sys.product_system()
    if sys.is_classical():
        full = is_cns(prod.modulus, report=True)
    else:
        full = decide_fep(prod, GENERATORS)
    ints = full if full.verdict == FEP else decide_fep(prod, UNITS)
    if ints is full:
        ints = WitnessReport(full.verdict, full.witness_size, UNITS, L=full.L, reason="implied by full FEP")
    return SimReport(pairwise, prod, full, ints)


def corsim_classify(bases: Sequence[int]) -> bool:
    """Classical simultaneous number system test on integer bases: all
    N_i <= -2 and either one base or two adjacent ones."""
    bases = list(bases)
    if not bases:
        raise ValueError("need at least one base")
    if len(set(bases)) != len(bases):
        raise ValueError(f"bases must be distinct: {bases}")
    if any(math.gcd(a, b) != 1 for a, b in itertools.combinations(bases, 2)):
        return False
    if any(N > -2 for N in bases):
        return False
    return len(bases) == 1 or (len(bases) == 2 and abs(bases[0] - bases[1]) == 1)


@dataclass
class QuadTriple:
    a: int
    f: IntPoly
    g: IntPoly
    h: IntPoly
    resultants: tuple[int, int, int]
    product_cns: WitnessReport

    @property
    def polys(self) -> tuple[IntPoly, IntPoly, IntPoly]:
        return self.f, self.g, self.h

    @property
    def guaranteed(self) -> bool:
        return self.a <= -7

    @property
    def product(self) -> IntPoly:
        return self.f * self.g * self.h

    @property
    def is_cns(self) -> bool:
        return self.product_cns.verdict == FEP


def quad_triple_polys(a: int) -> tuple[IntPoly, IntPoly, IntPoly]:
    x = IntPoly.x()
    f = (x - a) * (x - a - 1) - 1
    return f, f + x - a - 1, f + x - a - 2


def quad_triple(a: int) -> QuadTriple:
    if a > -3:
        raise ValueError(f"quadratic triples need a <= -3, got {a}")
    f, g, h = quad_triple_polys(a)
    res = (resultant(f, g), resultant(f, h), resultant(g, h))
    if any(abs(r) != 1 for r in res):
        raise ArithmeticError(f"pairwise resultants {res} are not units for a = {a}")
    return QuadTriple(a, f, g, h, res, is_cns(f * g * h, report=True))


def pairwise_resultants(polys: Sequence) -> list[list[int]]:
    polys = [as_poly(p) for p in polys]
    if any(p.is_zero() for p in polys):
        raise ValueError("pairwise_resultants needs nonzero polynomials")
    n = len(polys)
    return [[resultant(polys[i], polys[j]) if i != j else 0 for j in range(n)] for i in range(n)]


class SearchSpaceError(ValueError):
    """The enumeration would exceed the configured cap."""


@dataclass
class CliqueReport:
    degree: int
    box: int
    vertices: int
    edges: int
    max_size: int
    witnesses: dict[int, tuple[IntPoly, ...]] = field(default_factory=dict)
    target: int | None = None
    positive_order: tuple[IntPoly, ...] | None = None

    @property
    def target_found(self) -> bool | None:
        return None if self.target is None else self.max_size >= self.target

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "box": self.box,
            "vertices": self.vertices,
            "edges": self.edges,
            "max_clique": self.max_size,
            "witnesses": {str(k): [str(p) for p in v] for k, v in sorted(self.witnesses.items())},
            "target": self.target,
            "target_found": self.target_found,
            "positive_order": None if self.positive_order is None else [str(p) for p in self.positive_order],
        }


def unit_resultant_graph(degree: int, box: int, cap: int = 10**5) -> tuple[list[IntPoly], list[set[int]]]:
    """Monic polynomials with coefficients in [-box, box] and edges |Res| = 1."""
    if degree < 1 or box < 1:
        raise ValueError("degree and box must be positive")
    size = (2 * box + 1) ** degree
    if size > cap:
        raise SearchSpaceError(f"{size} polynomials exceed the cap of {cap}")
    verts = [IntPoly(c + (1,)) for c in itertools.product(range(-box, box + 1), repeat=degree)]
    # gcd(p(t), q(t)) divides Res(p, q) for every integer t: cheap prefilter
    probes = (0, 1, -1, 2, -2)
    vals = [[p(t) for t in probes] for p in verts]
    adj: list[set[int]] = [set() for _ in verts]
    for i in range(len(verts)):
        vi = vals[i]
        for j in range(i + 1, len(verts)):
            vj = vals[j]
            if any(math.gcd(a, b) != 1 for a, b in zip(vi, vj)):
                continue
            if abs(resultant(verts[i], verts[j])) == 1:
                adj[i].add(j)
                adj[j].add(i)
    return verts, adj


def max_clique(adj: list[set[int]]) -> list[int]:
    """Exact maximum clique by branch and bound with a greedy colouring bound."""
    order = sorted(range(len(adj)), key=lambda v: (-len(adj[v]), v))
    best: list[int] = []

    def colour_bound(cands: list[int]) -> list[tuple[int, int]]:
        classes: list[list[int]] = []
        out = []
        for v in cands:
            for k, cls in enumerate(classes):
                if not adj[v] & set(cls):
                    cls.append(v)
                    break
            else:
                classes.append([v])
        for k, cls in enumerate(classes, start=1):
            out.extend((v, k) for v in cls)
        return out

    def expand(clique: list[int], cands: list[int]):
        nonlocal best
        coloured = colour_bound(cands)
        while coloured:
            v, c = coloured.pop()
            if len(clique) + c <= len(best):
                return
            new = clique + [v]
            rest = [u for u, _ in coloured if u in adj[v]]
            if rest:
                expand(new, rest)
            elif len(new) > len(best):
                best = new
            coloured = [(u, k) for u, k in coloured if u != v]

    expand([], order)
    return sorted(best)


def _clique_of_size(adj: list[set[int]], k: int) -> list[int] | None:
    def rec(clique, cands):
        if len(clique) == k:
            return clique
        for i, v in enumerate(cands):
            if len(clique) + len(cands) - i < k:
                return None
            r = rec(clique + [v], [u for u in cands[i + 1 :] if u in adj[v]])
            if r:
                return r
        return None

    return rec([], list(range(len(adj))))


def _positive_order(polys: Sequence[IntPoly]):
    for perm in itertools.permutations(polys):
        if all(resultant(perm[i], perm[j]) == 1 for i in range(len(perm)) for j in range(i + 1, len(perm))):
            return tuple(perm)
    return None


def clique_search(degree: int, box: int, target: int | None = None, cap: int = 10**5) -> CliqueReport:
    verts, adj = unit_resultant_graph(degree, box, cap)
    best = max_clique(adj)
    report = CliqueReport(
        degree,
        box,
        len(verts),
        sum(len(a) for a in adj) // 2,
        len(best),
        target=target,
    )
    for k in range(1, len(best)):
        c = _clique_of_size(adj, k)
        report.witnesses[k] = tuple(verts[i] for i in c)
    if best:
        report.witnesses[len(best)] = tuple(verts[i] for i in best)
        report.positive_order = _positive_order(report.witnesses[len(best)])
    return report
