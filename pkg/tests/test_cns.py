import itertools

import pytest

from polyradix.cns import (
    FEP,
    GENERATORS,
    NOT_FEP,
    UNITS,
    _SuccessorDeltas,
    decide_fep,
    is_cns,
    kovacs_sufficient,
    start_states,
    state_box,
    witness_closure,
)
from polyradix.intpoly import IntPoly, is_expanding, parse_poly
from polyradix.quotient import DigitSetError, DigitSystem, backstep, evaluate

P = parse_poly


def brute_fep(ds, radius, budget=2000):
    """Expand every state of the box; stop at the first failure."""
    n = ds.n
    done = {ds.ring.zero: True}
    for e in sorted(itertools.product(range(-radius, radius + 1), repeat=n), key=lambda e: max(map(abs, e))):
        path = []
        state = e
        verdict = None
        for _ in range(budget):
            if state in done:
                verdict = done[state]
                break
            if state in path or max(map(abs, state)) > 10**9:
                verdict = False
                break
            path.append(state)
            _, state = backstep(ds, state)
        verdict = bool(verdict)
        for s in path:
            done[s] = verdict
        if not verdict:
            return False
    return True


def closure_step(ds, e, d):
    return backstep(ds, ds.ring.add(e, d))[1]


def test_start_states():
    ds = DigitSystem.classical("x^2+5x+6")
    assert set(start_states(ds, GENERATORS)) == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}
    assert set(start_states(ds, UNITS)) == {(0, 0), (1, 0), (-1, 0)}
    with pytest.raises(ValueError):
        start_states(ds, "everything")


@pytest.mark.parametrize(
    "modulus, digits",
    [("x^2+5x+6", None), ("x+2", None), ("x^3+10x^2+31x+30", None), ("x+3", [-3, 1, -1]), ("x^2+3x+3", [0, 1, -1])],
)
def test_closure_is_closed(modulus, digits):
    ds = DigitSystem.classical(modulus) if digits is None else DigitSystem.create(modulus, digits)
    E = witness_closure(ds)
    assert set(start_states(ds)) <= E
    for e in E:
        for d in ds.digits:
            assert closure_step(ds, e, d) in E


def test_closure_for_base_minus_two():
    E = witness_closure(DigitSystem.classical("x+2"))
    assert E <= {(-1,), (0,), (1,)}


def test_closure_quadratic_contains_generators():
    E = witness_closure(DigitSystem.classical("x^2+5x+6"))
    assert {(1, 0), (-1, 0), (0, 1), (0, -1)} <= E
    assert len(E) == 9


def test_successor_deltas_match_direct_step():
    for ds in (
        DigitSystem.classical("x^2+3x+5"),
        DigitSystem.create("x^2+8x+15", [P(t) for t in ("x", "-2x-9", "-3", "-3x-12", "-x-6", "3x+10", "1", "2x+7", "-x-2", "x+4", "2x+5", "-x-4", "x+2", "-2x-7", "-1")]),
    ):
        deltas = _SuccessorDeltas(ds)
        f = ds.ring._f
        C, sgn, n = ds.base, (1 if f[0] > 0 else -1), ds.n
        for e in itertools.product(range(-4, 5), repeat=n):
            u, r = divmod(e[0], C)
            base = [e[i + 1] - sgn * u * f[i + 1] for i in range(n - 1)] + [-sgn * u]
            fast = {tuple(b + x for b, x in zip(base, dl)) for dl in deltas[r]}
            slow = {closure_step(ds, e, d) for d in ds.digits}
            assert fast == slow


def test_state_box_covers_closure():
    ds = DigitSystem.classical("x^3+10x^2+31x+30")
    box = state_box(ds, start_states(ds))
    assert box is not None
    assert max(max(map(abs, e)) for e in witness_closure(ds)) <= box


def test_closure_needs_irredundant_digits():
    with pytest.raises(DigitSetError):
        witness_closure(DigitSystem.create("x+2", [0, 1, 2]))


@pytest.mark.parametrize(
    "f", ["x^2+5x+6", "x^3+10x^2+31x+30", "x^2+2x+2", "x^2+3x+3", "x^3+x^2+x+2", "x^4+x^3+x^2+x+2"]
)
def test_cns_true(f):
    assert is_cns(P(f))


@pytest.mark.parametrize("f", ["x-2", "x^2-2", "x^2+4x+2", "x^2+x-2", "x^3+x+1"])
def test_cns_false(f):
    assert not is_cns(P(f))


def test_is_cns_preconditions():
    with pytest.raises(ValueError):
        is_cns(P("2x+3"))
    with pytest.raises(ValueError):
        is_cns(P("x^2+x"))


def test_quadratic_characterisation():
    # x^2 + b x + c is CNS iff -1 <= b <= c and c >= 2
    for b in range(-6, 10):
        for c in range(-9, 10):
            if c == 0:
                continue
            f = IntPoly((c, b, 1))
            assert is_cns(f) == (-1 <= b <= c and c >= 2), (b, c)


def test_cycles_are_genuine():
    ds = DigitSystem.classical("x^2-2x+2")
    rep = decide_fep(ds)
    assert rep.verdict == NOT_FEP and rep.cycles
    ring = ds.ring
    for states, labels in rep.cycles:
        assert all(s != ring.zero for s in states)
        for i, s in enumerate(states):
            idx, nxt = backstep(ds, s)
            assert idx == labels[i]
            assert nxt == states[(i + 1) % len(states)]
        # sum d_i X^i over one period equals (1 - X^L) s_0
        s0 = states[0]
        xl = s0
        for _ in states:
            xl = ring.mul_x(xl)
        assert evaluate(ds, labels) == ring.sub(s0, xl)


def test_units_start_is_implied_by_generators():
    for f in ["x^2+5x+6", "x^2+3x+3", "x^3+10x^2+31x+30", "x^2+4x+6"]:
        ds = DigitSystem.classical(f)
        if decide_fep(ds, GENERATORS).verdict == FEP:
            assert decide_fep(ds, UNITS).verdict == FEP
        assert len(witness_closure(ds, UNITS)) <= len(witness_closure(ds, GENERATORS))


def test_general_digit_sets():
    merged = DigitSystem.create(
        "x^2+8x+15",
        [P(t) for t in ("x", "-2x-9", "-3", "-3x-12", "-x-6", "3x+10", "1", "2x+7", "-x-2", "x+4", "2x+5", "-x-4", "x+2", "-2x-7", "-1")],
    )
    rep = decide_fep(merged)
    assert rep.verdict == FEP and rep.L == 2
    assert decide_fep(DigitSystem.create("x+3", [-3, 1, -1])).L == 2
    assert decide_fep(DigitSystem.create("x+2", [0, 3])).verdict == NOT_FEP


def test_non_expanding_certificates():
    # root near -0.56: expandable elements stay bounded there, the integers do not
    rep = decide_fep(DigitSystem.classical("x^2-3x-2"))
    assert rep.verdict == NOT_FEP and not rep.expanding and "disk" in rep.reason
    # root -1: a nonzero cycle turns up near 0
    rep = decide_fep(DigitSystem.classical("x^2+3x+2"))
    assert rep.verdict == NOT_FEP and rep.cycles


@pytest.mark.parametrize("c1", range(-9, 10, 3))
def test_agrees_with_brute_force(c1):
    for c0 in (-7, -4, -2, 2, 5, 9):
        ds = DigitSystem.classical(IntPoly((c0, c1, 1)))
        assert (decide_fep(ds).verdict == FEP) == brute_fep(ds, 20), (c0, c1)


def test_kovacs_examples():
    assert kovacs_sufficient(P("x^2+5x+6"))
    assert kovacs_sufficient(P("x^2+x+2"))
    assert not kovacs_sufficient(P("x^2+2x+1"))
    assert not kovacs_sufficient(P("x^2+3x+2"))
    assert not kovacs_sufficient(P("x^2+2x"))
    with pytest.raises(ValueError):
        kovacs_sufficient(P("2x+3"))


def test_kovacs_implies_cns():
    for n in (2, 3):
        for c in itertools.product(range(1, 13), repeat=n):
            f = IntPoly(c + (1,))
            if kovacs_sufficient(f):
                assert is_cns(f), f


def test_kovacs_excludes_roots_of_unity():
    f = P("x^3+x^2+2x+2")  # (x + 1)(x^2 + 2), monotone coefficients
    assert not is_expanding(f)
    assert not kovacs_sufficient(f)
    assert not is_cns(f)


def test_minus_seven_triple_product():
    from polyradix.simultaneous import quad_triple_polys

    f, g, h = quad_triple_polys(-7)
    assert is_cns(f * g * h)
