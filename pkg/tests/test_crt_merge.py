import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from polyradix.crt_merge import (
    NotIntegral,
    in_W,
    lengths_coprime,
    merge_digit_systems,
    necessary_conditions,
    prime_factors,
    product_fep_check,
    psi,
    psi_inverse,
)
from polyradix.gb_ideal import normal_form, strong_gb
from polyradix.intpoly import IntPoly, coprime_over_Q, parse_poly
from polyradix.quotient import FINITE, DigitSystem, evaluate, expand

P = parse_poly

MERGED_B = {
    "X", "1", "X+2", "-3X-12", "X+4", "2X+5", "-2X-9", "2X+7",
    "-2X-7", "-X-6", "3X+10", "-X-4", "-3", "-X-2", "-1",
}


def monic_st(max_deg=3, bound=6):
    return st.lists(st.integers(-bound, bound), min_size=1, max_size=max_deg).map(lambda c: IntPoly(c + [1]))


@pytest.fixture(scope="module")
def merge_b():
    return merge_digit_systems(
        DigitSystem.create("x+3", [-3, 1, -1]), DigitSystem.create("x+5", [-5, 1, -3, 3, -1])
    )


def test_psi_examples():
    assert psi(P("-x-1"), P("x+2"), P("x+3")) == ((1,), (2,))
    assert psi(P("0"), P("x+2"), P("x+3")) == ((0,), (0,))
    assert psi(P("2x+7"), P("x+3"), P("x+5")) == ((1,), (-3,))


def test_psi_inverse_examples():
    assert psi_inverse(1, 2, P("x+2"), P("x+3")) == P("-x-1")
    assert psi_inverse(0, 0, P("x+2"), P("x+3")).is_zero()
    with pytest.raises(NotIntegral):
        psi_inverse(0, 1, P("x+5"), P("x+7"))


def test_psi_inverse_rejects_bad_moduli():
    with pytest.raises(ValueError):
        psi_inverse(0, 0, P("x^2-1"), P("x+1"))
    with pytest.raises(ValueError):
        psi_inverse(0, 0, P("2x+1"), P("x+1"))


@given(monic_st(), monic_st(), st.lists(st.integers(-40, 40), max_size=6))
@settings(max_examples=80, deadline=None)
def test_round_trip(f1, f2, c):
    assume(coprime_over_Q(f1, f2))
    a = IntPoly(c[: f1.degree + f2.degree])
    a1, a2 = psi(a, f1, f2)
    assert psi_inverse(a1, a2, f1, f2) == a


@given(monic_st(2, 4), monic_st(2, 4), st.lists(st.integers(-9, 9), max_size=2), st.lists(st.integers(-9, 9), max_size=2))
@settings(max_examples=100, deadline=None)
def test_not_integral_iff_incongruent(f1, f2, c1, c2):
    assume(coprime_over_Q(f1, f2))
    a1, a2 = IntPoly(c1) % f1, IntPoly(c2) % f2
    congruent = normal_form(a1 - a2, strong_gb(f1, f2)).is_zero()
    try:
        a = psi_inverse(a1, a2, f1, f2)
    except NotIntegral:
        assert not congruent
    else:
        assert congruent
        assert (a - a1) % f1 == IntPoly() and (a - a2) % f2 == IntPoly()


@given(monic_st(2, 4), monic_st(2, 4))
@settings(max_examples=40, deadline=None)
def test_surjective_iff_unit_ideal(f1, f2):
    assume(coprime_over_Q(f1, f2))
    gb = strong_gb(f1, f2)
    failures = 0
    for a1 in range(-3, 4):
        for a2 in range(-3, 4):
            try:
                psi_inverse(a1, a2, f1, f2)
            except NotIntegral:
                failures += 1
    assert (failures == 0) == gb.is_unit_ideal


def test_in_W():
    mods = [P("x+2"), P("x+3"), P("x+5")]
    assert in_W([1, 1, 7], mods)
    assert not in_W([1, 1, 6], mods)
    for a in range(-20, 21):
        assert in_W([a, a, a], mods)
    with pytest.raises(ValueError):
        in_W([1, 1], mods)


def test_merge_example_a():
    rep = merge_digit_systems(DigitSystem.create("x+2", [0, 1]), DigitSystem.create("x+3", [0, 1, 2]))
    assert rep.success
    assert set(rep.to_dict()["merged_digits"]) == {"0", "X+3", "-X-2", "1", "-2X-4", "-X-1"}
    assert rep.d_tilde == () and rep.S == 1 and rep.L1 == rep.L2 == rep.L_merged == 1


def test_merge_example_b(merge_b):
    rep = merge_b
    assert rep.success
    assert set(rep.to_dict()["merged_digits"]) == MERGED_B
    assert rep.d_tilde == (1,) and rep.S == 2
    assert rep.L1 == rep.L2 == rep.L_merged == 2
    assert rep.merged.modulus == P("x^2+8x+15")


def test_merge_example_b_expansion(merge_b):
    ds = merge_b.merged
    exp = expand(ds, P("37x-55"))
    assert exp.kind == FINITE
    shown = [ds.ring.format(ds.digits[i]) for i in exp.digits]
    assert shown == ["2X+5", "2X+7", "X", "-X-4", "3X+10", "X+4"]


def test_merged_system_expands_box(merge_b):
    ds = merge_b.merged
    for a in range(-30, 31):
        for b in range(-30, 31):
            exp = expand(ds, (a, b))
            assert exp.kind == FINITE
            assert evaluate(ds, exp.digits) == (a, b)


def test_merged_digit_count_and_constants(merge_b):
    ds = merge_b.merged
    assert len(ds.digits) == 3 * 5
    assert sorted(d[0] % 15 for d in ds.digits) == list(range(15))


def test_length_congruence(merge_b):
    ds1 = DigitSystem.create("x+3", [-3, 1, -1])
    ds2 = DigitSystem.create("x+5", [-5, 1, -3, 3, -1])
    S = merge_b.S
    for a1 in range(-25, 26):
        for a2 in range(-25, 26):
            if (a1 - a2) % 2:
                continue
            assert (expand(ds1, a1).length - expand(ds2, a2).length) % S == 0


def test_merge_fails_condition_ii():
    rep = merge_digit_systems(DigitSystem.create("x+2", [0, 1]), DigitSystem.create("x-2", [0, 1]))
    assert rep.cond_i and not rep.cond_ii
    assert rep.merged is None and not rep.success


def test_merge_refuses_redundant_digits():
    rep = merge_digit_systems(DigitSystem.create("x+2", [0, 1, 2]), DigitSystem.create("x+3", [0, 1, 2]))
    assert not rep.cond_i and rep.merged is None


def test_merge_on_impossible_pair():
    # (x+4, x+7) admits no mergeable pair; digits agreeing mod 3 pass (ii)
    # but the factor systems then lack FEP
    rep = merge_digit_systems(
        DigitSystem.create("x+4", [1, -2, 4, 7]), DigitSystem.create("x+7", [1, 4, -2, 7, 10, 13, -5])
    )
    assert rep.cond_ii and rep.quotient_size == 3 and rep.S == 2
    assert not rep.cond_iii and rep.cond_iv.holds is None
    assert rep.fep is False and not rep.success


def test_necessary_conditions():
    rep = necessary_conditions(P("x+4"), P("x+7"))
    assert not rep.possible and rep.knuth is False
    assert rep.m == 3 and rep.linear_root == -4
    assert "= 2 (mod 3)" in rep.reason
    rep = necessary_conditions(P("x+3"), P("x+5"))
    assert rep.possible and rep.knuth and rep.S1 == 2 == rep.cardinality
    rep = necessary_conditions(P("x+2"), P("x+3"))
    assert rep.possible and rep.cardinality == 1 and rep.S1 == 1


@pytest.mark.parametrize("a, b", [(-3, -5), (-4, -7), (-2, -6), (-3, -7), (-5, -9), (-2, -10)])
def test_knuth_agrees_with_period(a, b):
    rep = necessary_conditions(IntPoly((-a, 1)), IntPoly((-b, 1)))
    assert rep.knuth == rep.possible


def test_prime_factors():
    assert prime_factors(360) == (2, 3, 5)
    assert prime_factors(97) == (97,)
    assert prime_factors(1) == ()


def test_product_fep_check():
    assert product_fep_check(DigitSystem.classical("x+2"), DigitSystem.classical("x+3"))
    assert not product_fep_check(DigitSystem.create("x+3", [-3, 1, -1]), DigitSystem.create("x+5", [-5, 1, -3, 3, -1]))
    assert lengths_coprime(2, 3) and not lengths_coprime(2, 2) and lengths_coprime(1, 1)
    with pytest.raises(ValueError):
        product_fep_check(DigitSystem.classical("x-2"), DigitSystem.classical("x+3"))
