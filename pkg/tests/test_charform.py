import random

import pytest

from wscalc.ratfun import Poly, RatFun, Vars
from wscalc.weyl import enumerate_group
from wscalc.zetafactors import Context
from wscalc.charform import (
    SeriesInT,
    elementary_sym,
    lhs_series,
    rhs_series,
    satake_multiset,
    shintani_verify,
    so_char,
)

C21 = Context(2, 1)


def test_so_char_trivial_weight():
    V = Vars(2, 0)
    assert so_char(V, (0, 0)) == RatFun.one(V)
    assert so_char(Vars(1, 0), (0,)) == RatFun.one(Vars(1, 0))


def test_so_char_standard_rep_so5():
    # the 5-dimensional standard representation of SO_5
    V = Vars(2, 0)
    expect = Poly.constant(V, 1)
    for e in [(0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]:
        expect = expect + Poly.monomial(V, e)
    assert so_char(V, (1, 0)) == RatFun.from_poly(expect)


def test_so_char_vanishing_strip():
    # T_{m+1}((-k, 0, ..., 0)) = 0 for k = 1..2m
    for m in (1, 2):
        V = Vars(m + 1, 0)
        for k in range(1, 2 * m + 1):
            lam = (-k,) + (0,) * m
            assert so_char(V, lam).is_zero()
        # and the next one is not zero
        lam = (-(2 * m + 1),) + (0,) * m
        assert not so_char(V, lam).is_zero()


def test_so_char_weyl_invariance_exact():
    for N in (1, 2):
        V = Vars(N, 0)
        lam = tuple(range(N + 1, 1, -1))
        c = so_char(V, lam)
        for w in enumerate_group(N):
            remap = w.embed_remap(V.size, 1)
            assert c.substitute_exponents(remap) == c


def test_so_char_weyl_invariance_numeric_N3():
    import cmath

    V = Vars(3, 0)
    c = so_char(V, (2, 1, 0))
    rng = random.Random(3)
    pts = [
        tuple(0.8 * cmath.exp(2j * cmath.pi * rng.random()) for _ in range(V.size))
        for _ in range(4)
    ]
    for w in enumerate_group(3):
        for pt in pts:
            wpt = (pt[0],) + w.act_on_point(pt[1:])
            assert abs(c.eval_at(pt) - c.eval_at(wpt)) < 1e-9


def test_elementary_sym():
    V = C21.vars
    items = satake_multiset(C21)
    assert len(items) == 2 * C21.m
    assert elementary_sym(V, items, 0) == RatFun.one(V)
    # e_1 of {v y, v y^-1} is v(y + y^-1)
    expect = Poly.monomial(V, (1, 0, 0, 1)) + Poly.monomial(V, (1, 0, 0, -1))
    assert elementary_sym(V, items, 1) == RatFun.from_poly(expect)
    # e_2 is v^2 (the product)
    assert elementary_sym(V, items, 2) == RatFun.monomial(V, (2, 0, 0, 0))
    assert elementary_sym(V, items, 3).is_zero()


def test_series_truncation_guards():
    with pytest.raises(ValueError):
        lhs_series(Context(3, 1), 2)  # needs n = m+1
    with pytest.raises(ValueError):
        rhs_series(Context(3, 1), 2)
    with pytest.raises(ValueError):
        lhs_series(C21, -1)


def test_series_k0():
    lhs = lhs_series(C21, 0)
    rhs = rhs_series(C21, 0)
    assert len(lhs) == 1 and lhs[0] == 1
    assert rhs[0] == 1
    assert lhs == rhs


def test_rhs_coefficient_k1():
    # T_2((1,0)) - v (y + y^-1)
    V = C21.vars
    expect = so_char(V, (1, 0)) - elementary_sym(V, satake_multiset(C21), 1)
    assert rhs_series(C21, 1)[1] == expect


def test_lhs_coefficient_matches_torus_value():
    from wscalc.wsformula import ws_torus

    lhs = lhs_series(C21, 2)
    V = C21.vars
    for l in (1, 2):
        comp = RatFun.monomial(V, V.v_exp(2 * l * (C21.m + 1)))
        assert lhs[l] * comp == ws_torus(C21, (l, 0))


def test_shintani_identity_2_1():
    rep = shintani_verify(C21, 8)
    assert rep.ok
    assert len(rep.results) == 9


def test_branching_consistency_product_form():
    """rhs_series equals the truncated product of the pure character series
    with prod(1 - q^-gamma T) expanded directly, not through e_r."""
    K = 5
    V = C21.vars
    char_series = SeriesInT(
        [so_char(V, (a, 0)) for a in range(K + 1)]
    )
    # expand prod (1 - gamma T) as an explicit polynomial in T
    gammas = satake_multiset(C21)
    poly_coeffs = [RatFun.one(V)]
    for g in gammas:
        gm = RatFun.monomial(V, g)
        nxt = [RatFun.zero(V) for _ in range(len(poly_coeffs) + 1)]
        for i, c in enumerate(poly_coeffs):
            nxt[i] = nxt[i] + c
            nxt[i + 1] = nxt[i + 1] - c * gm
        poly_coeffs = nxt
    prod_series = SeriesInT(poly_coeffs + [RatFun.zero(V)] * (K + 1 - len(poly_coeffs)))
    assert char_series.mul_truncated(prod_series, K) == rhs_series(C21, K)


def test_failing_coefficient_is_reported_not_raised():
    rep = shintani_verify(C21, 2)
    # sanity: the report shape supports per-coefficient inspection
    assert [l for l, _ in rep.results] == [0, 1, 2]
    assert rep.as_dict()["pass"] is True
