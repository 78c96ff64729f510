import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from labelsem.classical import (
    HorizonModel,
    Trapezoid,
    bosc_concentrate,
    bosc_dilate,
    bosc_equivalence_params,
    label_trapezoid,
    novak_equivalence_check,
    novak_label,
    novak_mu,
    power_as_threshold_fn,
    power_hedge,
    resemblance,
    shift_hedge,
)
from labelsem.hedge import apply, concentrate_mu, dilate_mu, rescale
from labelsem.label import Label
from labelsem.space import Point, PrototypeSet
from labelsem.threshold import Uniform

F = Trapezoid(2, 4, 6, 8)
Z = Trapezoid(-1, -0.5, 0.5, 1)
ZERO = Trapezoid(0, 0, 0, 0)


def test_power_examples():
    assert power_hedge(0.5, 2) == 0.25
    assert power_hedge(1.0, 0.5) == 1.0
    assert power_hedge(0.25, 0.5) == 0.5
    with pytest.raises(ValueError):
        power_hedge(0.5, 0)


def test_core_and_support_preserved():
    for g in (lambda m: power_hedge(m, 2), lambda m: power_hedge(m, 0.5), dilate_mu, concentrate_mu):
        assert g(1.0) == 1.0 and g(0.0) == 0.0


def test_shift_examples():
    L = Label(5.0, Uniform(0, 3))
    moved = shift_hedge(L, 2)
    assert moved.prototype.points == (Point((7.0,)),)
    assert moved(7) == 1.0
    assert shift_hedge(Label(PrototypeSet.interval(4, 6), Uniform(0, 3)), -1).prototype.intervals == ((3.0, 5.0),)
    assert moved(6.5) == pytest.approx(L(4.5)) and moved(6.5) == pytest.approx(1 - 0.5 / 3)
    with pytest.raises(ValueError):
        shift_hedge(L, (1.0, 2.0))


@given(st.floats(-5, 15), st.floats(-3, 3))
def test_shift_is_translation(x, a):
    L = Label(5.0, Uniform(0, 3))
    assert shift_hedge(L, a)(x) == pytest.approx(L(x - a), abs=1e-12)


def test_novak_examples():
    assert novak_mu(HorizonModel(1, 2), 0.5) == 1.0
    assert novak_mu(HorizonModel(1, 2, 2), 3, hedged=True) == 0.5
    assert novak_mu(HorizonModel(1, 2), 2) == 0.0
    with pytest.raises(ValueError):
        HorizonModel(2, 1)
    with pytest.raises(ValueError):
        novak_mu(HorizonModel(1, 2), -1)


def test_novak_equivalence_examples():
    assert novak_equivalence_check(1, 2, 2, np.linspace(0, 5, 500))
    assert novak_equivalence_check(0, 3, 1)
    assert novak_equivalence_check(1, 2, 0.5)


@pytest.mark.parametrize("k", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("c,a", [(1, 2), (0, 3), (2, 5)])
def test_novak_equivalence_grid(k, c, a):
    assert novak_equivalence_check(c, a, k)
    hl = apply(rescale(k), novak_label(c, a))
    h = HorizonModel(c, a, k)
    for x in np.linspace(0, 2 * max(k, 1) * a, 500):
        assert abs(hl(x) - novak_mu(h, x, hedged=True)) <= 1e-9


def test_bosc_examples():
    assert bosc_dilate(F, Z).astuple() == (1, 3.5, 6.5, 9)
    assert bosc_concentrate(F, Z).astuple() == (3, 4.5, 5.5, 7)
    assert bosc_dilate(F, ZERO) == F
    assert bosc_concentrate(F, ZERO) == F
    got = bosc_dilate(Trapezoid(0, 1, 1, 2), Trapezoid(-0.2, -0.1, 0.1, 0.2)).astuple()
    assert got == pytest.approx((-0.2, 0.9, 1.1, 2.2), abs=1e-15)
    assert bosc_concentrate(Trapezoid(0, 2, 6, 8), Z).astuple() == (1, 2.5, 5.5, 7)


def test_bosc_errors():
    with pytest.raises(ValueError):
        bosc_dilate(F, Trapezoid(-1, -0.5, 0.2, 1))
    with pytest.raises(ValueError):
        bosc_concentrate(Trapezoid(0, 2, 2.5, 4), Z)
    with pytest.raises(ValueError):
        Trapezoid(1, 0, 2, 3)
    with pytest.raises(ValueError):
        resemblance(-1, 0)


def test_trapezoid_membership():
    xs = [1, 2, 3, 4, 5, 6, 7, 8, 9]
    assert [F(x) for x in xs] == [0, 0, 0.5, 1, 1, 1, 0.5, 0, 0]
    assert np.array_equal(F(np.array(xs, float)), np.array([F(x) for x in xs]))
    assert F.to_json() == [2, 4, 6, 8]


def test_equivalence_param_examples():
    with pytest.warns(UserWarning):
        assert bosc_equivalence_params(2, 1, 2, "dilate") == (1, 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert bosc_equivalence_params(1, 0.3, 2, "dilate") == (0, 0)
    assert bosc_equivalence_params(0.5, 1, 2, "concentrate") == (0.5, 0.5)
    with pytest.raises(ValueError):
        bosc_equivalence_params(0.5, 1, 2, "dilate")
    with pytest.raises(ValueError):
        bosc_equivalence_params(2, 1, 2, "concentrate")


def test_c_below_z_only_warns():
    with pytest.warns(UserWarning):
        bosc_equivalence_params(1.5, 1, 2, "dilate")


@given(
    st.fractions(-10, 10, max_denominator=20),
    st.fractions(0, 5, max_denominator=20),
    st.fractions(Fraction(1, 20), 5, max_denominator=20),
    st.fractions(1, 4, max_denominator=20),
)
def test_trapezoid_equivalence_dilate(P, c, width, k):
    a = c + width
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        z, alpha = bosc_equivalence_params(k, c, a, "dilate")
    got = bosc_dilate(label_trapezoid(P, c, a), resemblance(z, alpha))
    assert got.astuple() == (P - k * a, P - k * c, P + k * c, P + k * a)


@given(
    st.fractions(-10, 10, max_denominator=20),
    st.fractions(0, 5, max_denominator=20),
    st.fractions(Fraction(1, 20), 5, max_denominator=20),
    st.fractions(Fraction(1, 2), 1, max_denominator=20),
)
def test_trapezoid_equivalence_concentrate(P, c, width, k):
    a = c + width
    z, alpha = bosc_equivalence_params(k, c, a, "concentrate")
    got = bosc_concentrate(label_trapezoid(P, c, a), resemblance(z, alpha))
    assert got.astuple() == (P - k * a, P - k * c, P + k * c, P + k * a)


def test_power_fn_examples():
    f1 = power_as_threshold_fn(3, 1)
    assert all(f1(e) == pytest.approx(e, abs=1e-15) for e in np.linspace(0, 3, 13))
    f2 = power_as_threshold_fn(3, 2)
    assert f2(1.5) == pytest.approx(3 - math.sqrt(4.5), abs=1e-15)
    assert round(f2(1.5), 5) == 0.87868
    assert f2(0) == pytest.approx(0, abs=1e-15) and f2(3) == 3
    L = Label(5.0, Uniform(0, 3))
    hl = apply(rescale(f2), L)
    # at distance 1.5 the base value is 0.5, so the powered value is 0.25
    assert hl.survival(1.5) == pytest.approx(0.25, abs=1e-12)
    with pytest.raises(ValueError):
        f2(3.5)


@pytest.mark.parametrize("k", [2.0, 0.5, 3.0, 0.25])
def test_power_equivalence(k):
    b = 3.0
    L = Label(5.0, Uniform(0, b))
    hl = apply(rescale(power_as_threshold_fn(b, k)), L)
    for x in np.linspace(5 - b, 5 + b, 601):
        assert abs(hl(x) - L(x) ** k) <= 1e-9
