import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from primeheur import golden
from primeheur.constants import quadratic_constant, twin_constant
from primeheur.families import (
    AP, APAnyDiff, Cullen, Cunningham, Factorial, Goldbach, Pair, Primorial, Quadratic,
    Repunit, SophieGermain, Twin, Woodall,
)
from primeheur.predictor import (
    EmptyDomainError, PredictionResult, QuadratureError, goldbach_prediction, integrate,
    log_power_integral, predict, tuple_integral, tuple_start,
)
from primeheur.census import goldbach_reps
from primeheur.tuples import parse_tuple

TWO_C2 = 2 * float(twin_constant().value)


def half_away(x):
    return int(math.floor(x + 0.5))


def midpoint_in_log(f, a, b, n):
    # midpoint rule in u = log x, refined until two successive levels agree
    u = np.linspace(math.log(a), math.log(b), n + 1)
    mid = 0.5 * (u[1:] + u[:-1])
    x = np.exp(mid)
    return math.fsum((f(x) * x * np.diff(u)).tolist())


def test_log_power_integral_against_li():
    v = log_power_integral(2, 10**6, 1)
    exact = float(mpmath.li(10**6) - mpmath.li(2))
    assert v == pytest.approx(exact, rel=1e-10)
    assert exact == pytest.approx(78627.55 - 1.045, abs=0.01)


def test_log_power_integral_against_midpoint_refinement():
    f = lambda x: np.log(x) ** -3.0
    coarse = midpoint_in_log(f, 2, 1e7, 2**16)
    fine = midpoint_in_log(f, 2, 1e7, 2**18)
    richardson = fine + (fine - coarse) / 15
    assert log_power_integral(2, 1e7, 3) == pytest.approx(richardson, rel=1e-9)


def test_log_power_integral_edges():
    assert log_power_integral(2, 2, 1) == 0.0
    assert half_away(TWO_C2 * log_power_integral(2, 10**6, 2)) == 8248
    with pytest.raises(ValueError):
        log_power_integral(1.5, 10, 1)
    with pytest.raises(ValueError):
        log_power_integral(2, 10, 13)


def test_integrate_signals_non_convergence():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.sin(1e4 * x) + 2.0, 2, 1e6, max_panels=50)
    with pytest.raises(ValueError):
        integrate(lambda x: x, 5, 2)


@settings(max_examples=40, deadline=None)
@given(a=st.floats(2, 1e4), span=st.floats(0, 1e6), k=st.integers(1, 6))
def test_log_power_integral_is_additive(a, span, k):
    b = a + span
    m = a + span / 3
    whole = log_power_integral(a, b, k)
    parts = log_power_integral(a, m, k) + log_power_integral(m, b, k)
    assert whole == pytest.approx(parts, rel=1e-9, abs=1e-12)


def test_tuple_integral_examples():
    assert half_away(TWO_C2 * tuple_integral(parse_tuple("x,2x+1"), 10**6)) == 7811
    assert tuple_integral(parse_tuple("x"), 10**6) == pytest.approx(
        log_power_integral(2, 10**6, 1), rel=1e-10)
    # the tuple integrand sits slightly below the log-squared one (212.8 vs 213.8)
    assert abs(half_away(TWO_C2 * tuple_integral(parse_tuple("x,x+2"), 10**4)) - 214) <= 1


def test_tuple_start():
    assert tuple_start(parse_tuple("x,x+2")) == 2.0
    assert tuple_start(parse_tuple("x,2x-1")) == pytest.approx(2.0)
    assert tuple_start(parse_tuple("x-100")) == pytest.approx(102.0)
    with pytest.raises(EmptyDomainError):
        tuple_integral(parse_tuple("x-100"), 50)


def test_tuple_and_log_square_gap_shrinks():
    tup = parse_tuple("x,x+2")
    rel = []
    for e in range(4, 9):
        t = tuple_integral(tup, 10**e)
        s = log_power_integral(2, 10**e, 2)
        assert t < s
        rel.append((s - t) / s)
    assert all(a > b for a, b in zip(rel, rel[1:]))


@pytest.mark.parametrize("family, N, integral, ratio", [
    (Twin(), 10**8, 440368, 389107),
    (Pair(30), 10**6, 21981, None),
    (Cunningham("first", 4), 10**9, 30784, None),
    (Quadratic(), 10**10, 6609, None),
    (Cullen(), 10**3, None, 18),
    (Primorial(1), 10, None, 4),
    (Factorial(1), 10, 4, 4),
])
def test_predict_examples(family, N, integral, ratio):
    r = predict(family, N)
    assert isinstance(r, PredictionResult)
    assert r.bound == N and r.family == family
    if integral is not None:
        assert half_away(r.integral_estimate) == integral
    if ratio is not None:
        assert half_away(r.ratio_estimate) == ratio


@pytest.mark.parametrize("N", sorted(golden.TWIN))
def test_predict_twin_table(N):
    _, integral, ratio = golden.TWIN[N]
    r = predict(Twin(), N)
    assert abs(half_away(r.integral_estimate) - integral) <= 1
    assert abs(half_away(r.ratio_estimate) - ratio) <= 1


def test_predict_ap_table():
    assert half_away(predict(AP(3, 6), 10**9).integral_estimate) == golden.AP_1E9[(3, 6)][1]
    assert half_away(predict(AP(4, 30), 10**9).integral_estimate) == golden.AP_1E9[(4, 30)][1]
    assert predict(AP(3, 4), 10**6).integral_estimate == 0.0


def test_predict_rejects_small_n():
    with pytest.raises(ValueError):
        predict(Twin(), 9)
    with pytest.raises(ValueError):
        predict(Goldbach(), 1001)


def test_prediction_result_validation():
    c = twin_constant()
    with pytest.raises(ValueError):
        PredictionResult(-1.0, 1.0, c, Twin(), 10)
    with pytest.raises(ValueError):
        PredictionResult(1.0, float("nan"), c, Twin(), 10)


def test_goldbach_prediction_examples():
    v10 = goldbach_prediction(10)
    assert 1 <= v10 <= 4
    assert 0 < goldbach_prediction(6) < 3
    assert goldbach_prediction(100, convention="ordered") == pytest.approx(
        2 * goldbach_prediction(100))
    with pytest.raises(ValueError):
        goldbach_prediction(7)
    with pytest.raises(ValueError):
        goldbach_prediction(10, convention="sideways")


def test_goldbach_prediction_within_5_percent_at_1e6():
    m = 10**6
    actual = goldbach_reps(m, "unordered")
    assert abs(goldbach_prediction(m) / actual - 1) < 0.05
    assert abs(goldbach_prediction(m, convention="ordered") / goldbach_reps(m, "ordered") - 1) < 0.05


def test_goldbach_shah_wilson_form():
    m = 10**6
    lm = math.log(m)
    sw = goldbach_prediction(m, shah_wilson=True, convention="ordered")
    c = sw * (lm * lm - lm) / m
    # m/2 = 2^5 5^6, so 2 C_{2,m/2} = 2 C2 (5-1)/(5-2)
    assert c == pytest.approx(TWO_C2 * 4 / 3, rel=1e-12)
    assert goldbach_prediction(m, shah_wilson=True) == pytest.approx(sw / 2)


@pytest.mark.parametrize("family", [
    Twin(), Pair(6), Pair(30), SophieGermain(), Cunningham("first", 2),
    Cunningham("first", 3), Cunningham("first", 4), AP(3, 6), AP(4, 30),
])
def test_ratio_over_integral_tends_to_one(family):
    def gap(N):
        r = predict(family, N)
        return abs(r.ratio_estimate / r.integral_estimate - 1)

    assert gap(10**9) < gap(10**4)


@pytest.mark.parametrize("family", [
    Twin(), Pair(210), AP(5, 30), APAnyDiff(3), SophieGermain(), Cunningham("second", 3),
    Quadratic(), Cullen(), Woodall(), Primorial(1), Factorial(-1), Repunit(10),
])
def test_predict_is_deterministic(family):
    a = predict(family, 10**4)
    b = predict(family, 10**4)
    assert a.integral_estimate.hex() == b.integral_estimate.hex()
    assert a.ratio_estimate.hex() == b.ratio_estimate.hex()


@pytest.mark.parametrize("N", [10**4, 10**6, 10**8, 10**12])
def test_quadratic_internal_consistency(N):
    cplus = float(quadratic_constant().value)
    r = predict(Quadratic(), N)
    assert r.integral_estimate == pytest.approx(cplus / 2 * log_power_integral(2, math.sqrt(N), 1), rel=1e-14)


@pytest.mark.parametrize("family", [
    Twin(), Pair(6), AP(3, 6), AP(4, 30), APAnyDiff(3), SophieGermain(),
    Cunningham("first", 3), Cunningham("second", 2), Quadratic(), Cullen(), Woodall(),
    Primorial(1), Primorial(-1), Factorial(1), Repunit(2), Repunit(10),
])
def test_integral_increases_with_n(family):
    values = [predict(family, 10**e).integral_estimate for e in range(2, 7)]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_discrete_families_repeat_closed_form_ratio():
    eg = math.exp(0.57721566490153286)
    assert predict(Primorial(1), 10**3).ratio_estimate == pytest.approx(eg * math.log(10**3))
    assert predict(Factorial(1), 10**3).ratio_estimate == pytest.approx(eg * math.log(10**3))
