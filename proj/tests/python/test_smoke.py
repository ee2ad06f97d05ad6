from fractions import Fraction

import pytest

import wreathprod as w


def a5():
    return w.PermGroup(5, ["(0 1 2)", "(0 1 2 3 4)"])


def s3():
    return w.PermGroup(3, ["(0 1)", "(0 1 2)"])


def test_group_basics():
    g = a5()
    assert g.degree == 5
    assert g.order == "60"
    assert g.is_perfect()
    assert g.orbits() == [[0, 1, 2, 3, 4]]
    assert g.contains("(0 1)(2 3)")
    assert not g.contains("(0 1)")


def test_pk_exact():
    assert Fraction(w.pk_exact(a5(), 2)) == Fraction(19, 30)
    assert Fraction(w.pk_exact(s3(), 2)) == Fraction(1, 2)


def test_pk_montecarlo_brackets_truth_and_is_deterministic():
    r1 = w.pk_montecarlo(a5(), 2, 20000, seed=11)
    r2 = w.pk_montecarlo(a5(), 2, 20000, seed=11)
    assert r1 == r2
    assert Fraction(r1["low"]) <= Fraction(19, 30) <= Fraction(r1["high"])


def test_zeta():
    assert Fraction(w.zeta(a5(), 1)) == Fraction(7, 15)
    assert Fraction(w.zeta(s3(), 1)) == Fraction(5, 6)


def test_tower_order():
    assert int(w.tower_order(a5(), 2)) == 60**6
    assert int(w.tower_order(s3(), 2)) == 6**4


def test_decide():
    yes = w.decide(a5())
    assert yes["finitely_generated"]
    no = w.decide(s3())
    assert not no["finitely_generated"]
    assert any("abelian" in r for r in no["reasons"])


def test_input_errors():
    with pytest.raises(ValueError):
        w.PermGroup(3, ["(0 5)"])
    with pytest.raises(ValueError):
        a5().contains("(0 9)")
