import json
from fractions import Fraction

import pytest

import egyfrac


def test_a3_small_primes():
    assert len(egyfrac.a3(7)) == 13
    assert egyfrac.a3(7) == [1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 14, 15, 21]


def test_witnesses_reconstruct():
    p = 31
    for w in egyfrac.type_sets(p)["witnesses"]:
        a, b, c, u, m = w["a"], w["b"], w["c"], w["u"], w["m"]
        if w["kind"] == "I":
            dens = (a * b * u, a * c * p * u, b * c * p * u)
        else:
            dens = (p * a * b * u, a * c * u, b * c * u)
        assert sum(Fraction(1, d) for d in dens) == Fraction(m, p)


def test_sandwich_is_empty():
    for p in egyfrac.primes_up_to(100):
        if p >= 5:
            assert egyfrac.sandwich_check(p) == ([], [])


def test_solvers():
    assert egyfrac.two_term_solutions(2, 7)[0] == (4, 28)
    assert egyfrac.three_term_witness(4, 1) is None
    x, y, z = egyfrac.three_term_witness(3, 7)
    assert Fraction(1, x) + Fraction(1, y) + Fraction(1, z) == Fraction(3, 7)


def test_analytic():
    assert egyfrac.tau_sum(2, 2, 1) == 9
    assert egyfrac.dyadic_sum(2, 2)["raw"] == 4.0
    t = egyfrac.t_count(50)
    assert t["tuples"] <= t["upper_rhs"]
    assert egyfrac.char_sum(15, 1, 14) == 0


def test_growth_json():
    report = json.loads(egyfrac.growth_json(64))
    assert [c["x"] for c in report["checkpoints"]] == [2, 4, 8, 16, 32, 64]
    assert report["checkpoints"][0]["s"] == 6


def test_errors():
    with pytest.raises(ValueError):
        egyfrac.a3(9)
    with pytest.raises(ValueError):
        egyfrac.factorize(0)
