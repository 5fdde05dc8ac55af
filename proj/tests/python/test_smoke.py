import math
from fractions import Fraction

import pytest

import stunted


def test_describe_and_evaluate():
    d = stunted.describe("+-", "3/5")
    assert d["shape"] == "+-"
    assert d["w"] == ["3/5"]
    assert stunted.evaluate("+-", "3/5", "1/4") == Fraction(1, 2)
    assert stunted.evaluate("+-", Fraction(3, 5), Fraction(1, 2)) == Fraction(3, 5)


def test_full_tent_entropy():
    e = stunted.entropy("+-", "1")
    assert abs(e["lower"] - math.log(2)) < 1e-9
    assert abs(e["upper"] - math.log(2)) < 1e-9


def test_period_set_and_classify():
    assert stunted.period_set("+-", "4/5", 16)["periods"] == [1, 2]
    rec = stunted.classify("+-", "103/125")
    assert rec["label"] == "Finite(8)"
    assert rec["tower_depth"] == 3
    assert stunted.classify("+-", "1")["verdict"] == "Chaotic"


def test_tower_and_kneading():
    t = stunted.tower("+-", "103/125", 5)
    assert t["depth"] == 3
    assert [lv["u"] for lv in t["levels"]] == [2, 4, 8]
    k = stunted.kneading("+-", "4/5", 4)
    assert k["depth"] == 4


def test_bisect():
    r = stunted.bisect("+-", "3/5", "1", "1/1000")
    assert r["left"]["verdict"] == "Finite"
    assert r["right"]["verdict"] == "Chaotic"
    assert Fraction(r["w_width"]) <= Fraction(1, 1000)


def test_errors():
    with pytest.raises(ValueError):
        stunted.describe("+-", "2")
    with pytest.raises(ValueError):
        stunted.bisect("+-", "3/5", "3/5", "1/100")
