import math

import _heightgap as hg


E37 = ["0", "0", "1", "-1", "0"]   # y^2 + y = x^3 - x
EX31 = ["0", "1"]                  # y^2 = x^3 + 1


def test_curve_invariants():
    inv = hg.curve_invariants(E37)
    assert inv["discriminant"] == "37"


def test_counting_and_supersingularity():
    r = hg.count_points(["1", "0"], 7)
    assert r["count"] == 8 and r["a_q"] == 0
    assert hg.is_supersingular(EX31, 5)
    assert not hg.is_supersingular(["1", "0"], 5)


def test_scan():
    rs = hg.supersingular_scan(E37, 5, 100)
    accepted = [r["p"] for r in rs if r["verdict"] == "accepted"]
    assert accepted == [17, 19]


def test_supersingular_index_and_tower():
    idx = hg.supersingular_index(EX31, 5)
    assert idx["index"] == 25
    tw = hg.eisenstein_tower(EX31, 5, 1, 12)
    assert tw["degree"] == 25
    assert tw["polygon_slopes"][0] == ("1/24", 24)


def test_weil_height():
    h = hg.weil_height([-2, 0, 0, 1])
    assert abs(h["value"] - math.log(2) / 3) < 1e-10
    assert not h["root_of_unity"]
    z = hg.weil_height([1, 1, 1])
    assert abs(z["value"]) < 1e-12 and z["root_of_unity"]


def test_canonical_height():
    h = hg.canonical_height(E37, ("0", "0"))
    assert abs(h["doubling"] - h["localsum"]) < 1e-6
    assert abs(h["localsum"] - 0.02555570) < 1e-6


def test_constants():
    c = hg.thm01_constants(1, 1, 5, 0.2)
    assert c["C1"] == 6250.0
    t2 = hg.thm02_constants(1, 1, 5, 1)
    assert t2["amplification"] == "374400000"
    assert hg.Q_of_n(1, 25) == 600
    assert hg.Q_of_n(2, 25) == 25
    assert hg.frey_rhs(1.0, 0.25) == 1024.0


def test_tower_prediction():
    t = hg.tower_prediction(2, 5)
    assert t["degree"] == "600"
    assert t["breaks"] == [(1, 24, 1), (25, 624, 2)]


def test_verify_constants_suite():
    rs = hg.verify("constants")
    assert all(r["pass"] for r in rs)


def test_errors():
    try:
        hg.weil_height([0, 1])
        assert False
    except ValueError:
        pass
