import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

import iwalab

DATA = Path(os.environ.get("IWALAB_DATA", Path(__file__).resolve().parents[2] / "data"))


def to_fraction(r):
    return Fraction(int(r["num"]), int(r["den"]))


def test_bernoulli_matches_the_recurrence():
    b = [Fraction(1)]
    for m in range(1, 21):
        s, binom = Fraction(0), 1
        for j in range(m):
            s += binom * b[j]
            binom = binom * (m + 1 - j) // (j + 1)
        b.append(-s / (m + 1))
    assert [iwalab.bernoulli(n) for n in range(21)] == b
    assert iwalab.bernoulli(12) == Fraction(-691, 2730)


def test_classical_values():
    assert to_fraction(iwalab.l_star(-1, "quad:5")["rational"]) == Fraction(-2, 5)
    assert to_fraction(iwalab.l_star(-1, "triv", [5])["rational"]) == Fraction(1, 3)


def test_padic_value_agrees_with_the_classical_rational():
    v = iwalab.lp_value("teich:5^2", 5, -1, prec=20)
    assert v["prec"] == 20
    residue = int(v["digits"].split(" + ")[0])
    assert (3 * residue) % 5**20 == 1
    code, out, _ = iwalab.cli("plvalue", "--p", "5", "--char", "teich:5^2", "--s", "-1")
    assert code == 0
    assert json.loads(out)["rational"] == "1/3"


def test_errors_carry_their_kind():
    with pytest.raises(iwalab.IwalabError) as info:
        iwalab.lp_value("quad:3", 5, -1)
    assert info.value.args[0] == "OddCharacter"
    code, out, _ = iwalab.cli("plvalue", "--p", "5", "--char", "quad:3", "--s", "-1")
    assert code == 2
    assert json.loads(out)["error"] == "OddCharacter"


def test_weierstrass_of_a_distinguished_polynomial():
    w = iwalab.weierstrass(5, [5, 5, 1] + [0] * 13)
    assert (w["mu"], w["lambda"]) == (0, 2)
    w = iwalab.weierstrass(5, [5, 5] + [0] * 14)
    assert (w["mu"], w["lambda"]) == (1, 0)


def test_published_data_report():
    r = iwalab.section6(DATA / "sec6_2.json")
    assert r["passed"]
    sizes = {row["e_value"]["num"]: row["h1_order_log_p"] for row in r["rows"] if row["e_value"]["den"] == "1"}
    assert sizes["1"] == 1 and sizes["2"] == 1 and sizes["5"] == 2


def test_verify_is_seeded():
    a = iwalab.verify("lambda-oracle", count=10, seed=3)
    b = iwalab.verify("lambda-oracle", count=10, seed=3)
    assert a == b and a["passed"] and a["seed"] == 3
    assert "section6" in iwalab.suite_names()
