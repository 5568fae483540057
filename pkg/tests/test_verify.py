import json

import pytest

from fatlines.verify import (
    CHECKS,
    check_cor54,
    check_cremona_lattice,
    check_examples_section3,
    check_hh_nonspeciality,
    check_prop51_generic,
    check_remark42_family,
    resolve,
    run_checks,
)


def test_resolve_patterns():
    assert resolve(["theorem3-*"]) == [f"theorem3-{v}" for v in "ABCD"]
    assert resolve(["cor54", "cor5*"]) == ["cor54"]
    assert resolve(None) == list(CHECKS)
    with pytest.raises(KeyError):
        resolve(["no-such-check"])


def test_k_squared_and_chi():
    r = check_cor54()
    assert r.passed
    assert r.computed["K2"] == 8
    assert r.computed["chi_16H-4E+2E7"] == 20
    assert r.computed["chi_4H-E"] == 5


def test_cremona_lattice():
    assert check_cremona_lattice().passed


def test_worked_examples():
    results = check_examples_section3(seeds=(1, 2))
    assert all(r.passed for r in results), [r.name for r in results if not r.passed]
    assert len(results) == 7


def test_generic_degree_nine():
    r = check_prop51_generic(seeds=(1, 2))
    assert r.passed
    assert r.computed["virtual"] == 0 and r.computed["actual"] == 0
    assert (r.computed["rows"], r.computed["cols"]) == (220, 220)


def test_hh_small():
    r = check_hh_nonspeciality(d_max=5, s_max=8, seeds=(1, 2))
    assert r.passed and r.computed["systems_checked"] == 40


def test_cremona_family_small_range():
    results = check_remark42_family(cubo_range=range(3, 7), todd_range=range(3, 5), seeds=(1,))
    assert all(r.passed for r in results)
    by_name = {r.name: r for r in results}
    assert not by_name["remark42-cubo-a5"].computed["special"]
    assert by_name["remark42-cubo-a6"].computed["special"]
    assert by_name["remark42-cubo-a6"].computed["image_system"] == "L_10(3^4)"


def test_run_checks_json_serializable():
    results = run_checks(["cor54", "cremona", "waldschmidt"], seeds=(1,))
    assert [r.name for r in results] == ["cor54", "cremona", "waldschmidt"]
    for r in results:
        d = r.to_dict()
        assert json.loads(json.dumps(d)) == d
        assert d["passed"] is True
        assert d["runtime"] >= 0
