from fractions import Fraction

import pytest

from fatlines.interpolation import BudgetExceeded
from fatlines.waldschmidt import (
    alpha_symbolic,
    bound_report,
    conjectured_value,
    known_table,
    lower_bound_witness,
    waldschmidt_lower_bound_6lines,
    waldschmidt_upper_bound_6lines,
)


def test_known_table():
    assert known_table() == {
        1: 1, 2: 2, 3: 2, 4: Fraction(8, 3), 5: Fraction(10, 3), 6: Fraction(72, 19),
    }


def test_known_table_is_a_copy():
    t = known_table()
    t[1] = 99
    assert known_table()[1] == 1


@pytest.mark.parametrize(
    "s,m,alpha",
    [
        (1, 1, 1), (1, 3, 3),
        (2, 2, 4),  # skew lines: (x,y) and (z,w) give generators of degree 2
        (3, 1, 2), (3, 2, 4),  # powers of the quadric
        (4, 1, 3), (4, 3, 8),
        (6, 1, 4),
    ],
)
def test_alpha(s, m, alpha):
    assert alpha_symbolic(s, m, seeds=(1, 2)) == alpha


def test_alpha_rejects():
    with pytest.raises(ValueError):
        alpha_symbolic(0, 1)
    with pytest.raises(ValueError):
        alpha_symbolic(3, 1, seeds=())
    with pytest.raises(BudgetExceeded):
        alpha_symbolic(6, 4, budget_cols=200)


def test_conjectured_values():
    assert conjectured_value(7) == Fraction(21, 5)
    for s in (8, 9, 20, 100):
        t = conjectured_value(s)
        assert abs(t**3 - 3 * s * t + 2 * s) <= 1e-9
        assert s**0.5 <= t <= (3 * s) ** 0.5
    assert conjectured_value(8) == pytest.approx(4.5236044905, abs=1e-9)
    with pytest.raises(ValueError):
        conjectured_value(6)


def test_lower_bound():
    assert waldschmidt_lower_bound_6lines(100) == Fraction(72, 19)
    for m in (1, 2, 50, 100):
        w = lower_bound_witness(m)
        assert w.degree == -19
        assert w.line_mults == (-(m + 5),) * 6
    with pytest.raises(ValueError):
        waldschmidt_lower_bound_6lines(0)


def test_upper_bound():
    cert = waldschmidt_upper_bound_6lines(seeds=(1, 2))
    assert cert.verified and cert.status == "verified"
    assert cert.report.consensus_actual == 1
    assert cert.value == Fraction(72, 19)
    assert (cert.total_degree, cert.order_per_line) == (72, 19)


def test_bound_report_six():
    rep = bound_report(6, 2, seeds=(1, 2), certify_m_max=20)
    assert rep.exact == rep.upper_bound == rep.lower_bound == Fraction(72, 19)
    assert [(m, a) for m, a, _ in rep.samples] == [(1, 4), (2, 8)]
    assert rep.upper_bound_source and rep.lower_bound_source
    d = rep.to_dict()
    assert d["exact"] == "72/19"


def test_bound_report_eight_skips_over_budget():
    rep = bound_report(8, 3, seeds=(1,), budget_cols=100)
    assert rep.exact is None
    assert rep.conjectured == pytest.approx(4.5236044905)
    assert any("skipped" in n for n in rep.notes)
    assert any("residual" in n for n in rep.notes)
    assert "conjectured value, not certified" in rep.caveats


@pytest.mark.parametrize("s,seed", [(4, 1), (5, 2), (6, 3)])
def test_subadditivity_same_configuration(s, seed):
    alpha = {m: alpha_symbolic(s, m, seeds=(seed,)) for m in range(1, 5)}
    for m in range(1, 4):
        for n in range(1, 5 - m):
            assert alpha[m + n] <= alpha[m] + alpha[n]
    # and the ratios never drop below the known constant
    assert all(Fraction(a, m) >= known_table()[s] for m, a in alpha.items())
