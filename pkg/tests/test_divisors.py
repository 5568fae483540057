from itertools import combinations_with_replacement

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fatlines.divisors import (
    DivisorClass,
    anticanonical,
    apply_map,
    canonical,
    cubo_cubic,
    drop_auxiliary,
    gamma_cubo,
    gamma_todd,
    is_obviously_noneffective,
    lines,
    model_by_name,
    parse_class,
    proper_transform_symmetric,
    self_cube,
    todd,
    triple_product,
)

CUBO = cubo_cubic()
TODD = todd()


def classes(model, bound=30):
    return st.lists(st.integers(-bound, bound), min_size=model.rank, max_size=model.rank).map(
        lambda c: DivisorClass(model, tuple(c))
    )


def test_cubo_basis_products():
    H, E1, E2, T1, T2 = CUBO.H(), CUBO.E(1), CUBO.E(2), CUBO.T(1), CUBO.T(2)
    assert triple_product(H, H, H) == 1
    assert triple_product(H, E1, E1) == triple_product(H, T1, T1) == -1
    assert triple_product(E1, T2, T2) == -1
    assert triple_product(E1, E1, E1) == -2
    assert triple_product(T1, T1, T1) == 2
    assert triple_product(E1, E1, E2) == triple_product(H, H, E1) == triple_product(E1, E1, T1) == 0
    assert triple_product(T1, T1, T2) == 0


def test_product_symmetric():
    basis = CUBO.basis()
    for a, b, c in combinations_with_replacement(basis, 3):
        v = triple_product(a, b, c)
        assert v == triple_product(b, c, a) == triple_product(c, b, a)


def test_cubo_image_cubes():
    E, T, H = CUBO.E_sum(), CUBO.T_sum(), CUBO.H()
    assert self_cube(3 * H - E - T) == 1
    assert self_cube(2 * H - E + CUBO.E(1) - T) == -2


def test_anticanonical_cube():
    # each blown-up line lowers (-K)^3 = 64 by 10
    assert self_cube(anticanonical(lines(6))) == 4
    assert self_cube(anticanonical(lines(1))) == 54
    assert canonical() == -anticanonical()


def test_kn_squared():
    L = lines(7)
    kn = parse_class("8;2^6,1", L)
    n = parse_class("12;3^6,2", L)
    assert triple_product(kn, kn, n) == 8


@pytest.mark.parametrize("model,gamma", [(CUBO, gamma_cubo), (TODD, gamma_todd)])
def test_involution_on_basis(model, gamma):
    for b in model.basis():
        assert gamma(gamma(b)) == b


@given(classes(CUBO))
def test_cubo_involution(x):
    assert gamma_cubo(gamma_cubo(x)) == x


@given(classes(TODD))
def test_todd_involution(x):
    assert gamma_todd(gamma_todd(x)) == x


@given(classes(CUBO), classes(CUBO))
def test_linear(x, y):
    assert gamma_cubo(x + 3 * y) == gamma_cubo(x) + 3 * gamma_cubo(y)


def test_cubo_preserves_basis_products():
    for a, b, c in combinations_with_replacement(CUBO.basis(), 3):
        assert triple_product(gamma_cubo(a), gamma_cubo(b), gamma_cubo(c)) == triple_product(a, b, c)


@given(classes(CUBO, 8), classes(CUBO, 8), classes(CUBO, 8))
def test_cubo_preserves_products(x, y, z):
    assert triple_product(gamma_cubo(x), gamma_cubo(y), gamma_cubo(z)) == triple_product(x, y, z)


def test_todd_symmetric_family():
    E, H = TODD.E_sum(), TODD.H()
    for a in range(1, 51):
        assert gamma_todd(a * H - E) == (19 * a - 72) * H - (5 * a - 19) * E


@given(st.integers(-40, 40), st.lists(st.integers(-10, 10), min_size=4, max_size=4))
def test_cubo_closed_form(d, mults):
    assert proper_transform_symmetric("cubo", d, mults) == gamma_cubo(DivisorClass.from_system(CUBO, d, mults))


@given(st.integers(-40, 40), st.lists(st.integers(-10, 10), min_size=6, max_size=6))
def test_todd_closed_form(d, mults):
    assert proper_transform_symmetric("todd", d, mults) == gamma_todd(DivisorClass.from_system(TODD, d, mults))


def test_six_h_minus_e():
    image = apply_map("cubo", parse_class("6;1,1,1,1", CUBO))
    assert image.to_system_string() == "10;3,3,3,3;2,2"
    assert str(image) == "10H - 3E1 - 3E2 - 3E3 - 3E4 - 2T1 - 2T2"


def test_todd_witness():
    image = apply_map("todd", parse_class("71;19^6", TODD))
    assert image.degree == -19
    assert image.line_mults == (-6,) * 6
    assert is_obviously_noneffective(image)


def test_parse_class():
    assert parse_class("1", CUBO) == CUBO.H()
    assert parse_class("0;1,0,0,0", CUBO) == -CUBO.E(1)
    assert parse_class("0;;0,1", CUBO) == -CUBO.T(2)
    assert parse_class(" 3;1^4;1,1 ", CUBO) == 3 * CUBO.H() - CUBO.E_sum() - CUBO.T_sum()
    x = parse_class("7;1,2,3,4;5,6", CUBO)
    assert parse_class(x.to_system_string(), CUBO) == x


@pytest.mark.parametrize("text", ["1;1,1", "1;1,1,1,1;1", "a", "1;2;3;4", "1;x,1,1,1"])
def test_parse_class_rejects(text):
    with pytest.raises(ValueError):
        parse_class(text, CUBO)


def test_model_mismatch():
    with pytest.raises(ValueError):
        triple_product(CUBO.H(), CUBO.H(), TODD.H())
    with pytest.raises(ValueError):
        gamma_cubo(TODD.H())
    with pytest.raises(ValueError):
        gamma_todd(CUBO.H())
    with pytest.raises(ValueError):
        CUBO.H() + TODD.H()


@pytest.mark.parametrize("name,want", [("cubo", CUBO), ("todd", TODD), ("lines7", lines(7)), ("lines:3", lines(3))])
def test_model_by_name(name, want):
    assert model_by_name(name) == want


def test_model_by_name_unknown():
    with pytest.raises(ValueError):
        model_by_name("quartic")


def test_drop_auxiliary():
    proj = drop_auxiliary(parse_class("10;3^4;2,2", CUBO))
    assert proj.cls.to_system_string() == "10;3,3,3,3;0,0"
    assert proj.dropped == (-2, -2)
    assert "transversal" in proj.warning
    assert drop_auxiliary(parse_class("6;1^4", CUBO)).warning is None


def test_str_zero_and_signs():
    assert str(CUBO.zero()) == "0"
    assert str(-CUBO.H() + CUBO.E(2)) == "-H + E2"
