import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nva import constructions as C
from nva.algebra import StructureAlgebra, derived_algebra, element_power
from nva.fields import GF, Q, QSqrt, FieldError
from nva.identities import (holds_in, is_alternative, is_flexible, is_quadratic, plus_is_associative,
                            satisfies_kokoris)

half = Fraction(1, 2)


def test_matrix_and_jordan_shapes():
    M1 = C.matrix_algebra(1, Q)
    assert M1.dim == 1 and M1.is_commutative and M1.is_associative
    H = C.jordan_sym(2, Q)
    assert H.dim == 3 and H.is_commutative
    assert holds_in(H, "(x^2,y,x)").holds
    assert C.matrix_algebra(3, Q).is_associative
    assert C.jordan_plus(2, Q).same_table(derived_algebra(C.matrix_algebra(2, Q), "plus"))


def test_jordan_variants_refuse_char_two():
    with pytest.raises(FieldError):
        C.jordan_sym(2, GF(2))


def test_m2_fails_commutator_square():
    v = holds_in(C.matrix_algebra(2, Q), "[x,y]^2")
    assert not v.holds
    assert v.witness["x"] == v.witness["x"].algebra.e("e12")
    assert v.witness["y"] == v.witness["y"].algebra.e("e21")


def test_bilinear_form_jordan():
    assert C.bilinear_form_jordan(0, [], Q).dim == 1
    J = C.bilinear_form_jordan(2, [[1, 0], [0, 1]], Q)
    assert J.is_commutative and J.is_unital
    for v in J.basis_elements()[1:]:
        assert v * v == J.unit
    assert holds_in(J, "(x^2,y,x)").holds
    assert not holds_in(J, "(x,y,z)^2").holds


def test_cayley_dickson_tower():
    Cc = C.complex_numbers(Q)
    assert Cc.dim == 2 and Cc.is_commutative and Cc.is_associative
    H = C.quaternions(Q)
    i, j, k = H.e("i"), H.e("j"), H.e("k")
    assert i * j == k
    assert H.is_associative and not H.is_commutative and is_flexible(H) and is_quadratic(H)
    O = C.octonions(Q)
    assert is_alternative(O) and not O.is_associative
    assert O.first_nonassociative_triple() is not None


def test_cayley_dickson_needs_unit():
    with pytest.raises(Exception):
        C.cayley_dickson(C.kokoris_nilpotent_example(Q), -1)


@pytest.mark.parametrize("make", [C.complex_numbers, C.quaternions, C.octonions, C.split_octonions])
def test_cd_algebras_are_quadratic_on_100_random_elements(make):
    A = make(Q)
    rng = random.Random(3)
    for _ in range(100):
        x = A.element([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(A.dim)])
        assert x * x - C.trace(x) * x + C.norm(x) * A.unit == A.zero
    assert is_flexible(A)


def test_split_octonions_contain_m2():
    S = C.split_octonions(Q)
    one = S.unit
    e4, e1, e5 = S.e("e4"), S.e("e1"), S.e("e5")
    units = {"e11": (one + e4) * half, "e22": (one - e4) * half,
             "e12": (e1 - e5) * half, "e21": -(e1 + e5) * half}
    M = C.matrix_algebra(2, Q)
    for a, x in units.items():
        for b, y in units.items():
            expected = M.e(a) * M.e(b)
            image = sum((c * units[M.basis[n]] for n, c in enumerate(expected.coords) if c), S.zero)
            assert x * y == image


def test_quadratic_cross_zero_is_bilinear_form_jordan():
    form = [[1, 0], [0, 3]]
    q = C.QuadraticData(Q, 2, form, {})
    assert C.quadratic_algebra(q).same_table(C.bilinear_form_jordan(2, form, Q))


def test_quadratic_quaternions_match_cayley_dickson():
    A = C.quadratic_algebra(C.quaternion_quadratic_data(Q), ["1", "i", "j", "k"])
    assert A.same_table(C.quaternions(Q))


def test_quadratic_data_violation():
    with pytest.raises(C.ConstructionError):
        C.quadratic_algebra(C.QuadraticData(Q, 2, [[1, 1], [0, 1]], {}))


def test_quadratic_reduced_formula_with_zero_cross():
    # with x = 0 the reduced associator formula is exact
    A = C.quadratic_algebra(C.QuadraticData(Q, 3, [[1, 0, 0], [0, 2, 0], [0, 0, -1]], {}))
    q = C.quadratic_data_from(A)
    for a in range(1, 4):
        for b in range(1, 4):
            u, v = A.basis_element(a), A.basis_element(b)
            uc, vc = list(u.coords[1:]), list(v.coords[1:])
            assert (u * v) * v - u * (v * v) == q.pair(uc, vc) * v - q.pair(vc, vc) * u


def test_kokoris_example():
    A = C.kokoris_example(Q)
    a, b, c = A.e("a"), A.e("b"), A.e("c")
    assert a * b == c and b * a == -c
    assert satisfies_kokoris(A) and is_flexible(A)
    assert derived_algebra(A, "plus").same_table(
        StructureAlgebra.from_products(Q, list(A.basis),
                                       {("1", x): {x: 1} for x in A.basis} | {(x, "1"): {x: 1} for x in "abc"}))


def test_kokoris_zero_bracket_keeps_base():
    base = C.truncated_polynomial_algebra(2, 2, Q)
    assert C.kokoris_from_poisson(C.PoissonData(base, {})).same_table(base)


def test_leibniz_failure_reported():
    base = C.truncated_polynomial_algebra(1, 2, Q)
    # {x, x^2} = 1 is antisymmetric but violates Leibniz
    br = {(1, 2): [(0, 1)], (2, 1): [(0, -1)]}
    with pytest.raises(C.ConstructionError) as exc:
        C.PoissonData(base, br)
    assert exc.value.witness is not None


def test_polynomial_bracket_formula():
    c = {(0, 1): {(0, 0): 1}}
    assert C.polynomial_bracket({(1, 0): 1}, {(0, 1): 1}, c, 2) == {(0, 0): 1}
    assert C.polynomial_bracket({(2, 0): 1}, {(0, 1): 1}, c, 2) == {(1, 0): 2}


def test_constant_c_is_ill_defined_on_truncation():
    # {x2^3, x1} = -3 x2^2 survives the truncation, so the quotient bracket is not defined
    with pytest.raises(C.ConstructionError) as exc:
        C.poisson_polynomial_truncated(2, 2, {(0, 1): {(0, 0): 1}}, Q)
    assert exc.value.witness[0] == "x2^3"


def test_zero_c_gives_zero_bracket():
    p = C.poisson_polynomial_truncated(2, 2, {}, Q)
    assert not p.bracket


@pytest.mark.parametrize("nv,cap,c", [(2, 2, {(0, 1): {(1, 1): 1}}),
                                      (2, 3, {(0, 1): {(2, 0): 1, (0, 2): 3}}),
                                      (3, 2, {(0, 1): {(0, 0, 2): 1}, (1, 2): {(1, 1, 0): 2}})])
def test_truncated_poisson_kokoris(nv, cap, c):
    A = C.kokoris_from_poisson(C.poisson_polynomial_truncated(nv, cap, c, Q))
    assert satisfies_kokoris(A) and is_flexible(A) and plus_is_associative(A)


@given(st.integers(0, 10_000))
def test_polynomial_bracket_antisymmetric(seed):
    rng = random.Random(seed)
    c = {(0, 1): {(1, 0): rng.randint(-3, 3), (0, 2): rng.randint(-3, 3)}}

    def rand_poly():
        return {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-5, 5) for _ in range(3)}

    f, g = rand_poly(), rand_poly()
    fg = C.polynomial_bracket(f, g, c, 2)
    gf = C.polynomial_bracket(g, f, c, 2)
    keys = set(fg) | set(gf)
    assert all(fg.get(k, 0) + gf.get(k, 0) == 0 for k in keys)


def test_scalar_extension():
    H = C.quaternions(Q)
    assert C.scalar_extension(H, Q).same_table(H)
    K = QSqrt(-1)
    HK = C.scalar_extension(H, K)
    eps = K.sqrt_generator()
    n = HK.e("i") + eps * HK.e("j")
    assert element_power(n, 2).is_zero() and not n.is_zero()
    with pytest.raises(Exception):
        C.scalar_extension(H, GF(13))


def test_gf13_witness_native():
    H = C.quaternions(GF(13))
    n = H.e("i") + 5 * H.e("j")
    assert element_power(n, 2).is_zero()


@given(st.integers(0, 10_000))
def test_random_flexible_is_flexible(seed):
    A = C.random_flexible_algebra(GF(101), 3, random.Random(seed))
    assert is_flexible(A)


def test_free_nilpotent_dimensions():
    assert C.free_nilpotent_associative(2, 3, Q).dim == 2 + 4
    # nonassociative words: 2 + 4 + 2*8 (two bracketings of degree 3)
    assert C.free_nilpotent_nonassociative(2, 4, Q).dim == 2 + 4 + 16


def test_direct_sum():
    A = C.direct_sum([C.complex_numbers(Q), C.field_algebra(Q)])
    assert A.dim == 3 and A.is_associative and A.is_commutative
