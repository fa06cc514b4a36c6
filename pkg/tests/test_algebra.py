import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nva import constructions as C
from nva.algebra import (BudgetExceeded, MethodInapplicable, StructureAlgebra, Subspace, circle,
                         commutator, derived_algebra, element_left_power, element_power,
                         generated_ideal, generated_subalgebra, is_ideal, is_nilpotent_element,
                         nil_radical_finite, nilpotency_index, nilpotent_exponent,
                         plus_power_space, power_space, quotient, restrict, subspace_product)
from nva.fields import GF, FieldError, Q
from nva.identities import holds_in, is_flexible, is_jordan_admissible

F = GF(101)
seeds = st.integers(0, 10_000)


def _rand(seed, kind="general", dim=3):
    return C.random_algebra(F, dim, random.Random(seed), density=0.6, kind=kind)


def _rand_elem(A, rng):
    return A.element([rng.randrange(101) for _ in range(A.dim)])


@given(seeds)
def test_product_is_bilinear(seed):
    rng = random.Random(seed)
    A = _rand(seed)
    x, y, z = (_rand_elem(A, rng) for _ in range(3))
    a = F(rng.randrange(101))
    assert (a * x + y) * z == a * (x * z) + y * z
    assert z * (a * x + y) == a * (z * x) + z * y


@given(seeds)
def test_mutation_half_is_plus(seed):
    A = _rand(seed)
    assert derived_algebra(A, "mutation", Fraction(1, 2)).same_table(derived_algebra(A, "plus"))


@given(seeds)
def test_plus_is_commutative_minus_anticommutative(seed):
    A = _rand(seed)
    assert derived_algebra(A, "plus").is_commutative
    assert derived_algebra(A, "minus").is_anticommutative


@given(seeds, st.integers(0, 100).filter(lambda n: 2 * n % 101 != 1))
def test_mutation_duality(seed, lam):
    A = _rand(seed)
    lam = F(lam)
    mu = lam / (2 * lam - 1)
    B = derived_algebra(derived_algebra(A, "mutation", lam), "mutation", mu)
    assert B.same_table(A)


def test_mutation_duality_ten_lambdas():
    rng = random.Random(7)
    A = C.random_algebra(Q, 3, rng, density=0.7)
    done = 0
    while done < 10:
        lam = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        if 2 * lam == 1:
            continue
        mu = lam / (2 * lam - 1)
        assert derived_algebra(derived_algebra(A, "mutation", lam), "mutation", mu).same_table(A)
        done += 1


def test_unital_hull_has_unit():
    A = C.kokoris_nilpotent_example(Q)
    H = derived_algebra(A, "unital_hull")
    assert H.dim == A.dim + 1 and H.is_unital
    assert H.unit == H.basis_element(0)


def test_power_spaces_of_free_nilpotent():
    A = C.free_nilpotent_associative(2, 4, Q)
    # words of length 1..3 in two letters
    assert [power_space(A, k).dim for k in range(1, 5)] == [14, 12, 8, 0]
    assert nilpotency_index(A, 10) == 4


@given(seeds)
def test_power_spaces_decrease(seed):
    A = _rand(seed, dim=3)
    dims = [power_space(A, k).dim for k in range(1, 5)]
    assert dims == sorted(dims, reverse=True)
    # A^n is spanned by products, so it contains the plus-powers in a
    # commutative algebra
    P = derived_algebra(A, "plus")
    assert plus_power_space(A, 2) == Subspace.span(A, [A.element(b.coords) for b in power_space(P, 2).basis()])


EXAMPLES = [C.matrix_algebra(2, Q), C.jordan_sym(2, Q), C.quaternions(Q), C.octonions(Q),
            C.kokoris_example(Q), C.kokoris_nilpotent_example(Q), C.split_octonions(Q),
            C.truncated_polynomial_algebra(1, 2, Q), C.free_nilpotent_nonassociative(2, 3, Q)]


def _check_i2(A):
    I = plus_power_space(A, 2)
    assert is_ideal(I)
    if I.dim < A.dim:
        assert quotient(A, I).is_anticommutative


@pytest.mark.parametrize("A", EXAMPLES, ids=lambda A: A.meta["name"])
def test_i2_is_ideal_with_anticommutative_quotient(A):
    _check_i2(A)


@given(seeds)
def test_i2_on_random_flexible(seed):
    _check_i2(C.random_flexible_algebra(F, 3, random.Random(seed)))


def test_i2_proper_on_free_nilpotent():
    A = C.free_nilpotent_nonassociative(2, 3, Q)
    Qt = quotient(A, plus_power_space(A, 2))
    # x, y and the class of xy = -yx survive
    assert Qt.dim == 3 and not Qt.is_commutative


@pytest.mark.parametrize("A", [C.matrix_algebra(2, Q), C.quaternions(Q), C.kokoris_example(Q)],
                         ids=lambda A: A.meta["name"])
def test_unital_plus_powers_are_everything(A):
    for n in range(1, 5):
        assert plus_power_space(A, n) == Subspace.whole(A)
        assert power_space(A, n) == Subspace.whole(A)


def test_truncated_t_cubed():
    T = C.truncated_polynomial_algebra(1, 2, Q)
    t, t2 = T.e("x1"), T.e("x1^2")
    assert subspace_product(Subspace.span(T, [t]), Subspace.span(T, [t])) == Subspace.span(T, [t2])
    S = generated_subalgebra(T, [t])
    assert S == Subspace.span(T, [t, t2])
    N = restrict(T, S)
    assert power_space(N, 2).dim == 1 and power_space(N, 3).dim == 0
    assert nilpotency_index(N, 10) == 3
    assert nil_radical_finite(C.truncated_polynomial_algebra(1, 2, GF(5))).subspace.dim == 2


def test_matrix_examples():
    M = C.matrix_algebra(2, Q)
    e11, e12, e21, e22 = (M.e(n) for n in ("e11", "e12", "e21", "e22"))
    assert e12 * e21 == e11
    assert commutator(e12, e21) == e11 - e22
    assert M.unit * e12 == e12
    assert generated_subalgebra(M, [M.unit]).dim == 1
    assert generated_ideal(M, [e12]).dim == 4
    assert nilpotency_index(M, 20) is None
    assert is_nilpotent_element(e12) and not is_nilpotent_element(M.unit)
    assert not is_nilpotent_element(e12 + e21)
    assert subspace_product(Subspace.zero(M), Subspace.whole(M)).is_zero()
    assert derived_algebra(M, "mutation", 1).same_table(M)
    assert nil_radical_finite(C.matrix_algebra(2, GF(3))).subspace.dim == 0


def test_commutative_examples():
    A = C.truncated_polynomial_algebra(2, 2, Q)
    m = derived_algebra(A, "minus")
    assert all(not (x * y) for x in m.basis_elements() for y in m.basis_elements())
    u, w = A.e("x1"), A.e("x2")
    assert circle(u, w) == 2 * (u * w)
    assert commutator(u, u).is_zero()


def test_zero_algebra_index_two():
    Z = StructureAlgebra(Q, 3, {})
    assert nilpotency_index(Z, 5) == 2


def test_plus_of_m2_is_jordan():
    assert holds_in(derived_algebra(C.matrix_algebra(2, Q), "plus"), "(x^2,y,x)").holds


def test_plus_minus_refuse_char_two():
    with pytest.raises(FieldError):
        derived_algebra(C.matrix_algebra(2, GF(2)), "plus")


@given(seeds)
def test_right_and_left_powers_agree_in_flexible_jordan_admissible(seed):
    rng = random.Random(seed)
    A = C.random_flexible_algebra(F, 3, rng, C.random_commutative_associative(F, 3, rng))
    assert is_flexible(A) and is_jordan_admissible(A)
    for _ in range(5):
        x = _rand_elem(A, rng)
        for n in range(1, 6):
            assert element_power(x, n) == element_left_power(x, n)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), max_size=5),
       st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), max_size=5))
def test_subspace_canonical(rows_a, rows_b):
    A = C.matrix_algebra(2, Q)
    S = Subspace.span(A, [A.element(r) for r in rows_a])
    assert Subspace.span(A, S.basis()) == S
    T = Subspace.span(A, [A.element(r) for r in rows_a + rows_b])
    assert S.issubset(T)
    if T.issubset(S):
        assert T.dense_rows() == S.dense_rows()


def test_generated_subalgebra_and_quotient():
    A = C.matrix_algebra(2, Q)
    S = generated_subalgebra(A, [A.e("e11")])
    assert S.dim == 1
    assert generated_ideal(A, [A.e("e11")]).dim == 4


def test_element_power_and_exponent():
    A = C.kokoris_nilpotent_example(Q)
    a = A.e("a")
    assert element_power(a, 2) == A.e("d")
    assert nilpotent_exponent(a) == 3
    with pytest.raises(ValueError):
        element_power(a, 0)


def test_structure_algebra_rejects_bad_index():
    with pytest.raises(Exception):
        StructureAlgebra(Q, 2, {(0, 5): [(0, 1)]})


def test_nil_radical_kokoris_example_gfp():
    A = C.kokoris_example(GF(5))
    r = nil_radical_finite(A, "enumerate-gfp")
    assert r.verified
    assert r.subspace == Subspace.span(A, [A.e("a"), A.e("b"), A.e("c")])


def test_nil_radical_nilpotent_example_is_everything():
    A = C.kokoris_nilpotent_example(GF(3))
    assert nil_radical_finite(A, "enumerate-gfp").subspace.dim == 4


def test_nil_radical_trace_form_char0():
    A = C.kokoris_example(Q)
    r = nil_radical_finite(A, "trace-form-char0")
    assert r.verified and r.subspace.dim == 3
    M = C.matrix_algebra(2, Q)
    assert nil_radical_finite(M, "trace-form-char0").subspace.dim == 0


def test_nil_radical_method_errors():
    with pytest.raises(MethodInapplicable):
        nil_radical_finite(C.quaternions(Q), "enumerate-gfp")
    with pytest.raises(MethodInapplicable):
        nil_radical_finite(C.quaternions(GF(7)), "trace-form-char0")
    with pytest.raises(BudgetExceeded):
        nil_radical_finite(C.octonions(GF(101)), "enumerate-gfp", budget=1000)


def test_power_associative_smoke():
    for A in (C.octonions(Q), C.jordan_sym(2, Q), C.kokoris_example(Q)):
        assert holds_in(A, "(x*x)*(x*x) - ((x*x)*x)*x").holds
    assert not holds_in(C.free_nilpotent_nonassociative(1, 5, Q), "(x*x)*(x*x) - ((x*x)*x)*x").holds
