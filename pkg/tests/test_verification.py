import pytest

from nva import constructions as C
from nva import verification as ver
from nva.algebra import BudgetExceeded, MethodInapplicable, StructureAlgebra, element_power
from nva.fields import GF, Q


def test_nilpotent_set_truncated_polynomials():
    r = ver.nilpotent_set_analysis(C.truncated_polynomial_algebra(1, 2, GF(5)))
    assert r.closed_under_sum and r.is_subspace and r.is_ideal
    assert r.nilpotent_count == 25 and r.mode == "enumerated"


def test_nilpotent_set_m2():
    M = C.matrix_algebra(2, GF(5))
    r = ver.nilpotent_set_analysis(M)
    assert not r.closed_under_sum and not r.is_ideal
    a, b = r.witnesses["sum"]
    assert element_power(a, 2).is_zero() and element_power(b, 2).is_zero()
    assert not element_power(a + b, 3).is_zero()
    shaped = r.witnesses["proof_shape"]
    assert shaped["epsilon"] in ("2", "3")


def test_nilpotent_set_quaternions_gf13_proof_shape():
    H = C.quaternions(GF(13))
    r = ver.nilpotent_set_analysis(H)
    assert not r.closed_under_sum
    shaped = r.witnesses["proof_shape"]
    assert shaped["epsilon"] in ("5", "8")
    n, m = shaped["pair"]
    assert element_power(n, 2).is_zero() and element_power(m, 2).is_zero()
    assert n + m == 2 * H.e(shaped["u"])


@pytest.mark.parametrize("form", [[[1, 0], [0, 1]], [[1, 0], [0, 2]], [[2, 0, 0], [0, 1, 0], [0, 0, 3]]])
def test_quadratic_algebras_give_proof_shape_when_sqrt_minus_one_exists(form):
    F = GF(13)
    n = len(form)
    A = C.quadratic_algebra(C.QuadraticData(F, n, form, {}))
    shaped = ver.proof_shape_witness(A)
    if all(F.square_roots(F(form[i][i]) / F(form[0][0])) for i in range(n)):
        assert shaped is not None
    if shaped is not None:
        assert not ver.nilpotent_set_analysis(A).closed_under_sum


def test_nilpotent_set_budget_and_sampling():
    O = C.octonions(GF(13))
    with pytest.raises(BudgetExceeded):
        ver.nilpotent_set_analysis(O, budget=1000)
    r = ver.nilpotent_set_analysis(O, budget=1000, sampling=True, samples=300, seed=1)
    assert r.mode == "sampled"
    with pytest.raises(MethodInapplicable):
        ver.nilpotent_set_analysis(C.quaternions(Q))


def test_operator_chain():
    for A in (C.matrix_algebra(2, Q), C.kokoris_example(Q), C.free_nilpotent_nonassociative(2, 4, Q)):
        assert ver.operator_chain_span_check(A, 2).included
    N = C.kokoris_nilpotent_example(Q)
    r = ver.operator_chain_span_check(N, 3)
    assert r.included and r.left_dim == 0
    assert ver.operator_chain_span_check(C.free_nilpotent_associative(2, 9, GF(101)), 3).included


def test_chain_span_n2_is_square():
    from nva.algebra import power_space

    A = C.free_nilpotent_nonassociative(2, 4, Q)
    assert ver.chain_span(A, 2) == power_space(A, 2)


def test_power_inclusion():
    T = C.truncated_polynomial_algebra(2, 3, Q)
    assert ver.power_inclusion_check(T, 3, 3).included
    M = C.matrix_algebra(2, Q)
    assert ver.power_inclusion_check(M, 1, 4).included
    N = C.kokoris_nilpotent_example(Q)
    # golden values for the 4-dim nilpotent Kokoris algebra
    assert ver.minimal_k(N, 2) == 3
    assert ver.minimal_k(N, 3) == 3
    r = ver.power_inclusion_check(N, 2, 2)
    assert not r.included and r.witness is not None


def test_tower_bound():
    assert ver.tower_bound(1, 3, 2) == 1
    assert ver.tower_bound(2, 3, 2) == 3
    assert ver.tower_bound(3, 3, 2) == 32
    assert isinstance(ver.tower_bound(5, 3, 2), str)


def test_finite_nil():
    N = C.kokoris_nilpotent_example(GF(5))
    r = ver.finite_nil_implies_nilpotent_check(N)
    assert r.nil and r.nilpotency_index == 3 and not r.alarm
    m = ver.finite_nil_implies_nilpotent_check(C.matrix_algebra(2, GF(3)))
    assert not m.nil and m.non_nilpotent_element is not None
    z = ver.finite_nil_implies_nilpotent_check(StructureAlgebra(GF(3), 2, {}))
    assert z.nil and z.nilpotency_index == 2


def test_finite_nil_generators_mode():
    A = C.free_nilpotent_associative(1, 5, Q)
    r = ver.finite_nil_implies_nilpotent_check(A, mode="generators")
    assert r.nil and r.nilpotency_index == 5


def test_quadratic_calculus_expansion_holds():
    for A in (C.quaternions(Q), C.octonions(Q)):
        r = ver.quadratic_calculus_check(A)
        assert r.expansion_holds


def test_quadratic_calculus_reduced_formula_needs_cross_identity():
    # on quaternions the cross product is the usual one and (u x v) x u != 0
    r = ver.quadratic_calculus_check(C.quaternions(Q))
    assert not r.cross_identity_holds and not r.reduced_formula_holds
    assert r.cross_witness[:2] == ("i", "j")
    flat = C.quadratic_algebra(C.QuadraticData(Q, 2, [[1, 0], [0, -1]], {}))
    f = ver.quadratic_calculus_check(flat)
    assert f.cross_identity_holds and f.reduced_formula_holds
