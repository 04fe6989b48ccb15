import pytest
from hypothesis import given, settings, strategies as st

from laumon.exactalg import RationalU, field
from laumon.finite_module import (
    FiniteAction,
    GeneratorError,
    apply_finite,
    eigen_a_finite,
    eigen_h_finite,
    h_coefficient,
    h_eigenvalue,
    verify_finite_relations,
)
from laumon.patterns import FinitePattern, enumerate_patterns, patterns_up_to
from laumon.vectors import ModuleVector

F = field(3)
VAC = FinitePattern.vacuum(3)
BOX = FinitePattern(3, ((1,), (0, 0)))


def basis(p):
    return ModuleVector.basis(p, field(p.n))


def op(gen, v):
    return apply_finite(gen, v)


def bracket(a, b, v):
    return op(a, op(b, v)) - op(b, op(a, v))


def test_e_on_vacuum():
    out = op(("e", 1), basis(VAC))
    assert out.terms == {BOX: -1 / F.h}


def test_f_on_single_box():
    out = op(("f", 1), basis(BOX))
    assert out.terms == {VAC: F.x(2) - F.x(1) + F.h}


def test_commutator_on_vacuum_is_h():
    out = bracket(("e", 1), ("f", 1), basis(VAC))
    expected = (F.x(2) - F.x(1)) / F.h + 1
    assert out.terms == {VAC: expected}
    assert h_eigenvalue(VAC, 1) == expected


def test_a_series_examples():
    assert eigen_a_finite(0, VAC) == RationalU.const(F, 1)
    x1, x2 = F.x(1) / F.h, F.x(2) / F.h
    assert eigen_a_finite(2, VAC) == RationalU.from_factors(F, [-x1, -x2])
    assert eigen_a_finite(1, BOX) == RationalU.from_factors(F, [1 - x1])


def test_h_series_on_vacuum():
    x1, x2 = F.x(1) / F.h, F.x(2) / F.h
    assert eigen_h_finite(1, VAC) == RationalU.from_factors(F, [-1 - x2], [-x1])


def test_h_series_leading_term_is_h_eigenvalue():
    for p in patterns_up_to("finite", 3, 3):
        for k in (1, 2):
            assert h_coefficient(p, k, 0) == h_eigenvalue(p, k)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.integers(0, 2), st.data())
def test_h_series_independent_of_m(a, b, data):
    pats = patterns_up_to("finite", 4, a + b)
    p = data.draw(st.sampled_from(pats))
    for k in (1, 2, 3):
        ref = eigen_h_finite(k, p)
        for m in range(k):
            assert eigen_h_finite(k, p, via_m=m) == ref


@pytest.mark.parametrize("p", patterns_up_to("finite", 3, 2))
def test_chevalley_relations_directly(p):
    """[e_i, f_j] = delta_ij h_i and [h_i, e_j] = a_ij e_j, checked with plain vector arithmetic."""
    v = basis(p)
    cartan = {(1, 1): 2, (2, 2): 2, (1, 2): -1, (2, 1): -1}
    for i in (1, 2):
        for j in (1, 2):
            lhs = bracket(("e", i), ("f", j), v)
            rhs = op(("h", i), v) if i == j else ModuleVector()
            assert lhs == rhs
            assert bracket(("h", i), ("e", j), v) == op(("e", j), v).scale(F.const(cartan[(i, j)]))
            assert bracket(("h", i), ("f", j), v) == op(("f", j), v).scale(F.const(-cartan[(i, j)]))


@pytest.mark.parametrize("p", patterns_up_to("finite", 3, 2))
def test_serre_relations_directly(p):
    v = basis(p)
    for a, b in ((1, 2), (2, 1)):
        for g in ("e", "f"):
            x, y = (g, a), (g, b)
            # x^2 y - 2 x y x + y x^2
            t = op(x, op(x, op(y, v))) - op(x, op(y, op(x, v))).scale(F.const(2)) + op(y, op(x, op(x, v)))
            assert t.is_zero()


def test_yangian_bracket_on_vacuum():
    # [x+_{1,1}, x-_{1,1}] = h_{1,2}, with x+ realised by the box-adding operator
    v = basis(VAC)
    lhs = bracket(("xminus", 1, 1), ("xplus", 1, 1), v)
    assert lhs == op(("hcoeff", 1, 2), v)


def test_small_relation_run():
    rep = verify_finite_relations(3, 1, 1)
    assert rep["status"] == "pass" and rep["failed"] == 0 and rep["total"] > 0


def test_literal_labels_break_the_relations():
    rep = verify_finite_relations(3, 1, 1, labels="literal")
    assert rep["status"] == "fail"


def test_generator_range():
    act = FiniteAction(3)
    with pytest.raises(GeneratorError):
        act.act(("e", 3), VAC)
    with pytest.raises(GeneratorError):
        act.act(("bogus", 1), VAC)


def test_e_preserves_degree_shape():
    for p in enumerate_patterns("finite", 3, (1, 1)):
        out = op(("e", 2), basis(p))
        assert all(q.degree() == (1, 2) for q in out.terms)
