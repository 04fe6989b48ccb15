import random

import pytest

from laumon.affine_module import (
    AffineAction,
    GeneratorError,
    a0n_dimensionful,
    a0n_from_ami,
    apply_affine,
    eigen_a_mi,
    eigen_h,
    eigen_h_via_m,
    h_coefficient,
    h_diag_eigenvalue,
    phi_coefficients,
    verify_a01,
    verify_affine_relations,
    verify_irreducibility_data,
)
from laumon.exactalg import RationalU, field
from laumon.patterns import AffinePattern, enumerate_patterns, patterns_up_to, weight_p
from laumon.vectors import ModuleVector

F = field(3)
VAC = AffinePattern.vacuum(3)


def box(col):
    lams = [[], [], []]
    lams[col - 1] = [1]
    return AffinePattern.of(3, lams)


def op(gen, v):
    return apply_affine(gen, v)


def basis(p):
    return ModuleVector.basis(p, F)


def bracket(a, b, v):
    return op(a, op(b, v)) - op(b, op(a, v))


@pytest.mark.parametrize("i", [1, 2, 3])
def test_e_on_vacuum(i):
    assert op(("e", i), basis(VAC)).terms == {box(i): -1 / F.h}


def test_h_diag_on_vacuum():
    assert h_diag_eigenvalue(VAC, 3) == (F.x(1) - F.x(3)) / F.h + F.hp / F.h + 1


def test_xminus_twist_on_vacuum():
    out = op(("xminus", 1, 1), basis(VAC))
    assert out.terms == {box(1): (-1 / F.h) * weight_p(VAC, 1, 1)}


def test_a01_on_vacuum():
    phat = -F.x(1) / F.h - F.hp / F.h
    assert eigen_a_mi(0, 1, VAC) == RationalU.from_factors(F, [phat])


def test_phi_examples():
    xs = [F.x(j) for j in (1, 2, 3)]
    phi = phi_coefficients(VAC, 3)
    assert phi[1] == -sum(xs, F.zero) - 3 * F.hp
    assert phi[2] == sum(((x + F.hp) ** 2 for x in xs), F.zero)
    for p in patterns_up_to("affine", 3, 3):
        assert phi_coefficients(p, 1)[1] == -sum(xs, F.zero) - 3 * F.hp


CARTAN = {(i, j): (2 if i == j else -1) for i in (1, 2, 3) for j in (1, 2, 3)}


@pytest.mark.parametrize("p", patterns_up_to("affine", 3, 2))
def test_kac_moody_relations_directly(p):
    """[e_i, f_j] = delta_ij h_i, [h_i, e_j] = a_ij e_j and Serre, by plain vector arithmetic."""
    v = basis(p)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            rhs = op(("hdiag", i), v) if i == j else ModuleVector()
            assert bracket(("e", i), ("f", j), v) == rhs
            assert bracket(("hdiag", i), ("e", j), v) == op(("e", j), v).scale(F.const(CARTAN[(i, j)]))
            assert bracket(("hdiag", i), ("f", j), v) == op(("f", j), v).scale(F.const(-CARTAN[(i, j)]))
            if i != j:
                x, y = ("e", i), ("e", j)
                t = op(x, op(x, op(y, v))) - op(x, op(y, op(x, v))).scale(F.const(2)) + op(y, op(x, op(x, v)))
                assert t.is_zero()


@pytest.mark.parametrize("p", patterns_up_to("affine", 3, 2))
def test_h_series_leading_term(p):
    for i in (1, 2, 3):
        assert h_coefficient(p, i, 0) == h_diag_eigenvalue(p, i)


def test_h_series_independent_of_m_on_random_patterns():
    rng = random.Random(7)
    pats = patterns_up_to("affine", 3, 4)
    for p in rng.sample(pats, 20):
        for i in (1, 2, 3):
            h = eigen_h(i, p)
            for m in (i - 1, i - 2, i - 3, i - 5):
                assert eigen_h_via_m(i, m, p) == h


@pytest.mark.parametrize("p", patterns_up_to("affine", 3, 3))
def test_a0n_two_ways(p):
    assert a0n_dimensionful(p) == a0n_from_ami(p)


def test_small_relation_run():
    rep = verify_affine_relations(3, 1, 1)
    assert rep["status"] == "pass" and rep["total"] > 0
    assert any(e["relation"].endswith("_at_sl_hat_point") for e in rep["entries"])


def test_series_identities_small():
    rep = verify_a01(3, 2, R=1)
    assert rep["status"] == "pass"
    names = {e["relation"] for e in rep["entries"]}
    assert {"translation", "h_via_a_mi", "a_i_plus_n", "a_i_from_h", "a01_period", "critical_level_product"} <= names


def test_irreducibility_small():
    rep = verify_irreducibility_data(3, 2)
    assert rep["status"] == "pass"
    a, b = enumerate_patterns("affine", 3, (1, 1, 0))
    ka = [eigen_h(i, a) for i in (1, 2, 3)]
    kb = [eigen_h(i, b) for i in (1, 2, 3)]
    assert ka != kb


def test_n2_needs_flag():
    with pytest.raises(GeneratorError):
        AffineAction(2)
    AffineAction(2, allow_n2=True)
