import itertools

import pytest

from laumon.affine_module import e_coefficient, f_coefficient
from laumon.exactalg import CharPoly, char_to_weights, field
from laumon.localization import (
    FixedEdge,
    char_chi_rank1,
    char_corr_tangent,
    char_E,
    char_tangent,
    edges_from,
    euler_tangent,
    kunneth_curve,
    kunneth_solve,
    localized_coeff,
    verify_K_identity,
    verify_kunneth,
    verify_localization,
)
from laumon.patterns import AffinePattern, enumerate_patterns, patterns_up_to

F = field(3)
VAC = AffinePattern.vacuum(3)


def test_rank_one_examples():
    assert char_chi_rank1((), (), 0, 0).is_zero()
    assert char_chi_rank1((), (), 1, 1) == CharPoly.q(1) * CharPoly.qp(1)
    assert char_chi_rank1((), (1,), 0, 0) == -CharPoly.one(1)


def test_tangent_of_vacuum_is_empty():
    assert char_tangent(VAC).is_zero()
    assert euler_tangent(VAC) == F.one


@pytest.mark.parametrize("p", patterns_up_to("affine", 3, 3))
def test_tangent_is_honest_and_isolated(p):
    t = char_tangent(p)
    ws = char_to_weights(t, F)
    assert len(ws) == 2 * p.total()
    assert all(not w.is_zero() for w in ws)


def test_rank_of_E_on_pairs():
    for total in (1, 2):
        for deg in {p.degree() for p in patterns_up_to("affine", 3, total) if p.total() == total}:
            pats = enumerate_patterns("affine", 3, deg)
            for p, pp in itertools.product(pats, repeat=2):
                assert char_E(p, pp).at_one() == 2 * sum(deg)


def test_single_box_correspondence():
    edge = FixedEdge.make(VAC, 1, 1)
    assert char_corr_tangent(edge) == CharPoly.q(3)
    assert localized_coeff(edge, "e") == -1 / F.h
    assert localized_coeff(edge, "f") == f_coefficient(edge.target, 1, 1)[1]


def test_single_box_euler_class_has_two_weights():
    p = AffinePattern.of(3, [[1], [], []])
    ws = char_to_weights(char_tangent(p), F)
    assert len(ws) == 2
    assert euler_tangent(p) == ws[0] * ws[1]


def test_k_identity_examples():
    assert verify_K_identity(VAC, VAC)["status"] == "pass"
    for deg in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        pats = enumerate_patterns("affine", 3, deg)
        for p, pp in itertools.product(pats, repeat=2):
            assert verify_K_identity(p, pp)["status"] == "pass"
    a, b = enumerate_patterns("affine", 3, (1, 1, 0))
    assert verify_K_identity(a, b)["status"] == "pass"


@pytest.mark.parametrize("p", patterns_up_to("affine", 3, 2))
def test_localization_matches_closed_forms(p):
    for edge in edges_from(p):
        assert localized_coeff(edge, "e") == e_coefficient(p, edge.i, edge.j)[1]
        assert localized_coeff(edge, "f") == f_coefficient(edge.target, edge.i, edge.j)[1]


def test_localization_suite_small():
    rep = verify_localization(3, 2)
    assert rep["status"] == "pass"
    assert {e["relation"] for e in rep["entries"]} == {"localized_e", "localized_f", "renormalized_antisymmetry"}


def test_edge_needs_valid_target():
    with pytest.raises(ValueError):
        FixedEdge.make(VAC, 1, 0)


def test_kunneth_constant_class():
    E = F.x(1) + F.hp
    assert kunneth_solve(E, E, E, E, F) == (E, F.zero, F.zero, F.zero)


def test_kunneth_curve():
    A, B = F.x(2), F.x(1) * F.hp
    assert kunneth_curve(A - F.h * B, A + F.h * B, F) == (A, B)


def test_kunneth_solve_inverts_corners():
    c, c1, c1p, c2 = F.x(1), F.x(2), F.x(3), F.one
    h, hp = F.h, F.hp
    corners = [c - h * c1 - hp * c1p + h * hp * c2, c - h * c1 + hp * c1p - h * hp * c2,
               c + h * c1 - hp * c1p - h * hp * c2, c + h * c1 + hp * c1p + h * hp * c2]
    assert kunneth_solve(*corners, F) == (c, c1, c1p, c2)


@pytest.mark.parametrize("p", patterns_up_to("affine", 3, 3))
def test_restriction_to_zero_divisor(p):
    assert all(e["status"] == "pass" for e in verify_kunneth(p))
