from fractions import Fraction

import pytest
from sympy.functions.combinatorial.numbers import partition as npartitions

from laumon.affine_module import e_coefficient
from laumon.cylindric_oracle import cylindric_counts, fock_counts
from laumon.exactalg import field
from laumon.integrable import (
    SpecializationError,
    character_counts,
    character_table,
    check_truncation,
    renorm_C,
    renormalized,
    specialize,
    specialized_h_diag,
)
from laumon.patterns import AffinePattern, DominantWeight, in_Dmu, patterns_up_to

F = field(3)
W0 = DominantWeight(1, (0, 0, 0))
VAC = AffinePattern.vacuum(3)


def test_specialization_values():
    assert specialize(F.x(1), W0) == -1
    assert specialize(F.hp, W0) == -4
    assert specialize(1 / (F.x(1) - F.x(2)), W0) == 1
    assert specialize(F.h, W0) == 1


def test_vanishing_denominator_reports_factor():
    with pytest.raises(SpecializationError) as info:
        specialize(1 / (F.x(1) + 1), W0)
    assert info.value.factor is not None


def test_renormalization_constant_of_vacuum():
    assert renorm_C(VAC) == F.one


def test_edge_leaving_dmu_vanishes():
    target = AffinePattern.of(3, [[1], [], []])
    assert not in_Dmu(target, W0)
    _, c = e_coefficient(VAC, 1, 1)
    assert specialize(renormalized(c, VAC, target), W0) == 0


def test_edge_inside_dmu_survives():
    target = AffinePattern.of(3, [[], [], [1]])
    assert in_Dmu(target, W0)
    _, c = e_coefficient(VAC, 3, 3)
    assert specialize(renormalized(c, VAC, target), W0) != 0


def test_truncation_small():
    rep = check_truncation(W0, 3)
    assert rep["status"] == "pass"
    assert {"denominator_nonzero", "numerator_vanishes_outside"} <= {e["relation"] for e in rep["entries"]}


def test_specialized_h_is_integral():
    for p in patterns_up_to("affine", 3, 3):
        if in_Dmu(p, W0):
            for i in (1, 2, 3):
                assert specialized_h_diag(p, W0, i).denominator == 1


def test_vacuum_is_extremal():
    """The vacuum is killed by the box-removing operators, so with [e_i, f_i] = h_i its
    h-labels are minus those of Lambda_0, and e_i^(1 - h_i) kills it inside D(mu)."""
    labels = [specialized_h_diag(VAC, W0, i) for i in (1, 2, 3)]
    assert labels == [0, 0, -1]
    for i, lab in zip((1, 2, 3), labels):
        target = AffinePattern.of(3, [[1] if l == i else [] for l in (1, 2, 3)])
        _, c = e_coefficient(VAC, i, i)
        value = specialize(renormalized(c, VAC, target), W0)
        assert (value != 0) == (lab < 0)


def test_low_degree_counts():
    counts = character_counts(W0, 2)
    assert counts[(0, 0, 0)] == 1
    assert counts[(0, 0, 1)] == 1
    assert counts[(1, 0, 0)] == counts[(0, 1, 0)] == 0


@pytest.mark.parametrize("K,mu,cutoff", [(1, (0, 0, 0), 5), (1, (1, 0, 0), 4), (2, (0, 0, 0), 4), (2, (1, 0, -1), 4)])
def test_character_matches_cylindric_count(K, mu, cutoff):
    table = character_table(DominantWeight(K, mu), cutoff)
    assert table["match"]


def test_level_one_total_counts_are_partition_numbers():
    counts = cylindric_counts(1, (0, 0, 0), 6)
    for m in range(7):
        assert sum(c for d, c in counts.items() if sum(d) == m) == npartitions(m)


def test_fock_and_cylindric_agree_at_level_one():
    assert fock_counts(3, 5) == cylindric_counts(1, (0, 0, 0), 5)


def test_oracle_rejects_non_dominant():
    with pytest.raises(ValueError):
        cylindric_counts(1, (0, 2, 0), 2)


def test_specialization_is_exact():
    assert isinstance(specialize(F.x(2) / 3, W0), Fraction)
