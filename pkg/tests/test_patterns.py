import itertools

import pytest
from hypothesis import given, settings, strategies as st

from laumon.exactalg import field
from laumon.patterns import (
    AffinePattern,
    DominantWeight,
    FinitePattern,
    PatternError,
    conjugate,
    cylindric,
    enumerate_patterns,
    from_cylindric,
    from_diagrams,
    in_Dmu,
    partition,
    pattern_from_json,
    patterns_up_to,
    to_diagrams,
    weight_p,
)

F3 = field(3)


def brute_finite(n, degree):
    """Every triangular array with entries <= max(degree) whose columns weakly decrease downwards."""
    cap = max(degree, default=0)
    cells = [(i, j) for i in range(1, n) for j in range(1, i + 1)]
    found = []
    for values in itertools.product(range(cap + 1), repeat=len(cells)):
        d = dict(zip(cells, values))
        if any(sum(d[(i, j)] for j in range(1, i + 1)) != degree[i - 1] for i in range(1, n)):
            continue
        if any(d[(i + 1, j)] > d[(i, j)] for i in range(1, n - 1) for j in range(1, i + 1)):
            continue
        found.append(tuple(tuple(d[(i, j)] for j in range(1, i + 1)) for i in range(1, n)))
    return sorted(found)


def multipartition_count(n, size):
    # coefficient of q^size in prod_k (1 - q^k)^(-n)
    series = [1] + [0] * size
    for k in range(1, size + 1):
        for _ in range(n):
            for m in range(k, size + 1):
                series[m] += series[m - k]
    return series[size]


def row_sum_degree(p):
    L = p.max_length()
    return tuple(sum(p.d(k, j) for j in range(k - L, k + 1)) for k in range(1, p.n + 1))


def test_finite_example():
    pats = enumerate_patterns("finite", 3, (1, 1))
    assert [p.rows for p in pats] == [((1,), (0, 1)), ((1,), (1, 0))]


@pytest.mark.parametrize("n,degree", [(3, (1, 1)), (3, (2, 1)), (3, (1, 3)), (4, (1, 2, 1)), (4, (2, 2, 2))])
def test_finite_against_brute_force(n, degree):
    ours = sorted(p.rows for p in enumerate_patterns("finite", n, degree))
    assert ours == brute_finite(n, degree)


def test_affine_examples():
    assert enumerate_patterns("affine", 3, (1, 0, 0)) == [AffinePattern.of(3, [[1], [], []])]
    assert enumerate_patterns("affine", 3, (0, 0, 0)) == [AffinePattern.vacuum(3)]


@pytest.mark.parametrize("n,total", [(3, 3), (3, 4), (4, 3)])
def test_affine_counts(n, total):
    pats = [p for p in patterns_up_to("affine", n, total) if p.total() == total]
    assert len(pats) == len(set(pats)) == multipartition_count(n, total)
    for p in pats:
        assert p.degree() == row_sum_degree(p)


def test_enumeration_order_is_canonical():
    pats = enumerate_patterns("affine", 3, (1, 1, 1))
    assert pats == sorted(pats, key=lambda p: p.lambdas)


def test_bad_degree_rejected():
    with pytest.raises(PatternError):
        enumerate_patterns("finite", 3, (1, 1, 1))
    with pytest.raises(PatternError):
        enumerate_patterns("affine", 3, (-1, 0, 0))


def test_finite_pattern_validation():
    with pytest.raises(PatternError):
        FinitePattern(3, ((0,), (1, 0)))


def test_json_roundtrip():
    for p in patterns_up_to("affine", 3, 2) + patterns_up_to("finite", 3, 2):
        assert pattern_from_json(p.to_json()) == p
    with pytest.raises(PatternError):
        pattern_from_json({"kind": "affine", "n": 3, "lambdas": [[1, 2], [], []]})


def test_diagrams_examples():
    box = AffinePattern.of(3, [[1], [], []])
    dg = to_diagrams(box)
    assert dg[(1, 1)] == (1,)
    assert all(v == () for k, v in dg.items() if k != (1, 1))
    assert all(v == () for v in to_diagrams(AffinePattern.vacuum(3)).values())
    with pytest.raises(PatternError):
        from_diagrams(3, {(2, 1): (1,)})


def test_diagrams_roundtrip():
    for p in patterns_up_to("affine", 3, 5):
        assert from_diagrams(3, to_diagrams(p)) == p


def test_weight_examples():
    vac = AffinePattern.vacuum(3)
    x1, x3, h, hp = F3.x(1), F3.x(3), F3.h, F3.hp
    assert weight_p(vac, 1, 1) == -x1 - hp
    assert weight_p(vac, 0, 0) == -x3
    assert weight_p(AffinePattern.of(3, [[1], [], []]), 1, 1) == -x1 + h - hp


@pytest.mark.parametrize("p", patterns_up_to("affine", 3, 3))
def test_translation_in_both_indices(p):
    # one step down the diagonal leaves d unchanged and moves the floor term by one
    for i in range(-2, 5):
        for j in range(i - 3, i + 1):
            assert p.d(i + 3, j + 3) == p.d(i, j)
            assert weight_p(p, i + 3, j + 3) == weight_p(p, i, j) - F3.hp


def test_dmu_examples():
    zero = DominantWeight(1, (0, 0, 0))
    assert in_Dmu(AffinePattern.vacuum(3), zero)
    assert in_Dmu(AffinePattern.vacuum(3), DominantWeight(2, (1, 0, -1)))
    assert not in_Dmu(AffinePattern.of(3, [[1], [], []]), zero)
    assert in_Dmu(AffinePattern.of(3, [[], [], [1]]), zero)


def test_weight_validation():
    with pytest.raises(PatternError):
        DominantWeight(1, (0, 1, 0))
    with pytest.raises(PatternError):
        DominantWeight(1, (2, 0, 0))


weights = st.sampled_from([
    DominantWeight(1, (0, 0, 0)),
    DominantWeight(1, (1, 0, 0)),
    DominantWeight(2, (0, 0, 0)),
    DominantWeight(2, (1, 0, -1)),
    DominantWeight(3, (2, 1, 0)),
])
small = st.lists(st.lists(st.integers(0, 3), max_size=3).map(lambda l: sorted(l, reverse=True)),
                 min_size=3, max_size=3)


@settings(max_examples=120, deadline=None)
@given(weights, small)
def test_cylindric_roundtrip(w, lams):
    p = AffinePattern.of(3, lams)
    if not in_Dmu(p, w):
        with pytest.raises(PatternError):
            cylindric(p, w)
        return
    c = cylindric(p, w)
    assert c.size() == p.total()
    assert from_cylindric(c) == p


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 6), max_size=6))
def test_conjugate_is_involution(parts):
    lam = partition(sorted(parts, reverse=True))
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


@settings(max_examples=80, deadline=None)
@given(small, st.integers(1, 3), st.integers(-3, 0))
def test_bump_then_unbump(lams, i, off):
    p = AffinePattern.of(3, lams)
    q = p.bumped(i, i + off, +1)
    if q is not None:
        assert q.total() == p.total() + 1
        assert q.bumped(i, i + off, -1) == p
