"""Torus fixed points: finite and affine Gelfand-Tsetlin collections.

Finite case
    A :class:`FinitePattern` stores d_ij for n-1 >= i >= j >= 1, row by row.
    Entries weakly decrease down each column: d_kj >= d_ij when k <= i.
    The virtual top row d_nj is identically zero.

Affine case
    An :class:`AffinePattern` stores an n-tuple of partitions and reads
    d(i, j) = lambdas[(j mod n)][i - j] with residues taken in 1..n.  The
    periodicity d(i+n, j+n) = d(i, j) and the column monotonicity are then
    automatic.

Partitions are plain tuples of positive integers in weakly decreasing order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .exactalg import Scalar, field


class PatternError(ValueError):
    pass


# ---------------------------------------------------------------------------
# partitions

def partition(parts) -> tuple:
    """Validate and normalize a partition (trailing zeros are dropped)."""
    parts = tuple(int(p) for p in parts)
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise PatternError(f"{parts} is not a partition")
    return parts


@lru_cache(maxsize=None)
def partitions_of(size: int) -> tuple:
    """All partitions of ``size``, in lexicographic order."""
    def gen(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail
    return tuple(sorted(gen(size, size)))


def conjugate(parts) -> tuple:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > k) for k in range(parts[0]))


def part(parts, k: int) -> int:
    return parts[k] if 0 <= k < len(parts) else 0


def compositions(total: int, k: int):
    """All k-tuples of nonnegative integers with the given sum."""
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, k - 1):
            yield (first,) + rest


def degree_vectors(length: int, max_total: int):
    """Degree vectors of the given length with total <= max_total, by total then lexicographically."""
    for total in range(max_total + 1):
        yield from sorted(compositions(total, length))


def residue(j: int, n: int) -> int:
    """Representative of j modulo n in {1, ..., n}."""
    r = j % n
    return r if r else n


# ---------------------------------------------------------------------------
# finite patterns

@dataclass(frozen=True)
class FinitePattern:
    n: int
    rows: tuple  # rows[i-1] = (d_i1, ..., d_ii) for i = 1..n-1

    kind = "finite"

    def __post_init__(self):
        if self.n < 2:
            raise PatternError("finite patterns need n >= 2")
        if len(self.rows) != self.n - 1:
            raise PatternError(f"expected {self.n - 1} rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows, 1):
            if len(row) != i or any((not isinstance(v, int)) or v < 0 for v in row):
                raise PatternError(f"row {i} must hold {i} nonnegative integers, got {row}")
        for i in range(2, self.n):
            for j in range(1, i):
                if self.rows[i - 1][j - 1] > self.rows[i - 2][j - 1]:
                    raise PatternError(f"column {j} increases between rows {i - 1} and {i}")

    @classmethod
    def vacuum(cls, n):
        return cls(n, tuple((0,) * i for i in range(1, n)))

    def d(self, i: int, j: int) -> int:
        if not 1 <= j <= i <= self.n:
            raise IndexError(f"d_({i},{j}) is outside the pattern")
        if i == self.n:
            return 0
        return self.rows[i - 1][j - 1]

    def degree(self) -> tuple:
        return tuple(sum(row) for row in self.rows)

    def total(self) -> int:
        return sum(self.degree())

    def entries(self) -> tuple:
        return tuple(v for row in self.rows for v in row)

    def sort_key(self):
        return self.entries()

    def bumped(self, i: int, j: int, delta: int):
        """The collection with d_ij changed by delta, or None if it is not a pattern."""
        if not 1 <= j <= i <= self.n - 1:
            return None
        rows = [list(r) for r in self.rows]
        rows[i - 1][j - 1] += delta
        if rows[i - 1][j - 1] < 0:
            return None
        try:
            return FinitePattern(self.n, tuple(tuple(r) for r in rows))
        except PatternError:
            return None

    def to_json(self):
        return {"kind": "finite", "n": self.n, "d": [list(r) for r in self.rows]}

    def __str__(self):
        return "F" + "|".join(",".join(map(str, r)) for r in self.rows)


def _finite_rows(n, degree):
    def rec(i, prev):
        if i == n:
            yield ()
            return
        for row in compositions(degree[i - 1], i):
            if all(row[j] <= prev[j] for j in range(i - 1)):
                for rest in rec(i + 1, row):
                    yield (row,) + rest
    yield from rec(1, ())


# ---------------------------------------------------------------------------
# affine patterns

@dataclass(frozen=True)
class AffinePattern:
    n: int
    lambdas: tuple  # lambdas[l-1] is the partition attached to residue l

    kind = "affine"

    def __post_init__(self):
        if self.n < 2:
            raise PatternError("affine patterns need n >= 2")
        if len(self.lambdas) != self.n:
            raise PatternError(f"expected {self.n} partitions, got {len(self.lambdas)}")
        for lam in self.lambdas:
            if not isinstance(lam, tuple) or partition(lam) != lam:
                raise PatternError(f"{lam!r} is not a normalized partition")

    @classmethod
    def vacuum(cls, n):
        return cls(n, ((),) * n)

    @classmethod
    def of(cls, n, lambdas):
        return cls(n, tuple(partition(lam) for lam in lambdas))

    def lam(self, l: int) -> tuple:
        return self.lambdas[residue(l, self.n) - 1]

    def d(self, i: int, j: int) -> int:
        if i < j:
            raise IndexError(f"d_({i},{j}) needs i >= j")
        return part(self.lambdas[residue(j, self.n) - 1], i - j)

    def degree(self) -> tuple:
        """(d_1, ..., d_n); a box of lambda^l in row s counts towards d_{l+s}."""
        deg = [0] * self.n
        for l, lam in enumerate(self.lambdas, 1):
            for s, v in enumerate(lam):
                deg[residue(l + s, self.n) - 1] += v
        return tuple(deg)

    def total(self) -> int:
        return sum(sum(lam) for lam in self.lambdas)

    def max_length(self) -> int:
        return max((len(lam) for lam in self.lambdas), default=0)

    def max_entry(self) -> int:
        return max((lam[0] for lam in self.lambdas if lam), default=0)

    def sort_key(self):
        return self.lambdas

    def bumped(self, i: int, j: int, delta: int):
        """Pattern with d_ij (and its translates) changed by delta, or None."""
        if i < j:
            return None
        l = residue(j, self.n)
        lam = list(self.lambdas[l - 1])
        row = i - j
        while len(lam) <= row:
            lam.append(0)
        lam[row] += delta
        if lam[row] < 0 or (row > 0 and lam[row] > lam[row - 1]) or (row + 1 < len(lam) and lam[row + 1] > lam[row]):
            return None
        new = list(self.lambdas)
        new[l - 1] = partition(lam)
        return AffinePattern(self.n, tuple(new))

    def to_json(self):
        return {"kind": "affine", "n": self.n, "lambdas": [list(lam) for lam in self.lambdas]}

    def __str__(self):
        return "A" + "|".join(",".join(map(str, lam)) for lam in self.lambdas)


def pattern_from_json(obj):
    try:
        kind, n = obj["kind"], int(obj["n"])
        if kind == "finite":
            return FinitePattern(n, tuple(tuple(int(v) for v in row) for row in obj["d"]))
        if kind == "affine":
            return AffinePattern.of(n, obj["lambdas"])
    except (KeyError, TypeError) as exc:
        raise PatternError(f"malformed pattern {obj!r}") from exc
    raise PatternError(f"unknown pattern kind {obj.get('kind')!r}")


def _affine_of_total(n, total):
    out = []
    for sizes in compositions(total, n):
        for lams in itertools.product(*(partitions_of(s) for s in sizes)):
            out.append(AffinePattern(n, lams))
    return out


@lru_cache(maxsize=None)
def _affine_by_degree(n, total):
    table = {}
    for p in _affine_of_total(n, total):
        table.setdefault(p.degree(), []).append(p)
    return {deg: tuple(sorted(ps, key=AffinePattern.sort_key)) for deg, ps in table.items()}


def enumerate_patterns(kind: str, n: int, degree) -> list:
    """All fixed points of the given degree vector, in canonical order.

    Finite patterns are ordered lexicographically by their flattened entry
    list, affine patterns lexicographically by their tuple of partitions.
    """
    degree = tuple(int(v) for v in degree)
    if any(v < 0 for v in degree):
        raise PatternError("degree entries must be nonnegative")
    if kind == "finite":
        if len(degree) != n - 1:
            raise PatternError(f"finite degree vectors have {n - 1} entries")
        pats = [FinitePattern(n, rows) for rows in _finite_rows(n, degree)]
        return sorted(pats, key=FinitePattern.sort_key)
    if kind == "affine":
        if len(degree) != n:
            raise PatternError(f"affine degree vectors have {n} entries")
        return list(_affine_by_degree(n, sum(degree)).get(degree, ()))
    raise PatternError(f"unknown kind {kind!r}")


def patterns_up_to(kind: str, n: int, max_total: int) -> list:
    """All fixed points with total degree <= max_total, grouped by degree vector."""
    length = n - 1 if kind == "finite" else n
    out = []
    for deg in degree_vectors(length, max_total):
        out.extend(enumerate_patterns(kind, n, deg))
    return out


# ---------------------------------------------------------------------------
# n^2 diagram form

def to_diagrams(p: AffinePattern) -> dict:
    """The collection lambda^{kl}, 1 <= k, l <= n.

    lambda^{kl} consists of the parts of lambda^l at positions congruent to
    k - l modulo n.
    """
    n = p.n
    out = {}
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            off = (k - l) % n
            lam = p.lambdas[l - 1]
            out[(k, l)] = partition(lam[off::n])
    return out


def _contains(a, b):
    return all(part(a, i) >= v for i, v in enumerate(b))


def _contains_shifted(a, b):
    # a_i >= b_{i+1}
    return all(part(a, i) >= part(b, i + 1) for i in range(len(b)))


def from_diagrams(n: int, diagrams: dict) -> AffinePattern:
    """Inverse of :func:`to_diagrams`; rejects collections violating the chain conditions."""
    lambdas = []
    for l in range(1, n + 1):
        chain = [partition(diagrams.get((residue(l + s, n), l), ())) for s in range(n)]
        for s in range(n - 1):
            if not _contains(chain[s], chain[s + 1]):
                raise PatternError(
                    f"lambda^{residue(l + s, n)}{l} does not contain lambda^{residue(l + s + 1, n)}{l}"
                )
        if not _contains_shifted(chain[-1], chain[0]):
            raise PatternError(f"shifted containment fails at the end of chain {l}")
        length = max((len(c) for c in chain), default=0)
        merged = [part(chain[s], i) for i in range(length) for s in range(n)]
        lambdas.append(partition(merged))
    return AffinePattern(n, tuple(lambdas))


# ---------------------------------------------------------------------------
# weights

def weight_p(p: AffinePattern, i: int, j: int) -> Scalar:
    """p_ij = -x_(j mod n) + d_ij h + floor(-j/n) hp."""
    return _weight_p(p, i, j)


@lru_cache(maxsize=200_000)
def _weight_p(p, i, j):
    F = field(p.n)
    return -F.x(residue(j, p.n)) + p.d(i, j) * F.h + ((-j) // p.n) * F.hp


# ---------------------------------------------------------------------------
# dominant weights and D(mu)

@dataclass(frozen=True)
class DominantWeight:
    """Level K and mu = (mu_{1-n}, ..., mu_0)."""

    K: int
    mu: tuple

    def __post_init__(self):
        if self.K <= 0:
            raise PatternError("the level must be positive")
        mu = self.mu
        ok = mu[-1] + self.K >= mu[0] and all(a >= b for a, b in zip(mu, mu[1:]))
        if not ok:
            raise PatternError(f"mu={mu} is not dominant of level {self.K}")

    @property
    def n(self) -> int:
        return len(self.mu)

    def mu_at(self, k: int) -> int:
        """mu_k for k in {1-n, ..., 0}."""
        return self.mu[k + self.n - 1]

    def mu_tilde(self, i: int) -> int:
        n = self.n
        rep = i % n - n if i % n else 0  # representative in {1-n, ..., 0}
        return self.mu_at(rep) + ((-i) // n) * self.K


def ryb_bound(p: AffinePattern, w: DominantWeight) -> int:
    """Largest shift l that needs checking in the D(mu) condition.

    For l >= n * (1 + max entry) the difference mu~_j - mu~_{j+l} is at least
    K * (1 + max entry) > d_ij, so the inequality holds automatically.
    """
    return p.n * (1 + p.max_entry()) + p.n


def in_Dmu(p: AffinePattern, w: DominantWeight) -> bool:
    """d_ij - mu~_j <= d_{i+l,j+l} - mu~_{j+l} for all j <= i and l >= 0."""
    if p.n != w.n:
        raise PatternError("pattern and weight have different n")
    n = p.n
    L = ryb_bound(p, w)
    rows = p.max_length()
    for j in range(1, n + 1):  # periodicity in j
        for y in range(rows):  # d_ij = 0 beyond the longest partition
            left = p.d(j + y, j) - w.mu_tilde(j)
            for l in range(1, L + 1):
                if left > p.d(j + y + l, j + l) - w.mu_tilde(j + l):
                    return False
    return True


# ---------------------------------------------------------------------------
# cylindric partitions

@dataclass(frozen=True)
class CylindricPartition:
    """Pile heights rho^x_t = pi(x, b(x) + t) for x = 0..n-1, with b(x) = -mu~_{-x}.

    ``piles[x]`` is the partition t -> rho^x_t.  The boundary is recorded by
    the dominant weight.
    """

    weight: DominantWeight
    piles: tuple

    def heights(self) -> dict:
        return {(x, t): v for x, pile in enumerate(self.piles) for t, v in enumerate(pile)}

    def size(self) -> int:
        return sum(sum(p) for p in self.piles)


def cylindric(p: AffinePattern, w: DominantWeight) -> CylindricPartition:
    """Send a pattern in D(mu) to its cylindric plane partition.

    Row x of the height picture is built from lambda^(-x mod n): reflecting
    in the plane z = y turns its rows into piles, i.e. conjugates it.
    """
    if not in_Dmu(p, w):
        raise PatternError(f"{p} is not in D(mu) for {w}")
    piles = tuple(conjugate(p.lam(-x)) for x in range(p.n))
    return CylindricPartition(w, piles)


def from_cylindric(c: CylindricPartition) -> AffinePattern:
    n = c.weight.n
    lambdas = [None] * n
    for x, pile in enumerate(c.piles):
        lambdas[residue(-x, n) - 1] = conjugate(partition(pile))
    p = AffinePattern(n, tuple(lambdas))
    if not in_Dmu(p, c.weight):
        raise PatternError("piles do not satisfy the cylindric conditions")
    return p
