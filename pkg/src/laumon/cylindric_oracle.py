"""Direct enumeration of cylindric plane partitions, kept free of the pattern code.

A cylindric plane partition with boundary mu (level K, n piles of rows) is
a tuple of partitions rho^0, ..., rho^(n-1), with rho^n := rho^0, such that

    rho^x_t >= rho^(x+1)_(t + s_x)      for all t >= 0,

where the shifts s_x = m(-x-1) - m(-x) >= 0 come from the extended weight
m(i) = mu_(i mod n) + floor(-i/n) K and add up to K around the cylinder.
A box at pile (x, t) and height k = 0, 1, ... has colour (k - x) mod n; the
colour c counts towards slot c of the degree vector (slot n for c = 0).

For mu constant and K = 1 the module is the level one Fock space, so a second
count is available: partitions graded by content residues.
"""
from collections import Counter
from functools import lru_cache


def _partitions_upto(total):
    """All partitions of size <= total, as tuples."""
    out = [()]

    def rec(prefix, remaining, bound):
        for part in range(min(remaining, bound), 0, -1):
            new = prefix + (part,)
            out.append(new)
            rec(new, remaining - part, part)

    rec((), total, total)
    return out


def _mtilde(K, mu, i):
    n = len(mu)
    r = i % n
    rep = r - n if r else 0
    return mu[rep + n - 1] + ((-i) // n) * K


def _at(rho, t):
    return rho[t] if t < len(rho) else 0


def _is_cylindric(piles, shifts):
    n = len(piles)
    for x in range(n):
        a, b, s = piles[x], piles[(x + 1) % n], shifts[x]
        for t in range(max(len(a), len(b)) + 1):
            if _at(a, t) < _at(b, t + s):
                return False
    return True


def _colour_vector(piles, n):
    deg = [0] * n
    for x, rho in enumerate(piles):
        for height in rho:
            for k in range(height):
                c = (k - x) % n
                deg[(c - 1) % n] += 1  # colour c -> slot c, colour 0 -> slot n
    return tuple(deg)


@lru_cache(maxsize=None)
def cylindric_counts(K, mu, cutoff):
    """degree vector -> number of cylindric plane partitions of that colour content, total <= cutoff."""
    mu = tuple(mu)
    n = len(mu)
    shifts = [_mtilde(K, mu, -x - 1) - _mtilde(K, mu, -x) for x in range(n)]
    if any(s < 0 for s in shifts) or sum(shifts) != K:
        raise ValueError("mu is not a dominant weight of this level")
    parts = _partitions_upto(cutoff)
    counts = Counter()

    def rec(prefix, used):
        if len(prefix) == n:
            if _is_cylindric(prefix, shifts):
                counts[_colour_vector(prefix, n)] += 1
            return
        for rho in parts:
            size = sum(rho)
            if used + size <= cutoff:
                rec(prefix + (rho,), used + size)

    rec((), 0)
    return dict(counts)


@lru_cache(maxsize=None)
def fock_counts(n, cutoff):
    """Partitions of size <= cutoff graded by the residues of their box contents."""
    counts = Counter()
    for lam in _partitions_upto(cutoff):
        deg = [0] * n
        for row, length in enumerate(lam):
            for col in range(length):
                c = (col - row) % n
                deg[(c - 1) % n] += 1
        counts[tuple(deg)] += 1
    return dict(counts)
