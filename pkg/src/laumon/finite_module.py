"""The gl_n and Y(sl_n) action on the fixed-point basis of V.

Notation.  For a finite pattern put ``p_ij = -x_j + d_ij h`` (with the top
row d_nj = 0) and ``phat_ij = p_ij / h``.  The Chevalley operators are

    e_i [d] = sum_j  -h^-1 prod_{k<=i-1}(p_{i-1,k} - p_ij) / prod_{k!=j, k<=i}(p_ik - p_ij)  [d + 1_ij]
    f_i [d] = sum_j   h^-1 prod_{k<=i+1}(p_{i+1,k} - p_ij) / prod_{k!=j, k<=i}(p_ik - p_ij)  [d - 1_ij]

with p computed at the source pattern.  Terms whose target is not a
pattern are dropped; the numerators vanish there anyway.

The operators tagged ``xminus`` and ``xplus`` follow the geometric
definitions: ``xminus(k, r)`` is the e-coefficient times
``(p_kj + (1-k)/2 h)^r`` and ``xplus(k, r)`` is the f-coefficient times
``(p_kj - h + (1-k)/2 h)^r`` (the fiber weight on the transposed edge).

Labels.  With these definitions ``[h_k0, e_l] = +a_kl e_l`` and
``[e_k, f_k] = h_k0``.  Hence the Yangian generator x+ is realised by the
operator tagged ``xminus`` and x- by ``xplus``; :class:`FiniteAction`
exposes both labellings and the relation checker uses the Yangian one.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exactalg import RationalU, Scalar, field
from .patterns import FinitePattern, patterns_up_to
from .relations import Instance, WordEvaluator, check_instances, commutator, yangian_instances
from .vectors import ModuleVector

DEFAULT_ORDER = 6


class GeneratorError(ValueError):
    pass


# ---------------------------------------------------------------------------
# weights and coefficients

def p_weight(p: FinitePattern, i: int, j: int) -> Scalar:
    F = field(p.n)
    return -F.x(j) + p.d(i, j) * F.h


def p_hat(p: FinitePattern, i: int, j: int) -> Scalar:
    F = field(p.n)
    return p_weight(p, i, j) / F.h


@lru_cache(maxsize=100_000)
def e_coefficient(p: FinitePattern, i: int, j: int):
    """Matrix coefficient of e_i from p to p + 1_ij, or None if that is not a pattern."""
    target = p.bumped(i, j, +1)
    if target is None:
        return None
    F = field(p.n)
    pij = p_weight(p, i, j)
    c = -1 / F.h
    for k in range(1, i):
        c = c * (p_weight(p, i - 1, k) - pij)
    for k in range(1, i + 1):
        if k != j:
            c = c / (p_weight(p, i, k) - pij)
    return target, c


@lru_cache(maxsize=100_000)
def f_coefficient(p: FinitePattern, i: int, j: int):
    """Matrix coefficient of f_i from p to p - 1_ij, or None if that is not a pattern."""
    target = p.bumped(i, j, -1)
    if target is None:
        return None
    F = field(p.n)
    pij = p_weight(p, i, j)
    c = 1 / F.h
    for k in range(1, i + 2):
        c = c * (p_weight(p, i + 1, k) - pij)
    for k in range(1, i + 1):
        if k != j:
            c = c / (p_weight(p, i, k) - pij)
    return target, c


def e_edges(p, i):
    out = []
    for j in range(1, i + 1):
        hit = e_coefficient(p, i, j)
        if hit is not None and not hit[1].is_zero():
            out.append((j,) + hit)
    return out


def f_edges(p, i):
    out = []
    for j in range(1, i + 1):
        hit = f_coefficient(p, i, j)
        if hit is not None and not hit[1].is_zero():
            out.append((j,) + hit)
    return out


def xminus_factor(p, k, j) -> Scalar:
    """phat of the e-type edge in column j, including the (1-k)/2 twist."""
    return p_hat(p, k, j) + Fraction(1 - k, 2)


def xplus_factor(p, k, j) -> Scalar:
    return p_hat(p, k, j) - 1 + Fraction(1 - k, 2)


# ---------------------------------------------------------------------------
# diagonal data

def E_eigenvalue(p: FinitePattern, i: int) -> Scalar:
    n = p.n
    if not 1 <= i <= n:
        raise GeneratorError(f"E_ii needs 1 <= i <= {n}")
    F = field(n)
    deg = (0,) + p.degree() + (0,)  # d_0 = d_n = 0
    return F.x(i) / F.h + deg[i - 1] - deg[i] + i - 1


def h_eigenvalue(p: FinitePattern, i: int) -> Scalar:
    n = p.n
    if not 1 <= i <= n - 1:
        raise GeneratorError(f"h_i needs 1 <= i <= {n - 1}")
    return E_eigenvalue(p, i + 1) - E_eigenvalue(p, i)


def eigen_a_finite(m: int, p: FinitePattern) -> RationalU:
    """a_m(u) = prod_{j<=m}(u - phat_mj); a_0 = 1 and the top row reads d_nj = 0."""
    n = p.n
    if not 0 <= m <= n:
        raise GeneratorError(f"a_m needs 0 <= m <= {n}")
    F = field(n)
    return RationalU.from_factors(F, [p_hat(p, m, j) for j in range(1, m + 1)])


def eigen_a_quotient(m: int, i: int, p: FinitePattern) -> RationalU:
    """Eigenvalue of the series attached to the quotient bundle W_i / W_m."""
    if not m < i:
        raise GeneratorError("need m < i")
    return eigen_a_finite(i, p) / eigen_a_finite(m, p)


def eigen_h_finite(k: int, p: FinitePattern, via_m=None) -> RationalU:
    """h_k(u) = a_{k-1}(u+(k-1)/2) a_{k+1}(u+(k+1)/2) / (a_k(u+(k+1)/2) a_k(u+(k-1)/2))."""
    n = p.n
    if not 1 <= k <= n - 1:
        raise GeneratorError(f"h_k needs 1 <= k <= {n - 1}")
    lo, hi = Fraction(k - 1, 2), Fraction(k + 1, 2)
    if via_m is None:
        a = lambda i: eigen_a_finite(i, p)
    else:
        if via_m >= k or via_m < 0:
            raise GeneratorError(f"via_m must satisfy 0 <= m < {k}")
        a = lambda i: eigen_a_quotient(via_m, i, p) if i > via_m else RationalU.const(field(n), 1)
    return a(k - 1).shift(lo) * a(k + 1).shift(hi) / (a(k).shift(hi) * a(k).shift(lo))


@lru_cache(maxsize=50_000)
def _h_series(p, k, order):
    return eigen_h_finite(k, p).expand(order)


def h_coefficient(p: FinitePattern, k: int, r: int, order=DEFAULT_ORDER) -> Scalar:
    """h_{k,r} on [p]: h^r times the coefficient of u^(-r-1) in h_k(u)."""
    order = max(order, r + 1)
    F = field(p.n)
    return _h_series(p, k, order).coeff(r + 1) * F.h ** r


# ---------------------------------------------------------------------------
# the action

GENERATOR_TAGS = ("E", "h", "e", "f", "xplus", "xminus", "hcoeff")


class FiniteAction:
    """Basis action on V for a fixed n.

    Operator keys (geometric labels):
      ('E', i), ('h', i), ('e', i), ('f', i), ('xplus', k, r), ('xminus', k, r),
      ('hcoeff', k, r).
    Yangian keys, used by the relation checker:
      ('Y+', k, r), ('Y-', k, r), ('Yh', k, r).
    """

    def __init__(self, n: int, order: int = DEFAULT_ORDER, labels: str = "yangian"):
        self.n = n
        self.field = field(n)
        self.order = order
        if labels not in ("yangian", "literal"):
            raise ValueError("labels must be 'yangian' or 'literal'")
        # 'literal' maps Yangian x+ to the operator tagged xplus; kept to
        # document why the default mapping is the other one
        self.labels = labels

    def _check(self, op):
        tag = op[0]
        n = self.n
        if tag == "E":
            ok = 1 <= op[1] <= n
        elif tag in ("h", "e", "f"):
            ok = 1 <= op[1] <= n - 1
        elif tag in ("xplus", "xminus", "hcoeff", "Y+", "Y-", "Yh"):
            ok = 1 <= op[1] <= n - 1 and op[2] >= 0
        else:
            raise GeneratorError(f"unknown generator {tag!r}")
        if not ok:
            raise GeneratorError(f"generator {op} out of range for n={n}")

    def act(self, op, p: FinitePattern) -> dict:
        self._check(op)
        tag = op[0]
        if tag == "Y+":
            return self.act(("xminus" if self.labels == "yangian" else "xplus",) + op[1:], p)
        if tag == "Y-":
            return self.act(("xplus" if self.labels == "yangian" else "xminus",) + op[1:], p)
        if tag == "Yh":
            tag = "hcoeff"
        if tag == "E":
            return _diag(p, E_eigenvalue(p, op[1]))
        if tag == "h":
            return _diag(p, h_eigenvalue(p, op[1]))
        if tag == "hcoeff":
            return _diag(p, h_coefficient(p, op[1], op[2], self.order))
        if tag in ("e", "xminus"):
            k = op[1]
            r = op[2] if tag == "xminus" else 0
            out = {}
            for j, target, c in e_edges(p, k):
                if r:
                    c = c * (xminus_factor(p, k, j) * self.field.h) ** r
                if not c.is_zero():
                    out[target] = c
            return out
        if tag in ("f", "xplus"):
            k = op[1]
            r = op[2] if tag == "xplus" else 0
            out = {}
            for j, target, c in f_edges(p, k):
                if r:
                    c = c * (xplus_factor(p, k, j) * self.field.h) ** r
                if not c.is_zero():
                    out[target] = c
            return out
        raise GeneratorError(f"unknown generator {tag!r}")


def _diag(p, value):
    return {} if value.is_zero() else {p: value}


def apply_finite(gen: tuple, v: ModuleVector, order: int = DEFAULT_ORDER) -> ModuleVector:
    """Apply a generator key such as ('e', 1) or ('xminus', 2, 1) to a vector."""
    if v.is_zero():
        return ModuleVector()
    n = next(iter(v.terms)).n
    act = FiniteAction(n, order)
    out = {}
    for p, c in v.terms.items():
        if p.n != n:
            raise GeneratorError("vector mixes patterns with different n")
        for q, w in act.act(gen, p).items():
            out[q] = out[q] + c * w if q in out else c * w
    return ModuleVector(out)


# ---------------------------------------------------------------------------
# relation verification

def cartan_finite(n):
    def a(k, l):
        if k == l:
            return 2
        return -1 if abs(k - l) == 1 else 0
    return a


def chevalley_instances(n: int):
    """The gl_n relations between E_ii, e_i = E_{i+1,i} and f_i = E_{i,i+1}."""
    F = field(n)
    out = []
    E = lambda i: (("E", i),)
    e = lambda i: (("e", i),)
    f = lambda i: (("f", i),)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a < b:
                out.append(Instance("gl_E_E", (("a", a), ("b", b)), tuple(commutator(E(a), E(b)))))
        for i in range(1, n):
            # [E_aa, E_{i+1,i}] = (delta_{a,i+1} - delta_{a,i}) E_{i+1,i}
            ce = (a == i + 1) - (a == i)
            out.append(Instance("gl_E_e", (("a", a), ("i", i)), tuple(commutator(E(a), e(i)) + [(-ce, e(i))])))
            out.append(Instance("gl_E_f", (("a", a), ("i", i)), tuple(commutator(E(a), f(i)) + [(ce, f(i))])))
    for i in range(1, n):
        for j in range(1, n):
            terms = commutator(e(i), f(j))
            if i == j:
                terms += [(-1, E(i + 1)), (1, E(i))]
            out.append(Instance("gl_e_f", (("i", i), ("j", j)), tuple(terms)))
            if i < j and abs(i - j) > 1:
                out.append(Instance("gl_e_e_far", (("i", i), ("j", j)), tuple(commutator(e(i), e(j)))))
                out.append(Instance("gl_f_f_far", (("i", i), ("j", j)), tuple(commutator(f(i), f(j)))))
            if abs(i - j) == 1:
                for name, g in (("gl_serre_e", e), ("gl_serre_f", f)):
                    terms = [(1, g(i) + g(i) + g(j)), (-2, g(i) + g(j) + g(i)), (1, g(j) + g(i) + g(i))]
                    out.append(Instance(name, (("i", i), ("j", j)), tuple(terms)))
    for i in range(1, n):
        out.append(Instance("gl_h", (("i", i),), (( 1, (("h", i),)), (-1, E(i + 1)), (1, E(i)))))
    return [Instance(i.relation, i.indices, tuple((F.coerce(c), w) for c, w in i.terms)) for i in out]


def finite_yangian_instances(n: int, R: int):
    F = field(n)
    X = lambda sign, k, r, shifted=False: ("Y+" if sign == "+" else "Y-", k, r)
    H = lambda k, r, shifted=False: ("Yh", k, r)
    return yangian_instances(
        F, range(1, n), cartan_finite(n), R, X, H, adjacent=lambda k, l: abs(k - l) == 1
    )


def _finite_chunk(args):
    n, R, order, labels, pats = args
    patterns = [FinitePattern(n, tuple(tuple(r) for r in rows)) for rows in pats]
    action = FiniteAction(n, order, labels)
    ev = WordEvaluator(action)
    instances = chevalley_instances(n) + finite_yangian_instances(n, R)
    return check_instances(ev, instances, patterns)


def verify_finite_relations(n: int, D: int, R: int, order=DEFAULT_ORDER, labels="yangian", jobs=1) -> dict:
    """Check the gl_n and Yangian relations on every basis vector of total degree <= D."""
    if n < 3:
        raise GeneratorError("the relation verifier needs n >= 3")
    from .parallel import run_chunks

    order = max(order, R + 3)
    pats = patterns_up_to("finite", n, D)
    chunks = [(n, R, order, labels, [list(map(list, p.rows))]) for p in pats]
    entries = run_chunks(_finite_chunk, chunks, jobs)
    return make_report("relations", {"n": n, "max_degree": D, "rmax": R, "labels": labels}, entries)


def make_report(suite, params, entries):
    failed = sum(1 for e in entries if e["status"] != "pass")
    return {
        "suite": suite,
        "params": params,
        "total": len(entries),
        "failed": failed,
        "status": "pass" if failed == 0 else "fail",
        "entries": entries,
    }
