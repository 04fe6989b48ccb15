"""The affine Yangian action on the fixed-point basis of M.

Weights are ``p_ij = -x_(j mod n) + d_ij h + floor(-j/n) hp`` and
``phat_ij = p_ij / h``.  Row indices i may be arbitrary integers: the
operators e_i, f_i, x_{i,r} and the series h_i(u), a_mi(u) are computed
directly from the pattern for any i.  Since ``p_{i-n,j-n} = p_ij + hp`` this
gives the translation rule ``X_{i-n}(u) = X_i(u - hp/h - n/2)`` for free; the
normalized generators (index in 1..n) use it to reduce an arbitrary index.

Infinite products are truncated where their factors are provably 1:
factors attached to column k only involve d_{i-1,k}, d_ik, d_{i+1,k}, which
all vanish once i - 1 - k >= (longest partition).

Series in u are dimensionless (phat everywhere).  The series used for the
central elements (``a0n_dimensionful`` and ``phi``) are obtained by the
rescaling u -> h u.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exactalg import RationalU, Scalar, field
from .finite_module import GeneratorError, make_report
from .patterns import AffinePattern, patterns_up_to, residue, weight_p
from .relations import Instance, WordEvaluator, check_instances, commutator, yangian_instances
from .vectors import ModuleVector

DEFAULT_ORDER = 6


def p_hat(p: AffinePattern, i: int, j: int) -> Scalar:
    return _p_hat(p, i, j)


@lru_cache(maxsize=200_000)
def _p_hat(p, i, j):
    return weight_p(p, i, j) / field(p.n).h


def shift_constant(n: int) -> Scalar:
    """c = hp/h + n/2, the translation of u between X_{i-n} and X_i."""
    F = field(n)
    return F.hp / F.h + Fraction(n, 2)


def _cutoff(p: AffinePattern, i: int) -> int:
    """Columns k < cutoff have d_{i-1,k} = d_ik = d_{i+1,k} = 0."""
    return i - 1 - p.max_length()


# ---------------------------------------------------------------------------
# matrix coefficients

@lru_cache(maxsize=200_000)
def e_coefficient(p: AffinePattern, i: int, j: int):
    """Coefficient of e_i from p to p + 1_ij, or None when the target is not a pattern."""
    target = p.bumped(i, j, +1)
    if target is None:
        return None
    F = field(p.n)
    pij = weight_p(p, i, j)
    c = -1 / F.h
    if j != i:
        c = c * (weight_p(p, i - 1, j) - pij) / (weight_p(p, i, i) - pij)
    for k in range(_cutoff(p, i), i):
        if k != j:
            c = c * (weight_p(p, i - 1, k) - pij) / (weight_p(p, i, k) - pij)
    return target, c


@lru_cache(maxsize=200_000)
def f_coefficient(p: AffinePattern, i: int, j: int):
    """Coefficient of f_i from p to p - 1_ij, or None when the target is not a pattern."""
    target = p.bumped(i, j, -1)
    if target is None:
        return None
    F = field(p.n)
    pij = weight_p(p, i, j)
    c = (weight_p(p, i + 1, j) - pij) * (weight_p(p, i + 1, i + 1) - pij) / F.h
    for k in range(_cutoff(p, i), i + 1):
        if k != j:
            c = c * (weight_p(p, i + 1, k) - pij) / (weight_p(p, i, k) - pij)
    return target, c


def e_edges(p: AffinePattern, i: int):
    """(j, target, coefficient) for every box that can be added in row i."""
    out = []
    for j in range(i - p.max_length(), i + 1):
        hit = e_coefficient(p, i, j)
        if hit is not None and not hit[1].is_zero():
            out.append((j,) + hit)
    return out


def f_edges(p: AffinePattern, i: int):
    out = []
    for j in range(i - p.max_length() + 1, i + 1):
        hit = f_coefficient(p, i, j)
        if hit is not None and not hit[1].is_zero():
            out.append((j,) + hit)
    return out


def xminus_factor(p, i, j) -> Scalar:
    """phat_ij + (1-i)/2: the dimensionless weight carried by x^-_{i,r}."""
    return p_hat(p, i, j) + Fraction(1 - i, 2)


def xplus_factor(p, i, j) -> Scalar:
    """phat_ij - (1+i)/2."""
    return p_hat(p, i, j) - Fraction(1 + i, 2)


# ---------------------------------------------------------------------------
# diagonal data

def h_diag_eigenvalue(p: AffinePattern, i: int) -> Scalar:
    n = p.n
    F = field(n)
    deg = p.degree()
    d = lambda k: deg[residue(k, n) - 1]
    i0 = residue(i, n)
    val = (F.x(residue(i0 + 1, n)) - F.x(i0)) / F.h + 2 * d(i0) - d(i0 - 1) - d(i0 + 1) + 1
    if i0 == n:
        val = val + F.hp / F.h
    return val


def eigen_a_mi(m: int, i: int, p: AffinePattern) -> RationalU:
    """prod_{j<=i}(u - phat_ij) / prod_{k<=m}(u - phat_mk), column by column."""
    if not m < i:
        raise GeneratorError("a_mi needs m < i")
    F = field(p.n)
    J = m - p.max_length()  # below J both rows vanish and the factors cancel
    zeros = [p_hat(p, i, j) for j in range(J, i + 1)]
    poles = [p_hat(p, m, k) for k in range(J, m + 1)]
    return RationalU.from_factors(F, zeros, poles)


def eigen_h(i: int, p: AffinePattern) -> RationalU:
    """Eigenvalue of h_i(u): the product over j <= i of

        (u+(i+1)/2 - phat_{i+1,j+1}) (u+(i-1)/2 - phat_{i-1,j-1})
        / ((u+(i+1)/2 - phat_ij) (u+(i-1)/2 - phat_ij)),

    regrouped so that numerator and denominator factors of the same column
    meet; below the cutoff these pairs are identical and cancel.
    """
    F = field(p.n)
    A, B = Fraction(i + 1, 2), Fraction(i - 1, 2)
    J = _cutoff(p, i) - 1
    zeros, poles = [], []
    for c in range(J, i + 2):  # columns of row i+1 (c = j+1)
        zeros.append(p_hat(p, i + 1, c) - A)
    for c in range(J, i):  # columns of row i-1 (c = j-1)
        zeros.append(p_hat(p, i - 1, c) - B)
    for c in range(J, i + 1):
        poles.append(p_hat(p, i, c) - A)
        poles.append(p_hat(p, i, c) - B)
    return RationalU.from_factors(F, zeros, poles)


def eigen_h_via_m(i: int, m: int, p: AffinePattern) -> RationalU:
    """The quotient-bundle combination a_{m,i-1}(u+(i-1)/2) a_{m,i+1}(u+(i+1)/2) / (a_mi(u+(i-1)/2) a_mi(u+(i+1)/2))."""
    if not m < i:
        raise GeneratorError("need m < i")
    lo, hi = Fraction(i - 1, 2), Fraction(i + 1, 2)
    F = field(p.n)
    a_lo = eigen_a_mi(m, i - 1, p) if m < i - 1 else RationalU.const(F, 1)
    num = a_lo.shift(lo) * eigen_a_mi(m, i + 1, p).shift(hi)
    a_i = eigen_a_mi(m, i, p)
    return num / (a_i.shift(lo) * a_i.shift(hi))


def a0n_dimensionful(p: AffinePattern) -> RationalU:
    """prod_{j<=0}(u - p_0j + hp) / (u - p_0j), telescoped.

    With N <= the first column carrying a box in row 0, the tail j < N
    collapses to prod_{N-n <= j <= N-1} (u - p_0j + hp).
    """
    n = p.n
    F = field(n)
    nonzero = [j for j in range(-n * (p.max_length() + 1), 1) if p.d(0, j)]
    N = min(nonzero) if nonzero else 1
    zeros, poles = [], []
    for j in range(N, 1):
        zeros.append(_p0(p, j) - F.hp)
        poles.append(_p0(p, j))
    for j in range(N - n, N):
        zeros.append(_p0(p, j) - F.hp)
    return RationalU.from_factors(F, zeros, poles)


def _p0(p, j):
    """p_0j, reading d_0j = 0 for columns to the right of the diagonal."""
    if j <= 0:
        return weight_p(p, 0, j)
    F = field(p.n)
    return -F.x(residue(j, p.n)) + ((-j) // p.n) * F.hp


def a0n_from_ami(p: AffinePattern) -> RationalU:
    """Dimensionful a_{0,n}(u) obtained from the general a_mi formula by u -> h u."""
    F = field(p.n)
    a = eigen_a_mi(0, p.n, p)
    return RationalU.from_factors(F, [r * F.h for r in a.zeros()], [r * F.h for r in a.poles()])


def phi_coefficients(p: AffinePattern, order: int = 3) -> list:
    """[Phi_{n,0}, ..., Phi_{n,order}] where Phi_n(u) = sum_r Phi_{n,r} u^(-r-1) = d/du log a_{0,n}(u)."""
    F = field(p.n)
    series = eigen_a_mi(0, p.n, p).log_derivative(order + 1)
    # dimensionless log-derivative: coefficient of u^(-r-1) equals Phi_r h^(-r)
    return [series.coeff(r + 1) * F.h ** r for r in range(order + 1)]


def eigen_series(kind: str, p: AffinePattern, *, m=None, i=None, order=DEFAULT_ORDER):
    if kind == "a_mi":
        return eigen_a_mi(m, i, p)
    if kind == "h":
        return eigen_h(i, p)
    if kind == "a_0n":
        return a0n_dimensionful(p)
    if kind == "phi":
        return phi_coefficients(p, order)
    raise GeneratorError(f"unknown series {kind!r}")


@lru_cache(maxsize=100_000)
def _h_series(p, i, order):
    return eigen_h(i, p).expand(order)


def h_coefficient(p: AffinePattern, i: int, r: int, order=DEFAULT_ORDER) -> Scalar:
    """h_{i,r}: h^r times the u^(-r-1) coefficient of h_i(u) (any integer i)."""
    order = max(order, r + 1)
    return _h_series(p, i, order).coeff(r + 1) * field(p.n).h ** r


# ---------------------------------------------------------------------------
# the action

class AffineAction:
    """Basis action on M.

    Geometric operator keys:
      ('hdiag', i), ('e', i), ('f', i), ('xplus', k, r), ('xminus', k, r), ('hcoeff', k, r)
    with k reduced to {1..n} through the translation rule.  Keys with a
    trailing 'raw' element (e.g. ('xminus', 0, r, 'raw')) evaluate the row
    index literally instead.

    Yangian keys for the relation checker: ('Y+', k, r, shifted),
    ('Y-', k, r, shifted), ('Yh', k, r, shifted); shifted series use row 0
    in place of row n.
    """

    def __init__(self, n: int, order: int = DEFAULT_ORDER, allow_n2: bool = False):
        if n < 3 and not (allow_n2 and n == 2):
            raise GeneratorError("the affine action needs n >= 3 (n = 2 only behind the explicit flag)")
        self.n = n
        self.field = field(n)
        self.order = order

    def act(self, op, p: AffinePattern) -> dict:
        tag = op[0]
        n = self.n
        if tag in ("Y+", "Y-", "Yh"):
            k, r, shifted = op[1], op[2], op[3]
            row = 0 if (shifted and k == n) else k
            inner = {"Y+": "xminus", "Y-": "xplus", "Yh": "hcoeff"}[tag]
            return self.act((inner, row, r, "raw"), p)
        raw = len(op) > 1 and op[-1] == "raw"
        if tag == "hdiag":
            return _diag(p, h_diag_eigenvalue(p, op[1]))
        if tag in ("e", "f"):
            k = op[1]
            edges = e_edges(p, k) if tag == "e" else f_edges(p, k)
            return {t: c for _, t, c in edges}
        if tag in ("xplus", "xminus", "hcoeff"):
            k, r = op[1], op[2]
            if r < 0:
                raise GeneratorError("r must be nonnegative")
            if raw:
                row, shift = k, None
            else:
                row = residue(k, n)
                m = (row - k) // n  # k = row - m n  =>  X_k(u) = X_row(u - m c)
                shift = m * shift_constant(n) if m else None
            if tag == "hcoeff":
                if shift is None:
                    return _diag(p, h_coefficient(p, row, r, self.order))
                series = eigen_h(row, p).shift(-shift).expand(max(self.order, r + 1))
                return _diag(p, series.coeff(r + 1) * self.field.h ** r)
            h = self.field.h
            out = {}
            if tag == "xminus":
                for j, t, c in e_edges(p, row):
                    if r:
                        w = xminus_factor(p, row, j) + (shift if shift is not None else 0)
                        c = c * (w * h) ** r
                    if not c.is_zero():
                        out[t] = c
            else:
                for j, t, c in f_edges(p, row):
                    if r:
                        w = xplus_factor(p, row, j) + (shift if shift is not None else 0)
                        c = c * (w * h) ** r
                    if not c.is_zero():
                        out[t] = c
            return out
        raise GeneratorError(f"unknown generator {tag!r}")


def _diag(p, value):
    return {} if value.is_zero() else {p: value}


def apply_affine(gen: tuple, v: ModuleVector, order: int = DEFAULT_ORDER, allow_n2: bool = False) -> ModuleVector:
    if v.is_zero():
        return ModuleVector()
    n = next(iter(v.terms)).n
    act = AffineAction(n, order, allow_n2)
    out = {}
    for p, c in v.terms.items():
        for q, w in act.act(gen, p).items():
            out[q] = out[q] + c * w if q in out else c * w
    return ModuleVector(out)


# ---------------------------------------------------------------------------
# relations

def cartan_affine(n):
    def a(k, l):
        k, l = residue(k, n), residue(l, n)
        if k == l:
            return 2
        if n == 2:
            return -2
        return -1 if (k - l) % n in (1, n - 1) else 0
    return a


def kac_moody_instances(n):
    """Chevalley relations of the affine Kac-Moody algebra between e_i, f_i, h_i."""
    F = field(n)
    a = cartan_affine(n)
    e = lambda i: (("e", i),)
    f = lambda i: (("f", i),)
    hd = lambda i: (("hdiag", i),)
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            terms = commutator(e(i), f(j))
            if i == j:
                terms.append((-1, hd(i)))
            out.append(Instance("km_e_f", (("i", i), ("j", j)), tuple(terms)))
            out.append(Instance("km_h_e", (("i", i), ("j", j)), tuple(commutator(hd(i), e(j)) + [(-a(i, j), e(j))])))
            out.append(Instance("km_h_f", (("i", i), ("j", j)), tuple(commutator(hd(i), f(j)) + [(a(i, j), f(j))])))
            if i != j and a(i, j) == 0:
                out.append(Instance("km_e_e_far", (("i", i), ("j", j)), tuple(commutator(e(i), e(j)))))
            if i != j and a(i, j) == -1:
                for name, g in (("km_serre_e", e), ("km_serre_f", f)):
                    terms = [(1, g(i) + g(i) + g(j)), (-2, g(i) + g(j) + g(i)), (1, g(j) + g(i) + g(i))]
                    out.append(Instance(name, (("i", i), ("j", j)), tuple(terms)))
    return [Instance(i.relation, i.indices, tuple((F.coerce(c), w) for c, w in i.terms)) for i in out]


def affine_yangian_instances(n, R, include_plain=False):
    F = field(n)
    X = lambda sign, k, r, shifted=False: ("Y+" if sign == "+" else "Y-", k, r, bool(shifted))
    H = lambda k, r, shifted=False: ("Yh", k, r, bool(shifted))
    a = cartan_affine(n)
    twisted = {(n, 1): n, (1, n): n}
    return yangian_instances(
        F, range(1, n + 1), a, R, X, H,
        adjacent=lambda k, l: a(k, l) < 0,
        twisted=twisted,
        include_twisted_plain=include_plain,
    )


def _affine_chunk(args):
    n, R, order, pats = args
    patterns = [AffinePattern.of(n, lams) for lams in pats]
    action = AffineAction(n, order)
    ev = WordEvaluator(action)
    instances = affine_yangian_instances(n, R, include_plain=True)
    main = [i for i in instances if not i.relation.endswith("_plain")] + kac_moody_instances(n)
    plain = [i for i in instances if i.relation.endswith("_plain")]
    entries = check_instances(ev, main, patterns)
    F = field(n)
    crit = {"hp": -Fraction(n, 2) * F.h}

    def specialize(res):
        out = {}
        for q, c in res.items():
            s = c.substitute(crit)
            if not s.is_zero():
                out[q] = s
        return out

    for e in check_instances(ev, plain, patterns, transform=specialize):
        e["relation"] = e["relation"].replace("_plain", "_at_sl_hat_point")
        entries.append(e)
    return entries


def verify_affine_relations(n: int, D: int, R: int, order=DEFAULT_ORDER, jobs=1) -> dict:
    """All affine Yangian relations (with the shifted series for the pairs (n,1), (1,n)).

    Additionally the unmodified shift relations for those pairs are
    evaluated and specialized at hp = -n h / 2, where they must hold.
    """
    if n < 3:
        raise GeneratorError("the relation verifier needs n >= 3")
    from .parallel import run_chunks

    order = max(order, R + 3)
    pats = patterns_up_to("affine", n, D)
    chunks = [(n, R, order, [[list(l) for l in p.lambdas]]) for p in pats]
    entries = run_chunks(_affine_chunk, chunks, jobs)
    return make_report("affine-relations", {"n": n, "max_degree": D, "rmax": R}, entries)


# ---------------------------------------------------------------------------
# identities between the series

def _rel(name, p, ok, **indices):
    return {"relation": name, "indices": indices, "basis_pattern": p.to_json(), "status": "pass" if ok else "fail"}


def shift_identity_entries(p: AffinePattern, R: int):
    """x_{i-n,r} computed row by row agrees with the translated x_{i,r}."""
    n = p.n
    act = AffineAction(n, max(DEFAULT_ORDER, R + 2))
    out = []
    for i in range(1, n + 1):
        for r in range(R + 1):
            for tag in ("xplus", "xminus", "hcoeff"):
                direct = act.act((tag, i - n, r, "raw"), p)
                translated = act.act((tag, i - n, r), p)
                out.append(_rel("translation", p, direct == translated, op=tag, k=i - n, r=r))
    return out


def h_path_entries(p: AffinePattern):
    """h_i(u) from the product formula, from a_mi for m = i-1, i-2, i-3, and its u^-1 term."""
    out = []
    for i in range(1, p.n + 1):
        h = eigen_h(i, p)
        for m in (i - 1, i - 2, i - 3):
            out.append(_rel("h_via_a_mi", p, eigen_h_via_m(i, m, p) == h, i=i, m=m))
        ok = h.expand(1).coeff(1) == h_diag_eigenvalue(p, i)
        out.append(_rel("h_leading_term", p, ok, i=i))
    return out


def a_recursion_entries(p: AffinePattern):
    n = p.n
    F = field(n)
    c = F.hp / F.h
    out = []
    a0n = eigen_a_mi(0, n, p)
    out.append(_rel("a0n_product", p, a0n_dimensionful(p) == a0n_from_ami(p)))
    for i in range(1, n + 2):
        # (a_{0,i+n}) = (a_{0,n}) (a_{0,i})(u + hp/h)
        lhs = eigen_a_mi(0, i + n, p)
        rhs = a0n * eigen_a_mi(0, i, p).shift(c)
        out.append(_rel("a_i_plus_n", p, lhs == rhs, i=i))
        # a_{0,i} in terms of a_{01} and the h_j
        prod = RationalU.const(F, 1)
        for j in range(i):
            prod = prod * eigen_a_mi(0, 1, p).shift(-j)
        for j in range(1, i):
            for l in range(1, i - j + 1):
                prod = prod * eigen_h(j, p).shift(-l - Fraction(j - 1, 2))
        out.append(_rel("a_i_from_h", p, prod == eigen_a_mi(0, i, p), i=i))
    a01 = eigen_a_mi(0, 1, p)
    hprod = RationalU.const(F, 1)
    for j in range(1, n + 1):
        hprod = hprod * eigen_h(j, p).shift(Fraction(j - 1, 2) - n)
    out.append(_rel("a01_period", p, a01.shift(-n) * hprod == a01.shift(c)))
    crit = {"hp": -n * F.h}
    at_crit = hprod.map_coeffs(lambda s: s.substitute(crit))
    out.append(_rel("critical_level_product", p, at_crit == RationalU.const(F, 1)))
    return out


def _series_chunk(args):
    n, R, pats = args
    out = []
    for lams in pats:
        p = AffinePattern.of(n, lams)
        out += shift_identity_entries(p, R)
        out += h_path_entries(p)
        out += a_recursion_entries(p)
    return out


def verify_a01(n: int, D: int, R: int = 2, jobs=1) -> dict:
    """Translation rule, the h_i(u) paths, the a_{0i} recursions and the critical-level probe."""
    from .parallel import run_chunks

    pats = patterns_up_to("affine", n, D)
    chunks = [(n, R, [[list(l) for l in p.lambdas]]) for p in pats]
    entries = run_chunks(_series_chunk, chunks, jobs)
    return make_report("a01", {"n": n, "max_degree": D, "rmax": R}, entries)


def _series_key(f: RationalU):
    return (str(f.lead()), tuple(str(z) for z in f.zeros()), tuple(str(b) for b in f.poles()))


def _irreducibility_chunk(args):
    n, pats = args
    act = AffineAction(n)
    out = []
    for lams in pats:
        p = AffinePattern.of(n, lams)
        key = tuple(_series_key(eigen_h(i, p)) for i in range(1, n + 1))
        lowers = any(act.act(("xminus", i, 0), p) for i in range(1, n + 1))
        raises = any(act.act(("xplus", i, 0), p) for i in range(1, n + 1))
        out.append((p.to_json(), key, lowers, raises, p.total() == 0))
    return out


def verify_irreducibility_data(n: int, D: int, jobs=1) -> dict:
    """Distinct joint h-eigenvalues, and nonvanishing of x^-_{i,0} (and x^+_{i,0} off the vacuum).

    The operator tags are the geometric ones: xminus adds a box, xplus removes one.
    """
    from .parallel import run_chunks

    pats = patterns_up_to("affine", n, D)
    rows = run_chunks(_irreducibility_chunk, [(n, [[list(l) for l in p.lambdas]]) for p in pats], jobs)
    seen = {}
    for pj, key, _, _, _ in rows:
        seen.setdefault(key, []).append(pj)
    entries = []
    for pj, key, lowers, raises, vac in rows:
        clash = [q for q in seen[key] if q != pj]
        e = {"relation": "distinct_h_spectrum", "indices": {}, "basis_pattern": pj,
             "status": "fail" if clash else "pass"}
        if clash:
            e["collides_with"] = clash
        entries.append(e)
        entries.append({"relation": "xminus_nonzero", "indices": {}, "basis_pattern": pj,
                        "status": "pass" if lowers else "fail"})
        if not vac:
            entries.append({"relation": "xplus_nonzero", "indices": {}, "basis_pattern": pj,
                            "status": "pass" if raises else "fail"})
    return make_report("irreducible", {"n": n, "max_degree": D}, entries)
