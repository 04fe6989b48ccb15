"""Laurent polynomials in t1^2..tn^2, q^(1/2) and q' with integer coefficients.

A monomial is keyed by ``(a, b2, c)`` where ``a`` is the tuple of exponents
of t_i^2, ``b2`` is twice the exponent of q and ``c`` the exponent of q'.
"""
from __future__ import annotations

from fractions import Fraction

from flint import fmpz_mpoly_ctx

from .scalar import Scalar, field


class CharDivisionError(ArithmeticError):
    """Raised when a character is not divisible by the requested divisor."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class CharPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        for key, c in (terms or {}).items():
            a, b2, c_exp = key
            if len(a) != n:
                raise ValueError(f"expected {n} t-exponents, got {a}")
            if c:
                k = (tuple(int(e) for e in a), int(b2), int(c_exp))
                clean[k] = clean.get(k, 0) + int(c)
        self.terms = {k: v for k, v in clean.items() if v}

    # -- constructors ----------------------------------------------------
    @classmethod
    def monomial(cls, n, t=None, q=0, qp=0, coeff=1):
        """coeff * prod t_i^(2 t[i]) * q^q * q'^qp; ``q`` may be a half-integer."""
        a = tuple(t) if t is not None else (0,) * n
        b2 = Fraction(q) * 2
        if b2.denominator != 1:
            raise ValueError("q exponent must be a multiple of 1/2")
        return cls(n, {(a, int(b2), qp): coeff})

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n):
        return cls.monomial(n)

    @classmethod
    def t(cls, n, i, power=1):
        a = [0] * n
        a[i - 1] = power
        return cls.monomial(n, a)

    @classmethod
    def q(cls, n, power=1):
        return cls.monomial(n, q=power)

    @classmethod
    def qp(cls, n, power=1):
        return cls.monomial(n, qp=power)

    # -- ring operations -------------------------------------------------
    def _check(self, other):
        if not isinstance(other, CharPoly):
            other = CharPoly.monomial(self.n, coeff=int(other))
        if other.n != self.n:
            raise ValueError("characters over different tori")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return CharPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return CharPoly(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for (a, b, c), v in self.terms.items():
            for (a2, b2, c2), w in other.terms.items():
                k = (tuple(x + y for x, y in zip(a, a2)), b + b2, c + c2)
                out[k] = out.get(k, 0) + v * w
        return CharPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((a, b, c), v), = self.terms.items()
            if v not in (1, -1):
                raise ValueError("only unit monomials can be inverted")
            return CharPoly(self.n, {(tuple(-x for x in a), -b, -c): v}) ** (-e)
        out = CharPoly.one(self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = CharPoly.monomial(self.n, coeff=other)
        if not isinstance(other, CharPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def is_zero(self):
        return not self.terms

    def at_one(self) -> int:
        """Value at t = q = q' = 1 (the virtual dimension)."""
        return sum(self.terms.values())

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_json(self):
        return [
            {"t_exp": list(a), "q_exp_doubled": b, "qp_exp": c, "coeff": v}
            for (a, b, c), v in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, n, items):
        return cls(n, {(tuple(d["t_exp"]), d["q_exp_doubled"], d["qp_exp"]): d["coeff"] for d in items})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c), v in self.sorted_terms():
            fac = []
            for i, e in enumerate(a, 1):
                if e:
                    fac.append(f"t{i}^{2 * e}")
            if b:
                fac.append("q" if b == 2 else f"q^{Fraction(b, 2)}")
            if c:
                fac.append("qp" if c == 1 else f"qp^{c}")
            mono = "*".join(fac)
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"CharPoly({self})"


def _flint_ctx(n):
    names = tuple(f"t{i}" for i in range(1, n + 1)) + ("q", "qp")
    return fmpz_mpoly_ctx.get(names, "lex")


def _to_flint(A: CharPoly, ctx):
    """Split A = m * P with m a monomial (as exponent vector) and P a polynomial."""
    keys = [a + (b, c) for (a, b, c) in A.terms]
    shift = tuple(min(k[i] for k in keys) for i in range(A.n + 2))
    data = {tuple(e - s for e, s in zip(k, shift)): v for k, v in zip(keys, A.terms.values())}
    return shift, ctx.from_dict(data)


def _from_flint(n, shift, poly):
    out = {}
    for exps, v in poly.terms():
        full = tuple(e + s for e, s in zip(exps, shift))
        out[(full[:n], full[n], full[n + 1])] = int(v)
    return CharPoly(n, out)


def char_div_exact(A: CharPoly, B: CharPoly) -> CharPoly:
    """Exact quotient A/B in the Laurent ring; raises CharDivisionError otherwise.

    Monomials are units, so after pulling out the monomial content of both
    sides this is ordinary exact division in a polynomial ring.
    """
    B = A._check(B)
    if B.is_zero():
        raise ZeroDivisionError("division by the zero character")
    if A.is_zero():
        return CharPoly.zero(A.n)
    ctx = _flint_ctx(A.n)
    sa, pa = _to_flint(A, ctx)
    sb, pb = _to_flint(B, ctx)
    quo, rem = divmod(pa, pb)
    if not rem.is_zero():
        remainder = _from_flint(A.n, sa, rem)
        raise CharDivisionError(f"{A} is not divisible by {B}; remainder {remainder}", remainder)
    return _from_flint(A.n, tuple(x - y for x, y in zip(sa, sb)), quo)


def monomial_weight(fld, key) -> Scalar:
    a, b2, c = key
    if b2 % 2:
        raise ValueError("half-integral q exponent has no weight")
    w = fld.const(b2 // 2) * fld.h + c * fld.hp
    for i, e in enumerate(a, 1):
        if e:
            w = w + e * fld.x(i)
    return w


def char_to_weights(A: CharPoly, fld=None) -> list:
    """Weights (with multiplicity) of an honest torus representation.

    q^b q'^c prod t_i^(2 a_i) becomes b h + c hp + sum a_i x_i.  The list is
    sorted by monomial so the output is deterministic.
    """
    fld = fld or field(A.n)
    out = []
    for key, m in A.sorted_terms():
        if m < 0:
            raise ValueError(f"negative multiplicity {m} in {A}")
        w = monomial_weight(fld, key)
        out.extend([w] * m)
    return out
