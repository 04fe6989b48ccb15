"""Exact rational functions in x1..xn, h and hp.

A :class:`Scalar` is a reduced fraction of two polynomials with rational
coefficients.  The polynomial arithmetic (including gcd) is delegated to
python-flint; this module only keeps fractions canonical:

* numerator and denominator are coprime,
* the denominator's leading coefficient is 1 in graded-lex order with
  ``x1 < x2 < ... < xn < h < hp``,
* zero is ``0 / 1``.

Because of this every value has exactly one representation, so equality and
hashing are structural.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from flint import fmpq, fmpq_mpoly_ctx


class ScalarField:
    """The field Q(x1, ..., xn, h, hp) for a fixed n."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        # flint orders generators from largest to smallest
        self.names = ("hp", "h") + tuple(f"x{i}" for i in range(n, 0, -1))
        self.ctx = fmpq_mpoly_ctx.get(self.names, "deglex")
        self._gens = dict(zip(self.names, self.ctx.gens()))
        self._one = self.ctx.from_dict({(0,) * len(self.names): 1})
        self.zero = Scalar._raw(self, self.ctx.from_dict({}), self._one)
        self.one = Scalar._raw(self, self._one, self._one)

    def __repr__(self):
        return f"ScalarField(n={self.n})"

    def gen(self, name: str) -> "Scalar":
        return Scalar._raw(self, self._gens[name], self._one)

    def x(self, i: int) -> "Scalar":
        if not 1 <= i <= self.n:
            raise IndexError(f"x{i} is not a generator for n={self.n}")
        return self.gen(f"x{i}")

    @property
    def h(self) -> "Scalar":
        return self.gen("h")

    @property
    def hp(self) -> "Scalar":
        return self.gen("hp")

    def const(self, c) -> "Scalar":
        c = Fraction(c)
        return Scalar._raw(self, self._one * fmpq(c.numerator, c.denominator), self._one)

    def coerce(self, v) -> "Scalar":
        if isinstance(v, Scalar):
            if v.field is not self:
                raise ValueError(f"cannot mix scalars over n={v.field.n} and n={self.n}")
            return v
        if isinstance(v, (int, Rational)):
            return self.const(v)
        raise TypeError(f"cannot interpret {type(v).__name__} as a Scalar")

    def parse(self, text: str) -> "Scalar":
        """Read back the canonical text form (or any expression in + - * / ^)."""
        src = text.replace("^", "**")
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"malformed scalar {text!r}") from exc
        return self._eval(tree.body, text)

    def _eval(self, node, text):
        if isinstance(node, ast.BinOp):
            a = self._eval(node.left, text)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and type(node.right.value) is int):
                    raise ValueError(f"only integer exponents allowed in {text!r}")
                return a ** node.right.value
            b = self._eval(node.right, text)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval(node.operand, text)
            return -v if isinstance(node.op, ast.USub) else v
        elif isinstance(node, ast.Constant) and type(node.value) is int:
            return self.const(node.value)
        elif isinstance(node, ast.Name) and node.id in self._gens:
            return self.gen(node.id)
        raise ValueError(f"malformed scalar {text!r}")


@lru_cache(maxsize=None)
def field(n: int) -> ScalarField:
    """Shared field instance for n variables x1..xn."""
    return ScalarField(n)


class Scalar:
    """Reduced fraction num/den over Q[x1..xn, h, hp]; immutable."""

    __slots__ = ("field", "num", "den", "_key")

    def __init__(self, fld: ScalarField, num, den=None):
        num = fld.ctx.from_dict({}) + num
        den = fld._one if den is None else fld.ctx.from_dict({}) + den
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.field = fld
        self.num, self.den = _normalize(fld, num, den)
        self._key = None

    @classmethod
    def _raw(cls, fld, num, den):
        obj = cls.__new__(cls)
        obj.field = fld
        obj.num = num
        obj.den = den
        obj._key = None
        return obj

    # -- structure -------------------------------------------------------
    def key(self):
        if self._key is None:
            self._key = (str(self.num), str(self.den))
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self == self.field.const(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.total_degree() <= 0 and self.den.total_degree() <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        c = self.num.leading_coefficient() if not self.num.is_zero() else fmpq(0)
        d = self.den.leading_coefficient()
        return Fraction(int(c.p), int(c.q)) / Fraction(int(d.p), int(d.q))

    # -- arithmetic ------------------------------------------------------
    def __neg__(self):
        return Scalar._raw(self.field, -self.num, self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self.field.coerce(other)
        return _add(self, other.num, other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self.field.coerce(other)
        return _add(self, -other.num, other.den)

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __mul__(self, other):
        other = self.field.coerce(other)
        return _mul(self.field, self.num, self.den, other.num, other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self.field.coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError(f"division of {self} by zero")
        return _mul(self.field, self.num, self.den, other.den, other.num)

    def __rtruediv__(self, other):
        return self.field.coerce(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("only integer powers")
        if e < 0:
            if self.num.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return Scalar(self.field, self.den ** (-e), self.num ** (-e))
        return Scalar._raw(self.field, self.num ** e, self.den ** e)

    # -- substitution ----------------------------------------------------
    def evaluate(self, values: dict) -> Fraction:
        """Evaluate at rational values for every generator (keys 'x1', 'h', 'hp', ...)."""
        fld = self.field
        try:
            args = [_to_fmpq(values[name]) for name in fld.names]
        except KeyError as exc:
            raise ValueError(f"no value for generator {exc.args[0]}") from None
        d = self.den(*args)
        if d == 0:
            raise ZeroDivisionError(f"denominator {self.den_text()} vanishes")
        v = self.num(*args) / d
        return Fraction(int(v.p), int(v.q))

    def substitute(self, images: dict) -> "Scalar":
        """Replace generators by Scalars over the same field (missing ones are kept)."""
        fld = self.field
        nums, dens = [], []
        for name in fld.names:
            img = fld.coerce(images[name]) if name in images else fld.gen(name)
            nums.append(img.num)
            dens.append(img.den)
        if all(d == fld._one for d in dens):
            num = self.num.compose(*nums)
            den = self.den.compose(*nums)
            if den.is_zero():
                raise ZeroDivisionError(f"denominator {self.den_text()} vanishes")
            return Scalar(fld, num, den)
        # general case: evaluate term by term
        gens = [Scalar._raw(fld, a, b) for a, b in zip(nums, dens)]
        top = _poly_eval(fld, self.num, gens)
        bottom = _poly_eval(fld, self.den, gens)
        if bottom.is_zero():
            raise ZeroDivisionError(f"denominator {self.den_text()} vanishes")
        return top / bottom

    # -- text ------------------------------------------------------------
    def num_text(self) -> str:
        return _poly_text(self.field, self.num)

    def den_text(self) -> str:
        return _poly_text(self.field, self.den)

    def __str__(self):
        fld = self.field
        num = _poly_text(fld, self.num)
        if self.den == fld._one:
            return num
        if len(self.num) > 1:
            num = f"({num})"
        den = _poly_text(fld, self.den)
        if len(self.den) > 1 or "*" in den:
            den = f"({den})"
        return f"{num} / {den}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _to_fmpq(v) -> fmpq:
    v = Fraction(v)
    return fmpq(v.numerator, v.denominator)


def _normalize(fld, num, den):
    if num.is_zero():
        return num, fld._one
    g = num.gcd(den)
    if g != fld._one:
        num = num / g
        den = den / g
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def _mul(fld, a, b, c, d):
    # (a/b)*(c/d) with a/b and c/d reduced: cancel crosswise only
    if a.is_zero() or c.is_zero():
        return fld.zero
    one = fld._one
    if b != one and c != one:
        g = c.gcd(b)
        if g != one:
            c, b = c / g, b / g
    if d != one and a != one:
        g = a.gcd(d)
        if g != one:
            a, d = a / g, d / g
    num, den = a * c, b * d
    lc = den.leading_coefficient()
    if lc != 1:
        num, den = num / lc, den / lc
    return Scalar._raw(fld, num, den)


def _add(x: Scalar, c, d):
    fld = x.field
    a, b = x.num, x.den
    one = fld._one
    if b == one and d == one:
        return Scalar._raw(fld, a + c, one)
    if b == d:
        return Scalar(fld, a + c, b)
    g = b.gcd(d)
    if g == one:
        return Scalar._raw(fld, a * d + c * b, b * d)
    bg, dg = b / g, d / g
    num = a * dg + c * bg
    den = b * dg
    return Scalar(fld, num, den)


def _poly_eval(fld, poly, gens):
    total = fld.zero
    for exps, coeff in poly.terms():
        term = fld.const(Fraction(int(coeff.p), int(coeff.q)))
        for g, e in zip(gens, exps):
            if e:
                term = term * g ** e
        total = total + term
    return total


def _mono_text(fld, exps) -> str:
    # variables listed from smallest (x1) to largest (hp)
    parts = []
    for name, e in reversed(list(zip(fld.names, exps))):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _poly_text(fld, poly) -> str:
    terms = list(poly.terms())
    if not terms:
        return "0"
    out = []
    # flint lists terms in decreasing order; canonical text is increasing
    for k, (exps, coeff) in enumerate(reversed(terms)):
        mono = _mono_text(fld, exps)
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
