"""Polynomials, rational functions and truncated Laurent series in u.

Coefficients are :class:`Scalar` values.  ``SeriesU`` stores the coefficient
of ``u**(-r)`` under key ``r``; keys may be negative for polynomial parts.
"""
from __future__ import annotations

from collections import Counter

from .scalar import Scalar, ScalarField


class UPoly:
    """Dense polynomial in u; ``coeffs[k]`` is the coefficient of u**k."""

    __slots__ = ("field", "coeffs")

    def __init__(self, fld: ScalarField, coeffs):
        cs = [fld.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = fld
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, fld, roots, lead=None):
        cs = [fld.one if lead is None else fld.coerce(lead)]
        for a in roots:
            # multiply by (u - a)
            nxt = [fld.zero] * (len(cs) + 1)
            for k, c in enumerate(cs):
                nxt[k + 1] = nxt[k + 1] + c
                nxt[k] = nxt[k] - a * c
            cs = nxt
        return cls(fld, cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self) -> Scalar:
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UPoly(self.field, [c + (b[k] if k < len(b) else 0) for k, c in enumerate(a)])

    def __neg__(self):
        return UPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UPoly):
            if self.is_zero() or other.is_zero():
                return UPoly(self.field, [])
            out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return UPoly(self.field, out)
        s = self.field.coerce(other)
        return UPoly(self.field, [c * s for c in self.coeffs])

    __rmul__ = __mul__

    def divmod(self, other: "UPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        fld = self.field
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lead()
        quot = [fld.zero] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c.is_zero():
                continue
            quot[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - c * b
        return UPoly(fld, quot), UPoly(fld, rem[:dq] if dq > 0 else [])

    def monic(self):
        return self * (1 / self.lead())

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def shift(self, s) -> "UPoly":
        """p(u + s), by Horner's scheme."""
        fld = self.field
        s = fld.coerce(s)
        out = UPoly(fld, [])
        lin = UPoly(fld, [s, fld.one])
        for c in reversed(self.coeffs):
            out = out * lin + UPoly(fld, [c])
        return out

    def map_coeffs(self, fn) -> "UPoly":
        return UPoly(self.field, [fn(c) for c in self.coeffs])

    def __call__(self, u):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def __repr__(self):
        return "UPoly(" + " + ".join(f"({c})*u^{k}" for k, c in enumerate(self.coeffs)) + ")"


class RationalU:
    """Reduced rational function N(u)/D(u) with D monic.

    When built from linear factors the factored form is kept alongside and
    used for fast multiplication, shifting and comparison; the expanded
    numerator and denominator are produced on demand.
    """

    __slots__ = ("field", "_num", "_den", "_lead", "_zeros", "_poles")

    def __init__(self, num: UPoly, den: UPoly | None = None):
        fld = num.field
        den = UPoly(fld, [fld.one]) if den is None else den
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = num, UPoly(fld, [fld.one])
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.divmod(g)[0], den.divmod(g)[0]
            inv = 1 / den.lead()
            num, den = num * inv, den * inv
        self.field = fld
        self._num, self._den = num, den
        self._lead = self._zeros = self._poles = None

    @classmethod
    def from_factors(cls, fld: ScalarField, zeros=(), poles=(), lead=None):
        """lead * prod(u - a for a in zeros) / prod(u - b for b in poles)."""
        obj = cls.__new__(cls)
        obj.field = fld
        z, p = Counter(zeros), Counter(poles)
        common = z & p
        obj._zeros = z - common
        obj._poles = p - common
        obj._lead = fld.one if lead is None else fld.coerce(lead)
        if obj._lead.is_zero():
            obj._zeros, obj._poles = Counter(), Counter()
        obj._num = obj._den = None
        return obj

    @classmethod
    def const(cls, fld, c):
        return cls.from_factors(fld, lead=c)

    # -- representation --------------------------------------------------
    @property
    def factored(self) -> bool:
        return self._zeros is not None

    @property
    def numerator(self) -> UPoly:
        if self._num is None:
            self._num = UPoly.from_roots(self.field, _sorted_roots(self._zeros), self._lead)
        return self._num

    @property
    def denominator(self) -> UPoly:
        if self._den is None:
            self._den = UPoly.from_roots(self.field, _sorted_roots(self._poles))
        return self._den

    def zeros(self):
        return _sorted_roots(self._zeros) if self.factored else None

    def poles(self):
        return _sorted_roots(self._poles) if self.factored else None

    def lead(self) -> Scalar:
        return self._lead if self.factored else self.numerator.lead()

    # -- arithmetic ------------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, RationalU):
            other = RationalU.const(self.field, other)
        if self.factored and other.factored:
            return RationalU.from_factors(
                self.field,
                self._zeros + other._zeros,
                self._poles + other._poles,
                self._lead * other._lead,
            )
        return RationalU(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def inverse(self):
        if self.factored:
            if self._lead.is_zero():
                raise ZeroDivisionError("inverse of zero")
            return RationalU.from_factors(self.field, self._poles, self._zeros, 1 / self._lead)
        return RationalU(self.denominator, self.numerator)

    def __truediv__(self, other):
        if not isinstance(other, RationalU):
            other = RationalU.const(self.field, other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = RationalU.const(self.field, 1)
        for _ in range(e):
            out = out * self
        return out

    def __add__(self, other):
        if not isinstance(other, RationalU):
            other = RationalU.const(self.field, other)
        return RationalU(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalU) else RationalU.const(self.field, -other))

    def shift(self, s) -> "RationalU":
        """f(u + s)."""
        s = self.field.coerce(s)
        if self.factored:
            return RationalU.from_factors(
                self.field,
                Counter({a - s: m for a, m in self._zeros.items()}),
                Counter({b - s: m for b, m in self._poles.items()}),
                self._lead,
            )
        return RationalU(self.numerator.shift(s), self.denominator.shift(s))

    def map_coeffs(self, fn) -> "RationalU":
        """Apply a ring map to all coefficients (used for specializations)."""
        if self.factored:
            return RationalU.from_factors(
                self.field,
                Counter(_expand_counter(self._zeros, fn)),
                Counter(_expand_counter(self._poles, fn)),
                fn(self._lead),
            )
        return RationalU(self.numerator.map_coeffs(fn), self.denominator.map_coeffs(fn))

    def __eq__(self, other):
        if not isinstance(other, RationalU):
            if isinstance(other, (int, Scalar)):
                other = RationalU.const(self.field, other)
            else:
                return NotImplemented
        if self.factored and other.factored:
            return (
                self._lead == other._lead
                and self._zeros == other._zeros
                and self._poles == other._poles
            )
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __call__(self, u):
        u = self.field.coerce(u)
        return self.numerator(u) / self.denominator(u)

    # -- expansion at u = infinity ----------------------------------------
    def expand(self, order: int) -> "SeriesU":
        return expand_in_u(self, order)

    def log_derivative(self, order: int) -> "SeriesU":
        """Expansion of f'(u)/f(u) through u**(-order)."""
        fld = self.field
        if self.factored:
            coeffs = {}
            for r in range(1, order + 1):
                acc = fld.zero
                for a, m in self._zeros.items():
                    acc = acc + m * a ** (r - 1)
                for b, m in self._poles.items():
                    acc = acc - m * b ** (r - 1)
                coeffs[r] = acc
            return SeriesU(fld, order, coeffs)
        num, den = self.numerator, self.denominator
        dnum = _derivative(num) * den - num * _derivative(den)
        return expand_in_u(RationalU(dnum, num * den), order)

    def __repr__(self):
        if self.factored:
            z = " ".join(f"(u - ({a}))^{m}" for a, m in sorted(self._zeros.items(), key=lambda t: t[0].key()))
            p = " ".join(f"(u - ({b}))^{m}" for b, m in sorted(self._poles.items(), key=lambda t: t[0].key()))
            return f"RationalU[{self._lead}; {z or '1'} / {p or '1'}]"
        return f"RationalU({self.numerator!r} / {self.denominator!r})"


def _expand_counter(counter, fn):
    out = Counter()
    for a, m in counter.items():
        out[fn(a)] += m
    return out


def _sorted_roots(counter):
    roots = []
    for a in sorted(counter, key=lambda s: s.key()):
        roots.extend([a] * counter[a])
    return roots


def _derivative(p: UPoly) -> UPoly:
    return UPoly(p.field, [k * c for k, c in enumerate(p.coeffs)][1:])


class SeriesU:
    """Truncated Laurent series sum_r c_r u**(-r), known for r <= order."""

    __slots__ = ("field", "order", "coeffs")

    def __init__(self, fld: ScalarField, order: int, coeffs: dict):
        self.field = fld
        self.order = order
        self.coeffs = {r: fld.coerce(c) for r, c in coeffs.items() if r <= order}
        self.coeffs = {r: c for r, c in self.coeffs.items() if not c.is_zero()}

    def low(self) -> int:
        """Smallest key with a nonzero coefficient (0 for the zero series)."""
        return min(self.coeffs, default=0)

    def coeff(self, r: int) -> Scalar:
        if r > self.order:
            raise IndexError(f"coefficient of u^{-r} is beyond the truncation order {self.order}")
        return self.coeffs.get(r, self.field.zero)

    __getitem__ = coeff

    def __eq__(self, other):
        if not isinstance(other, SeriesU):
            return NotImplemented
        if self.order != other.order:
            return False
        return self.coeffs == other.coeffs

    def truncate(self, order: int) -> "SeriesU":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return SeriesU(self.field, order, self.coeffs)

    def __add__(self, other):
        order = min(self.order, other.order)
        keys = set(self.coeffs) | set(other.coeffs)
        return SeriesU(self.field, order, {r: self.coeff(r) + other.coeff(r) for r in keys if r <= order})

    def __neg__(self):
        return SeriesU(self.field, self.order, {r: -c for r, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SeriesU):
            s = self.field.coerce(other)
            return SeriesU(self.field, self.order, {r: c * s for r, c in self.coeffs.items()})
        # positive powers of one factor eat into the precision of the other
        order = min(self.order + min(other.low(), 0), other.order + min(self.low(), 0))
        out = {}
        for r, a in self.coeffs.items():
            for t, b in other.coeffs.items():
                if r + t <= order:
                    out[r + t] = out.get(r + t, self.field.zero) + a * b
        return SeriesU(self.field, order, out)

    __rmul__ = __mul__

    def __repr__(self):
        body = " + ".join(f"({self.coeffs[r]})*u^{-r}" for r in sorted(self.coeffs))
        return f"SeriesU[order={self.order}]({body or '0'})"


def expand_in_u(f: RationalU, order: int) -> SeriesU:
    """Expand N(u)/D(u) at u = infinity through the u**(-order) term."""
    fld = f.field
    num, den = f.numerator, f.denominator
    if num.is_zero():
        return SeriesU(fld, order, {})
    a, b = num.degree, den.degree
    # f = u**(a-b) * (sum_t nhat_t w**t) / (1 + sum_k delta_k w**k), w = 1/u
    nhat = lambda t: num.coeffs[a - t] if 0 <= a - t <= a else fld.zero
    delta = lambda k: den.coeffs[b - k] if 0 <= b - k <= b else fld.zero
    top = order + a - b
    s = []
    for t in range(top + 1):
        acc = nhat(t)
        for k in range(1, min(t, b) + 1):
            acc = acc - delta(k) * s[t - k]
        s.append(acc)
    # coefficient s_t belongs to u**(a-b-t), i.e. key t-(a-b)
    return SeriesU(fld, order, {t - (a - b): c for t, c in enumerate(s)})
