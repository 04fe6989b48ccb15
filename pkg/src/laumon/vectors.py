"""Finite linear combinations of fixed points with Scalar coefficients."""
from __future__ import annotations

from .exactalg import Scalar


class ModuleVector:
    """Element of V or M in the fixed-point basis; zero terms are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {p: c for p, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def basis(cls, pattern, fld):
        return cls({pattern: fld.one})

    def __add__(self, other):
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out[p] + c if p in out else c
        return ModuleVector(out)

    def __neg__(self):
        return ModuleVector({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Scalar):
        return ModuleVector({p: c * s for p, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def items(self):
        """Terms in canonical pattern order."""
        return sorted(self.terms.items(), key=lambda t: (t[0].total(), t[0].degree(), t[0].sort_key()))

    def coeff(self, pattern):
        return self.terms.get(pattern)

    def to_json(self):
        return [{"pattern": p.to_json(), "coeff": str(c)} for p, c in self.items()]

    def __repr__(self):
        return "ModuleVector(" + ", ".join(f"{p}: {c}" for p, c in self.items()) + ")"


def combine(fld, pieces):
    """Sum of coeff * {pattern: value} dictionaries (plain dict arithmetic, used in hot loops)."""
    out = {}
    for coeff, vec in pieces:
        for p, c in vec.items():
            v = c * coeff
            out[p] = out[p] + v if p in out else v
    return {p: c for p, c in out.items() if not c.is_zero()}
