"""Generic machinery for checking algebra relations on a fixed-point basis.

An *action* is any object with a ``field`` attribute and a method
``act(op, pattern) -> dict`` returning the image of a basis vector under an
operator.  Operators are hashable keys whose meaning is up to the action.

A relation instance is a formal linear combination of words in operators
that should vanish; it is evaluated on basis vectors by
:class:`WordEvaluator`, which memoizes partial products so that the many
instances sharing a word suffix are cheap.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .vectors import combine


@dataclass(frozen=True)
class Instance:
    relation: str
    indices: tuple  # ((name, value), ...)
    terms: tuple  # ((Scalar, word), ...) whose sum must vanish
    extra: dict = dc_field(default_factory=dict, compare=False, hash=False)

    def index_dict(self):
        return dict(self.indices)


class WordEvaluator:
    def __init__(self, action):
        self.action = action
        self.field = action.field
        self._ops = {}
        self._words = {}

    def op(self, op, pattern):
        key = (op, pattern)
        hit = self._ops.get(key)
        if hit is None:
            hit = self.action.act(op, pattern)
            self._ops[key] = hit
        return hit

    def apply(self, word, pattern) -> dict:
        """The image of a basis vector under a word; the last letter acts first."""
        if not word:
            return {pattern: self.field.one}
        key = (word, pattern)
        hit = self._words.get(key)
        if hit is not None:
            return hit
        first = self.op(word[-1], pattern)
        if len(word) == 1:
            res = first
        else:
            rest = word[:-1]
            res = combine(self.field, [(c, self.apply(rest, q)) for q, c in first.items()])
        self._words[key] = res
        return res

    def evaluate(self, terms, pattern) -> dict:
        return combine(self.field, [(c, self.apply(w, pattern)) for c, w in terms])

    def clear(self):
        self._ops.clear()
        self._words.clear()


def commutator(a, b, coeff=1):
    """Terms of coeff*[a, b] for words a and b."""
    return [(coeff, a + b), (-coeff, b + a)]


def residue_text(vec: dict) -> list:
    out = []
    for p, c in sorted(vec.items(), key=lambda t: (t[0].total(), t[0].degree(), t[0].sort_key())):
        out.append({"pattern": p.to_json(), "coeff": str(c)})
    return out


def check_instances(evaluator, instances, patterns, transform=None):
    """Evaluate every instance on every basis pattern; returns report entries.

    ``transform`` may post-process the residue dictionary (for instance to
    specialize it); it must return a dictionary of nonzero values.
    """
    entries = []
    for pat in patterns:
        for inst in instances:
            res = evaluator.evaluate(inst.terms, pat)
            if transform is not None and res:
                res = transform(res)
            entry = {
                "relation": inst.relation,
                "indices": inst.index_dict(),
                "basis_pattern": pat.to_json(),
                "status": "pass" if not res else "fail",
            }
            if res:
                entry["lhs_minus_rhs"] = residue_text(res)
            entries.append(entry)
    return entries


def yangian_instances(fld, ks, cartan, R, X, H, *, adjacent, twisted=None, include_twisted_plain=False):
    """Instances of the Yangian relations with all indices r, s, p <= R.

    ``X(sign, k, r, shifted)`` and ``H(k, r, shifted)`` produce operator keys
    in the Yangian's own labelling.  ``adjacent(k, l)`` tells whether k and l
    are linked in the Dynkin diagram.  For ordered pairs in ``twisted`` the
    two shift relations use the shifted series for whichever index is the
    distinguished one (reported by ``twisted`` as a dict pair -> index).
    """
    h = fld.h
    twisted = twisted or {}
    out = []
    ks = list(ks)

    def H0(k, r):
        return H(k, r, False)

    # Cartan part commutes
    for k in ks:
        for l in ks:
            if l < k:
                continue
            for r in range(R + 1):
                for s in range(R + 1):
                    out.append(Instance("hh_commute", (("k", k), ("l", l), ("r", r), ("s", s)),
                                        tuple(commutator((H0(k, r),), (H0(l, s),)))))
    for sign, sg in (("+", 1), ("-", -1)):
        for k in ks:
            for l in ks:
                a = cartan(k, l)
                for s in range(R + 1):
                    x = (X(sign, l, s, False),)
                    terms = commutator((H0(k, 0),), x) + [(-sg * a, x)]
                    out.append(Instance("h0_x", (("sign", sign), ("k", k), ("l", l), ("s", s)), tuple(terms)))
        # shift relation between h and x
        for k in ks:
            for l in ks:
                a = cartan(k, l)
                tw = twisted.get((k, l))
                variants = [(tw, "h_x_shift_twisted" if tw else "h_x_shift")]
                if tw and include_twisted_plain:
                    variants.append((None, "h_x_shift_plain"))
                for twist, name in variants:
                    hk = lambda r: (H(k, r, twist == k),)
                    xl = lambda s: (X(sign, l, s, twist == l),)
                    for r in range(R + 1):
                        for s in range(R + 1):
                            terms = (
                                commutator(hk(r + 1), xl(s), 2)
                                + commutator(hk(r), xl(s + 1), -2)
                                + [(-sg * a * h, hk(r) + xl(s)), (-sg * a * h, xl(s) + hk(r))]
                            )
                            out.append(Instance(name, (("sign", sign), ("k", k), ("l", l), ("r", r), ("s", s)),
                                                tuple(terms)))
        # shift relation between two x's (symmetric in the pair, so k <= l)
        for k in ks:
            for l in ks:
                if l < k:
                    continue
                a = cartan(k, l)
                tw = twisted.get((k, l)) or twisted.get((l, k))
                variants = [(tw, "x_x_shift_twisted" if tw else "x_x_shift")]
                if tw and include_twisted_plain:
                    variants.append((None, "x_x_shift_plain"))
                for twist, name in variants:
                    xk = lambda r: (X(sign, k, r, twist == k),)
                    xl = lambda s: (X(sign, l, s, twist == l),)
                    for r in range(R + 1):
                        for s in range(R + 1):
                            terms = (
                                commutator(xk(r + 1), xl(s), 2)
                                + commutator(xk(r), xl(s + 1), -2)
                                + [(-sg * a * h, xk(r) + xl(s)), (-sg * a * h, xl(s) + xk(r))]
                            )
                            out.append(Instance(name, (("sign", sign), ("k", k), ("l", l), ("r", r), ("s", s)),
                                                tuple(terms)))
        # Serre relations; the expression is symmetric in (r, p), so p <= r
        for k in ks:
            for l in ks:
                if k == l or not adjacent(k, l):
                    continue
                for r in range(R + 1):
                    for p in range(r + 1):
                        for s in range(R + 1):
                            xk_r = (X(sign, k, r, False),)
                            xk_p = (X(sign, k, p, False),)
                            xl_s = (X(sign, l, s, False),)
                            terms = []
                            for A, B in ((xk_r, xk_p), (xk_p, xk_r)):
                                # [A, [B, C]] = ABC - ACB - BCA + CBA
                                terms += [(1, A + B + xl_s), (-1, A + xl_s + B), (-1, B + xl_s + A), (1, xl_s + B + A)]
                            out.append(Instance("serre", (("sign", sign), ("k", k), ("l", l), ("r", r), ("p", p), ("s", s)),
                                                tuple(terms)))
    # the x+ x- commutator
    for k in ks:
        for l in ks:
            for r in range(R + 1):
                for s in range(R + 1):
                    terms = commutator((X("+", k, r, False),), (X("-", l, s, False),))
                    if k == l:
                        terms.append((-1, (H0(k, r + s),)))
                    out.append(Instance("xplus_xminus", (("k", k), ("l", l), ("r", r), ("s", s)), tuple(terms)))
    return [Instance(i.relation, i.indices, tuple((fld.coerce(c), w) for c, w in i.terms)) for i in out]
