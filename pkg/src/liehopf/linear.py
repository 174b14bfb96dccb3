"""Finite formal linear combinations with exact coefficients."""

from __future__ import annotations

from fractions import Fraction

from .exact_linalg import _normalize, format_rational


class LinearCombination:
    """Mapping ``key -> nonzero coefficient`` with vector-space arithmetic.

    Subclasses fix what a key means (a PBW exponent vector, a tuple of
    tensor legs, ...).  Instances are treated as immutable values.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: _normalize(v) for k, v in (terms or {}).items() if v}

    def _new(self, terms):
        return type(self)(terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, key):
        return self.terms.get(key, 0)

    def __add__(self, other):
        if not isinstance(other, LinearCombination):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._new(out)

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, LinearCombination):
            return NotImplemented
        if isinstance(scalar, str):
            scalar = Fraction(scalar)
        return self._new({k: v * scalar for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._new({k: Fraction(v) / scalar for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, LinearCombination):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"{type(self).__name__}({self.terms!r})"


def add_into(acc: dict, key, value):
    """Accumulate ``value`` at ``key`` in ``acc``, dropping exact zeros."""
    nv = acc.get(key, 0) + value
    if nv:
        acc[key] = nv
    else:
        acc.pop(key, None)


def format_terms(items, fmt_key) -> str:
    """Render ``[(key, coeff), ...]`` as ``"3/2·a + b - 2·c"``."""
    parts = []
    for key, coeff in items:
        body = fmt_key(key)
        mag = abs(coeff)
        if mag == 1:
            text = body
        elif body == "1":
            text = format_rational(mag)
        else:
            text = f"{format_rational(mag)}·{body}"
        sign = "-" if coeff < 0 else "+"
        parts.append((sign, text))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out
