"""The enveloping algebra U(g) in a PBW basis and the quotient coalgebra D1 = U(g)/U(g)h.

Generators are normal-ordered with the complement of ``h`` first and ``h``
last, so the left ideal ``U(g)h`` is spanned by the normal monomials with a
nonzero ``h``-exponent and passing to ``D1`` just drops those monomials.

Monomials are exponent vectors indexed by PBW *position*: positions
``0..k-1`` are the complement generators ``x_m..x_{n-1}`` and positions
``k..n-1`` are ``x_0..x_{m-1}`` (``m = dim h``, ``k = dim g/h``).  A ``D1``
monomial is just the complement part, an exponent vector of length ``k``.
"""

from __future__ import annotations

import threading
from itertools import product
from math import comb
from typing import Sequence

from .lie_core import LiePair
from .linear import LinearCombination, add_into, format_terms

__all__ = [
    "UEAElement",
    "D1Element",
    "TensorPair",
    "EnvelopingAlgebra",
    "graded_lex_key",
    "monomials_up_to_weight",
]


def graded_lex_key(exps: Sequence[int]):
    """Sort key: total degree first, then larger leading exponents first."""
    return (sum(exps), tuple(-e for e in exps))


def monomials_up_to_weight(k: int, w: int) -> list[tuple]:
    out = [e for e in product(range(w + 1), repeat=k) if sum(e) <= w]
    out.sort(key=graded_lex_key)
    return out


class UEAElement(LinearCombination):
    """Element of U(g): ``{PBW exponent vector: coefficient}``."""

    __slots__ = ()

    @property
    def weight(self) -> int:
        return max((sum(k) for k in self.terms), default=0)


class D1Element(LinearCombination):
    """Element of D1 in the basis of complement-only PBW monomials."""

    __slots__ = ()

    @property
    def weight(self) -> int:
        return max((sum(k) for k in self.terms), default=0)


class TensorPair(LinearCombination):
    """Element of a two-fold tensor product, keyed by ``(left_key, right_key)``."""

    __slots__ = ()

    def swap(self) -> "TensorPair":
        return TensorPair({(b, a): v for (a, b), v in self.terms.items()})


class EnvelopingAlgebra:
    """PBW arithmetic in U(g) for a fixed :class:`LiePair`, plus the D1 quotient.

    The straightening memo is the only mutable state; it is guarded by a lock
    so one instance can be shared between threads.
    """

    def __init__(self, pair: LiePair):
        self.pair = pair
        m, n = pair.dim_h, pair.dim_g
        self.k = pair.k
        self.n = n
        # generator index at each PBW position
        self.order = tuple(range(m, n)) + tuple(range(m))
        self.position = {g: p for p, g in enumerate(self.order)}
        c = pair.structure_constants
        self._br = [
            [
                tuple((self.position[r], c[self.order[p]][self.order[q]][r]) for r in range(n) if c[self.order[p]][self.order[q]][r])
                for q in range(n)
            ]
            for p in range(n)
        ]
        self._left_memo: dict = {}
        self._act_memo: dict = {}
        self._cop_memo: dict = {}
        self._lock = threading.Lock()

    # ------------------------------------------------------------------ U(g)

    def generator(self, index: int) -> UEAElement:
        """The basis vector ``x_index`` of g as an element of U(g)."""
        e = [0] * self.n
        e[self.position[index]] = 1
        return UEAElement({tuple(e): 1})

    def from_vector(self, vec: Sequence) -> UEAElement:
        out = {}
        for i, v in enumerate(vec):
            if v:
                e = [0] * self.n
                e[self.position[i]] = 1
                out[tuple(e)] = v
        return UEAElement(out)

    def one(self) -> UEAElement:
        return UEAElement({(0,) * self.n: 1})

    def _left_mul_gen(self, p: int, exps: tuple) -> dict:
        """Normal form of ``x_p * x^exps`` (positions, not generator indices)."""
        key = (p, exps)
        hit = self._left_memo.get(key)
        if hit is not None:
            return hit
        first = next((q for q, e in enumerate(exps) if e), None)
        if first is None or p <= first:
            e = list(exps)
            e[p] += 1
            result = {tuple(e): 1}
        else:
            # x_p x_a rest = x_a (x_p rest) + [x_p, x_a] rest
            rest = list(exps)
            rest[first] -= 1
            rest = tuple(rest)
            result: dict = {}
            for mono, coeff in self._left_mul_gen(p, rest).items():
                for mono2, coeff2 in self._left_mul_gen(first, mono).items():
                    add_into(result, mono2, coeff * coeff2)
            for r, coeff in self._br[p][first]:
                for mono2, coeff2 in self._left_mul_gen(r, rest).items():
                    add_into(result, mono2, coeff * coeff2)
        with self._lock:
            self._left_memo[key] = result
        return result

    def _left_mul_monomial(self, left: tuple, right: dict) -> dict:
        word = [p for p, e in enumerate(left) for _ in range(e)]
        cur = right
        for p in reversed(word):
            nxt: dict = {}
            for mono, coeff in cur.items():
                for mono2, coeff2 in self._left_mul_gen(p, mono).items():
                    add_into(nxt, mono2, coeff * coeff2)
            cur = nxt
        return cur

    def multiply(self, u: UEAElement, v: UEAElement) -> UEAElement:
        """Associative product in U(g), returned in PBW normal form."""
        out: dict = {}
        for mono, coeff in u.terms.items():
            for mono2, coeff2 in self._left_mul_monomial(mono, v.terms).items():
                add_into(out, mono2, coeff * coeff2)
        return UEAElement(out)

    def coproduct_u(self, u: UEAElement) -> TensorPair:
        """Delta on U(g); generators are primitive.

        A normal monomial is an ordered product of primitives, and every
        ordered sub-word of it is again normal, so the legs need no
        straightening.
        """
        out: dict = {}
        for mono, coeff in u.terms.items():
            for left in product(*(range(e + 1) for e in mono)):
                c = coeff
                for e, l in zip(mono, left):
                    c *= comb(e, l)
                right = tuple(e - l for e, l in zip(mono, left))
                add_into(out, (tuple(left), right), c)
        return TensorPair(out)

    def reduce(self, u: UEAElement) -> D1Element:
        """Project U(g) -> D1 by dropping monomials with a nonzero h-exponent."""
        k = self.k
        return D1Element({mono[:k]: c for mono, c in u.terms.items() if not any(mono[k:])})

    def lift(self, p: D1Element) -> UEAElement:
        pad = (0,) * (self.n - self.k)
        return UEAElement({mono + pad: c for mono, c in p.terms.items()})

    # -------------------------------------------------------------------- D1

    def _check_h(self, X: Sequence):
        if len(X) != self.n:
            raise ValueError(f"h-vector has length {len(X)}, expected {self.n}")
        if any(X[i] for i in self.pair.complement_indices):
            raise ValueError("element is not in the subalgebra h")

    def act_d1_basis(self, i: int, mono: tuple) -> dict:
        """``x_i . mono`` in D1 for an h-basis index ``i`` (cached)."""
        key = (i, mono)
        hit = self._act_memo.get(key)
        if hit is None:
            pad = (0,) * (self.n - self.k)
            prod_ = self._left_mul_gen(self.position[i], mono + pad)
            k = self.k
            hit = {m[:k]: c for m, c in prod_.items() if not any(m[k:])}
            with self._lock:
                self._act_memo[key] = hit
        return hit

    def act_d1(self, X: Sequence, p: D1Element) -> D1Element:
        """h-action on D1: ``reduce(X * lift(p))``."""
        self._check_h(X)
        out: dict = {}
        for i in self.pair.h_indices:
            if not X[i]:
                continue
            for mono, coeff in p.terms.items():
                for mono2, coeff2 in self.act_d1_basis(i, mono).items():
                    add_into(out, mono2, X[i] * coeff * coeff2)
        return D1Element(out)

    def coproduct_d1_basis(self, mono: tuple) -> tuple:
        """Delta of a D1 basis monomial as a tuple of ``(left, right, coeff)``."""
        hit = self._cop_memo.get(mono)
        if hit is None:
            k = self.k
            lifted = self.coproduct_u(self.lift(D1Element({mono: 1})))
            terms = []
            for (a, b), c in lifted.terms.items():
                if any(a[k:]) or any(b[k:]):
                    continue
                terms.append((a[:k], b[:k], c))
            hit = tuple(terms)
            with self._lock:
                self._cop_memo[mono] = hit
        return hit

    def coproduct_d1(self, p: D1Element) -> TensorPair:
        out: dict = {}
        for mono, coeff in p.terms.items():
            for a, b, c in self.coproduct_d1_basis(mono):
                add_into(out, (a, b), coeff * c)
        return TensorPair(out)

    def counit_d1(self, p: D1Element):
        return p.coefficient((0,) * self.k)

    @staticmethod
    def weight(p: D1Element) -> int:
        return p.weight

    def d1_basis_up_to_weight(self, w: int) -> list[tuple]:
        return monomials_up_to_weight(self.k, w)

    def d1_one(self) -> D1Element:
        return D1Element({(0,) * self.k: 1})

    def d1_generator(self, a: int) -> D1Element:
        """Class of the ``a``-th complement basis vector."""
        e = [0] * self.k
        e[a] = 1
        return D1Element({tuple(e): 1})

    # -------------------------------------------------------------- printing

    def _fmt_mono(self, mono: tuple, names: Sequence[str]) -> str:
        parts = []
        for p, e in enumerate(mono):
            if e == 1:
                parts.append(names[p])
            elif e:
                parts.append(f"{names[p]}^{e}")
        return "·".join(parts) if parts else "1"

    def format(self, element: LinearCombination) -> str:
        """Render a U(g) or D1 element, e.g. ``"3/2·f^2·h + f"``."""
        names = [self.pair.basis_names[g] for g in self.order]
        items = sorted(element.terms.items(), key=lambda kv: graded_lex_key(kv[0]), reverse=True)
        return format_terms(items, lambda m: self._fmt_mono(m, names))
