"""The complex (D, d) of tensor powers of D1 and its Hopf structure maps.

``D^n = D1 (x) ... (x) D1`` (``n`` legs) and ``D^0`` is the scalars.  A basis
tensor is a tuple of legs, each leg a complement exponent vector.  The
finite models used for every rank computation are ``T(F_w D1)``: all legs of
weight at most ``w``, degrees at most ``N`` (plus ``N + 1`` as the target of
the last differential).
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from .exact_linalg import Echelon, SparseMatrix, nullspace_basis, solve
from .lie_core import LiePair
from .linear import LinearCombination, add_into, format_terms
from .pbw import D1Element, EnvelopingAlgebra, TensorPair, graded_lex_key

__all__ = [
    "DTensor",
    "TruncationSpec",
    "PolyDifferentialComplex",
    "cup",
    "shuffle_coproduct",
    "antipode",
    "unit",
    "counit",
    "twisted_product",
    "CONVENTIONS",
]

logger = logging.getLogger(__name__)

CONVENTIONS = ("paper", "standard")


class DTensor(LinearCombination):
    """Element of ``D = sum_n D^n`` keyed by tuples of legs.

    ``degree`` is the common number of legs; it is stored explicitly so the
    zero tensor of a given degree keeps it, and is ``None`` for a sum
    spanning several degrees.
    """

    __slots__ = ("degree",)

    def __init__(self, terms=None, degree: int | None = None):
        super().__init__(terms)
        lengths = {len(k) for k in self.terms}
        if len(lengths) == 1:
            (only,) = lengths
            if degree is not None and degree != only:
                raise ValueError(f"terms of degree {only} in a tensor declared of degree {degree}")
            degree = only
        elif len(lengths) > 1:
            degree = None
        self.degree = degree

    def _new(self, terms):
        return DTensor(terms, self.degree)

    def __add__(self, other):
        out = super().__add__(other)
        if out is NotImplemented:
            return out
        if not out.terms:
            out.degree = self.degree if self.degree == getattr(other, "degree", None) else None
        return out

    @property
    def weight(self) -> int:
        return max((sum(sum(leg) for leg in key) for key in self.terms), default=0)

    @property
    def is_homogeneous(self) -> bool:
        return self.degree is not None

    @classmethod
    def basis(cls, key: tuple) -> "DTensor":
        return cls({key: 1}, len(key))

    @classmethod
    def from_d1(cls, p: D1Element) -> "DTensor":
        return cls({(mono,): c for mono, c in p.terms.items()}, 1)


@dataclass(frozen=True)
class TruncationSpec:
    """Finite model ``T(F_w D1)``: legs of weight ``<= max_weight``, degrees ``<= max_degree``."""

    max_weight: int
    max_degree: int

    def __post_init__(self):
        if self.max_weight < 1 or self.max_degree < 1:
            raise ValueError("truncation needs max_weight >= 1 and max_degree >= 1")


# ---------------------------------------------------------------- pair-free maps


def cup(P: DTensor, Q: DTensor) -> DTensor:
    """``P (x) Q``: concatenation of legs."""
    out: dict = {}
    for a, c in P.terms.items():
        for b, d in Q.terms.items():
            add_into(out, a + b, c * d)
    deg = None if P.degree is None or Q.degree is None else P.degree + Q.degree
    return DTensor(out, deg)


def _shuffle_terms(key: tuple):
    n = len(key)
    for i in range(n + 1):
        for left in combinations(range(n), i):
            inversions = sum(pos - t for t, pos in enumerate(left))
            rest = tuple(r for r in range(n) if r not in left)
            yield tuple(key[s] for s in left), tuple(key[r] for r in rest), -1 if inversions & 1 else 1


def shuffle_coproduct(P: DTensor) -> TensorPair:
    """Sum over (i, j)-shuffles with their signs, keyed by ``(left_legs, right_legs)``."""
    out: dict = {}
    for key, c in P.terms.items():
        for left, right, s in _shuffle_terms(key):
            add_into(out, (left, right), s * c)
    return TensorPair(out)


def _antipode_sign(n: int, convention: str) -> int:
    if convention == "paper":
        e = n * (n - 1) // 2
    elif convention == "standard":
        e = n * (n + 1) // 2
    else:
        raise ValueError(f"unknown antipode convention {convention!r}")
    return -1 if e & 1 else 1


def antipode(P: DTensor, convention: str = "standard") -> DTensor:
    """Reverse the legs with sign ``(-1)^(n(n-1)/2)`` ("paper") or ``(-1)^(n(n+1)/2)`` ("standard")."""
    out = {}
    for key, c in P.terms.items():
        out[key[::-1]] = _antipode_sign(len(key), convention) * c
    return DTensor(out, P.degree)


def unit(r=1) -> DTensor:
    return DTensor({(): r}, 0)


def counit(P: DTensor, convention: str = "graded"):
    """Counit ``D -> scalars``.

    ``"graded"`` projects onto ``D^0``; ``"weight_zero"`` also reads the
    coefficient of ``1 (x) ... (x) 1`` in positive degrees.
    """
    if convention == "graded":
        return P.coefficient(())
    if convention == "weight_zero":
        total = 0
        for key, c in P.terms.items():
            if all(not any(leg) for leg in key):
                total += c
        return total
    raise ValueError(f"unknown counit convention {convention!r}")


def twisted_product(x: TensorPair, y: TensorPair) -> TensorPair:
    """``(a (x) b)(c (x) d) = (-1)^(|b||c|) ac (x) bd`` on tensor pairs of D."""
    out: dict = {}
    for (a, b), u in x.terms.items():
        for (c, d), v in y.terms.items():
            s = -1 if (len(b) * len(c)) & 1 else 1
            add_into(out, (a + c, b + d), s * u * v)
    return TensorPair(out)


def _mu(x: TensorPair) -> DTensor:
    out: dict = {}
    for (a, b), c in x.terms.items():
        add_into(out, a + b, c)
    return DTensor(out)


def _apply_left(x: TensorPair, f: Callable[[DTensor], DTensor]) -> TensorPair:
    out: dict = {}
    for (a, b), c in x.terms.items():
        for a2, c2 in f(DTensor.basis(a)).terms.items():
            add_into(out, (a2, b), c * c2)
    return TensorPair(out)


def _apply_right(x: TensorPair, f: Callable[[DTensor], DTensor], koszul_degree: int = 0) -> TensorPair:
    out: dict = {}
    for (a, b), c in x.terms.items():
        s = -1 if (koszul_degree * len(a)) & 1 else 1
        for b2, c2 in f(DTensor.basis(b)).terms.items():
            add_into(out, (a, b2), s * c * c2)
    return TensorPair(out)


def _format_leg(mono: tuple, names: Sequence[str]) -> str:
    parts = []
    for p, e in enumerate(mono):
        if e == 1:
            parts.append(names[p])
        elif e:
            parts.append(f"{names[p]}^{e}")
    return "·".join(parts) if parts else "1̄"


def format_key(key: tuple, names: Sequence[str]) -> str:
    if not key:
        return "1"
    return "⊗".join(_format_leg(leg, names) for leg in key)


def tensor_sort_key(key: tuple):
    return (len(key), sum(sum(leg) for leg in key), tuple(graded_lex_key(leg) for leg in key))


# ------------------------------------------------------------- the complex


class PolyDifferentialComplex:
    """``(D, d)`` for one Lie pair, with truncated models and verification reports."""

    def __init__(self, pair: LiePair, uea: EnvelopingAlgebra | None = None):
        self.pair = pair
        self.uea = uea or EnvelopingAlgebra(pair)
        self.k = pair.k
        self.one_leg = (0,) * self.k
        self._d_memo: dict = {}

    # ---- operations

    def _d_basis(self, key: tuple) -> dict:
        hit = self._d_memo.get(key)
        if hit is not None:
            return hit
        n = len(key)
        out: dict = {}
        if n:
            one = self.one_leg
            add_into(out, (one,) + key, 1)
            for i, leg in enumerate(key):
                s = 1 if i & 1 else -1  # (-1)^(i+1)
                head, tail = key[:i], key[i + 1:]
                for a, b, c in self.uea.coproduct_d1_basis(leg):
                    add_into(out, head + (a, b) + tail, s * c)
            add_into(out, key + (one,), -1 if (n + 1) & 1 else 1)
        if len(self._d_memo) < 200_000:
            self._d_memo[key] = out
        return out

    def differential(self, P: DTensor) -> DTensor:
        """Cobar-type coboundary; zero on ``D^0``."""
        out: dict = {}
        for key, c in P.terms.items():
            for key2, c2 in self._d_basis(key).items():
                add_into(out, key2, c * c2)
        deg = None if P.degree is None else P.degree + 1
        return DTensor(out, deg)

    def act_tensor(self, X: Sequence, P: DTensor) -> DTensor:
        """Leibniz extension of the h-action on D1 across legs."""
        self.uea._check_h(X)
        out: dict = {}
        for i in self.pair.h_indices:
            xi = X[i]
            if not xi:
                continue
            for key, c in P.terms.items():
                for pos, leg in enumerate(key):
                    for leg2, c2 in self.uea.act_d1_basis(i, leg).items():
                        add_into(out, key[:pos] + (leg2,) + key[pos + 1:], xi * c * c2)
        return DTensor(out, P.degree)

    def d1(self, mono: Sequence[int]) -> DTensor:
        return DTensor.basis((tuple(mono),))

    # ---- truncated model

    def d1_basis(self, w: int) -> list[tuple]:
        return self.uea.d1_basis_up_to_weight(w)

    def truncated_basis(self, spec: TruncationSpec, n: int) -> list[tuple]:
        """All ``n``-tuples of D1 basis monomials of weight ``<= w``, lexicographic."""
        if n < 0 or n > spec.max_degree + 1:
            raise ValueError(f"degree {n} outside the truncated model (max {spec.max_degree + 1})")
        return list(product(self.d1_basis(spec.max_weight), repeat=n))

    def in_truncation(self, P: DTensor, spec: TruncationSpec) -> bool:
        return all(
            len(key) <= spec.max_degree + 1 and all(sum(leg) <= spec.max_weight for leg in key)
            for key in P.terms
        )

    def _blocks(self, spec: TruncationSpec, n: int) -> dict[int, list[tuple]]:
        blocks: dict[int, list[tuple]] = defaultdict(list)
        for key in self.truncated_basis(spec, n):
            blocks[sum(sum(leg) for leg in key)].append(key)
        return blocks

    def _block_rank(self, keys: Iterable[tuple]) -> int:
        index: dict = {}
        ech = Echelon()
        for key in keys:
            col = {}
            for key2, c in self._d_basis(key).items():
                col[index.setdefault(key2, len(index))] = c
            ech.add(col)
        return ech.rank

    def differential_rank(self, spec: TruncationSpec, n: int) -> int:
        """Rank of ``d: T^n -> T^(n+1)``, summed over total-weight blocks (d preserves weight)."""
        if n == 0:
            return 0
        return sum(self._block_rank(keys) for keys in self._blocks(spec, n).values())

    def block_ranks(self, spec: TruncationSpec, n: int) -> dict[int, tuple[int, int]]:
        """``{total weight: (block dimension, rank of d on the block)}`` for ``T^n``."""
        return {
            wt: (len(keys), self._block_rank(keys) if n else 0)
            for wt, keys in sorted(self._blocks(spec, n).items())
        }

    def cohomology_report(self, spec: TruncationSpec) -> list[dict]:
        """Exact ranks of ``d`` on the truncated model, degrees ``0..N``.

        ``d`` preserves total weight, so ``T(F_w D1)`` splits into blocks.
        Blocks of total weight ``<= w`` are complete (no leg can exceed
        ``w``) and give ``dim_ker``/``dim_im``/``dim_H``; blocks above ``w``
        are cut off by the truncation and their spurious classes are
        reported separately as ``boundary_H``.
        """
        w = spec.max_weight
        rows = []
        prev: dict[int, tuple[int, int]] = {}
        for n in range(spec.max_degree + 1):
            cur = self.block_ranks(spec, n)
            dim = ker = im = 0
            boundary = 0
            for wt, (size, r) in cur.items():
                h = size - r - prev.get(wt, (0, 0))[1]
                if wt <= w:
                    dim += size
                    ker += size - r
                    im += prev.get(wt, (0, 0))[1]
                else:
                    boundary += h
            rows.append(
                {"degree": n, "dim": dim, "dim_ker": ker, "dim_im": im, "dim_H": ker - im, "boundary_H": boundary}
            )
            prev = cur
        return rows

    def coboundary_witness_dpoly(self, spec: TruncationSpec, c: DTensor) -> DTensor | None:
        """``Q`` in the truncated model with ``dQ = c``, or ``None``."""
        if not c.is_homogeneous and c:
            raise ValueError("witness search needs a homogeneous tensor")
        if not self.in_truncation(c, spec):
            raise ValueError("tensor lies outside the truncated model")
        if self.differential(c):
            raise ValueError("input is not a cocycle")
        n = c.degree if c.degree is not None else 0
        if not c:
            return DTensor({}, max(n - 1, 0))
        if n == 0:
            return None
        blocks = self._blocks(spec, n - 1)
        by_weight: dict[int, dict] = defaultdict(dict)
        for key, v in c.terms.items():
            by_weight[sum(sum(leg) for leg in key)][key] = v
        result: dict = {}
        for wt in sorted(by_weight):
            target = by_weight[wt]
            src = blocks.get(wt, [])
            if not src:
                return None
            index: dict = {}
            for key in sorted(target, key=tensor_sort_key):
                index.setdefault(key, len(index))
            columns = []
            for key in src:
                col = {}
                for key2, v in self._d_basis(key).items():
                    col[index.setdefault(key2, len(index))] = v
                columns.append(col)
            rhs = [0] * len(index)
            for key, v in target.items():
                rhs[index[key]] = v
            x = solve(SparseMatrix.from_columns(len(index), columns), rhs)
            if x is None:
                return None
            for key, v in zip(src, x):
                if v:
                    result[key] = v
        Q = DTensor(result, n - 1)
        if self.differential(Q) != c:
            raise ArithmeticError("coboundary witness failed exact re-verification")
        return Q

    def cocycle_basis(self, spec: TruncationSpec, n: int) -> list[DTensor]:
        """Basis of ``ker d`` on ``T^n`` of the truncated model, block by block."""
        out = []
        blocks = self._blocks(spec, n)
        for wt in sorted(blocks):
            keys = blocks[wt]
            if n == 0:
                out.extend(DTensor.basis(k) for k in keys)
                continue
            index: dict = {}
            columns = []
            for key in keys:
                col = {}
                for key2, v in self._d_basis(key).items():
                    col[index.setdefault(key2, len(index))] = v
                columns.append(col)
            mat = SparseMatrix.from_columns(len(index), columns)
            for vec in nullspace_basis(mat):
                out.append(DTensor({k: v for k, v in zip(keys, vec) if v}, n))
        return out

    # ---- printing

    def format(self, P) -> str:
        names = self.pair.quotient_names
        if isinstance(P, TensorPair):
            items = sorted(P.terms.items(), key=lambda kv: (tensor_sort_key(kv[0][0]), tensor_sort_key(kv[0][1])))
            return format_terms(items, lambda kk: f"({format_key(kk[0], names)})|({format_key(kk[1], names)})")
        items = sorted(P.terms.items(), key=lambda kv: tensor_sort_key(kv[0]))
        return format_terms(items, lambda kk: format_key(kk, names))
