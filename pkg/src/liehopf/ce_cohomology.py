"""Chevalley-Eilenberg cochains of ``h`` with values in finite-dimensional modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .exact_linalg import SparseMatrix, nullspace_basis, rank, solve
from .lie_core import LiePair, quotient_action_matrix

__all__ = [
    "HModule",
    "CECochain",
    "ModuleError",
    "trivial_module",
    "quotient_module",
    "dual_module",
    "tensor_module",
    "end_module",
    "atiyah_coefficient_module",
    "ce_differential",
    "ce_matrix",
    "cohomology_dim",
    "coboundary_witness",
]


class ModuleError(ValueError):
    pass


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(m) if a[i][t]) for j in range(p)] for i in range(n)]


def _kron(a, b):
    ra, ca, rb, cb = len(a), len(a[0]) if a else 0, len(b), len(b[0]) if b else 0
    return [[a[i // rb][j // cb] * b[i % rb][j % cb] for j in range(ca * cb)] for i in range(ra * rb)]


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _madd(a, b, s=1):
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


@dataclass
class HModule:
    """A finite-dimensional ``h``-module: one ``dim x dim`` matrix per ``h``-basis element."""

    pair: LiePair
    dim: int
    action: list
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if len(self.action) != self.pair.dim_h:
            raise ModuleError(f"need {self.pair.dim_h} action matrices, got {len(self.action)}")
        for a in self.action:
            if len(a) != self.dim or any(len(r) != self.dim for r in a):
                raise ModuleError("action matrix has the wrong shape")
        if self.check:
            bad = self.flatness_defects()
            if bad:
                raise ModuleError(f"action is not flat on basis pairs {bad}")

    def flatness_defects(self) -> list[tuple[int, int]]:
        c = self.pair.structure_constants
        bad = []
        for x, y in combinations(range(self.pair.dim_h), 2):
            lhs = _madd(_matmul(self.action[x], self.action[y]), _matmul(self.action[y], self.action[x]), -1)
            rhs = [[0] * self.dim for _ in range(self.dim)]
            for q in range(self.pair.dim_h):
                if c[x][y][q]:
                    rhs = _madd(rhs, self.action[q], c[x][y][q])
            if lhs != rhs:
                bad.append((x, y))
        return bad

    def act(self, i: int, vec: Sequence) -> list:
        a = self.action[i]
        return [sum(a[r][s] * vec[s] for s in range(self.dim) if vec[s]) for r in range(self.dim)]


def trivial_module(pair: LiePair, dim: int) -> HModule:
    return HModule(pair, dim, [[[0] * dim for _ in range(dim)] for _ in range(pair.dim_h)])


def quotient_module(pair: LiePair) -> HModule:
    """``g/h`` with the induced action, in the canonical complement basis."""
    return HModule(pair, pair.k, [quotient_action_matrix(pair, i) for i in pair.h_indices])


def dual_module(mod: HModule) -> HModule:
    # negative transpose
    acts = [[[-a[j][i] for j in range(mod.dim)] for i in range(mod.dim)] for a in mod.action]
    return HModule(mod.pair, mod.dim, acts)


def tensor_module(m1: HModule, m2: HModule) -> HModule:
    """Leibniz action on ``m1 (x) m2``; basis index ``(i, j) -> i * m2.dim + j``."""
    i1, i2 = _identity(m1.dim), _identity(m2.dim)
    acts = [_madd(_kron(a, i2), _kron(i1, b)) for a, b in zip(m1.action, m2.action)]
    return HModule(m1.pair, m1.dim * m2.dim, acts)


def end_module(mod: HModule) -> HModule:
    """``End(M) = M (x) M*``; entry ``(i, j)`` of an endomorphism sits at ``i * dim + j``."""
    return tensor_module(mod, dual_module(mod))


def atiyah_coefficient_module(pair: LiePair) -> HModule:
    """``(g/h)* (x) End(g/h)``; coordinate ``(a, i, j)`` is entry ``(i, j)`` of ``phi(b_a)``."""
    q = quotient_module(pair)
    return tensor_module(dual_module(q), end_module(q))


@dataclass
class CECochain:
    """A ``p``-cochain: values on strictly increasing ``p``-tuples of ``h``-basis indices."""

    degree: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        for t in self.values:
            if len(t) != max(self.degree, 0) or any(a >= b for a, b in zip(t, t[1:])):
                raise ValueError(f"cochain key {t} is not a strictly increasing {self.degree}-tuple")
        self.values = {t: list(v) for t, v in self.values.items() if any(v)}

    def value(self, t: tuple, dim: int) -> list:
        return self.values.get(t, [0] * dim)

    def __eq__(self, other):
        if not isinstance(other, CECochain):
            return NotImplemented
        return self.degree == other.degree and self.values == other.values

    def is_zero(self) -> bool:
        return not self.values


def _insert_sorted(q: int, rest: tuple):
    """Return ``(sign, tuple)`` sorting ``(q,) + rest``, or ``(0, None)`` on repetition."""
    if q in rest:
        return 0, None
    before = sum(1 for r in rest if r < q)
    return (-1) ** before, tuple(sorted(rest + (q,)))


def _check_module(mod: HModule, c: CECochain):
    if c.degree < 0 or c.degree > mod.pair.dim_h and c.values:
        raise ValueError("cochain degree out of range")
    for v in c.values.values():
        if len(v) != mod.dim:
            raise ModuleError(f"cochain value has length {len(v)}, module has dim {mod.dim}")


def ce_differential(mod: HModule, c: CECochain) -> CECochain:
    """(dc)(X_0..X_p) = sum_i (-1)^i X_i c(..^i..) + sum_{i<j} (-1)^(i+j) c([X_i,X_j], ..^i..^j..)."""
    _check_module(mod, c)
    p = c.degree
    m = mod.pair.dim_h
    consts = mod.pair.structure_constants
    dim = mod.dim
    out = {}
    for J in combinations(range(m), p + 1):
        val = [0] * dim
        for i, ji in enumerate(J):
            rest = J[:i] + J[i + 1:]
            v = c.values.get(rest)
            if v:
                acted = mod.act(ji, v)
                s = (-1) ** i
                val = [a + s * b for a, b in zip(val, acted)]
        for i in range(p + 1):
            for l in range(i + 1, p + 1):
                rest = J[:i] + J[i + 1:l] + J[l + 1:]
                row = consts[J[i]][J[l]]
                for q in range(m):
                    if not row[q]:
                        continue
                    sign, t = _insert_sorted(q, rest)
                    if not sign:
                        continue
                    v = c.values.get(t)
                    if v:
                        s = (-1) ** (i + l) * sign * row[q]
                        val = [a + s * b for a, b in zip(val, v)]
        if any(val):
            out[J] = val
    return CECochain(p + 1, out)


def _cochain_index(m: int, p: int, dim: int):
    tuples = list(combinations(range(m), p))
    return tuples, {t: n for n, t in enumerate(tuples)}


def cochain_to_vector(c: CECochain, m: int, dim: int) -> list:
    tuples, _ = _cochain_index(m, c.degree, dim)
    out = []
    for t in tuples:
        out.extend(c.value(t, dim))
    return out


def vector_to_cochain(vec: Sequence, p: int, m: int, dim: int) -> CECochain:
    tuples, _ = _cochain_index(m, p, dim)
    return CECochain(p, {t: list(vec[n * dim:(n + 1) * dim]) for n, t in enumerate(tuples)})


def ce_matrix(mod: HModule, p: int) -> SparseMatrix:
    """Matrix of ``d: C^p -> C^(p+1)`` in the basis ``(tuple, module index)``."""
    m, dim = mod.pair.dim_h, mod.dim
    src, _ = _cochain_index(m, p, dim)
    _, dst = _cochain_index(m, p + 1, dim)
    columns = []
    for t in src:
        for i in range(dim):
            e = [0] * dim
            e[i] = 1
            image = ce_differential(mod, CECochain(p, {t: e}))
            col = {}
            for J, v in image.values.items():
                for r, x in enumerate(v):
                    if x:
                        col[dst[J] * dim + r] = x
            columns.append(col)
    return SparseMatrix.from_columns(comb(m, p + 1) * dim, columns)


def cohomology_dim(mod: HModule, p: int) -> int:
    m = mod.pair.dim_h
    if p < 0 or p > m:
        return 0
    n_p = comb(m, p) * mod.dim
    kernel = n_p - rank(ce_matrix(mod, p)) if n_p else 0
    image = rank(ce_matrix(mod, p - 1)) if p >= 1 else 0
    return kernel - image


def cocycle_basis(mod: HModule, p: int) -> list[CECochain]:
    m = mod.pair.dim_h
    return [vector_to_cochain(v, p, m, mod.dim) for v in nullspace_basis(ce_matrix(mod, p))]


def coboundary_witness(mod: HModule, c: CECochain) -> CECochain | None:
    """A cochain ``phi`` with ``d phi = c``, or ``None`` when ``c`` is not exact."""
    if not ce_differential(mod, c).is_zero():
        raise ValueError("input is not a cocycle")
    p, m, dim = c.degree, mod.pair.dim_h, mod.dim
    if c.is_zero():
        return CECochain(p - 1)
    if p == 0:
        return None
    mat = ce_matrix(mod, p - 1)
    if mat.cols == 0:
        return None
    x = solve(mat, cochain_to_vector(c, m, dim))
    if x is None:
        return None
    phi = vector_to_cochain([v.numerator if v.denominator == 1 else v for v in map(Fraction, x)], p - 1, m, dim)
    if ce_differential(mod, phi) != c:
        raise ArithmeticError("coboundary witness failed exact re-verification")
    return phi
