"""Connections on g/h extending the h-action, their curvature and the Atiyah cocycle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ce_cohomology import (
    CECochain,
    HModule,
    atiyah_coefficient_module,
    ce_differential,
    coboundary_witness,
    cohomology_dim,
)
from .exact_linalg import format_rational
from .lie_core import LiePair, bracket, quotient_action_matrix

__all__ = [
    "Connection",
    "AtiyahCocycle",
    "AtiyahError",
    "canonical_connection",
    "curvature",
    "atiyah_cocycle",
    "class_is_nonzero",
    "independence_check",
    "atiyah_report",
]


class AtiyahError(ValueError):
    pass


def _zeros(k):
    return [[0] * k for _ in range(k)]


def _mm(a, b):
    k = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(k)] for i in range(k)]


def _msub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


@dataclass
class Connection:
    """``nabla[i]`` is the ``k x k`` matrix of ``nabla_{x_i}`` on the canonical basis of g/h."""

    pair: LiePair
    nabla: list

    def __post_init__(self):
        p = self.pair
        if len(self.nabla) != p.dim_g:
            raise AtiyahError(f"need {p.dim_g} connection matrices, got {len(self.nabla)}")
        for a in self.nabla:
            if len(a) != p.k or any(len(r) != p.k for r in a):
                raise AtiyahError("connection matrix has the wrong shape")
        for i in p.h_indices:
            if self.nabla[i] != quotient_action_matrix(p, i):
                raise AtiyahError(f"nabla on h-direction {p.basis_names[i]} does not extend the h-action")

    def along(self, x: Sequence) -> list:
        k = self.pair.k
        out = _zeros(k)
        for i, xi in enumerate(x):
            if xi:
                m = self.nabla[i]
                out = [[out[r][c] + xi * m[r][c] for c in range(k)] for r in range(k)]
        return out


def canonical_connection(pair: LiePair, free_params: Sequence | None = None) -> Connection:
    """Connection forced on h by the quotient action; complement directions take ``free_params``.

    ``free_params`` holds one ``k x k`` matrix per complement basis vector
    (default: all zero).
    """
    k = pair.k
    if free_params is None:
        free_params = [_zeros(k) for _ in range(k)]
    if len(free_params) != k or any(len(m) != k or any(len(r) != k for r in m) for m in free_params):
        raise AtiyahError(f"free_params must be {k} matrices of size {k}x{k}")
    nabla = [quotient_action_matrix(pair, i) for i in pair.h_indices]
    nabla += [[list(r) for r in m] for m in free_params]
    return Connection(pair, nabla)


def curvature(conn: Connection, x: Sequence, y: Sequence) -> list:
    """``R(x, y) = nabla_x nabla_y - nabla_y nabla_x - nabla_[x,y]``."""
    nx, ny = conn.along(x), conn.along(y)
    nxy = conn.along(bracket(conn.pair, x, y))
    return _msub(_msub(_mm(nx, ny), _mm(ny, nx)), nxy)


@dataclass
class AtiyahCocycle:
    """``R[X][a]`` is the endomorphism ``R(x_X, b_a)`` of g/h; ``cochain`` is the same data as a CE 1-cochain."""

    pair: LiePair
    R: list
    cochain: CECochain
    module: HModule


def atiyah_cocycle(conn: Connection) -> AtiyahCocycle:
    p = conn.pair
    k, m = p.k, p.dim_h
    for X in p.h_indices:
        for Y in p.h_indices:
            if any(any(r) for r in curvature(conn, p.basis_vector(X), p.basis_vector(Y))):
                raise AtiyahError(f"curvature does not vanish on h x h at ({X}, {Y})")
    R = [[curvature(conn, p.basis_vector(X), p.basis_vector(m + a)) for a in range(k)] for X in range(m)]
    module = atiyah_coefficient_module(p)
    values = {}
    for X in range(m):
        vec = [R[X][a][i][j] for a in range(k) for i in range(k) for j in range(k)]
        values[(X,)] = vec
    cochain = CECochain(1, values)
    if not ce_differential(module, cochain).is_zero():
        raise AtiyahError("curvature cochain is not a CE cocycle")
    return AtiyahCocycle(p, R, cochain, module)


def class_is_nonzero(pair: LiePair, conn: Connection):
    """``(True, None)`` if the Atiyah class is nonzero, else ``(False, witness)``."""
    cocycle = atiyah_cocycle(conn)
    witness = coboundary_witness(cocycle.module, cocycle.cochain)
    return (witness is None), witness


def independence_check(pair: LiePair, conn1: Connection, conn2: Connection) -> dict:
    """Find ``phi`` with ``d phi = R_1 - R_2``; raises :class:`AtiyahError` if none exists."""
    c1, c2 = atiyah_cocycle(conn1), atiyah_cocycle(conn2)
    dim = c1.module.dim
    diff = {}
    for t in set(c1.cochain.values) | set(c2.cochain.values):
        a, b = c1.cochain.value(t, dim), c2.cochain.value(t, dim)
        diff[t] = [x - y for x, y in zip(a, b)]
    delta = CECochain(1, diff)
    phi = coboundary_witness(c1.module, delta)
    if phi is None:
        raise AtiyahError("R1 - R2 is not a coboundary")
    vec = phi.value((), dim)
    return {"difference_zero": delta.is_zero(), "witness": [format_rational(v) for v in vec], "witness_found": True}


def _matrix_strings(mat):
    return [[format_rational(v) for v in row] for row in mat]


def atiyah_report(pair: LiePair, conn: Connection | None = None, extra_params: Sequence = ()) -> dict:
    """``{cocycle, is_cocycle, class_nonzero, witness, H1_dim, independence}`` for one connection."""
    conn = conn or canonical_connection(pair)
    cocycle = atiyah_cocycle(conn)
    nonzero, witness = class_is_nonzero(pair, conn)
    table = {
        pair.basis_names[X]: {
            pair.quotient_names[a]: _matrix_strings(cocycle.R[X][a]) for a in range(pair.k)
        }
        for X in range(pair.dim_h)
    }
    indep = []
    for params in extra_params:
        other = canonical_connection(pair, params)
        res = independence_check(pair, conn, other)
        res["free_params"] = [_matrix_strings(m) for m in params]
        indep.append(res)
    w = None
    if witness is not None:
        w = [format_rational(v) for v in witness.value((), cocycle.module.dim)] if witness.degree == 0 else []
    return {
        "cocycle": table,
        "is_cocycle": True,
        "class_nonzero": nonzero,
        "witness": w,
        "H1_dim": cohomology_dim(cocycle.module, 1),
        "independence": indep,
    }
