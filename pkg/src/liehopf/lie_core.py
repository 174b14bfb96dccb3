"""Lie pairs ``(g, h)`` given by rational structure constants in an adapted basis.

The subalgebra ``h`` is spanned by the first ``dim_h`` basis vectors; the
images of the remaining vectors form the canonical basis of ``g/h`` used by
every other module.  The anchor of the underlying Lie algebroid is zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .exact_linalg import _normalize, as_rational, format_rational

__all__ = [
    "LiePair",
    "PairValidationError",
    "Violation",
    "validate_pair",
    "bracket",
    "quotient_action",
    "quotient_action_matrix",
    "load_pair",
    "pair_from_dict",
    "pair_to_dict",
    "corpus_path",
    "CORPUS",
]

CORPUS = ("sl2_borel", "heisenberg_center", "solvable2_sub1", "abelian2_sub1")


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" | "jacobi" | "closure" | "shape"
    indices: tuple
    defect: tuple
    message: str

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "indices": list(self.indices),
            "defect": [format_rational(v) for v in self.defect],
            "message": self.message,
        }


class PairValidationError(ValueError):
    """The structure-constant table does not define a Lie pair."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(v.message for v in violations))


@dataclass(frozen=True, eq=False)
class LiePair:
    """A validated Lie pair; build instances with :func:`validate_pair`."""

    dim_g: int
    dim_h: int
    structure_constants: tuple  # c[i][j][k] with [x_i, x_j] = sum_k c[i][j][k] x_k
    basis_names: tuple
    anchor: int = field(default=0, repr=False)  # point base: the anchor is identically zero

    @property
    def k(self) -> int:
        """Dimension of the quotient ``g/h``."""
        return self.dim_g - self.dim_h

    @property
    def h_indices(self) -> range:
        return range(self.dim_h)

    @property
    def complement_indices(self) -> range:
        return range(self.dim_h, self.dim_g)

    @property
    def quotient_names(self) -> tuple:
        return self.basis_names[self.dim_h:]

    def c(self, i: int, j: int) -> tuple:
        return self.structure_constants[i][j]

    def basis_vector(self, i: int) -> list:
        v = [0] * self.dim_g
        v[i] = 1
        return v

    def __eq__(self, other):
        if not isinstance(other, LiePair):
            return NotImplemented
        return (self.dim_g, self.dim_h, self.structure_constants, self.basis_names) == (
            other.dim_g,
            other.dim_h,
            other.structure_constants,
            other.basis_names,
        )

    def __hash__(self):
        return hash((self.dim_g, self.dim_h, self.structure_constants, self.basis_names))


def _bracket_table(c, x, y, n):
    out = [0] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            row = c[i][j]
            for k in range(n):
                if row[k]:
                    out[k] += xi * yj * row[k]
    return out


def validate_pair(table, dim_h: int, basis_names: Sequence[str] | None = None) -> LiePair:
    """Check antisymmetry, the Jacobi identity and closure of ``h``.

    ``table`` is a full ``n x n x n`` array of rationals.  Every violated
    constraint is collected before raising :class:`PairValidationError`.
    A :class:`LiePair` passed in place of ``table`` is re-validated.
    """
    if isinstance(table, LiePair):
        basis_names = basis_names or table.basis_names
        table = table.structure_constants
    n = len(table)
    violations: list[Violation] = []
    if not 0 <= dim_h <= n:
        raise PairValidationError(
            [Violation("shape", (dim_h,), (), f"subalgebra dimension {dim_h} not in [0, {n}]")]
        )
    for i in range(n):
        if len(table[i]) != n or any(len(table[i][j]) != n for j in range(n)):
            raise PairValidationError(
                [Violation("shape", (i,), (), f"row {i} of the structure constants is not {n}x{n}")]
            )
    c = tuple(
        tuple(tuple(_normalize(as_rational(table[i][j][k])) for k in range(n)) for j in range(n))
        for i in range(n)
    )
    names = tuple(basis_names) if basis_names is not None else tuple(f"x{i}" for i in range(n))
    if len(names) != n:
        raise PairValidationError([Violation("shape", (), (), "basis_names has the wrong length")])

    for i in range(n):
        for j in range(i, n):
            defect = tuple(c[i][j][k] + c[j][i][k] for k in range(n))
            if any(defect):
                violations.append(
                    Violation(
                        "antisymmetry",
                        (i, j),
                        defect,
                        f"antisymmetry fails for ({names[i]}, {names[j]}): c[i][j] + c[j][i] = "
                        + "(" + ", ".join(format_rational(v) for v in defect) + ")",
                    )
                )
    for i, j, k in combinations(range(n), 3):
        x, y, z = ([1 if t == s else 0 for t in range(n)] for s in (i, j, k))
        jac = [0] * n
        for a, b, cc in ((x, y, z), (y, z, x), (z, x, y)):
            inner = _bracket_table(c, b, cc, n)
            outer = _bracket_table(c, a, inner, n)
            jac = [u + v for u, v in zip(jac, outer)]
        if any(jac):
            violations.append(
                Violation(
                    "jacobi",
                    (i, j, k),
                    tuple(jac),
                    f"Jacobi identity fails on triple ({i}, {j}, {k}) = "
                    f"({names[i]}, {names[j]}, {names[k]}): defect ("
                    + ", ".join(format_rational(v) for v in jac) + ")",
                )
            )
    for i in range(dim_h):
        for j in range(i + 1, dim_h):
            for k in range(dim_h, n):
                if c[i][j][k]:
                    violations.append(
                        Violation(
                            "closure",
                            (i, j, k),
                            (c[i][j][k],),
                            f"[{names[i]}, {names[j]}] leaks into complement coordinate "
                            f"{k} ({names[k]}) with coefficient {format_rational(c[i][j][k])}",
                        )
                    )
    if violations:
        raise PairValidationError(violations)
    return LiePair(n, dim_h, c, names)


def _check_len(p: LiePair, v, what="vector"):
    if len(v) != p.dim_g:
        raise ValueError(f"{what} has length {len(v)}, expected {p.dim_g}")


def bracket(p: LiePair, x: Sequence, y: Sequence) -> list:
    """``[x, y]`` for coordinate vectors in the basis of ``g``."""
    _check_len(p, x)
    _check_len(p, y)
    return _bracket_table(p.structure_constants, x, y, p.dim_g)


def _h_support_check(p: LiePair, X: Sequence):
    _check_len(p, X, "h-vector")
    if any(X[i] for i in p.complement_indices):
        raise ValueError("element is not in the subalgebra h")


def quotient_action(p: LiePair, X: Sequence, q: Sequence) -> list:
    """Action of ``X`` in ``h`` on a class ``q`` in ``g/h`` (complement coordinates)."""
    _h_support_check(p, X)
    if len(q) != p.k:
        raise ValueError(f"quotient class has length {len(q)}, expected {p.k}")
    lift = [0] * p.dim_h + list(q)
    full = bracket(p, X, lift)
    return full[p.dim_h:]


def quotient_action_matrix(p: LiePair, i: int) -> list[list]:
    """Matrix of the ``h``-basis element ``x_i`` on ``g/h``; column ``a`` is the image of ``b_a``."""
    m = p.dim_h
    k = p.k
    return [[p.structure_constants[i][m + a][m + r] for a in range(k)] for r in range(k)]


def pair_from_dict(data: dict) -> LiePair:
    """Parse the JSON pair format; raises ``ValueError`` on malformed input."""
    try:
        n = int(data["dim"])
        m = int(data["subalgebra_dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed pair file: {exc}") from exc
    names = data.get("basis") or [f"x{i}" for i in range(n)]
    if len(names) != n:
        raise ValueError("basis length does not match dim")
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    seen = set()
    for entry in data.get("brackets", []):
        i, j = int(entry["i"]), int(entry["j"])
        if not (0 <= i < j < n):
            raise ValueError(f"bracket entry ({i}, {j}) must satisfy 0 <= i < j < dim")
        if (i, j) in seen:
            raise ValueError(f"duplicate bracket entry ({i}, {j})")
        seen.add((i, j))
        coeffs = entry["coeffs"]
        if len(coeffs) != n:
            raise ValueError(f"bracket ({i}, {j}) has {len(coeffs)} coefficients, expected {n}")
        for k, v in enumerate(coeffs):
            q = as_rational(v)
            table[i][j][k] = q
            table[j][i][k] = -q
    return validate_pair(table, m, names)


def pair_to_dict(p: LiePair) -> dict:
    brackets = []
    for i in range(p.dim_g):
        for j in range(i + 1, p.dim_g):
            row = p.structure_constants[i][j]
            if any(row):
                brackets.append({"i": i, "j": j, "coeffs": [format_rational(v) for v in row]})
    return {"dim": p.dim_g, "subalgebra_dim": p.dim_h, "basis": list(p.basis_names), "brackets": brackets}


def corpus_path(name: str) -> Path:
    return Path(__file__).parent / "corpus" / f"{name}.json"


def load_pair(path) -> LiePair:
    """Load a pair from a JSON file, or from a bundled corpus name such as ``"sl2_borel"``."""
    path = Path(path)
    if not path.exists() and str(path) in CORPUS:
        path = corpus_path(str(path))
    with open(path) as fh:
        data = json.load(fh)
    return pair_from_dict(data)
