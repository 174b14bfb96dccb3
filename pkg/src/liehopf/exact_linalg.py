"""Exact sparse linear algebra over the rationals.

Everything here is exact: vectors and matrices hold ``int`` or
``fractions.Fraction`` entries and elimination is carried out fraction-free
on integer rows (each row is scaled to a primitive integer vector, then
reduced by cross-multiplication and content removal).  Pivots follow the
first-nonzero rule, so results are reproducible for a fixed input order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "SparseMatrix",
    "Echelon",
    "as_rational",
    "format_rational",
    "rank",
    "nullspace_basis",
    "solve",
    "DimensionError",
]


class DimensionError(ValueError):
    """Raised when operand shapes do not agree."""


def as_rational(value) -> Fraction:
    """Coerce ``value`` (int, Fraction or a ``"p/q"`` string) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value) -> str:
    q = as_rational(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _normalize(value):
    # keep integral values as int so hot loops stay on fast integer arithmetic
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


@dataclass
class SparseMatrix:
    """A ``rows`` x ``cols`` matrix stored as ``{(row, col): value}``."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise DimensionError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if v:
                clean[(r, c)] = _normalize(as_rational(v) if isinstance(v, str) else v)
        self.entries = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise DimensionError("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, object]]) -> "SparseMatrix":
        """Build a matrix whose ``j``-th column is the sparse vector ``columns[j]``."""
        entries = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    entries[(r, c)] = v
        return cls(rows, len(columns), entries)

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def column_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def matvec(self, vector: Sequence) -> list:
        if len(vector) != self.cols:
            raise DimensionError(f"vector of length {len(vector)} for {self.cols} columns")
        out = [0] * self.rows
        for (r, c), v in self.entries.items():
            if vector[c]:
                out[r] += v * vector[c]
        return [_normalize(x) for x in out]

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions differ")
        right = other.row_dicts()
        acc: dict = {}
        for (r, c), v in self.entries.items():
            for c2, w in right[c].items():
                acc[(r, c2)] = acc.get((r, c2), 0) + v * w
        return SparseMatrix(self.rows, other.cols, acc)


def _primitive(row: Mapping[int, object]) -> dict[int, int]:
    """Scale a rational sparse row to a primitive integer row (positive leading entry)."""
    items = [(c, as_rational(v) if not isinstance(v, (int, Fraction)) else v) for c, v in row.items() if v]
    if not items:
        return {}
    den = 1
    for _, v in items:
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    ints = {c: int(v * den) for c, v in items}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    return {c: v // g for c, v in ints.items()}


def _combine(row: dict[int, int], piv: dict[int, int], col: int) -> dict[int, int]:
    """Cross-multiply to clear ``col`` from ``row`` using pivot row ``piv``."""
    a = piv[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {c: a * v for c, v in row.items()}
    for c, v in piv.items():
        nv = out.get(c, 0) - b * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return _primitive(out)


class Echelon:
    """Incremental fraction-free row echelon form of a family of sparse vectors.

    Vectors are added one at a time; each is reduced against the current
    pivots and, if something survives, it becomes a new pivot row keyed by its
    first nonzero coordinate.
    """

    def __init__(self, vectors: Iterable[Mapping[int, object]] = ()):
        self.pivots: dict[int, dict[int, int]] = {}
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vector: Mapping[int, object], stop_at: int | None = None) -> dict[int, int]:
        """Reduce ``vector`` until its leading column is not a pivot.

        With ``stop_at`` set, columns ``>= stop_at`` are never eliminated; the
        returned row is then nonzero below ``stop_at`` exactly when the vector
        leaves the span in those coordinates.
        """
        row = _primitive(vector)
        while row:
            lead = min(row)
            if stop_at is not None and lead >= stop_at:
                break
            piv = self.pivots.get(lead)
            if piv is None:
                break
            row = _combine(row, piv, lead)
        return row

    def add(self, vector: Mapping[int, object]) -> bool:
        row = self.reduce(vector)
        if not row:
            return False
        self.pivots[min(row)] = row
        return True

    def contains(self, vector: Mapping[int, object]) -> bool:
        return not self.reduce(vector)

    def back_substitute(self, fixed: Mapping[int, Fraction], rhs_col: int | None = None) -> dict[int, Fraction]:
        """Solve the echelon system for pivot variables.

        ``fixed`` assigns values to non-pivot columns (missing ones are zero).
        When ``rhs_col`` is given that column holds the right-hand side and the
        pivot equations read ``sum_c row[c] x[c] = row[rhs_col]``.
        """
        x: dict[int, Fraction] = {c: Fraction(v) for c, v in fixed.items() if v}
        for p in sorted(self.pivots, reverse=True):
            row = self.pivots[p]
            acc = Fraction(row.get(rhs_col, 0)) if rhs_col is not None else Fraction(0)
            for c, v in row.items():
                if c == p or c == rhs_col:
                    continue
                xc = x.get(c)
                if xc:
                    acc -= v * xc
            if acc:
                x[p] = acc / row[p]
        return x


def rank(m: SparseMatrix) -> int:
    """Rank of ``m`` over the rationals."""
    # eliminate along the shorter side; row rank equals column rank
    vectors = m.row_dicts() if m.rows <= m.cols else m.column_dicts()
    return Echelon(vectors).rank


def nullspace_basis(m: SparseMatrix) -> list[list[Fraction]]:
    """Basis of the right kernel ``{v : m v = 0}`` as dense rational vectors."""
    ech = Echelon(m.row_dicts())
    free = [c for c in range(m.cols) if c not in ech.pivots]
    basis = []
    for f in free:
        x = ech.back_substitute({f: Fraction(1)})
        vec = [x.get(c, Fraction(0)) for c in range(m.cols)]
        if any(m.matvec(vec)):
            raise ArithmeticError("nullspace vector failed exact verification")
        basis.append(vec)
    return basis


def solve(m: SparseMatrix, b: Sequence) -> list[Fraction] | None:
    """Return some ``x`` with ``m x = b`` exactly, or ``None`` if infeasible."""
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {m.rows} rows")
    rows = m.row_dicts()
    aug = m.cols
    for r, val in enumerate(b):
        if val:
            rows[r][aug] = as_rational(val) if isinstance(val, str) else val
    ech = Echelon(rows)
    if aug in ech.pivots:
        return None
    x = ech.back_substitute({}, rhs_col=aug)
    vec = [x.get(c, Fraction(0)) for c in range(m.cols)]
    if [as_rational(v) for v in m.matvec(vec)] != [as_rational(v) for v in b]:
        raise ArithmeticError("solution failed exact verification")
    return vec
