"""Independent model of the associated graded complex.

The coalgebra here is the symmetric coalgebra on ``k`` letters, written as
sorted letter tuples (``(0, 0, 1)`` is ``x0^2 x1``) with the coproduct that
splits a word over every subset of its positions.  Nothing from the PBW or
tensor code is reused, including the rank routine, so agreement with the
main pipeline is a genuine cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product


def _words(k: int, w: int) -> list[tuple]:
    return list(combinations_with_replacement(range(k), w))


def _split(word: tuple) -> dict:
    """Coproduct of a sorted word: sum over position subsets (multiplicities give binomials)."""
    out: dict = {}
    n = len(word)
    for r in range(n + 1):
        for picked in combinations(range(n), r):
            left = tuple(word[i] for i in picked)
            right = tuple(word[i] for i in range(n) if i not in picked)
            out[(left, right)] = out.get((left, right), 0) + 1
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _chains(k: int, weight: int, degree: int) -> list[tuple]:
    out = []
    for sizes in _compositions(weight, degree):
        for legs in product(*(_words(k, s) for s in sizes)):
            out.append(legs)
    return out


def _coboundary(chain: tuple) -> dict:
    # alternating sum of cofaces: insert () at the front, split each leg, insert () at the end
    n = len(chain)
    out: dict = {}
    if n == 0:
        return out
    faces = [((),) + chain]
    signs = [1]
    for i in range(n):
        for (a, b), mult in _split(chain[i]).items():
            faces.append(chain[:i] + (a, b) + chain[i + 1:])
            signs.append((-1) ** (i + 1) * mult)
    faces.append(chain + ((),))
    signs.append((-1) ** (n + 1))
    for f, s in zip(faces, signs):
        out[f] = out.get(f, 0) + s
    return {f: s for f, s in out.items() if s}


def _dense_rank(rows: list[list]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _rank_of_d(k: int, weight: int, degree: int) -> int:
    if degree == 0:
        return 0
    src = _chains(k, weight, degree)
    dst = {c: i for i, c in enumerate(_chains(k, weight, degree + 1))}
    if not src or not dst:
        return 0
    rows = []
    for c in src:
        row = [0] * len(dst)
        for f, s in _coboundary(c).items():
            row[dst[f]] += s
        rows.append(row)
    return _dense_rank(rows)


def graded_oracle_betti(k: int, w: int, N: int) -> list[dict]:
    """Betti numbers of the weight-``w'`` pieces, ``w' <= w``, degrees ``0..N``."""
    table = []
    for wt in range(w + 1):
        ranks = [_rank_of_d(k, wt, n) for n in range(N + 1)]
        for n in range(N + 1):
            size = len(_chains(k, wt, n))
            h = size - ranks[n] - (ranks[n - 1] if n else 0)
            table.append({"weight": wt, "degree": n, "dim_H": h})
    return table
