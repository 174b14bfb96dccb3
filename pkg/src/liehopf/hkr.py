"""The exterior algebra on g/h and its skew-symmetrization map into (D, d)."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial

from .dpoly import DTensor, PolyDifferentialComplex, TruncationSpec
from .exact_linalg import Echelon
from .linear import LinearCombination

__all__ = [
    "ExteriorElement",
    "exterior_basis",
    "hkr_map",
    "hkr_cocycle_check",
    "hkr_class_check",
    "hkr_report",
]


def _perm_sign(seq) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class ExteriorElement(LinearCombination):
    """Element of the exterior algebra on ``g/h``; keys are increasing index tuples."""

    __slots__ = ("degree",)

    def __init__(self, terms=None, degree: int | None = None):
        super().__init__(terms)
        for key in self.terms:
            if any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"exterior key {key} is not strictly increasing")
        lengths = {len(key) for key in self.terms}
        if degree is None and len(lengths) == 1:
            degree = lengths.pop()
        self.degree = degree

    def _new(self, terms):
        return ExteriorElement(terms, self.degree)

    @classmethod
    def wedge(cls, *indices: int) -> "ExteriorElement":
        """``b_i1 ^ b_i2 ^ ...`` normalized to increasing order (zero on repeats)."""
        if len(set(indices)) < len(indices):
            return cls({}, len(indices))
        return cls({tuple(sorted(indices)): _perm_sign(indices)}, len(indices))


def exterior_basis(k: int, n: int) -> list[ExteriorElement]:
    return [ExteriorElement({t: 1}, n) for t in combinations(range(k), n)]


def hkr_map(x: ExteriorElement, k: int) -> DTensor:
    """``b_1 ^ ... ^ b_n -> (1/n!) sum_sigma sgn(sigma) b_sigma(1) (x) ... (x) b_sigma(n)``."""
    out: dict = {}
    for key, c in x.terms.items():
        n = len(key)
        scale = Fraction(c, factorial(n)) if isinstance(c, int) else c / factorial(n)
        legs = [tuple(1 if j == b else 0 for j in range(k)) for b in key]
        for perm in permutations(range(n)):
            term = tuple(legs[i] for i in perm)
            out[term] = out.get(term, 0) + _perm_sign(perm) * scale
    return DTensor(out, x.degree if x.degree is not None else None)


def hkr_cocycle_check(cx: PolyDifferentialComplex, spec: TruncationSpec) -> list[dict]:
    """``d(HKR(x)) = 0`` for every exterior basis element of degree ``<= min(N, k)``."""
    rows = []
    for n in range(min(spec.max_degree, cx.k) + 1):
        failures = [x for x in exterior_basis(cx.k, n) if cx.differential(hkr_map(x, cx.k))]
        rows.append({"n": n, "cocycle_pass": not failures, "checked": comb(cx.k, n)})
    return rows


def _weight_block_image(cx: PolyDifferentialComplex, spec: TruncationSpec, n: int, weight: int):
    """Echelon of ``d(T^(n-1))`` restricted to total weight ``weight``, plus its key index."""
    index: dict = {}
    ech = Echelon()
    if n >= 1:
        for key in cx.truncated_basis(spec, n - 1):
            if sum(sum(leg) for leg in key) != weight:
                continue
            col = {}
            for key2, v in cx._d_basis(key).items():
                col[index.setdefault(key2, len(index))] = v
            ech.add(col)
    return ech, index


def hkr_class_check(cx: PolyDifferentialComplex, spec: TruncationSpec, cohomology: list[dict] | None = None) -> list[dict]:
    """HKR classes are independent modulo coboundaries and ``dim H^n = C(k, n)``."""
    if cohomology is None:
        cohomology = cx.cohomology_report(spec)
    dims = {row["degree"]: row["dim_H"] for row in cohomology}
    rows = []
    top = min(spec.max_degree - 1, spec.max_weight - 1, cx.k)
    for n in range(top + 1):
        images = [hkr_map(x, cx.k) for x in exterior_basis(cx.k, n)]
        ech, index = _weight_block_image(cx, spec, n, n)
        base = ech.rank
        for img in images:
            ech.add({index.setdefault(key, len(index)): v for key, v in img.terms.items()})
        span_ok = ech.rank == base + len(images)
        solve_ok = all(cx.coboundary_witness_dpoly(spec, img) is None for img in images)
        rows.append(
            {
                "n": n,
                "independent_pass": span_ok and solve_ok,
                "dim_H": dims.get(n),
                "expected_binomial": comb(cx.k, n),
            }
        )
    return rows


def hkr_report(cx: PolyDifferentialComplex, spec: TruncationSpec) -> list[dict]:
    """Merged per-degree rows ``{n, cocycle_pass, independent_pass, dim_H, expected_binomial}``."""
    cohomology = cx.cohomology_report(spec)
    cocycle = {r["n"]: r["cocycle_pass"] for r in hkr_cocycle_check(cx, spec)}
    classes = {r["n"]: r for r in hkr_class_check(cx, spec, cohomology)}
    dims = {row["degree"]: row["dim_H"] for row in cohomology}
    rows = []
    for n in sorted(cocycle):
        cls = classes.get(n)
        rows.append(
            {
                "n": n,
                "cocycle_pass": cocycle[n],
                "independent_pass": cls["independent_pass"] if cls else None,
                "dim_H": dims.get(n),
                "expected_binomial": comb(cx.k, n),
            }
        )
    return rows
