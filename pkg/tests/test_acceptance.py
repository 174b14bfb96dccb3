"""Acceptance criteria 1-10, all exact (tolerance 0).

Each ``criterion_N`` returns ``(passed, detail)``.  Under pytest the results
are collected and printed as one line per criterion in the terminal summary;
run this file directly to get the same lines without pytest.
"""

import subprocess
import sys
import time
from itertools import product
from math import comb

import pytest

from liehopf.atiyah import atiyah_cocycle, canonical_connection, class_is_nonzero, independence_check
from liehopf.ce_cohomology import atiyah_coefficient_module, ce_differential, cohomology_dim
from liehopf.dpoly import DTensor, PolyDifferentialComplex, TruncationSpec, cup
from liehopf.free_lie import bracket_compatibility_check, d_stability_check, verify_I_iso
from liehopf.graded_oracle import graded_oracle_betti
from liehopf.hkr import hkr_report
from liehopf.hopf import hopf_axiom_report
from liehopf.lie_core import CORPUS, PairValidationError, load_pair
from liehopf.pbw import D1Element

try:
    from .conftest import DATA, complex_for
except ImportError:  # run as a script
    from pathlib import Path

    DATA = Path(__file__).parent / "data"
    _cache = {}

    def complex_for(name):
        if name not in _cache:
            _cache[name] = PolyDifferentialComplex(load_pair(name))
        return _cache[name]


RESULTS: dict = {}


def criterion_1():
    t0 = time.perf_counter()
    pairs = [load_pair(n) for n in CORPUS]
    try:
        load_pair(DATA / "jacobi_broken.json")
        named = False
    except PairValidationError as exc:
        named = any(v.kind == "jacobi" and v.indices == (0, 1, 2) and "(0, 1, 2)" in v.message for v in exc.violations)
    dt = time.perf_counter() - t0
    return len(pairs) == 4 and named and dt < 1.0, f"4 corpus pairs valid, mutant rejected on triple (0, 1, 2), {dt:.3f}s"


def criterion_2():
    t0 = time.perf_counter()
    spec = TruncationSpec(4, 4)
    checked = 0
    for name in CORPUS:
        cx = complex_for(name)
        d = cx.differential
        for n in range(5):
            for key in cx.truncated_basis(spec, n):
                if d(d(DTensor.basis(key))):
                    return False, f"{name}: d^2 != 0 on {key}"
                checked += 1
    dt = time.perf_counter() - t0
    return dt < 300, f"d^2 = 0 on {checked} basis tensors (w<=4, N<=4), {dt:.1f}s"


def criterion_3():
    spec = TruncationSpec(3, 4)
    checked = 0
    for name in CORPUS:
        cx = complex_for(name)
        d = cx.differential
        basis = {n: [DTensor.basis(k) for k in cx.truncated_basis(spec, n)] for n in range(5)}
        with_d = {n: [(P, d(P)) for P in basis[n]] for n in basis}
        for a in range(5):
            s = -1 if a & 1 else 1
            for b in range(5 - a):
                for (P, dP), (Q, dQ) in product(with_d[a], with_d[b]):
                    if d(cup(P, Q)) != cup(dP, Q) + s * cup(P, dQ):
                        return False, f"{name}: Leibniz fails"
                    checked += 1
    return True, f"Leibniz exact on {checked} basis pairs with |P|+|Q| <= 4 (w=3)"


def criterion_4():
    spec = TruncationSpec(3, 3)
    notes = []
    for name in CORPUS:
        rep = hopf_axiom_report(complex_for(name), spec, "auto")
        axioms = {(a["name"], a["convention"]): a for a in rep["axioms"]}
        if not rep["core_pass"]:
            bad = [a["name"] for a in rep["axioms"] if a["name"] != "antipode" and not a["strict_pass"]]
            return False, f"{name}: strict failure in {bad}"
        if not axioms[("antipode", "standard")]["strict_pass"]:
            return False, f"{name}: standard antipode fails"
        paper = axioms[("antipode", "paper")]
        notes.append(f"{name} convention=paper strict={paper['strict_pass']} homotopy={paper['homotopy_witness_found']}")
    return True, "core axioms strict, standard antipode strict; " + "; ".join(notes)


def criterion_5():
    checked = 0
    for name in CORPUS:
        cx = complex_for(name)
        U, p = cx.uea, cx.pair
        c = p.structure_constants
        for mono in U.d1_basis_up_to_weight(4):
            q = D1Element({mono: 1})
            for X in p.h_indices:
                xv = p.basis_vector(X)
                lhs = U.coproduct_d1(U.act_d1(xv, q))
                rhs = {}
                for (a, b), v in U.coproduct_d1(q).terms.items():
                    for a2, v2 in U.act_d1(xv, D1Element({a: 1})).terms.items():
                        rhs[(a2, b)] = rhs.get((a2, b), 0) + v * v2
                    for b2, v2 in U.act_d1(xv, D1Element({b: 1})).terms.items():
                        rhs[(a, b2)] = rhs.get((a, b2), 0) + v * v2
                if lhs.terms != {k: v for k, v in rhs.items() if v}:
                    return False, f"{name}: action does not commute with coproduct at {mono}"
                for Y in p.h_indices:
                    yv = p.basis_vector(Y)
                    comm = U.act_d1(xv, U.act_d1(yv, q)) - U.act_d1(yv, U.act_d1(xv, q))
                    if comm != U.act_d1(list(c[X][Y]), q):
                        return False, f"{name}: action not flat at {mono}"
                checked += 1
        spec = TruncationSpec(3, 3)
        for n in range(4):
            for key in cx.truncated_basis(spec, n):
                P = DTensor.basis(key)
                for X in p.h_indices:
                    xv = p.basis_vector(X)
                    if cx.differential(cx.act_tensor(xv, P)) != cx.act_tensor(xv, cx.differential(P)):
                        return False, f"{name}: d does not commute with the action on {key}"
    return True, f"coproduct equivariance and flatness on {checked} (X, p) with weight <= 4; d is h-linear on w=3, N=3"


def criterion_6():
    t0 = time.perf_counter()
    details = []
    for name in CORPUS:
        cx = complex_for(name)
        spec = TruncationSpec(4, 3) if cx.k == 1 else TruncationSpec(3, 3)
        for r in hkr_report(cx, spec):
            if not r["cocycle_pass"]:
                return False, f"{name}: HKR image not a cocycle in degree {r['n']}"
            if r["independent_pass"] is not None and not (r["independent_pass"] and r["dim_H"] == r["expected_binomial"]):
                return False, f"{name}: degree {r['n']} dim_H={r['dim_H']} expected {r['expected_binomial']}"
        for row in graded_oracle_betti(cx.k, spec.max_weight, spec.max_degree):
            want = comb(cx.k, row["degree"]) if row["weight"] == row["degree"] else 0
            if row["dim_H"] != want:
                return False, f"graded oracle k={cx.k}: {row}"
    rows = complex_for("sl2_borel").cohomology_report(TruncationSpec(4, 3))
    dims = [r["dim_H"] for r in rows[:3]]
    details.append(f"sl2/Borel w=4 N=3 H^0..2 = {dims}")
    dt = time.perf_counter() - t0
    return dims == [1, 1, 0] and dt < 300, "; ".join(details) + f", {dt:.1f}s"


def criterion_7():
    for name in CORPUS:
        cx = complex_for(name)
        for w in (1, 2):
            spec = TruncationSpec(w, 3)
            for r in verify_I_iso(cx, spec):
                if not (r["rank"] == r["sym_monomials"] == r["tensor_dim"]):
                    return False, f"{name} w={w}: {r}"
            if not d_stability_check(cx, spec)["pass"]:
                return False, f"{name} w={w}: d-stability failed"
    return True, "I is an isomorphism by rank for n <= 3, w <= 2; d-stability solves succeed"


def criterion_8():
    signs = {}
    for name in CORPUS:
        rep = bracket_compatibility_check(complex_for(name))
        if not rep["pass"]:
            return False, f"{name}: {rep['offending']}"
        signs[name] = (rep["sign"], rep["sign_determined"])
    rep = bracket_compatibility_check(complex_for("sl2_borel"))
    row = next(r for r in rep["rows"] if r["identity"] == "ii" and r["X"] == "e")
    ok = row["defect"] == "-2·f" and row["beta_R"] == "2·f"
    return ok, f"identities (i) and (ii) exact; sl2 defect(e; f, f) = {row['defect']} vs beta R = {row['beta_R']}, sign {rep['sign']}"


def criterion_9():
    sl2 = load_pair("sl2_borel")
    conn = canonical_connection(sl2)
    cocycle = atiyah_cocycle(conn)
    ok = cocycle.R[1][0] == [[2]] and ce_differential(cocycle.module, cocycle.cochain).is_zero()
    ok &= class_is_nonzero(sl2, conn)[0]
    for c in (1, -3, 7):
        independence_check(sl2, conn, canonical_connection(sl2, [[[c]]]))
    ab = load_pair("abelian2_sub1")
    ok &= not class_is_nonzero(ab, canonical_connection(ab))[0]
    h1 = cohomology_dim(atiyah_coefficient_module(sl2), 1)
    ok &= h1 == 1
    return ok, f"R[e](f) = 2, dR = 0, class nonzero, 3 independence witnesses, abelian class zero, H^1 = {h1}"


def criterion_10():
    cmd = [sys.executable, "-m", "liehopf", "report", "--pair", "sl2_borel", "--seed", "7", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    return ok, f"two report runs, {len(a.stdout)} bytes, identical={a.stdout == b.stdout}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(i, ok, detail):
    return f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("i", range(1, 11))
def test_criterion(i):
    ok, detail = CRITERIA[i - 1]()
    RESULTS[i] = _line(i, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(_line(i, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
