import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liehopf.atiyah import (
    AtiyahError,
    Connection,
    atiyah_cocycle,
    atiyah_report,
    canonical_connection,
    class_is_nonzero,
    curvature,
    independence_check,
)
from liehopf.lie_core import CORPUS, load_pair, validate_pair

SL2 = load_pair("sl2_borel")
H, E, F = ([int(i == j) for j in range(3)] for i in range(3))


def test_forced_values():
    conn = canonical_connection(SL2, [[[7]]])
    assert conn.nabla == [[[-2]], [[0]], [[7]]]
    ab = load_pair("abelian2_sub1")
    assert canonical_connection(ab).nabla == [[[0]], [[0]]]


def test_shape_and_extension_errors():
    with pytest.raises(AtiyahError):
        canonical_connection(SL2, [[[1, 2]]])
    with pytest.raises(AtiyahError):
        Connection(SL2, [[[0]], [[0]], [[0]]])


@pytest.mark.parametrize("c", [0, 3, Fraction(-5, 2)])
def test_sl2_curvature(c):
    conn = canonical_connection(SL2, [[[c]]])
    assert curvature(conn, E, F) == [[2]]
    assert curvature(conn, H, F) == [[2 * c]]
    assert curvature(conn, H, E) == [[0]]


def test_sl2_cocycle():
    cocycle = atiyah_cocycle(canonical_connection(SL2))
    assert cocycle.R == [[[[0]]], [[[2]]]]
    assert cocycle.cochain.values == {(1,): [2]}
    nonzero, witness = class_is_nonzero(SL2, canonical_connection(SL2))
    assert nonzero and witness is None


def test_abelian_class_zero():
    ab = load_pair("abelian2_sub1")
    nonzero, witness = class_is_nonzero(ab, canonical_connection(ab))
    assert not nonzero and witness.is_zero()


def test_trivial_subalgebra_class_zero():
    p = validate_pair([[[0, 0], [0, 1]], [[0, -1], [0, 0]]], 0)
    nonzero, _ = class_is_nonzero(p, canonical_connection(p))
    assert not nonzero


def test_independence_sl2_explicit():
    c, c2 = Fraction(3), Fraction(-1, 2)
    res = independence_check(SL2, canonical_connection(SL2, [[[c]]]), canonical_connection(SL2, [[[c2]]]))
    assert res["witness"] == [str(c - c2)]
    same = independence_check(SL2, canonical_connection(SL2), canonical_connection(SL2))
    assert same["difference_zero"] and same["witness"] == ["0"]


def _params(k, rng):
    return [[[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(k)] for _ in range(k)] for _ in range(k)]


@pytest.mark.parametrize("name", CORPUS)
@pytest.mark.parametrize("seed", range(3))
def test_independence_random(name, seed):
    pair = load_pair(name)
    rng = random.Random(seed)
    c1 = canonical_connection(pair, _params(pair.k, rng))
    c2 = canonical_connection(pair, _params(pair.k, rng))
    independence_check(pair, c1, c2)
    assert class_is_nonzero(pair, c1)[0] == class_is_nonzero(pair, c2)[0]


frac = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3))


@settings(max_examples=30, deadline=None)
@given(st.lists(frac, min_size=4, max_size=4), st.lists(frac, min_size=3, max_size=3), st.lists(frac, min_size=3, max_size=3))
def test_curvature_antisymmetric_heisenberg(params, x, y):
    pair = load_pair("heisenberg_center")
    conn = canonical_connection(pair, [[params[:2], params[2:]], [params[2:], params[:2]]])
    rxy, ryx = curvature(conn, x, y), curvature(conn, y, x)
    assert rxy == [[-v for v in row] for row in ryx]
    z = [1, 0, 0]
    assert curvature(conn, z, [2, 0, 0]) == [[0, 0], [0, 0]]


def test_report_shape():
    rep = atiyah_report(SL2)
    assert rep["cocycle"] == {"h": {"f": [["0"]]}, "e": {"f": [["2"]]}}
    assert rep["class_nonzero"] and rep["H1_dim"] == 1 and rep["witness"] is None
