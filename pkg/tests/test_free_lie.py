import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liehopf.exact_linalg import Echelon
from liehopf.dpoly import DTensor, TruncationSpec, cup, unit
from liehopf.free_lie import (
    FreeLieError,
    SymWord,
    beta,
    bracket_compatibility_check,
    d_stability_check,
    expand,
    lie_bracket_tensor,
    lyndon_basis,
    lyndon_words,
    standard_bracketing,
    sym_monomials,
    symmetrization_I,
    verify_I_iso,
)
from liehopf.lie_core import CORPUS
from liehopf.pbw import D1Element, monomials_up_to_weight

from .conftest import complex_for

V2 = monomials_up_to_weight(1, 1)  # alphabet {1-bar, f-bar}
p, q = DTensor.basis(((1,),)), DTensor.basis(((2,),))


def test_bracket_examples():
    assert lie_bracket_tensor(p, q) == cup(p, q) + cup(q, p)
    assert lie_bracket_tensor(p, p) == cup(p, p) * 2
    assert not lie_bracket_tensor(unit(3), cup(p, q))
    with pytest.raises(FreeLieError):
        lie_bracket_tensor(p + cup(p, q), q)


@pytest.mark.parametrize("size, n, count", [(2, 1, 2), (2, 2, 1), (2, 3, 2), (3, 3, 8), (2, 4, 3), (2, 5, 6)])
def test_lyndon_word_counts(size, n, count):
    words = lyndon_words(size, n)
    assert len(words) == count
    assert all(w < w[i:] for w in words for i in range(1, n))


def test_standard_bracketing():
    assert standard_bracketing((0, 0, 1)) == (0, (0, 1))
    assert standard_bracketing((0, 1, 1)) == ((0, 1), 1)
    with pytest.raises(FreeLieError):
        standard_bracketing((1, 0))


def test_lyndon_basis_low_degrees():
    assert lyndon_basis(V2, 1) == [0, 1]
    two = lyndon_basis(V2, 2)
    assert (0, 1) in two and (0, 0) in two and (1, 1) in two and len(two) == 3
    assert expand((0, 1), V2) == lie_bracket_tensor(expand(0, V2), expand(1, V2))
    with pytest.raises(FreeLieError):
        lyndon_basis(V2, 0)


def _dim_by_rank(V, n):
    index = {}
    ech = Echelon()
    for letters in product(range(len(V)), repeat=n):
        t = letters[0]
        for a in letters[1:]:
            t = (t, a)
        ech.add({index.setdefault(k, len(index)): c for k, c in expand(t, V).terms.items()})
    return ech.rank


@pytest.mark.parametrize("n", [2, 3, 4])
def test_basis_size_matches_left_nested_rank(n):
    # left-nested brackets span too; a different spanning set from the certifier's
    V = monomials_up_to_weight(1, 2)
    assert len(lyndon_basis(V, n)) == _dim_by_rank(V, n)


def test_symmetrization_examples():
    V = [(1,), (2,)]
    assert symmetrization_I(SymWord(((0, 1),)), V) == expand((0, 1), V)
    pq = symmetrization_I(SymWord((0, 1)), V)
    assert pq == (cup(p, q) - cup(q, p)) * Fraction(1, 2)
    assert pq + lie_bracket_tensor(p, q) * Fraction(1, 2) == cup(p, q)


def test_canonical_form_koszul():
    s = SymWord((1, 0), 3).canonical()
    assert s.factors == (0, 1) and s.coeff == -3
    assert SymWord((0, 0)).canonical().coeff == 0
    # even factors commute freely
    even = SymWord(((0, 1), 0)).canonical()
    assert even.factors == (0, (0, 1)) and even.coeff == 1


@settings(max_examples=50, deadline=None)
@given(st.permutations([0, 1, (0, 1), (0, (0, 1))]))
def test_I_invariant_under_reordering(factors):
    V = [(0,), (1,)]
    s = SymWord(tuple(factors))
    c = s.canonical()
    assert symmetrization_I(s, V) == symmetrization_I(c, V)


def test_sym_monomial_count_heisenberg():
    V = monomials_up_to_weight(2, 2)
    assert len(sym_monomials(V, 3)) == 6 ** 3


@pytest.mark.parametrize("name", CORPUS)
def test_verify_I_iso(name):
    rows = verify_I_iso(complex_for(name), TruncationSpec(2, 3))
    for r in rows:
        assert r["iso_pass"] and r["rank"] == r["tensor_dim"] == r["sym_monomials"]


def test_sl2_I_iso_degree2_rank():
    rows = verify_I_iso(complex_for("sl2_borel"), TruncationSpec(2, 2))
    assert rows[1]["rank"] == 9


@pytest.mark.parametrize("name", CORPUS)
def test_d_stability(name):
    rep = d_stability_check(complex_for(name), TruncationSpec(2, 3), seed=1)
    assert rep["pass"], rep


def test_d_of_f_squared_is_a_bracket(sl2):
    f2 = DTensor.basis(((2,),))
    assert sl2.differential(f2) == -lie_bracket_tensor(p, p)


def test_d_is_a_derivation_of_the_bracket(sl2):
    f2 = DTensor.basis(((2,),))
    d = sl2.differential
    assert d(lie_bracket_tensor(f2, p)) == lie_bracket_tensor(d(f2), p) - lie_bracket_tensor(f2, d(p))


@pytest.mark.parametrize("seed", range(3))
def test_graded_jacobi_sampled(seed):
    rng = random.Random(seed)
    V = monomials_up_to_weight(2, 1)
    pool = [t for n in (1, 2) for t in lyndon_basis(V, n)]
    for _ in range(10):
        a, b, c = (expand(rng.choice(pool), V) for _ in range(3))
        i, j, k = a.degree, b.degree, c.degree
        br = lie_bracket_tensor
        # (-1)^(ik)[a,[b,c]] + cyclic = 0
        total = (
            br(a, br(b, c)) * (-1) ** (i * k)
            + br(b, br(c, a)) * (-1) ** (j * i)
            + br(c, br(a, b)) * (-1) ** (k * j)
        )
        assert not total
        assert br(a, b) == br(b, a) * -((-1) ** (i * j))


def test_beta(sl2):
    assert beta(sl2, [1]) == D1Element({(1,): 1})
    assert beta(sl2, [0]) == D1Element()
    assert beta(sl2, [2]) == D1Element({(1,): 2})
    assert beta(sl2, [5]).weight == 1
    with pytest.raises(FreeLieError):
        beta(sl2, [1, 2])


def test_bracket_compatibility_sl2(sl2):
    rep = bracket_compatibility_check(sl2)
    assert rep["pass"] and rep["sign"] == -1 and rep["sign_determined"]
    row = next(r for r in rep["rows"] if r["identity"] == "ii" and r["X"] == "e")
    assert row["defect"] == "-2·f" and row["beta_R"] == "2·f"
    row = next(r for r in rep["rows"] if r["identity"] == "ii" and r["X"] == "h")
    assert row["defect"] == "0" and row["beta_R"] == "0"


@pytest.mark.parametrize("name", CORPUS)
def test_bracket_compatibility_corpus(name):
    rep = bracket_compatibility_check(complex_for(name))
    assert rep["identity_i_pass"] and rep["identity_ii_pass"] and rep["pass"]
