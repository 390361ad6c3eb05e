from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from skeinkernel.amu import (
    TORELLI_Q,
    BraidWord,
    IndexOutOfRange,
    evaluate,
    eigenvalue_moduli,
    is_projectively_trivial,
    limit_scan,
    nearest_primitive_root,
    pa_criterion_homological,
    pa_test_n4,
    penner_word,
    relation_r3_word,
    spectral_radius,
    squarefree_part,
    torelli_trace,
    torelli_word,
)
from skeinkernel.exact_arith import QRoot
from skeinkernel.four_punctures import RHO_HOM
from skeinkernel.homological import conclusion1_matrices
from skeinkernel.matrices import Matrix

GOLDEN_SQ = (3 + math.sqrt(5)) / 2

words4 = st.lists(st.tuples(st.integers(1, 3), st.sampled_from([-2, -1, 1, 2])), max_size=6).map(
    lambda ls: BraidWord(4, tuple(ls))
)


def test_parse_and_print():
    w = BraidWord.parse("1, -2 3^2 2^-3", 4)
    assert w.letters == ((1, 1), (2, -1), (3, 2), (2, -3))
    assert str(w) == "1 -2 3^2 -2^3"
    assert BraidWord.parse(str(w), 4) == w
    assert w.exponent_sum() == -1


def test_parse_errors():
    with pytest.raises(ValueError):
        BraidWord.parse("1 x", 4)
    with pytest.raises(IndexOutOfRange):
        BraidWord.parse("5", 4)


def test_word_algebra():
    a = BraidWord.parse("1 -2", 4)
    assert (a * a.inverse()).exponent_sum() == 0
    assert (a**3).letters == a.letters * 3
    assert (a**-1) == a.inverse()
    with pytest.raises(ValueError):
        a * BraidWord.parse("1", 5)


@given(words4)
def test_evaluate_is_a_homomorphism(w):
    gens = list(RHO_HOM)
    assert evaluate(gens, w * w.inverse()) == Matrix.identity(2, 1)
    assert evaluate(gens, w * w) == evaluate(gens, w) @ evaluate(gens, w)


def test_last_generator_via_rotation():
    gens = conclusion1_matrices(6, QRoot(6, 1))
    s6 = evaluate(gens, BraidWord(6, ((6, 1),)))
    s5 = gens[4]
    # sigma_6 is conjugate to sigma_5, and the relation sigma_5 sigma_6 sigma_5 = sigma_6 sigma_5 sigma_6 holds
    assert s6.trace() == s5.trace()
    assert s5 @ s6 @ s5 == s6 @ s5 @ s6
    assert gens[0] @ s6 @ gens[0] == s6 @ gens[0] @ s6


def test_spectral_radius_examples():
    assert spectral_radius(Matrix([[2, 1], [1, 1]])) == pytest.approx(GOLDEN_SQ, abs=1e-9)
    assert spectral_radius(Matrix([[1, 1], [0, 1]])) == pytest.approx(1.0, abs=1e-12)
    assert eigenvalue_moduli(Matrix([[3, 0], [0, -2]])) == pytest.approx([3.0, 2.0])


def test_squarefree_part_removes_repeats():
    # (x-1)^2 (x+2), coefficients highest degree first
    p = [Fraction(1), Fraction(0), Fraction(-3), Fraction(2)]
    sf = squarefree_part(p)
    assert len(sf) == 3
    assert np.allclose(sorted(np.roots([float(c) for c in sf]).real), [-2, 1])


def test_pa_test_n4():
    assert pa_test_n4(BraidWord.parse("1 -2", 4))
    assert not pa_test_n4(BraidWord.parse("1 2", 4))
    assert not pa_test_n4(BraidWord.parse("1^3", 4))
    with pytest.raises(ValueError):
        pa_test_n4(BraidWord.parse("1", 5))


def test_pa_criterion_homological():
    rep = pa_criterion_homological(BraidWord.parse("1 -2 3", 6), 6, QRoot(3, 1))
    assert rep.criterion and rep.radius == pytest.approx(GOLDEN_SQ, abs=1e-9)
    assert rep.to_json()["radius_exceeds_one"] is True


def test_definite_form_gives_unit_radius():
    # at q = exp(2 pi i / 6) the form on H^1(X)_q is definite, so every braid has radius 1
    rep = pa_criterion_homological(BraidWord.parse("1 -2 3 -4 5", 6), 6, QRoot(6, 1))
    assert not rep.criterion


@pytest.mark.parametrize("k", [-2, -1, 1, 2])
@pytest.mark.parametrize("l", [-2, -1, 1, 2])
def test_torelli_trace_formula(k, l):
    assert torelli_trace(k, l) == -12 * k * l + 4
    assert torelli_trace(k, l, QRoot(3, 2)) == -12 * k * l + 4


def test_torelli_needs_the_cube_root():
    # at the sixth root itself the trace vanishes identically
    assert torelli_trace(1, 1, QRoot(6, 5)) == 0
    with pytest.raises(ValueError):
        torelli_word(0, 1)


def test_delta_is_unipotent_at_cube_root():
    gens = conclusion1_matrices(6, TORELLI_Q)
    d = evaluate(gens, BraidWord(6, ((1, 1), (2, 1))) ** 3)
    assert spectral_radius(d) == pytest.approx(1.0, abs=1e-9)
    assert not is_projectively_trivial(d)
    X = d - Matrix.identity(4, d[0, 0] ** 0, d[0, 0] - d[0, 0])
    assert X @ X @ X @ X == X - X


@pytest.mark.parametrize("q", [QRoot(3, 1), QRoot(3, 2)])
def test_penner_word_acts_trivially(q):
    gens = conclusion1_matrices(6, q)
    m = evaluate(gens, penner_word(6))
    assert is_projectively_trivial(m)
    assert spectral_radius(m) == pytest.approx(1.0)


def test_penner_word_shape():
    assert str(penner_word(6)) == "1^6 -2^6 3^6 -4^6 5^6"
    with pytest.raises(ValueError):
        penner_word(5)


@pytest.mark.parametrize("n,q", [(6, QRoot(6, 1)), (8, QRoot(8, 3))])
def test_relation_r3_is_projectively_trivial(n, q):
    assert is_projectively_trivial(evaluate(conclusion1_matrices(n, q), relation_r3_word(n)))


def test_nearest_primitive_root():
    assert nearest_primitive_root(2, QRoot(8, 1)) == QRoot(8, 1)
    assert nearest_primitive_root(3, QRoot(8, 1)) == QRoot(12, 1)
    assert nearest_primitive_root(4, QRoot(8, 1)) == QRoot(16, 1)
    assert nearest_primitive_root(5, QRoot(8, 1)) == QRoot(20, 3)


def test_limit_scan_rows():
    scan = limit_scan(1, BraidWord.parse("1 -2", 4), range(2, 7))
    assert [row.r for row in scan.rows] == [2, 3, 4, 5, 6]
    # r = 2 truncates everything, r = 3 leaves a proper quotient, then the full module
    assert [row.dimension for row in scan.rows] == [0, 1, 2, 2, 2]
    assert scan.rows[1].deviation is None
    assert scan.rows[3].radius == pytest.approx(2.153721375541768, abs=1e-9)
    assert scan.limit_radius == pytest.approx(GOLDEN_SQ, abs=1e-9)
    js = scan.to_json()
    assert js["target"] == {"order": 8, "exponent": 1}


def test_is_projectively_trivial_examples():
    from skeinkernel.exact_arith import CycloNum

    eye = Matrix.identity(4, CycloNum.const(12, 1), CycloNum.const(12, 0))
    assert is_projectively_trivial(eye)
    assert is_projectively_trivial(eye.scale(CycloNum.zeta(12, 5)))
    assert not is_projectively_trivial(eye.scale(2))
    assert not is_projectively_trivial(conclusion1_matrices(6, QRoot(6, 1))[0])


@given(words4, st.integers(0, 11))
def test_spectral_radius_ignores_unit_phases(w, e):
    from skeinkernel.exact_arith import CycloNum

    gens = conclusion1_matrices(4, QRoot(4, 1))
    m = evaluate(gens, w)
    base = spectral_radius(m)
    assert spectral_radius(m.scale(CycloNum.zeta(4, e % 4))) == pytest.approx(base, rel=1e-9)


@given(words4)
def test_integer_and_homological_tests_agree_for_four_points(w):
    assert pa_test_n4(w) == pa_criterion_homological(w, 4, QRoot(2, 1)).criterion


@pytest.mark.parametrize("n", [6, 10])
def test_generator_order_n_when_n_is_2_mod_4(n):
    q = QRoot(n // 2, 1)  # q = A^{4N} has order n/2
    for M in conclusion1_matrices(n, q):
        one = M[0, 0] ** 0
        eye = Matrix.identity(n - 2, one, one - one)
        P, order = M, 1
        while not P == eye:
            P, order = P @ M, order + 1
        assert order == n
