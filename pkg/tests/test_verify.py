from __future__ import annotations

from fractions import Fraction

import pytest

from skeinkernel.exact_arith import QRoot
from skeinkernel.homological import conclusion1_matrices, other_branch, sqrt_branch
from skeinkernel.matrices import Matrix
from skeinkernel.verify import (
    DimensionMismatch,
    VerificationFailure,
    match_branches,
    projectively_equal,
    verify_theorem_n4,
    verify_theorem_n6,
)


def test_projective_equality_finds_phase():
    m = Matrix([[1, 2], [3, 4]])
    res = projectively_equal([m, m], [m.scale(2), m.scale(-1)])
    # phases need unit modulus: 1/2 is rejected
    assert not res.matched
    res = projectively_equal([m, m], [m.scale(-1), m])
    assert res.matched and res.phases == [Fraction(-1), Fraction(1)]


def test_projective_equality_with_sign_conjugation():
    m = Matrix([[1, 2], [3, 4]])
    flipped = Matrix([[1, -2], [-3, 4]])
    assert not projectively_equal([m], [flipped], signs=(1,)).matched
    res = projectively_equal([m], [flipped])
    assert res.matched and res.sign == -1


def test_projective_equality_reports_first_failure():
    m = Matrix([[1, 2], [3, 4]])
    bad = Matrix([[1, 2], [3, 5]])
    res = projectively_equal([m, m], [m, bad], signs=(1,))
    assert not res.matched and res.generator == 2 and res.entry == (1, 1)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        projectively_equal([Matrix([[1]])], [Matrix([[1, 0], [0, 1]])])


def test_branch_flip_equals_sign_conjugation():
    # replacing q^{1/2} by -q^{1/2} is conjugation by diag((-1)^j)
    q = QRoot(6, 1)
    b = sqrt_branch(q)
    first, second = conclusion1_matrices(6, q, b), conclusion1_matrices(6, q, other_branch(b))
    assert not projectively_equal(first, second, signs=(1,)).matched
    res = match_branches(second, {"first": first, "second": second})
    assert res.matched and res.branch == "first" and res.sign == -1


def test_match_branches_reports_first_failure():
    m = Matrix([[1, 2], [3, 4]])
    res = match_branches([m], {"a": [Matrix([[1, 0], [0, 1]])]})
    assert not res.matched and res.branch == "a"


@pytest.mark.parametrize("n,N", [(6, 1), (8, 1), (6, 2)])
def test_verify_n6(n, N):
    rep = verify_theorem_n6(n, N)
    assert rep.matched
    assert rep.dims == {"kernel": n - 2, "h1": n - 2}
    # the match needs the sign-condition branch and the diagonal sign change
    assert rep.sign == -1
    b = sqrt_branch(QRoot(2 * N * n, 2 * N * n - 4 * N).reduced())
    assert rep.branch == f"half=exp(2 pi i {b.half.exponent}/{b.half.order})"
    assert all(p == rep.expected_phase for p in rep.phases)
    js = rep.to_json()
    assert js["matched"] and len(js["phases"]) == n - 1


@pytest.mark.parametrize("N", [1, 2, 3])
def test_verify_n4(N):
    rep = verify_theorem_n4(N)
    assert rep.matched and rep.sign == -1
    assert rep.extra["alpha"] ** 2 == -1


def test_verification_failure_message():
    err = VerificationFailure("n=6,N=1", 3, (0, 1), "differs")
    assert "sigma_3" in str(err) and "(0, 1)" in str(err)
