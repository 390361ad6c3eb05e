from __future__ import annotations

import pytest

from skeinkernel.exact_arith import RATFUNC, QRoot
from skeinkernel.four_punctures import (
    RHO_HOM,
    XYPoly,
    corner_entry_closed_form,
    kernel_basis_4,
    p_product,
    p_product_diagrammatic,
    rho_infinity,
    root_8N,
    sigma_matrices_4,
    yx_change_of_basis,
    yx_matching,
)
from skeinkernel.matrices import Matrix
from skeinkernel.skein_rep import SkeinModule

from conftest import braid_relations_hold

A = RATFUNC.A


def test_p_product_small():
    assert p_product(0) == XYPoly((RATFUNC.one,))
    assert p_product(1) == XYPoly((A**-1, A))
    assert p_product(2) == XYPoly((A**-4, A**2 + A**-2, A**4))
    with pytest.raises(ValueError):
        p_product(-1)


@pytest.mark.parametrize("L", [1, 2, 3, 4])
def test_p_product_matches_diagram(L):
    assert p_product(L) == p_product_diagrammatic(L)


@pytest.mark.parametrize("L", range(1, 7))
def test_p_product_extreme_coefficients(L):
    P = p_product(L)
    assert P.coefficient(0) == A ** (-L * L)
    assert P.coefficient(L) == A ** (L * L)


def test_yx_matchings_are_basis_vectors():
    for N in (1, 2, 3):
        S = SkeinModule(4, N)
        assert len({yx_matching(N, k) for k in range(N + 1)}) == N + 1
        assert all(yx_matching(N, k) in S.index for k in range(N + 1))
        assert yx_change_of_basis(S).rank() == N + 1


@pytest.mark.parametrize("N", [1, 2, 3])
def test_sigma_matrices_match_module(N):
    S = SkeinModule(4, N)
    B = yx_change_of_basis(S)
    M, Mbar = sigma_matrices_4(N)
    assert S.sigma(1) @ B == B @ M
    assert S.sigma(2) @ B == B @ Mbar
    assert S.sigma(3) @ B == B @ M


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_sigma_matrices_braid_relation_generic(N):
    M, Mbar = sigma_matrices_4(N)
    assert braid_relations_hold([M, Mbar, M])


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_corner_entry_closed_form(N):
    ring = root_8N(N)
    M, _ = sigma_matrices_4(N, ring)
    assert M[N - 1, N] == corner_entry_closed_form(N, ring)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_kernel_basis_in_kernel(N):
    K = kernel_basis_4(N)
    S = K.module
    B = yx_change_of_basis(S)
    for v in (K.v, K.v_star):
        assert S.in_kernel(B @ list(v.coeffs))


# alpha_N and chi_0 at A = exp(2 pi i / 8N), frozen from the diagrammatic computation
@pytest.mark.parametrize(
    "N,chi0",
    [(1, QRoot(1, 0)), (2, QRoot(16, 12)), (3, QRoot(2, 1))],
)
def test_rho_infinity_structure(N, chi0):
    ring = root_8N(N)
    rho = rho_infinity(N, ring)
    assert rho.alpha**2 == -1
    assert rho.chi0 == chi0.to_cyclo(8 * N)
    assert braid_relations_hold([rho.sigma1, rho.sigma2, rho.sigma1])
    s1, s2 = rho.hom_basis()
    assert [[s1[a, b] == RHO_HOM[0][a, b] for b in range(2)] for a in range(2)] == [[True] * 2] * 2
    assert [[s2[a, b] == RHO_HOM[1][a, b] for b in range(2)] for a in range(2)] == [[True] * 2] * 2


def test_alpha_for_n1():
    rho = rho_infinity(1)
    z = QRoot(8, 1).to_cyclo(8)
    assert rho.alpha == -(z**2)


def test_rho_hom_braid_relation():
    assert braid_relations_hold(list(RHO_HOM))


def test_root_8N_requires_primitive():
    with pytest.raises(ValueError):
        root_8N(2, 2)


@pytest.mark.parametrize("N", [2, 3])
def test_kernel_is_spanned_by_v_and_v_star(N):
    K = kernel_basis_4(N)
    S = K.module
    B = yx_change_of_basis(S)
    span = Matrix.from_columns([B @ list(K.v.coeffs), B @ list(K.v_star.coeffs)])
    assert len(S.kernel) == 2 and span.rank() == 2
    for vec in S.kernel:
        span.solve(vec)
