from __future__ import annotations

import math

import pytest

from skeinkernel.exact_arith import RATFUNC, CycloRing, QRoot, quantum_int
from skeinkernel.temperley_lieb import (
    DoesNotExist,
    StrandMismatch,
    TLElement,
    _block_swap_word,
    all_diagrams,
    bracket_closed,
    compose,
    crossing,
    hook,
    identity,
    is_planar,
    jones_wenzl,
    jones_wenzl_wenzl,
    jw_fk_expand,
    nested_cups,
    phi_coefficient,
    projector_crossing_coefficient,
    resolve_crossing,
    tl_multiply,
)
from skeinkernel.recoupling import loop_network, theta_network

R = RATFUNC
A = R.A
DELTA = -(A**2) - A**-2


def q(k):
    return R(quantum_int(k))


def el(d):
    return TLElement.diagram(d, R)


# ---- diagram algebra -----------------------------------------------------


@pytest.mark.parametrize("m", range(1, 11))
def test_catalan_count(m):
    ds = all_diagrams(m)
    assert len(ds) == math.comb(2 * m, m) // (m + 1)
    assert all(is_planar(d) for d in ds)


def test_hook_relations():
    e1, e2 = el(hook(3, 0)), el(hook(3, 1))
    assert e1 * e1 == e1.scale(DELTA)
    assert e1 * e2 * e1 == e1
    assert e2 * e1 * e2 == e2
    one = TLElement.one(3, R)
    assert one * e1 == e1 and e1 * one == e1


def test_compose_counts_loops():
    d, loops = compose(hook(2, 0), hook(2, 0))
    assert d == hook(2, 0) and loops == 1


def test_strand_mismatch():
    with pytest.raises(StrandMismatch):
        tl_multiply(TLElement.one(2, R), TLElement.one(3, R))


# ---- Jones-Wenzl ----------------------------------------------------------


def test_jw_small_cases():
    assert jones_wenzl(1, R) == TLElement.one(1, R)
    expected = TLElement.one(2, R) + el(hook(2, 0)).scale(q(2) ** -1)
    assert jones_wenzl(2, R) == expected


@pytest.mark.parametrize("L", range(1, 7))
def test_fk_recursion_matches_wenzl(L):
    assert jw_fk_expand(L, R) == jones_wenzl_wenzl(L, R)


@pytest.mark.parametrize("m", range(1, 7))
def test_jw_idempotent_direct(m):
    f = jones_wenzl(m, R)
    assert f * f == f


@pytest.mark.parametrize("m", [7, 8])
def test_jw_hook_annihilation_and_unit_coefficient(m):
    # killed by every hook on both sides and identity coefficient 1: this characterizes f^(m)
    f = jones_wenzl(m, R)
    assert f.coefficient(identity(m)) == 1
    for i in range(m - 1):
        e = el(hook(m, i))
        assert (e * f).terms == {} and (f * e).terms == {}


@pytest.mark.slow
def test_jw_idempotent_m8():
    f = jones_wenzl(8, R)
    assert f * f == f


def test_jw_does_not_exist_at_root():
    ring = CycloRing(QRoot(12, 1))  # r = 3: [3] = 0
    jones_wenzl(2, ring)
    with pytest.raises(DoesNotExist):
        jones_wenzl(3, ring)


def test_jw_exists_at_8N_root():
    for N in (1, 2, 3):
        ring = CycloRing(QRoot(8 * N, 1))
        f = jones_wenzl(2 * N - 1, ring)
        for i in range(2 * N - 2):
            assert (TLElement.diagram(hook(2 * N - 1, i), ring) * f).terms == {}


def _phi_product(m):
    out = R.one
    for k in range(1, m + 1):
        out = out * q(k) ** 2 / (q(2 * k) * q(2 * k - 1))
    return out


@pytest.mark.parametrize("m", [1, 2, 3])
def test_phi_coefficient_product_formula(m):
    assert phi_coefficient(m, jones_wenzl(2 * m, R)) == _phi_product(m)


def test_phi_examples():
    assert phi_coefficient(1, jones_wenzl(2, R)) == q(2) ** -1
    assert phi_coefficient(2, jones_wenzl(4, R)) == q(2) / (q(4) * q(3))
    assert phi_coefficient(2, TLElement.one(4, R)) == 0
    with pytest.raises(StrandMismatch):
        phi_coefficient(2, TLElement.one(3, R))
    assert nested_cups(1) == hook(2, 0)


# ---- crossings ------------------------------------------------------------


def test_single_crossing_kauffman_relation():
    assert crossing(2, 0, R) == TLElement.one(2, R).scale(A) + el(hook(2, 0)).scale(A**-1)
    assert resolve_crossing(1, 1, R) == crossing(2, 0, R)


def test_cabled_crossing_resolution_count():
    # a 2-cabled crossing is four elementary crossings: 2^4 binary resolutions
    assert len(_block_swap_word(2, 2)) == 4


@pytest.mark.parametrize("j,L", [(1, 2), (1, 3), (2, 3), (2, 4), (1, 4)])
def test_crossing_absorbed_by_projector(j, L):
    f = jones_wenzl(L, R)
    c = resolve_crossing(j, L - j, R)
    coeff = R(projector_crossing_coefficient(j, L))
    assert c * f == f.scale(coeff)
    assert projector_crossing_coefficient(1, 2) == A


# ---- closed diagrams ------------------------------------------------------


def test_bracket_examples():
    assert bracket_closed(loop_network(1).to_network(), R) == DELTA
    assert bracket_closed(loop_network(2).to_network(), R) == q(3)
    assert bracket_closed(theta_network(1, 1, 2).to_network(), R) == q(3)


def test_bracket_multiplicative_over_disjoint_union():
    from skeinkernel.temperley_lieb import Network

    net = Network(0)
    net.loops = 2
    assert bracket_closed(net, R) == DELTA**2
