"""The four-punctured sphere: explicit braid action and the 2-dimensional kernel.

For n = 4 clusters of color N the skein module has the basis Y^k X^{N-k},
k = 0..N, where X arcs join clusters (1,2) and (3,4) and Y arcs join (2,3)
and (4,1).  The half twist on clusters 1, 2 is upper triangular in this basis
and is given by the product formula

    P_L = prod_{k=0}^{L-1} (A^{2k+1} Y + A^{-2k-1} X).

>>> p_product(2)
XYPoly(A^-4, A^2 + A^-2, A^4)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact_arith import RATFUNC, CycloRing, LaurentPoly, QRoot
from .matrices import Matrix
from .skein_rep import FusionTree, KernelMismatch, SkeinModule
from .temperley_lieb import jones_wenzl, phi_coefficient

__all__ = [
    "XYPoly",
    "p_product",
    "p_product_diagrammatic",
    "sigma_matrices_4",
    "corner_entry_closed_form",
    "yx_matching",
    "yx_change_of_basis",
    "FourPunctureKernel",
    "kernel_basis_4",
    "RhoInfinity",
    "rho_infinity",
    "RHO_HOM",
    "root_8N",
]


def root_8N(N: int, exponent: int = 1) -> CycloRing:
    """Scalars at A = exp(2 pi i exponent / 8N), i.e. r = 2N."""
    root = QRoot(8 * N, exponent)
    if not root.is_primitive():
        raise ValueError(f"exponent {exponent} is not primitive mod {8 * N}")
    return CycloRing(root)


@dataclass(frozen=True)
class XYPoly:
    """sum_k coeffs[k] Y^k X^{N-k} with commuting X and Y."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "XYPoly") -> "XYPoly":
        zero = self.coeffs[0] - self.coeffs[0]
        out = [zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return XYPoly(tuple(out))

    def coefficient(self, k: int):
        """Coefficient of Y^k X^{N-k}."""
        return self.coeffs[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, XYPoly) and len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __repr__(self):
        return "XYPoly(" + ", ".join(repr(c) for c in self.coeffs) + ")"


def p_product(L: int, ring=RATFUNC) -> XYPoly:
    """prod_{k=0}^{L-1} (A^{2k+1} Y + A^{-2k-1} X), coefficients of Y^k X^{L-k}."""
    if L < 0:
        raise ValueError("L must be non-negative")
    A = ring.A
    out = XYPoly((ring.one,))
    for k in range(L):
        out = out * XYPoly((A ** (-2 * k - 1), A ** (2 * k + 1)))
    return out


def yx_matching(N: int, k: int) -> tuple[int, ...]:
    """The matching Y^k X^{N-k} on four clusters of N points on a line."""
    if not 0 <= k <= N:
        raise ValueError("k must lie in 0..N")
    P = 4 * N
    m = [0] * P

    def arc(a, b):
        m[a], m[b] = b, a

    for t in range(N - k):
        arc(N - 1 - t, N + t)  # X between clusters 1 and 2
        arc(3 * N - 1 - t, 3 * N + t)  # X between clusters 3 and 4
    for t in range(k):
        arc(2 * N - 1 - t, 2 * N + t)  # Y between clusters 2 and 3
        arc(t, 4 * N - 1 - t)  # Y between clusters 4 and 1
    return tuple(m)


def yx_change_of_basis(S: SkeinModule) -> Matrix:
    """Columns: coordinates of Y^k X^{N-k}, k = 0..N, in the cluster-matching basis."""
    if S.n != 4 or S.k:
        raise ValueError("needs the module of four clusters")
    cols = []
    for k in range(S.N + 1):
        v = S.zero_vector()
        v[S.index[yx_matching(S.N, k)]] = S.ring.one
        cols.append(v)
    return Matrix.from_columns(cols)


def _to_yx(S: SkeinModule, v: Sequence) -> XYPoly:
    return XYPoly(tuple(v[S.index[yx_matching(S.N, k)]] for k in range(S.N + 1)))


def p_product_diagrammatic(L: int, ring=RATFUNC) -> XYPoly:
    """P_L read off the resolved cabled crossing on clusters 1, 2 applied to Y^L."""
    S = SkeinModule(4, L, 0, ring)
    v = S.zero_vector()
    v[S.index[yx_matching(L, L)]] = ring.one
    return _to_yx(S, S.sigma(1, normalized=False) @ v)


def _twist_prefactor(k: int, ring):
    return ring(LaurentPoly.monomial(k * (k + 2), -1 if k % 2 else 1))


def sigma_matrices_4(N: int, ring=RATFUNC) -> tuple[Matrix, Matrix]:
    """(M, Mbar): sigma_1 (= sigma_3) and sigma_2 in the basis Y^k X^{N-k}.

    M[j, k] = (-A)^{k(k+2)} [Y^j X^{k-j}] P_k for j <= k; Mbar = S M S with S
    the flip k -> N-k.
    """
    zero = ring.zero
    rows = [[zero] * (N + 1) for _ in range(N + 1)]
    for k in range(N + 1):
        Pk = p_product(k, ring)
        pre = _twist_prefactor(k, ring)
        for j in range(k + 1):
            rows[j][k] = pre * Pk.coefficient(j)
    M = Matrix(rows)
    Mbar = Matrix([[rows[N - j][N - k] for k in range(N + 1)] for j in range(N + 1)])
    return M, Mbar


def corner_entry_closed_form(N: int, ring):
    """2 (-1)^N A^{2N^2+2N} / (A^2 - A^-2), the entry M[N-1, N] at A^{4N} = -1."""
    A = ring.A
    val = A ** (2 * N * N + 2 * N) * 2 / (A ** 2 - A ** -2)
    return -val if N % 2 else val


# --------------------------------------------------------------------------
# The kernel at r = 2N


@dataclass
class FourPunctureKernel:
    N: int
    ring: object
    module: SkeinModule
    v: XYPoly
    v_star: XYPoly
    a0: object


def _v_tree(N: int) -> FusionTree:
    return FusionTree(4, ((0, 4, N), (1, 4, N), (4, 5, 2 * N - 2), (2, 5, N), (3, 5, N)))


def kernel_basis_4(N: int, ring=None) -> FourPunctureKernel:
    """v: clusters (1,2) fused through f^(2N-2) into (3,4); v* = s(v)."""
    if ring is None:
        ring = root_8N(N)
    S = SkeinModule(4, N, 0, ring)
    vec = S.tree_vector(_v_tree(N))
    if not S.in_kernel(vec):
        raise KernelMismatch("v is not in the Gram kernel")
    vstar = S.rotation() @ vec
    v, vs = _to_yx(S, vec), _to_yx(S, vstar)
    a0 = phi_coefficient(N - 1, jones_wenzl(2 * N - 2, ring)) if N > 1 else ring.one
    if not v.coefficient(0) == a0:
        raise KernelMismatch("leading coefficient of v differs from the projector coefficient")
    return FourPunctureKernel(N, ring, S, v, vs, a0)


@dataclass
class RhoInfinity:
    """Generators on the kernel in the basis (v, v*)."""

    N: int
    chi0: object
    alpha: object
    sigma1: Matrix
    sigma2: Matrix

    def hom_basis(self) -> tuple[Matrix, Matrix]:
        """chi0^{-1} times the generators in the basis (v, alpha^{-1} v*).

        With alpha^2 = -1 these are exactly RHO_HOM; the basis (v, alpha v*)
        gives the same matrices conjugated by diag(1, -1).
        """
        one, zero = self.chi0 ** 0, self.chi0 - self.chi0
        P = Matrix([[one, zero], [zero, self.alpha ** -1]])
        Pi = P.inverse()
        c = self.chi0 ** -1
        return (Pi @ self.sigma1 @ P).scale(c), (Pi @ self.sigma2 @ P).scale(c)


RHO_HOM = (
    Matrix([[1, 1], [0, 1]]),
    Matrix([[1, 0], [-1, 1]]),
    Matrix([[1, 1], [0, 1]]),
)


def rho_infinity(N: int, ring=None) -> RhoInfinity:
    """Restrict sigma_1, sigma_2 to span(v, v*) at a primitive 8N-th root."""
    if ring is None:
        ring = root_8N(N)
    K = kernel_basis_4(N, ring)
    M, Mbar = sigma_matrices_4(N, ring)
    B = Matrix.from_columns([list(K.v.coeffs), list(K.v_star.coeffs)])
    if B.rank() != 2:
        raise KernelMismatch("v and v* are linearly dependent")
    s1 = Matrix.from_columns([B.solve(M @ list(c)) for c in B.columns()])
    s2 = Matrix.from_columns([B.solve(Mbar @ list(c)) for c in B.columns()])
    A = ring.A
    chi0 = A ** (2 * N * (N - 1)) * (1 if N % 2 else -1)
    zero = ring.zero
    if not (s1[0, 0] == chi0 and s1[1, 1] == chi0 and s1[1, 0] == zero):
        raise KernelMismatch("sigma_1 on the kernel is not chi0 times a unipotent upper triangular matrix")
    alpha = s1[0, 1] / chi0
    expected2 = Matrix([[chi0, zero], [chi0 * alpha, chi0]])
    if not s2 == expected2:
        raise KernelMismatch("sigma_2 on the kernel does not mirror sigma_1")
    return RhoInfinity(N, chi0, alpha, s1, s2)
