"""The cyclic-cover representation rho_q on H^1(X)_q in explicit coordinates.

X is the d-fold cyclic cover of the sphere branched over n points and q a
root of unity.  Braid generators act by complex reflections with respect
to a hermitian form on a spanning set u_1..u_n:

    <u_j, u_j> = -i (q - q^-1),  <u_j, u_{j+1}> = i (1 - q^-1),  0 otherwise,

with indices mod n.  When q^n = 1 the normalised vectors
u~_j = q^{-j/2} u_j / Delta, j = 1..n-2, form a basis and the generators
act by the matrices of ``conclusion1_matrices``.

All scalars live in Q(zeta_M) with M = lcm(4, 2 ord(q)), which contains i,
q and both square roots of q.

>>> from skeinkernel.exact_arith import QRoot
>>> h1_dimension(6, QRoot(6, 1)), h1_dimension(4, QRoot(5, 1))
(4, 3)
>>> sqrt_branch(QRoot(6, 5)).half
QRoot(order=12, exponent=5)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import CycloNum, QRoot, RATFUNC
from .matrices import Matrix
from .skein_rep import reflection_matrices

__all__ = [
    "GramDegenerate",
    "RootOfUnityRequired",
    "h1_dimension",
    "cover_genus",
    "field_order",
    "SqrtBranch",
    "sqrt_branch",
    "other_branch",
    "u_gram",
    "u_tilde_gram",
    "conclusion1_matrices",
    "conclusion1_rep",
    "McMullenRep",
    "mcmullen_general",
    "burau_reduced",
    "preserves_form",
]


class GramDegenerate(ArithmeticError):
    """The Gram matrix of u_1..u_{n-1} is singular (this happens when q^n = 1)."""


class RootOfUnityRequired(ValueError):
    pass


def _as_qroot(q) -> QRoot:
    if isinstance(q, QRoot):
        return q.reduced()
    if isinstance(q, int) and q in (1, -1):
        return QRoot(2, 0 if q == 1 else 1).reduced()
    raise TypeError("q must be a QRoot")


def h1_dimension(n: int, q) -> int:
    """Dimension of the q-eigenspace of the deck transformation on H^1(X)."""
    q = _as_qroot(q)
    if q.exponent == 0:
        return 0
    return n - 2 if (q ** n).exponent == 0 else n - 1


def cover_genus(d: int, n: int) -> int:
    """Genus of the d-fold cyclic cover of the sphere branched over n points (and possibly infinity)."""
    if d < 2 or n < 2:
        raise ValueError("need d >= 2 and n >= 2")
    twice = (n - 1) * (d - 1) + 1 - math.gcd(d, n)
    assert twice % 2 == 0, "Riemann-Hurwitz gave a half-integral genus"
    return twice // 2


def field_order(q) -> int:
    """M such that i, q and the square roots of q all lie in Q(zeta_M)."""
    q = _as_qroot(q)
    return math.lcm(4, 2 * q.order)


@dataclass(frozen=True)
class SqrtBranch:
    """A square root ``half`` of q with Delta^2 = i (half - half^-1) <= 0.

    Delta itself is usually not cyclotomic, so only Delta^2 is exact and
    ``delta`` is a complex number (pure imaginary, non-negative imaginary part).
    """

    q: QRoot
    half: QRoot
    delta_squared: CycloNum

    @property
    def delta(self) -> complex:
        return 1j * math.sqrt(max(0.0, -complex(self.delta_squared).real))

    def half_cyclo(self, order: int | None = None) -> CycloNum:
        return self.half.to_cyclo(order or field_order(self.q))


def _branch(q: QRoot, half: QRoot) -> SqrtBranch:
    M = field_order(q)
    h = half.to_cyclo(M)
    i = CycloNum.zeta(M, M // 4)
    return SqrtBranch(q, half, i * (h - h ** -1))


def sqrt_branch(q) -> SqrtBranch:
    """The square root of q with i(q^{1/2} - q^{-1/2}) <= 0."""
    q = _as_qroot(q)
    if q.exponent == 0:
        raise RootOfUnityRequired("q must differ from 1")
    # the two roots have arguments t/2 and t/2 + 1/2 (in turns); pick the one in (0, 1/2)
    a = Fraction(q.exponent, 2 * q.order)
    if not 0 < a < Fraction(1, 2):
        a += Fraction(1, 2)
    half = QRoot(a.denominator, a.numerator)
    return _branch(q, half)


def other_branch(b: SqrtBranch) -> SqrtBranch:
    """The opposite square root of the same q (violates the sign condition)."""
    return _branch(b.q, b.half * QRoot(2, 1))


# --------------------------------------------------------------------------
# Hermitian forms


def u_gram(n: int, q, count: int | None = None) -> Matrix:
    """<u_a, u_b> for a, b = 1..count (default n), linear on the left."""
    q = _as_qroot(q)
    M = field_order(q)
    count = n if count is None else count
    qq = q.to_cyclo(M)
    i = CycloNum.zeta(M, M // 4)
    zero = CycloNum.const(M, 0)
    diag = -i * (qq - qq ** -1)
    up = i * (1 - qq ** -1)  # <u_j, u_{j+1}>
    rows = [[zero] * count for _ in range(count)]
    for a in range(count):
        rows[a][a] = diag
        for b in range(count):
            if (b - a) % n == 1 and b != a:
                rows[a][b] = up
            elif (a - b) % n == 1 and b != a:
                rows[a][b] = up.conj()
    return Matrix(rows)


def u_tilde_gram(n: int, q, branch: SqrtBranch | None = None) -> Matrix:
    """<u~_a, u~_b>, a, b = 1..n-2, recomputed from the u-form and the rescaling."""
    q = _as_qroot(q)
    branch = sqrt_branch(q) if branch is None else branch
    M = field_order(q)
    h = branch.half_cyclo(M)
    G = u_gram(n, q, n - 2)
    norm = -branch.delta_squared  # Delta * conj(Delta) for pure imaginary Delta
    d = n - 2
    return Matrix(
        [[(h ** -(a + 1)) * (h ** -(b + 1)).conj() * G[a, b] / norm for b in range(d)] for a in range(d)]
    )


def preserves_form(mats, G: Matrix) -> bool:
    """<Mx, My> = <x, y> for the form x^T G conj(y), i.e. M^T G conj(M) = G."""
    return all(M.T @ G @ M.conj() == G for M in mats)


# --------------------------------------------------------------------------
# Representations


@dataclass
class McMullenRep:
    n: int
    q: QRoot
    branch: SqrtBranch | None
    gram: Matrix
    generators: list
    basis: str

    def preserves_form(self) -> bool:
        return preserves_form(self.generators, self.gram)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": {"order": self.q.order, "exponent": self.q.exponent},
            "half": None if self.branch is None else {"order": self.branch.half.order, "exponent": self.branch.half.exponent},
            "basis": self.basis,
            "gram": [[c.to_json() for c in row] for row in self.gram.rows],
            "generators": [[[c.to_json() for c in row] for row in M.rows] for M in self.generators],
        }


def conclusion1_matrices(n: int, q, branch: SqrtBranch | None = None) -> list[Matrix]:
    """sigma_1..sigma_{n-1} on the basis u~_1..u~_{n-2} (requires q^n = 1, q != 1).

    sigma_j u~_j = -q u~_j, sigma_j u~_k = u~_k + q^{1/2} u~_j for |j-k| = 1,
    and u~_{n-1} = e_1(delta) u~_{n-2} - e_2(delta) u~_{n-3} + ... with
    delta = -q^{1/2} - q^{-1/2}.
    """
    q = _as_qroot(q)
    if q.exponent == 0 or (q ** n).exponent != 0:
        raise RootOfUnityRequired("the mapping class group acts only when q^n = 1 and q != 1")
    branch = sqrt_branch(q) if branch is None else branch
    M = field_order(q)
    return reflection_matrices(n, q.to_cyclo(M), branch.half_cyclo(M), CycloNum.const(M, 1), sign=1)


def conclusion1_rep(n: int, q, branch: SqrtBranch | None = None) -> McMullenRep:
    q = _as_qroot(q)
    branch = sqrt_branch(q) if branch is None else branch
    return McMullenRep(n, q, branch, u_tilde_gram(n, q, branch), conclusion1_matrices(n, q, branch), "u_tilde")


def mcmullen_general(n: int, q) -> McMullenRep:
    """Reflection formulas on the basis u_1..u_{n-1} (for q^n != 1).

    sigma_j x = x - (q+1) <x,u_j>/<u_j,u_j> u_j, or x - (i/2) <x,u_j> u_j at q = -1.
    """
    q = _as_qroot(q)
    if q.exponent == 0:
        raise RootOfUnityRequired("q must differ from 1")
    G = u_gram(n, q, n - 1)
    if G.rank() < n - 1:
        raise GramDegenerate(f"<u_a, u_b> is singular for n={n}, q={q}; use conclusion1_matrices")
    M = field_order(q)
    qq = q.to_cyclo(M)
    one = CycloNum.const(M, 1)
    zero = CycloNum.const(M, 0)
    i = CycloNum.zeta(M, M // 4)
    minus_one = q.order == 2
    d = n - 1
    mats = []
    for j in range(d):
        c = i / 2 if minus_one else (qq + 1) / G[j, j]
        cols = []
        for k in range(d):
            col = [one if t == k else zero for t in range(d)]
            col[j] = col[j] - c * G[k, j]
            cols.append(col)
        mats.append(Matrix.from_columns(cols))
    return McMullenRep(n, q, None, G, mats, "u")


def burau_reduced(n: int, t=None) -> list[Matrix]:
    """Reduced Burau matrices of sigma_1..sigma_{n-1}, size n-1 (t defaults to the generic variable)."""
    if t is None:
        t = RATFUNC.A
    one = t ** 0
    zero = t - t
    d = n - 1
    mats = []
    for i in range(d):
        rows = [[one if a == b else zero for b in range(d)] for a in range(d)]
        rows[i][i] = -t
        if i > 0:
            rows[i][i - 1] = t
        if i < d - 1:
            rows[i][i + 1] = one
        mats.append(Matrix(rows))
    return mats
