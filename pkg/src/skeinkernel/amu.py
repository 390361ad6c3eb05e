"""Braid words, spectral radii and the pseudo-Anosov test families.

Words are sequences of (generator, exponent) pairs in sigma_1..sigma_n.
Only sigma_1..sigma_{n-1} are stored by a representation; sigma_n, the half
twist between the last and the first puncture, is evaluated as
omega sigma_{n-1} omega^{-1} with omega = sigma_1 sigma_2 ... sigma_{n-1}.

>>> BraidWord.parse("1 -2 3^2", 4).letters
((1, 1), (2, -1), (3, 2))
>>> pa_test_n4(BraidWord.parse("1 -2", 4))
True
>>> torelli_trace(1, 1)
-8
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact_arith import CycloNum, CycloRing, QRoot, tqft_dimension
from .four_punctures import RHO_HOM, root_8N, sigma_matrices_4
from .homological import conclusion1_matrices
from .matrices import Matrix
from .skein_rep import quotient_rep

__all__ = [
    "IndexOutOfRange",
    "NumericFailure",
    "BraidWord",
    "evaluate",
    "spectral_radius",
    "eigenvalue_moduli",
    "SpectralReport",
    "spectral_report",
    "pa_test_n4",
    "pa_criterion_homological",
    "penner_word",
    "torelli_word",
    "torelli_trace",
    "relation_r3_word",
    "nearest_primitive_root",
    "LimitRow",
    "LimitScan",
    "limit_scan",
    "is_projectively_trivial",
    "TOLERANCE",
]

TOLERANCE = 1e-9


class IndexOutOfRange(IndexError):
    pass


class NumericFailure(ArithmeticError):
    pass


_TOKEN = re.compile(r"^(-?)(\d+)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple = ()

    def __post_init__(self):
        for i, _ in self.letters:
            if not 1 <= i <= self.n:
                raise IndexOutOfRange(f"sigma_{i} is not a generator for n = {self.n}")

    @classmethod
    def parse(cls, text: str, n: int) -> "BraidWord":
        """Tokens "i", "-i" (inverse) and "i^e", separated by spaces or commas."""
        letters = []
        for tok in re.split(r"[\s,]+", text.strip()):
            if not tok:
                continue
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"cannot parse braid letter {tok!r}")
            e = int(m.group(3)) if m.group(3) else 1
            letters.append((int(m.group(2)), -e if m.group(1) else e))
        return cls(n, tuple(letters))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise ValueError("words on different numbers of punctures")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.n, base.letters * abs(k))

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.letters)

    def __str__(self):
        return " ".join(f"{'-' if e < 0 else ''}{i}" + (f"^{abs(e)}" if abs(e) != 1 else "") for i, e in self.letters)


def _identity_like(M: Matrix) -> Matrix:
    one = M._one()
    return Matrix.identity(M.nrows, one)


def _power(M: Matrix, e: int, cache: dict, key) -> Matrix:
    if e < 0:
        inv = cache.get((key, -1))
        if inv is None:
            inv = cache[(key, -1)] = _exact(M).inverse()
        M, e = inv, -e
    out = None
    base = M
    while e:
        if e & 1:
            out = base if out is None else out @ base
        base = base @ base
        e >>= 1
    return out if out is not None else _identity_like(M)


def evaluate(gens: Sequence[Matrix], w: BraidWord) -> Matrix:
    """Ordered product of generator images (sigma_n by rotation conjugation)."""
    n = len(gens) + 1
    if w.n != n:
        raise IndexOutOfRange(f"word on {w.n} punctures, representation on {n}")
    mats = list(gens)
    if any(i == n for i, _ in w.letters):
        omega = mats[0]
        for M in mats[1:]:
            omega = omega @ M
        mats.append(omega @ mats[-1] @ omega.inverse())
    cache: dict = {}
    out = _identity_like(mats[0])
    for i, e in w.letters:
        out = out @ _power(mats[i - 1], e, cache, i)
    return out


# --------------------------------------------------------------------------
# Spectra


def _complex_matrix(m) -> np.ndarray:
    if isinstance(m, Matrix):
        return m.to_complex()
    return np.asarray(m, dtype=complex)


def _exact(M: Matrix) -> Matrix:
    return M.map(lambda x: Fraction(x) if isinstance(x, int) else x)


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_rem(a: list, b: list) -> list:
    """Remainder of a by b (coefficients low degree first, exact field entries)."""
    a = list(a)
    lead = b[-1]
    while len(a) >= len(b) and not (len(a) == 1 and a[0] == 0):
        c = a[-1] / lead
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        a = _trim(a[:-1]) if len(a) > 1 else a
    return a


def _poly_quo(a: list, b: list) -> list:
    a = list(a)
    lead = b[-1]
    out = [a[0] - a[0]] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        out[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        a = a[:-1]
    return out


def squarefree_part(p: list) -> list:
    """p / gcd(p, p'): the same roots, each simple."""
    dp = _trim([p[k] * k for k in range(1, len(p))])
    a, b = p, dp
    while not (len(b) == 1 and b[0] == 0):
        a, b = b, _trim(_poly_rem(a, b))
    if len(a) == 1:
        return p
    return _trim(_poly_quo(p, a))


def _eigenvalues(m) -> np.ndarray:
    """Roots of the exact characteristic polynomial, polished by one Newton step.

    Repeated roots are removed exactly first, so every root polished is simple.
    """
    full = None
    if isinstance(m, Matrix):
        cp = _exact(m).charpoly()
        sf = squarefree_part(cp)
        coeffs = np.array([complex(c) for c in reversed(sf)])
        if len(sf) < len(cp):
            full = np.array([complex(c) for c in reversed(cp)])
    else:
        coeffs = np.poly(_complex_matrix(m))
    if not np.all(np.isfinite(coeffs)):
        raise NumericFailure("characteristic polynomial is not finite")
    roots = np.roots(coeffs)
    d = np.polyder(coeffs)
    polished = []
    for z in roots:
        dz = np.polyval(d, z)
        polished.append(z - np.polyval(coeffs, z) / dz if abs(dz) > TOLERANCE else z)
    out = np.array(polished)
    if not np.all(np.isfinite(out)):
        raise NumericFailure("eigenvalue computation did not converge")
    if full is not None:
        # restore multiplicities: each rough root of the full polynomial picks its nearest simple root
        out = np.array([out[np.argmin(np.abs(out - z))] for z in np.roots(full)])
    return out


def eigenvalue_moduli(m) -> list[float]:
    return sorted((float(abs(z)) for z in _eigenvalues(m)), reverse=True)


def spectral_radius(m) -> float:
    """Largest eigenvalue modulus; unchanged by unit-modulus rescaling of m."""
    return eigenvalue_moduli(m)[0]


@dataclass
class SpectralReport:
    word: str
    rep: str
    moduli: list
    radius: float
    trace: object = None
    criterion: bool = field(init=False)

    def __post_init__(self):
        self.criterion = self.radius > 1 + TOLERANCE

    def to_json(self) -> dict:
        tr = self.trace
        if hasattr(tr, "to_json"):
            tr = tr.to_json()
        elif tr is not None:
            tr = str(tr)
        return {
            "word": self.word,
            "rep": self.rep,
            "moduli": self.moduli,
            "radius": self.radius,
            "trace": tr,
            "radius_exceeds_one": self.criterion,
        }


def spectral_report(gens: Sequence[Matrix], w: BraidWord, rep: str) -> SpectralReport:
    M = evaluate(gens, w)
    moduli = eigenvalue_moduli(M)
    return SpectralReport(str(w), rep, moduli, moduli[0], M.trace())


def pa_test_n4(w: BraidWord) -> bool:
    """|trace| > 2 for the integer image of a four-puncture word."""
    if w.n != 4:
        raise ValueError("pa_test_n4 needs a word on 4 punctures")
    return abs(evaluate(list(RHO_HOM), w).trace()) > 2


def pa_criterion_homological(w: BraidWord, n: int, q) -> SpectralReport:
    """Spectral radius of w acting on H^1(X)_q (q^n = 1, q != 1)."""
    return spectral_report(conclusion1_matrices(n, q), w, f"homological(n={n},q={q})")


# --------------------------------------------------------------------------
# Example families


def penner_word(n: int) -> BraidWord:
    """sigma_1^n sigma_2^-n sigma_3^n ... sigma_{n-1}^n."""
    if n < 6 or n % 2:
        raise ValueError("penner_word needs even n >= 6")
    return BraidWord(n, tuple((i, n if i % 2 else -n) for i in range(1, n)))


def torelli_word(k: int, l: int) -> BraidWord:
    """delta^k (sigma_3 sigma_6) delta^l (sigma_3 sigma_6)^-1 with delta = (sigma_1 sigma_2)^3, n = 6."""
    if k == 0 or l == 0:
        raise ValueError("k and l must be nonzero")
    delta = BraidWord(6, ((1, 1), (2, 1))) ** 3
    s = BraidWord(6, ((3, 1), (6, 1)))
    return delta ** k * s * delta ** l * s.inverse()


TORELLI_Q = QRoot(3, 1)


def torelli_trace(k: int, l: int, q=TORELLI_Q):
    """Exact trace of torelli_word(k, l) on H^1(X)_q (an integer for the default q)."""
    tr = evaluate(conclusion1_matrices(6, q), torelli_word(k, l)).trace()
    if isinstance(tr, CycloNum) and tr.is_rational():
        f = tr.coeffs[0]
        return int(f) if f.denominator == 1 else f
    return tr


def relation_r3_word(n: int) -> BraidWord:
    """sigma_1 ... sigma_{n-1} sigma_{n-1} ... sigma_1, trivial in the mapping class group."""
    up = tuple((i, 1) for i in range(1, n))
    return BraidWord(n, up + tuple(reversed(up)))


def is_projectively_trivial(m: Matrix) -> bool:
    """m is a unit-modulus scalar multiple of the identity (exact)."""
    c = m[0, 0]
    for a in range(m.nrows):
        for b in range(m.ncols):
            if a == b:
                if not m[a, b] == c:
                    return False
            elif not m[a, b] == 0:
                return False
    conj = getattr(c, "conj", None)
    return c * conj() == 1 if conj is not None else c in (1, -1)


# --------------------------------------------------------------------------
# The limit r -> infinity for n = 4


def _circular_distance(a: Fraction, b: Fraction) -> Fraction:
    d = (a - b) % 1
    return min(d, 1 - d)


def nearest_primitive_root(r: int, target: QRoot) -> QRoot:
    """The primitive 4r-th root closest to target (ties: smaller exponent)."""
    assert r >= 2, "no primitive 4r-th root exists below r = 2"
    M = 4 * r
    t = target.angle()
    best = min(
        (j for j in range(1, M) if math.gcd(j, M) == 1),
        key=lambda j: (_circular_distance(Fraction(j, M), t), j),
    )
    return QRoot(M, best)


@dataclass
class LimitRow:
    r: int
    root: QRoot
    dimension: int
    radius: float
    deviation: float | None  # max entrywise |Q_r - Q|, None when V_{2r} is a proper quotient

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "A_r": {"order": self.root.order, "exponent": self.root.exponent},
            "dimension": self.dimension,
            "radius": self.radius,
            "deviation": self.deviation,
        }


@dataclass
class LimitScan:
    N: int
    word: str
    target: QRoot
    limit_radius: float
    rows: list

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "word": self.word,
            "target": {"order": self.target.order, "exponent": self.target.exponent},
            "limit_radius": self.limit_radius,
            "rows": [row.to_json() for row in self.rows],
        }


def _four_gens(N: int, ring) -> list[Matrix]:
    M, Mbar = sigma_matrices_4(N, ring)
    return [M, Mbar, M]


def limit_scan(N: int, w: BraidWord, r_range: Sequence[int], target: QRoot | None = None) -> LimitScan:
    """Q_r = w acting on V_{2r}(S^2, (N)_4) at A_r -> A_infinity, against Q at A_infinity."""
    if w.n != 4:
        raise ValueError("limit_scan needs a word on 4 punctures")
    if target is None:
        target = root_8N(N).root
    Q = evaluate(_four_gens(N, CycloRing(target)), w)
    Qc = Q.to_complex()
    rows = []
    for r in r_range:
        root = nearest_primitive_root(r, target)
        ring = CycloRing(root)
        dim = tqft_dimension(4, N, 0, r) if N <= r - 1 else 0
        if dim == N + 1:
            Qr = evaluate(_four_gens(N, ring), w)
            dev = float(np.max(np.abs(Qr.to_complex() - Qc)))
        else:
            dim, gens = quotient_rep(4, N, r, ring)
            if dim == 0:
                rows.append(LimitRow(r, root, 0, 0.0, None))
                continue
            Qr = evaluate(gens, w)
            dev = None
        rows.append(LimitRow(r, root, dim, spectral_radius(Qr), dev))
    return LimitScan(N, str(w), target, spectral_radius(Q), rows)
