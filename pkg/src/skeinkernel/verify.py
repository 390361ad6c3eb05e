"""Exact comparison of the kernel-space representation with rho_{q^-1}.

Two lists of generator matrices are projectively equal when, after an
optional diagonal rescaling D = diag(eps^j) with eps = +-1, each pair
differs by a scalar phase: D^-1 M_j D = mu_j M'_j.  The search also runs
over the two square roots of q used to build the homological side.

>>> from skeinkernel.matrices import Matrix
>>> m = Matrix([[1, 2], [0, 1]])
>>> res = projectively_equal([m], [m.scale(-1)])
>>> res.matched, res.phases
(True, [Fraction(-1, 1)])
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact_arith import QRoot
from .four_punctures import rho_infinity, root_8N
from .homological import conclusion1_matrices, h1_dimension, other_branch, sqrt_branch
from .matrices import Matrix
from .skein_rep import conclusion2_matrices, kernel_rep, kernel_root

__all__ = [
    "DimensionMismatch",
    "VerificationFailure",
    "ProjComparison",
    "projectively_equal",
    "match_branches",
    "VerifyReport",
    "verify_theorem_n6",
    "verify_theorem_n4",
]


class DimensionMismatch(ValueError):
    pass


class VerificationFailure(AssertionError):
    def __init__(self, case: str, generator: int | None, entry: tuple[int, int] | None, message: str):
        self.case, self.generator, self.entry = case, generator, entry
        where = "" if generator is None else f" at sigma_{generator}" + ("" if entry is None else f", entry {entry}")
        super().__init__(f"{case}: {message}{where}")


@dataclass
class ProjComparison:
    matched: bool
    phases: list = field(default_factory=list)
    sign: int = 1
    branch: str | None = None
    generator: int | None = None  # first failing generator (1-based)
    entry: tuple[int, int] | None = None  # first differing entry there

    def to_json(self) -> dict:
        return {
            "matched": self.matched,
            "phases": [_json(p) for p in self.phases],
            "sign": self.sign,
            "branch": self.branch,
            "failed_generator": self.generator,
            "failed_entry": self.entry,
        }


def _json(c):
    if hasattr(c, "to_json"):
        return c.to_json()
    return str(c)


def _first_nonzero(M: Matrix):
    rows, cols = M.shape
    for a in range(rows):
        for b in range(cols):
            if not M[a, b] == 0:
                return a, b
    return None


def _div(a, b):
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / b
    return a / b


def _is_unit(c) -> bool:
    conj = getattr(c, "conj", None)
    if conj is None:
        return c in (1, -1)
    return c * conj() == 1


def _compare_once(Ms, Ms2, eps: int) -> ProjComparison:
    phases = []
    for j, (M, M2) in enumerate(zip(Ms, Ms2), start=1):
        d = M.shape[0]
        X = Matrix([[M[a, b] if (a + b) % 2 == 0 or eps == 1 else -M[a, b] for b in range(d)] for a in range(d)])
        pos = _first_nonzero(M2)
        if pos is None:
            return ProjComparison(False, phases, eps, generator=j, entry=None)
        mu = _div(X[pos], M2[pos])
        for a in range(d):
            for b in range(d):
                if not X[a, b] == mu * M2[a, b]:
                    return ProjComparison(False, phases, eps, generator=j, entry=(a, b))
        if not _is_unit(mu):
            return ProjComparison(False, phases, eps, generator=j, entry=pos)
        phases.append(mu)
    return ProjComparison(True, phases, eps)


def projectively_equal(Ms, Ms2, signs=(1, -1)) -> ProjComparison:
    """Search eps in ``signs`` for D^-1 M_j D = mu_j M'_j with unit-modulus mu_j."""
    if len(Ms) != len(Ms2) or any(a.shape != b.shape for a, b in zip(Ms, Ms2)):
        raise DimensionMismatch("generator lists differ in length or matrix size")
    first = None
    for eps in signs:
        res = _compare_once(Ms, Ms2, eps)
        if res.matched:
            return res
        first = first or res
    return first


def match_branches(Ms, candidates: dict) -> ProjComparison:
    """Try each labelled candidate list (one per square-root branch) in order."""
    first = None
    for label, Ms2 in candidates.items():
        res = projectively_equal(Ms, Ms2)
        res.branch = label
        if res.matched:
            return res
        first = first or res
    return first


# --------------------------------------------------------------------------
# Full comparisons


@dataclass
class VerifyReport:
    case: str
    matched: bool
    dims: dict
    checks: dict
    phases: list
    expected_phase: object
    lam: object
    branch: str | None
    sign: int
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "matched": self.matched,
            "dims": self.dims,
            "checks": self.checks,
            "phases": [_json(p) for p in self.phases],
            "expected_phase": _json(self.expected_phase),
            "lambda": _json(self.lam),
            "branch": self.branch,
            "sign": self.sign,
            **{k: _json(v) if not isinstance(v, (bool, int, str, list, dict)) else v for k, v in self.extra.items()},
        }


def _inverse_q(A: QRoot, N: int) -> QRoot:
    return (A ** (-4 * N)).reduced()


def _branch_candidates(n: int, q: QRoot) -> dict:
    b = sqrt_branch(q)
    o = other_branch(b)
    return {
        f"half=exp(2 pi i {b.half.exponent}/{b.half.order})": conclusion1_matrices(n, q, b),
        f"half=exp(2 pi i {o.half.exponent}/{o.half.order})": conclusion1_matrices(n, q, o),
    }


def _require(case: str, res: ProjComparison, message: str) -> None:
    if not res.matched:
        raise VerificationFailure(case, res.generator, res.entry, message)


def verify_theorem_n6(n: int, N: int, cap: int | None = None) -> VerifyReport:
    """Diagrammatic kernel rep = closed-form generators = rho_{q^-1}, all projectively."""
    case = f"n={n},N={N}"
    ring = kernel_root(n, N)
    qinv = _inverse_q(ring.root, N)
    K = kernel_rep(n, N, ring, cap=cap)
    dims = {"kernel": len(K.w), "h1": h1_dimension(n, qinv)}
    if dims["kernel"] != dims["h1"]:
        raise VerificationFailure(case, None, None, f"dimensions differ: {dims}")

    closed = conclusion2_matrices(n, N, ring)
    step1 = projectively_equal(K.scaled(), closed, signs=(1,))
    _require(case, step1, "diagrammatic kernel rep differs from the closed form")
    if not all(p == 1 for p in step1.phases):
        raise VerificationFailure(case, None, None, "closed form matches only up to nontrivial phases")

    candidates = _branch_candidates(n, qinv)
    step2 = match_branches(closed, candidates)
    _require(case, step2, "closed form differs from rho_{q^-1}")

    step3 = match_branches(K.matrices, candidates)
    _require(case, step3, "kernel rep differs from rho_{q^-1}")
    expected = -K.chi0 * K.q
    if not all(p == expected for p in step3.phases):
        raise VerificationFailure(case, None, None, "phases differ from -chi_0 q")

    return VerifyReport(
        case,
        True,
        dims,
        {"diagrammatic_vs_closed_form": True, "closed_form_vs_homological": True, "composite": True},
        step3.phases,
        expected,
        K.lam,
        step3.branch,
        step3.sign,
    )


def verify_theorem_n4(N: int) -> VerifyReport:
    """rho_infinity on span(v, v*) = rho_{-1} on H^1(X)_{-1}, projectively."""
    case = f"n=4,N={N}"
    ring = root_8N(N)
    qinv = _inverse_q(ring.root, N)  # = -1
    rho = rho_infinity(N, ring)
    dims = {"kernel": 2, "h1": h1_dimension(4, qinv)}
    if dims["h1"] != 2:
        raise VerificationFailure(case, None, None, f"dimensions differ: {dims}")
    alpha_ok = rho.alpha ** 2 == -1
    if not alpha_ok:
        raise VerificationFailure(case, None, None, "alpha_N^2 != -1")
    Ms = [rho.sigma1, rho.sigma2, rho.sigma1]
    res = match_branches(Ms, _branch_candidates(4, qinv))
    _require(case, res, "rho_infinity differs from rho_{-1}")
    if not all(p == rho.chi0 for p in res.phases):
        raise VerificationFailure(case, None, None, "phases differ from chi_0")
    return VerifyReport(
        case,
        True,
        dims,
        {"alpha_squared_is_minus_one": alpha_ok, "rho_infinity_vs_homological": True},
        res.phases,
        rho.chi0,
        None,
        res.branch,
        res.sign,
        {"alpha": rho.alpha, "chi0": rho.chi0},
    )
