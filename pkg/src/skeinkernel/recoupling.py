"""Recoupling constants: quantum dimensions, theta and tetrahedral evaluations,
change-of-fusion-tree coefficients and half-twist eigenvalues.

Closed forms are computed exactly in Q(A) and then specialised to the target
scalar ring.  Each one has a diagrammatic counterpart (``*_network``) built on
:class:`~skeinkernel.temperley_lieb.PlanarGraph`; the tests hold the two
against each other.

>>> theta(1, 1, 2) == quantum_dim(2)
True
>>> twist_eigenvalue(1, 2)
-A^4
"""

from __future__ import annotations

from functools import lru_cache
from math import atan2

from .exact_arith import (
    RATFUNC,
    DenominatorVanishes,
    LaurentPoly,
    RatFunc,
    quantum_factorial,
    quantum_int,
)
from .matrices import Matrix
from .temperley_lieb import NotAdmissible, PlanarGraph, bracket_closed

__all__ = [
    "NotAdmissible",
    "SingularAtRoot",
    "is_admissible",
    "is_2r_admissible",
    "quantum_dim",
    "theta",
    "tet",
    "f_matrix",
    "f_matrix_full",
    "twist_eigenvalue",
    "crossing_rule",
    "theta_network",
    "tet_network",
    "loop_network",
    "order_by_position",
    "theta_oracle",
    "tet_oracle",
    "crossing_oracle",
    "vertex_pair",
    "four_leg_tree",
    "f_matrix_oracle",
]


class SingularAtRoot(ZeroDivisionError):
    """A recoupling constant has a vanishing denominator at the chosen root."""


def is_admissible(a: int, b: int, c: int) -> bool:
    """a+b+c even and each color at most the sum of the other two.

    >>> is_admissible(1, 1, 3)
    False
    """
    if min(a, b, c) < 0:
        return False
    return (a + b + c) % 2 == 0 and abs(a - c) <= b <= a + c


def is_2r_admissible(a: int, b: int, c: int, r: int) -> bool:
    """Admissible, every color at most r-2 and a+b+c <= 2r-4."""
    return is_admissible(a, b, c) and max(a, b, c) <= r - 2 and a + b + c <= 2 * r - 4


def _require(a: int, b: int, c: int):
    if not is_admissible(a, b, c):
        raise NotAdmissible(f"({a}, {b}, {c}) is not admissible")


def _specialise(value: RatFunc, ring):
    if ring is RATFUNC or ring is None:
        return value
    try:
        return ring(value)
    except DenominatorVanishes as exc:
        raise SingularAtRoot(str(exc)) from exc


def _qf(n: int) -> RatFunc:
    return RatFunc.coerce(quantum_factorial(n))


@lru_cache(maxsize=None)
def _quantum_dim(a: int) -> LaurentPoly:
    q = quantum_int(a + 1)
    return q if a % 2 == 0 else -q


def quantum_dim(a: int, ring=RATFUNC):
    """Delta_a = (-1)^a [a+1], the value of a loop colored a."""
    if a < 0:
        raise ValueError("negative color")
    return _specialise(RatFunc.coerce(_quantum_dim(a)), ring)


@lru_cache(maxsize=None)
def _theta(a: int, b: int, c: int) -> RatFunc:
    _require(a, b, c)
    i, j, k = (a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2
    num = _qf(i + j + k + 1) * _qf(i) * _qf(j) * _qf(k)
    den = _qf(i + j) * _qf(j + k) * _qf(i + k)
    val = num / den
    return -val if (i + j + k) % 2 else val


def theta(a: int, b: int, c: int, ring=RATFUNC):
    """Evaluation of the theta graph with edges colored a, b, c."""
    return _specialise(_theta(a, b, c), ring)


@lru_cache(maxsize=None)
def _tet(A: int, B: int, C: int, D: int, E: int, F: int) -> RatFunc:
    faces = [(A, D, E), (B, C, E), (A, B, F), (C, D, F)]
    for t in faces:
        _require(*t)
    a = [sum(t) // 2 for t in faces]
    b = [(B + D + E + F) // 2, (A + C + E + F) // 2, (A + B + C + D) // 2]
    lo, hi = max(a), min(b)
    inner = RatFunc.coerce(1)
    for bj in b:
        for ai in a:
            inner = inner * _qf(bj - ai)
    ext = RatFunc.coerce(1)
    for x in (A, B, C, D, E, F):
        ext = ext * _qf(x)
    total = RatFunc.coerce(0)
    for s in range(lo, hi + 1):
        term = _qf(s + 1)
        den = RatFunc.coerce(1)
        for ai in a:
            den = den * _qf(s - ai)
        for bj in b:
            den = den * _qf(bj - s)
        term = term / den
        total = total + (-term if s % 2 else term)
    return inner / ext * total


def tet(a: int, b: int, c: int, d: int, e: int, f: int, ring=RATFUNC):
    """Tetrahedral network with vertices (a,d,e), (b,c,e), (a,b,f), (c,d,f).

    Edge e separates a,d from b,c and edge f separates a,b from c,d.
    """
    return _specialise(_tet(a, b, c, d, e, f), ring)


def _channels(a: int, b: int, c: int, d: int) -> list[int]:
    top = min(a + b, c + d)
    return [f for f in range(top + 1) if is_admissible(a, b, f) and is_admissible(c, d, f)]


def f_matrix(a: int, b: int, c: int, d: int, e: int, f: int, ring=RATFUNC):
    """Coefficient of the tree fusing (a,b) and (c,d) through f in the tree
    fusing (b,c) and (d,a) through e, for four legs a, b, c, d in
    counter-clockwise order.

    Equals Tet * Delta_f / (theta(a,b,f) theta(c,d,f)).
    """
    if not (is_admissible(b, c, e) and is_admissible(d, a, e)):
        raise NotAdmissible(f"channel {e} is not admissible for ({a}, {b}, {c}, {d})")
    val = _tet(a, b, c, d, e, f) * RatFunc.coerce(_quantum_dim(f)) / (_theta(a, b, f) * _theta(c, d, f))
    if ring is RATFUNC:
        return val
    th = theta(a, b, f, ring) * theta(c, d, f, ring)
    if th == 0:
        raise SingularAtRoot(f"theta({a},{b},{f}) theta({c},{d},{f}) vanishes at the root")
    return _specialise(val, ring)


def f_matrix_full(a: int, b: int, c: int, d: int, ring=RATFUNC) -> tuple[list[int], list[int], Matrix]:
    """All change-of-basis coefficients: rows indexed by f, columns by e."""
    es = [e for e in range(max(b + c, d + a) + 1) if is_admissible(b, c, e) and is_admissible(d, a, e)]
    fs = _channels(a, b, c, d)
    M = Matrix([[f_matrix(a, b, c, d, e, f, ring) for e in es] for f in fs])
    return fs, es, M


def twist_eigenvalue(N: int, e: int, normalized: bool = True, ring=RATFUNC):
    """Eigenvalue of the positive half twist of two N-colored strands on channel e.

    Normalized: (-1)^{e/2} A^{e(e+2)/2}; the plain value is this divided by
    (-A)^{N(N+2)}.

    >>> twist_eigenvalue(2, 2)
    -A^4
    >>> twist_eigenvalue(1, 0, normalized=False)
    -A^-3
    """
    _require(N, N, e)
    val = LaurentPoly.monomial(e * (e + 2) // 2, -1 if (e // 2) % 2 else 1)
    if not normalized:
        val = val * LaurentPoly.monomial(-N * (N + 2), -1 if N % 2 else 1)
    if ring is RATFUNC or ring is None:
        return val
    return ring(val)


def crossing_rule(a: int, b: int, c: int, ring=RATFUNC):
    """Positive crossing of legs a, b just above a vertex (a, b, c).

    With i = (b+c-a)/2, j = (a+c-b)/2, k = (a+b-c)/2 the crossing equals
    (-1)^k A^{ij - k(i+j+k+2)} times the uncrossed vertex.
    """
    _require(a, b, c)
    i, j, k = (b + c - a) // 2, (a + c - b) // 2, (a + b - c) // 2
    val = LaurentPoly.monomial(i * j - k * (i + j + k + 2), -1 if k % 2 else 1)
    if ring is RATFUNC or ring is None:
        return val
    return ring(val)


# --------------------------------------------------------------------------
# Diagrammatic counterparts


def loop_network(a: int) -> PlanarGraph:
    g = PlanarGraph()
    u, v = g.vertex(), g.vertex()
    g.edge(u, v, a)
    g.edge(v, u, a, box=False)
    return g


def theta_network(a: int, b: int, c: int) -> PlanarGraph:
    _require(a, b, c)
    g = PlanarGraph()
    u, v = g.vertex(), g.vertex()
    e1, e2, e3 = g.edge(u, v, a), g.edge(u, v, b), g.edge(u, v, c)
    g.set_order(v, [(e3, 1), (e2, 1), (e1, 1)])
    return g


def order_by_position(g: PlanarGraph, pos: dict[int, tuple[float, float]]):
    """Set counter-clockwise orders at every vertex of a straight-line embedding."""
    for v in range(len(g._ends)):
        ends = g.ends(v)
        if len(ends) < 2:
            continue

        def angle(end):
            e = g.edges[end[0]]
            other = e.v if end[1] == 0 else e.u
            return atan2(pos[other][1] - pos[v][1], pos[other][0] - pos[v][0])

        g.set_order(v, sorted(ends, key=angle))


def tet_network(a: int, b: int, c: int, d: int, e: int, f: int) -> PlanarGraph:
    """The tetrahedron matching :func:`tet`: vertex 1 meets (a,d,e), 2 meets
    (b,c,e), 3 meets (a,b,f), 4 meets (c,d,f)."""
    for t in [(a, d, e), (b, c, e), (a, b, f), (c, d, f)]:
        _require(*t)
    g = PlanarGraph()
    v1, v2, v3, v4 = (g.vertex() for _ in range(4))
    g.edge(v1, v3, a)
    g.edge(v2, v3, b)
    g.edge(v2, v4, c)
    g.edge(v1, v4, d)
    g.edge(v1, v2, e)
    g.edge(v3, v4, f)
    order_by_position(g, {v1: (0.0, 2.0), v2: (-2.0, -1.0), v3: (2.0, -1.0), v4: (0.0, 0.0)})
    return g


def theta_oracle(a: int, b: int, c: int, ring=RATFUNC, cap: int | None = None):
    return bracket_closed(theta_network(a, b, c).to_network(), ring, cap=cap)


def tet_oracle(a: int, b: int, c: int, d: int, e: int, f: int, ring=RATFUNC, cap: int | None = None):
    return bracket_closed(tet_network(a, b, c, d, e, f).to_network(), ring, cap=cap)


def _insert_arcs(d: tuple[int, ...], bottom_at: int, top_at: int, k: int) -> tuple[int, ...]:
    """Insert k nested caps before bottom point ``bottom_at`` and k nested cups
    before top point ``top_at`` of a TL_c diagram, giving a TL_{c+2k} diagram."""
    c = len(d) // 2
    M = c + 2 * k

    def bottom(i):
        return i if i < bottom_at else i + 2 * k

    def top(i):
        return M + (i if i < top_at else i + 2 * k)

    out = [0] * (2 * M)
    for p, q in enumerate(d):
        pp = bottom(p) if p < c else top(p - c)
        qq = bottom(q) if q < c else top(q - c)
        out[pp] = qq
    for t in range(k):
        lo, hi = bottom_at + t, bottom_at + 2 * k - 1 - t
        out[lo], out[hi] = hi, lo
        lo, hi = M + top_at + t, M + top_at + 2 * k - 1 - t
        out[lo], out[hi] = hi, lo
    return tuple(out)


def vertex_pair(bottom: tuple[int, int], top: tuple[int, int], c: int, ring=RATFUNC):
    """(f_top) . [fuse bottom legs into c, then split into top legs] . (f_bottom) in TL_{a+b}."""
    from .temperley_lieb import TLElement, jones_wenzl

    a, b = bottom
    a2, b2 = top
    _require(a, b, c)
    _require(a2, b2, c)
    if a + b != a2 + b2:
        raise ValueError("top and bottom carry different strand counts")
    k = (a + b - c) // 2
    k2 = (a2 + b2 - c) // 2
    if k != k2:
        raise ValueError("top and bottom need the same number of turnbacks")
    fc = jones_wenzl(c, ring)
    G = TLElement(a + b, {_insert_arcs(d, a - k, a2 - k, k): v for d, v in fc.terms.items()}, ring)
    fb = jones_wenzl(a, ring).tensor_identity(b) * _shifted(jones_wenzl(b, ring), a)
    ft = jones_wenzl(a2, ring).tensor_identity(b2) * _shifted(jones_wenzl(b2, ring), a2)
    return ft * G * fb


def _shifted(x, left: int):
    """id_left ⊗ x."""
    from .temperley_lieb import TLElement

    m = x.m
    M = m + left
    out = {}
    for d, v in x.terms.items():
        nd = list(range(M, 2 * M)) + list(range(M))
        for p, q in enumerate(d):
            pp = left + p if p < m else M + left + p - m
            qq = left + q if q < m else M + left + q - m
            nd[pp] = qq
        out[tuple(nd)] = v
    return TLElement(M, out, x.ring)


def crossing_oracle(a: int, b: int, c: int, ring=RATFUNC):
    """Diagrammatic value of :func:`crossing_rule`: resolve the cabled crossing
    of a over b above a fused vertex and read off the scalar."""
    from .temperley_lieb import resolve_crossing

    before = vertex_pair((a, b), (b, a), c, ring)
    after = resolve_crossing(b, a, ring) * before
    target = vertex_pair((a, b), (a, b), c, ring)
    d, v = next(iter(target.terms.items()))
    ratio = after.coefficient(d) / v
    if not after == target.scale(ratio):
        raise ArithmeticError("crossing does not act by a scalar on the vertex")
    return ratio


def four_leg_tree(a: int, b: int, c: int, d: int, channel: int, pairing: str) -> PlanarGraph:
    """Tree with legs a, b, c, d counter-clockwise on the boundary.

    ``pairing="ab"`` fuses (a,b) and (c,d) through ``channel``; ``"bc"`` fuses
    (b,c) and (d,a).
    """
    g = PlanarGraph(boundary=a + b + c + d)
    starts = [0, a, a + b, a + b + c]
    colors = [a, b, c, d]
    legs = [g.cluster(range(s, s + m)) for s, m in zip(starts, colors)]
    pos = {legs[0]: (-2.0, -2.0), legs[1]: (2.0, -2.0), legs[2]: (2.0, 2.0), legs[3]: (-2.0, 2.0)}
    x, y = g.vertex(), g.vertex()
    if pairing == "ab":
        pos[x], pos[y] = (0.0, -0.5), (0.0, 0.5)
        pairs = [(0, x), (1, x), (2, y), (3, y)]
    elif pairing == "bc":
        pos[x], pos[y] = (0.5, 0.0), (-0.5, 0.0)
        pairs = [(1, x), (2, x), (3, y), (0, y)]
    else:
        raise ValueError("pairing must be 'ab' or 'bc'")
    for leg, v in pairs:
        g.edge(legs[leg], v, colors[leg])
    g.edge(x, y, channel)
    order_by_position(g, pos)
    return g


def f_matrix_oracle(a: int, b: int, c: int, d: int, e: int, ring=RATFUNC) -> dict[int, object]:
    """Coefficients of the (b,c)-channel-e tree in the (a,b)-trees, found by
    expanding every tree into boundary matchings and solving."""
    target = four_leg_tree(a, b, c, d, e, "bc").to_network().evaluate(ring)
    fs = _channels(a, b, c, d)
    vecs = [four_leg_tree(a, b, c, d, f, "ab").to_network().evaluate(ring) for f in fs]
    keys = sorted(set(target).union(*vecs))
    M = Matrix([[v.get(k, ring.zero) for v in vecs] for k in keys])
    sol = M.solve([target.get(k, ring.zero) for k in keys])
    return dict(zip(fs, sol))
