"""Temperley-Lieb diagrams, Jones-Wenzl projectors and planar network evaluation.

A diagram on m strands is a tuple ``d`` of length 2m: index i < m is bottom
point i, index m + i is top point i, and ``d[p]`` is the partner of p.  The
product ``x * y`` stacks x on top of y.  A closed loop is worth
delta = -A^2 - A^-2.

The network evaluator (:class:`Network`) is the brute-force oracle behind
Gram matrices and recoupling constants: boxes carrying Jones-Wenzl projectors
are expanded one at a time, terms that put a cap on a projector are dropped as
soon as they appear, and loops are counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .exact_arith import (
    LaurentPoly,
    loop_value,
    quantum_int,
)

__all__ = [
    "StrandMismatch",
    "DoesNotExist",
    "OracleCapExceeded",
    "ORACLE_STRAND_CAP",
    "identity",
    "hook",
    "nested_cups",
    "all_diagrams",
    "compose",
    "is_planar",
    "TLElement",
    "tl_multiply",
    "jones_wenzl",
    "jones_wenzl_wenzl",
    "jw_fk_expand",
    "phi_coefficient",
    "crossing",
    "cable_crossing",
    "resolve_crossing",
    "projector_crossing_coefficient",
    "act_on_cap",
    "Network",
    "PlanarGraph",
    "NotAdmissible",
    "bracket_closed",
    "diagram_str",
]

ORACLE_STRAND_CAP = 12


class StrandMismatch(ValueError):
    """Diagrams with different strand counts were combined."""


class DoesNotExist(ArithmeticError):
    """A Jones-Wenzl projector does not exist because [k] vanishes."""

    def __init__(self, k: int, msg: str | None = None):
        super().__init__(msg or f"Jones-Wenzl projector needs 1/[{k}], but [{k}] = 0")
        self.k = k


class OracleCapExceeded(RuntimeError):
    """A brute-force diagram computation exceeds the configured strand cap."""


# --------------------------------------------------------------------------
# Planar matchings


def identity(m: int) -> tuple[int, ...]:
    return tuple(list(range(m, 2 * m)) + list(range(m)))


def hook(m: int, i: int) -> tuple[int, ...]:
    """e_i (0-based, 0 <= i < m-1): caps joining i, i+1 on both sides."""
    if not 0 <= i < m - 1:
        raise ValueError(f"hook index {i} out of range for TL_{m}")
    d = list(identity(m))
    d[i], d[i + 1] = i + 1, i
    d[m + i], d[m + i + 1] = m + i + 1, m + i
    return tuple(d)


def nested_cups(m: int) -> tuple[int, ...]:
    """t_m in TL_{2m}: m nested caps on the bottom and m nested cups on top."""
    s = 2 * m
    d = [0] * (2 * s)
    for i in range(m):
        d[i], d[s - 1 - i] = s - 1 - i, i
        d[s + i], d[2 * s - 1 - i] = 2 * s - 1 - i, s + i
    return tuple(d)


def _boundary_order(m: int) -> list[int]:
    # walk around the rectangle: bottom left to right, then top right to left
    return list(range(m)) + [m + i for i in reversed(range(m))]


def is_planar(d: Sequence[int]) -> bool:
    m = len(d) // 2
    pos = {p: i for i, p in enumerate(_boundary_order(m))}
    stack: list[int] = []
    for p in _boundary_order(m):
        q = d[p]
        if pos[q] > pos[p]:
            stack.append(p)
        else:
            if not stack or stack[-1] != q:
                return False
            stack.pop()
    return not stack


@lru_cache(maxsize=None)
def _noncrossing_matchings(k: int) -> tuple[tuple[int, ...], ...]:
    """All non-crossing perfect matchings of 0..k-1 on a line, as partner tuples."""
    if k == 0:
        return ((),)
    out = []
    for j in range(1, k, 2):
        for inner in _noncrossing_matchings(j - 1):
            for outer in _noncrossing_matchings(k - j - 1):
                p = [0] * k
                p[0], p[j] = j, 0
                for a, b in enumerate(inner):
                    p[a + 1] = b + 1
                for a, b in enumerate(outer):
                    p[a + j + 1] = b + j + 1
                out.append(tuple(p))
    return tuple(out)


@lru_cache(maxsize=None)
def all_diagrams(m: int) -> tuple[tuple[int, ...], ...]:
    """The Catalan(m) crossing-free, loop-free diagrams of TL_m."""
    order = _boundary_order(m)
    out = []
    for match in _noncrossing_matchings(2 * m):
        d = [0] * (2 * m)
        for a, b in enumerate(match):
            d[order[a]] = order[b]
        out.append(tuple(d))
    return tuple(sorted(out))


def compose(x: Sequence[int], y: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Stack x on top of y; return the resulting diagram and the number of loops."""
    m = len(x) // 2
    if len(y) != 2 * m:
        raise StrandMismatch(f"cannot compose TL_{m} with TL_{len(y) // 2}")
    out = [0] * (2 * m)
    seen_mid = [False] * m

    def walk_from_y(p: int) -> int:
        # p is a y-index reached from outside; returns result index
        while True:
            if p < m:
                return p
            mid = p - m
            seen_mid[mid] = True
            q = x[mid]
            if q >= m:
                return q
            seen_mid[q] = True
            p = y[m + q]

    def walk_from_x(p: int) -> int:
        while True:
            if p >= m:
                return p
            seen_mid[p] = True
            q = y[m + p]
            if q < m:
                return q
            seen_mid[q - m] = True
            p = x[q - m]

    for j in range(m):
        out[j] = walk_from_y(y[j])
        out[m + j] = walk_from_x(x[m + j])
    loops = 0
    for mid in range(m):
        if not seen_mid[mid]:
            loops += 1
            cur = mid
            while True:
                seen_mid[cur] = True
                a = y[m + cur] - m
                seen_mid[a] = True
                cur = x[a]
                if cur == mid:
                    break
    return tuple(out), loops


def tensor_identity(d: Sequence[int], extra: int = 1) -> tuple[int, ...]:
    """d ⊗ id_extra (extra strands added on the right)."""
    m = len(d) // 2
    M = m + extra
    out = [0] * (2 * M)
    for p, q in enumerate(d):
        pp = p if p < m else p - m + M
        qq = q if q < m else q - m + M
        out[pp] = qq
    for i in range(m, M):
        out[i], out[M + i] = M + i, i
    return tuple(out)


def diagram_str(d: Sequence[int]) -> str:
    """Bracket sequence around the boundary (bottom left-to-right, top right-to-left)."""
    m = len(d) // 2
    order = _boundary_order(m)
    pos = {p: i for i, p in enumerate(order)}
    return "".join("(" if pos[d[p]] > pos[p] else ")" for p in order)


# --------------------------------------------------------------------------
# Linear combinations


class TLElement:
    """Finite linear combination of TL_m diagrams with coefficients in ``ring``."""

    __slots__ = ("m", "terms", "ring")

    def __init__(self, m: int, terms: dict, ring):
        self.m = m
        self.ring = ring
        self.terms = {d: c for d, c in terms.items() if not c == 0}

    @classmethod
    def diagram(cls, d: Sequence[int], ring, coeff=None) -> "TLElement":
        return cls(len(d) // 2, {tuple(d): ring.one if coeff is None else coeff}, ring)

    @classmethod
    def one(cls, m: int, ring) -> "TLElement":
        return cls.diagram(identity(m), ring)

    def _check(self, other: "TLElement"):
        if self.m != other.m:
            raise StrandMismatch(f"TL_{self.m} vs TL_{other.m}")

    def __add__(self, other: "TLElement") -> "TLElement":
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return TLElement(self.m, out, self.ring)

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + other.scale(-self.ring.one)

    def scale(self, c) -> "TLElement":
        return TLElement(self.m, {d: c * v for d, v in self.terms.items()}, self.ring)

    def __mul__(self, other: "TLElement") -> "TLElement":
        return tl_multiply(self, other)

    def tensor_identity(self, extra: int = 1) -> "TLElement":
        return TLElement(self.m + extra, {tensor_identity(d, extra): c for d, c in self.terms.items()}, self.ring)

    def coefficient(self, d: Sequence[int]):
        return self.terms.get(tuple(d), self.ring.zero)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLElement):
            return NotImplemented
        if self.m != other.m:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(self.coefficient(d) == other.coefficient(d) for d in keys)

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self):
        parts = [f"({c!r})*{diagram_str(d)}" for d, c in sorted(self.terms.items())]
        return f"TL_{self.m}[" + " + ".join(parts) + "]"


def _delta_powers(ring, upto: int) -> list:
    delta = ring(loop_value())
    out = [ring.one]
    for _ in range(upto):
        out.append(out[-1] * delta)
    return out


def tl_multiply(x: TLElement, y: TLElement) -> TLElement:
    """x * y: x stacked on top of y, loops evaluated to delta."""
    x._check(y)
    ring = x.ring
    dpow = _delta_powers(ring, x.m)
    out: dict = {}
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            z, loops = compose(dx, dy)
            c = cx * cy
            if loops:
                c = c * dpow[loops]
            out[z] = out[z] + c if z in out else c
    return TLElement(x.m, out, ring)


def _require_nonzero(ring, k: int):
    v = ring(quantum_int(k))
    if v == 0:
        raise DoesNotExist(k)
    return v


def jones_wenzl(m: int, ring) -> TLElement:
    """The Jones-Wenzl projector f^(m) in TL_m over ``ring``.

    Built with the single-clasp recursion (:func:`jw_fk_expand`), which costs
    one diagram composition per term.  Raises :class:`DoesNotExist` if some
    [k], k <= m, vanishes in ``ring``.
    """
    return jw_fk_expand(m, ring)


@lru_cache(maxsize=None)
def jones_wenzl_wenzl(m: int, ring) -> TLElement:
    """f^(m) by Wenzl's recursion f^(m) = f^(m-1)⊗1 + ([m-1]/[m]) (f^(m-1)⊗1) e_{m-1} (f^(m-1)⊗1).

    Quadratic in the number of terms; kept as an independent check.
    """
    if m < 0:
        raise ValueError("negative strand count")
    if m <= 1:
        return TLElement.one(m, ring)
    qm = _require_nonzero(ring, m)
    prev = jones_wenzl_wenzl(m - 1, ring).tensor_identity()
    e = TLElement.diagram(hook(m, m - 2), ring)
    correction = prev * (e * prev)
    return prev + correction.scale(ring(quantum_int(m - 1)) / qm)


@lru_cache(maxsize=None)
def _descending_hooks(L: int, j: int) -> tuple[int, ...]:
    """Diagram of e_{L-1} e_{L-2} ... e_j (1-based hooks) in TL_L."""
    d = identity(L)
    for i in range(j, L):
        d, loops = compose(hook(L, i - 1), d)
        assert loops == 0
    return d


@lru_cache(maxsize=None)
def jw_fk_expand(L: int, ring) -> TLElement:
    """f^(L) by the single-clasp recursion
    f^(L) = f^(L-1)⊗1 + sum_{j=1}^{L-1} ([j]/[L]) (f^(L-1)⊗1) e_{L-1} ... e_j.
    """
    if L < 0:
        raise ValueError("negative strand count")
    if L <= 1:
        return TLElement.one(L, ring)
    qL = _require_nonzero(ring, L)
    prev = jw_fk_expand(L - 1, ring).tensor_identity()
    acc = prev
    for j in range(1, L):
        term = prev * TLElement.diagram(_descending_hooks(L, j), ring)
        acc = acc + term.scale(ring(quantum_int(j)) / qL)
    return acc


def phi_coefficient(m: int, x: TLElement):
    """Coefficient of the nested-cup diagram t_m in x ∈ TL_{2m}."""
    if x.m != 2 * m:
        raise StrandMismatch(f"phi_{m} needs an element of TL_{2 * m}, got TL_{x.m}")
    return x.coefficient(nested_cups(m))


# --------------------------------------------------------------------------
# Crossings


def crossing(m: int, i: int, ring) -> TLElement:
    """Positive crossing of strands i, i+1 (0-based): A*id + A^-1*e_i."""
    A = ring.A
    return TLElement(m, {identity(m): A, hook(m, i): A ** -1}, ring)


def _block_swap_word(j: int, k: int) -> list[int]:
    """A reduced word (bottom to top) of the permutation moving j left strands past k right ones."""
    word = []
    for t in range(k):
        # strand starting at position j+t moves left across the j left strands
        word.extend(range(j + t - 1, t - 1, -1))
    return word


@lru_cache(maxsize=None)
def resolve_crossing(j: int, k: int, ring) -> TLElement:
    """Resolve the positive cabled crossing of j strands over k strands in TL_{j+k}.

    Each of the j*k elementary crossings becomes A*id + A^-1*hook; the
    product of the 2^(jk) resolutions is simplified as it is built.
    """
    m = j + k
    acc = TLElement.one(m, ring)
    for i in _block_swap_word(j, k):
        acc = crossing(m, i, ring) * acc
    return acc


def cable_crossing(N: int, ring) -> TLElement:
    """The N-over-N cabled half twist as an element of TL_{2N}."""
    return resolve_crossing(N, N, ring)


def projector_crossing_coefficient(j: int, L: int) -> LaurentPoly:
    """A^{j(L-j)}: a cabled crossing of j over L-j strands absorbed by an adjacent f^(L)."""
    return LaurentPoly.monomial(j * (L - j))


# --------------------------------------------------------------------------
# Action of diagrams on cap matchings of points on a line


def act_on_cap(d: Sequence[int], offset: int, cap: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Attach the bottom of d to points offset..offset+m-1 of a matching ``cap``.

    Returns the new matching (the top of d replaces the window) and the number
    of closed loops.

    >>> act_on_cap(hook(2, 0), 0, (1, 0, 3, 2))
    ((1, 0, 3, 2), 1)
    >>> act_on_cap(hook(2, 0), 1, (1, 0, 3, 2))
    ((3, 2, 1, 0), 0)
    """
    m = len(d) // 2
    lo, hi = offset, offset + m
    out = list(cap)
    seen = [False] * m

    def trace(q: int) -> int:
        # q indexes d; follow bottom arcs through the cap until leaving the window
        while q < m:
            seen[q] = True
            t = cap[lo + q]
            if not lo <= t < hi:
                return t
            seen[t - lo] = True
            q = d[t - lo]
        return lo + q - m

    for i in range(m):
        end = trace(d[m + i])
        out[lo + i] = end
        out[end] = lo + i
    for b in range(m):
        t = cap[lo + b]
        if not seen[b] and not lo <= t < hi:
            seen[b] = True
            end = trace(d[b])
            out[t] = end
            out[end] = t
    loops = 0
    for b in range(m):
        if not seen[b]:
            loops += 1
            cur = b
            while True:
                seen[cur] = True
                t = cap[lo + cur] - lo
                seen[t] = True
                cur = d[t]
                if cur == b:
                    break
    return tuple(out), loops


# --------------------------------------------------------------------------
# Planar networks: boundary points, projector boxes and wires


@dataclass
class Network:
    """A planar diagram made of boundary points, projector boxes and wires.

    Ports 0..boundary-1 are boundary points.  Box b of color m owns 2m ports:
    its bottom (in) side ``box_base[b] + 0..m-1`` and its top (out) side
    ``box_base[b] + m..2m-1``, in the same layout as a TL_m diagram.  ``wires``
    is a perfect matching of all ports.

    ``clusters`` optionally lists groups of boundary points that carry implicit
    projectors: terms with an arc inside a cluster are discarded.
    """

    boundary: int = 0
    boxes: list[int] = field(default_factory=list)
    box_base: list[int] = field(default_factory=list)
    wires: dict[int, int] = field(default_factory=dict)
    clusters: list[list[int]] = field(default_factory=list)
    loops: int = 0
    _next: int = 0

    def __post_init__(self):
        self._next = max(self._next, self.boundary)

    def add_box(self, m: int) -> tuple[list[int], list[int]]:
        base = self._next
        self.boxes.append(m)
        self.box_base.append(base)
        self._next += 2 * m
        return list(range(base, base + m)), list(range(base + m, base + 2 * m))

    def new_port(self) -> int:
        p = self._next
        self._next += 1
        return p

    def connect(self, p: int, q: int):
        if p == q or p in self.wires or q in self.wires:
            raise ValueError(f"port already wired: {p}, {q}")
        self.wires[p] = q
        self.wires[q] = p

    @property
    def port_count(self) -> int:
        return self._next

    def evaluate(self, ring, cap: int | None = None) -> dict[tuple[int, ...], object]:
        """Expand every box; return {boundary matching: coefficient}."""
        limit = ORACLE_STRAND_CAP if cap is None else cap
        if self.boxes and max(self.boxes) > limit:
            raise OracleCapExceeded(f"box of {max(self.boxes)} strands exceeds cap {limit}")
        if self.boundary > 2 * limit:
            raise OracleCapExceeded(f"{self.boundary} boundary points exceed cap")
        n_ports = self._next
        if len(self.wires) != n_ports:
            missing = [p for p in range(n_ports) if p not in self.wires]
            raise ValueError(f"unwired ports: {missing[:8]}")
        cluster_of = [-1] * self.boundary
        for ci, pts in enumerate(self.clusters):
            for p in pts:
                cluster_of[p] = ci
        box_of = [-1] * n_ports
        side_of = [0] * n_ports
        for b, (m, base) in enumerate(zip(self.boxes, self.box_base)):
            for i in range(2 * m):
                box_of[base + i] = b
                side_of[base + i] = 0 if i < m else 1

        dpow = _delta_powers(ring, sum(self.boxes) + self.loops + 1)
        start = tuple(self.wires[p] for p in range(n_ports))
        if _dead(start, range(len(self.boxes)), self, cluster_of, box_of, side_of):
            return {}
        states = {start: dpow[self.loops]}
        order = sorted(range(len(self.boxes)), key=lambda b: self.boxes[b])
        remaining = set(range(len(self.boxes)))
        for b in order:
            m, base = self.boxes[b], self.box_base[b]
            remaining.discard(b)
            if m == 0:
                continue
            proj = jones_wenzl(m, ring)
            new_states: dict = {}
            for w, coeff in states.items():
                for d, c in proj.terms.items():
                    nw, loops = _expand_box(w, base, m, d)
                    if _dead(nw, remaining, self, cluster_of, box_of, side_of, touched=base, m=m, old=w):
                        continue
                    val = coeff * c
                    if loops:
                        val = val * dpow[loops]
                    if nw in new_states:
                        new_states[nw] = new_states[nw] + val
                    else:
                        new_states[nw] = val
            states = {w: c for w, c in new_states.items() if not c == 0}
            if not states:
                return {}
        out: dict = {}
        P = self.boundary
        for w, c in states.items():
            key = w[:P]
            out[key] = out[key] + c if key in out else c
        return {k: v for k, v in out.items() if not v == 0}


def _expand_box(w: tuple[int, ...], base: int, m: int, d: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Replace box ports base..base+2m-1 in wiring w by the diagram d."""
    nw = list(w)
    hi = base + 2 * m
    seen = [False] * (2 * m)
    for i in range(2 * m):
        if seen[i]:
            continue
        outer = w[base + i]
        if base <= outer < hi:
            continue
        # follow from port i through d and wires until leaving the box
        seen[i] = True
        j = d[i]
        while True:
            seen[j] = True
            t = w[base + j]
            if not base <= t < hi:
                break
            seen[t - base] = True
            j = d[t - base]
        nw[outer] = t
        nw[t] = outer
    loops = 0
    for i in range(2 * m):
        if not seen[i]:
            loops += 1
            cur = i
            while not seen[cur]:
                seen[cur] = True
                j = d[cur]
                seen[j] = True
                cur = w[base + j] - base
    for i in range(2 * m):
        nw[base + i] = -1
    return tuple(nw), loops


def _dead(w, remaining, net: Network, cluster_of, box_of, side_of, touched=None, m=0, old=None) -> bool:
    """True if the wiring already puts a cap on a projector (the term vanishes)."""
    if touched is None:
        ports: Iterable[int] = range(len(w))
    else:
        # only ports whose wire changed can create new caps
        ports = [p for p in range(len(w)) if w[p] != old[p] and w[p] >= 0]
    P = net.boundary
    for p in ports:
        q = w[p]
        if q < 0 or q < p:
            continue
        if p < P:
            if q < P and cluster_of[p] >= 0 and cluster_of[p] == cluster_of[q]:
                return True
            continue
        bp = box_of[p]
        if bp >= 0 and bp == box_of[q] and side_of[p] == side_of[q]:
            return True
    return False


def bracket_closed(net: Network, ring, cap: int | None = None):
    """Kauffman bracket of a closed network (no boundary points)."""
    if net.boundary:
        raise ValueError("bracket_closed needs a network without boundary")
    res = net.evaluate(ring, cap=cap)
    return res.get((), ring.zero)


# --------------------------------------------------------------------------
# Colored planar graphs


class NotAdmissible(ValueError):
    """Colors at a trivalent vertex violate the parity or triangle conditions."""


@dataclass
class _Edge:
    u: int
    v: int
    color: int
    box: bool


class PlanarGraph:
    """Colored planar graph in a disk, turned into a :class:`Network`.

    Vertices are trivalent (or bivalent) internal vertices, or boundary
    clusters sitting on the boundary circle.  Every internal edge carries a
    Jones-Wenzl box of its color unless created with ``box=False``.  At each
    vertex the incident edge ends must be listed in counter-clockwise order;
    by default they are taken in the order the edges were added.

    Boundary points are numbered counter-clockwise around the circle; a
    cluster holds consecutive points in that order.
    """

    def __init__(self, boundary: int = 0):
        self.boundary = boundary
        self.edges: list[_Edge] = []
        self._ends: list[list[tuple[int, int]]] = []
        self._cluster_points: dict[int, list[int]] = {}

    def vertex(self) -> int:
        self._ends.append([])
        return len(self._ends) - 1

    def cluster(self, points: Sequence[int]) -> int:
        """A boundary vertex attached to ``points`` (listed counter-clockwise)."""
        v = self.vertex()
        self._cluster_points[v] = list(points)
        return v

    def edge(self, u: int, v: int, color: int, box: bool = True) -> int:
        """Edge from u to v; a box has its bottom side at u and its top side at v."""
        self.edges.append(_Edge(u, v, color, box))
        e = len(self.edges) - 1
        self._ends[u].append((e, 0))
        self._ends[v].append((e, 1))
        return e

    def set_order(self, v: int, ends: Sequence[tuple[int, int]]):
        """Counter-clockwise order of the (edge, end) pairs at v; end 0 is the tail."""
        if sorted(ends) != sorted(self._ends[v]):
            raise ValueError(f"order for vertex {v} does not list its edge ends")
        self._ends[v] = list(ends)

    def ends(self, v: int) -> list[tuple[int, int]]:
        return list(self._ends[v])

    def to_network(self) -> Network:
        net = Network(boundary=self.boundary)
        net.clusters = [pts for pts in self._cluster_points.values() if len(pts) > 1]
        # every edge end receives a list of terminal ports, ordered ccw at its vertex
        links: dict[int, list[int]] = {}

        def link(a: int, b: int):
            links.setdefault(a, []).append(b)
            links.setdefault(b, []).append(a)

        terminals: dict[tuple[int, int], list[int]] = {}
        virtual: list[int] = []
        for ei, e in enumerate(self.edges):
            m = e.color
            if e.box and m > 0:
                ins, outs = net.add_box(m)
                terminals[(ei, 0)] = list(reversed(ins))
                terminals[(ei, 1)] = outs
            else:
                terminals[(ei, 0)] = []
                terminals[(ei, 1)] = []
        n_real = net.port_count
        for ei, e in enumerate(self.edges):
            if not (e.box and e.color > 0):
                m = e.color
                p = [net.new_port() for _ in range(m)]
                q = [net.new_port() for _ in range(m)]
                virtual.extend(p + q)
                for t in range(m):
                    link(p[t], q[m - 1 - t])
                terminals[(ei, 0)] = p
                terminals[(ei, 1)] = q

        for v, ends in enumerate(self._ends):
            lists = [terminals[x] for x in ends]
            colors = [self.edges[x[0]].color for x in ends]
            if v in self._cluster_points:
                pts = self._cluster_points[v]
                if len(ends) != 1 or colors[0] != len(pts):
                    raise StrandMismatch(f"cluster of {len(pts)} points needs one edge of that color")
                for t, b in enumerate(reversed(pts)):
                    link(lists[0][t], b)
            elif len(ends) == 2:
                a, b = colors
                if a != b:
                    raise StrandMismatch(f"bivalent vertex joins colors {a} and {b}")
                p, q = lists
                for t in range(a):
                    link(p[a - 1 - t], q[t])
            elif len(ends) == 3:
                a, b, c = colors
                if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
                    raise NotAdmissible(f"({a}, {b}, {c}) is not admissible")
                k12, k23, k31 = (a + b - c) // 2, (b + c - a) // 2, (c + a - b) // 2
                p, q, r = lists
                for t in range(k12):
                    link(p[a - 1 - t], q[t])
                for t in range(k23):
                    link(q[b - 1 - t], r[t])
                for t in range(k31):
                    link(r[c - 1 - t], p[t])
            elif ends:
                raise ValueError(f"vertex {v} has unsupported valence {len(ends)}")

        # collapse chains through virtual ports
        is_virtual = set(virtual)
        done: set[int] = set()
        for start in range(n_real):
            if start in done:
                continue
            if len(links.get(start, [])) != 1:
                raise ValueError(f"port {start} is not wired exactly once")
            prev, cur = start, links[start][0]
            while cur in is_virtual:
                nbrs = links[cur]
                nxt = nbrs[1] if nbrs[0] == prev else nbrs[0]
                done.add(cur)
                prev, cur = cur, nxt
            done.add(start)
            done.add(cur)
            net.wires[start] = cur
            net.wires[cur] = start
        loops = 0
        for vp in virtual:
            if vp in done:
                continue
            loops += 1
            prev, cur = None, vp
            while cur not in done:
                done.add(cur)
                a, b = links[cur]
                prev, cur = cur, (b if a == prev else a)
        net.loops = loops
        net._next = n_real
        return net
