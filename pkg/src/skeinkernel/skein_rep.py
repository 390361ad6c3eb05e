"""Skein modules of the 3-ball with colored boundary points.

Points sit on a line, left to right: n clusters of N points, then an optional
cluster of k points.  A basis vector is a non-crossing matching of all points
with no arc inside a cluster, read with a Jones-Wenzl projector on every
cluster.  Operators are matrices whose columns are images of basis vectors.

>>> S = SkeinModule(4, 1)
>>> S.dim
2
>>> S.sigma(1).det() == -S.ring.A ** 4
True
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .exact_arith import (
    RATFUNC,
    CycloRing,
    LaurentPoly,
    QRoot,
    chebyshev,
    loop_value,
)
from .matrices import Matrix
from .temperley_lieb import (
    ORACLE_STRAND_CAP,
    Network,
    OracleCapExceeded,
    PlanarGraph,
    _noncrossing_matchings,
    act_on_cap,
    jones_wenzl,
    resolve_crossing,
)

__all__ = [
    "ProportionalityFailure",
    "KernelMismatch",
    "SkeinModule",
    "SkeinVector",
    "FusionTree",
    "basis",
    "gram",
    "kernel_space",
    "sigma_matrix",
    "rotation_matrix",
    "s0_matrix",
    "tree_vector",
    "u_tree",
    "eq41_check",
    "KernelRep",
    "kernel_rep",
    "conclusion2_matrices",
    "quotient_rep",
    "kernel_root",
]


class ProportionalityFailure(ArithmeticError):
    """Two vectors expected to be proportional are not."""


class KernelMismatch(ArithmeticError):
    """A vector expected in the Gram kernel is not there, or a span is wrong."""


def kernel_root(n: int, N: int, exponent: int = 1) -> CycloRing:
    """Scalars at A = exp(2 pi i exponent / 4r) with 2r = N n."""
    if (N * n) % 2:
        raise ValueError("N n must be even")
    r = N * n // 2
    root = QRoot(4 * r, exponent)
    if not root.is_primitive():
        raise ValueError(f"exponent {exponent} does not give a primitive {4 * r}-th root")
    return CycloRing(root)


# --------------------------------------------------------------------------
# Matchings


def _cycles(x: Sequence[int], y: Sequence[int]) -> int:
    """Number of loops in the union of two perfect matchings of the same points."""
    seen = [False] * len(x)
    count = 0
    for p in range(len(x)):
        if seen[p]:
            continue
        count += 1
        cur = p
        while True:
            seen[cur] = True
            q = x[cur]
            seen[q] = True
            cur = y[q]
            if cur == p:
                break
    return count


def _rotate(m: Sequence[int], shift: int) -> tuple[int, ...]:
    P = len(m)
    out = [0] * P
    for p, q in enumerate(m):
        out[(p + shift) % P] = (q + shift) % P
    return tuple(out)


# --------------------------------------------------------------------------
# The module


class SkeinModule:
    """S(B^3, (N)_n, (k)) over ``ring`` in the cluster-matching basis."""

    def __init__(self, n: int, N: int, k: int = 0, ring=RATFUNC, cap: int | None = None):
        if n < 1 or N < 1 or k < 0:
            raise ValueError("need n >= 1, N >= 1, k >= 0")
        self.n, self.N, self.k = n, N, k
        self.ring = ring
        self.cap = ORACLE_STRAND_CAP if cap is None else cap
        self.P = n * N + k
        if self.P % 2:
            raise ValueError(f"{self.P} boundary points cannot be matched")
        self.clusters: list[list[int]] = [list(range(i * N, (i + 1) * N)) for i in range(n)]
        if k:
            self.clusters.append(list(range(n * N, n * N + k)))
        self.cluster_of = [0] * self.P
        for c, pts in enumerate(self.clusters):
            for p in pts:
                self.cluster_of[p] = c

    def __repr__(self):
        return f"SkeinModule(n={self.n}, N={self.N}, k={self.k}, ring={getattr(self.ring, 'name', self.ring)})"

    # ---- basis ----------------------------------------------------------
    def admissible_matching(self, m: Sequence[int]) -> bool:
        return all(self.cluster_of[p] != self.cluster_of[q] for p, q in enumerate(m))

    @cached_property
    def basis(self) -> list[tuple[int, ...]]:
        if self.P > 2 * max(self.cap, 12) + 8:
            raise OracleCapExceeded(f"{self.P} boundary points is too many to enumerate")
        return [m for m in _noncrossing_matchings(self.P) if self.admissible_matching(m)]

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {m: i for i, m in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def zero_vector(self) -> list:
        return [self.ring.zero] * self.dim

    def from_terms(self, terms: dict) -> list:
        """Coordinates of a combination of matchings; terms with an arc inside a cluster vanish."""
        v = self.zero_vector()
        for m, c in terms.items():
            if not self.admissible_matching(m):
                continue
            try:
                i = self.index[tuple(m)]
            except KeyError:
                raise ValueError(f"matching {m} is not planar") from None
            v[i] = v[i] + c
        return v

    # ---- projectors and the form --------------------------------------
    @cached_property
    def _delta(self):
        return self.ring(loop_value())

    def _delta_pow(self, k: int):
        out = self.ring.one
        for _ in range(k):
            out = out * self._delta
        return out

    def apply_tl(self, element, offset: int, terms: dict) -> dict:
        """Act with a TL element on the window starting at ``offset`` (no pruning)."""
        out: dict = {}
        for m, c in terms.items():
            for d, v in element.terms.items():
                nm, loops = act_on_cap(d, offset, m)
                val = c * v
                if loops:
                    val = val * self._delta_pow(loops)
                out[nm] = out[nm] + val if nm in out else val
        return {m: c for m, c in out.items() if not c == 0}

    def boxed(self, m: Sequence[int]) -> dict:
        """Expansion of a basis matching with all cluster projectors applied."""
        cache = self.__dict__.setdefault("_boxed", {})
        key = tuple(m)
        if key not in cache:
            terms = {key: self.ring.one}
            for pts in self.clusters:
                if len(pts) > 1:
                    terms = self.apply_tl(jones_wenzl(len(pts), self.ring), pts[0], terms)
            cache[key] = terms
        return cache[key]

    def pair_matchings(self, x: Sequence[int], y: Sequence[int]):
        """<x, y> for two basis matchings: glue x to the mirror image of y."""
        acc = self.ring.zero
        for xm, c in self.boxed(x).items():
            acc = acc + c * self._delta_pow(_cycles(xm, y))
        return acc

    @cached_property
    def gram(self) -> Matrix:
        """G[x, y] = <x, y>; the form is a^T G conj(b)."""
        for pts in self.clusters:
            if len(pts) > self.cap:
                raise OracleCapExceeded(f"cluster of {len(pts)} points exceeds cap {self.cap}")
        B = self.basis
        rows = []
        for i, x in enumerate(B):
            rows.append([self.pair_matchings(x, y) for y in B])
        return Matrix(rows)

    def gram_oracle(self, x: Sequence[int], y: Sequence[int]):
        """<x, y> by the network evaluator: projector boxes on every cluster,
        x wired below them and y above."""
        net = Network(boundary=0)
        ins, outs = [], []
        for pts in self.clusters:
            i, o = net.add_box(len(pts))
            ins.extend(i)
            outs.extend(o)
        for p, q in enumerate(x):
            if p < q:
                net.connect(ins[p], ins[q])
        for p, q in enumerate(y):
            if p < q:
                net.connect(outs[p], outs[q])
        return net.evaluate(self.ring, cap=self.cap).get((), self.ring.zero)

    def form(self, a: Sequence, b: Sequence):
        """a^T G conj(b)."""
        Gb = self.gram @ [self.ring.conj(x) for x in b]
        acc = self.ring.zero
        for x, y in zip(a, Gb):
            acc = acc + x * y
        return acc

    @cached_property
    def kernel(self) -> list[list]:
        """Basis of the left kernel {a : a^T G = 0}."""
        return self.gram.T.nullspace()

    def in_kernel(self, v: Sequence) -> bool:
        return all(x == 0 for x in self.gram.T @ list(v))

    # ---- mapping class group action --------------------------------------
    def _check_generator(self, i: int):
        if not 1 <= i <= self.n - 1:
            raise IndexError(f"sigma_{i} out of range 1..{self.n - 1}")

    @cached_property
    def _cable(self):
        return resolve_crossing(self.N, self.N, self.ring)

    def sigma(self, i: int, normalized: bool = True) -> Matrix:
        """Half twist exchanging clusters i and i+1 (1-based).

        Normalized means multiplied by (-A)^{N(N+2)}, which makes the twist on
        the trivial channel act by 1.
        """
        cache = self.__dict__.setdefault("_sigma", {})
        if (i, normalized) in cache:
            return cache[(i, normalized)]
        if i == self.n and self.k == 0:
            s = self.rotation()
            M = s @ self.sigma(self.n - 1, normalized) @ s.inverse()
            cache[(i, normalized)] = M
            return M
        self._check_generator(i)
        offset = (i - 1) * self.N
        scale = self.ring.one
        if normalized:
            scale = self.ring(LaurentPoly.monomial(self.N * (self.N + 2), -1 if self.N % 2 else 1))
        cols = []
        for m in self.basis:
            terms = self.apply_tl(self._cable, offset, {m: scale})
            cols.append(self.from_terms(terms))
        M = Matrix.from_columns(cols)
        cache[(i, normalized)] = M
        return M

    def rotation(self) -> Matrix:
        """s: every cluster moves one step to the right, the last one wraps to the first."""
        if self.k:
            raise ValueError("rotation needs all clusters of the same color")
        cache = self.__dict__
        if "_rotation" not in cache:
            cols = []
            for m in self.basis:
                v = self.zero_vector()
                v[self.index[_rotate(m, self.N)]] = self.ring.one
                cols.append(v)
            cache["_rotation"] = Matrix.from_columns(cols)
        return cache["_rotation"]

    def s0(self) -> Matrix:
        """sigma_3 sigma_4 ... sigma_{n-1}: conjugates sigma_j to sigma_{j+1} for 3 <= j <= n-2."""
        M = Matrix.identity(self.dim, self.ring.one, self.ring.zero)
        for j in range(3, self.n):
            M = M @ self.sigma(j)
        return M

    def apply(self, M: Matrix, v: Sequence) -> list:
        return M @ list(v)

    # ---- trees ---------------------------------------------------------
    def tree_vector(self, tree: "FusionTree") -> list:
        net = tree.graph(self).to_network()
        return self.from_terms(net.evaluate(self.ring, cap=self.cap))

    # ---- export ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "N": self.N,
            "k": self.k,
            "basis": [list(m) for m in self.basis],
        }


@dataclass
class SkeinVector:
    """Coordinates in the cluster-matching basis of ``module``."""

    module: SkeinModule
    coords: list

    def terms(self) -> dict:
        return {m: c for m, c in zip(self.module.basis, self.coords) if not c == 0}

    def __add__(self, other: "SkeinVector") -> "SkeinVector":
        return SkeinVector(self.module, [a + b for a, b in zip(self.coords, other.coords)])

    def scale(self, c) -> "SkeinVector":
        return SkeinVector(self.module, [c * a for a in self.coords])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"matching": list(m), "coeff": _scalar_json(c)} for m, c in self.terms().items()
            ]
        }


def _scalar_json(c):
    if hasattr(c, "to_json"):
        return c.to_json()
    return str(c)


# --------------------------------------------------------------------------
# Colored trees


@dataclass(frozen=True)
class FusionTree:
    """A colored tree in the ball with leaves on the boundary clusters.

    Vertices 0..leaves-1 are the clusters in their boundary order; larger
    indices are internal trivalent vertices.  ``edges`` lists (x, y, color).
    """

    leaves: int
    edges: tuple[tuple[int, int, int], ...]

    @classmethod
    def caterpillar(cls, colors: Sequence[int], internal: Sequence[int]) -> "FusionTree":
        """Leaves colored ``colors`` fused left to right through ``internal``
        (len(colors) - 3 edge colors)."""
        L = len(colors)
        if len(internal) != L - 3:
            raise ValueError("a caterpillar on L leaves has L-3 internal edges")
        edges = []
        verts = [L + j for j in range(L - 2)]
        edges.append((0, verts[0], colors[0]))
        edges.append((1, verts[0], colors[1]))
        for j in range(L - 3):
            edges.append((verts[j], verts[j + 1], internal[j]))
            edges.append((j + 2, verts[j + 1], colors[j + 2]))
        edges.append((L - 1, verts[-1], colors[L - 1]))
        return cls(L, tuple(edges))

    def vertices(self) -> int:
        return 1 + max(max(x, y) for x, y, _ in self.edges)

    def _adjacency(self):
        adj: dict[int, list[tuple[int, int]]] = {}
        for ei, (x, y, _) in enumerate(self.edges):
            adj.setdefault(x, []).append((ei, y))
            adj.setdefault(y, []).append((ei, x))
        return adj

    def _leaves_behind(self, adj, v: int, w: int) -> set[int]:
        """Leaves reached from w without passing through v."""
        out, stack, seen = set(), [w], {v, w}
        while stack:
            x = stack.pop()
            if x < self.leaves:
                out.add(x)
                continue
            for _, y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return out

    def graph(self, module: SkeinModule) -> PlanarGraph:
        if self.leaves != len(module.clusters):
            raise ValueError(f"tree has {self.leaves} leaves, module has {len(module.clusters)} clusters")
        g = PlanarGraph(boundary=module.P)
        nv = self.vertices()
        for v in range(nv):
            if v < self.leaves:
                g.cluster(module.clusters[v])
            else:
                g.vertex()
        for x, y, c in self.edges:
            leaf_edge = x < self.leaves or y < self.leaves
            if leaf_edge:
                leaf = x if x < self.leaves else y
                if c != len(module.clusters[leaf]):
                    raise ValueError(f"leaf {leaf} has color {len(module.clusters[leaf])}, edge says {c}")
            g.edge(x, y, c, box=not leaf_edge)
        adj = self._adjacency()
        L = self.leaves
        for v in range(L, nv):
            keyed = []
            for ei, w in adj[v]:
                arc = self._leaves_behind(adj, v, w)
                start = next(l for l in sorted(arc) if (l - 1) % L not in arc) if len(arc) < L else 0
                end = (ei, 0) if self.edges[ei][0] == v else (ei, 1)
                keyed.append((start, end))
            keyed.sort()
            g.set_order(v, [e for _, e in keyed])
        return g


def u_tree(n: int, N: int) -> FusionTree:
    """The kernel vector tree for n = 2n' clusters of color N.

    Leaves 1..n' fuse from the left through colors a_j = jN - 2; leaves
    n, n-1, ..., n'+2 fuse from the right through b_j = jN; both chains meet
    leaf n'+1 at a vertex (a_{n'}, b_{n'-1}, N), whose color sum is 2r - 2.
    """
    if n % 2 or n < 6:
        raise ValueError("u needs an even number n >= 6 of clusters")
    h = n // 2
    edges: list[tuple[int, int, int]] = []
    nxt = [n]

    def new():
        nxt[0] += 1
        return nxt[0] - 1

    # left chain: V_2 joins leaves 0, 1; V_j joins a_{j-1} and leaf j-1
    prev = new()
    edges += [(0, prev, N), (1, prev, N)]
    for j in range(3, h + 1):
        v = new()
        edges += [(prev, v, (j - 1) * N - 2), (j - 1, v, N)]
        prev = v
    mid = new()
    edges += [(prev, mid, h * N - 2), (h, mid, N)]
    # right chain: W_2 joins leaves n-1, n-2; W_j joins b_{j-1} and leaf n-j
    prev = new()
    edges += [(n - 1, prev, N), (n - 2, prev, N)]
    for j in range(3, h):
        v = new()
        edges += [(prev, v, (j - 1) * N), (n - j, v, N)]
        prev = v
    edges.append((prev, mid, (h - 1) * N))
    return FusionTree(n, tuple(edges))


# --------------------------------------------------------------------------
# Functional interface


def basis(n: int, N: int, k: int = 0) -> list[tuple[int, ...]]:
    return SkeinModule(n, N, k).basis


def gram(n: int, N: int, k: int = 0, ring=RATFUNC) -> Matrix:
    return SkeinModule(n, N, k, ring).gram


def kernel_space(n: int, N: int, k: int = 0, ring=None) -> list[list]:
    """Left kernel of the Gram form; by default at the root with 2r = Nn."""
    if ring is None:
        ring = kernel_root(n, N)
    return SkeinModule(n, N, k, ring).kernel


def sigma_matrix(i: int, n: int, N: int, ring=RATFUNC, k: int = 0) -> Matrix:
    return SkeinModule(n, N, k, ring).sigma(i)


def rotation_matrix(n: int, N: int, ring=RATFUNC) -> Matrix:
    return SkeinModule(n, N, 0, ring).rotation()


def s0_matrix(n: int, N: int, ring=RATFUNC) -> Matrix:
    return SkeinModule(n, N, 0, ring).s0()


def tree_vector(tree: FusionTree, module: SkeinModule) -> list:
    return module.tree_vector(tree)


def _three_leaf_tree(first: tuple[int, int], third: int, N: int) -> FusionTree:
    """Clusters 0, 1, 2 of color N and cluster 3 of color 3N-2: the pair
    ``first`` fuses into 2N-2, which then meets ``third`` and cluster 3."""
    a, b = first
    x, y = 4, 5
    return FusionTree(
        4,
        ((a, x, N), (b, x, N), (x, y, 2 * N - 2), (third, y, N), (3, y, 3 * N - 2)),
    )


def eq41_check(N: int, ring=RATFUNC) -> dict:
    """Unnormalized half twist of clusters 2 and 3 on the tree fusing clusters
    1, 2 first, in S(B^3, (N)_3, (3N-2)).

    Expected: A^{N^2} times the same tree plus A^{N^2-2N} times the tree
    fusing clusters 2, 3 first.  Returns the coefficients found.
    """
    S = SkeinModule(3, N, 3 * N - 2, ring)
    m12 = S.tree_vector(_three_leaf_tree((0, 1), 2, N))
    m23 = S.tree_vector(_three_leaf_tree((1, 2), 0, N))
    image = S.sigma(2, normalized=False) @ m12
    basis_cols = Matrix.from_columns([m12, m23])
    alpha, beta = basis_cols.solve(image)
    A = ring.A
    expected = (A ** (N * N), A ** (N * N - 2 * N))
    return {
        "dim": S.dim,
        "coefficients": (alpha, beta),
        "expected": expected,
        "ok": S.dim == 2 and alpha == expected[0] and beta == expected[1],
    }


# --------------------------------------------------------------------------
# The kernel representation for n >= 6


@dataclass
class KernelRep:
    """Generators restricted to the basis w_1..w_{n-2} of the Gram kernel."""

    n: int
    N: int
    ring: object
    module: SkeinModule
    u: list
    lam: object
    w: list[list]
    matrices: list[Matrix]
    chi0: object
    q: object

    def scaled(self) -> list[Matrix]:
        """(-chi_0 q)^{-1} rho(sigma_j)."""
        c = (-self.chi0 * self.q) ** -1
        return [M.scale(c) for M in self.matrices]


def _proportionality(v: Sequence, w: Sequence):
    ratio = None
    for a, b in zip(v, w):
        if b == 0:
            if not a == 0:
                raise ProportionalityFailure("vectors have different supports")
            continue
        r = a / b
        if ratio is None:
            ratio = r
        elif not r == ratio:
            raise ProportionalityFailure("coordinate ratios differ")
    if ratio is None:
        raise ProportionalityFailure("second vector is zero")
    return ratio


def kernel_rep(n: int, N: int, ring=None, cap: int | None = None) -> KernelRep:
    """Build u, v, lambda and w_1..w_{n-2}, check they span the Gram kernel,
    and restrict every generator to that basis."""
    if n % 2 or n < 6:
        raise ValueError("kernel_rep needs even n >= 6")
    if ring is None:
        ring = kernel_root(n, N)
    S = SkeinModule(n, N, 0, ring, cap=cap)
    A = ring.A
    sgn = -1 if N % 2 else 1
    cN = A ** (2 * N * (N + 1)) * sgn
    chi0 = A ** (2 * N * (N - 1)) * (-sgn)
    q = A ** (4 * N)

    u = S.tree_vector(u_tree(n, N))
    if all(c == 0 for c in u):
        raise KernelMismatch("u vanishes")
    if not S.in_kernel(u):
        raise KernelMismatch("u is not in the Gram kernel")
    s = S.rotation()
    s2u = S.sigma(2) @ u
    v = [(a - cN * b) * (A ** (-2 * N * N) * sgn) for a, b in zip(s2u, u)]
    su = s @ u
    lam = _proportionality(v, su)

    w = [u]
    for _ in range(n - 3):
        w.append([lam * c for c in s @ w[-1]])
    W = Matrix.from_columns(w)
    if W.rank() != n - 2:
        raise KernelMismatch("w_1..w_{n-2} are linearly dependent")
    if len(S.kernel) != n - 2:
        raise KernelMismatch(f"kernel has dimension {len(S.kernel)}, expected {n - 2}")
    for vec in S.kernel:
        W.solve(vec)  # raises if the kernel is not spanned by the w_j

    mats = []
    for j in range(1, n):
        Mj = S.sigma(j)
        cols = [W.solve(Mj @ wk) for wk in w]
        mats.append(Matrix.from_columns(cols))
    return KernelRep(n, N, ring, S, u, lam, w, mats, chi0, q)


def _e_coeffs(m: int):
    return chebyshev(m)


def _poly_at(coeffs: Sequence[int], x, one):
    acc = one - one
    p = one
    for c in coeffs:
        if c:
            acc = acc + p * c
        p = p * x
    return acc


def conclusion2_matrices(n: int, N: int, ring=None, half=None) -> list[Matrix]:
    """Closed-form scaled generators (-chi_0 q)^{-1} rho(sigma_j) on w_1..w_{n-2}.

    ``half`` is the square root of q = A^{4N} to use; default A^{2N}.
    """
    if ring is None:
        ring = kernel_root(n, N)
    A = ring.A
    q = A ** (4 * N)
    if half is None:
        half = A ** (2 * N)
    if not half * half == q:
        raise ValueError("half is not a square root of q")
    return reflection_matrices(n, q, half, ring.one, sign=-1)


def reflection_matrices(n: int, q, half, one, sign: int) -> list[Matrix]:
    """Generators on a basis x_1..x_{n-2} with x_{n-1} = sum (-1)^{m+1} e_m(delta) x_{n-1-m}.

    sign = +1: sigma_j x_j = -q x_j and sigma_j x_k = x_k + half x_j for |j-k| = 1.
    sign = -1: the same with q, half replaced by q^{-1}, half^{-1}.
    """
    zero = one - one
    if sign < 0:
        q, half = q ** -1, half ** -1
    delta = -half - half ** -1
    d = n - 2
    last = [zero] * d  # coordinates of x_{n-1}
    for m in range(1, n - 1):
        coef = _poly_at(_e_coeffs(m), delta, one)
        last[n - 2 - m] = coef if m % 2 else -coef
    mats = []
    for j in range(1, n):
        cols = []
        for k in range(1, d + 1):
            col = [zero] * d
            if j == k:
                col[k - 1] = -q
            else:
                col[k - 1] = one
                if abs(j - k) == 1:
                    xj = last if j == n - 1 else [one if t == j - 1 else zero for t in range(d)]
                    col = [a + half * b for a, b in zip(col, xj)]
            cols.append(col)
        mats.append(Matrix.from_columns(cols))
    return mats


# --------------------------------------------------------------------------
# Quotient by the kernel


def quotient_rep(n: int, N: int, r: int, ring=None, k: int = 0) -> tuple[int, list[Matrix]]:
    """Generators induced on S / K at A = exp(2 pi i / 4r); returns (dimension, matrices)."""
    if ring is None:
        ring = CycloRing(QRoot(4 * r, 1))
    S = SkeinModule(n, N, k, ring)
    K = S.kernel
    d = S.dim
    # complete the kernel basis with standard vectors
    cols = list(K)
    one, zero = ring.one, ring.zero
    for i in range(d):
        e = [one if t == i else zero for t in range(d)]
        trial = Matrix.from_columns(cols + [e])
        if trial.rank() == len(cols) + 1:
            cols.append(e)
    B = Matrix.from_columns(cols)
    Binv = B.inverse()
    kd = len(K)
    mats = []
    for i in range(1, n):
        M = Binv @ S.sigma(i) @ B
        if not all(M[a, b] == 0 for a in range(kd, d) for b in range(kd)):
            raise KernelMismatch(f"kernel is not stable under sigma_{i}")
        mats.append(M[kd:, kd:])
    return d - kd, mats
