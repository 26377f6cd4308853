"""Graph and hypergraph encodings of feasible arrangements.

Two constructions:

* the q = 3 tripartite graph over the box [-3N, 3N]^2, whose triangles carry
  feasible point triples of R^3;
* the q-partite (q-1)-uniform hypergraph over Z_N^(q-1), whose edges are
  labelled with shifted weight tuples and whose simplices correspond to
  feasible arrangements in R^(1) x ... x R^(q).

Vertex parts are numbered 1..q as in the labelling formula; Python
sequences holding one vertex per part are 0-indexed (part j at index j-1).
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import ContractError, InputError, check_budget
from .feasible import ModArrangement, derive_tail, feasible_q3_check, is_feasible

Point = tuple[int, int]


# --- tripartite graph --------------------------------------------------------


@dataclass(frozen=True)
class TripartiteGraph:
    """Parts V1, V2, V3 labelled by [-M, M]^2 with M = 3N; adjacency is
    decided on demand from the point set R."""

    R: frozenset
    N: int

    @property
    def M(self) -> int:
        return 3 * self.N

    def vertices(self) -> list[Point]:
        rng = range(-self.M, self.M + 1)
        return [(x, y) for x in rng for y in rng]

    @property
    def num_vertices(self) -> int:
        return 3 * (2 * self.M + 1) ** 2

    @staticmethod
    def point12(i: Point, j: Point) -> Point:
        return (i[1] - j[1], j[0] - i[0] + j[1] - i[1])

    @staticmethod
    def point23(j: Point, k: Point) -> Point:
        return (k[0] - j[0] + k[1] - j[1], j[0] - k[0])

    @staticmethod
    def point13(i: Point, k: Point) -> Point:
        return (k[0] - i[0], k[1] - i[1])

    def adjacent12(self, i: Point, j: Point) -> bool:
        return self.point12(i, j) in self.R

    def adjacent23(self, j: Point, k: Point) -> bool:
        return self.point23(j, k) in self.R

    def adjacent13(self, i: Point, k: Point) -> bool:
        return self.point13(i, k) in self.R


def build_tripartite(R: Iterable[Point], N: int) -> TripartiteGraph:
    R = frozenset((int(x), int(y)) for x, y in R)
    if any(max(abs(x), abs(y)) > N for x, y in R):
        raise InputError(f"points of R must lie in [-{N}, {N}]^2")
    return TripartiteGraph(R, N)


@dataclass(frozen=True)
class Triangle:
    i: Point
    j: Point
    k: Point
    points: tuple[Point, Point, Point]


def count_triangles(G: TripartiteGraph, budget: int | None = None) -> tuple[int, list[Triangle]]:
    """Enumerate every triangle by scanning all vertex pairs of each bipartite
    part and intersecting neighbourhoods."""
    side = 2 * G.M + 1
    check_budget("triangle enumeration", side**4, budget)
    V = G.vertices()
    n12, n13, n23 = defaultdict(list), defaultdict(set), defaultdict(set)
    for u in V:
        for v in V:
            if G.adjacent12(u, v):
                n12[u].append(v)
            if G.adjacent13(u, v):
                n13[u].add(v)
            if G.adjacent23(u, v):
                n23[u].add(v)
    triangles = []
    for i in V:
        ks = n13.get(i)
        if not ks:
            continue
        for j in n12.get(i, ()):
            for k in sorted(ks & n23.get(j, set())):
                pts = (G.point12(i, j), G.point23(j, k), G.point13(i, k))
                triangles.append(Triangle(i, j, k, pts))
    return len(triangles), triangles


def witness_triangles(G: TripartiteGraph, point: Point) -> list[Triangle]:
    """The (2N+1)^2 triangles (i, i + (x+y, -x), i + (x, y)) for i in [-N, N]^2."""
    x, y = point
    out = []
    rng = range(-G.N, G.N + 1)
    for ix in rng:
        for iy in rng:
            i, j, k = (ix, iy), (ix + x + y, iy - x), (ix + x, iy + y)
            out.append(Triangle(i, j, k, (G.point12(i, j), G.point23(j, k), G.point13(i, k))))
    return out


def triangle_edges(t: Triangle) -> tuple:
    return (("12", t.i, t.j), ("23", t.j, t.k), ("13", t.i, t.k))


def triangle_is_feasible(t: Triangle) -> bool:
    (x0, x1), (y0, y1), (z0, z1) = t.points
    return feasible_q3_check(x0, x1, y0, y1, z0, z1)


# --- labelled hypergraph -----------------------------------------------------


def _coord(vertex: Sequence[int], b: int, q: int) -> int:
    b %= q
    if b == 0:
        return -sum(vertex)
    return vertex[b - 1]


def edge_label(vertices: Sequence[Sequence[int] | None], j: int, q: int, N: int | None = None) -> tuple[int, ...]:
    """Label w^(j) of the edge formed by every part except j.

    w_a^(j) = sum_{t=1}^{q-1} sum_{b=a-t+1}^{a} x_b^(j-t), with part and
    symbol indices taken mod q and x_0 = -(x_1 + ... + x_{q-1}).  Without
    ``N`` the integer value is returned.
    """
    if len(vertices) != q:
        raise InputError(f"need one vertex slot per part ({q})")
    label = []
    for a in range(1, q):
        total = 0
        for t in range(1, q):
            part = (j - t - 1) % q
            v = vertices[part]
            for b in range(a - t + 1, a + 1):
                total += _coord(v, b, q)
        label.append(total % N if N is not None else total)
    return tuple(label)


def label_matrix(j: int, q: int) -> np.ndarray:
    """Integer matrix L with label w^(j) = L @ concat(x^(1), ..., x^(q))."""
    dim = q * (q - 1)
    cols = []
    for e in range(dim):
        flat = [0] * dim
        flat[e] = 1
        verts = [flat[p * (q - 1):(p + 1) * (q - 1)] for p in range(q)]
        cols.append(edge_label(verts, j, q))
    return np.array(cols, dtype=np.int64).T


@dataclass(frozen=True)
class LabeledHypergraph:
    """Vertex parts X^(1..q), each Z_N^(q-1); an edge of E^(j) is present
    iff its label lies in R^(j).  Edges are never materialised."""

    q: int
    N: int
    R: tuple[frozenset, ...]

    @property
    def num_vertices(self) -> int:
        return self.q * self.N ** (self.q - 1)

    def has_edge(self, j: int, vertices: Sequence[Sequence[int] | None]) -> bool:
        return edge_label(vertices, j, self.q, self.N) in self.R[j - 1]


def build_hypergraph(sets: Sequence[Iterable[Sequence[int]]], q: int, N: int) -> LabeledHypergraph:
    if len(sets) != q:
        raise InputError(f"need {q} label sets")
    R = []
    for s in sets:
        fs = frozenset(tuple(int(v) for v in t) for t in s)
        if any(len(t) != q - 1 or any(not 0 <= v < N for v in t) for t in fs):
            raise InputError(f"labels must be {q - 1}-tuples over Z_{N}")
        R.append(fs)
    return LabeledHypergraph(q, N, tuple(R))


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[tuple[int, ...], ...]
    labels: tuple[tuple[int, ...], ...]

    def edges(self) -> list[tuple]:
        q = len(self.vertices)
        return [(j, self.vertices[: j - 1] + self.vertices[j:]) for j in range(1, q + 1)]


def _scan_simplices(H: LabeledHypergraph, budget: int | None) -> list[Simplex]:
    q, N = H.q, H.N
    k = q - 1
    dim = q * k
    total = N**dim
    check_budget("simplex scan", total, budget)
    mats = [label_matrix(j, q) for j in range(1, q + 1)]
    radix = N ** np.arange(k - 1, -1, -1, dtype=np.int64)
    lookups = []
    for s in H.R:
        table = np.zeros(N**k, dtype=bool)
        for t in s:
            table[int(np.dot(t, radix))] = True
        lookups.append(table)
    powers = N ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    out = []
    chunk = 1 << 17
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % N
        mask = np.ones(idx.shape[0], dtype=bool)
        labels = []
        for L, table in zip(mats, lookups):
            lab = (digits @ L.T) % N
            labels.append(lab)
            mask &= table[lab @ radix]
        for r in np.nonzero(mask)[0].tolist():
            row = digits[r].tolist()
            verts = tuple(tuple(row[p * k:(p + 1) * k]) for p in range(q))
            labs = tuple(tuple(lab[r].tolist()) for lab in labels)
            out.append(Simplex(verts, labs))
    return out


def feasible_in_product(H: LabeledHypergraph) -> list[ModArrangement]:
    """Feasible arrangements in R^(1) x ... x R^(q), via the first two tuples."""
    out = []
    for w1 in sorted(H.R[0]):
        for w2 in sorted(H.R[1]):
            arr = derive_tail(w1, w2, H.q, H.N)
            if all(t in s for t, s in zip(arr.tuples[2:], H.R[2:])):
                out.append(arr)
    return out


def simplex_extension(free: Sequence[Sequence[int]], arrangement, q: int, N: int) -> Simplex:
    """Complete free vertices x^(2), ..., x^(q-1) to a simplex carrying
    ``arrangement``.

    w^(1) involves x^(q) only through x_a^(q) in coordinate a, so x^(q) is read
    off first; then w^(2) fixes x^(1) the same way.
    """
    if not isinstance(arrangement, ModArrangement):
        arrangement = ModArrangement.from_tuples(arrangement, N)
    if arrangement.q != q or arrangement.N != N:
        raise InputError("arrangement does not match q, N")
    if not is_feasible(arrangement):
        raise ContractError("simplex extension needs a feasible arrangement")
    if len(free) != q - 2:
        raise InputError(f"need {q - 2} free vertices")
    target = arrangement.tuples
    zero = tuple([0] * (q - 1))
    verts = [zero] + [tuple(int(v) % N for v in x) for x in free] + [zero]
    partial = edge_label(verts, 1, q, N)
    verts[q - 1] = tuple((w - s) % N for w, s in zip(target[0], partial))
    partial = edge_label(verts, 2, q, N)
    verts[0] = tuple((w - s) % N for w, s in zip(target[1], partial))
    labels = tuple(edge_label(verts, j, q, N) for j in range(1, q + 1))
    if labels != target:
        raise ContractError("extension failed to reproduce the arrangement")
    return Simplex(tuple(verts), labels)


def _extend_simplices(H: LabeledHypergraph, budget: int | None) -> list[Simplex]:
    q, N = H.q, H.N
    arrs = feasible_in_product(H)
    per = N ** ((q - 1) * (q - 2))
    check_budget("simplex extension", len(arrs) * per, budget)
    out = []
    for arr in arrs:
        for free in itertools.product(itertools.product(range(N), repeat=q - 1), repeat=q - 2):
            out.append(simplex_extension(free, arr, q, N))
    return out


def enumerate_simplices(H: LabeledHypergraph, method: str = "scan", budget: int | None = None) -> list[Simplex]:
    """All simplices of H with their label arrangements.

    ``scan`` tests every vertex q-tuple; ``extend`` completes free vertices
    for each feasible arrangement in the product and is faster when that
    product is sparse.
    """
    if method == "scan":
        return _scan_simplices(H, budget)
    if method == "extend":
        return _extend_simplices(H, budget)
    raise InputError(f"unknown method {method!r}")


def group_by_labels(simplices: Iterable[Simplex]) -> dict[tuple, list[Simplex]]:
    groups: dict[tuple, list[Simplex]] = defaultdict(list)
    for s in simplices:
        groups[s.labels].append(s)
    return dict(groups)


def edge_disjoint(simplices: Sequence[Simplex]) -> bool:
    seen = set()
    for s in simplices:
        for e in s.edges():
            if e in seen:
                return False
            seen.add(e)
    return True
