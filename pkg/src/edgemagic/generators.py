"""Generators for the graph families the census classifies.

Maximal outerplanar graphs (MOPs) of order p >= 3 are exactly the
triangulations of a convex p-gon, so they are enumerated by recursive
triangle choice on a fixed base edge (Catalan(p-2) labeled triangulations)
and deduplicated by canonical form.  Sparse (p, p-h)-graphs come from plain
edge-subset enumeration over the complete graph.  Named families supply
standard fixtures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .graphs import P_MAX, Graph, canonical_graph, emit_graph6, is_connected

# Cap for subset enumeration over the complete graph (C(28, q) worst cases).
P_SPARSE = 8

FAMILY_NAMES = ("path", "cycle", "star", "complete", "fan", "wheel", "friendship")


@dataclass(frozen=True)
class TriangulationCode:
    """A triangulation of the convex n-gon: the n-3 pairwise non-crossing chords."""

    n: int
    diagonals: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class SparseSpec:
    """Parameters of a (p, p-h) run: order p and edge deficiency h >= 0."""

    p: int
    h: int

    def __post_init__(self):
        if self.h < 0:
            raise ValueError(f"deficiency h must be nonnegative, got {self.h}")
        if self.p - self.h < 0:
            raise ValueError(f"p - h must be nonnegative, got p={self.p}, h={self.h}")

    @property
    def q(self) -> int:
        return self.p - self.h


def triangulations(n: int) -> Iterator[TriangulationCode]:
    """All triangulations of the convex n-gon with vertices 0..n-1 in hull order.

    Recursion on the base edge (a, b): pick the apex m of the triangle on it,
    then triangulate both sub-polygons.  Yields Catalan(n-2) codes, each once.
    """
    if n < 3:
        raise ValueError(f"polygon needs at least 3 vertices, got {n}")

    def chords(a: int, b: int) -> Iterator[frozenset[tuple[int, int]]]:
        if b - a < 2:
            yield frozenset()
            return
        for m in range(a + 1, b):
            own = frozenset(
                (x, y) for x, y in ((a, m), (m, b)) if y - x >= 2 and (x, y) != (0, n - 1)
            )
            for left, right in itertools.product(chords(a, m), chords(m, b)):
                yield own | left | right

    for diagonal_set in chords(0, n - 1):
        yield TriangulationCode(n, diagonal_set)


def triangulation_to_graph(code: TriangulationCode) -> Graph:
    """Polygon boundary cycle plus the triangulation's chords."""
    n = code.n
    boundary = [(i, (i + 1) % n) for i in range(n)]
    return Graph(n, tuple(boundary) + tuple(code.diagonals))


def triangulation_count(p: int) -> int:
    """Size of the raw triangulation stream; a completeness cross-check hook."""
    return sum(1 for _ in triangulations(p))


def generate_mops(p: int, p_max: int = P_MAX) -> list[Graph]:
    """One canonical representative per isomorphism class of order-p MOPs.

    Every output has q = 2p-3.  Sorted by canonical code.
    """
    if p < 3:
        raise ValueError(f"maximal outerplanar graphs need p >= 3, got {p}")
    if p > p_max:
        raise ValueError(f"MOP generation capped at p={p_max} (got p={p}); raise the cap")
    by_code: dict[bytes, Graph] = {}
    for code in triangulations(p):
        rep = canonical_graph(triangulation_to_graph(code), p_max=p_max)
        by_code.setdefault(emit_graph6(rep).encode("ascii"), rep)
    return [by_code[key] for key in sorted(by_code)]


def generate_by_edge_count(
    p: int, q: int, connected_only: bool = False, p_cap: int = P_SPARSE
) -> list[Graph]:
    """One canonical representative per isomorphism class with p vertices, q edges.

    Enumerates q-subsets of the complete graph's edges and deduplicates by
    canonical form; returns [] when q exceeds C(p, 2).  Sorted by code.
    """
    if p < 1 or q < 0:
        raise ValueError(f"need p >= 1 and q >= 0, got p={p}, q={q}")
    if p > p_cap:
        raise ValueError(f"subset enumeration capped at p={p_cap} (got p={p}); raise the cap")
    all_pairs = list(itertools.combinations(range(p), 2))
    if q > len(all_pairs):
        return []
    by_code: dict[bytes, Graph] = {}
    for subset in itertools.combinations(all_pairs, q):
        g = Graph(p, subset)
        if connected_only and not is_connected(g):
            continue
        rep = canonical_graph(g, p_max=p)
        by_code.setdefault(emit_graph6(rep).encode("ascii"), rep)
    return [by_code[key] for key in sorted(by_code)]


def generate_sparse_graphs(
    spec: SparseSpec, connected_only: bool = False, p_cap: int = P_SPARSE
) -> list[Graph]:
    """All (p, p-h)-graphs up to isomorphism, optionally connected only."""
    return generate_by_edge_count(spec.p, spec.q, connected_only, p_cap)


def named_family(name: str, n: int) -> Graph:
    """A standard fixture graph.

    path/cycle/star/complete/fan/wheel take n = total vertex count;
    friendship takes n = number of triangles (2n+1 vertices).
    """
    if name == "path":
        if n < 1:
            raise ValueError("path needs n >= 1")
        return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
    if name == "cycle":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))
    if name == "star":
        if n < 2:
            raise ValueError("star needs n >= 2")
        return Graph(n, tuple((0, i) for i in range(1, n)))
    if name == "complete":
        if n < 1:
            raise ValueError("complete graph needs n >= 1")
        return Graph(n, tuple(itertools.combinations(range(n), 2)))
    if name == "fan":
        if n < 3:
            raise ValueError("fan needs n >= 3")
        spokes = tuple((0, i) for i in range(1, n))
        path = tuple((i, i + 1) for i in range(1, n - 1))
        return Graph(n, spokes + path)
    if name == "wheel":
        if n < 4:
            raise ValueError("wheel needs n >= 4")
        spokes = tuple((0, i) for i in range(1, n))
        rim = tuple((i, i + 1) for i in range(1, n - 1)) + ((1, n - 1),)
        return Graph(n, spokes + rim)
    if name == "friendship":
        if n < 1:
            raise ValueError("friendship graph needs n >= 1 triangles")
        edges = []
        for t in range(n):
            a, b = 2 * t + 1, 2 * t + 2
            edges += [(0, a), (0, b), (a, b)]
        return Graph(2 * n + 1, tuple(edges))
    raise ValueError(f"unknown family {name!r}; expected one of {', '.join(FAMILY_NAMES)}")
