"""Exact decision procedures for k-edge-magic labelings.

A graph on p vertices with q edges is k-edge-magic (k-EM) when its edges can
be labeled bijectively with the interval {k, k+1, ..., k+q-1} so that every
vertex's incident label sum is congruent to one constant c modulo p.

Because vertex sums are taken mod p, only label residues matter: the search
assigns residues drawn from the multiset {k mod p, ..., (k+q-1) mod p} instead
of raw labels, and k itself only matters mod p.  Concrete interval labels are
reconstructed afterwards, per residue class in increasing edge order, so
returned witnesses are deterministic.

The backtracking solver fixes a candidate constant c, walks edges in a
breadth-first order chosen so vertices finish early, and abandons a branch
the moment any finished vertex's sum misses c.  Partial-sum reachability
against remaining residue supply is deliberately not checked; completion
pruning alone collapses the search at the orders this package targets.
``brute_force_is_k_em`` is an independent oracle with no pruning at all,
meant for cross-checking in tests.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field

from .graphs import Graph

# Edge-count cap for the no-pruning oracle (q! permutations in the worst case).
Q_BRUTE = 8
# Intended edge-count scale for exhaustive witness enumeration.
Q_ENUM = 12

# Bumped whenever solver output could change; persisted census rows carry it.
SOLVER_VERSION = "1"


@dataclass(frozen=True)
class Labeling:
    """A bijection from edges onto the label interval [k, k+q-1]."""

    k: int
    assignment: dict[tuple[int, int], int]

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"base label k must be nonnegative, got {self.k}")
        normalized = {}
        for (u, v), label in self.assignment.items():
            edge = (u, v) if u < v else (v, u)
            if edge in normalized:
                raise ValueError(f"edge {edge} labeled twice")
            normalized[edge] = label
        object.__setattr__(self, "assignment", normalized)


@dataclass(frozen=True)
class Witness:
    """A labeling together with the common vertex sum c (mod p) it induces."""

    labeling: Labeling
    c: int


@dataclass(frozen=True)
class ResidueMultiset:
    """Multiplicities of {k mod p, ..., (k+q-1) mod p}; the search alphabet."""

    p: int
    counts: tuple[int, ...]


@dataclass(frozen=True)
class KSpectrum:
    """The residues k mod p for which a graph is k-EM."""

    p: int
    members: frozenset[int]


@dataclass
class VerifyResult:
    valid: bool
    c: int | None = None
    violations: list[str] = field(default_factory=list)


def label_residues(k: int, q: int, p: int) -> ResidueMultiset:
    """Reduce the label interval [k, k+q-1] mod p to residue multiplicities."""
    if k < 0:
        raise ValueError(f"base label k must be nonnegative, got {k}")
    if q < 0 or p < 1:
        raise ValueError(f"need q >= 0 and p >= 1, got q={q}, p={p}")
    counts = [q // p] * p
    for i in range(q % p):
        counts[(k + i) % p] += 1
    return ResidueMultiset(p, tuple(counts))


def counting_filter(g: Graph, k: int) -> bool:
    """Necessary condition for a k-EM labeling to exist.

    Summing the constant vertex sum over all p vertices counts every edge
    label twice, so 2*(k + ... + k+q-1) = 2qk + q(q-1) must vanish mod p.
    Returns False only when no labeling can exist; True is inconclusive.
    """
    if k < 0:
        raise ValueError(f"base label k must be nonnegative, got {k}")
    q = g.q
    return (2 * q * k + q * (q - 1)) % g.p == 0


def _bfs_edge_order(g: Graph) -> list[tuple[int, int]]:
    """Edges ordered so that vertices complete early during the search.

    Vertices are numbered by BFS (highest degree first among unvisited
    starts, neighbors in ascending order) and edges sort by their later
    endpoint.  A vertex's sum closes out once the edge to its highest
    numbered neighbor is placed, which BFS keeps near the vertex itself.
    """
    masks = g.adjacency_masks()
    degs = g.degrees()
    index = [-1] * g.p
    counter = 0
    for start in sorted(range(g.p), key=lambda v: (-degs[v], v)):
        if index[start] != -1 or degs[start] == 0:
            continue
        index[start] = counter
        counter += 1
        queue = deque([start])
        while queue:
            v = queue.popleft()
            m = masks[v]
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                if index[w] == -1:
                    index[w] = counter
                    counter += 1
                    queue.append(w)
    return sorted(
        g.edges,
        key=lambda e: (max(index[e[0]], index[e[1]]), min(index[e[0]], index[e[1]])),
    )


def _magic_residue_solutions(
    g: Graph, k: int, c: int, limit: int | None
) -> list[dict[tuple[int, int], int]]:
    """All residue assignments (edge -> residue) with every vertex sum = c mod p.

    Exhaustive up to permutations within a residue class, which cannot change
    any vertex sum.  Depth-first over edges in completion order, residues
    ascending, pruning a branch the moment a completed vertex misses c;
    stops after `limit` solutions when given.
    """
    p = g.p
    counts = list(label_residues(k, g.q, p).counts)
    degs = g.degrees()
    if any(d == 0 for d in degs) and c != 0:
        return []  # an isolated vertex has an empty sum, forcing c = 0
    order = _bfs_edge_order(g)
    # A vertex's sum is final once its last incident edge is placed.
    last_edge = {}
    for i, (u, v) in enumerate(order):
        last_edge[u] = i
        last_edge[v] = i
    completes_at: list[tuple[int, ...]] = [()] * len(order)
    for v, i in last_edge.items():
        completes_at[i] = completes_at[i] + (v,)
    partial = [0] * g.p
    chosen: list[int] = []
    solutions: list[dict[tuple[int, int], int]] = []

    def extend(i: int) -> bool:
        if i == len(order):
            solutions.append(dict(zip(order, chosen)))
            return limit is not None and len(solutions) >= limit
        u, v = order[i]
        finished = completes_at[i]
        for r in range(p):
            if counts[r] == 0:
                continue
            counts[r] -= 1
            partial[u] += r
            partial[v] += r
            for w in finished:
                if partial[w] % p != c:
                    break
            else:
                chosen.append(r)
                if extend(i + 1):
                    return True
                chosen.pop()
            counts[r] += 1
            partial[u] -= r
            partial[v] -= r
        return False

    extend(0)
    return solutions


def _interval_labels_by_residue(k: int, q: int, p: int) -> dict[int, list[int]]:
    by_residue: dict[int, list[int]] = {}
    for label in range(k, k + q):
        by_residue.setdefault(label % p, []).append(label)
    return by_residue


def _witness_from_residues(
    g: Graph, k: int, c: int, residue_map: dict[tuple[int, int], int]
) -> Witness:
    # Within each residue class actual labels go to edges in increasing order.
    pool = _interval_labels_by_residue(k, g.q, g.p)
    assignment = {}
    for edge in g.edges:
        r = residue_map[edge]
        assignment[edge] = pool[r].pop(0)
    return Witness(Labeling(k, assignment), c)


def is_k_em(g: Graph, k: int) -> Witness | None:
    """Exact k-EM decision: a verified witness if one exists, else None."""
    if k < 0:
        raise ValueError(f"base label k must be nonnegative, got {k}")
    if g.q == 0:
        return Witness(Labeling(k, {}), 0)  # all vertex sums are empty
    if not counting_filter(g, k):
        return None
    for c in range(g.p):
        found = _magic_residue_solutions(g, k % g.p, c, limit=1)
        if found:
            return _witness_from_residues(g, k, c, found[0])
    return None


def classify(g: Graph) -> KSpectrum:
    """Full spectrum: which residues k in [0, p-1] make g k-EM."""
    members, _, _ = classify_detailed(g)
    return KSpectrum(g.p, frozenset(members))


def classify_detailed(
    g: Graph, ks=None
) -> tuple[set[int], dict[int, Witness], dict[int, str]]:
    """Decide k-EM status for each requested residue, recording why not.

    ks defaults to all of 0..p-1; values are reduced mod p.  Returns
    (members, witness per member, exclusion reason per non-member), where the
    reason is "counting-filter" or "search-exhausted".
    """
    if ks is None:
        targets = list(range(g.p))
    else:
        targets = sorted({k % g.p for k in ks})
    members: set[int] = set()
    witnesses: dict[int, Witness] = {}
    ruled_out: dict[int, str] = {}
    for k in targets:
        if g.q > 0 and not counting_filter(g, k):
            ruled_out[k] = "counting-filter"
            continue
        w = is_k_em(g, k)
        if w is None:
            ruled_out[k] = "search-exhausted"
        else:
            members.add(k)
            witnesses[k] = w
    return members, witnesses, ruled_out


def enumerate_labelings(g: Graph, k: int, limit: int | None = None) -> list[Witness]:
    """All residue-distinct magic labelings for this k, deterministically ordered.

    Two labelings count as one when they differ only by permuting equal
    residues within a class.  Output is sorted lexicographically by the
    residue tuple over g.edges; intended for q <= Q_ENUM.
    """
    if k < 0:
        raise ValueError(f"base label k must be nonnegative, got {k}")
    if g.q == 0:
        return [Witness(Labeling(k, {}), 0)]
    if not counting_filter(g, k):
        return []
    solutions = []
    for c in range(g.p):
        for residue_map in _magic_residue_solutions(g, k % g.p, c, limit=None):
            key = tuple(residue_map[e] for e in g.edges)
            solutions.append((key, c, residue_map))
    solutions.sort(key=lambda item: item[0])
    if limit is not None:
        solutions = solutions[:limit]
    return [_witness_from_residues(g, k, c, rm) for _, c, rm in solutions]


def brute_force_is_k_em(g: Graph, k: int, q_cap: int = Q_BRUTE) -> Witness | None:
    """Independent oracle: try every distinct residue permutation, no pruning."""
    if k < 0:
        raise ValueError(f"base label k must be nonnegative, got {k}")
    if g.q > q_cap:
        raise ValueError(f"brute force capped at q={q_cap} (got q={g.q})")
    p = g.p
    counts = label_residues(k, g.q, p).counts
    residues = [r for r in range(p) for _ in range(counts[r])]
    for perm in sorted(set(itertools.permutations(residues))):
        sums = [0] * p
        for (u, v), r in zip(g.edges, perm):
            sums[u] += r
            sums[v] += r
        c = sums[0] % p
        if all(s % p == c for s in sums):
            residue_map = dict(zip(g.edges, perm))
            return _witness_from_residues(g, k, c, residue_map)
    return None


def verify_labeling(g: Graph, labeling: Labeling) -> VerifyResult:
    """Check a labeling independently of any search: bijection + constant sums."""
    q = g.q
    k = labeling.k
    edge_set = set(g.edges)
    for edge in labeling.assignment:
        if tuple(edge) not in edge_set:
            raise ValueError(f"labeling references edge {edge} absent from the graph")

    violations = []
    missing = [e for e in g.edges if e not in labeling.assignment]
    if missing:
        violations.append(f"unlabeled edges: {missing}")
    labels = sorted(labeling.assignment.values())
    if labels != list(range(k, k + q)) or len(labeling.assignment) != q:
        violations.append(
            f"labels are not a bijection onto [{k}, {k + q - 1}]: {labels}"
        )
    if violations:
        return VerifyResult(False, None, violations)

    sums = [0] * g.p
    for (u, v), label in labeling.assignment.items():
        sums[u] += label
        sums[v] += label
    c = sums[0] % g.p
    for v in range(1, g.p):
        if sums[v] % g.p != c:
            violations.append(
                f"vertex sums differ mod {g.p}: vertex 0 has {sums[0] % g.p}, "
                f"vertex {v} has {sums[v] % g.p}"
            )
    if violations:
        return VerifyResult(False, None, violations)
    return VerifyResult(True, c, [])


# ---------------------------------------------------------------------------
# Witness interchange format: {"k":…,"p":…,"c":…,"labels":[[u,v,label],…]}
# with labels sorted by (u, v).  Byte-stable for regression fixtures.
# ---------------------------------------------------------------------------


def witness_to_json(witness: Witness, p: int) -> str:
    labels = [
        [u, v, witness.labeling.assignment[(u, v)]]
        for u, v in sorted(witness.labeling.assignment)
    ]
    payload = {"k": witness.labeling.k, "p": p, "c": witness.c, "labels": labels}
    return json.dumps(payload, separators=(",", ":"))


def witness_from_json(text: str) -> tuple[Witness, int]:
    payload = json.loads(text)
    assignment = {(u, v): label for u, v, label in payload["labels"]}
    return Witness(Labeling(payload["k"], assignment), payload["c"]), payload["p"]
