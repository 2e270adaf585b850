"""Undirected vertex-labelled graphs, the induced-subgraph embedding order,
topology classes, and exhaustive enumeration of small graphs.

An embedding of one labelled graph into another is an injection that
preserves both edges and non-edges among the mapped vertices and sends
every label to a dominating label.  This order drives the network-level
saturation: over path-length-bounded graphs and over cliques it is a
well-quasi ordering, and over a fixed graph shape the labels alone are
compared positionwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence, Union

from .order import ResourceExhausted


def _normalize_edges(n: int, edges) -> frozenset:
    out = set()
    for a, b in edges:
        if a == b:
            raise ValueError(f"self loop at vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"edge ({a},{b}) references a missing vertex")
        out.add((min(a, b), max(a, b)))
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Unlabelled undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        object.__setattr__(self, "edges", _normalize_edges(self.n, self.edges))

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(b if a == v else a for a, b in self.edges if v in (a, b)))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    @staticmethod
    def complete(n: int) -> "Graph":
        return Graph(n, frozenset(itertools.combinations(range(n), 2)))


@dataclass(frozen=True)
class LabelledGraph:
    """Graph whose vertices carry process configurations."""

    n: int
    edges: frozenset
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", _normalize_edges(self.n, self.edges))
        if len(self.labels) != self.n:
            raise ValueError("one label per vertex is required")

    @property
    def shape(self) -> Graph:
        return Graph(self.n, self.edges)

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(b if a == v else a for a, b in self.edges if v in (a, b)))

    def with_labels(self, patch: dict) -> "LabelledGraph":
        labels = list(self.labels)
        for v, lbl in patch.items():
            labels[v] = lbl
        return LabelledGraph(self.n, self.edges, tuple(labels))

    def __str__(self) -> str:
        edges = ",".join(f"{a}-{b}" for a, b in sorted(self.edges))
        labels = "; ".join(str(l) for l in self.labels)
        return f"<{labels} | {edges or 'no edges'}>"


def single_vertex(label) -> LabelledGraph:
    return LabelledGraph(1, frozenset(), (label,))


def graph_embeds(small: LabelledGraph, large: LabelledGraph, leq: Callable) -> Optional[tuple[int, ...]]:
    """First induced embedding of ``small`` into ``large``, or None.

    The returned tuple maps vertex ``i`` of ``small`` to its image.
    Vertices are matched in index order with backtracking; candidates are
    pruned by label comparison and by degree (an image needs at least the
    degree of its preimage).
    """
    if small.n > large.n:
        return None
    large_deg = [large.shape.degree(w) for w in range(large.n)]
    cands: list[list[int]] = []
    for u in range(small.n):
        du = small.shape.degree(u)
        row = [
            w
            for w in range(large.n)
            if large_deg[w] >= du and leq(small.labels[u], large.labels[w])
        ]
        if not row:
            return None
        cands.append(row)

    assign = [-1] * small.n
    used = [False] * large.n

    def backtrack(u: int) -> bool:
        if u == small.n:
            return True
        for w in cands[u]:
            if used[w]:
                continue
            if all(small.adjacent(u, v) == large.adjacent(w, assign[v]) for v in range(u)):
                assign[u] = w
                used[w] = True
                if backtrack(u + 1):
                    return True
                used[w] = False
        return False

    return tuple(assign) if backtrack(0) else None


def graph_injections(small: Graph, large: Graph) -> Iterator[tuple[int, ...]]:
    """All induced embeddings of the unlabelled ``small`` into ``large``,
    in lexicographic order of the image tuple."""
    if small.n > large.n:
        return
    assign = [-1] * small.n
    used = [False] * large.n

    def backtrack(u: int) -> Iterator[tuple[int, ...]]:
        if u == small.n:
            yield tuple(assign)
            return
        for w in range(large.n):
            if used[w]:
                continue
            if all(small.adjacent(u, v) == large.adjacent(w, assign[v]) for v in range(u)):
                assign[u] = w
                used[w] = True
                yield from backtrack(u + 1)
                used[w] = False

    yield from backtrack(0)


def longest_simple_path_length(g: Graph) -> int:
    """Exact maximum number of edges on a simple path, by backtracking."""
    best = 0
    adj = [g.neighbors(v) for v in range(g.n)]
    visited = [False] * g.n

    def dfs(v: int, length: int):
        nonlocal best
        if length > best:
            best = length
        for w in adj[v]:
            if not visited[w]:
                visited[w] = True
                dfs(w, length + 1)
                visited[w] = False

    for v in range(g.n):
        if best == g.n - 1:
            break
        visited[v] = True
        dfs(v, 0)
        visited[v] = False
    return best


def diameter(g: Graph) -> Union[int, float]:
    """Longest shortest path; ``math.inf`` when disconnected."""
    if g.n == 0:
        return 0
    adj = [g.neighbors(v) for v in range(g.n)]
    worst = 0
    for src in range(g.n):
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        if len(dist) < g.n:
            return math.inf
        worst = max(worst, max(dist.values()))
    return worst


def max_degree(g: Graph) -> int:
    return max((g.degree(v) for v in range(g.n)), default=0)


def multiset_embeds(m1: Sequence, m2: Sequence, leq: Callable) -> bool:
    """Injection of multiset ``m1`` into ``m2`` with every element dominated
    by its image, via maximum bipartite matching."""
    m1 = list(m1)
    m2 = list(m2)
    if len(m1) > len(m2):
        return False
    options = [[j for j, b in enumerate(m2) if leq(a, b)] for a in m1]
    matched_to: list[Optional[int]] = [None] * len(m2)

    def assign(i: int, taken: set) -> bool:
        for j in options[i]:
            if j in taken:
                continue
            taken.add(j)
            if matched_to[j] is None or assign(matched_to[j], taken):
                matched_to[j] = i
                return True
        return False

    return all(assign(i, set()) for i in range(len(m1)))


# ---------------------------------------------------------------------------
# topology classes


@dataclass(frozen=True)
class PathBounded:
    """Graphs whose longest simple path has at most ``k`` edges."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("path bound must be at least 1")

    def __str__(self) -> str:
        return f"path-bounded:{self.k}"


@dataclass(frozen=True)
class Clique:
    """Complete graphs (a single clique of any size)."""

    def __str__(self) -> str:
        return "clique"


@dataclass(frozen=True)
class DiamDeg:
    """Connected graphs with diameter at most ``k`` and degree at most ``d``.

    Fixed-shape semantics: saturation never extends these graphs.
    """

    k: int
    d: int

    def __post_init__(self):
        if self.k < 1 or self.d < 1:
            raise ValueError("diameter and degree bounds must be at least 1")

    def __str__(self) -> str:
        return f"diam-deg:{self.k},{self.d}"


@dataclass(frozen=True)
class Reconfigurable:
    """No topology restriction; links may be rewired between steps."""

    def __str__(self) -> str:
        return "rbn"


TopologyClass = Union[PathBounded, Clique, DiamDeg, Reconfigurable]


class ClassViolation(ValueError):
    pass


def in_class(shape: Graph, cls: TopologyClass) -> bool:
    if isinstance(cls, PathBounded):
        return longest_simple_path_length(shape) <= cls.k
    if isinstance(cls, Clique):
        return all(shape.adjacent(a, b) for a, b in itertools.combinations(range(shape.n), 2))
    if isinstance(cls, DiamDeg):
        return diameter(shape) <= cls.k and max_degree(shape) <= cls.d
    if isinstance(cls, Reconfigurable):
        return True
    raise TypeError(f"unknown topology class {cls!r}")


def enumerate_extensions(shape: Graph, cls: TopologyClass) -> tuple[Graph, ...]:
    """Class members on one more vertex that keep ``shape`` induced on its
    own vertices.

    The fresh vertex (index ``shape.n``) is attached to every subset of the
    old vertices, in ascending bitmask order, and the class filter keeps
    the admissible results.  The clique class admits only the full
    attachment; fixed-shape classes extend nothing.
    """
    if not in_class(shape, cls):
        raise ClassViolation(f"graph is not in class {cls}")
    if isinstance(cls, DiamDeg):
        return ()
    if isinstance(cls, Clique):
        extra = {(v, shape.n) for v in range(shape.n)}
        return (Graph(shape.n + 1, shape.edges | extra),)
    out = []
    for mask in range(1 << shape.n):
        extra = {(v, shape.n) for v in range(shape.n) if mask >> v & 1}
        h = Graph(shape.n + 1, shape.edges | extra)
        if isinstance(cls, PathBounded) and longest_simple_path_length(h) > cls.k:
            continue
        out.append(h)
    return tuple(out)


# ---------------------------------------------------------------------------
# canonical forms and enumeration of small graphs


def _refined_classes(g: Graph) -> list[list[int]]:
    """Stable vertex partition under iterated neighbor-color refinement,
    classes in an isomorphism-invariant order."""
    colors = [g.degree(v) for v in range(g.n)]
    for _ in range(g.n):
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in g.neighbors(v))))
            for v in range(g.n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        refreshed = [rank[s] for s in sigs]
        if refreshed == colors:
            break
        colors = refreshed
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(colors[v], []).append(v)
    return [classes[c] for c in sorted(classes)]


def canonical_form(g: Graph) -> tuple:
    """Isomorphism-invariant key: the minimum adjacency bit string over all
    vertex orderings compatible with the refined color classes."""
    classes = _refined_classes(g)
    best: Optional[int] = None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = [v for part in parts for v in part]
        pos = {v: i for i, v in enumerate(order)}
        bits = 0
        for a, b in g.edges:
            i, j = pos[a], pos[b]
            if i > j:
                i, j = j, i
            bits |= 1 << (i * g.n + j)
        if best is None or bits < best:
            best = bits
    return (g.n, best)


def enumerate_graphs(n: int) -> tuple[Graph, ...]:
    """Every graph on exactly ``n`` vertices, one per isomorphism class.

    Exhausts all edge subsets, so only small ``n`` is supported.
    """
    if n > 6:
        raise ResourceExhausted(f"exhaustive graph enumeration caps at 6 vertices, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    reps: dict[tuple, Graph] = {}
    for mask in range(1 << len(pairs)):
        g = Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
        key = canonical_form(g)
        if key not in reps:
            reps[key] = g
    return tuple(reps.values())


def enumerate_diam_deg_graphs(k: int, d: int, n_max: int) -> tuple[Graph, ...]:
    """Connected graphs up to isomorphism with at most ``n_max`` vertices,
    diameter at most ``k``, and degree at most ``d``.

    Grows levels by attaching a fresh vertex to nonempty vertex subsets.
    Degrees never shrink under attachment, so the degree bound prunes
    levels early; distances can shrink, so the diameter filter only
    applies at collection time.
    """
    if n_max < 1:
        raise ValueError("need room for at least one vertex")
    if n_max > 8:
        raise ResourceExhausted(f"enumeration supports at most 8 vertices, got n_max={n_max}")
    collected: dict[tuple, Graph] = {}

    def collect(g: Graph):
        if diameter(g) <= k:
            collected.setdefault(canonical_form(g), g)

    level = {canonical_form(Graph(1)): Graph(1)}
    for g in level.values():
        collect(g)
    for _ in range(2, n_max + 1):
        grown: dict[tuple, Graph] = {}
        for g in level.values():
            for mask in range(1, 1 << g.n):
                if mask.bit_count() > d:
                    continue
                extra = {(v, g.n) for v in range(g.n) if mask >> v & 1}
                h = Graph(g.n + 1, g.edges | extra)
                if max_degree(h) > d:
                    continue
                key = canonical_form(h)
                if key not in grown:
                    grown[key] = h
        level = grown
        for g in level.values():
            collect(g)
    return tuple(collected.values())


def diam_deg_size_bound(k: int, d: int) -> Optional[float]:
    """Reference value of a published closed-form bound on the size of
    graphs with diameter ``k`` and degree ``d``: ``(k*(k-1)**d - 2)/(k-2)``.

    Returned for information only; it is undefined at ``k == 2`` (None) and
    the enumeration above never relies on it, taking an explicit vertex cap
    instead.
    """
    if k == 2:
        return None
    return (k * (k - 1) ** d - 2) / (k - 2)
