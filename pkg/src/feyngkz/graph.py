"""Feynman multigraphs: validation, i-forests and small combinatorial oracles.

Edges are addressed by position in ``FeynmanGraph.edges``; edge subsets are
integer bitmasks (bit ``j`` set means edge ``j`` is in the subset).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import GraphStructureError, S1IError

__all__ = [
    "Edge",
    "FeynmanGraph",
    "Forest",
    "Violation",
    "S1IReport",
    "validate_s1i",
    "require_s1i",
    "enumerate_forests",
    "spanning_tree_count_oracle",
    "contract_edge",
    "delete_edge",
    "massive_path_exists",
    "components",
    "mask_of",
    "bits",
    "banana",
    "cycle",
]


class Edge(NamedTuple):
    id: str
    ends: tuple[str, str]
    massive: bool = False

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class FeynmanGraph:
    """A multigraph with per-edge mass flags and a set of external vertices.

    Parallel edges and self-loops are representable; ``validate_s1i`` rejects
    the latter. Instances are immutable and hashable.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    external: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "edges", tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        )
        object.__setattr__(self, "external", frozenset(self.external))
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphStructureError("duplicate vertex identifiers")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise GraphStructureError(f"duplicate edge ids: {dup}")
        known = set(self.vertices)
        for e in self.edges:
            for v in e.ends:
                if v not in known:
                    raise GraphStructureError(f"edge {e.id!r} has dangling endpoint {v!r}")
        stray = self.external - known
        if stray:
            raise GraphStructureError(f"external vertices not in graph: {sorted(stray)}")

    @classmethod
    def from_edges(
        cls,
        ends: Iterable[tuple[str, str]],
        *,
        massive: Iterable[bool] | None = None,
        external: Iterable[str] = (),
        vertices: Sequence[str] | None = None,
        prefix: str = "e",
    ) -> FeynmanGraph:
        """Build a graph from endpoint pairs; edges are named ``e1, e2, ...``."""
        ends = [tuple(p) for p in ends]
        flags = list(massive) if massive is not None else [False] * len(ends)
        if len(flags) != len(ends):
            raise GraphStructureError("massive flags do not match the number of edges")
        if vertices is None:
            seen: dict[str, None] = {}
            for u, v in ends:
                seen.setdefault(u)
                seen.setdefault(v)
            vertices = list(seen)
        edges = tuple(
            Edge(f"{prefix}{i + 1}", (u, v), bool(m)) for i, ((u, v), m) in enumerate(zip(ends, flags))
        )
        return cls(tuple(vertices), edges, frozenset(external))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict[str, int]:
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def endpoints(self) -> tuple[tuple[int, int], ...]:
        idx = self.vertex_index
        return tuple((idx[e.ends[0]], idx[e.ends[1]]) for e in self.edges)

    @cached_property
    def massive_mask(self) -> int:
        return mask_of(j for j, e in enumerate(self.edges) if e.massive)

    @property
    def full_mask(self) -> int:
        return (1 << self.n_edges) - 1

    def with_masses(self, massive: Iterable[bool]) -> FeynmanGraph:
        flags = list(massive)
        edges = tuple(e._replace(massive=bool(m)) for e, m in zip(self.edges, flags, strict=True))
        return FeynmanGraph(self.vertices, edges, self.external)

    def with_external(self, external: Iterable[str]) -> FeynmanGraph:
        return FeynmanGraph(self.vertices, self.edges, frozenset(external))

    def edge_set(self, mask: int) -> frozenset[str]:
        return frozenset(self.edges[j].id for j in bits(mask))

    def subset_mask(self, edge_ids: Iterable[str]) -> int:
        try:
            return mask_of(self.edge_index[i] for i in edge_ids)
        except KeyError as exc:
            raise GraphStructureError(f"unknown edge {exc.args[0]!r}") from None


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits(mask: int) -> list[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _count_components(n_vertices: int, pairs: Iterable[tuple[int, int]], alive=None) -> int:
    dsu = _DSU(n_vertices)
    count = n_vertices if alive is None else len(alive)
    for u, v in pairs:
        if alive is not None and (u not in alive or v not in alive):
            continue
        if dsu.union(u, v):
            count -= 1
    return count


def components(g: FeynmanGraph, mask: int) -> tuple[frozenset[str], ...]:
    """Vertex partition induced by the edge subset ``mask`` on all of V."""
    dsu = _DSU(len(g.vertices))
    for j in bits(mask):
        dsu.union(*g.endpoints[j])
    groups: dict[int, list[str]] = {}
    for i, v in enumerate(g.vertices):
        groups.setdefault(dsu.find(i), []).append(v)
    parts = [frozenset(vs) for vs in groups.values()]
    order = g.vertex_index
    parts.sort(key=lambda p: min(order[v] for v in p))
    return tuple(parts)


@dataclass(frozen=True)
class Forest:
    """An acyclic edge subset together with the vertex partition it induces."""

    mask: int
    components: tuple[frozenset[str], ...]

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def component_of(self, v: str) -> frozenset[str]:
        for part in self.components:
            if v in part:
                return part
        raise KeyError(v)


@dataclass(frozen=True)
class Violation:
    kind: str  # no_edges | disconnected | self_loop | bridge | cut_vertex
    item: str | None = None


@dataclass(frozen=True)
class S1IReport:
    ok: bool
    violations: tuple[Violation, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@lru_cache(maxsize=4096)
def validate_s1i(g: FeynmanGraph) -> S1IReport:
    """Check connectivity, edges, self-loops, bridges and cut vertices."""
    n = len(g.vertices)
    violations: list[Violation] = []
    if g.n_edges == 0:
        violations.append(Violation("no_edges"))
    proper = [(j, p) for j, p in enumerate(g.endpoints) if p[0] != p[1]]
    base = _count_components(n, (p for _, p in proper))
    if base > 1:
        violations.append(Violation("disconnected"))
    for j, e in enumerate(g.edges):
        if e.is_loop:
            violations.append(Violation("self_loop", e.id))
    for j, _ in proper:
        rest = (p for k, p in proper if k != j)
        if _count_components(n, rest) > base:
            violations.append(Violation("bridge", g.edges[j].id))
    if n > 2:
        for i, v in enumerate(g.vertices):
            alive = set(range(n)) - {i}
            if _count_components(n, (p for _, p in proper), alive) > base:
                violations.append(Violation("cut_vertex", v))
    return S1IReport(not violations, tuple(violations))


def require_s1i(g: FeynmanGraph) -> None:
    report = validate_s1i(g)
    if not report.ok:
        raise S1IError(report)


@lru_cache(maxsize=4096)
def _forest_masks(g: FeynmanGraph, size: int) -> tuple[int, ...]:
    n = len(g.vertices)
    ends = g.endpoints
    m = g.n_edges
    out: list[int] = []

    def extend(start: int, chosen: list[int], parent: list[int]):
        if len(chosen) == size:
            out.append(mask_of(chosen))
            return
        # not enough edges left to reach the target size
        for j in range(start, m - (size - len(chosen)) + 1):
            u, v = ends[j]
            dsu = _DSU(n)
            dsu.parent = parent[:]
            if not dsu.union(u, v):
                continue
            chosen.append(j)
            extend(j + 1, chosen, dsu.parent)
            chosen.pop()

    extend(0, [], list(range(n)))
    return tuple(out)


def enumerate_forests(g: FeynmanGraph, i: int) -> list[Forest]:
    """All i-forests of ``g``, ordered lexicographically by sorted edge indices.

    An i-forest is an acyclic edge set whose spanning subgraph has exactly
    ``i - 1`` more components than ``g``.
    """
    if i < 1:
        raise ValueError("i must be a positive integer")
    n = len(g.vertices)
    base = _count_components(n, (p for p in g.endpoints if p[0] != p[1]))
    size = n - base - (i - 1)
    if size < 0:
        return []
    return [Forest(mask, components(g, mask)) for mask in _forest_masks(g, size)]


def _bareiss_det(mat: list[list[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def spanning_tree_count_oracle(g: FeynmanGraph) -> int:
    """Number of spanning trees via a Laplacian cofactor (matrix-tree theorem)."""
    n = len(g.vertices)
    if n == 0:
        return 0
    lap = [[0] * n for _ in range(n)]
    for u, v in g.endpoints:
        if u == v:
            continue
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    return _bareiss_det([row[1:] for row in lap[1:]])


def _edge_position(g: FeynmanGraph, e: str | int) -> int:
    if isinstance(e, int):
        if not 0 <= e < g.n_edges:
            raise GraphStructureError(f"edge index {e} out of range")
        return e
    try:
        return g.edge_index[e]
    except KeyError:
        raise GraphStructureError(f"unknown edge {e!r}") from None


def delete_edge(g: FeynmanGraph, e: str | int) -> FeynmanGraph:
    j = _edge_position(g, e)
    return FeynmanGraph(g.vertices, g.edges[:j] + g.edges[j + 1 :], g.external)


def contract_edge(g: FeynmanGraph, e: str | int) -> FeynmanGraph:
    """Contract edge ``e``; the merged vertex keeps the first endpoint's name.

    Edges parallel to ``e`` become self-loops. The merged vertex is external
    iff either endpoint was.
    """
    j = _edge_position(g, e)
    keep, gone = g.edges[j].ends
    if keep == gone:
        raise GraphStructureError(f"cannot contract self-loop {g.edges[j].id!r}")

    def rename(v: str) -> str:
        return keep if v == gone else v

    edges = tuple(
        x._replace(ends=(rename(x.ends[0]), rename(x.ends[1]))) for k, x in enumerate(g.edges) if k != j
    )
    vertices = tuple(v for v in g.vertices if v != gone)
    external = frozenset(rename(v) for v in g.external)
    return FeynmanGraph(vertices, edges, external)


def massive_path_exists(g: FeynmanGraph, v: str) -> bool:
    """True iff ``v`` reaches an external vertex along massive edges only."""
    if v not in g.vertex_index:
        raise GraphStructureError(f"unknown vertex {v!r}")
    adj: dict[str, list[str]] = {}
    for e in g.edges:
        if e.massive and not e.is_loop:
            a, b = e.ends
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if x in g.external:
            return True
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return False


def banana(n: int, *, massive: Iterable[bool] | bool = False, external=("a", "b")) -> FeynmanGraph:
    """Two vertices ``a``, ``b`` joined by ``n`` parallel edges."""
    flags = [massive] * n if isinstance(massive, bool) else list(massive)
    return FeynmanGraph.from_edges([("a", "b")] * n, massive=flags, external=external)


def cycle(n: int, *, massive: Iterable[bool] | bool = False, external: Iterable[str] | None = None) -> FeynmanGraph:
    """The n-cycle on vertices ``v1..vn``; all vertices external by default."""
    names = [f"v{i + 1}" for i in range(n)]
    flags = [massive] * n if isinstance(massive, bool) else list(massive)
    ext = names if external is None else external
    return FeynmanGraph.from_edges(
        [(names[i], names[(i + 1) % n]) for i in range(n)], massive=flags, external=ext
    )
