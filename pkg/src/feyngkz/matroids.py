"""Matroids given by explicit base lists, and the matroids of a Feynman graph.

Subsets of the ground set are bitmasks internally. Public methods accept
either a bitmask or an iterable of ground-set labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable

from .errors import HypothesisError, MatroidError
from .graph import FeynmanGraph, bits, enumerate_forests, mask_of, require_s1i
from .lp import solve_lp
from .symanzik import massive_truncation_2forests, momentous_2forests

__all__ = [
    "Matroid",
    "ExchangeReport",
    "QuotientWitness",
    "PolytopeEdgeReport",
    "graphic_matroid",
    "cographic_matroid",
    "two_forest_matroid",
    "momentous_matroid",
    "massive_truncation_matroid",
    "feynman_matroid",
    "quotient_by_subset",
    "check_exchange_axiom",
    "circuits",
    "rank_of",
    "span_of",
    "is_quotient",
    "matroid_polytope_edge_directions",
]


@dataclass(frozen=True)
class Matroid:
    """A matroid on ``ground`` with bases stored as bitmasks.

    Construction checks that the base family is nonempty and equicardinal;
    the exchange axiom is not assumed (see ``check_exchange_axiom``).
    """

    ground: tuple[str, ...]
    base_masks: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "base_masks", frozenset(self.base_masks))
        if not self.base_masks:
            raise MatroidError("a matroid needs at least one basis")
        sizes = {b.bit_count() for b in self.base_masks}
        if len(sizes) > 1:
            raise MatroidError(f"bases of unequal cardinality: sizes {sorted(sizes)}")
        if any(b >> len(self.ground) for b in self.base_masks):
            raise MatroidError("basis outside the ground set")

    @classmethod
    def from_bases(cls, ground: Iterable[str], bases: Iterable[Iterable[str]]) -> Matroid:
        ground = tuple(ground)
        pos = {x: i for i, x in enumerate(ground)}
        return cls(ground, frozenset(mask_of(pos[x] for x in b) for b in bases))

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.ground)) - 1

    @property
    def rank(self) -> int:
        return next(iter(self.base_masks)).bit_count()

    @property
    def bases(self) -> frozenset[frozenset[str]]:
        return frozenset(self.labels(b) for b in self.base_masks)

    def labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.ground[j] for j in bits(mask))

    def mask(self, subset: int | Iterable[str]) -> int:
        if isinstance(subset, int):
            return subset
        pos = {x: i for i, x in enumerate(self.ground)}
        try:
            return mask_of(pos[x] for x in subset)
        except KeyError as exc:
            raise MatroidError(f"{exc.args[0]!r} is not in the ground set") from None

    def dual(self) -> Matroid:
        full = self.full_mask
        return Matroid(self.ground, frozenset(full & ~b for b in self.base_masks))

    @cached_property
    def _independent(self) -> frozenset[int]:
        seen: set[int] = set()
        stack = list(self.base_masks)
        while stack:
            s = stack.pop()
            if s in seen:
                continue
            seen.add(s)
            for j in bits(s):
                stack.append(s & ~(1 << j))
        return frozenset(seen)

    def is_independent(self, subset) -> bool:
        return self.mask(subset) in self._independent

    def rank_of(self, subset) -> int:
        s = self.mask(subset)
        return max((s & b).bit_count() for b in self.base_masks)

    def span_of(self, subset) -> frozenset[str]:
        return self.labels(self._span_mask(self.mask(subset)))

    def _span_mask(self, s: int) -> int:
        r = self.rank_of(s)
        return mask_of(j for j in range(self.size) if self.rank_of(s | (1 << j)) == r)

    @cached_property
    def circuit_masks(self) -> frozenset[int]:
        indep = self._independent
        out = []
        for s in range(1, 1 << self.size):
            if s in indep:
                continue
            if all((s & ~(1 << j)) in indep for j in bits(s)):
                out.append(s)
        return frozenset(out)

    def circuits(self) -> frozenset[frozenset[str]]:
        return frozenset(self.labels(c) for c in self.circuit_masks)

    def sorted_bases(self) -> list[tuple[str, ...]]:
        return sorted(tuple(self.ground[j] for j in bits(b)) for b in self.base_masks)


def circuits(m: Matroid) -> frozenset[frozenset[str]]:
    return m.circuits()


def rank_of(m: Matroid, subset) -> int:
    return m.rank_of(subset)


def span_of(m: Matroid, subset) -> frozenset[str]:
    return m.span_of(subset)


# -- graph matroids -----------------------------------------------------------


@lru_cache(maxsize=4096)
def graphic_matroid(g: FeynmanGraph) -> Matroid:
    require_s1i(g)
    return Matroid(g.edge_ids, frozenset(f.mask for f in enumerate_forests(g, 1)))


@lru_cache(maxsize=4096)
def cographic_matroid(g: FeynmanGraph) -> Matroid:
    return graphic_matroid(g).dual()


@lru_cache(maxsize=4096)
def two_forest_matroid(g: FeynmanGraph) -> Matroid:
    require_s1i(g)
    return Matroid(g.edge_ids, frozenset(f.mask for f in enumerate_forests(g, 2)))


@lru_cache(maxsize=8192)
def momentous_matroid(g: FeynmanGraph) -> Matroid:
    bases = momentous_2forests(g)
    if not bases:
        raise HypothesisError("no momentous 2-forest: the external vertices are never split")
    return Matroid(g.edge_ids, frozenset(bases))


@lru_cache(maxsize=8192)
def massive_truncation_matroid(g: FeynmanGraph) -> Matroid:
    bases = massive_truncation_2forests(g)
    if not bases:
        raise HypothesisError("no massive truncations: every edge is massless")
    return Matroid(g.edge_ids, frozenset(bases))


@lru_cache(maxsize=8192)
def feynman_matroid(g: FeynmanGraph) -> Matroid:
    """Momentous 2-forests together with massive truncations."""
    bases = set(momentous_2forests(g)) | set(massive_truncation_2forests(g))
    if not bases:
        raise HypothesisError("no 2-forest term in G_m (neither momentous nor massively truncated)")
    return Matroid(g.edge_ids, frozenset(bases))


def quotient_by_subset(m: Matroid, eprime) -> Matroid:
    """Bases: sets B such that B + e' is a basis of ``m`` for some e' in E' - B."""
    ep = m.mask(eprime)
    if m.rank_of(ep) == 0:
        raise MatroidError("trivial quotient: the subset has rank zero")
    out = set()
    for b in m.base_masks:
        for j in bits(b & ep):
            out.add(b & ~(1 << j))
    return Matroid(m.ground, frozenset(out))


# -- axiom and relation checks -----------------------------------------------


@dataclass(frozen=True)
class ExchangeReport:
    weak_ok: bool
    strong_ok: bool
    weak_counterexample: tuple[frozenset, frozenset, object] | None = None
    strong_counterexample: tuple[frozenset, frozenset, object] | None = None

    @property
    def ok(self) -> bool:
        return self.weak_ok and self.strong_ok


@lru_cache(maxsize=65536)
def _exchange(base_masks: frozenset[int]) -> tuple[tuple | None, tuple | None]:
    weak = strong = None
    ordered = sorted(base_masks)
    for b in ordered:
        for b2 in ordered:
            for j in bits(b & ~b2):
                rest = b & ~(1 << j)
                cands = [k for k in bits(b2 & ~b) if rest | (1 << k) in base_masks]
                if not cands and weak is None:
                    weak = (b, b2, j)
                if strong is None and not any(
                    (b2 & ~(1 << k)) | (1 << j) in base_masks for k in cands
                ):
                    strong = (b, b2, j)
            if weak is not None and strong is not None:
                return weak, strong
    return weak, strong


def check_exchange_axiom(bases: Matroid | Iterable) -> ExchangeReport:
    """Exhaustive check of the weak and the strong basis exchange axioms.

    Accepts a ``Matroid`` or a raw collection of bases (iterables of labels or
    bitmasks); unequal cardinalities raise ``MatroidError``.
    """
    if isinstance(bases, Matroid):
        masks, labels = bases.base_masks, bases.labels
    else:
        raw = [b if isinstance(b, int) else frozenset(b) for b in bases]
        if raw and all(isinstance(b, int) for b in raw):
            masks = frozenset(raw)
            labels = lambda b: frozenset(bits(b))  # noqa: E731
        else:
            ground = sorted({x for b in raw for x in b}, key=str)
            m = Matroid.from_bases(ground, raw)
            masks, labels = m.base_masks, m.labels
        if not masks:
            raise MatroidError("empty base family")
        if len({b.bit_count() for b in masks}) > 1:
            raise MatroidError("bases of unequal cardinality")
    weak, strong = _exchange(frozenset(masks))

    def named(ce):
        if ce is None:
            return None
        b, b2, j = ce
        return labels(b), labels(b2), next(iter(labels(1 << j)))

    return ExchangeReport(weak is None, strong is None, named(weak), named(strong))


@dataclass(frozen=True)
class QuotientWitness:
    """For each circuit of M: circuits of M' inside it that cover it, or a failure."""

    holds: bool
    coverings: tuple[tuple[frozenset[str], tuple[frozenset[str], ...]], ...]
    failures: tuple[frozenset[str], ...] = ()


@lru_cache(maxsize=65536)
def _quotient_masks(prime_circuits: frozenset[int], circuits: frozenset[int]):
    coverings = []
    failures = []
    for c in sorted(circuits):
        inside = sorted(x for x in prime_circuits if x & ~c == 0)
        union = 0
        for x in inside:
            union |= x
        if union != c:
            failures.append(c)
            coverings.append((c, ()))
            continue
        # greedy cover, largest new contribution first
        chosen, covered = [], 0
        while covered != c:
            x = max(inside, key=lambda y: ((y & ~covered).bit_count(), -y))
            chosen.append(x)
            covered |= x
        coverings.append((c, tuple(chosen)))
    return tuple(coverings), tuple(failures)


def is_quotient(mprime: Matroid, m: Matroid) -> QuotientWitness:
    """Is ``mprime`` a quotient of ``m``: every circuit of m a union of circuits of mprime?"""
    if mprime.ground != m.ground:
        raise MatroidError("quotient check needs identical ground sets")
    coverings, failures = _quotient_masks(mprime.circuit_masks, m.circuit_masks)
    return QuotientWitness(
        holds=not failures,
        coverings=tuple((m.labels(c), tuple(m.labels(x) for x in xs)) for c, xs in coverings),
        failures=tuple(m.labels(c) for c in failures),
    )


# -- matroid polytope ---------------------------------------------------------


@dataclass(frozen=True)
class PolytopeEdgeReport:
    edges: tuple[tuple[frozenset[str], frozenset[str]], ...]
    directions: frozenset[tuple[int, ...]]
    ok: bool
    bad_edges: tuple[tuple[frozenset[str], frozenset[str]], ...] = ()


def _adjacent(vertices: list[tuple[int, ...]], i: int, j: int) -> bool:
    """Vertices i, j span an edge of conv(vertices) iff every convex
    representation of their midpoint puts all weight on i and j, i.e. the
    minimum of lambda_i + lambda_j over such representations is 1."""
    d = len(vertices[0])
    mid = [Fraction(vertices[i][k] + vertices[j][k], 2) for k in range(d)]
    A = [[v[k] for v in vertices] for k in range(d)]
    A.append([1] * len(vertices))
    b = mid + [Fraction(1)]
    c = [1 if t in (i, j) else 0 for t in range(len(vertices))]
    res = solve_lp(A, b, c)
    return res.status == "optimal" and res.value == 1


@lru_cache(maxsize=16384)
def _polytope_edges(n: int, base_masks: frozenset[int]) -> tuple[tuple[int, int], ...]:
    ordered = sorted(base_masks)
    verts = [tuple((b >> k) & 1 for k in range(n)) for b in ordered]
    return tuple(
        (ordered[i], ordered[j])
        for i, j in combinations(range(len(ordered)), 2)
        if _adjacent(verts, i, j)
    )


def _is_root(vec: tuple[int, ...]) -> bool:
    nz = sorted(x for x in vec if x)
    return nz == [-1, 1]


def matroid_polytope_edge_directions(m: Matroid) -> PolytopeEdgeReport:
    """Edges of the base polytope found by exact LP, with their directions.

    ``ok`` means every edge direction is e_i - e_j for some i != j.
    """
    n = m.size
    edges = _polytope_edges(n, m.base_masks)
    dirs = set()
    bad = []
    for b1, b2 in edges:
        vec = tuple(((b2 >> k) & 1) - ((b1 >> k) & 1) for k in range(n))
        dirs.add(vec)
        if not _is_root(vec):
            bad.append((m.labels(b1), m.labels(b2)))
    return PolytopeEdgeReport(
        edges=tuple((m.labels(a), m.labels(b)) for a, b in edges),
        directions=frozenset(dirs),
        ok=not bad,
        bad_edges=tuple(bad),
    )
