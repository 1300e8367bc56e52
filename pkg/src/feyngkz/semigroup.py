"""The lifted support matrix A_m and saturation of the semigroup N A_m.

Saturation is tested inside the lattice Z A generated by the columns. A
*hole* of degree k is a point of (cone over A) ∩ Z A with first coordinate k
that is not a sum of k columns. Holes are searched exhaustively up to a
degree bound; for non-degenerate supports the theorem-based verdict is
attached and cross-checked against the search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import HypothesisError
from .graph import FeynmanGraph, massive_path_exists
from .lattice import LatticeBasis
from .lp import in_cone
from .matroids import feynman_matroid, two_forest_matroid
from .polytope import candidate_points, lattice_points
from .symanzik import Exponent, GmSupport, lift

__all__ = [
    "SupportMatrix",
    "SaturationReport",
    "TheoremVerdicts",
    "build_support_matrix",
    "lattice_basis",
    "lattice_contains",
    "cone_contains",
    "semigroup_contains",
    "semigroup_layers",
    "saturation_check",
    "check_theorem_conditions",
    "degree_one_completeness",
    "degree_one_extra_points",
    "DEFAULT_KMAX",
]

DEFAULT_KMAX = 4

SATURATED_MAIN = "saturated (main theorem)"
SATURATED_MASSLESS = "saturated (massless theorem)"
UNKNOWN = "unknown (bounded search only)"
WITHHELD = "withheld"


@dataclass(frozen=True)
class SupportMatrix:
    """Columns are lifted exponent vectors (1, a). The first ``u_count``
    columns come from U, the rest from the F part."""

    columns: tuple[Exponent, ...]
    u_count: int = 0

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if cols:
            width = len(cols[0])
            if any(len(c) != width for c in cols):
                raise ValueError("columns of unequal length")
            if any(c[0] != 1 for c in cols):
                raise ValueError("every column must have degree coordinate 1")
            if len(set(cols)) != len(cols):
                raise ValueError("duplicate columns")
        if not 0 <= self.u_count <= len(cols):
            raise ValueError("u_count out of range")

    @classmethod
    def from_exponents(cls, exponents: Iterable[Sequence[int]], u_count: int = 0) -> SupportMatrix:
        return cls(tuple(lift(a) for a in exponents), u_count)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.columns[0]) if self.columns else 0, len(self.columns))

    @property
    def rows(self) -> list[list[int]]:
        d, n = self.shape
        return [[self.columns[j][i] for j in range(n)] for i in range(d)]

    @property
    def f_columns(self) -> tuple[Exponent, ...]:
        return self.columns[self.u_count :]

    def reordered(self, order: Sequence[int]) -> SupportMatrix:
        """Same matrix with columns permuted (``u_count`` is dropped)."""
        return SupportMatrix(tuple(self.columns[i] for i in order), 0)


def _sort_desc(vectors) -> list[Exponent]:
    return sorted(vectors, reverse=True)


def build_support_matrix(s: GmSupport, *, allow_degenerate: bool = False) -> SupportMatrix:
    """Lift U columns then F columns, each block in decreasing lexicographic order."""
    if not s.hypothesis_ok and not allow_degenerate:
        raise HypothesisError(
            "support violates the genericity hypotheses; pass allow_degenerate=True to explore it"
        )
    u = _sort_desc(s.u_part)
    f = _sort_desc(s.f_part)
    if not u and not f:
        raise HypothesisError("empty support")
    return SupportMatrix(tuple(lift(a) for a in u + f), len(u))


def lattice_basis(a: SupportMatrix) -> LatticeBasis:
    return LatticeBasis.of(a.columns, a.shape[0])


def lattice_contains(lattice: LatticeBasis, v: Sequence[int]) -> bool:
    return lattice.contains(v)


def cone_contains(a: SupportMatrix, v: Sequence[int]) -> bool:
    """Exact test of v in the nonnegative rational cone over the columns."""
    return in_cone(a.columns, tuple(v))


def semigroup_contains(a: SupportMatrix, v: Sequence[int]) -> bool:
    """Is v a sum of exactly v[0] columns? Dynamic programming capped at v.

    Worst-case exponential in v[0]; fine for the small degrees used here.
    """
    v = tuple(int(x) for x in v)
    k = v[0]
    if k < 0 or any(x < 0 for x in v):
        return False
    if any(x < 0 for c in a.columns for x in c):
        raise ValueError("box pruning needs nonnegative columns")
    layer = {tuple(0 for _ in v)}
    cols = a.columns
    for _ in range(k):
        nxt = set()
        for s in layer:
            for c in cols:
                t = tuple(x + y for x, y in zip(s, c))
                if all(x <= y for x, y in zip(t, v)):
                    nxt.add(t)
        layer = nxt
        if not layer:
            return False
    return v in layer


def semigroup_layers(a: SupportMatrix, k_max: int) -> list[set[Exponent]]:
    """``layers[k]`` = all sums of exactly k columns, for k = 0..k_max."""
    d = a.shape[0]
    layers = [{tuple(0 for _ in range(d))}]
    for _ in range(k_max):
        layers.append({tuple(x + y for x, y in zip(s, c)) for s in layers[-1] for c in a.columns})
    return layers


@dataclass(frozen=True)
class TheoremVerdicts:
    """Which saturation theorems apply to a non-degenerate Feynman support."""

    withheld: bool
    all_two_forests_present: bool | None = None
    via_massive_path: bool | None = None
    via_bases: bool | None = None
    massless: bool | None = None
    verdict: str = UNKNOWN
    reason: str = ""

    @property
    def saturated(self) -> bool:
        return self.verdict.startswith("saturated")

    @property
    def criteria_agree(self) -> bool:
        return self.via_massive_path == self.via_bases


def check_theorem_conditions(g: FeynmanGraph, s: GmSupport) -> TheoremVerdicts:
    """Decide saturation from the theorems when their hypotheses hold.

    The main theorem needs every 2-forest to contribute, which is tested as
    equality of the Feynman and 2-forest base sets. The massive-path
    criterion is evaluated alongside; it implies base equality but the
    converse can fail, and a disagreement is reported in ``reason``.
    """
    if s.degenerate:
        return TheoremVerdicts(True, verdict=WITHHELD, reason="degenerate coefficients declared")
    if not s.hypothesis_ok:
        return TheoremVerdicts(True, verdict=WITHHELD, reason="no 2-forest term in G_m")
    by_path = all(massive_path_exists(g, v) for v in g.vertices)
    by_bases = feynman_matroid(g).base_masks == two_forest_matroid(g).base_masks
    massless = g.massive_mask == 0
    if massless:
        verdict = SATURATED_MASSLESS
    elif by_bases:
        verdict = SATURATED_MAIN
    else:
        verdict = UNKNOWN
    reason = ""
    if by_path != by_bases:
        reason = (
            "every 2-forest contributes although some vertex has no massive path to an external vertex"
            if by_bases
            else "massive paths exist but some 2-forest is missing"
        )
    return TheoremVerdicts(
        withheld=False,
        all_two_forests_present=by_bases,
        via_massive_path=by_path,
        via_bases=by_bases,
        massless=massless,
        verdict=verdict,
        reason=reason,
    )


@dataclass
class SaturationReport:
    k_max: int
    holes: dict[int, tuple[Exponent, ...]]
    qa_generators: tuple[Exponent, ...]
    lattice_full: bool
    lattice_index: int | None
    lattice_rank: int
    verdicts: TheoremVerdicts | None = None
    deleted_lifts: tuple[Exponent, ...] = ()
    notes: list[str] = field(default_factory=list)

    @property
    def all_holes(self) -> list[Exponent]:
        return [h for k in sorted(self.holes) for h in self.holes[k]]

    @property
    def hole_count(self) -> int:
        return sum(len(v) for v in self.holes.values())

    @property
    def verdict(self) -> str:
        if self.hole_count:
            return "not saturated"
        if self.verdicts is not None and self.verdicts.saturated:
            return self.verdicts.verdict
        return f"no holes up to degree {self.k_max}; {UNKNOWN}"

    @property
    def consistent(self) -> bool:
        """False if a theorem verdict says saturated but holes were found."""
        return not (self.verdicts is not None and self.verdicts.saturated and self.hole_count)

    @property
    def lattice_used(self) -> str:
        return "ambient Z^(1+|E|)" if self.lattice_full else "Z A (proper sublattice)"

    def to_dict(self) -> dict:
        v = self.verdicts
        return {
            "k_max": self.k_max,
            "verdict": self.verdict,
            "lattice": {"full": self.lattice_full, "index": self.lattice_index, "rank": self.lattice_rank},
            "holes": {str(k): [list(h) for h in self.holes[k]] for k in sorted(self.holes)},
            "qa_generators": [list(h) for h in self.qa_generators],
            "deleted_lifts": [list(h) for h in self.deleted_lifts],
            "theorems": None
            if v is None
            else {
                "withheld": v.withheld,
                "all_two_forests_present": v.all_two_forests_present,
                "via_massive_path": v.via_massive_path,
                "via_bases": v.via_bases,
                "massless": v.massless,
                "verdict": v.verdict,
                "reason": v.reason,
            },
            "consistent": self.consistent,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> SaturationReport:
        t = data.get("theorems")
        verdicts = None if t is None else TheoremVerdicts(**t)
        return cls(
            k_max=data["k_max"],
            holes={int(k): tuple(tuple(h) for h in v) for k, v in data["holes"].items()},
            qa_generators=tuple(tuple(h) for h in data["qa_generators"]),
            lattice_full=data["lattice"]["full"],
            lattice_index=data["lattice"]["index"],
            lattice_rank=data["lattice"]["rank"],
            verdicts=verdicts,
            deleted_lifts=tuple(tuple(h) for h in data["deleted_lifts"]),
            notes=list(data["notes"]),
        )


def find_holes(a: SupportMatrix, k_max: int) -> dict[int, tuple[Exponent, ...]]:
    """Holes of N A inside (cone ∩ Z A), per degree 1..k_max."""
    lattice = lattice_basis(a)
    tails = [c[1:] for c in a.columns]
    layers = semigroup_layers(a, k_max)
    holes: dict[int, tuple[Exponent, ...]] = {}
    for k in range(1, k_max + 1):
        found = []
        layer = layers[k]
        for x in candidate_points(tails, k):
            v = (k, *x)
            if v in layer:
                continue
            if not lattice.is_full and not lattice.contains(v):
                continue
            if in_cone(a.columns, v):
                found.append(v)
        if found:
            holes[k] = tuple(sorted(found))
    return holes


def _generators(a: SupportMatrix, holes: dict[int, tuple[Exponent, ...]]) -> tuple[Exponent, ...]:
    """Holes that are not a hole plus a column (minimal under the N A action)."""
    gens = []
    for k in sorted(holes):
        below = set(holes.get(k - 1, ()))
        for h in holes[k]:
            if not any(tuple(x - y for x, y in zip(h, c)) in below for c in a.columns):
                gens.append(h)
    return tuple(gens)


def _orbit_closure(a: SupportMatrix, gens: Sequence[Exponent], holes, k_max: int) -> set[Exponent]:
    """Holes reachable from ``gens`` by adding columns (within the degree bound)."""
    all_holes = {h for v in holes.values() for h in v}
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        h = frontier.pop()
        if h[0] >= k_max:
            continue
        for c in a.columns:
            t = tuple(x + y for x, y in zip(h, c))
            if t in all_holes and t not in seen:
                seen.add(t)
                frontier.append(t)
    return seen


def saturation_check(
    a: SupportMatrix,
    k_max: int = DEFAULT_KMAX,
    *,
    graph: FeynmanGraph | None = None,
    support: GmSupport | None = None,
) -> SaturationReport:
    """Bounded exhaustive saturation test, with theorem verdicts if a graph is given."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    lattice = lattice_basis(a)
    holes = find_holes(a, k_max)
    gens = _generators(a, holes)
    verdicts = None
    deleted: tuple[Exponent, ...] = ()
    notes: list[str] = []
    if graph is not None and support is not None:
        verdicts = check_theorem_conditions(graph, support)
        deleted = tuple(lift(x) for x in sorted(support.deleted, reverse=True))
    if holes:
        closure = _orbit_closure(a, gens, holes, k_max)
        if deleted:
            if set(gens) <= set(deleted):
                notes.append("Q_A generators are lifts of deleted monomials")
            else:
                notes.append("some Q_A generators are not lifts of deleted monomials")
        top = holes.get(k_max, ())
        if not top:
            notes.append(f"Q_A finite up to degree {k_max}; dimension-0 submodule suspected")
        if closure != {h for v in holes.values() for h in v}:
            notes.append("internal: generator closure does not reproduce the hole set")
    if holes.get(1) and support is not None and not support.degenerate:
        notes.append("degree-1 hole in a non-degenerate support")
    return SaturationReport(
        k_max=k_max,
        holes=holes,
        qa_generators=gens,
        lattice_full=lattice.is_full,
        lattice_index=lattice.index,
        lattice_rank=lattice.rank,
        verdicts=verdicts,
        deleted_lifts=deleted,
        notes=notes,
    )


def degree_one_extra_points(a: SupportMatrix) -> set[Exponent]:
    """Lattice points of conv(F-part columns) that are not F-part columns."""
    f = [c[1:] for c in a.f_columns]
    if not f:
        return set()
    pts = lattice_points(f, 1)
    return pts - set(f)


def degree_one_completeness(a: SupportMatrix) -> bool:
    return not degree_one_extra_points(a)
