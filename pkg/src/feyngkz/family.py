"""Exhaustive small-graph family and the invariant suites run over it.

The family is every s1I multigraph with at most ``max_edges`` edges, up to
isomorphism, combined with every mass assignment and every external vertex
set of size at least two. Work is split by graph; with more than one worker
the graphs are handed to a process pool. Results are sorted before they are
reported, so the report does not depend on scheduling.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations, product

from .graph import (
    FeynmanGraph,
    _DSU,
    bits,
    enumerate_forests,
    massive_path_exists,
    spanning_tree_count_oracle,
    validate_s1i,
)
from .matroids import (
    cographic_matroid,
    check_exchange_axiom,
    feynman_matroid,
    graphic_matroid,
    is_quotient,
    massive_truncation_matroid,
    matroid_polytope_edge_directions,
    momentous_matroid,
    quotient_by_subset,
    two_forest_matroid,
)
from .polytope import idp_check, minkowski_lattice_check
from .semigroup import (
    build_support_matrix,
    check_theorem_conditions,
    degree_one_completeness,
    saturation_check,
)
from .symanzik import f0_support, gm_support, momentous_2forests, u_support

__all__ = [
    "FamilyGraph",
    "Instance",
    "SuiteResult",
    "FamilyReport",
    "SUITES",
    "generate_s1i_multigraphs",
    "family_instances",
    "verify_family",
    "worker_count",
    "clear_caches",
]

SAT_KMAX = 4
IDP_KMAX = 3

SUITES = (
    "forest_oracle",
    "forest_invariants",
    "ggms_graphic",
    "idp_cographic",
    "quotient_by_subset",
    "symanzik_invariants",
    "exchange_momentous",
    "exchange_massive_truncation",
    "exchange_feynman",
    "quotient_momentous",
    "quotient_massive_truncation",
    "truncation_is_subset_quotient",
    "ggms_two_forest_matroids",
    "thm_when",
    "massive_path_implies_bases",
    "idp_momentous_dual",
    "howard_massless",
    "idp_union_massless",
    "degree_one",
    "saturation_theorems",
)


@dataclass(frozen=True)
class FamilyGraph:
    name: str
    n_vertices: int
    pairs: tuple[tuple[int, int], ...]

    def graph(self, massive=None, external=()) -> FeynmanGraph:
        vs = [f"v{i + 1}" for i in range(self.n_vertices)]
        ends = [(vs[a], vs[b]) for a, b in self.pairs]
        return FeynmanGraph.from_edges(ends, massive=massive, external=external, vertices=vs)

    @property
    def description(self) -> str:
        return " ".join(f"{a + 1}{b + 1}" for a, b in self.pairs)


@dataclass(frozen=True)
class Instance:
    family_graph: FamilyGraph
    massive: tuple[bool, ...]
    external: tuple[str, ...]

    @property
    def name(self) -> str:
        m = "".join("1" if x else "0" for x in self.massive)
        return f"{self.family_graph.name}|m={m}|ext={','.join(self.external)}"

    def graph(self) -> FeynmanGraph:
        return self.family_graph.graph(self.massive, self.external)


def _canonical(n: int, pairs) -> tuple[tuple[int, int], ...]:
    best = None
    for perm in permutations(range(n)):
        form = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in pairs))
        if best is None or form < best:
            best = form
    return best


def generate_s1i_multigraphs(max_edges: int) -> list[FamilyGraph]:
    """s1I loopless multigraphs with at most ``max_edges`` edges, up to isomorphism.

    Ordered by edge count, then vertex count, then canonical edge list.
    """
    found: set[tuple[int, tuple]] = set()
    for m in range(1, max_edges + 1):
        # an s1I graph on n >= 3 vertices is 2-connected, so m >= n
        for n in range(2, max(m, 2) + 1):
            all_pairs = list(combinations(range(n), 2))
            for pairs in combinations_with_replacement(all_pairs, m):
                if len({v for p in pairs for v in p}) != n:
                    continue
                fg = FamilyGraph("", n, pairs)
                if not validate_s1i(fg.graph()).ok:
                    continue
                found.add((n, _canonical(n, pairs)))
    ordered = sorted(found, key=lambda t: (len(t[1]), t[0], t[1]))
    return [FamilyGraph(f"G{i + 1:02d}", n, pairs) for i, (n, pairs) in enumerate(ordered)]


def family_instances(fg: FamilyGraph) -> list[Instance]:
    vs = [f"v{i + 1}" for i in range(fg.n_vertices)]
    out = []
    for massive in product((False, True), repeat=len(fg.pairs)):
        for r in range(2, len(vs) + 1):
            for ext in combinations(vs, r):
                out.append(Instance(fg, massive, ext))
    return out


# -- individual checks ----------------------------------------------------


def _acyclic_subsets_by_components(g: FeynmanGraph) -> dict[int, int]:
    n = len(g.vertices)
    counts: dict[int, int] = {}
    for mask in range(1 << g.n_edges):
        dsu = _DSU(n)
        if all(dsu.union(*g.endpoints[j]) for j in bits(mask)):
            comp = n - mask.bit_count()
            counts[comp] = counts.get(comp, 0) + 1
    return counts


def _check_forest_invariants(g: FeynmanGraph) -> bool:
    brute = _acyclic_subsets_by_components(g)
    for i in range(1, len(g.vertices) + 1):
        forests = enumerate_forests(g, i)
        if len(forests) != brute.get(i, 0):
            return False
        if any(len(f.components) != i for f in forests):
            return False
        if [f.mask for f in forests] != sorted((f.mask for f in forests), key=lambda x: bits(x)):
            return False
    return True


def _indicator_points(m) -> list[tuple[int, ...]]:
    return [tuple((b >> k) & 1 for k in range(m.size)) for b in sorted(m.base_masks)]


def _check_subset_quotients(g: FeynmanGraph) -> bool:
    m = graphic_matroid(g)
    for ep in range(1, 1 << g.n_edges):
        if m.rank_of(ep) == 0:
            continue
        q = quotient_by_subset(m, ep)
        if not check_exchange_axiom(q).ok or not is_quotient(q, m).holds:
            return False
    return True


def _canonical_columns(a) -> tuple:
    """Column multiset of A up to permutations of the exponent coordinates."""
    d = a.shape[0] - 1
    best = None
    for perm in permutations(range(d)):
        form = tuple(sorted((c[0], *(c[1 + p] for p in perm)) for c in a.columns))
        if best is None or form < best:
            best = form
    return best


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    subject: str
    status: str  # "pass", "fail" or "skip"
    detail: str = ""


class _Runner:
    def __init__(self):
        self.results: list[SuiteResult] = []
        self.sat_cache: dict[tuple, int] = {}
        self.idp_cache: dict[frozenset, bool] = {}

    def record(self, suite, subject, ok, detail=""):
        self.results.append(SuiteResult(suite, subject, "pass" if ok else "fail", "" if ok else detail))

    def skip(self, suite, subject, why):
        self.results.append(SuiteResult(suite, subject, "skip", why))

    def graph_suites(self, fg: FamilyGraph):
        g = fg.graph()
        name = fg.name
        trees = len(enumerate_forests(g, 1))
        oracle = spanning_tree_count_oracle(g)
        self.record("forest_oracle", name, trees == oracle, f"{trees} trees enumerated, determinant {oracle}")
        self.record("forest_invariants", name, _check_forest_invariants(g))
        rep = matroid_polytope_edge_directions(graphic_matroid(g))
        self.record("ggms_graphic", name, rep.ok, f"bad edges {len(rep.bad_edges)}")
        self.record("idp_cographic", name, idp_check(_indicator_points(cographic_matroid(g)), IDP_KMAX))
        self.record("quotient_by_subset", name, _check_subset_quotients(g))

    def instance_suites(self, inst: Instance):
        g = inst.graph()
        name = inst.name
        s = gm_support(g)
        loops = g.n_edges - len(g.vertices) + 1
        usum = {sum(v) for v in s.u_part}
        fsum = {sum(v) for v in s.f_part}
        self.record("symanzik_invariants", name, usum == {loops} and fsum == {loops + 1})

        if not momentous_2forests(g):
            for suite in SUITES[6:]:
                self.skip(suite, name, "no momentous 2-forest")
            return
        massive = g.massive_mask != 0
        m1 = graphic_matroid(g)
        mom = momentous_matroid(g)
        feyn = feynman_matroid(g)
        self.record("exchange_momentous", name, check_exchange_axiom(mom).ok)
        self.record("exchange_feynman", name, check_exchange_axiom(feyn).ok)
        self.record("quotient_momentous", name, is_quotient(mom, m1).holds)
        mats = [mom, feyn]
        if massive:
            mt = massive_truncation_matroid(g)
            mats.append(mt)
            self.record("exchange_massive_truncation", name, check_exchange_axiom(mt).ok)
            self.record("quotient_massive_truncation", name, is_quotient(mt, m1).holds)
            self.record(
                "truncation_is_subset_quotient",
                name,
                quotient_by_subset(m1, g.massive_mask).base_masks == mt.base_masks,
            )
        else:
            for suite in ("exchange_massive_truncation", "quotient_massive_truncation", "truncation_is_subset_quotient"):
                self.skip(suite, name, "no massive edge")
        self.record(
            "ggms_two_forest_matroids", name, all(matroid_polytope_edge_directions(x).ok for x in mats)
        )

        by_path = all(massive_path_exists(g, v) for v in g.vertices)
        by_bases = feyn.base_masks == two_forest_matroid(g).base_masks
        self.record("thm_when", name, by_path == by_bases, f"path={by_path} bases={by_bases}")
        self.record("massive_path_implies_bases", name, by_bases or not by_path)

        key = mom.dual().base_masks
        if key not in self.idp_cache:
            self.idp_cache[key] = idp_check(_indicator_points(mom.dual()), IDP_KMAX)
        self.record("idp_momentous_dual", name, self.idp_cache[key])

        if not massive:
            u = sorted(u_support(g))
            f0 = sorted(f0_support(g))
            self.record("howard_massless", name, minkowski_lattice_check(u, f0))
            self.record("idp_union_massless", name, idp_check(u + f0, IDP_KMAX))
        else:
            self.skip("howard_massless", name, "massive")
            self.skip("idp_union_massless", name, "massive")

        a = build_support_matrix(s)
        self.record("degree_one", name, degree_one_completeness(a))

        verdicts = check_theorem_conditions(g, s)
        if verdicts.saturated:
            key = _canonical_columns(a)
            if key not in self.sat_cache:
                self.sat_cache[key] = saturation_check(a, SAT_KMAX).hole_count
            holes = self.sat_cache[key]
            self.record("saturation_theorems", name, holes == 0, f"{holes} holes, {verdicts.verdict}")
        else:
            self.skip("saturation_theorems", name, verdicts.verdict)


def _run_graph(fg: FamilyGraph) -> list[SuiteResult]:
    r = _Runner()
    r.graph_suites(fg)
    for inst in family_instances(fg):
        r.instance_suites(inst)
    return r.results


def worker_count(default: int | None = None) -> int:
    raw = os.environ.get("SYMANZIK_WORKERS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"SYMANZIK_WORKERS must be an integer, got {raw!r}") from None
        if n < 1:
            raise ValueError("SYMANZIK_WORKERS must be at least 1")
        return n
    return default if default is not None else (os.cpu_count() or 1)


@dataclass
class FamilyReport:
    max_edges: int
    graphs: list[FamilyGraph]
    n_instances: int
    results: list[SuiteResult] = field(default_factory=list)

    def counts(self) -> dict[str, dict[str, int]]:
        out = {s: {"pass": 0, "fail": 0, "skip": 0} for s in SUITES}
        for r in self.results:
            out[r.suite][r.status] += 1
        return out

    @property
    def failures(self) -> list[SuiteResult]:
        return [r for r in self.results if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def admitted(self) -> int:
        return sum(1 for r in self.results if r.suite == "exchange_momentous" and r.status != "skip")

    def to_dict(self) -> dict:
        return {
            "max_edges": self.max_edges,
            "graphs": [{"name": g.name, "vertices": g.n_vertices, "edges": g.description} for g in self.graphs],
            "instances": self.n_instances,
            "admitted": self.admitted(),
            "suites": self.counts(),
            "failures": [{"suite": r.suite, "subject": r.subject, "detail": r.detail} for r in self.failures],
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [
            f"family verification, at most {self.max_edges} edges",
            f"graphs: {len(self.graphs)}  instances: {self.n_instances}  "
            f"with a momentous 2-forest: {self.admitted()}",
        ]
        for g in self.graphs:
            lines.append(f"  {g.name}: {g.n_vertices} vertices, edges {g.description}")
        lines.append(f"{'suite':<32}{'pass':>7}{'fail':>7}{'skip':>7}")
        for suite, c in self.counts().items():
            lines.append(f"{suite:<32}{c['pass']:>7}{c['fail']:>7}{c['skip']:>7}")
        for r in self.failures:
            lines.append(f"FAIL {r.suite} {r.subject} {r.detail}".rstrip())
        lines.append("result: " + ("all checks passed" if self.ok else f"{len(self.failures)} failures"))
        return "\n".join(lines) + "\n"


def verify_family(max_edges: int = 5, workers: int | None = None) -> FamilyReport:
    if max_edges < 1:
        raise ValueError("max_edges must be at least 1")
    graphs = generate_s1i_multigraphs(max_edges)
    n_inst = sum(len(family_instances(fg)) for fg in graphs)
    if workers is None:
        workers = worker_count(default=1)
    if workers > 1 and len(graphs) > 1:
        # largest graphs first so the pool stays busy
        order = sorted(graphs, key=lambda fg: (-len(fg.pairs), -fg.n_vertices, fg.name))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_graph, order))
    else:
        chunks = [_run_graph(fg) for fg in graphs]
    results = sorted(
        (r for chunk in chunks for r in chunk),
        key=lambda r: (SUITES.index(r.suite), r.subject, r.status, r.detail),
    )
    return FamilyReport(max_edges, graphs, n_inst, results)


def clear_caches() -> None:
    """Drop every memoisation cache, so a following run recomputes from scratch."""
    from . import graph, matroids, symanzik

    for mod in (graph, symanzik, matroids):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()
