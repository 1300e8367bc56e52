"""Supports of the Symanzik polynomials U, F0, U*Sigma_m and of G_m = U + F.

Coefficients are never computed. Momenta are taken generic, so a 2-forest
carries a nonzero momentum coefficient exactly when it splits the external
vertices. Vanishing coefficients are modelled by explicit monomial deletions
(``Degeneracy``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .errors import DegeneracyError
from .graph import FeynmanGraph, Forest, bits, enumerate_forests, require_s1i

Exponent = tuple[int, ...]

__all__ = [
    "Exponent",
    "Degeneracy",
    "ForestClass",
    "GmSupport",
    "indicator",
    "lift",
    "u_support",
    "classify_2forest",
    "is_momentous",
    "is_massive_truncation",
    "momentous_2forests",
    "massive_truncation_2forests",
    "f0_support",
    "mass_term_support",
    "generic_f_support",
    "gm_support",
]


def indicator(mask: int, n: int) -> Exponent:
    return tuple((mask >> j) & 1 for j in range(n))


def lift(a: Iterable[int]) -> Exponent:
    return (1, *a)


@dataclass(frozen=True)
class Degeneracy:
    """Monomials of the generic G_m whose coefficient is declared to vanish."""

    deleted_monomials: frozenset[Exponent] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(
            self, "deleted_monomials", frozenset(tuple(int(x) for x in a) for a in self.deleted_monomials)
        )

    def __bool__(self) -> bool:
        return bool(self.deleted_monomials)


NO_DEGENERACY = Degeneracy()


@dataclass(frozen=True)
class ForestClass:
    momentous: bool
    massive_truncation: bool

    @property
    def tags(self) -> tuple[str, ...]:
        tags = ["momentous" if self.momentous else "momentum_free"]
        if self.massive_truncation:
            tags.append("massive_truncation")
        return tuple(tags)


@dataclass(frozen=True)
class GmSupport:
    """Support of G_m split into the U part and the F part.

    ``hypothesis_ok`` is False as soon as a degeneracy is declared or the F
    part is empty (no 2-forest term survives).
    """

    u_part: frozenset[Exponent]
    f_part: frozenset[Exponent]
    hypothesis_ok: bool
    degenerate: bool = False
    deleted: frozenset[Exponent] = frozenset()

    @property
    def all_vectors(self) -> frozenset[Exponent]:
        return self.u_part | self.f_part


def _tree_masks(g: FeynmanGraph) -> list[int]:
    return [f.mask for f in enumerate_forests(g, 1)]


@lru_cache(maxsize=4096)
def u_support(g: FeynmanGraph) -> frozenset[Exponent]:
    """Complements of spanning trees as 0/1 exponent vectors."""
    require_s1i(g)
    n, full = g.n_edges, g.full_mask
    return frozenset(indicator(full & ~t, n) for t in _tree_masks(g))


def _two_forest(g: FeynmanGraph, forest: Forest | int) -> Forest:
    mask = forest.mask if isinstance(forest, Forest) else int(forest)
    for f in enumerate_forests(g, 2):
        if f.mask == mask:
            return f
    raise ValueError(f"edge set {sorted(g.edge_set(mask))} is not a 2-forest")


def is_momentous(g: FeynmanGraph, forest: Forest) -> bool:
    ext = g.external
    return not any(ext <= part for part in forest.components)


def is_massive_truncation(g: FeynmanGraph, forest: Forest) -> bool:
    a, _ = forest.components
    for j in bits(g.massive_mask):
        u, v = g.edges[j].ends
        if (u in a) != (v in a):
            return True
    return False


def classify_2forest(g: FeynmanGraph, forest: Forest | int) -> ForestClass:
    """Momentous: neither component holds every external vertex.
    Massive truncation: some massive edge links the two components."""
    f = _two_forest(g, forest)
    return ForestClass(is_momentous(g, f), is_massive_truncation(g, f))


@lru_cache(maxsize=8192)
def momentous_2forests(g: FeynmanGraph) -> tuple[int, ...]:
    require_s1i(g)
    return tuple(f.mask for f in enumerate_forests(g, 2) if is_momentous(g, f))


@lru_cache(maxsize=8192)
def massive_truncation_2forests(g: FeynmanGraph) -> tuple[int, ...]:
    require_s1i(g)
    return tuple(f.mask for f in enumerate_forests(g, 2) if is_massive_truncation(g, f))


def f0_support(g: FeynmanGraph, d: Degeneracy = NO_DEGENERACY) -> frozenset[Exponent]:
    n, full = g.n_edges, g.full_mask
    vecs = {indicator(full & ~f, n) for f in momentous_2forests(g)}
    return frozenset(vecs - d.deleted_monomials)


@lru_cache(maxsize=8192)
def mass_term_support(g: FeynmanGraph) -> frozenset[Exponent]:
    """Support of U * sum over massive e of x_e (squares appear when e is off the tree)."""
    require_s1i(g)
    n, full = g.n_edges, g.full_mask
    out = set()
    for t in _tree_masks(g):
        base = indicator(full & ~t, n)
        for j in bits(g.massive_mask):
            v = list(base)
            v[j] += 1
            out.add(tuple(v))
    return frozenset(out)


def generic_f_support(g: FeynmanGraph) -> frozenset[Exponent]:
    return mass_term_support(g) | f0_support(g)


def gm_support(g: FeynmanGraph, d: Degeneracy = NO_DEGENERACY) -> GmSupport:
    """Support of G_m under generic coefficients minus the declared deletions.

    Deleting a U monomial is rejected: U has all coefficients equal to one.
    """
    u = u_support(g)
    generic_f = generic_f_support(g)
    for a in sorted(d.deleted_monomials):
        if len(a) != g.n_edges:
            raise DegeneracyError(f"deleted monomial {list(a)} has wrong length (|E| = {g.n_edges})")
        if a in u:
            raise DegeneracyError(f"monomial {list(a)} belongs to U, whose coefficients cannot vanish")
        if a not in generic_f:
            raise DegeneracyError(f"monomial {list(a)} is not in the generic support of G_m")
    f = generic_f - d.deleted_monomials
    return GmSupport(
        u_part=u,
        f_part=frozenset(f),
        hypothesis_ok=bool(f) and not d,
        degenerate=bool(d),
        deleted=d.deleted_monomials,
    )
