"""GKZ data attached to a support matrix: Euler operators and kernel binomials.

Everything here is declarative output for an external computer algebra
system. The binomials come from a Z-basis of ker(A); they generate the
lattice ideal only up to saturation, not necessarily the toric ideal I_A.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .lattice import integer_kernel
from .semigroup import SupportMatrix

__all__ = [
    "EulerOperator",
    "Binomial",
    "euler_operators",
    "lattice_kernel_binomials",
    "gkz_document",
    "format_operators",
    "BINOMIAL_CAVEAT",
]

BINOMIAL_CAVEAT = (
    "binomials come from a basis of the integer kernel of A; they generate the "
    "lattice ideal after saturation, not necessarily the toric ideal I_A itself"
)


@dataclass(frozen=True)
class EulerOperator:
    """The operator sum_j coeffs[j] * y_j * d_j."""

    row: int
    coeffs: tuple[int, ...]

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            mono = f"y{j}*d{j}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return f"E_{self.row} = " + (" + ".join(terms) if terms else "0")


@dataclass(frozen=True)
class Binomial:
    """d^u - d^v with A u = A v and disjoint supports."""

    u: tuple[int, ...]
    v: tuple[int, ...]

    def __str__(self) -> str:
        def mono(w):
            parts = [f"d{j}" if e == 1 else f"d{j}^{e}" for j, e in enumerate(w, start=1) if e]
            return "*".join(parts) or "1"

        return f"{mono(self.u)} - {mono(self.v)}"


def euler_operators(a: SupportMatrix) -> list[EulerOperator]:
    return [EulerOperator(i, tuple(row)) for i, row in enumerate(a.rows)]


def _apply(a: SupportMatrix, w) -> tuple[int, ...]:
    return tuple(sum(c * x for c, x in zip(row, w)) for row in a.rows)


def lattice_kernel_binomials(a: SupportMatrix) -> list[Binomial]:
    out = []
    for k in integer_kernel(a.columns):
        u = tuple(max(x, 0) for x in k)
        v = tuple(max(-x, 0) for x in k)
        if _apply(a, u) != _apply(a, v):
            raise AssertionError(f"kernel vector {k} fails A u = A v")
        out.append(Binomial(u, v))
    return out


def gkz_document(a: SupportMatrix) -> dict:
    return {
        "matrix": a.rows,
        "euler_operators": [{"row": e.row, "coeffs": list(e.coeffs)} for e in euler_operators(a)],
        "binomials": [{"u": list(b.u), "v": list(b.v)} for b in lattice_kernel_binomials(a)],
        "beta": "symbolic",
    }


def format_operators(a: SupportMatrix) -> str:
    lines = [str(e) for e in euler_operators(a)]
    lines += [f"box: {b}" for b in lattice_kernel_binomials(a)]
    lines.append(f"note: {BINOMIAL_CAVEAT}")
    return "\n".join(lines)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
