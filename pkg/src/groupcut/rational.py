"""Exact rational scalars and small dense rational matrices.

Rationals are :class:`fractions.Fraction` throughout the package; the stdlib
type already guarantees the canonical-form invariants we rely on (reduced
terms, positive denominator, exact field arithmetic, ``p/q`` string form).
This module adds the strict parser used by the JSON layer and a deterministic
reduced-row-echelon null-space routine for the perturbation machinery.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence

Rat = Fraction

_RAT_RE = re.compile(r"^-?\d+(/\d+)?$")

# Dense elimination beyond this many entries would exhaust memory long before
# it finished; fail with a clear message instead.
_MAX_ENTRIES = 40_000_000
_MAX_COLS = 20_000


def rat_parse(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a canonical rational.

    Only the integer and slash forms are accepted; decimals, whitespace and
    exponents are rejected so that serialized files round-trip exactly.
    """
    if not isinstance(text, str) or not _RAT_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den == "":
        return Fraction(int(num))
    if int(den) == 0:
        raise ZeroDivisionError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den))


def rat_str(value: Fraction) -> str:
    """Serialize a rational as ``p/q`` (or ``p`` for integers)."""
    return str(Fraction(value))


class RatMatrix:
    """Dense matrix of rationals stored row-major as lists of Fractions."""

    def __init__(self, rows: Sequence[Sequence[Fraction]], n_cols: int | None = None):
        self.rows: List[List[Fraction]] = [[Fraction(v) for v in row] for row in rows]
        if self.rows:
            width = len(self.rows[0])
            for row in self.rows:
                if len(row) != width:
                    raise ValueError("inconsistent row width")
            if n_cols is not None and n_cols != width:
                raise ValueError("n_cols disagrees with row width")
            self.n_cols = width
        else:
            if n_cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.n_cols = n_cols
        if self.n_cols > _MAX_COLS or len(self.rows) * self.n_cols > _MAX_ENTRIES:
            raise ValueError(
                f"matrix of {len(self.rows)}x{self.n_cols} exceeds the dense-size bound"
            )

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def matvec(self, vec: Sequence[Fraction]) -> List[Fraction]:
        if len(vec) != self.n_cols:
            raise ValueError("dimension mismatch in matvec")
        return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self.rows]


def rref(matrix: RatMatrix) -> tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices).

    Pivot selection is the first row with a nonzero entry in the scan column,
    which makes the result (and everything derived from it) deterministic.
    """
    m = [row[:] for row in matrix.rows]
    n_rows, n_cols = len(m), matrix.n_cols
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(matrix: RatMatrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: RatMatrix) -> List[List[Fraction]]:
    """Deterministic null-space basis.

    Free variables are taken in ascending column order and set to 1 one at a
    time; pivot variables are back-substituted from the RREF.  A matrix with
    no rows yields the standard basis.
    """
    m, pivots = rref(matrix)
    n_cols = matrix.n_cols
    pivot_set = set(pivots)
    free_cols = [c for c in range(n_cols) if c not in pivot_set]
    basis: List[List[Fraction]] = []
    for fc in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis
