"""Minimality test for periodic piecewise linear functions.

A function is minimal when it vanishes at 0, is subadditive, and satisfies
the symmetry condition pi(x) + pi(f - x) = 1.  Subadditivity and symmetry
only need to be checked at the vertices of the two-dimensional complex
(plus one-sided limits along incident faces when the function has jumps),
because the slack Δπ is affine on the relative interior of every face.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Tuple, Union

from .complex2d import (
    DeltaFace,
    delta_pi,
    delta_pi_limit,
    delta_vertices,
    enumerate_faces,
)
from .pwl import AT, LEFT, RIGHT, PwlPeriodic

ORIGIN_VALUE = "originValue"
NEGATIVITY = "negativity"
SYMMETRY = "symmetry"
SUBADDITIVITY = "subadditivity"

Location = Union[Fraction, Tuple[Fraction, Fraction]]


@dataclass(frozen=True)
class MinimalityWitness:
    kind: str
    location: Location
    value: Fraction
    # For limit witnesses, the vertex set of the face along which the
    # violating one-sided limit was taken; None for plain value witnesses.
    face_vertices: Optional[Tuple[Tuple[Fraction, Fraction], ...]] = None


@dataclass(frozen=True)
class MinimalityVerdict:
    minimal: bool
    witness: Optional[MinimalityWitness] = None


def with_f_breakpoint(fn: PwlPeriodic) -> PwlPeriodic:
    """Insert f into the breakpoint list if it is not already present."""
    if fn.f in fn.breakpoints:
        return fn
    bkpts = sorted(set(fn.breakpoints) | {fn.f})
    trips = [tuple(fn.limit(x, s) for s in (LEFT, AT, RIGHT)) for x in bkpts]
    return PwlPeriodic(fn.f, bkpts, trips)


def _on_symmetry_line(fn: PwlPeriodic, u: Fraction, v: Fraction) -> bool:
    return (u + v - fn.f) % 1 == 0


def minimality_test(fn: PwlPeriodic) -> MinimalityVerdict:
    """Decide minimality; on failure return the first witness found.

    Witness kinds are scanned in the fixed priority order originValue,
    negativity, symmetry, subadditivity; within each kind, locations are
    scanned in ascending order, so the verdict is deterministic.
    """
    fn = with_f_breakpoint(fn).canonicalize()
    fn = with_f_breakpoint(fn)

    if fn(0) != 0:
        return MinimalityVerdict(False, MinimalityWitness(ORIGIN_VALUE, Fraction(0), fn(0)))

    for x, (l, v, r) in zip(fn.breakpoints, fn.limits):
        for val in (v, l, r):
            if val < 0:
                return MinimalityVerdict(False, MinimalityWitness(NEGATIVITY, x, val))

    if fn(fn.f) != 1:
        return MinimalityVerdict(False, MinimalityWitness(SYMMETRY, fn.f, fn(fn.f)))

    continuous = fn.is_continuous()
    vertices = delta_vertices(fn)
    faces = None if continuous else enumerate_faces(fn)

    # Symmetry: Δπ must vanish on the line x + y = f (mod 1).
    for u, v in vertices:
        if _on_symmetry_line(fn, u, v):
            slack = delta_pi(fn, u, v)
            if slack != 0:
                return MinimalityVerdict(False, MinimalityWitness(SYMMETRY, (u, v), slack))
    if not continuous:
        for face in faces:
            if face.dim != 1:
                continue
            if not all(_on_symmetry_line(fn, u, v) for u, v in face.vertices):
                continue
            for vert in face.vertices:
                slack = delta_pi_limit(fn, face, vert)
                if slack != 0:
                    return MinimalityVerdict(
                        False,
                        MinimalityWitness(SYMMETRY, vert, slack, face.vertices),
                    )

    # Subadditivity: Δπ >= 0 at every vertex, including one-sided limits
    # along every incident face when there are jumps.
    if continuous:
        for u, v in vertices:
            slack = delta_pi(fn, u, v)
            if slack < 0:
                return MinimalityVerdict(
                    False, MinimalityWitness(SUBADDITIVITY, (u, v), slack)
                )
    else:
        for face in faces:
            for vert in face.vertices:
                slack = delta_pi_limit(fn, face, vert)
                if slack < 0:
                    return MinimalityVerdict(
                        False,
                        MinimalityWitness(SUBADDITIVITY, vert, slack, face.vertices),
                    )

    return MinimalityVerdict(True)


def verify_witness(fn: PwlPeriodic, witness: MinimalityWitness) -> bool:
    """Recompute a witness from scratch and confirm it still violates."""
    fn = with_f_breakpoint(fn)
    if witness.kind == ORIGIN_VALUE:
        return fn(witness.location) == witness.value != 0
    if witness.kind == NEGATIVITY:
        x = witness.location
        return witness.value < 0 and witness.value in (
            fn.limit(x, LEFT),
            fn.limit(x, AT),
            fn.limit(x, RIGHT),
        )
    if witness.kind == SYMMETRY:
        if isinstance(witness.location, tuple):
            u, v = witness.location
            if not _on_symmetry_line(fn, u, v):
                return False
            if witness.face_vertices is None:
                return delta_pi(fn, u, v) == witness.value != 0
            face = _find_face(fn, witness.face_vertices)
            return face is not None and delta_pi_limit(fn, face, (u, v)) == witness.value != 0
        return fn(witness.location) == witness.value != 1
    if witness.kind == SUBADDITIVITY:
        u, v = witness.location
        if witness.face_vertices is None:
            return delta_pi(fn, u, v) == witness.value < 0
        face = _find_face(fn, witness.face_vertices)
        return face is not None and delta_pi_limit(fn, face, (u, v)) == witness.value < 0
    return False


def _find_face(fn: PwlPeriodic, vertices) -> Optional[DeltaFace]:
    for face in enumerate_faces(fn):
        if face.vertices == tuple(vertices):
            return face
    return None


def minimality_grid_oracle(fn: PwlPeriodic, refine: int = 3) -> MinimalityVerdict:
    """Brute-force check of the minimality conditions on ((1/(refine*q))Z)^2.

    Only function *values* on the grid are inspected.  For continuous
    functions with denominator q this is equivalent to the vertex test; it
    exists as an independent cross-check.
    """
    q = fn.denominator_lcm()
    n = refine * q
    vals = [fn(Fraction(i, n)) for i in range(n)]
    denom = lcm(*(v.denominator for v in vals))
    iv = [int(v * denom) for v in vals]
    one = denom

    if iv[0] != 0:
        return MinimalityVerdict(False, MinimalityWitness(ORIGIN_VALUE, Fraction(0), vals[0]))
    for i, v in enumerate(iv):
        if v < 0:
            return MinimalityVerdict(
                False, MinimalityWitness(NEGATIVITY, Fraction(i, n), vals[i])
            )
    f_idx = int(fn.f * n)
    if iv[f_idx] != one:
        return MinimalityVerdict(False, MinimalityWitness(SYMMETRY, fn.f, vals[f_idx]))
    for i in range(n):
        j = (f_idx - i) % n
        if iv[i] + iv[j] != one:
            return MinimalityVerdict(
                False,
                MinimalityWitness(
                    SYMMETRY,
                    (Fraction(i, n), Fraction(j, n)),
                    Fraction(iv[i] + iv[j] - one, denom),
                ),
            )
    for i in range(n):
        vi = iv[i]
        for j in range(i, n):
            if vi + iv[j] < iv[(i + j) % n]:
                return MinimalityVerdict(
                    False,
                    MinimalityWitness(
                        SUBADDITIVITY,
                        (Fraction(i, n), Fraction(j, n)),
                        Fraction(vi + iv[j] - iv[(i + j) % n], denom),
                    ),
                )
    return MinimalityVerdict(True)
