"""Extremality test via an oversampled finite restriction.

For a continuous minimal piecewise linear function with breakpoints in
(1/q)Z, extremality is equivalent to the triviality of the space of
perturbations that vanish at 0 and f and are additive wherever the function
is; sampling that space on the grid (1/(mq))Z with m >= 3 loses nothing.
The additive grid pairs are read off the additive faces of the complex
(never by scanning all (mq)^2 pairs) and handed to the run-compressed
solver; a nontrivial solution is turned into a certificate consisting of an
interpolated perturbation and an exact ε with both endpoints minimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, lcm
from typing import List, Optional, Sequence, Tuple

from .complex2d import DeltaFace, additivity_report
from .minimality import minimality_test, with_f_breakpoint
from .pwl import PwlPeriodic, affine_combine, pwl_from_values
from .rational import RatMatrix, rref
from .solver import Run, perturbation_space


@dataclass(frozen=True)
class PerturbationBasis:
    grid_n: int
    f_index: int
    vectors: Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class PerturbationCertificate:
    perturbation: PwlPeriodic
    epsilon: Fraction
    pi_plus: PwlPeriodic
    pi_minus: PwlPeriodic


@dataclass(frozen=True)
class ExtremalityVerdict:
    extreme: bool
    oversampling: int
    grid_n: int
    basis_dimension: int
    covered_intervals: Tuple[Tuple[Fraction, Fraction], ...]
    certificate: Optional[PerturbationCertificate] = None


def _additive_face_runs(faces: Sequence[DeltaFace], n: int) -> List[Run]:
    """Unit-step runs covering every grid pair inside the additive faces.

    Face vertices lie on (1/q)Z and q | n, so all scaled coordinates are
    integers and two-dimensional faces decompose exactly into grid rows.
    """
    runs: List[Run] = []
    for face in faces:
        if face.dim == 0:
            (x, y), = face.vertices
            runs.append(("h", int(y * n), int(x * n), int(x * n)))
        elif face.dim == 1:
            (x0, y0), (x1, y1) = face.vertices
            if y0 == y1:
                runs.append(("h", int(y0 * n), int(x0 * n), int(x1 * n)))
            elif x0 == x1:
                runs.append(("v", int(x0 * n), int(min(y0, y1) * n), int(max(y0, y1) * n)))
            else:
                runs.append(("d", int((x0 + y0) * n), int(min(x0, x1) * n), int(max(x0, x1) * n)))
        else:
            (ix0, ix1) = face.interval_x
            (iy0, iy1) = face.interval_y
            (iz0, iz1) = face.interval_z
            for j in range(ceil(iy0 * n), floor(iy1 * n) + 1):
                lo = max(ix0 * n, iz0 * n - j)
                hi = min(ix1 * n, iz1 * n - j)
                lo_i, hi_i = ceil(lo), floor(hi)
                if lo_i <= hi_i:
                    runs.append(("h", j, lo_i, hi_i))
    return sorted(set(runs))


def _grid_check(fn: PwlPeriodic, oversampling: int) -> Tuple[PwlPeriodic, int, int]:
    mv = minimality_test(fn)
    if not mv.minimal:
        raise ValueError(f"extremality test requires a minimal function: {mv.witness}")
    if not fn.is_continuous():
        raise ValueError("extremality test supports continuous functions only")
    if oversampling < 3:
        raise ValueError("oversampling factor must be at least 3")
    fn = with_f_breakpoint(fn)
    q = fn.denominator_lcm()
    return fn, q, oversampling * q


def restriction_additive_pairs(fn: PwlPeriodic, oversampling: int = 3):
    """All additive grid pairs E(π) ∩ ((1/(mq))Z)^2 as fractions in [0,1)."""
    fn, _, n = _grid_check(fn, oversampling)
    report = additivity_report(fn)
    pairs = set()
    for kind, c, lo, hi in _additive_face_runs(report.additive_faces, n):
        for t in range(lo, hi + 1):
            if kind == "h":
                i, j = t, c
            elif kind == "v":
                i, j = c, t
            else:
                i, j = t, c - t
            pairs.add((Fraction(i % n, n), Fraction(j % n, n)))
    return sorted(pairs)


def perturbation_space_basis(fn: PwlPeriodic, oversampling: int = 3) -> PerturbationBasis:
    """Deterministic basis of the additive perturbation space on the grid."""
    fn, _, n = _grid_check(fn, oversampling)
    report = additivity_report(fn)
    runs = _additive_face_runs(report.additive_faces, n)
    f_index = int(fn.f * n)
    basis = perturbation_space(n, f_index, runs)
    return PerturbationBasis(
        grid_n=n, f_index=f_index, vectors=tuple(tuple(v) for v in basis)
    )


def interpolate_perturbation(vector: Sequence[Fraction], grid_n: int, f) -> PwlPeriodic:
    """Continuous interpolant of a grid perturbation vector."""
    pts = [(Fraction(i, grid_n), Fraction(v)) for i, v in enumerate(vector)]
    return pwl_from_values(Fraction(f), pts).canonicalize()


def epsilon_ratio_test(fn: PwlPeriodic, perturbation: PwlPeriodic) -> Fraction:
    """Largest ε with Δ(fn ± ε·perturbation) >= 0 wherever Δ(perturbation) ≠ 0.

    Both functions are sampled on their common refinement grid, where the
    vertices of the refined complex live.  Raises if the perturbation is
    identically zero or is non-additive at a tight pair of fn.
    """
    n = lcm(fn.denominator_lcm(), perturbation.denominator_lcm())
    v = [fn(Fraction(i, n)) for i in range(n)]
    b = [perturbation(Fraction(i, n)) for i in range(n)]
    dv = lcm(*(x.denominator for x in v))
    db = lcm(*(x.denominator for x in b))
    iv = [int(x * dv) for x in v]
    ib = [int(x * db) for x in b]
    if all(x == 0 for x in ib):
        raise ValueError("perturbation is identically zero")
    best: Optional[Fraction] = None
    for i in range(n):
        vi, bi = iv[i], ib[i]
        for j in range(i, n):
            dbar = bi + ib[j] - ib[(i + j) % n]
            if dbar == 0:
                continue
            slack = vi + iv[j] - iv[(i + j) % n]
            if slack <= 0:
                raise ValueError(
                    "perturbation is non-additive at a tight pair of the function"
                )
            ratio = Fraction(slack, dv) / Fraction(abs(dbar), db)
            if best is None or ratio < best:
                best = ratio
    if best is None:
        raise ValueError("perturbation has no non-additive pair; ratio is unbounded")
    return best


def extremality_test(fn: PwlPeriodic, oversampling: int = 3) -> ExtremalityVerdict:
    """Decide extremality; non-extreme functions come with a certificate."""
    fn_b, _, n = _grid_check(fn, oversampling)
    report = additivity_report(fn_b)
    runs = _additive_face_runs(report.additive_faces, n)
    f_index = int(fn_b.f * n)
    basis = perturbation_space(n, f_index, runs)
    if not basis:
        return ExtremalityVerdict(
            extreme=True,
            oversampling=oversampling,
            grid_n=n,
            basis_dimension=0,
            covered_intervals=report.covered_intervals,
        )
    reduced, _ = rref(RatMatrix(basis))
    bar = interpolate_perturbation(reduced[0], n, fn_b.f)
    eps = epsilon_ratio_test(fn_b, bar)
    for _ in range(64):
        pi_plus = affine_combine(1, fn_b, eps, bar)
        pi_minus = affine_combine(1, fn_b, -eps, bar)
        if minimality_test(pi_plus).minimal and minimality_test(pi_minus).minimal:
            # Normalize so the certified interval is fn ± 1 * perturbation;
            # the admissible magnitude is absorbed into the perturbation.
            scaled_bar = affine_combine(eps, bar, 0, bar)
            cert = PerturbationCertificate(
                perturbation=scaled_bar, epsilon=Fraction(1), pi_plus=pi_plus, pi_minus=pi_minus
            )
            return ExtremalityVerdict(
                extreme=False,
                oversampling=oversampling,
                grid_n=n,
                basis_dimension=len(basis),
                covered_intervals=report.covered_intervals,
                certificate=cert,
            )
        eps /= 2
    raise RuntimeError("could not validate a perturbation certificate")


def facetness_test(fn: PwlPeriodic, oversampling: int = 3) -> ExtremalityVerdict:
    """Facetness coincides with extremality for continuous rational
    piecewise linear minimal functions; the verdict is shared."""
    return extremality_test(fn, oversampling)
