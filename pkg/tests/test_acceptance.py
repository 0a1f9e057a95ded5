"""End-to-end acceptance checks, one test (one pass/fail line) per criterion.

All comparisons are exact rational equalities; the only tolerances are the
wall-clock budgets stated inline.
"""

import shutil
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from groupcut import (
    delta_vertices,
    enumerate_faces,
    extremality_test,
    face_count_check,
    finite_extremality_test,
    gmic,
    interpolate_to_infinite_group,
    make_pwl,
    minimality_grid_oracle,
    minimality_test,
    pwl_from_values,
    restrict_to_finite_group,
    slope_report,
    sup_norm_distance,
    affine_combine,
)

F = Fraction


def _report(n, message):
    print(f"criterion {n}: PASS - {message}")


def negative_runs(fn):
    slopes = fn.canonicalize().slopes
    return sum(
        1 for i, s in enumerate(slopes) if s < 0 and (i == 0 or slopes[i - 1] >= 0)
    )


def positive_segments(fn):
    """Maximal intervals of constant positive slope, as (a, b) pairs."""
    fn = fn.canonicalize()
    bk = list(fn.breakpoints) + [Fraction(1)]
    out = []
    for i, s in enumerate(fn.slopes):
        if s > 0:
            if out and out[-1][1] == bk[i]:
                out[-1] = (out[-1][0], bk[i + 1])
            else:
                out.append((bk[i], bk[i + 1]))
    return out


def test_criterion_01_basic_cut_is_minimal_and_extreme(gmic45):
    start = time.monotonic()
    assert minimality_test(gmic45).minimal
    assert extremality_test(gmic45).extreme
    assert len(slope_report(gmic45).distinct_slopes) == 2
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    _report(1, f"gmic(4/5) minimal, extreme, 2 slopes in {elapsed:.3f}s")


def test_criterion_02_two_slope_staircase_suite(psi45_stages):
    f = F(4, 5)
    eps = [f * F(1, 4) ** i for i in range(1, 5)]
    start = time.monotonic()
    for n, stage in enumerate(psi45_stages):
        assert minimality_test(stage).minimal
        assert len(slope_report(stage).distinct_slopes) == 2
        assert negative_runs(stage) == 2**n
        assert extremality_test(stage).extreme
    for n in range(4):
        # The bump half-height at each replaced midpoint is exactly
        # eps_{n+1}/(2(1-f)); the sup-norm gap also picks up the slope of
        # the old rising segment because the peak sits eps/2 left of the
        # midpoint, giving (eps_{n+1}/2) * (s_n + 1/(1-f)) exactly.
        s_n = max(psi45_stages[n].canonicalize().slopes)
        gap = sup_norm_distance(psi45_stages[n + 1], psi45_stages[n])
        assert gap == eps[n] / 2 * (s_n + 1 / (1 - f))
        for a, b in positive_segments(psi45_stages[n]):
            peak = psi45_stages[n + 1]((a + b - eps[n]) / 2)
            assert peak == psi45_stages[n]((a + b) / 2) + eps[n] / (2 * (1 - f))
    elapsed = time.monotonic() - start
    assert elapsed < 120.0
    _report(2, f"psi_0..psi_4 minimal, extreme, 2 slopes, 2^n bumps in {elapsed:.1f}s")


def test_criterion_03_certificate_for_non_extreme_midpoint(combo):
    start = time.monotonic()
    verdict = extremality_test(combo)
    assert not verdict.extreme
    cert = verdict.certificate
    assert cert is not None
    zero = affine_combine(0, combo, 0, combo)
    assert cert.perturbation != zero
    assert cert.epsilon >= 1
    assert minimality_test(cert.pi_plus).minimal
    assert minimality_test(cert.pi_minus).minimal
    assert affine_combine(F(1, 2), cert.pi_plus, F(1, 2), cert.pi_minus) == combo
    elapsed = time.monotonic() - start
    assert elapsed < 30.0
    _report(3, f"midpoint of gmic and psi_1 certified non-extreme, eps={cert.epsilon}, {elapsed:.1f}s")


def test_criterion_04_oversampling_invariance(gmic45, psi45_stages, combo, psm15):
    suite = [gmic45, psi45_stages[0], psi45_stages[1], psi45_stages[2], psi45_stages[3], psm15, combo]
    for fn in suite:
        verdicts = [extremality_test(fn, oversampling=m).extreme for m in (3, 4, 5)]
        assert len(set(verdicts)) == 1
    _report(4, "extremality verdicts agree for oversampling factors 3, 4, 5")


def test_criterion_05_projected_merge_instance(psm15):
    start = time.monotonic()
    assert psm15.f == F(2, 5)
    assert minimality_test(psm15).minimal
    assert len(slope_report(psm15).distinct_slopes) == 2
    assert extremality_test(psm15).extreme
    elapsed = time.monotonic() - start
    assert elapsed < 30.0
    _report(5, f"projected merge of gmic(1/5), n=2: f'=2/5, minimal, extreme, 2 slopes, {elapsed:.1f}s")


def test_criterion_06_finite_restriction_bridge(gmic45, psi45_stages, psm15):
    extreme_members = [gmic45, psi45_stages[1], psm15]
    for fn in extreme_members:
        q = fn.denominator_lcm()
        g = restrict_to_finite_group(fn, q)
        assert finite_extremality_test(g).extreme
        assert interpolate_to_infinite_group(g) == fn
    _report(6, "restrictions of extreme members are finite-extreme and interpolate back")


def test_criterion_07_vertex_test_matches_grid_oracle(gmic45, psi45_stages, psm15, combo):
    members = [gmic45, psi45_stages[1], psi45_stages[2], psi45_stages[3], psm15, combo]
    # Discontinuous fixtures where oracle agreement holds at this resolution.
    members.append(make_pwl(F(4, 5), [0], [(F(5, 4), 0, 0)]))
    members.append(make_pwl(F(1, 2), [0, F(1, 2)], [(1, 0, 0), (1, 1, 0)]))
    for fn in members:
        assert fn.denominator_lcm() <= 320
        start = time.monotonic()
        assert minimality_test(fn).minimal == minimality_grid_oracle(fn, refine=3).minimal
        assert time.monotonic() - start < 60.0
    _report(7, f"vertex test agrees with the (1/(3q))Z grid oracle on {len(members)} functions")


def test_criterion_08_complex_face_counts():
    # q = 1: breakpoints {0} alone; 2 two-faces cut out by x + y = 1.
    trivial = make_pwl(F(1, 2), [0], [(0, 0, 0)])
    assert sum(1 for f in enumerate_faces(trivial) if f.dim == 2) == 2
    assert all(u % 1 == 0 and v % 1 == 0 for u, v in delta_vertices(trivial))
    for q, f in [(5, F(2, 5)), (7, F(3, 7)), (10, F(3, 10))]:
        fn = pwl_from_values(f, [(F(i, q), F(i % 2)) for i in range(q)])
        check = face_count_check(fn)
        assert check.ok and check.two_faces == 2 * q * q
        for u, v in delta_vertices(fn):
            assert (u * q).denominator == 1 and (v * q).denominator == 1
    _report(8, "complexes over (1/q)Z have 2q^2 two-faces and on-grid vertices for q in {1,5,7,10}")


def test_criterion_09_staircase_convergence_envelope(psi45_stages):
    f = F(4, 5)
    eps = [f * F(1, 4) ** i for i in range(1, 5)]
    # Per-stage bump half-height, realized exactly at each replaced midpoint.
    half_heights = [e / (2 * (1 - f)) for e in eps]
    assert half_heights == [F(1, 2), F(1, 8), F(1, 32), F(1, 128)]
    # The sup-norm envelope adds the old rising slope's contribution; it is
    # strictly decreasing, so the stage values form a Cauchy sequence.
    envelope = [
        eps[n] / 2 * (max(psi45_stages[n].canonicalize().slopes) + 1 / (1 - f))
        for n in range(4)
    ]
    assert envelope == [F(5, 8), F(5, 24), F(1, 16), F(5, 288)]
    assert all(a > b for a, b in zip(envelope, envelope[1:]))
    test_points = [F(1, 3), F(1, 7), F(2, 7), F(3, 11)]
    for n in range(4):
        for x in test_points:
            gap = abs(psi45_stages[n + 1](x) - psi45_stages[n](x))
            assert gap <= envelope[n]
        assert minimality_test(psi45_stages[n]).minimal
    assert minimality_test(psi45_stages[4]).minimal
    _report(9, "stage gaps stay inside the strictly decreasing sup-norm envelope")


def test_criterion_10_cli_outputs_are_byte_deterministic(tmp_path):
    exe = shutil.which("groupcut")
    base = [exe] if exe else [sys.executable, "-m", "groupcut.cli"]

    def run(*args):
        proc = subprocess.run(base + list(args), capture_output=True, check=True)
        return proc.stdout

    fn_path = tmp_path / "fn.json"
    fn_path.write_bytes(run("construct", "psi_n", "--f", "4/5", "--n", "2"))
    commands = [
        ("construct", "psi_n", "--f", "4/5", "--n", "2"),
        ("test", "minimality", str(fn_path)),
        ("test", "extremality", str(fn_path)),
        ("restrict", str(fn_path), "--q", "40", "--m", "3"),
        ("plot", "diagram", str(fn_path)),
        ("list",),
    ]
    for cmd in commands:
        assert run(*cmd) == run(*cmd), cmd
    _report(10, f"{len(commands)} CLI commands reproduced byte-identical output")
