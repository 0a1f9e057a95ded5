"""Exact solver for the space of additive perturbations on a cyclic grid.

The linear system consists of e(0) = 0, e(f) = 0, periodicity, and the
additivity equations e(u) + e(v) = e(u+v) over a (possibly very large) set
of grid pairs.  Assembling one dense row per pair is hopeless at fine grid
resolutions, so the pairs are supplied as maximal unit-step *runs*.  Within
a run, consecutive equations differ by a relation g(a) = g(b) between the
forward differences g(t) = e(t+1) - e(t); those relations are absorbed by
union-find over difference classes, leaving one anchor equation per run.
The reduced system over the class variables is exactly equivalent to the
original one (anchor plus telescoped differences reconstruct every equation
of the run), and it is small enough for exact rational elimination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .rational import RatMatrix, nullspace, rref

# Run encodings: ("h", j, lo, hi) covers pairs (i, j) for lo <= i <= hi;
# ("v", i0, lo, hi) covers (i0, j) for lo <= j <= hi;
# ("d", k0, lo, hi) covers (i, k0 - i) for lo <= i <= hi.
Run = Tuple[str, int, int, int]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def perturbation_space(
    n: int,
    f_index: int,
    runs: Iterable[Run],
    pairs: Iterable[Tuple[int, int]] = (),
) -> List[List[Fraction]]:
    """Basis of grid vectors e (length n) solving the additive system.

    All pair coordinates are grid indices in [0, n]; sums may reach 2n and
    are *not* reduced modulo n here — the periodicity row makes the wrapped
    and unwrapped forms of each equation equivalent.
    """
    uf = _UnionFind(n)
    anchors: List[Tuple[int, int]] = []

    for kind, c, lo, hi in runs:
        if lo > hi:
            continue
        if kind == "h":
            anchors.append((lo, c))
            for i in range(lo, hi):
                uf.union(i % n, (i + c) % n)
        elif kind == "v":
            anchors.append((c, lo))
            for j in range(lo, hi):
                uf.union(j % n, (c + j) % n)
        elif kind == "d":
            anchors.append((lo, c - lo))
            for i in range(lo, hi):
                uf.union(i % n, (c - 1 - i) % n)
        else:
            raise ValueError(f"unknown run kind {kind!r}")
    anchors.extend(pairs)

    roots = sorted({uf.find(t) for t in range(n)})
    class_of_root = {r: idx for idx, r in enumerate(roots)}
    cls = [class_of_root[uf.find(t)] for t in range(n)]
    n_classes = len(roots)

    # Prefix class-count vectors A[k][c] = #{t < k : cls[t mod n] = c} are
    # only materialized at the indices the equations actually mention.
    needed = {0, f_index % n, n}
    for u, v in anchors:
        needed.update((u, v, u + v))
    counts = [0] * n_classes
    prefix = {}
    order = sorted(needed)
    pos = 0
    for t in range(2 * n + 1):
        while pos < len(order) and order[pos] == t:
            prefix[t] = counts[:]
            pos += 1
        if pos == len(order):
            break
        if t < 2 * n:
            counts[cls[t % n]] += 1

    def row_for(u: int, v: int) -> Tuple[int, ...]:
        a, b, c = prefix[u], prefix[v], prefix[u + v]
        return tuple(a[i] + b[i] - c[i] for i in range(n_classes))

    rows = {row_for(u, v) for u, v in anchors}
    rows.add(tuple(prefix[f_index % n]))
    rows.add(tuple(prefix[n]))  # periodicity: e(n) = e(0) = 0
    rows.discard(tuple([0] * n_classes))

    # Incremental forward elimination with early exit once full rank is hit.
    pivot_rows: List[List[Fraction]] = []
    pivot_cols: List[int] = []
    for row in sorted(rows):
        r = [Fraction(x) for x in row]
        for col, prow in zip(pivot_cols, pivot_rows):
            if r[col] != 0:
                factor = r[col]
                r = [a - factor * b for a, b in zip(r, prow)]
        lead = next((c for c, x in enumerate(r) if x != 0), None)
        if lead is None:
            continue
        inv = r[lead]
        pivot_rows.append([x / inv for x in r])
        pivot_cols.append(lead)
        if len(pivot_cols) == n_classes:
            return []

    gamma_basis = nullspace(RatMatrix(pivot_rows, n_cols=n_classes))
    basis: List[List[Fraction]] = []
    for gamma in gamma_basis:
        e = [Fraction(0)] * (n + 1)
        for t in range(n):
            e[t + 1] = e[t] + gamma[cls[t]]
        assert e[n] == 0
        basis.append(e[:n])
    if not basis:
        return []
    reduced, _ = rref(RatMatrix(basis))
    return [row for row in reduced if any(x != 0 for x in row)]
