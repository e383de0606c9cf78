"""Difference sets, distance sets, correlation tables, and additive energy.

The additive energy of a pair (A, B) is the number of quadruples
(x, y, z, w) in A x A x B x B with x - y + z - w = 0.  It is computed by
three deliberately independent routes: the exhaustive quadruple count, the
sum of squared translate-intersection counts, and the weighted square sum
of the two transforms.  Agreement of all three is a standing oracle test.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import config
from .pointspace import PointSet, _require_same_space
from .spectral import dft_fast


class RoundingError(ArithmeticError):
    """A float that must be an integer landed too far from one."""


def round_to_int(x: float, tol: float = config.ROUNDING_TOL) -> int:
    r = round(x)
    if abs(x - r) > tol:
        raise RoundingError(f"{x!r} is {abs(x - r):.3g} from the nearest integer (tol {tol})")
    return int(r)


# Pairwise difference enumeration is chunked so the |A| x |B| broadcast
# never materializes more than this many indices at once.
_PAIR_CHUNK = 1 << 22


def _pair_diff_chunks(A: PointSet, B: PointSet):
    """Yield flat arrays of packed indices a - b covering all pairs."""
    a_idx = A.points
    b_idx = B.points
    if a_idx.size == 0 or b_idx.size == 0:
        return
    space = A.space
    step = max(1, _PAIR_CHUNK // max(1, a_idx.size))
    for s in range(0, b_idx.size, step):
        blk = b_idx[s : s + step]
        yield space.sub_indices(a_idx[None, :], blk[:, None]).ravel()


def difference_set(A: PointSet, B: PointSet) -> PointSet:
    """All pairwise differences a - b with a in A, b in B."""
    _require_same_space(A, B)
    ind = np.zeros(A.space.size, dtype=bool)
    for diffs in _pair_diff_chunks(A, B):
        ind[diffs] = True
    return PointSet(A.space, ind)


def distance_set(A: PointSet, B: PointSet) -> set[int]:
    """The field elements ||a - b|| over all pairs; a set of at most q
    values ("distance" is a field value, not a metric)."""
    _require_same_space(A, B)
    norm_table = A.space.norm_table
    seen = np.zeros(A.space.field.q, dtype=bool)
    for diffs in _pair_diff_chunks(A, B):
        seen[norm_table[diffs]] = True
    return {int(v) for v in np.flatnonzero(seen)}


class CorrelationTable(NamedTuple):
    """counts[c] = |A intersect (B + c)| for every translate c, exact."""

    space: object
    counts: np.ndarray

    def support_set(self) -> PointSet:
        return PointSet(self.space, self.counts > 0)

    def to_csv(self, dest) -> None:
        lines = ["c,count"]
        lines += [f"{c},{int(v)}" for c, v in enumerate(self.counts)]
        text = "\n".join(lines) + "\n"
        if hasattr(dest, "write"):
            dest.write(text)
        else:
            with open(dest, "w") as fh:
                fh.write(text)


def correlation_table(A: PointSet, B: PointSet) -> CorrelationTable:
    """Scatter count over all pairs: each (a, b) lands in c = a - b, so
    counts[c] = |A intersect (B + c)|.  O(|A| * |B|) work, exact integers."""
    _require_same_space(A, B)
    counts = np.zeros(A.space.size, dtype=np.int64)
    for diffs in _pair_diff_chunks(A, B):
        counts += np.bincount(diffs, minlength=A.space.size)
    return CorrelationTable(A.space, counts)


def energy_brute(A: PointSet, B: PointSet, guard: int = config.BRUTE_GUARD) -> int:
    """Exhaustive quadruple count: enumerate (x, y, z), force w = x - y + z,
    and test membership.  Guarded by |A|**2 * |B| <= guard."""
    _require_same_space(A, B)
    if A.card**2 * B.card > guard:
        raise ValueError(
            f"brute-force energy guard exceeded: |A|^2*|B| = {A.card ** 2 * B.card} > {guard}"
        )
    space = A.space
    b_idx = B.points
    b_ind = B.indicator
    total = 0
    for x in A.points:
        for y in A.points:
            shift = space.sub_indices(int(x), int(y))
            total += int(b_ind[space.add_indices(b_idx, shift)].sum())
    return total


def energy_corr(A: PointSet, B: PointSet) -> int:
    """Energy as the sum of squared translate-intersection counts."""
    counts = correlation_table(A, B).counts
    return int(np.dot(counts, counts))


def energy_spectral_raw(A: PointSet, B: PointSet) -> float:
    """q**(3d) * sum_m |hat_A(m)|**2 |hat_B(m)|**2 before rounding."""
    _require_same_space(A, B)
    sa = np.abs(dft_fast(A).values) ** 2
    sb = np.abs(dft_fast(B).values) ** 2
    return float(np.dot(sa, sb)) * float(A.space.size) ** 3


def energy_spectral(A: PointSet, B: PointSet, tol: float = config.ROUNDING_TOL) -> int:
    """Energy via the transforms, rounded to the exact integer; a rounding
    distance beyond tol signals numerical breakdown and raises."""
    return round_to_int(energy_spectral_raw(A, B), tol)


def energy(A: PointSet, B: PointSet) -> int:
    """Default energy route: the correlation-table sum, O(|A||B| + q**d).
    The brute-force count is reserved for oracle tests."""
    return energy_corr(A, B)


class TranslateProfile(NamedTuple):
    """Exceptional translates W = {c != 0 : |B intersect (B+c)| > K} plus
    the histogram of all translate-intersection counts."""

    exceptional: tuple[int, ...]
    histogram: dict[int, int]


def translate_profile(B: PointSet, K: int) -> TranslateProfile:
    """Profile c -> |B intersect (B + c)|.  c = 0 is excluded from the
    exceptional set because |B intersect B| = |B| trivially."""
    if K < 1:
        raise ValueError(f"profile threshold K must be >= 1, got {K}")
    counts = correlation_table(B, B).counts
    mask = counts > K
    mask[0] = False
    exceptional = tuple(int(c) for c in np.flatnonzero(mask))
    values, freqs = np.unique(counts, return_counts=True)
    histogram = {int(v): int(f) for v, f in zip(values, freqs)}
    return TranslateProfile(exceptional, histogram)
