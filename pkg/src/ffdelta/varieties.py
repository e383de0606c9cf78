"""Constructions of structured point sets: plane curves, spheres,
paraboloids, lines, subspaces, and Cartesian products.

Curves are zero sets of bivariate polynomials over F_q.  Two curves of
degrees k1 and k2 with no common component meet in at most k1 * k2 points,
so an irreducible degree-k curve meets any nonzero translate of itself in
at most k**2 points; `bezout_translate_check` measures that bound directly
instead of deciding irreducibility algebraically, which is the condition
the difference-set machinery actually consumes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .field import Field
from .pointspace import PointSet, Space
from .setops import correlation_table


def _canonical_coeff(field: Field, c: int) -> int:
    """Coefficients are canonical element indices; only prime fields get a
    free mod-p reduction."""
    c = int(c)
    if field.n == 1:
        return c % field.p
    if not 0 <= c < field.q:
        raise ValueError(f"coefficient {c} outside [0, {field.q})")
    return c


@dataclass(frozen=True)
class BivarPoly:
    """Polynomial in F_q[x1, x2] as a sparse map (i, j) -> coefficient,
    coefficients canonical element indices, zero coefficients never stored."""

    field: Field
    coeffs: tuple[tuple[tuple[int, int], int], ...]

    def __post_init__(self):
        q = self.field.q
        seen = set()
        for (i, j), c in self.coeffs:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term x1^{i}*x2^{j}")
            if not 0 < c < q:
                raise ValueError(f"coefficient {c} outside (0, {q})")
            if (i, j) in seen:
                raise ValueError(f"duplicate term x1^{i}*x2^{j}")
            seen.add((i, j))

    @classmethod
    def from_terms(cls, field: Field, terms: dict[tuple[int, int], int]) -> "BivarPoly":
        """Normalize a {(i, j): coeff} map: reduce, merge, drop zeros."""
        merged: dict[tuple[int, int], int] = {}
        for (i, j), c in terms.items():
            c = _canonical_coeff(field, c)
            if (i, j) in merged:
                c = field.add(merged[(i, j)], c)
            merged[(i, j)] = c
        kept = tuple(sorted(((ij, c) for ij, c in merged.items() if c), key=lambda t: t[0]))
        return cls(field, kept)

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no degree")
        return max(i + j for (i, j), _ in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- text format: terms "c*x1^i*x2^j" joined by "+" -----------------------

    _TERM = re.compile(
        r"^(?P<c>\d+)(?:\*x1(?:\^(?P<i>\d+))?)?(?:\*x2(?:\^(?P<j>\d+))?)?$"
    )

    @classmethod
    def from_text(cls, field: Field, text: str) -> "BivarPoly":
        terms: dict[tuple[int, int], int] = {}
        for raw in text.split("+"):
            t = raw.strip().replace(" ", "")
            if not t:
                raise ValueError(f"empty term in polynomial {text!r}")
            m = cls._TERM.match(t)
            if not m:
                raise ValueError(f"bad term {raw.strip()!r}; expected 'c*x1^i*x2^j'")
            c = _canonical_coeff(field, int(m.group("c")))
            i = int(m.group("i")) if m.group("i") else (1 if "*x1" in t else 0)
            j = int(m.group("j")) if m.group("j") else (1 if "*x2" in t else 0)
            key = (i, j)
            terms[key] = field.add(terms.get(key, 0), c)
        return cls.from_terms(field, terms)

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in self.coeffs:
            t = str(c)
            if i:
                t += "*x1" + (f"^{i}" if i > 1 else "")
            if j:
                t += "*x2" + (f"^{j}" if j > 1 else "")
            parts.append(t)
        return "+".join(parts)

    # -- evaluation -------------------------------------------------------------

    def _coeff_matrix(self) -> list[list[int]]:
        deg1 = max((i for (i, _), _ in self.coeffs), default=0)
        deg2 = max((j for (_, j), _ in self.coeffs), default=0)
        mat = [[0] * (deg2 + 1) for _ in range(deg1 + 1)]
        for (i, j), c in self.coeffs:
            mat[i][j] = c
        return mat

    def evaluate(self, x1: int, x2: int) -> int:
        """Horner in x1 with inner Horner in x2."""
        f = self.field
        acc = 0
        for row in reversed(self._coeff_matrix()):
            inner = 0
            for c in reversed(row):
                inner = f.add(f.mul(inner, x2), c)
            acc = f.add(f.mul(acc, x1), inner)
        return acc

    def evaluate_grid(self, space: Space) -> np.ndarray:
        """Values at every point of F_q**2, vectorized Horner passes."""
        f = self.field
        a1, a2 = space.coord_arrays[0], space.coord_arrays[1]
        acc = np.zeros(space.size, dtype=np.int64)
        for row in reversed(self._coeff_matrix()):
            inner = np.zeros(space.size, dtype=np.int64)
            for c in reversed(row):
                inner = f.add_arr(f.mul_arr(inner, a2), c)
            acc = f.add_arr(f.mul_arr(acc, a1), inner)
        return acc


def variety_points(P: BivarPoly, space: Optional[Space] = None) -> PointSet:
    """Exact zero set of P in F_q**2 by full enumeration."""
    if P.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere; not a variety")
    if space is None:
        space = Space(P.field, 2)
    elif space.field != P.field or space.d != 2:
        raise ValueError("variety space must be F_q^2 over the polynomial's field")
    return PointSet(space, P.evaluate_grid(space) == 0)


def sphere(space: Space, r: int) -> PointSet:
    """{x : ||x|| = r}; requires d >= 2."""
    if space.d < 2:
        raise ValueError("spheres need d >= 2")
    if not 0 <= r < space.field.q:
        raise ValueError(f"radius {r} outside [0, {space.field.q})")
    return PointSet(space, space.norm_table == r)


def paraboloid(space: Space) -> PointSet:
    """{(x', ||x'||) : x' in F_q**(d-1)}; exactly q**(d-1) points."""
    if space.d < 2:
        raise ValueError("the paraboloid needs d >= 2")
    base = Space(space.field, space.d - 1)
    scale = space.field.q ** (space.d - 1)
    idx = np.arange(base.size, dtype=np.int64) + base.norm_table * scale
    return space.set_from_indices(idx)


# ---------------------------------------------------------------------------
# Lines in F_q^2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LineSpec:
    """A line in F_q**2: y = slope*x + intercept, or the vertical line
    x = intercept when slope is None."""

    slope: Optional[int]
    intercept: int

    @property
    def vertical(self) -> bool:
        return self.slope is None


def all_lines(field: Field):
    """All q**2 + q distinct lines: verticals first, then slope-major."""
    for a in range(field.q):
        yield LineSpec(None, a)
    for s in range(field.q):
        for t in range(field.q):
            yield LineSpec(s, t)


def line_set(space: Space, line: LineSpec) -> PointSet:
    if space.d != 2:
        raise ValueError("lines live in d = 2")
    f = space.field
    q = f.q
    xs = np.arange(q, dtype=np.int64)
    if line.vertical:
        idx = line.intercept + q * xs
    else:
        ys = f.add_arr(f.mul_arr(line.slope, xs), line.intercept)
        idx = xs + q * ys
    return space.set_from_indices(idx)


def contains_line(V: PointSet) -> Optional[LineSpec]:
    """Scan all q**2 + q lines and return the first fully contained in V,
    or None.  O(q**3)."""
    if V.space.d != 2:
        raise ValueError("line containment is only defined in d = 2")
    for line in all_lines(V.space.field):
        if bool(V.indicator[line_set(V.space, line).points].all()):
            return line
    return None


class BezoutResult(NamedTuple):
    max_intersection: int
    witness: int
    passed: bool


def bezout_translate_check(V: PointSet, k: int) -> BezoutResult:
    """Exhaustive scan of |V intersect (V + c)| over c != 0, reporting the
    maximum, its witness translate, and whether it stays within k**2.

    Degrees are assumed O(1) relative to q; large k makes the k**2 bound
    vacuous, so k above max(2, q/4) is rejected (conics always run).
    """
    if V.space.d != 2:
        raise ValueError("the translate check is only defined in d = 2")
    if k < 1:
        raise ValueError(f"degree must be >= 1, got {k}")
    q = V.space.field.q
    if k > max(2, q / 4):
        raise ValueError(f"degree {k} too large for q = {q}: the k^2 bound is vacuous")
    counts = correlation_table(V, V).counts.copy()
    counts[0] = -1  # c = 0 gives |V| trivially
    witness = int(np.argmax(counts))
    mx = max(int(counts[witness]), 0)
    return BezoutResult(mx, witness, mx <= k * k)


# ---------------------------------------------------------------------------
# Subspaces and product sets
# ---------------------------------------------------------------------------


def _rank(field: Field, rows: list[list[int]]) -> int:
    """Row rank over F_q by Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    width = len(m[0])
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][col])
        m[rank] = [field.mul(inv, v) for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [field.sub(v, field.mul(factor, w)) for v, w in zip(m[r], m[rank])]
        rank += 1
    return rank


def subspace(space: Space, basis: list[tuple[int, ...]]) -> PointSet:
    """The span of the given vectors; exactly q**rank points.  The basis
    must be linearly independent (checked by rank computation)."""
    f = space.field
    rows = [list(b) for b in basis]
    for r in rows:
        if len(r) != space.d:
            raise ValueError(f"basis vector {r} does not have {space.d} coordinates")
    if _rank(f, rows) != len(rows):
        raise ValueError("basis vectors are linearly dependent")
    pts = np.zeros(1, dtype=np.int64)
    for b in rows:
        scaled = [
            space.encode(tuple(f.mul(c, coord) for coord in b)) for c in range(f.q)
        ]
        pts = space.add_indices(pts[None, :], np.asarray(scaled, np.int64)[:, None]).ravel()
    pts = np.unique(pts)
    if pts.size != f.q ** len(rows):
        raise RuntimeError("subspace enumeration produced the wrong cardinality")
    return space.set_from_indices(pts)


def product_set(space: Space, s1, s2) -> PointSet:
    """The Cartesian product S1 x S2 inside F_q**2."""
    if space.d != 2:
        raise ValueError("product sets live in d = 2")
    q = space.field.q
    a1 = np.asarray(sorted({int(v) for v in s1}), dtype=np.int64)
    a2 = np.asarray(sorted({int(v) for v in s2}), dtype=np.int64)
    for arr in (a1, a2):
        if arr.size and (arr.min() < 0 or arr.max() >= q):
            raise ValueError("product factors must be canonical element indices")
    if a1.size == 0 or a2.size == 0:
        return space.empty_set()
    idx = np.add.outer(q * a2, a1).ravel()
    return space.set_from_indices(idx)
