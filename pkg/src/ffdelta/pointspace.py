"""Vectors in F_q**d as packed integers, plus indicator-backed point sets.

A point (x_0, ..., x_{d-1}) packs to sum_i index(x_i) * q**i.  Because the
element indices are themselves base-p digit packings, a point index is the
base-p packing of all n*d digits, so vector addition over the whole space
is carry-free digitwise addition and never needs coordinate unpacking.

Point sets are dense boolean indicators over [0, q**d): every algorithm in
scope walks the full space, the ceiling keeps q**d modest, and dense
indicators make correlation and transform passes cache-friendly.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from . import config
from .field import Field, digitwise_add, digitwise_neg, digitwise_sub

#: PRNG scheme recorded in reports: uniform sampling without replacement is
#: a seeded PCG64 permutation of [0, q**d) truncated to the requested size.
RNG_SCHEME = "numpy-pcg64-permutation-v1"


def _require_same_space(a: "PointSet", b: "PointSet") -> None:
    if a.space != b.space:
        raise ValueError(f"space mismatch: {a.space} vs {b.space}")


class Space:
    """The vector space F_q**d with canonical integer point encoding."""

    def __init__(self, field: Field, d: int, max_elements: int | None = None):
        ceiling = config.MAX_ELEMENTS if max_elements is None else max_elements
        if d < 1:
            raise ValueError(f"dimension must be >= 1, got {d}")
        size = field.q**d
        if size > ceiling:
            raise ValueError(f"space size {field.q}^{d} = {size} exceeds the ceiling {ceiling}")
        self.field = field
        self.d = d
        self.size = size
        self.ndigits = field.n * d

    # -- encoding -------------------------------------------------------

    def encode(self, coords) -> int:
        """Pack a length-d tuple of element indices into a point index."""
        if len(coords) != self.d:
            raise ValueError(f"expected {self.d} coordinates, got {len(coords)}")
        q = self.field.q
        idx = 0
        for i, c in enumerate(coords):
            c = int(c)
            if not 0 <= c < q:
                raise ValueError(f"coordinate {c} outside [0, {q})")
            idx += c * q**i
        return idx

    def decode(self, index: int) -> tuple[int, ...]:
        q = self.field.q
        if not 0 <= index < self.size:
            raise ValueError(f"point index {index} outside [0, {self.size})")
        return tuple((index // q**i) % q for i in range(self.d))

    @cached_property
    def coord_arrays(self) -> list[np.ndarray]:
        """coord_arrays[i][x] = i-th coordinate of the point with index x."""
        q = self.field.q
        ar = np.arange(self.size, dtype=np.int64)
        return [(ar // q**i) % q for i in range(self.d)]

    # -- additive group on packed indices ---------------------------------

    def add_indices(self, u, v):
        return digitwise_add(u, v, self.field.p, self.ndigits)

    def sub_indices(self, u, v):
        return digitwise_sub(u, v, self.field.p, self.ndigits)

    def neg_indices(self, u):
        return digitwise_neg(u, self.field.p, self.ndigits)

    # -- geometry ----------------------------------------------------------

    def norm(self, x) -> int:
        """The field element x_1**2 + ... + x_d**2 (x is a point index or
        coordinate tuple)."""
        coords = self.decode(int(x)) if not isinstance(x, tuple) else x
        f = self.field
        acc = 0
        for c in coords:
            acc = f.add(acc, f.mul(int(c), int(c)))
        return acc

    @cached_property
    def norm_table(self) -> np.ndarray:
        f = self.field
        acc = np.zeros(self.size, dtype=np.int64)
        for i in range(self.d):
            acc = f.add_arr(acc, f.sq_table[self.coord_arrays[i]])
        acc.flags.writeable = False
        return acc

    @cached_property
    def dual_index_map(self) -> np.ndarray:
        """Permutation sigma of [0, q**d) aligning the trace pairing with the
        plain digit pairing: trace(x . m) mod p equals the digit dot product
        of x with sigma(m).  Identity for prime fields."""
        f = self.field
        p = f.p
        ar = np.arange(f.q, dtype=np.int64)
        # tabs[j][e] = trace(t**j * e) with t the residue-class generator.
        tabs = []
        for j in range(f.n):
            tj = f.pow_(p, j) if f.n > 1 else 1
            tabs.append(f.trace_table[f.mul_arr(tj, ar)].astype(np.int64))
        sigma = np.zeros(self.size, dtype=np.int64)
        scale = 1
        for i in range(self.d):
            mi = self.coord_arrays[i]
            for j in range(f.n):
                sigma += tabs[j][mi] * scale
                scale *= p
        sigma.flags.writeable = False
        return sigma

    # -- set constructors ----------------------------------------------------

    def empty_set(self) -> "PointSet":
        return PointSet(self, np.zeros(self.size, dtype=bool))

    def full_space(self) -> "PointSet":
        return PointSet(self, np.ones(self.size, dtype=bool))

    def set_from_indices(self, indices) -> "PointSet":
        ind = np.zeros(self.size, dtype=bool)
        idx = np.asarray(list(indices), dtype=np.int64)
        if idx.size:
            if idx.min() < 0 or idx.max() >= self.size:
                raise ValueError("point index outside the space")
            ind[idx] = True
        return PointSet(self, ind)

    def set_from_points(self, points) -> "PointSet":
        """Build a set from coordinate tuples; duplicates collapse."""
        return self.set_from_indices(self.encode(p) for p in points)

    def random_set(self, size: int, seed: int) -> "PointSet":
        """Uniform sample of `size` distinct points, reproducible from the
        seed under the scheme named by RNG_SCHEME."""
        if not 0 <= size <= self.size:
            raise ValueError(f"sample size {size} outside [0, {self.size}]")
        rng = np.random.default_rng(seed)
        return self.set_from_indices(rng.permutation(self.size)[:size])

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Space) and self.field == other.field and self.d == other.d

    def __hash__(self) -> int:
        return hash((self.field, self.d))

    def __repr__(self) -> str:
        return f"Space(F_{self.field.q}, d={self.d})"


class PointSet:
    """An immutable subset of a Space, stored as a dense boolean indicator
    with its cardinality cached."""

    def __init__(self, space: Space, indicator):
        ind = np.array(indicator, dtype=bool)
        if ind.shape != (space.size,):
            raise ValueError(f"indicator length {ind.shape} does not match space size {space.size}")
        ind.flags.writeable = False
        self.space = space
        self.indicator = ind
        self.card = int(ind.sum())

    @cached_property
    def points(self) -> np.ndarray:
        """Member point indices, ascending."""
        return np.flatnonzero(self.indicator)

    def __contains__(self, x) -> bool:
        idx = self.space.encode(x) if isinstance(x, tuple) else int(x)
        return bool(self.indicator[idx])

    def __len__(self) -> int:
        return self.card

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and self.space == other.space
            and np.array_equal(self.indicator, other.indicator)
        )

    def __repr__(self) -> str:
        return f"PointSet(card={self.card}, space={self.space!r})"

    # -- operations -----------------------------------------------------------

    def translate(self, c) -> "PointSet":
        """The translate {b + c : b in this set}; cardinality is preserved."""
        c_idx = self.space.encode(c) if isinstance(c, tuple) else int(c)
        ind = np.zeros(self.space.size, dtype=bool)
        ind[self.space.add_indices(self.points, c_idx)] = True
        return PointSet(self.space, ind)

    def intersect(self, other: "PointSet") -> "PointSet":
        _require_same_space(self, other)
        return PointSet(self.space, self.indicator & other.indicator)

    def union(self, other: "PointSet") -> "PointSet":
        _require_same_space(self, other)
        return PointSet(self.space, self.indicator | other.indicator)

    # -- literal file format ---------------------------------------------------

    def to_literal(self) -> dict:
        """JSON-ready document: {"field": "p^n", "d": d, "points": [[...]]}
        with coordinates as canonical element indices, ascending by index."""
        return {
            "field": str(self.space.field),
            "d": self.space.d,
            "points": [list(self.space.decode(int(i))) for i in self.points],
        }

    @classmethod
    def from_literal(cls, doc: dict, max_elements: int | None = None) -> "PointSet":
        field = Field.from_string(doc["field"], max_elements=max_elements)
        space = Space(field, int(doc["d"]), max_elements=max_elements)
        return space.set_from_points([tuple(p) for p in doc["points"]])
