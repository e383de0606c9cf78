"""Additive-character transforms of point sets and decay diagnostics.

The transform of a set E at frequency m is

    hat_E(m) = q**(-d) * sum_{x in E} chi(-x . m),

with chi the trace character and x . m the field dot product.  Two
implementations are kept deliberately independent: a direct double loop
used as the oracle, and a fast path that runs n*d size-p butterfly passes
over the digit axes and then relabels frequencies through the trace
pairing.  Both use the q**(-d) normalization everywhere; integer-weighted
variants (energies) apply their q**(3d) factor at the point of use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from typing import NamedTuple

import numpy as np

from .pointspace import PointSet, Space


@dataclass
class Spectrum:
    """Transform values over all q**d frequencies, indexed by packed point
    index, normalized so that values[0] = |E| / q**d."""

    space: Space
    values: np.ndarray
    normalization: str = dataclass_field(default="paper")

    def moduli(self) -> np.ndarray:
        return np.abs(self.values)

    def to_csv(self, dest) -> None:
        """Dump rows (m, re, im, modulus) for inspection."""
        lines = ["m,re,im,modulus"]
        for m, v in enumerate(self.values):
            lines.append(f"{m},{float(v.real)!r},{float(v.imag)!r},{float(abs(v))!r}")
        text = "\n".join(lines) + "\n"
        if hasattr(dest, "write"):
            dest.write(text)
        else:
            with open(dest, "w") as fh:
                fh.write(text)


def dft_naive(E: PointSet) -> Spectrum:
    """Direct transform: for every frequency, sum the character over the
    set.  O(q**d * |E|) character multiplications; this is the oracle the
    fast path is tested against."""
    space = E.space
    f = space.field
    chi_conj = np.conj(f.chi_table)
    acc = np.zeros(space.size, dtype=np.complex128)
    coords = space.coord_arrays
    for x_idx in E.points:
        xc = space.decode(int(x_idx))
        dot = np.zeros(space.size, dtype=np.int64)
        for i in range(space.d):
            dot = f.add_arr(dot, f.mul_arr(xc[i], coords[i]))
        acc += chi_conj[dot]
    return Spectrum(space, acc / space.size)


def dft_fast(E: PointSet) -> Spectrum:
    """Tensorized transform over the additive group (Z_p)^(n*d): one size-p
    butterfly pass per digit axis, then the trace-pairing relabel of the
    frequency axis.  O(q**d * n * d * p) operations, summation order fixed."""
    space = E.space
    f = space.field
    p = f.p
    jk = np.outer(np.arange(p), np.arange(p)) % p
    kernel = np.conj(f.unit_roots)[jk]
    work = E.indicator.astype(np.complex128)
    for k in range(space.ndigits):
        block = work.reshape(-1, p, p**k)
        work = np.einsum("jk,akb->ajb", kernel, block).reshape(-1)
    values = work[space.dual_index_map] / space.size
    return Spectrum(space, values)


class SalemScan(NamedTuple):
    """Largest scaled nonzero-frequency coefficient and where it occurs."""

    constant: float
    witness: int


def salem_scan(E: PointSet) -> SalemScan:
    """Smallest constant C such that every nonzero-frequency coefficient of
    E is at most C * sqrt(|E|) / q**d, with the argmax frequency as witness.
    C near 1 is square-root cancellation, the best possible decay."""
    if E.card == 0:
        raise ValueError("Salem constant is undefined for the empty set")
    mods = np.abs(dft_fast(E).values)
    mods[0] = -1.0  # frequency 0 carries |E|/q**d and is excluded from the scan
    w = int(np.argmax(mods))
    constant = float(mods[w]) * E.space.size / math.sqrt(E.card)
    return SalemScan(max(constant, 0.0), w)


def salem_constant(E: PointSet) -> float:
    return salem_scan(E).constant


def plancherel_residual(E: PointSet) -> float:
    """|sum_m |hat_E(m)|**2 - |E|/q**d|; a numerical health check that
    should sit at rounding-error level for every set."""
    spec = dft_fast(E)
    total = float(np.sum(np.abs(spec.values) ** 2))
    return abs(total - E.card / E.space.size)
