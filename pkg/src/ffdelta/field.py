"""Exact arithmetic in the finite field F_q for q = p**n.

Elements are canonical integers in [0, q).  For a prime field the integer
is the residue itself; for an extension field it is the base-p packing of
the coefficient vector of the residue polynomial, least significant
coefficient first, so index 0 is the additive identity and index 1 the
multiplicative identity.  Keeping elements as plain integers means point
sets can be bit-packed and every bulk operation can run on numpy arrays.

Alongside the ring operations the context precomputes the tables the rest
of the toolkit needs: absolute trace to F_p, the additive character
chi(a) = exp(2*pi*i*trace(a)/p), squares, and negation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return out


def parse_prime_power(token: str | int) -> tuple[int, int]:
    """Parse "p^n", a bare prime, or a bare prime power into (p, n)."""
    if isinstance(token, str) and "^" in token:
        ps, ns = token.split("^", 1)
        try:
            p, n = int(ps), int(ns)
        except ValueError:
            raise ValueError(f"malformed field string {token!r}: expected 'p^n'") from None
        return p, n
    try:
        m = int(token)
    except ValueError:
        raise ValueError(f"malformed field string {token!r}: expected 'p^n' or a prime power") from None
    if m < 2:
        raise ValueError(f"field size must be at least 2, got {m}")
    p = prime_factors(m)[0]
    n = 0
    while m % p == 0:
        m //= p
        n += 1
    if m != 1:
        raise ValueError(f"{token} is not a prime power")
    return p, n


# ---------------------------------------------------------------------------
# Carry-free digit arithmetic.  Under the base-p packing, addition in the
# elementary abelian group (Z_p)^ndigits is digitwise mod-p addition; these
# helpers work on plain ints and numpy arrays alike.
# ---------------------------------------------------------------------------

def digitwise_add(a, b, p: int, ndigits: int):
    if ndigits == 1:
        return (a + b) % p
    out = (a + b) * 0
    pk = 1
    for _ in range(ndigits):
        out = out + ((a // pk + b // pk) % p) * pk
        pk *= p
    return out


def digitwise_sub(a, b, p: int, ndigits: int):
    if ndigits == 1:
        return (a - b) % p
    out = (a + b) * 0
    pk = 1
    for _ in range(ndigits):
        out = out + ((a // pk - b // pk) % p) * pk
        pk *= p
    return out


def digitwise_neg(a, p: int, ndigits: int):
    if ndigits == 1:
        return (-a) % p
    out = a * 0
    pk = 1
    for _ in range(ndigits):
        out = out + ((-(a // pk)) % p) * pk
        pk *= p
    return out


# ---------------------------------------------------------------------------
# Dense polynomial helpers over F_p (coefficient lists, ascending degree).
# Only used at field construction time, so plain Python is fine.
# ---------------------------------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    r = list(a)
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        lead = r[-1]
        shift = len(r) - 1 - dm
        if lead:
            for i, mi in enumerate(m):
                r[shift + i] = (r[shift + i] - lead * mi) % p
        _trim(r)
        if not r:
            break
    return r


def _poly_pow_mod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    b = _poly_mod(base, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, b, p), m, p)
        b = _poly_mod(_poly_mul(b, b, p), m, p)
        e >>= 1
    return result


def _element_digits(index: int, p: int, n: int) -> list[int]:
    return [(index // p**k) % p for k in range(n)]


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    """Exhaustive factor search: trial-divide by every monic polynomial of
    degree 1..deg/2.  Exact and fast at the sizes the ceiling allows."""
    deg = len(coeffs) - 1
    for m in range(1, deg // 2 + 1):
        for k in range(p**m):
            div = _element_digits(k, p, m) + [1]
            if not _poly_mod(coeffs, div, p):
                return False
    return True


def find_irreducible(p: int, n: int) -> tuple[int, ...]:
    """First monic irreducible of degree n over F_p in lexicographic
    coefficient order (non-leading coefficients read as a base-p number)."""
    for k in range(p**n):
        coeffs = _element_digits(k, p, n) + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible of degree {n} over F_{p}: internal failure")


@dataclass(frozen=True)
class FieldSpec:
    """Construction parameters of a field: p, n, and the reduction modulus
    (ascending coefficients, monic; empty for prime fields)."""

    p: int
    n: int
    modulus: tuple[int, ...]


class Field:
    """Arithmetic context for F_q, q = p**n.

    Immutable after construction; all operations are pure, so a single
    context can serve any number of concurrent callers.
    """

    def __init__(self, p: int, n: int = 1, max_elements: int | None = None):
        ceiling = config.MAX_ELEMENTS if max_elements is None else max_elements
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if n < 1:
            raise ValueError(f"extension degree must be >= 1, got {n}")
        q = p**n
        if q > ceiling:
            raise ValueError(f"field size {q} exceeds the configured ceiling {ceiling}")
        self.p = p
        self.n = n
        self.q = q
        self.unit_roots = np.exp(2j * np.pi * np.arange(p) / p)
        if n == 1:
            self.modulus: tuple[int, ...] = ()
            ar = np.arange(q, dtype=np.int64)
            self.neg_table = (-ar) % p
            self.trace_table = ar.copy()
            self.sq_table = (ar * ar) % p
        else:
            self.modulus = find_irreducible(p, n)
            self._build_extension_tables()
        self.chi_table = self.unit_roots[self.trace_table]
        for t in (self.neg_table, self.trace_table, self.sq_table, self.chi_table):
            t.flags.writeable = False

    def _build_extension_tables(self) -> None:
        p, n, q = self.p, self.n, self.q
        mod = list(self.modulus)
        # Multiplicative generator by exhaustive order test against the
        # prime factors of q - 1.
        fac = prime_factors(q - 1)
        gen = None
        for cand in range(2, q):
            digits = _element_digits(cand, p, n)
            if all(_poly_pow_mod(digits, (q - 1) // r, mod, p) != [1] for r in fac):
                gen = digits
                break
        if gen is None:
            raise RuntimeError(f"no multiplicative generator found for q={q}: internal failure")
        exp = np.zeros(q - 1, dtype=np.int64)
        cur = [1]
        for i in range(q - 1):
            exp[i] = sum(c * p**k for k, c in enumerate(cur))
            cur = _poly_mod(_poly_mul(cur, gen, p), mod, p)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        self._exp = exp
        self._log = log

        ar = np.arange(q, dtype=np.int64)
        self.neg_table = digitwise_neg(ar, p, n)
        # trace(a) = a + a^p + ... + a^(p^(n-1)); Frobenius via exp/log.
        acc = np.zeros(q, dtype=np.int64)
        cur_a = ar
        for _ in range(n):
            acc = digitwise_add(acc, cur_a, p, n)
            cur_a = np.where(cur_a == 0, 0, exp[(log[cur_a] * p) % (q - 1)])
        if (acc >= p).any():
            raise RuntimeError("trace left the prime subfield: internal failure")
        self.trace_table = acc
        self.sq_table = self.mul_arr(ar, ar)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_string(cls, s: str, max_elements: int | None = None) -> "Field":
        """Build a field from its "p^n" description (bare prime powers are
        also accepted and factored)."""
        p, n = parse_prime_power(s)
        return cls(p, n, max_elements=max_elements)

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec(self.p, self.n, self.modulus)

    def elements(self) -> range:
        return range(self.q)

    # -- scalar operations --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(digitwise_add(a, b, self.p, self.n))

    def sub(self, a: int, b: int) -> int:
        return int(digitwise_sub(a, b, self.p, self.n))

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(int(self._log[a]) + int(self._log[b])) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 is undefined in F_q")
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._exp[(self.q - 1 - int(self._log[a])) % (self.q - 1)])

    def pow_(self, a: int, e: int) -> int:
        """a**e for e >= 0 (0**0 = 1)."""
        if e < 0:
            return self.pow_(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self.n == 1:
            return pow(a, e, self.p)
        return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])

    def trace(self, a: int) -> int:
        """Absolute trace down to F_p, reported as an integer in [0, p)."""
        return int(self.trace_table[a])

    def chi(self, a: int) -> complex:
        """The additive character exp(2*pi*i*trace(a)/p)."""
        return complex(self.chi_table[a])

    # -- vectorized operations ---------------------------------------------

    def add_arr(self, a, b):
        return digitwise_add(np.asarray(a, np.int64), np.asarray(b, np.int64), self.p, self.n)

    def sub_arr(self, a, b):
        return digitwise_sub(np.asarray(a, np.int64), np.asarray(b, np.int64), self.p, self.n)

    def neg_arr(self, a):
        return self.neg_table[np.asarray(a, np.int64)]

    def mul_arr(self, a, b):
        a = np.asarray(a, np.int64)
        b = np.asarray(b, np.int64)
        if self.n == 1:
            return (a * b) % self.p
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def __str__(self) -> str:
        return f"{self.p}^{self.n}"

    def __repr__(self) -> str:
        return f"Field(p={self.p}, n={self.n})"
