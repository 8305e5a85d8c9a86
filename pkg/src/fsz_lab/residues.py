"""Counting identities for quadratic residues and related congruences.

Every counting operation here comes in two modes that must agree:

* ``closed`` evaluates an exact integer formula.  Formulas that would
  involve the Gauss sum G(q) are arranged so only G(p)^2 = (-1)^((p-1)/2) p
  appears, keeping everything in integer arithmetic.
* ``enum`` counts directly by enumeration over the field and acts as the
  independent oracle.

The binomial product sums likewise pair a big-integer oracle against a
recursive base-p digit factorization fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .fields import FieldElem, FieldSpec


def gauss_square_int(p: int) -> int:
    """G(p)^2 as an integer: p when p = 1 mod 4, -p when p = 3 mod 4."""
    return p if p % 4 == 1 else -p


def gauss_sum_int(p: int, n: int) -> int:
    """G(p^n) as an integer; only defined for even n (odd n is irrational)."""
    if n % 2:
        raise ValueError("G(p^n) is rational only for even n")
    return -(gauss_square_int(p) ** (n // 2))


def qr_diff_count(spec: FieldSpec, c: FieldElem, mode: str = "closed") -> int:
    """|QR intersect (QR + c)| for c != 0: the difference-of-squares count."""
    if c.is_zero():
        raise ValueError("c must be nonzero")
    q = spec.q
    if mode == "closed":
        if spec.minus_one_is_qr():
            return (q + 3) // 4 if c.legendre() == 1 else (q - 1) // 4
        return (q + 1) // 4
    if mode == "enum":
        qr = spec.qr_set()
        return sum(1 for x in qr if x + c in qr)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class FiberCountQuery:
    """Inputs for counting squares in one fiber of the scaled trace map.

    z must be nonzero so that x -> tr(z*x) is one of the surjections onto the
    prime subfield; y is the fiber's value there, as an int in [0, p).
    """

    spec: FieldSpec
    z: FieldElem
    y: int

    def __post_init__(self):
        if self.z.is_zero():
            raise ValueError("z must be nonzero")
        if not 0 <= self.y < self.spec.p:
            raise ValueError("y must lie in the prime subfield")


def trace_fiber_qr_count(query: FiberCountQuery, mode: str = "closed") -> int:
    """Number of squares x with tr(z*x) = y, by case formula or enumeration."""
    spec, z, y = query.spec, query.z, query.y
    p, n, q = spec.p, spec.n, spec.q
    if mode == "enum":
        spec.tables()
        zi = z.index()
        return sum(
            1
            for x in spec.qr_set()
            if spec.trace_idx(spec.mul_idx(zi, x.index())) == y
        )
    if mode != "closed":
        raise ValueError(f"unknown mode {mode!r}")
    sz = z.legendre()
    g2 = gauss_square_int(p)
    if y == 0:
        if n % 2:
            return (p ** (n - 1) + 1) // 2
        num = q + (p - 1) * sz * gauss_sum_int(p, n) + p
    else:
        if n % 2:
            # G(p) * G(p^n) collapses to (G(p)^2)^((n+1)/2); the substitution
            # a -> -a y in the character sum contributes legendre(-1) as well,
            # which only matters when p = 3 mod 4
            sy = 1 if pow(y, (p - 1) // 2, p) == 1 else -1
            s_minus = 1 if p % 4 == 1 else -1
            num = q + s_minus * sz * sy * g2 ** ((n + 1) // 2)
        else:
            num = q - sz * gauss_sum_int(p, n)
    quot, rem = divmod(num, 2 * p)
    if rem:
        raise AssertionError("fiber formula did not produce an integer")
    return quot


def power_sum_mod(p: int, k: int, mode: str = "closed") -> int:
    """sum of i^k over 1 <= i <= p-1, mod p: 0 unless (p-1) | k, else -1."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if mode == "closed":
        return p - 1 if k % (p - 1) == 0 else 0
    if mode == "direct":
        return sum(pow(i, k, p) for i in range(1, p)) % p
    raise ValueError(f"unknown mode {mode!r}")


def _lucas_sum(p: int, j: int, k: int, l: int) -> int:
    # sum_{m < p^j} C(m,k)C(m,l) mod p, factored one base-p block at a time;
    # internal: no half-range restriction on k, l beyond k, l < p^j.
    if j == 1:
        return sum(comb(m, k) * comb(m, l) for m in range(p)) % p
    block = p ** (j - 1)
    alpha, k1 = divmod(k, block)
    beta, l1 = divmod(l, block)
    inner = sum(comb(m, alpha) * comb(m, beta) for m in range(p)) % p
    if inner == 0:
        return 0
    return (inner * _lucas_sum(p, j - 1, k1, l1)) % p


def binom_product_sum_mod(p: int, j: int, k: int, l: int, mode: str = "lucas") -> int:
    """sum of C(m,k)C(m,l) over 0 <= m < p^j, mod p.

    Vanishes when k + l < p^j - 1 and equals (-1)^(j(p-1)/2) at the extreme
    k = l = (p^j - 1)/2.  The ``direct`` mode is the big-integer oracle; the
    ``lucas`` mode carries the digit factorization.
    """
    bound = (p ** j - 1) // 2
    if not (0 <= k <= bound and 0 <= l <= bound):
        raise ValueError(f"k, l must lie in [0, {bound}]")
    if mode == "direct":
        return sum(comb(m, k) * comb(m, l) for m in range(p ** j)) % p
    if mode == "lucas":
        return _lucas_sum(p, j, k, l)
    raise ValueError(f"unknown mode {mode!r}")
