"""Vault security analysis via exact combinatorics.

An attacker who must find an all-genuine (n+1)-subset among t = r + c
points faces C(t, n+1) / C(r, n+1) expected polynomial reconstructions;
the vault's min-entropy is the log2 of that ratio.  Binomials are kept as
exact integers (C(220, 9) is only ~2.8e15) and converted to bits at the
end, so reported figures carry no accumulated rounding.

Password hardening adds the guessing entropy of the combined password,
taken as the fixed range 18 to 30 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Guessing-entropy bounds, in bits, credited to the combined password.
GUESSING_ENTROPY_BITS = (18.0, 30.0)


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); requires 0 <= k <= n."""
    if k < 0 or k > n:
        raise DomainError(f"binom requires 0 <= k <= n, got n={n}, k={k}")
    return math.comb(n, k)


def _check_domain(r: int, c: int, n: int) -> None:
    if n < 0:
        raise DomainError(f"polynomial degree must be non-negative, got {n}")
    if r < n + 1:
        raise DomainError(f"need r >= n + 1 genuine points, got r={r}, n={n}")
    if c < 0:
        raise DomainError(f"chaff count must be non-negative, got {c}")


def _log2_exact(value: int) -> float:
    # math.log2 overflows above ~2^1023; scale huge ints down first.
    if value.bit_length() <= 1000:
        return math.log2(value)
    shift = value.bit_length() - 64
    return math.log2(value >> shift) + shift


def evaluations(r: int, c: int, n: int) -> float:
    """Expected reconstructions for a brute-force attacker: C(t,n+1)/C(r,n+1)."""
    _check_domain(r, c, n)
    total = binom(r + c, n + 1)
    required = binom(r, n + 1)
    try:
        return total / required
    except OverflowError:
        return math.inf


def min_entropy(r: int, c: int, n: int) -> float:
    """Security of the template given the vault, in bits.

    -log2 of the probability that a uniformly chosen (n+1)-subset of the
    t = r + c vault points is all-genuine.
    """
    _check_domain(r, c, n)
    total = binom(r + c, n + 1)
    required = binom(r, n + 1)
    return _log2_exact(total) - _log2_exact(required)


def hardened_range(r: int, c: int, n: int,
                   guess_bits: tuple[float, float] = GUESSING_ENTROPY_BITS) -> tuple[float, float]:
    """Vault min-entropy plus the password guessing-entropy bounds."""
    bits = min_entropy(r, c, n)
    return (bits + guess_bits[0], bits + guess_bits[1])


@dataclass(frozen=True)
class EntropyReport:
    """One row of the security analysis for a vault shape."""

    r: int
    c: int
    t: int
    n: int
    total_combinations: int
    required_combinations: int
    evaluations: float
    min_entropy_bits: float
    hardened_range_bits: tuple[float, float]

    @property
    def hardened_range_rounded(self) -> tuple[int, int]:
        """Whole-bit presentation: min-entropy rounded, then the password
        bounds added.  This is the form security tables quote."""
        rounded = round(self.min_entropy_bits)
        return (rounded + round(GUESSING_ENTROPY_BITS[0]),
                rounded + round(GUESSING_ENTROPY_BITS[1]))


def analyze(r: int, c: int, n: int) -> EntropyReport:
    """Assemble the full entropy report for a vault shape."""
    _check_domain(r, c, n)
    total = binom(r + c, n + 1)
    required = binom(r, n + 1)
    return EntropyReport(
        r=r,
        c=c,
        t=r + c,
        n=n,
        total_combinations=total,
        required_combinations=required,
        evaluations=evaluations(r, c, n),
        min_entropy_bits=min_entropy(r, c, n),
        hardened_range_bits=hardened_range(r, c, n),
    )
