"""Exact binomial arithmetic used by every condition formula."""

from __future__ import annotations

from fractions import Fraction
from math import comb

# Arbitrary-precision rational in lowest terms with positive denominator.
BigRatio = Fraction


def binomial(n: int, k: int) -> int:
    """C(n, k), with the convention that it vanishes for k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def check_identity_comb(N: int, K: int, J: int) -> bool:
    """Exact check of C(N,K) - C(N,K-J) == (N-2K+J)/(N+J) * C(N+J,K) for J in {1, 2}."""
    if J not in (1, 2):
        raise ValueError("J must be 1 or 2")
    if N < 0 or N + J == 0:
        raise ValueError("need N >= 0 and N + J != 0")
    lhs = Fraction(binomial(N, K) - binomial(N, K - J))
    rhs = Fraction(N - 2 * K + J, N + J) * binomial(N + J, K)
    return lhs == rhs
