"""Symmetric-group content of the weight spaces.

The span of weight-k strings decomposes into one copy each of the
two-row irreducibles [n-j, j], j = 0..min(k, n-k), with dimension
C(n,j) - C(n,j-1). The same subspace is the total-spin s = (n-2j)/2
eigenspace of S^2 restricted to weight k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .combinatorics import binomial
from .dicke import DickeVector
from .full_space import apply, average, double, embed, operator_matrix, popcounts

SPECTRAL_TOL = 1e-8


@dataclass(frozen=True)
class IrrepLabel:
    n: int
    j: int

    def __post_init__(self):
        if not 0 <= 2 * self.j <= self.n:
            raise ValueError(f"need 0 <= j <= n/2, got n={self.n}, j={self.j}")

    @property
    def partition(self) -> tuple[int, int] | tuple[int]:
        return (self.n - self.j, self.j) if self.j else (self.n,)

    @property
    def dim(self) -> int:
        return binomial(self.n, self.j) - (binomial(self.n, self.j - 1) if self.j else 0)

    @property
    def spin(self) -> Fraction:
        return Fraction(self.n - 2 * self.j, 2)

    def __str__(self) -> str:
        return f"U{self.dim}[{','.join(map(str, self.partition))}]"


def decompose_weight_space(n: int, k: int) -> list[IrrepLabel]:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}")
    return [IrrepLabel(n, j) for j in range(min(k, n - k) + 1)]


@dataclass(frozen=True)
class DecompositionTable:
    n: int
    rows: tuple[tuple[IrrepLabel, ...], ...]

    def dims(self) -> list[list[int]]:
        return [[lab.dim for lab in row] for row in self.rows]

    def text(self) -> str:
        width = len(f"W{self.n}")
        return "\n".join(
            f"{('W' + str(k)).ljust(width)} = " + " + ".join(str(lab) for lab in row) for k, row in enumerate(self.rows)
        ) + "\n"


def decomposition_table(n: int) -> DecompositionTable:
    if n < 1:
        raise ValueError("n must be positive")
    return DecompositionTable(n, tuple(tuple(decompose_weight_space(n, k)) for k in range(n + 1)))


@dataclass(frozen=True)
class CountingReport:
    n: int
    multiplicities: dict[int, tuple[int, int]]  # j -> (dim, number of copies in the full space)
    onebit_trivial_needed: int = 8  # 4 pairs: I, Xbar, Ybar, Zbar on both words
    onebit_standard_needed: int = 6  # 3 pairs: X, Y, Z differences on both words

    def text(self) -> str:
        lines = [f"n = {self.n}"]
        for j, (dim, mult) in sorted(self.multiplicities.items()):
            part = f"[{self.n - j},{j}]" if j else f"[{self.n}]"
            lines.append(f"  {part:>8} dim {dim:>4}  copies {mult}")
        t = self.multiplicities[0][1]
        s = self.multiplicities[1][1] if 1 in self.multiplicities else 0
        lines.append(
            f"  one-bit correction needs {self.onebit_trivial_needed} trivial copies (4 pairs, {t} available)"
            f" and {self.onebit_standard_needed} copies of dimension {self.n - 1} (3 pairs, {s} available)"
        )
        if t < self.onebit_trivial_needed or s < self.onebit_standard_needed:
            lines.append("  needed copies exceed those available (nondegenerate one-bit correction impossible)")
        return "\n".join(lines) + "\n"


def counting_report(n: int) -> CountingReport:
    """Copies of each [n-j, j] across all weight spaces: one per k with j <= min(k, n-k)."""
    mult = {}
    for j in range(n // 2 + 1):
        copies = sum(1 for k in range(n + 1) if j <= min(k, n - k))
        mult[j] = (IrrepLabel(n, j).dim, copies)
    return CountingReport(n, mult)


def double_error_split(n: int) -> tuple[int, int, int]:
    """Dimensions of the trivial, standard and [n-2, 2] pieces of the pair errors f_rs."""
    if n < 4:
        raise ValueError("need n >= 4")
    split = (1, n - 1, n * (n - 3) // 2)
    assert sum(split) == binomial(n, 2)
    return split


def pair_error_pieces(n: int, ch: str, k: int) -> dict[str, np.ndarray]:
    """Dense vectors realizing the pair-error decomposition on W_k.

    Returns the averaged image, the n-1 standard images built from
    sum_{s>=2} f_1s - sum_{s != r} f_rs, and the full list of f_rs W_k.
    """
    w = embed(DickeVector.basis(n, k))
    f = {}
    for r, s in combinations(range(1, n + 1), 2):
        f[(r, s)] = f[(s, r)] = apply(double(ch, r, s), w).amps
    avg = sum(f[(r, s)] for r, s in combinations(range(1, n + 1), 2)) / binomial(n, 2)
    std = []
    for r in range(2, n + 1):
        std.append(sum(f[(1, s)] for s in range(2, n + 1)) - sum(f[(r, s)] for s in range(1, n + 1) if s != r))
    return {"trivial": avg, "standard": np.array(std), "pairs": f}


def n4_combinations(ch: str = "Z") -> list[np.ndarray]:
    """The two explicit n = 4 pair-error combinations applied to W_2."""
    p = pair_error_pieces(4, ch, 2)["pairs"]
    c1 = 2 * p[(1, 2)] - p[(1, 3)] - p[(1, 4)] - p[(2, 3)] - p[(2, 4)] + 2 * p[(3, 4)]
    c2 = p[(1, 2)] + p[(1, 3)] - 2 * p[(1, 4)] - 2 * p[(2, 3)] + p[(2, 4)] + p[(3, 4)]
    return [c1, c2]


def spin_squared(n: int) -> np.ndarray:
    """Total S^2 with S_a = (1/2) sum_r sigma_a^(r), as a dense matrix."""
    s = [operator_matrix(average(ch, n), n) * (n / 2) for ch in "XYZ"]
    return sum(m @ m for m in s)


def spectral_verify(n: int, weights=None) -> bool:
    """S^2 eigenvalue multiplicities on each weight block match the irrep dims."""
    if n > 9:
        raise ValueError("spectral check is limited to n <= 9")
    s2 = spin_squared(n)
    w = popcounts(n)
    for k in range(n + 1) if weights is None else weights:
        idx = np.nonzero(w == k)[0]
        block = s2[np.ix_(idx, idx)]
        if np.max(np.abs(block - block.conj().T)) > SPECTRAL_TOL:
            return False
        ev = np.linalg.eigvalsh(block)
        for lab in decompose_weight_space(n, k):
            target = float(lab.spin * (lab.spin + 1))
            if int(np.sum(np.abs(ev - target) < SPECTRAL_TOL)) != lab.dim:
                return False
        expected = sum(lab.dim for lab in decompose_weight_space(n, k))
        if len(ev) != expected:
            return False
    return True
