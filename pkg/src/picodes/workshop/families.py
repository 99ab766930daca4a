"""Explicit 9-qubit code families.

Real one-bit family: gauge a8 = 1, a4 = t, x = a6^2 solving
    5488 t^2 x^2 + 4(-490 t^3 + 35 t^2 - 1) x + (175 t^4 + 2 t^2 - 1) = 0,
then a6 = s sqrt(x), a2 = -7 s sqrt(x) t, a0 = 7(28 t x - 5 t^2).

Complex double-Z family: gauge a8 = 1, a4 = -x + i y with x > 0, which
solves the raising and lowering double-Z groups for every (x, y).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import ZERO_TOL
from ..conditions import nine_bit_double_system, theorem1_residuals

SQRT35 = np.sqrt(35.0)
DOUBLE_GROUPS = ("dbp.a", "dbp.b", "dbp.c", "eqa6alt.a", "eqa6alt.b", "dbm.alt.c")


def family_quadratic(t: float) -> tuple[float, float, float]:
    """Coefficients (A, B, C) of A x^2 + B x + C in x = a6^2."""
    return 5488 * t**2, 4 * (-490 * t**3 + 35 * t**2 - 1), 175 * t**4 + 2 * t**2 - 1


def _positive_roots(A: float, B: float, C: float) -> list[float]:
    if A == 0:
        return [-C / B] if B != 0 and -C / B > 0 else []
    disc = B * B - 4 * A * C
    if disc < 0:
        return []
    # Cancellation-free pair of roots.
    q = -0.5 * (B + np.copysign(np.sqrt(disc), B))
    roots = {q / A, C / q} if q != 0 else {-B / (2 * A)}
    return sorted(r for r in roots if r > 0)


def solve_nine_family(t: float, tol: float = ZERO_TOL) -> list[np.ndarray]:
    """Real one-bit codes (a0, a2, a4, a6, a8) with a4 = t, a8 = 1; empty if none."""
    if t == 0:
        raise ValueError("the family is parametrized by a4 = t != 0")
    out = []
    for x in _positive_roots(*family_quadratic(t)):
        for s in (1.0, -1.0):
            a6 = s * np.sqrt(x)
            a = np.array([7 * (28 * t * x - 5 * t**2), -7 * a6 * t, t, a6, 1.0])
            res = theorem1_residuals(9, a)
            if res.max_scale_free > tol:
                raise RuntimeError(f"family solution at t={t} misses the one-bit conditions ({res.max_scale_free:.3g})")
            out.append(a)
    return out


def printed_cubic(t):
    """The defining cubic for the a0 = 0 branch as typeset in the source derivation."""
    return (28**3 / 5) * t**3 + (2 * 28**2 / 5) * t**2 - 4 * t - 1


def corrected_cubic(t):
    """The a0 = 0 cubic re-derived from the one-bit conditions (t^2 weight 2*28^2/25)."""
    return (28**3 / 5) * t**3 + (2 * 28**2 / 25) * t**2 - 4 * t - 1


@dataclass(frozen=True)
class NineBitFamilyPoint:
    x: float
    y: float
    branch_sign: int
    coeffs: np.ndarray  # (a0, a2, a4, a6, a8)

    @property
    def nu(self) -> float:
        return float((self.coeffs[1] / 1j).real)

    @property
    def a4_sq(self) -> float:
        return self.x**2 + self.y**2


def family_coeffs(x, y, sign: int = 1) -> np.ndarray:
    """Vectorized family coefficients, shape broadcast(x, y) + (5,)."""
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    a4 = -x + 1j * y
    m = x**2 + y**2
    nu = sign * SQRT35 / 3 * m / np.sqrt(x)
    return np.stack(
        [35 / 3 * (1 + 2j * y / x) * m, 1j * nu, a4, sign * 1j * SQRT35 / 7 * a4 / np.sqrt(x), np.ones_like(a4)],
        axis=-1,
    )


def nine_family_point(x: float, y: float, sign: int = 1, tol: float = ZERO_TOL) -> NineBitFamilyPoint:
    if not x > 0:
        raise ValueError("the family needs x = -Re(a4) > 0")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    a = family_coeffs(x, y, sign)
    res = nine_bit_double_system().subset(DOUBLE_GROUPS).residual(a)
    if res.max_scale_free > tol:
        raise RuntimeError(f"family point ({x}, {y}) misses the double-Z groups ({res.max_scale_free:.3g})")
    return NineBitFamilyPoint(float(x), float(y), sign, a)


def family_bracket(x, y):
    """(35/3)|a4|^2 + 21 x + 15 + 35 |a4|^2 / (3 nu^2); ImXY equals nu times this on the family."""
    m = np.asarray(x) ** 2 + np.asarray(y) ** 2
    nu2 = 35 / 9 * m**2 / np.asarray(x)
    return 35 / 3 * m + 21 * np.asarray(x) + 15 + 35 * m / (3 * nu2)
