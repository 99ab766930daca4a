"""Permutationally invariant states in the compressed weight basis.

A DickeVector stores coefficients against the *unnormalized* vectors W_k,
the sum of all n-bit strings of Hamming weight k, so ||W_k||^2 = C(n, k).
The helpers here implement the exact action of averaged single errors,
the averaged double-Z error and the two-qubit difference errors, the last
mapping into the antisymmetric vectors V_k(r, s) (weight k+1 strings with
exactly one of bits r, s set, sign +1 when it is r and -1 when it is s).

Pauli Y is taken as [[0, i], [-i, 0]], so X + iY raises the weight.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import mpmath
import numpy as np

from . import ZERO_TOL
from .combinatorics import binomial


def _frozen(values, length: int | None = None) -> np.ndarray:
    arr = np.array(values, dtype=complex).reshape(-1)
    if length is not None and arr.shape[0] != length:
        raise ValueError(f"expected {length} coefficients, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    arr.setflags(write=False)
    return arr


def weight_norms(n: int) -> np.ndarray:
    """Squared norms C(n, k) of the W_k as floats."""
    return np.array([binomial(n, k) for k in range(n + 1)], dtype=float)


@dataclass(frozen=True)
class DickeVector:
    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "coeffs", _frozen(self.coeffs, self.n + 1))

    @classmethod
    def basis(cls, n: int, k: int) -> DickeVector:
        c = np.zeros(n + 1, complex)
        c[k] = 1
        return cls(n, c)

    @classmethod
    def from_hat(cls, n: int, hat) -> DickeVector:
        """Build from coefficients against the normalized W_k / sqrt(C(n,k))."""
        return cls(n, np.asarray(hat, complex) / np.sqrt(weight_norms(n)))

    def hat(self) -> np.ndarray:
        return self.coeffs * np.sqrt(weight_norms(self.n))

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2 * weight_norms(self.n)))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq()))

    def normalized(self) -> DickeVector:
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero vector")
        return DickeVector(self.n, self.coeffs / nrm)

    def inner(self, other: DickeVector) -> complex:
        """<self, other>, antilinear in self."""
        _same_n(self, other)
        return complex(np.sum(np.conj(self.coeffs) * other.coeffs * weight_norms(self.n)))

    def __add__(self, other: DickeVector) -> DickeVector:
        _same_n(self, other)
        return DickeVector(self.n, self.coeffs + other.coeffs)

    def __sub__(self, other: DickeVector) -> DickeVector:
        _same_n(self, other)
        return DickeVector(self.n, self.coeffs - other.coeffs)

    def __mul__(self, scalar: complex) -> DickeVector:
        return DickeVector(self.n, self.coeffs * scalar)

    __rmul__ = __mul__


def _same_n(u, v) -> None:
    if u.n != v.n:
        raise ValueError(f"qubit counts differ: {u.n} vs {v.n}")


@dataclass(frozen=True)
class DickeCode:
    """A two-word code; the condition flags are computed, not supplied."""

    c0: DickeVector
    c1: DickeVector
    tol: float = ZERO_TOL
    satisfies_I: bool = field(init=False)
    satisfies_II: bool = field(init=False)

    def __post_init__(self):
        _same_n(self.c0, self.c1)
        if self.n % 2 == 0:
            raise ValueError("codes are defined for odd n")
        a, b = self.c0.coeffs, self.c1.coeffs
        scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-300)
        cond_I = bool(np.max(np.abs(b - a[::-1])) <= self.tol * scale)
        ks = np.arange(self.n + 1)
        cond_II = bool(
            np.max(np.abs(a[ks % 2 == 1]), initial=0.0) <= self.tol * scale
            and np.max(np.abs(b[ks % 2 == 0]), initial=0.0) <= self.tol * scale
        )
        object.__setattr__(self, "satisfies_I", cond_I)
        object.__setattr__(self, "satisfies_II", cond_II)
        overlap = abs(self.c0.inner(self.c1))
        if overlap > self.tol * max(self.c0.norm() * self.c1.norm(), 1e-300):
            raise ValueError(f"code words are not orthogonal (overlap {overlap:.3g})")

    @property
    def n(self) -> int:
        return self.c0.n

    @classmethod
    def from_even(cls, n: int, even_coeffs: Sequence[complex]) -> DickeCode:
        """Code obeying conditions I and II from (a_0, a_2, ..., a_{n-1})."""
        return cls.from_full(n, expand_even(n, even_coeffs))

    @classmethod
    def from_full(cls, n: int, a: Sequence[complex]) -> DickeCode:
        """Code with c0 = sum a_k W_k and c1 its bitwise complement (condition I)."""
        a = np.asarray(a, complex)
        return cls(DickeVector(n, a), DickeVector(n, a[::-1]))

    def normalized(self) -> DickeCode:
        return DickeCode(self.c0.normalized(), self.c1.normalized(), self.tol)

    def even_coeffs(self) -> np.ndarray:
        if not self.satisfies_II:
            raise ValueError("code does not satisfy condition II")
        return np.array(self.c0.coeffs[::2])


def expand_even(n: int, even_coeffs: Sequence[complex]) -> np.ndarray:
    """Place (a_0, a_2, ...) into a length n+1 array with zeros at odd k."""
    if n % 2 == 0:
        raise ValueError("n must be odd")
    even = np.asarray(even_coeffs, complex)
    if even.shape[-1] != (n + 1) // 2:
        raise ValueError(f"need {(n + 1) // 2} even-weight coefficients for n={n}")
    out = np.zeros(even.shape[:-1] + (n + 1,), complex)
    out[..., ::2] = even
    return out


@dataclass(frozen=True)
class VExpansion:
    """sum_k coeffs[k] V_k(r, s) for k = 0..n-2."""

    n: int
    coeffs: np.ndarray
    r: int
    s: int

    def __post_init__(self):
        if self.r == self.s:
            raise ValueError("V_k(r, s) needs r != s")
        for q in (self.r, self.s):
            if not 1 <= q <= self.n:
                raise ValueError(f"qubit index {q} outside 1..{self.n}")
        object.__setattr__(self, "coeffs", _frozen(self.coeffs, self.n - 1))


# ---- average errors -------------------------------------------------------


def apply_avg_Z(v: DickeVector) -> DickeVector:
    n = v.n
    k = np.arange(n + 1)
    return DickeVector(n, v.coeffs * (n - 2 * k) / n)


def _raise_lower(v: DickeVector) -> tuple[np.ndarray, np.ndarray]:
    # Contributions (k+1) W_{k+1} and (n-k+1) W_{k-1} of n X-bar W_k, split.
    n = v.n
    up = np.zeros(n + 1, complex)
    down = np.zeros(n + 1, complex)
    k = np.arange(n + 1)
    up[1:] = ((k + 1) * v.coeffs)[:-1]
    down[:-1] = ((n - k + 1) * v.coeffs)[1:]
    return up, down


def apply_avg_X(v: DickeVector) -> DickeVector:
    up, down = _raise_lower(v)
    return DickeVector(v.n, (up + down) / v.n)


def apply_avg_Y(v: DickeVector) -> DickeVector:
    up, down = _raise_lower(v)
    return DickeVector(v.n, -1j * (up - down) / v.n)


def zz_eigenvalue(n: int, k: int) -> Fraction:
    """Eigenvalue of the pair-averaged Z_r Z_s on W_k."""
    return Fraction((n - 2 * k) ** 2 - n, n * (n - 1))


def apply_avg_ZZ(v: DickeVector) -> DickeVector:
    n = v.n
    if n < 2:
        raise ValueError("double errors need n >= 2")
    lam = np.array([float(zz_eigenvalue(n, k)) for k in range(n + 1)])
    return DickeVector(n, v.coeffs * lam)


# ---- difference errors ----------------------------------------------------

DIFFERENCE_KINDS = ("Z", "X", "iY", "X_plus_iY", "X_minus_iY")


def difference_action(which: str, v: DickeVector, r: int, s: int) -> VExpansion:
    """Expansion of (P_r - P_s) v over V_k(r, s); "iY" means i(Y_r - Y_s)."""
    if r == s:
        raise ValueError("difference errors need r != s")
    n = v.n
    a = np.concatenate([v.coeffs, np.zeros(2, complex)])
    j = np.arange(n - 1)
    if which == "Z":
        out = -2 * a[j + 1]
    elif which == "X":
        out = a[j] - a[j + 2]
    elif which == "iY":
        out = a[j] + a[j + 2]
    elif which == "X_plus_iY":
        out = 2 * a[j]
    elif which == "X_minus_iY":
        out = -2 * a[j + 2]
    else:
        raise ValueError(f"unknown difference kind {which!r}; expected one of {DIFFERENCE_KINDS}")
    return VExpansion(n, out, r, s)


def v_overlap(n: int, k: int, pair1: tuple[int, int], pair2: tuple[int, int]) -> int:
    """<V_k(r,s), V_k(q,t)> as an exact integer."""
    (r, s), (q, t) = pair1, pair2
    if r == s or q == t:
        raise ValueError("V_k(r, s) needs r != s")
    base = binomial(n - 2, k)
    if (r, s) == (q, t):
        return 2 * base
    if (r, s) == (t, q):
        return -2 * base
    if r == q or s == t:
        return base
    if r == t or s == q:
        return -base
    return 0  # disjoint pairs: a transposition of q, t flips only one side


def v_inner_product(e1: VExpansion, e2: VExpansion) -> complex:
    _same_n(e1, e2)
    n = e1.n
    w = np.array([v_overlap(n, k, (e1.r, e1.s), (e2.r, e2.s)) for k in range(n - 1)], float)
    return complex(np.sum(np.conj(e1.coeffs) * e2.coeffs * w))


def z1_weighted_inner(k: int, n: int) -> Fraction:
    """<Z_1 V_k(1,s), V_k(1,t)> for distinct s, t != 1."""
    if n < 3 or not 0 <= k <= n - 2:
        raise ValueError(f"need n >= 3 and 0 <= k <= n-2, got n={n}, k={k}")
    return Fraction(2 * k + 2 - n, n - 2) * binomial(n - 2, k)


# ---- code files -----------------------------------------------------------


def _fmt(x, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits, strip_zeros=False, min_fixed=-5, max_fixed=5)


def _coeff_list(values, digits: int) -> list[dict]:
    out = []
    for k, z in enumerate(values):
        z = mpmath.mpc(z)
        if z == 0:
            continue
        out.append({"k": k, "re": _fmt(z.real, digits), "im": _fmt(z.imag, digits)})
    return out


def code_to_dict(code: DickeCode, annotations: Sequence[str] = (), hp=None, digits: int = 30) -> dict:
    """Serializable form storing the unit-normalized words in the W_k basis.

    ``hp`` may carry high-precision (mpmath) coefficient lists (c0, c1); they
    are normalized here at the current mpmath precision.
    """
    if hp is None:
        c = code.normalized()
        words = [c.c0.coeffs, c.c1.coeffs]
    else:
        words = []
        for coeffs in hp:
            nsq = mpmath.fsum(abs(mpmath.mpc(z)) ** 2 * binomial(code.n, k) for k, z in enumerate(coeffs))
            words.append([mpmath.mpc(z) / mpmath.sqrt(nsq) for z in coeffs])
    return {
        "n": code.n,
        "basis": "W",
        "c0": _coeff_list(words[0], digits),
        "c1": _coeff_list(words[1], digits),
        "annotations": list(annotations),
    }


def code_from_dict(data: dict) -> DickeCode:
    n = int(data["n"])
    if data.get("basis", "W") != "W":
        raise ValueError("only the W basis is supported")

    def parse(entries) -> np.ndarray:
        c = np.zeros(n + 1, complex)
        for e in entries:
            k = int(e["k"])
            if not 0 <= k <= n:
                raise ValueError(f"weight {k} outside 0..{n}")
            c[k] += complex(float(mpmath.mpf(e.get("re", "0"))), float(mpmath.mpf(e.get("im", "0"))))
        return c

    a = parse(data["c0"])
    b = parse(data["c1"]) if "c1" in data else a[::-1].copy()
    return DickeCode(DickeVector(n, a), DickeVector(n, b))


def write_code_file(path: str | Path, code: DickeCode, annotations: Sequence[str] = (), hp=None) -> None:
    Path(path).write_text(json.dumps(code_to_dict(code, annotations, hp), indent=2) + "\n")


def read_code_file(path: str | Path) -> DickeCode:
    try:
        data = json.loads(Path(path).read_text())
        return code_from_dict(data)
    except (json.JSONDecodeError, TypeError, KeyError, AttributeError) as exc:
        raise ValueError(f"cannot parse code file {path}: {exc!r}") from exc
