"""Correctability conditions as exact quadratic forms in the weight coefficients.

Every form is a rational combination of terms conj(a_i) a_j ("cross"),
Re(conj(a_i) a_j) ("re") or Im(conj(a_i) a_j) ("im"), with indices over
the full weight range 0..n. The systems are generated from general-n
coefficient formulas; fixed-n displays only appear in the test fixtures.

Functions taking coefficients accept either the even-weight array
(a_0, a_2, ..., a_{n-1}) of a code obeying conditions I and II, or the
full length n+1 array.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np

from . import ENGINE_TOL
from .combinatorics import binomial
from .dicke import expand_even

KINDS = ("cross", "re", "im")


def _canon(kind: str, i: int, j: int) -> tuple[tuple[str, int, int], int]:
    # Re(conj(a_i) a_j) is symmetric in i, j and Im is antisymmetric.
    if kind == "cross" or i <= j:
        return (kind, i, j), 1
    return (kind, j, i), (1 if kind == "re" else -1)


@dataclass(frozen=True)
class QuadraticForm:
    terms: tuple[tuple[str, int, int, Fraction], ...]

    @classmethod
    def build(cls, items) -> QuadraticForm:
        """Merge (kind, i, j, weight) items into canonical, sorted terms."""
        acc: dict[tuple[str, int, int], Fraction] = {}
        for kind, i, j, w in items:
            if kind not in KINDS:
                raise ValueError(f"unknown term kind {kind!r}")
            key, sign = _canon(kind, i, j)
            if key[0] == "im" and key[1] == key[2]:
                continue
            acc[key] = acc.get(key, Fraction(0)) + sign * Fraction(w)
        return cls(tuple((k, i, j, w) for (k, i, j), w in sorted(acc.items()) if w != 0))

    def is_zero(self) -> bool:
        return not self.terms

    def indices(self) -> set[int]:
        return {i for _, i, _, _ in self.terms} | {j for _, _, j, _ in self.terms}

    def scale(self, c) -> QuadraticForm:
        return QuadraticForm.build((k, i, j, w * Fraction(c)) for k, i, j, w in self.terms)

    def __add__(self, other: QuadraticForm) -> QuadraticForm:
        return QuadraticForm.build(self.terms + other.terms)

    def __sub__(self, other: QuadraticForm) -> QuadraticForm:
        return self + other.scale(-1)

    def real_part(self) -> QuadraticForm:
        return QuadraticForm.build(("im" if k == "im" else "re", i, j, w) for k, i, j, w in self.terms)

    def imag_part(self) -> QuadraticForm:
        """Im of the form; "re"/"im" terms are already real and drop out."""
        return QuadraticForm.build(("im", i, j, w) for k, i, j, w in self.terms if k == "cross")

    def even_only(self) -> QuadraticForm:
        """Drop terms touching odd weights (absent under condition II)."""
        return QuadraticForm(tuple(t for t in self.terms if t[1] % 2 == 0 and t[2] % 2 == 0))

    def primitive(self) -> QuadraticForm:
        """Rescaled by a positive rational so the weights are coprime integers."""
        if self.is_zero():
            return self
        num = reduce(gcd, (abs(w.numerator) for *_, w in self.terms))
        den = reduce(lcm, (w.denominator for *_, w in self.terms))
        return self.scale(Fraction(den, num))

    def proportional_to(self, other: QuadraticForm) -> Fraction | None:
        """The rational c with self == c * other, or None."""
        if self.is_zero() or other.is_zero():
            return Fraction(0) if self.is_zero() and other.is_zero() else None
        if [t[:3] for t in self.terms] != [t[:3] for t in other.terms]:
            return None
        c = self.terms[0][3] / other.terms[0][3]
        if all(a[3] == c * b[3] for a, b in zip(self.terms, other.terms)):
            return c
        return None

    def real_specialization(self) -> dict[tuple[int, int], Fraction]:
        """Monomial weights {(i, j): w}, i <= j, after setting every a_k real."""
        out: dict[tuple[int, int], Fraction] = {}
        for kind, i, j, w in self.terms:
            if kind == "im":
                continue
            key = (min(i, j), max(i, j))
            out[key] = out.get(key, Fraction(0)) + w
        return {k: v for k, v in out.items() if v != 0}

    def evaluate(self, a: np.ndarray) -> np.ndarray:
        """Value on full coefficient arrays of shape (..., n+1)."""
        a = np.asarray(a, complex)
        out = np.zeros(a.shape[:-1], complex)
        for kind, i, j, w in self.terms:
            prod = np.conj(a[..., i]) * a[..., j]
            if kind == "re":
                prod = prod.real
            elif kind == "im":
                prod = prod.imag
            out = out + float(w) * prod
        return out

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for kind, i, j, w in self.terms:
            mono = f"conj(a{i})*a{j}" if kind == "cross" else f"{kind.capitalize()}(conj(a{i})*a{j})"
            if kind == "re" and i == j:
                mono = f"|a{i}|^2"
            coef = "" if abs(w) == 1 else f"{abs(w)}*"
            parts.append(("-" if w < 0 else "+") + " " + coef + mono)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def format_real_polynomial(form: QuadraticForm) -> str:
    """The real specialization written as an integer polynomial, e.g. 'a2*a4'."""
    mono = form.real_specialization()
    if not mono:
        return "0"
    parts = []
    for (i, j), w in sorted(mono.items()):
        m = f"a{i}^2" if i == j else f"a{i}*a{j}"
        coef = "" if abs(w) == 1 else f"{abs(w)}*"
        parts.append(("-" if w < 0 else "+") + " " + coef + m)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# ---- general-n generators -------------------------------------------------

WEIGHTS: dict[str, Callable[[int, int], int]] = {
    "I": lambda n, k: 1,
    "Z": lambda n, k: n - 2 * k,
    "ZZ": lambda n, k: (n - 2 * k) ** 2 - n,
}


def raise_form(n: int, f: str = "I") -> QuadraticForm:
    """n <f c0, (Xbar + i Ybar) c1>, scaled so f = Z, ZZ carry integer weights.

    f = Z is multiplied by n and f = ZZ by n(n-1); with c1 the complement of c0
    this is 2 sum_k w_f(k) k C(n,k) conj(a_k) a_{n-k+1}.
    """
    w = WEIGHTS[f]
    return QuadraticForm.build(
        ("cross", k, n - k + 1, 2 * w(n, k) * k * binomial(n, k)) for k in range(1, n + 1)
    )


def lower_form(n: int, f: str = "I") -> QuadraticForm:
    """Counterpart of raise_form for (Xbar - i Ybar): weights (n-k) C(n,k) on conj(a_k) a_{n-k-1}."""
    w = WEIGHTS[f]
    return QuadraticForm.build(
        ("cross", k, n - k - 1, 2 * w(n, k) * (n - k) * binomial(n, k)) for k in range(n)
    )


def diagonal_form(n: int, f: str = "Z") -> QuadraticForm:
    """sum_k |a_k|^2 w(k) C(n,k); "Z" gives n <c, Zbar c>, "ZZ" the Z-ZZ overlap."""
    if f == "Z":
        return QuadraticForm.build(("re", k, k, (n - 2 * k) * binomial(n, k)) for k in range(n + 1))
    if f == "ZZ":
        return QuadraticForm.build(
            ("re", k, k, (n - 2 * k) * ((n - 2 * k) ** 2 - n) * binomial(n, k)) for k in range(n + 1)
        )
    raise ValueError(f"unknown diagonal form {f!r}")


def xy_form(n: int) -> QuadraticForm:
    """sum_k Im(conj(a_{k+1}) a_{k-1}) C(n-2, k-1): the Im <Xbar c, i Ybar c> condition."""
    return QuadraticForm.build(("im", k + 1, k - 1, binomial(n - 2, k - 1)) for k in range(1, n))


def block_phase_form(n: int) -> QuadraticForm:
    """sum_k |a_k|^2 (2k-n)/(n-2) C(n-2,k-1), the Z-difference versus Z_1 Z_s block term."""
    return QuadraticForm.build(
        ("re", k, k, Fraction(2 * k - n, n - 2) * binomial(n - 2, k - 1)) for k in range(n + 1)
    )


# ---- systems and residuals ------------------------------------------------


@dataclass(frozen=True)
class ConditionSystem:
    name: str
    n: int
    equations: tuple[tuple[str, QuadraticForm], ...]

    @property
    def names(self) -> list[str]:
        return [nm for nm, _ in self.equations]

    def form(self, name: str) -> QuadraticForm:
        for nm, f in self.equations:
            if nm == name:
                return f
        raise KeyError(name)

    def subset(self, names: Sequence[str]) -> ConditionSystem:
        return ConditionSystem(self.name, self.n, tuple((nm, self.form(nm)) for nm in names))

    def evaluate(self, a: np.ndarray) -> np.ndarray:
        """Residuals with shape (..., len(equations)) for even-weight or full arrays."""
        a_full = as_full(self.n, a)
        return np.stack([f.evaluate(a_full) for _, f in self.equations], axis=-1)

    def residual(self, a) -> ConditionResidual:
        a_full = as_full(self.n, a)
        return ConditionResidual(self.name, self.names, self.evaluate(a_full), norm_sq(self.n, a_full))


@dataclass(frozen=True)
class ConditionResidual:
    system: str
    names: list[str]
    values: np.ndarray
    norm_sq: float
    max_abs: float = field(init=False)
    max_scale_free: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "max_abs", float(np.max(np.abs(self.values), initial=0.0)))
        sf = self.max_abs / self.norm_sq if self.norm_sq > 0 else 0.0
        object.__setattr__(self, "max_scale_free", sf)

    @property
    def scale_free(self) -> np.ndarray:
        return self.values / self.norm_sq if self.norm_sq > 0 else np.zeros_like(self.values)

    def value(self, name: str) -> complex:
        return complex(self.values[self.names.index(name)])

    def passes(self, tol: float = ENGINE_TOL) -> bool:
        return self.max_scale_free <= tol

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "residuals": {
                nm: {"re": float(v.real), "im": float(v.imag), "scale_free": float(abs(v) / self.norm_sq) if self.norm_sq else 0.0}
                for nm, v in zip(self.names, self.values)
            },
            "max_abs": self.max_abs,
            "max_scale_free": self.max_scale_free,
        }


def as_full(n: int, a) -> np.ndarray:
    a = np.asarray(a, complex)
    if a.shape[-1] == n + 1:
        return a
    return expand_even(n, a)


def norm_sq(n: int, a_full: np.ndarray) -> float | np.ndarray:
    """Squared norm sum_k |a_k|^2 C(n,k) of c0."""
    w = np.array([binomial(n, k) for k in range(n + 1)], float)
    out = np.sum(np.abs(a_full) ** 2 * w, axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def _odd(n: int) -> None:
    if n % 2 == 0 or n < 3:
        raise ValueError(f"condition systems need odd n >= 3, got {n}")


def theorem1_system(n: int) -> ConditionSystem:
    """The three one-bit conditions for real coefficients under conditions I, II."""
    _odd(n)
    eqs = (
        ("sum", raise_form(n).real_part().scale(Fraction(1, 2))),
        ("diff", lower_form(n).real_part().scale(Fraction(1, 2))),
        ("zbar", diagonal_form(n, "Z")),
    )
    return ConditionSystem("one-bit-real", n, tuple((nm, f.even_only()) for nm, f in eqs))


def appendixC_system(n: int) -> ConditionSystem:
    """The complete one-bit system for complex coefficients under conditions I, II."""
    _odd(n)
    eqs = (
        ("sum.re.a", raise_form(n).real_part().scale(Fraction(1, 2))),
        ("sum.re.b", lower_form(n).real_part().scale(Fraction(1, 2))),
        ("sum.im", raise_form(n, "Z").imag_part().scale(Fraction(1, 4))),
        ("diff.im", lower_form(n, "Z").imag_part().scale(Fraction(1, 4))),
        ("IZcomp", diagonal_form(n, "Z")),
        ("XYcomp", xy_form(n)),
    )
    return ConditionSystem("one-bit-complex", n, tuple((nm, f.even_only()) for nm, f in eqs))


def _is_real(a) -> bool:
    return not np.iscomplexobj(a) or bool(np.all(np.asarray(a).imag == 0))


def theorem1_residuals(n: int, a) -> ConditionResidual:
    """One-bit residuals; complex input is routed to the complex system."""
    if not _is_real(a):
        return appendixC_residuals(n, a)
    return theorem1_system(n).residual(a)


def specialize_theorem1(n: int) -> list[str]:
    """The real one-bit conditions as primitive integer polynomials."""
    return [format_real_polynomial(f.primitive()) for _, f in theorem1_system(n).equations]


def appendixC_residuals(n: int, a) -> ConditionResidual:
    return appendixC_system(n).residual(a)


def seven_bit_complex_system() -> ConditionSystem:
    """The n = 7 complex one-bit system in its expanded six-equation display form."""
    c = appendixC_system(7)
    return ConditionSystem(
        "seven-bit-complex",
        7,
        tuple((nm, f.primitive()) for nm, f in c.equations),
    )


def phase_double_system(n: int) -> ConditionSystem:
    _odd(n)
    return ConditionSystem(
        "phase-single-double", n, (("IZ", diagonal_form(n, "Z")), ("Z-ZZ", diagonal_form(n, "ZZ")))
    )


def phase_double_residuals(n: int, a) -> ConditionResidual:
    return phase_double_system(n).residual(a)


def block_redundancy_identity(n: int) -> bool:
    """Exact check: 4n(n-1)(n-2) * block form == Z-ZZ form - (n^2 - n) * IZ form."""
    lhs = block_phase_form(n).scale(4 * n * (n - 1) * (n - 2))
    rhs = diagonal_form(n, "ZZ") - diagonal_form(n, "Z").scale(n * n - n)
    return (lhs - rhs).is_zero()


def block_redundancy_check(n: int, a, tol: float = ENGINE_TOL) -> bool:
    """The Z-block condition vanishes on ``a`` and is an exact consequence of the phase system."""
    _odd(n)
    a_full = as_full(n, a)
    val = abs(complex(block_phase_form(n).evaluate(a_full)))
    nrm = norm_sq(n, a_full)
    return block_redundancy_identity(n) and (val <= tol * nrm if nrm > 0 else True)


def double_z_system(n: int) -> ConditionSystem:
    """One-bit plus all double-Z conditions for general odd n (raw generator forms)."""
    _odd(n)
    eqs = [(f"raise.{f}", raise_form(n, f)) for f in ("I", "Z", "ZZ")]
    eqs += [(f"lower.{f}", lower_form(n, f)) for f in ("I", "Z", "ZZ")]
    eqs += [("IZ", diagonal_form(n, "Z")), ("Z-ZZ", diagonal_form(n, "ZZ")), ("XY", xy_form(n))]
    return ConditionSystem("double-z", n, tuple(eqs))


NINE_BIT_NAMES = ("dbp.a", "dbp.b", "dbp.c", "eqa6alt.a", "eqa6alt.b", "dbm.alt.c", "dZZa", "dbIZZ", "ImXY")


def nine_bit_double_system() -> ConditionSystem:
    """The nine n = 9 double-Z conditions in reduced form.

    The raising group is kept as three complex equations; the lowering group
    is replaced by the equivalent pair Re(conj(a0) a8) = (35/3)|a4|^2,
    Re(conj(a2) a6) = -(5/3)|a4|^2 plus one imaginary-part equation.
    """
    g = double_z_system(9)
    g = ConditionSystem(g.name, 9, tuple((nm, f.even_only()) for nm, f in g.equations))
    lo = [g.form(f"lower.{f}").primitive() for f in ("I", "Z", "ZZ")]
    re_a, re_c = lo[0].real_part(), lo[2].real_part()
    eqs = [
        ("dbp.a", g.form("raise.I").primitive()),
        ("dbp.b", g.form("raise.Z").primitive()),
        ("dbp.c", g.form("raise.ZZ").primitive()),
        ("eqa6alt.a", (re_c - re_a).scale(Fraction(1, 12))),
        ("eqa6alt.b", (re_a.scale(7) - re_c).scale(Fraction(1, 336))),
        ("dbm.alt.c", lo[1].imag_part().primitive()),
        ("dZZa", g.form("IZ").primitive()),
        ("dbIZZ", g.form("Z-ZZ").primitive()),
        ("ImXY", g.form("XY").primitive().scale(-1)),
    ]
    return ConditionSystem("nine-bit-double-z", 9, tuple(eqs))


def nine_bit_double_residuals(a) -> ConditionResidual:
    return nine_bit_double_system().residual(a)


# Alias under the documented operation name.
nine_bit_double_system_residuals = nine_bit_double_residuals


def dbp_equivalence(a, tol: float = ENGINE_TOL) -> complex | None:
    """nu with conj(a2) a8 = -i nu and conj(a4) a6 = (3/7) i nu, or None.

    Returns None when the raising group fails or nu is not real (both scale-free).
    """
    a_full = as_full(9, a)
    nrm = norm_sq(9, a_full)
    if nrm == 0:
        return 0.0
    res = nine_bit_double_system().subset(["dbp.a", "dbp.b", "dbp.c"]).residual(a_full)
    if not res.passes(tol):
        return None
    nu = 1j * np.conj(a_full[2]) * a_full[8]
    nu_alt = -1j * (7 / 3) * np.conj(a_full[4]) * a_full[6]
    if abs(nu.imag) > tol * nrm or abs(nu - nu_alt) > tol * nrm:
        return None
    return float(nu.real)
