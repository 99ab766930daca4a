"""Every explicit code, self-validated against the dense oracle at load.

Irrational coefficients are obtained by polishing a root of their defining
polynomial with mpmath at the requested decimal precision, then rounded.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import numpy as np

from .. import KL_TOL
from ..dicke import DickeCode, DickeVector
from ..kl import error_set, kl_matrices

DEFAULT_PRECISION = 50


class CatalogValidationError(RuntimeError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    code: DickeCode
    claimed_correctable: tuple[str, ...]
    provenance: str
    hp_c0: tuple  # mpmath coefficients of c0 against W_k
    annotations: tuple[str, ...] = ()
    polynomial_residuals: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.code.n

    def hp_words(self) -> tuple[list, list]:
        return list(self.hp_c0), list(self.hp_c0[::-1])


def _polish(poly: Callable, guess, name: str) -> tuple:
    root = mpmath.findroot(poly, mpmath.mpf(guess))
    resid = abs(poly(root))
    if resid > mpmath.mpf(10) ** (-mpmath.mp.dps + 10):
        raise CatalogValidationError(f"root polishing for {name} did not converge (|p| = {mpmath.nstr(resid, 5)})")
    return root, resid


def _entry(eid, n, even, claims, provenance, annotations=(), residuals=None) -> CatalogEntry:
    full = [mpmath.mpf(0)] * (n + 1)
    for m, v in enumerate(even):
        full[2 * m] = mpmath.mpmathify(v)
    a = np.array([complex(v) for v in full])
    code = DickeCode(DickeVector(n, a), DickeVector(n, a[::-1]))
    return CatalogEntry(eid, code, tuple(claims), provenance, tuple(full), tuple(annotations), residuals or {})


def _plain_entry(eid, n, c0, claims, provenance) -> CatalogEntry:
    a = np.array(c0, complex)
    code = DickeCode(DickeVector(n, a), DickeVector(n, a[::-1]))
    return CatalogEntry(eid, code, tuple(claims), provenance, tuple(mpmath.mpf(v) for v in c0))


def _build(precision: int) -> list[CatalogEntry]:
    entries = [
        _plain_entry("rep3", 3, [1, 0, 0, 0], ["bitflip-single", "same-type-doubles"], "repetition code W0 / W3"),
        _plain_entry("rep5", 5, [1, 0, 0, 0, 0, 0], ["x-single-all-doubles"], "repetition code W0 / W5"),
        _plain_entry(
            "phase5", 5, [1, 0, 1, 0, 1, 0], ["z-single-all-doubles"], "Hadamard image of rep5: W0+W2+W4 / W1+W3+W5"
        ),
    ]
    with mpmath.workdps(precision):
        # n = 7: a6 = 1, a4^2 = x with 125 x^3 + 5 x^2 - x - 1 = 0 (real root 1/5).
        cubic7 = lambda x: 125 * x**3 + 5 * x**2 - x - 1
        x7, r7 = _polish(cubic7, 0.2, "code7")
        for sign, eid in ((1, "code7_plus"), (-1, "code7_minus")):
            a4 = sign * mpmath.sqrt(x7)
            entries.append(
                _entry(
                    eid,
                    7,
                    [25 * a4**3, -mpmath.mpf(5) / 3 * x7, a4, 1],
                    ["onebit", "onebit+exchange", "same-type-doubles"],
                    f"n=7 one-bit code, {'+' if sign > 0 else '-'} branch (a0, a2, a4, a6) = ({'' if sign > 0 else '-'}sqrt(5), -1/3, {'' if sign > 0 else '-'}1/sqrt(5), 1)",
                    ("sqrt(5)", "1/sqrt(5)"),
                    {"125x^3+5x^2-x-1": r7},
                )
            )

        # n = 9, a2 = a4 = a8 = 0: a0^2 = 28 a6^2.
        r28, rr = _polish(lambda z: z**2 - 28, 5.3, "ruskai9")
        for sign, eid in ((1, "ruskai9_plus"), (-1, "ruskai9_minus")):
            entries.append(
                _entry(
                    eid,
                    9,
                    [sign * r28, 0, 0, 1, 0],
                    ["onebit", "onebit+exchange"],
                    "n=9 code with a0^2 = 28 a6^2 and a2 = a4 = a8 = 0",
                    ("sqrt(28)",),
                    {"z^2-28": rr},
                )
            )

        # n = 9, a2 = a6 = 0, a8 = 1: a0 = -35 a4^2, a4^2 = x with 175 x^2 + 2 x - 1 = 0.
        q = lambda x: 175 * x**2 + 2 * x - 1
        x9, rq = _polish(q, 0.07, "nine_a6zero")
        for sign, eid in ((1, "nine_a6zero"), (-1, "nine_a6zero_neg")):
            a4 = sign * mpmath.sqrt(x9)
            entries.append(
                _entry(
                    eid,
                    9,
                    [-35 * x9, 0, a4, 0, 1],
                    ["onebit"],
                    "n=9 a2 = a6 = 0 branch; a4^2 = (-1 + 4 sqrt(11))/175",
                    ("(-1+4*sqrt(11))/175",),
                    {"175x^2+2x-1": rq},
                )
            )

        # n = 9, a0 = 0, a8 = 1: a6^2 = t, a4 = 28t/5, a2 = -7 a4 a6.
        cubic = lambda t: (mpmath.mpf(28) ** 3 / 5) * t**3 + (2 * mpmath.mpf(28) ** 2 / 25) * t**2 - 4 * t - 1
        t9, rc = _polish(cubic, 0.06, "nine_a0zero")
        note = (
            "n=9 a0 = 0 branch; t = a6^2 solves (28^3/5) t^3 + (2*28^2/25) t^2 - 4 t - 1 = 0, t ~ "
            + mpmath.nstr(t9, 8)
            + ". A variant of this cubic with t^2 weight 2*28^2/5 (root ~0.0477) and a quoted root"
            " t ~ 0.478 (a slipped decimal place) both circulate; neither yields a code."
        )
        for sign, eid in ((1, "nine_a0zero"), (-1, "nine_a0zero_neg")):
            a6 = sign * mpmath.sqrt(t9)
            a4 = 28 * t9 / 5
            entries.append(
                _entry(eid, 9, [0, -7 * a4 * a6, a4, a6, 1], ["onebit"], note, ("t: real root of cubic",), {"cubic": rc})
            )
    return entries


def validate_entry(entry: CatalogEntry, tol: float = KL_TOL) -> dict[str, float]:
    """Run every claimed error set through the oracle; raise on the first failure."""
    out = {}
    for name in entry.claimed_correctable:
        rep = kl_matrices(entry.code, error_set(name, entry.n), tol)
        if not rep.correctable:
            raise CatalogValidationError(
                f"catalog entry {entry.id!r} fails claimed error set {name!r} (max violation {rep.max_violation():.3g})"
            )
        out[name] = rep.max_violation()
    return out


@lru_cache(maxsize=8)
def _catalog(precision: int, validate: bool) -> tuple[CatalogEntry, ...]:
    entries = _build(precision)
    if validate:
        for e in entries:
            validate_entry(e)
    return tuple(entries)


def catalog(precision: int = DEFAULT_PRECISION, validate: bool = True) -> list[CatalogEntry]:
    return list(_catalog(precision, validate))


def get_entry(eid: str, precision: int = DEFAULT_PRECISION) -> CatalogEntry:
    for e in catalog(precision):
        if e.id == eid:
            return e
    raise KeyError(f"unknown catalog id {eid!r}; known: {', '.join(e.id for e in catalog(precision))}")
