"""Knill-Laflamme Gram matrices over an error set, via the dense oracle.

For normalized code words c_0, c_1 and errors e_p the report holds
D^ii_pq = <e_p c_i, e_q c_i> and B_pq = <e_p c_0, e_q c_1>. The set is
correctable iff B = 0 and D^00 = D^11 entrywise.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import KL_TOL, ZERO_TOL
from .dicke import DickeCode
from .full_space import (
    ErrorOp,
    apply_many,
    average,
    difference,
    double,
    embed,
    exchange,
    identity,
    pauli,
    pauli_word,
)


@dataclass(frozen=True)
class SignClass:
    """Commutation signs: e (xZ) = eps_Z (xZ) e and e (xX) = eps_X (xX) e."""

    eps_Z: int
    eps_X: int


def sign_class(op: ErrorOp) -> SignClass:
    signs = set()
    for _, prim in op.terms:
        if prim.kind == "pauli":
            letters = [c for c, _ in prim.word]
            ez = (-1) ** sum(c in "XY" for c in letters)
            ex = (-1) ** sum(c in "YZ" for c in letters)
            signs.add((ez, ex))
        else:  # E, F, G, H are combinations of II, XX, YY, ZZ
            signs.add((1, 1))
    if len(signs) != 1:
        raise ValueError(f"operator {op.label!r} mixes commutation classes")
    return SignClass(*signs.pop())


@dataclass(frozen=True)
class Violation:
    matrix: str
    p: int
    q: int
    magnitude: float
    rule: str = "KL"


@dataclass
class KLReport:
    error_labels: list[str]
    D00: np.ndarray
    D11: np.ndarray
    B: np.ndarray
    tol: float
    sectors: list[str] = field(default_factory=list)
    classes: list[SignClass | None] = field(default_factory=list)
    violations: list[Violation] = field(init=False)
    correctable: bool = field(init=False)

    def __post_init__(self):
        self.violations = _kl_violations(self.B, self.D00 - self.D11, self.tol)
        self.correctable = not self.violations

    def max_violation(self) -> float:
        return max(float(np.max(np.abs(self.B))), float(np.max(np.abs(self.D00 - self.D11))))

    def restricted(self, keep: Sequence[int]) -> KLReport:
        """Sub-report over the errors at positions ``keep`` (in that order)."""
        ix = np.ix_(keep, keep)
        return KLReport(
            [self.error_labels[i] for i in keep],
            self.D00[ix],
            self.D11[ix],
            self.B[ix],
            self.tol,
            [self.sectors[i] for i in keep] if self.sectors else [],
            [self.classes[i] for i in keep] if self.classes else [],
        )

    def to_dict(self) -> dict:
        def mat(m):
            return {"re": np.round(m.real, 15).tolist(), "im": np.round(m.imag, 15).tolist()}

        return {
            "error_labels": list(self.error_labels),
            "tol": self.tol,
            "correctable": self.correctable,
            "max_violation": self.max_violation(),
            "violations": [
                {"matrix": v.matrix, "p": self.error_labels[v.p], "q": self.error_labels[v.q], "magnitude": v.magnitude}
                for v in self.violations
            ],
            "D00": mat(self.D00),
            "D11": mat(self.D11),
            "B": mat(self.B),
        }


def _kl_violations(B: np.ndarray, dD: np.ndarray, tol: float) -> list[Violation]:
    out = []
    for name, m in (("B", B), ("D00-D11", dD)):
        mag = np.abs(m)
        for p, q in zip(*np.nonzero(mag > tol)):
            out.append(Violation(name, int(p), int(q), float(mag[p, q])))
    return out


def errored_words(code: DickeCode, errors: Sequence[ErrorOp]) -> np.ndarray:
    """Array of shape (len(errors), 2, 2^n) holding e_p c_i for normalized words."""
    c = code.normalized()
    words = np.stack([embed(c.c0).amps, embed(c.c1).amps])
    return np.stack([apply_many(e, words, code.n) for e in errors])


def kl_matrices(code: DickeCode, errors: Sequence[ErrorOp], tol: float = KL_TOL) -> KLReport:
    if not errors:
        raise ValueError("empty error set")
    V = errored_words(code, errors)
    V0, V1 = V[:, 0, :], V[:, 1, :]
    classes = []
    for e in errors:
        try:
            classes.append(sign_class(e))
        except ValueError:
            classes.append(None)
    return KLReport(
        [e.label for e in errors],
        V0.conj() @ V0.T,
        V1.conj() @ V1.T,
        V0.conj() @ V1.T,
        tol,
        [e.sector for e in errors],
        classes,
    )


def block_structure_check(
    report: KLReport, classes: Sequence[SignClass] | None = None, tol: float = ZERO_TOL
) -> list[Violation]:
    """Entries breaking the zero/equality pattern that conditions I and II force.

    Rules: D^ii_pq = 0 when eps_Z differ; B_pq = 0 when eps_Z agree;
    D^00_pq = eps_X_p eps_X_q D^11_pq; B_pq = eps_X_p eps_X_q conj(B_qp);
    and every entry pairing a "trivial" sector error with a "standard" one vanishes.
    """
    classes = list(classes) if classes is not None else list(report.classes)
    if len(classes) != len(report.error_labels) or any(c is None for c in classes):
        raise ValueError("need a sign class for every error")
    ez = np.array([c.eps_Z for c in classes])
    ex = np.array([c.eps_X for c in classes])
    zdiff = ez[:, None] != ez[None, :]
    xprod = ex[:, None] * ex[None, :]
    checks = [
        ("A", "D00", np.where(zdiff, report.D00, 0)),
        ("A", "D11", np.where(zdiff, report.D11, 0)),
        ("B", "B", np.where(~zdiff, report.B, 0)),
        ("C", "D00-D11", report.D00 - xprod * report.D11),
        ("E", "B", report.B - xprod * report.B.T.conj()),
    ]
    if report.sectors:
        sec = np.array(report.sectors)
        cross = ((sec[:, None] == "trivial") & (sec[None, :] == "standard")) | (
            (sec[:, None] == "standard") & (sec[None, :] == "trivial")
        )
        for name in ("D00", "D11", "B"):
            checks.append(("ortho", name, np.where(cross, getattr(report, name), 0)))
    out = []
    for rule, name, m in checks:
        mag = np.abs(m)
        for p, q in zip(*np.nonzero(mag > tol)):
            out.append(Violation(name, int(p), int(q), float(mag[p, q]), rule))
    return out


# ---- error sets -----------------------------------------------------------


def symmetrized_error_set(n: int) -> list[ErrorOp]:
    """I, Xbar, Ybar, Zbar, then X1-Xk, Y1-Yk, Z1-Zk for k = 2..n."""
    if n < 2:
        raise ValueError("need n >= 2")
    ops = [identity(), average("X", n), average("Y", n), average("Z", n)]
    for ch in "XYZ":
        ops += [difference(ch, 1, k) for k in range(2, n + 1)]
    return ops


def raw_onebit_set(n: int) -> list[ErrorOp]:
    return [identity()] + [pauli(ch, r) for ch in "XYZ" for r in range(1, n + 1)]


def _singles(n: int, letters: str) -> list[ErrorOp]:
    return [pauli(ch, r) for ch in letters for r in range(1, n + 1)]


def _doubles(n: int, letters: str) -> list[ErrorOp]:
    return [double(ch, r, s) for ch in letters for r, s in combinations(range(1, n + 1), 2)]


def _exchanges(n: int) -> list[ErrorOp]:
    return [exchange(r, s) for r, s in combinations(range(1, n + 1), 2)]


ERROR_SETS = {
    "onebit": lambda n: symmetrized_error_set(n),
    "raw-onebit": raw_onebit_set,
    "onebit+exchange": lambda n: symmetrized_error_set(n) + _exchanges(n),
    "z-doubles": lambda n: symmetrized_error_set(n) + _doubles(n, "Z"),
    "x-doubles": lambda n: symmetrized_error_set(n) + _doubles(n, "X"),
    "same-type-doubles": lambda n: [identity()] + _doubles(n, "XYZ"),
    "phase-single-double": lambda n: [identity()] + _singles(n, "Z") + _doubles(n, "Z"),
    "bitflip-single": lambda n: [identity()] + _singles(n, "X"),
    "bitflip-single-double": lambda n: [identity()] + _singles(n, "X") + _doubles(n, "X"),
    "x-single-all-doubles": lambda n: [identity()] + _singles(n, "X") + _doubles(n, "XYZ"),
    "z-single-all-doubles": lambda n: [identity()] + _singles(n, "Z") + _doubles(n, "XYZ"),
    "xz-single-z-doubles": lambda n: [identity()] + _singles(n, "XZ") + _doubles(n, "Z"),
    "onebit+exchange+doubles": lambda n: symmetrized_error_set(n) + _exchanges(n) + _doubles(n, "XYZ"),
}


def error_set(name: str, n: int) -> list[ErrorOp]:
    """A named error set, or a comma-separated list of Pauli words ("I,X1,Z1Z2")."""
    if name in ERROR_SETS:
        return ERROR_SETS[name](n)
    ops = []
    for tok in (t.strip() for t in name.split(",")):
        if not tok:
            continue
        op = identity() if tok == "I" else pauli_word(tok)
        if op.max_qubit() > n:
            raise ValueError(f"Pauli word {tok!r} exceeds n={n}")
        ops.append(op)
    if not ops:
        raise ValueError(f"unknown error set {name!r}")
    return ops
