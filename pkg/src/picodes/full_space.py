"""Dense 2^n state vectors and explicit error operators.

This is the brute-force reference every compressed formula is tested
against. Basis index bit ordering: qubit 1 is the most significant bit.
Every primitive operator is compiled, per n, into (gather, factor) pairs
so that (op psi)[i] = sum_m factor[m][i] * psi[gather[m][i]], applied
matrix-free to single states or stacks of states.
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cache, lru_cache
from itertools import combinations

import numpy as np
from scipy.linalg import hadamard

from . import ZERO_TOL
from .combinatorics import binomial
from .dicke import DickeCode, DickeVector, VExpansion

MIN_QUBITS = 3
MAX_QUBITS = 12

# Two-qubit matrices in the basis |00>, |01>, |10>, |11> (qubit r first).
TWO_QUBIT = {
    "E": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], complex),
    "F": np.array([[1, 0, 0, 0], [0, 0, -1, 0], [0, -1, 0, 0], [0, 0, 0, 1]], complex),
    "G": np.array([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]], complex),
    "H": np.array([[0, 0, 0, -1], [0, 1, 0, 0], [0, 0, 1, 0], [-1, 0, 0, 0]], complex),
}


def _check_n(n: int) -> None:
    if not MIN_QUBITS <= n <= MAX_QUBITS:
        raise ValueError(f"dense oracle supports {MIN_QUBITS} <= n <= {MAX_QUBITS}, got {n}")


@cache
def popcounts(n: int) -> np.ndarray:
    w = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)
    w.setflags(write=False)
    return w


def bit(n: int, r: int) -> int:
    return 1 << (n - r)


@dataclass(frozen=True)
class DenseState:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        _check_n(self.n)
        a = np.array(self.amps, dtype=complex).reshape(-1)
        if a.shape[0] != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} amplitudes, got {a.shape[0]}")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    @classmethod
    def basis_string(cls, bits: str) -> DenseState:
        n = len(bits)
        a = np.zeros(1 << n, complex)
        a[int(bits, 2)] = 1
        return cls(n, a)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> DenseState:
        return DenseState(self.n, self.amps / self.norm())

    def inner(self, other: DenseState) -> complex:
        return complex(np.vdot(self.amps, other.amps))

    def __add__(self, other: DenseState) -> DenseState:
        return DenseState(self.n, self.amps + other.amps)

    def __sub__(self, other: DenseState) -> DenseState:
        return DenseState(self.n, self.amps - other.amps)

    def __mul__(self, scalar: complex) -> DenseState:
        return DenseState(self.n, self.amps * scalar)

    __rmul__ = __mul__


# ---- error operators ------------------------------------------------------


@dataclass(frozen=True)
class Primitive:
    """A Pauli word ``(("X", 1), ("Z", 3))`` or a named two-qubit matrix."""

    kind: str  # "pauli" or one of E, F, G, H
    word: tuple[tuple[str, int], ...] = ()
    pair: tuple[int, int] = (0, 0)

    def qubits(self) -> tuple[int, ...]:
        return tuple(r for _, r in self.word) if self.kind == "pauli" else self.pair


@dataclass(frozen=True)
class ErrorOp:
    terms: tuple[tuple[complex, Primitive], ...]
    label: str = ""
    sector: str = ""  # "trivial" for I and averages, "standard" for differences

    def max_qubit(self) -> int:
        return max((max(p.qubits(), default=0) for _, p in self.terms), default=0)

    def __add__(self, other: ErrorOp) -> ErrorOp:
        return ErrorOp(self.terms + other.terms, f"({self.label}+{other.label})")

    def __sub__(self, other: ErrorOp) -> ErrorOp:
        return self + (-1) * other

    def __mul__(self, scalar: complex) -> ErrorOp:
        return ErrorOp(tuple((c * scalar, p) for c, p in self.terms), f"{scalar}*{self.label}", self.sector)

    __rmul__ = __mul__

    def relabel(self, label: str, sector: str | None = None) -> ErrorOp:
        return ErrorOp(self.terms, label, self.sector if sector is None else sector)


def _word_primitive(letters: Iterable[tuple[str, int]]) -> Primitive:
    seen: dict[int, str] = {}
    for ch, r in letters:
        if ch not in "XYZI":
            raise ValueError(f"unknown Pauli letter {ch!r}")
        if r < 1:
            raise ValueError(f"qubit index {r} must be >= 1")
        if r in seen:
            raise ValueError(f"qubit {r} appears twice in a Pauli word")
        seen[r] = ch
    return Primitive("pauli", tuple(sorted(((c, r) for r, c in seen.items() if c != "I"), key=lambda t: t[1])))


def identity() -> ErrorOp:
    return ErrorOp(((1.0, Primitive("pauli")),), "I", "trivial")


def pauli(ch: str, r: int) -> ErrorOp:
    return ErrorOp(((1.0, _word_primitive([(ch, r)])),), f"{ch}{r}")


def pauli_word(spec: str | dict[int, str]) -> ErrorOp:
    """Parse ``"X1Z3"``, positional ``"XZIII"``, or a {qubit: letter} dict."""
    if isinstance(spec, dict):
        letters = [(c, r) for r, c in spec.items()]
        label = "".join(f"{c}{r}" for c, r in sorted(letters, key=lambda t: t[1])) or "I"
    elif re.fullmatch(r"[IXYZ]+", spec):
        letters = [(c, i + 1) for i, c in enumerate(spec)]
        label = spec
    elif re.fullmatch(r"([XYZ]\d+)+", spec):
        letters = [(m.group(1), int(m.group(2))) for m in re.finditer(r"([XYZ])(\d+)", spec)]
        label = spec
    else:
        raise ValueError(f"cannot parse Pauli word {spec!r}")
    return ErrorOp(((1.0, _word_primitive(letters)),), label)


def two_qubit(name: str, r: int, s: int) -> ErrorOp:
    if name not in TWO_QUBIT:
        raise ValueError(f"unknown two-qubit operator {name!r}")
    if r == s or min(r, s) < 1:
        raise ValueError("two-qubit operators need distinct indices >= 1")
    return ErrorOp(((1.0, Primitive(name, pair=(r, s))),), f"{name}{r},{s}")


def exchange(r: int, s: int) -> ErrorOp:
    return two_qubit("E", r, s)


def average(ch: str, n: int) -> ErrorOp:
    terms = tuple((1.0 / n, _word_primitive([(ch, r)])) for r in range(1, n + 1))
    return ErrorOp(terms, f"{ch}bar", "trivial")


def average_double(ch: str, n: int) -> ErrorOp:
    pairs = list(combinations(range(1, n + 1), 2))
    terms = tuple((1.0 / len(pairs), _word_primitive([(ch, r), (ch, s)])) for r, s in pairs)
    return ErrorOp(terms, f"{ch}{ch}bar", "trivial")


def difference(ch: str, r: int, s: int) -> ErrorOp:
    if r == s:
        raise ValueError("difference errors need r != s")
    terms = ((1.0, _word_primitive([(ch, r)])), (-1.0, _word_primitive([(ch, s)])))
    return ErrorOp(terms, f"{ch}{r}-{ch}{s}", "standard")


def double(ch: str, r: int, s: int) -> ErrorOp:
    return ErrorOp(((1.0, _word_primitive([(ch, r), (ch, s)])),), f"{ch}{r}{ch}{s}")


# ---- compilation and application -----------------------------------------


@lru_cache(maxsize=4096)
def _compile_primitive(prim: Primitive, n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    idx = np.arange(1 << n)
    if prim.kind == "pauli":
        flip = zy = ny = 0
        for ch, r in prim.word:
            b = bit(n, r)
            if ch in "XY":
                flip |= b
            if ch in "YZ":
                zy |= b
            ny += ch == "Y"
        src = idx ^ flip
        sign = 1 - 2 * (popcounts(n)[src & zy] & 1)
        return ((src, ((-1j) ** ny) * sign.astype(complex)),)
    mat = TWO_QUBIT[prim.kind]
    r, s = prim.pair
    br, bs = bit(n, r), bit(n, s)
    local = 2 * ((idx & br) > 0) + ((idx & bs) > 0)
    rest = idx & ~(br | bs)
    out = []
    for col in range(4):
        factor = mat[local, col]
        if not np.any(factor):
            continue
        src = rest | (br if col & 2 else 0) | (bs if col & 1 else 0)
        out.append((src, factor))
    return tuple(out)


def compile_op(op: ErrorOp, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Stacked (gather, factor) arrays of shape (m, 2^n) for ``op`` on n qubits."""
    _check_n(n)
    if op.max_qubit() > n:
        raise ValueError(f"operator {op.label!r} touches qubit {op.max_qubit()} > n={n}")
    gathers, factors = [], []
    for coef, prim in op.terms:
        for src, fac in _compile_primitive(prim, n):
            gathers.append(src)
            factors.append(coef * fac)
    return np.array(gathers), np.array(factors)


def apply_many(op: ErrorOp, amps: np.ndarray, n: int) -> np.ndarray:
    """Apply ``op`` to a stack of amplitude vectors with shape (..., 2^n)."""
    gather, factor = compile_op(op, n)
    out = np.zeros(amps.shape, complex)
    for g, f in zip(gather, factor):  # fixed order keeps sums reproducible
        out += f * amps[..., g]
    return out


def apply(op: ErrorOp, psi: DenseState) -> DenseState:
    return DenseState(psi.n, apply_many(op, psi.amps, psi.n))


def operator_matrix(op: ErrorOp, n: int) -> np.ndarray:
    """Dense 2^n x 2^n matrix of ``op`` (columns are images of basis vectors)."""
    return apply_many(op, np.eye(1 << n, dtype=complex), n).T


# ---- Dicke embedding ------------------------------------------------------


def embed(v: DickeVector) -> DenseState:
    return DenseState(v.n, v.coeffs[popcounts(v.n)])


def embed_v(e: VExpansion) -> DenseState:
    """Dense form of sum_k coeffs[k] V_k(r, s)."""
    n = e.n
    idx = np.arange(1 << n)
    has_r = (idx & bit(n, e.r)) > 0
    has_s = (idx & bit(n, e.s)) > 0
    sign = has_r.astype(float) - has_s.astype(float)
    w = popcounts(n)
    c = np.concatenate([e.coeffs, [0]])  # weight n strings never carry exactly one of r, s
    return DenseState(n, sign * c[np.clip(w - 1, 0, n - 1)])


def project_to_dicke(psi: DenseState) -> DickeVector:
    """Orthogonal projection onto span{W_k}, returned in the W_k basis."""
    n = psi.n
    w = popcounts(n)
    sums = np.zeros(n + 1, complex)
    np.add.at(sums, w, psi.amps)
    norms = np.array([binomial(n, k) for k in range(n + 1)], float)
    return DickeVector(n, sums / norms)


def permutation_invariance_check(psi: DenseState, tol: float = ZERO_TOL) -> bool:
    scale = max(psi.norm(), 1e-300)
    for s in range(2, psi.n + 1):
        if np.max(np.abs(apply(exchange(1, s), psi).amps - psi.amps)) > tol * scale:
            return False
    return True


def hadamard_all(psi: DenseState) -> DenseState:
    h = hadamard(1 << psi.n).astype(float) / np.sqrt(1 << psi.n)
    return DenseState(psi.n, h @ psi.amps)


def hadamard_code_map(code: DickeCode, tol: float = ZERO_TOL) -> DickeCode:
    """Words H(c0) + H(c1) and H(c0) - H(c1), normalized, in the W_k basis."""
    c = code.normalized()
    h0, h1 = hadamard_all(embed(c.c0)), hadamard_all(embed(c.c1))
    words = []
    for dense in (h0 + h1, h0 - h1):
        if not permutation_invariance_check(dense, tol):
            raise RuntimeError("Hadamard image lost permutation invariance; this is a bug")
        v = project_to_dicke(dense)
        if np.linalg.norm(embed(v).amps - dense.amps) > tol * max(dense.norm(), 1.0):
            raise RuntimeError("Hadamard image does not lie in the Dicke span; this is a bug")
        words.append(v.normalized())
    return DickeCode(words[0], words[1], code.tol)


def global_phase_fidelity(u: DickeVector, v: DickeVector) -> float:
    """|<u, v>|^2 / (|u|^2 |v|^2): 1 exactly when u, v agree up to a phase."""
    return abs(u.inner(v)) ** 2 / (u.norm_sq() * v.norm_sq())
